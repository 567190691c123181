#include <chrono>
#include <cstdio>

#include "coamoeba/experiments.hpp"
#include "coamoeba/shell.hpp"

using namespace coamoeba;

namespace {

double run_secs(void (*body)(ExecPolicy), ExecPolicy policy) {
    auto t0 = std::chrono::steady_clock::now();
    body(policy);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SupportedPolynomial square_poly() {
    return make_polynomial({{{0, 0}, {1, 0}}, {{1, 0}, {1, 0}}, {{0, 1}, {1, 0}}, {{1, 1}, {0, 1}}});
}

void bench_sampling(ExecPolicy policy) {
    auto f = square_poly();
    auto arr = shell(f);
    SampleOptions opts;
    opts.grid = 512;
    sample_coamoeba(f, arr, opts, policy);
}

void bench_sweep(ExecPolicy policy) {
    theorem1_sweep(standard_sweep_polygons(), 400, 99, policy);
}

void bench_search(ExecPolicy policy) {
    search_admissible(tiered_pentagon(3), 40000, 99, policy);
}

void bench_parity(ExecPolicy policy) {
    auto corpus = circuit_corpus(12, 99);
    parity_experiment(corpus, 120, 99, policy);
}

void report(const char* name, void (*body)(ExecPolicy)) {
    double serial = run_secs(body, ExecPolicy::Serial);
    double parallel = run_secs(body, ExecPolicy::Parallel);
    std::printf("%-16s serial %7.3fs   parallel %7.3fs   speedup %.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
    std::printf("serial reference vs OpenMP kernels (identical outputs by construction)\n");
    report("sampling-512", bench_sampling);
    report("sweep-5x400", bench_sweep);
    report("search-40k", bench_search);
    report("parity-120", bench_parity);
    return 0;
}
