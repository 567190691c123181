#pragma once

#include <stdexcept>

namespace coamoeba {

struct ZeroVector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAFace : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAFacet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonSimpleArrangement : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentCrossing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OffsetCountMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UncalibratedIndex : std::logic_error {
    using std::logic_error::logic_error;
};
struct AmbiguousCalibration : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotBipartite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoValidSignAssignment : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroDeterminant : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAYangBaxterSite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotDimerizable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace coamoeba
