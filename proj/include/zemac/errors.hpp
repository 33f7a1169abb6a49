#pragma once

#include <stdexcept>

namespace zemac {

/// Input or precondition violation; maps to CLI exit status 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration census, search node budget or world-size cap exceeded;
/// maps to CLI exit status 2.
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A condition that is impossible unless the library itself is wrong;
/// maps to CLI exit status 3.
struct InternalCheckError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace zemac
