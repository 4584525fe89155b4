#pragma once

#include <stdexcept>

namespace gpcip {

/// Raised when an exact/exhaustive computation would exceed its budget;
/// callers are expected to fall back to a sampled mode or enlarge the budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gpcip
