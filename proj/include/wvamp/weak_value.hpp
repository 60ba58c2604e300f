#pragma once

#include "wvamp/qubit.hpp"

namespace wvamp {

struct WeakValue {
    complex value;    // <post|A|pre> / <post|pre>
    complex overlap;  // <post|pre>
};

inline constexpr double kWeakValueOverlapThreshold = 1e-15;

// <post|pre>
complex overlap(const QubitState& pre, const QubitState& post) noexcept;

// <post|A|pre> with A = diag(-1, +1) in the {|0>, |1>} basis.
complex observable_matrix_element(const QubitState& pre, const QubitState& post) noexcept;

// Throws NearOrthogonalPostselection when |<post|pre>| <= threshold.
WeakValue weak_value(const QubitState& pre, const QubitState& post,
                     double threshold = kWeakValueOverlapThreshold);

}  // namespace wvamp
