#include "wvamp/weak_value.hpp"

#include <string>

#include "wvamp/errors.hpp"

namespace wvamp {

complex overlap(const QubitState& pre, const QubitState& post) noexcept { return inner(post, pre); }

complex observable_matrix_element(const QubitState& pre, const QubitState& post) noexcept {
    return -std::conj(post.c0()) * pre.c0() + std::conj(post.c1()) * pre.c1();
}

WeakValue weak_value(const QubitState& pre, const QubitState& post, double threshold) {
    const complex ov = overlap(pre, post);
    if (!(std::abs(ov) > threshold)) {
        throw NearOrthogonalPostselection("weak value diverges: |<post|pre>| = " +
                                          std::to_string(std::abs(ov)));
    }
    return {observable_matrix_element(pre, post) / ov, ov};
}

}  // namespace wvamp
