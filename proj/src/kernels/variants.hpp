#pragma once

#include "wvamp/kernels.hpp"

namespace wvamp::kernels::detail {

const KernelTable& scalar_table() noexcept;
// Only defined when the AVX2 translation unit is built (x86-64 hosts).
const KernelTable* avx2_table() noexcept;

}  // namespace wvamp::kernels::detail
