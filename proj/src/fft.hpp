#pragma once

#include "airylab/grid.hpp"

namespace airylab::detail {

/// In-place unnormalized DFT. sign = -1: X_j = sum_k x_k e^{-2 pi i jk/n}; sign = +1: inverse kernel.
void dft_in_place(ComplexVector& data, int sign);

}  // namespace airylab::detail
