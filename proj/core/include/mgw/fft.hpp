#pragma once

#include <vector>

#include "mgw/lattice.hpp"

namespace mgw::fft {

// In-place unnormalized DFT over the flagged axes of a row-major array.
// sign -1 is the forward e^{-ikx} direction, +1 the backward one.
void transform(cplx* data, const std::vector<int>& dims, const std::vector<bool>& axes, int sign);

void forward(Field& f);
// includes the 1/prod N factor
void backward(Field& f);
void forward_axis(Field& f, int mu);
void backward_axis(Field& f, int mu);

std::size_t cached_plans();

}  // namespace mgw::fft
