#pragma once

#include <cstddef>
#include <span>

#include "tubal/types.hpp"

namespace tubal::dft {

// Transforms along the third mode of a face-major buffer: entry k of tube t
// lives at data[k * tubeCount + t]. Forward is the unnormalized DFT with
// kernel exp(-2*pi*i*j*k/n); inverse applies the 1/n factor.
void forwardTubes(std::span<cplx> data, std::size_t tubeLength, std::size_t tubeCount);
void inverseTubes(std::span<cplx> data, std::size_t tubeLength, std::size_t tubeCount);

}  // namespace tubal::dft
