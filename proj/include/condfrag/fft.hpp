#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace condfrag {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n);

/// In-place iterative radix-2 FFT. n must be a power of two.
/// inverse = true applies the 1/n scaling.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

} // namespace condfrag
