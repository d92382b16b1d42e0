#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace wq::fft {

/// Sign of the exponent: out[m] = sum_n in[n] exp(sign * i 2 pi m n / N). Unnormalized.
enum class Sign { Minus, Plus };

void transform(std::span<std::complex<double>> data, Sign sign);

/// Row-major 3-D transform of an n0 x n1 x n2 array, in place.
void transform_3d(std::span<std::complex<double>> data, std::size_t n0, std::size_t n1, std::size_t n2,
                  Sign sign);

} // namespace wq::fft
