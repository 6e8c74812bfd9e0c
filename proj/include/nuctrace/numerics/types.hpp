#pragma once

#include <complex>
#include <numbers>

namespace nuctrace {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// e^{i theta}
inline cplx unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace nuctrace
