#pragma once

#include <Eigen/Dense>
#include <array>

#include "nuctrace/group/quadrature.hpp"

namespace nuctrace::homog {

// Dimension of the SU(3) irrep with highest weight (a, b).
long long su3_dim(long long a, long long b);

// (theta1, theta2, theta3, phi1, ..., phi5)
using Su3Angles = std::array<double, 8>;

// Bronzan's parametrization; 0 <= theta_i <= pi/2, 0 <= phi_i <= 2pi.
Eigen::Matrix3cd su3_fundamental(const Su3Angles& angles);

// Product rule for the density (1 / 2 pi^5) sin t1 cos^3 t1 sin t2 cos t2 sin t3 cos t3
// over [0, pi/2]^3 x [0, 2pi)^5: Gauss-Legendre with `resolution` nodes in
// each theta, periodic trapezoid with `phi_resolution` nodes in each phi.
group::QuadPtr su3_haar_quadrature(std::size_t resolution, std::size_t phi_resolution = 4);

Eigen::Matrix3cd su3_node(const group::GroupQuadrature& q, std::size_t node);

}  // namespace nuctrace::homog
