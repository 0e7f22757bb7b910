#pragma once

#include <cstddef>
#include <vector>

namespace torcap {

struct GaussLegendre {
  std::vector<double> nodes;   // on [-1, 1]
  std::vector<double> weights;
};

// Nodes by Newton iteration on Legendre polynomials; accurate to ~1e-15.
GaussLegendre gauss_legendre(std::size_t q);

// Same rule mapped to [a, b].
GaussLegendre gauss_legendre(std::size_t q, double a, double b);

// Clausen function Cl2(x) = -int_0^x log|2 sin(t/2)| dt, for 0 <= x <= pi.
// Power series around 0; converges fast for x <= pi.
double clausen_cl2(double x);

} // namespace torcap
