#pragma once

#include <vector>

namespace pwk {

// Gauss-Legendre nodes on (-1, 1), ascending.
struct GaussRule {
  std::vector<double> x, w;
};

// Cached per n; safe to call concurrently.
const GaussRule& gauss_legendre(int n);

}  // namespace pwk
