#pragma once

#include <cmath>
#include <random>

// Relative closeness with an explicit tolerance, reported with both values.
#define CHECK_REL(actual, expected, tol)                                                       \
  do {                                                                                         \
    const double a_ = (actual), e_ = (expected);                                               \
    INFO("actual = ", a_, ", expected = ", e_);                                                \
    CHECK(std::abs(a_ - e_) <= (tol) * std::abs(e_));                                          \
  } while (0)

#define CHECK_ABS(actual, expected, tol)                                                       \
  do {                                                                                         \
    const double a_ = (actual), e_ = (expected);                                               \
    INFO("actual = ", a_, ", expected = ", e_);                                                \
    CHECK(std::abs(a_ - e_) <= (tol));                                                         \
  } while (0)

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(g));
}
