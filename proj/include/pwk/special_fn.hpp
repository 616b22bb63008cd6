#pragma once

#include <vector>

namespace pwk {

// Angular momentum stored as twice its value, so half-integers are exact.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
  static constexpr HalfInt integer(int v) { return HalfInt{2 * v}; }
  static constexpr HalfInt half(int odd) { return HalfInt{odd}; }

  double value() const { return 0.5 * twice; }
  friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return {a.twice + b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return {a.twice - b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a) { return {-a.twice}; }
};

inline constexpr int kMaxEll = 50;

// P_l(x) for |x| <= 1 (throws std::domain_error otherwise).
double legendre_p(int ell, double x);

// P_0..P_L at any real x (no domain restriction; used for y >= 1 as well).
std::vector<double> legendre_p_all(int lmax, double x);
// P'_0..P'_L at any real x.
std::vector<double> legendre_p_deriv_all(int lmax, double x);

// Q_l(y) for y > 1 (throws std::domain_error otherwise).
double legendre_q(int ell, double y);

// Q_0..Q_L at y = 1 + ym1. Taking y - 1 as the argument keeps the
// logarithm accurate when y is close to one.
std::vector<double> legendre_q_all(int lmax, double ym1);
// dQ_l/dy for l = 0..L at y = 1 + ym1.
std::vector<double> legendre_q_deriv_all(int lmax, double ym1);

// Harmonic number H_n = 1 + 1/2 + ... + 1/n (H_0 = 0).
double harmonic(int n);

// Small Wigner d-matrix element d^j_{m,mp}(beta).
double wigner_d(HalfInt j, HalfInt m, HalfInt mp, double beta);

// Condon-Shortley Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M>.
// Selection-rule violations return 0.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

// Same, with all arguments given as twice their value.
double clebsch_gordan_2(int tj1, int tm1, int tj2, int tm2, int tJ, int tM);

}  // namespace pwk
