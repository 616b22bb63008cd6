#include "pwk/special_fn.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pwk {

namespace {

const std::array<long double, 201>& factorials() {
  static const std::array<long double, 201> table = [] {
    std::array<long double, 201> f{};
    f[0] = 1.0L;
    for (int i = 1; i <= 200; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  return table;
}

long double fact(int n) {
  if (n < 0 || n > 200) throw std::out_of_range("factorial argument out of range");
  return factorials()[n];
}

void check_ell(int ell) {
  if (ell < 0 || ell > kMaxEll + 3)
    throw std::domain_error("Legendre degree out of supported range: " + std::to_string(ell));
}

// acosh(1 + z) without losing digits for small z
double acosh1p(double z) { return std::log1p(z + std::sqrt(z * (z + 2.0))); }

}  // namespace

double legendre_p(int ell, double x) {
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("legendre_p: |x| > 1");
  check_ell(ell);
  return legendre_p_all(ell, x)[ell];
}

std::vector<double> legendre_p_all(int lmax, double x) {
  std::vector<double> p(lmax + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int l = 1; l < lmax; ++l) p[l + 1] = ((2 * l + 1) * x * p[l] - l * p[l - 1]) / (l + 1);
  return p;
}

std::vector<double> legendre_p_deriv_all(int lmax, double x) {
  auto p = legendre_p_all(lmax, x);
  std::vector<double> dp(lmax + 1, 0.0);
  if (lmax >= 1) dp[1] = 1.0;
  for (int l = 1; l < lmax; ++l) dp[l + 1] = dp[l - 1] + (2 * l + 1) * p[l];
  return dp;
}

std::vector<double> legendre_q_all(int lmax, double ym1) {
  if (!(ym1 > 0.0)) throw std::domain_error("legendre_q: requires y > 1");
  const double y = 1.0 + ym1;
  std::vector<double> q(lmax + 1);
  q[0] = 0.5 * std::log1p(2.0 / ym1);
  if (lmax == 0) return q;

  const double ac = acosh1p(ym1);
  if (2.0 * lmax * ac < 6.9) {
    // forward recurrence is only mildly unstable here: the dominant
    // solution P_l grows by less than a factor 1e3 over the range
    q[1] = y * q[0] - 1.0;
    for (int l = 1; l < lmax; ++l) q[l + 1] = ((2 * l + 1) * y * q[l] - l * q[l - 1]) / (l + 1);
    return q;
  }
  // Q_l is the minimal solution: run the ratio Q_l/Q_{l-1} downward from a
  // start index where the dominant solution has died out, then rebuild
  const int start = lmax + 2 + static_cast<int>(std::ceil(20.0 / ac));
  std::vector<double> ratio(lmax + 1, 0.0);
  double r = 0.0;
  for (int m = start; m >= 1; --m) {
    r = m / ((2 * m + 1) * y - (m + 1) * r);
    if (m <= lmax) ratio[m] = r;
  }
  for (int l = 1; l <= lmax; ++l) q[l] = q[l - 1] * ratio[l];
  return q;
}

std::vector<double> legendre_q_deriv_all(int lmax, double ym1) {
  auto q = legendre_q_all(lmax, ym1);
  const double y = 1.0 + ym1;
  const double y2m1 = ym1 * (ym1 + 2.0);
  std::vector<double> dq(lmax + 1);
  dq[0] = -1.0 / y2m1;
  for (int l = 1; l <= lmax; ++l) dq[l] = l * (y * q[l] - q[l - 1]) / y2m1;
  return dq;
}

double legendre_q(int ell, double y) {
  if (!(y > 1.0)) throw std::domain_error("legendre_q: requires y > 1");
  check_ell(ell);
  return legendre_q_all(ell, y - 1.0)[ell];
}

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

double wigner_d(HalfInt j, HalfInt m, HalfInt mp, double beta) {
  const int tj = j.twice, tm = m.twice, tmp = mp.twice;
  if (tj < 0 || std::abs(tm) > tj || std::abs(tmp) > tj || ((tj + tm) & 1) || ((tj + tmp) & 1))
    throw std::domain_error("wigner_d: invalid (j, m, mp)");

  // Jacobi-polynomial form: d = xi * norm * sin^mu(b/2) cos^nu(b/2) P_s^(mu,nu)(cos b)
  const int mu = std::abs(tm - tmp) / 2;
  const int nu = std::abs(tm + tmp) / 2;
  const int s = (tj - std::max(std::abs(tm), std::abs(tmp))) / 2;
  const double x = std::cos(beta);

  double p_prev = 1.0, p = 1.0;
  if (s >= 1) p = (mu + 1) + (mu + nu + 2) * (x - 1.0) / 2.0;
  for (int n = 2; n <= s; ++n) {
    const double a = mu, b = nu;
    const double c = 2.0 * n + a + b;
    const double next = ((c - 1) * (c * (c - 2) * x + a * a - b * b) * p -
                         2.0 * (n + a - 1) * (n + b - 1) * c * p_prev) /
                        (2.0 * n * (n + a + b) * (c - 2));
    p_prev = p;
    p = next;
  }
  if (s == 0) p = 1.0;

  const double lognorm = 0.5 * (std::lgamma(s + 1.0) + std::lgamma(s + mu + nu + 1.0) -
                                std::lgamma(s + mu + 1.0) - std::lgamma(s + nu + 1.0));
  double value = std::exp(lognorm) * std::pow(std::sin(beta / 2), mu) *
                 std::pow(std::cos(beta / 2), nu) * p;
  if (tm > tmp && (((tm - tmp) / 2) & 1)) value = -value;
  return value;
}

double clebsch_gordan_2(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  if (tm1 + tm2 != tM) return 0.0;
  if (tj1 < 0 || tj2 < 0 || tJ < 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if (((tj1 + tm1) & 1) || ((tj2 + tm2) & 1) || ((tJ + tM) & 1)) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || ((tj1 + tj2 + tJ) & 1)) return 0.0;

  const int a = (tJ + tj1 - tj2) / 2, b = (tJ - tj1 + tj2) / 2, c = (tj1 + tj2 - tJ) / 2;
  const int d = (tj1 + tj2 + tJ) / 2 + 1;
  long double pre = (tJ + 1) * fact(a) * fact(b) * fact(c) / fact(d);
  pre *= fact((tJ + tM) / 2) * fact((tJ - tM) / 2) * fact((tj1 - tm1) / 2) * fact((tj1 + tm1) / 2) *
         fact((tj2 - tm2) / 2) * fact((tj2 + tm2) / 2);

  const int e1 = c, e2 = (tj1 - tm1) / 2, e3 = (tj2 + tm2) / 2;
  const int f1 = (tJ - tj2 + tm1) / 2, f2 = (tJ - tj1 - tm2) / 2;
  long double sum = 0.0L;
  for (int k = std::max({0, -f1, -f2}); k <= std::min({e1, e2, e3}); ++k) {
    const long double term =
        1.0L / (fact(k) * fact(e1 - k) * fact(e2 - k) * fact(e3 - k) * fact(f1 + k) * fact(f2 + k));
    sum += (k & 1) ? -term : term;
  }
  return static_cast<double>(std::sqrt(pre) * sum);
}

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  return clebsch_gordan_2(j1.twice, m1.twice, j2.twice, m2.twice, J.twice, M.twice);
}

}  // namespace pwk
