#include <doctest.h>

#include "pwk/oracle.hpp"
#include "pwk/spinor.hpp"
#include "support.hpp"

using namespace pwk;

namespace {
double diff4(const FourVector& a, const FourVector& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}
}  // namespace

TEST_SUITE("spinor") {
  TEST_CASE("tetrad products and completeness") {
    const Tetrad& t = numeric_tetrad();
    for (int r : {-1, 1})
      for (int l : {-1, 1}) {
        CHECK(std::abs(minkowski(t.b(r), t.b(-l)) - cplx(r == l ? 0.5 : 0.0)) < 1e-15);
        CHECK(std::abs(minkowski(t.n(r), t.n(-l)) - cplx(r == l ? 0.5 : 0.0)) < 1e-15);
        CHECK(std::abs(minkowski(t.b(r), t.n(l))) < 1e-15);
      }
    // g^{mu nu} = 2 sum_r [b_r^mu b_{-r}^nu + n_r^mu n_{-r}^nu]
    const double g[4] = {1, -1, -1, -1};
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        cplx s = 0;
        for (int r : {-1, 1}) s += t.b(r)[mu] * t.b(-r)[nu] + t.n(r)[mu] * t.n(-r)[nu];
        CHECK(std::abs(2.0 * s - cplx(mu == nu ? g[mu] : 0.0)) < 1e-14);
      }
  }

  TEST_CASE("gamma blocks") {
    CHECK(diff4(gamma_block(-1, 1, 1, -1), FourVector{1, 0, 0, -1}) < 1e-15);
    CHECK(diff4(gamma_block(1, 1, 1, -1), FourVector{0, 1, cplx(0, 1), 0}) < 1e-15);
    for (int C : {-1, 1})
      for (int A : {-1, 1})
        for (int s : {-1, 1}) CHECK(diff4(gamma_block(C, A, s, s), FourVector{}) == 0.0);
  }

  TEST_CASE("s_coeff at zero angles and at rest") {
    const double m = 0.7, k = 1.3, w = std::hypot(m, k);
    for (int A : {-1, 1})
      for (int r : {-1, 1})
        for (int l : {-1, 1}) {
          const double v = std::abs(s_coeff(m, k, 0, 0, A, r, l));
          const bool nonzero = v > 1e-14;
          if (nonzero) {
            const bool plus = std::abs(v - std::sqrt(w + k)) < 1e-14;
            const bool minus = std::abs(v - std::sqrt(w - k)) < 1e-14;
            CHECK((plus || minus));
          }
          const double rest = std::abs(s_coeff(m, 0.0, 0.4, 1.1, A, r, l));
          CHECK((rest < 1e-14 || std::abs(rest - std::sqrt(m)) < 1e-14 || rest < std::sqrt(m)));
        }
    // one component of each helicity spinor per basis index survives along z
    CHECK_REL(std::abs(s_coeff(m, k, 0, 0, 1, 1, -1)), std::sqrt(w + k), 1e-14);
    CHECK_REL(std::abs(s_coeff(m, k, 0, 0, -1, -1, -1)), std::sqrt(w - k), 1e-14);
  }

  TEST_CASE("oracle bispinors solve the Dirac equation") {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> ang(0.0, M_PI);
    const auto& gm = oracle::gamma();
    for (int n = 0; n < 40; ++n) {
      const double m = log_uniform(g, 0.1, 100), k = log_uniform(g, 1e-3, 1e3);
      const double th = ang(g), ph = 2 * ang(g), w = std::hypot(m, k);
      for (bool second : {false, true})
        for (int l : {-1, 1}) {
          const auto u = oracle::helicity_spinor(m, k, th, ph, l, second);
          const double s = second ? -1.0 : 1.0;
          const FourVector p{w, s * k * std::sin(th) * std::cos(ph), s * k * std::sin(th) * std::sin(ph),
                             s * k * std::cos(th)};
          const auto ps = oracle::slash(p);
          double res = 0.0;
          for (int i = 0; i < 4; ++i) {
            cplx r = -m * u[i];
            for (int j = 0; j < 4; ++j) r += ps[i][j] * u[j];
            res = std::max(res, std::abs(r));
          }
          // ubar u = 2m is a difference of components of size sqrt(w)
          CHECK(res < 1e-13 * w * std::sqrt(w));
          CHECK_ABS(oracle::sandwich(u, oracle::identity4(), u).real(), 2 * m, 1e-13 * w);
          CHECK_REL(oracle::sandwich(u, gm[0], u).real(), 2 * w, 1e-12);
        }
    }
  }

  TEST_CASE("contractions at rest") {
    const TwoBodyConfig c{1.0, 2.0, 1, 0.1};
    for (const auto& h : all_helicities()) {
      const bool keep = h.lp1 == h.lk1 && h.lp2 == h.lk2;
      CHECK_ABS(contract_vector_vector(c, {0, 0}, 0, h), keep ? 4.0 : 0.0, 1e-14);
      CHECK_ABS(contract_scalar_slash1(c, {0, 0}, 0, h), keep ? 8.0 * c.m1 : 0.0, 1e-13);
      CHECK_ABS(contract_slash2_scalar(c, {0, 0}, 0, h), keep ? 8.0 * c.m2 : 0.0, 1e-13);
      CHECK_ABS(contract_scalar_scalar(c, {0, 0}, 0, h), keep ? 16.0 * c.m1 * c.m2 : 0.0, 1e-12);
      CHECK_ABS(contract_time_time(c, {0, 0}, 0, h, {}), keep ? 4.0 : 0.0, 1e-14);
      CHECK(contract_time_time(c, {0.3, 0.5}, 0.7, h, {0, 0, 0, 0}) == 0.0);
    }
  }

  TEST_CASE("collinear helicity selection") {
    const TwoBodyConfig c = preset("muonic");
    for (double k : {0.01, 1.0, 300.0})
      for (const auto& h : all_helicities()) {
        const int flips = (h.lp1 != h.lk1) + (h.lp2 != h.lk2);
        if (flips == 1) CHECK(std::abs(contract_vector_vector(c, {k, 1.7 * k}, 0.0, h)) < 1e-13);
      }
  }

  TEST_CASE("contractions equal the gamma-matrix oracle") {
    std::mt19937_64 g(17);
    std::uniform_real_distribution<double> ub(0.0, M_PI), uk(-1, 1);
    for (int n = 0; n < 40; ++n) {
      const TwoBodyConfig c{log_uniform(g, 0.1, 1e3), log_uniform(g, 0.1, 1e3), 1, 0.01};
      const KinPoint p{log_uniform(g, 1e-3, 1e3), log_uniform(g, 1e-3, 1e3)};
      const double b = ub(g);
      const KValues kv{uk(g), uk(g), uk(g), uk(g)};
      double scale[5] = {0, 0, 0, 0, 0};
      std::array<std::array<double, 5>, 16> err{};
      const auto hs = all_helicities();
      for (int i = 0; i < 16; ++i) {
        const auto& h = hs[i];
        const cplx o[5] = {oracle::vector_vector(c, p, b, h), oracle::scalar_slash1(c, p, b, h),
                           oracle::slash2_scalar(c, p, b, h), oracle::scalar_scalar(c, p, b, h),
                           oracle::time_time(c, p, b, h, kv)};
        const double v[5] = {contract_vector_vector(c, p, b, h), contract_scalar_slash1(c, p, b, h),
                             contract_slash2_scalar(c, p, b, h), contract_scalar_scalar(c, p, b, h),
                             contract_time_time(c, p, b, h, kv)};
        for (int s = 0; s < 5; ++s) {
          scale[s] = std::max(scale[s], std::abs(o[s]));
          err[i][s] = std::abs(o[s] - v[s]);
        }
      }
      for (int i = 0; i < 16; ++i)
        for (int s = 0; s < 5; ++s) CHECK(err[i][s] < 1e-11 * scale[s]);
    }
  }
}
