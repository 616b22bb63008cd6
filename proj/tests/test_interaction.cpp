#include <doctest.h>

#include <stdexcept>

#include "pwk/interaction.hpp"
#include "pwk/special_fn.hpp"
#include "support.hpp"

using namespace pwk;

TEST_SUITE("interaction") {
  TEST_CASE("sachs") {
    const auto p = sachs(1, 0, -3.0, 0.9);
    CHECK(p.gE == 1.0);
    CHECK(p.gM == 1.0);
    const auto q0 = sachs(1, 1.7928, 0.0, 938.272);
    CHECK(q0.gE == 1.0);
    CHECK_REL(q0.gM, 2.7928, 1e-15);
    const double m = 2.0, f1 = 0.8, f2 = 1.6, q2 = -4 * m * m * f1 / f2;
    CHECK_ABS(sachs(f1, f2, q2, m).gE, 0.0, 1e-15);
  }

  TEST_CASE("form-factor models") {
    const TwoBodyConfig cfg = preset("hydrogen");
    const auto pl = point_like();
    CHECK(pl.constant);
    const auto k = k_functions(pl, cfg, -0.3);
    CHECK(k.kI == 1.0);
    CHECK(k.kII == 0.0);
    CHECK(k.kIII == 0.0);
    CHECK(k.kIV == 0.0);
    const auto dip = form_factor_models({"dipole-proton"}, cfg);
    CHECK_REL(k_functions(dip, cfg, 0.0).kI, kProtonMagneticMoment, 1e-15);
    CHECK(dip.f1p(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // G_E = (1 - q^2 / 0.71 GeV^2)^-2 recovered through the Sachs relation
    const double q2 = -2.0e5;
    CHECK_REL(sachs(dip.f1p(q2), dip.f2p(q2), q2, cfg.m2).gE, 1.0 / std::pow(1 - q2 / 0.71e6, 2), 1e-14);
    const auto ae = form_factor_models({"electron-anomalous"}, cfg);
    CHECK_REL(ae.f2e(-1.0), cfg.alpha / (2 * M_PI), 1e-15);
    const auto vp = form_factor_models({"uehling"}, cfg);
    CHECK(k_functions(vp, cfg, 0.0).kI == 1.0);
    CHECK_THROWS_AS(form_factor_models({"rho-meson"}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(k_functions(pl, cfg, 1e-3), std::domain_error);
  }

  TEST_CASE("uehling against a direct quadrature of the loop integral") {
    const double a = kFineStructure;
    CHECK_REL(uehling(a, -0.1), 1.000057000300449948083624, 1e-14);
    CHECK_REL(uehling(a, -0.26112), 1.000140366954155401326955, 1e-14);
    CHECK_REL(uehling(a, -4.0), 1.001065089103212386003383, 1e-14);
    CHECK_REL(uehling(a, -1000.0), 1.00509891952802502963371, 1e-14);
    CHECK(uehling(a, 0.0) == 1.0);
    CHECK_THROWS_AS(uehling(a, 0.5), std::domain_error);
  }

  TEST_CASE("r_tilde") {
    const auto one = ScalarKFn::constant(1.0);
    CHECK_REL(r_tilde(0, {1, 2}, one), -std::log(3.0) / 2, 1e-14);
    // reference integrals evaluated in extended precision
    CHECK_REL(r_tilde(7, {0.3, 0.8}, one), -0.001113533114447491603521733, 1e-12);
    CHECK_REL(r_tilde(7, {0.3, 0.8}, ScalarKFn::of([](double) { return 1.0; })), -0.001113533114447491603521733,
              1e-10);
    const auto dip = ScalarKFn::of([](double q2) { return 1.0 / std::pow(1 - q2 / 0.71e6, 2); });
    CHECK_REL(r_tilde(2, {300, 520}, dip), -0.000001485619419653187568660205, 1e-10);
    CHECK(r_tilde(3, {0.3, 0.8}, ScalarKFn::constant(0.0)) == 0.0);
    CHECK_THROWS_AS(r_tilde(0, {1, 1}, one), std::domain_error);
    std::mt19937_64 g(23);
    for (int n = 0; n < 100; ++n) {
      const KinPoint p{log_uniform(g, 1e-3, 1e3), log_uniform(g, 1e-3, 1e3)};
      for (int ell = 0; ell <= 20; ++ell)
        CHECK_REL(r_tilde(ell, p, one), -legendre_q(ell, y_of(p)) / (p.k * p.kp), 1e-10);
    }
  }

  TEST_CASE("moments are linear in K") {
    const TwoBodyConfig cfg = preset("hydrogen");
    const auto k1 = ScalarKFn::of([](double q2) { return 1.0 / (1 - q2); });
    const auto k2 = ScalarKFn::of([](double q2) { return std::exp(q2 / 3); });
    const auto mix = ScalarKFn::of([](double q2) { return 2.0 / (1 - q2) - 0.5 * std::exp(q2 / 3); });
    for (const KinPoint p : {KinPoint{0.4, 0.9}, KinPoint{1.0, 1.0005}}) {
      CHECK_REL(r_tilde(2, p, mix), 2 * r_tilde(2, p, k1) - 0.5 * r_tilde(2, p, k2), 1e-10);
      CHECK_REL(u_tilde(1, cfg, p, mix), 2 * u_tilde(1, cfg, p, k1) - 0.5 * u_tilde(1, cfg, p, k2), 1e-10);
    }
  }

  TEST_CASE("u_tilde") {
    const TwoBodyConfig c{1, 2, 1, 0.1};
    CHECK_REL(u_tilde(0, c, {1, 2}, ScalarKFn::constant(1.0)), -0.108185106778919554665929, 1e-13);
    CHECK_REL(u_tilde(0, c, {1, 2}, ScalarKFn::of([](double) { return 1.0; })), -0.108185106778919554665929,
              1e-10);
    CHECK(u_tilde(2, c, {1, 2}, ScalarKFn::constant(0.0)) == 0.0);
    CHECK_THROWS_AS(u_tilde(0, c, {2, 2}, ScalarKFn::constant(1.0)), std::domain_error);
    // bounded as kp -> k, for the constant and a q^2-dependent weight
    const auto dip = ScalarKFn::of([](double q2) { return 1.0 / std::pow(1 - q2 / 0.71e6, 2); });
    for (const auto& K : {ScalarKFn::constant(1.0), dip})
      for (int ell = 0; ell <= 3; ++ell) {
        const double ref = std::abs(u_tilde(ell, c, {1.0, 1.1}, K));
        for (double e = 1e-2; e >= 1e-6; e /= 10) CHECK(std::abs(u_tilde(ell, c, {1.0, 1.0 + e}, K)) < 2 * ref);
      }
  }

  TEST_CASE("z_tilde is the x-weighted moment") {
    const auto one = ScalarKFn::constant(1.0);
    const KinPoint p{0.3, 0.8};
    CHECK_REL(z_tilde(3, r_tilde(2, p, one), r_tilde(4, p, one)), -0.1225029712375340247630512, 1e-12);
    CHECK(z_tilde(0, 123.0, 0.25) == 0.25);
    CHECK(z_tilde(4, 0.0, 0.0) == 0.0);
  }
}
