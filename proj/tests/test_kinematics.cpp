#include <doctest.h>

#include <stdexcept>

#include "pwk/kinematics.hpp"
#include "support.hpp"

using namespace pwk;

TEST_SUITE("kinematics") {
  TEST_CASE("omega and m0") {
    CHECK(omega(3, 4) == 5.0);
    CHECK(omega(1.5, 2.0) == 2.5);
    CHECK(omega(0.7, 0.0) == 0.7);
    CHECK_THROWS_AS(omega(-1, 1), std::domain_error);
    CHECK_THROWS_AS(omega(1, -1), std::domain_error);
    const TwoBodyConfig eq{3, 3, 1, 0.1};
    CHECK(m0(eq, 4) == 10.0);
    const TwoBodyConfig h{0.511, 938.272, 1, kFineStructure};
    CHECK(m0(h, 0.0) == h.m1 + h.m2);
    CHECK_REL(m0(h, 1.0), std::sqrt(0.511 * 0.511 + 1) + std::sqrt(938.272 * 938.272 + 1), 1e-15);
  }

  TEST_CASE("kinetic energy keeps its digits") {
    const TwoBodyConfig h = preset("hydrogen");
    for (double k : {1e-8, 1e-4, 1e-2, 1.0, 1e3}) {
      const double direct = m0(h, k) - h.m1 - h.m2;
      if (k >= 1.0) CHECK_REL(kinetic(h, k), direct, 1e-10);
      const double nr = k * k / (2 * h.reduced_mass());
      if (k <= 1e-4) CHECK_REL(kinetic(h, k), nr, 1e-6);
    }
  }

  TEST_CASE("velocity") {
    CHECK(velocity(2.0, 0.0) == 0.0);
    CHECK(velocity(3, 4) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(velocity(0, 0), std::domain_error);
    const TwoBodyConfig h = preset("hydrogen");
    CHECK_REL(velocity(h.m1, h.bohr_momentum()), h.alpha, 1e-3);
  }

  TEST_CASE("w_factor") {
    const TwoBodyConfig eq{3, 3, 1, 0.1};
    for (int l : {-1, 1})
      for (int r : {-1, 1}) CHECK(w_factor(l, r, eq, 0.0) == 1.0);
    CHECK_REL(w_factor(1, 1, eq, 4.0), 1.8, 1e-15);
    CHECK_REL(w_factor(-1, -1, eq, 4.0), 0.2, 1e-14);
    std::mt19937_64 g(7);
    const TwoBodyConfig h = preset("muonic");
    for (int n = 0; n < 50; ++n) {
      const double k = log_uniform(g, 1e-3, 1e4);
      const double v1 = velocity(h.m1, k), v2 = velocity(h.m2, k);
      for (int l : {-1, 1})
        for (int r : {-1, 1})
          CHECK_REL(w_factor(l, r, h, k) * w_factor(-l, -r, h, k), std::sqrt(1 - v1 * v1) * std::sqrt(1 - v2 * v2),
                    1e-12);
    }
  }

  TEST_CASE("y and q^2") {
    CHECK(y_of({2.5, 2.5}) == 1.0);
    CHECK(y_of({1, 2}) == 1.25);
    CHECK(y_of({1e-6, 1}) > 4e5);
    CHECK(y_minus_one({1, 1}) == 0.0);
    CHECK_REL(y_minus_one({1.0, 1.0 + 1e-9}), 0.5e-18 / (1.0 + 1e-9), 1e-6);
    CHECK(q2_of({3, 3}, 1.0) == 0.0);
    CHECK(q2_of({1, 2}, 1.0) == -1.0);
    CHECK_REL(q2_of({1.3, 0.4}, -1.0), -(1.7 * 1.7), 1e-15);
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> ux(-1, 1);
    for (int n = 0; n < 100; ++n) {
      const KinPoint p{log_uniform(g, 1e-3, 1e3), log_uniform(g, 1e-3, 1e3)};
      const double x = ux(g);
      CHECK(q2_of(p, x) <= 0.0);
      CHECK_ABS(q2_of(p, x) + 2 * p.k * p.kp * (y_of(p) - x), 0.0, 1e-12 * 2 * p.k * p.kp * y_of(p));
    }
  }

  TEST_CASE("rho12") {
    const TwoBodyConfig c{1, 2, 1, 0.1};
    CHECK(rho12(c, {1.7, 1.7}) == 0.0);
    CHECK_REL(rho12(c, {1, 2}), -0.4868329805051379959966806, 1e-14);
    std::mt19937_64 g(5);
    for (int n = 0; n < 100; ++n) {
      const KinPoint p{log_uniform(g, 1e-3, 1e3), log_uniform(g, 1e-3, 1e3)};
      CHECK(rho12(c, p) <= 0.0);
      CHECK_REL(rho12(c, {p.kp, p.k}), rho12(c, p), 1e-12);
    }
  }

  TEST_CASE("config validation and presets") {
    CHECK_THROWS_AS((TwoBodyConfig{0, 1, 1, 0.1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TwoBodyConfig{1, 1, 0, 0.1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TwoBodyConfig{1, 1, 1, 0.0}.validate()), std::invalid_argument);
    for (const auto& name : preset_names()) CHECK_NOTHROW(preset(name).validate());
    CHECK(preset("hydrogen").m1 == 0.51099895);
    CHECK(preset("muonic").m1 == kMuonMass);
    CHECK(preset("equal-mass").m1 == preset("equal-mass").m2);
    CHECK_THROWS_AS(preset("positronium"), std::invalid_argument);
  }
}
