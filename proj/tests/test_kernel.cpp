#include <doctest.h>

#include <gsl/gsl_sf_coupling.h>

#include <stdexcept>

#include "pwk/kernel.hpp"
#include "pwk/oracle.hpp"
#include "pwk/special_fn.hpp"
#include "support.hpp"

using namespace pwk;

namespace {
double scale_of(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// <j1 m1 j2 m2 | J M> from the GSL 3j symbol, all arguments doubled
double cg3j(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  const int ph = (tj1 - tj2 + tM) / 2;
  return (ph % 2 ? -1.0 : 1.0) * std::sqrt(tJ + 1.0) * gsl_sf_coupling_3j(tj1, tj2, tJ, tm1, tm2, -tM);
}

FormFactorSet swapped(FormFactorSet f) {
  std::swap(f.f1e, f.f1p);
  std::swap(f.f2e, f.f2p);
  std::swap(f.f2e_zero, f.f2p_zero);
  return f;
}
}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("channel blocks") {
    const auto s0 = ChannelBlock::make(0, BlockKind::Singlet);
    REQUIRE(s0.channels.size() == 1);
    CHECK(s0.channels[0] == Channel{0, 0});
    const auto t0 = ChannelBlock::make(0, BlockKind::Triplet);
    REQUIRE(t0.channels.size() == 1);
    CHECK(t0.channels[0] == Channel{1, 1});
    const auto s2 = ChannelBlock::make(2, BlockKind::Singlet);
    CHECK(s2.channels == std::vector<Channel>{{2, 0}, {2, 1}});
    const auto t2 = ChannelBlock::make(2, BlockKind::Triplet);
    CHECK(t2.channels == std::vector<Channel>{{1, 1}, {3, 1}});
    CHECK(t2.label() == "J=2 triplet");
    CHECK_THROWS_AS(ChannelBlock::make(-1, BlockKind::Singlet), std::invalid_argument);
    ChannelBlock bad{1, BlockKind::Singlet, {{3, 1}}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.channels = {{1, 2}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  TEST_CASE("spin-orbit recoupling coefficients") {
    const GArgs a = GArgs::from_labels(0, HelicityLabels{1, 1, 1, 1});
    CHECK_REL(g_coeff(a, {1.0, 0.0, 0.0}), 0.5, 1e-15);
    // brute force over S and l with the same Clebsch-Gordan products
    for (int J = 0; J <= 3; ++J)
      for (const auto& h : all_helicities()) {
        const GArgs g = GArgs::from_labels(J, h);
        const auto c = g_vector(g);
        std::vector<double> ref(c.size(), 0.0);
        const int tM = g.tm1 + g.tm2, tMp = g.tm1p + g.tm2p;
        for (int S = 0; S <= 1; ++S)
          for (int l = std::max(0, J - S); l <= J + S; ++l) {
            const double p = cg3j(1, g.tm1, 1, g.tm2, 2 * S, tM) * cg3j(2 * l, 0, 2 * S, tM, 2 * J, tM) *
                             cg3j(1, g.tm1p, 1, g.tm2p, 2 * S, tMp) * cg3j(2 * l, 0, 2 * S, tMp, 2 * J, tMp);
            ref[l] += (2.0 * l + 1.0) / (2.0 * J + 1.0) * p;
          }
        for (std::size_t l = 0; l < c.size(); ++l) CHECK_ABS(c[l], ref[l], 1e-14);
      }
    CHECK_THROWS_AS(g_coeff(GArgs::from_labels(2, HelicityLabels{}), {1.0}), std::out_of_range);
  }

  TEST_CASE("nonrelativistic limit is the Coulomb partial wave") {
    const TwoBodyConfig cfg = preset("hydrogen");
    for (int J = 0; J <= 2; ++J) {
      const KernelEvaluator ev(cfg, ChannelBlock::make(J, BlockKind::Singlet), point_like());
      const KinPoint p{1e-4 * cfg.m1, 1.7e-4 * cfg.m1};
      const double vc = -cfg.Z * cfg.alpha / M_PI * legendre_q(J, y_of(p)) / (p.k * p.kp);
      CHECK_REL(ev.full(p)(0, 0), vc, 1e-6);
    }
  }

  TEST_CASE("hermiticity") {
    const TwoBodyConfig cfg = preset("muonic");
    const auto ffs = form_factor_models({"dipole-proton", "electron-anomalous", "uehling"}, cfg);
    std::mt19937_64 g(5);
    for (int J = 0; J <= 2; ++J)
      for (auto kind : {BlockKind::Singlet, BlockKind::Triplet}) {
        const KernelEvaluator ev(cfg, ChannelBlock::make(J, kind), ffs);
        for (int n = 0; n < 5; ++n) {
          const double k = log_uniform(g, 1e-2, 1e3), kp = log_uniform(g, 1e-2, 1e3);
          const Eigen::MatrixXd a = ev.full({k, kp}), b = ev.full({kp, k});
          CHECK((a - b.transpose()).cwiseAbs().maxCoeff() < 1e-12 * scale_of(a));
        }
      }
  }

  TEST_CASE("agreement with direct angular integration") {
    const TwoBodyConfig cfg = preset("hydrogen");
    const auto ffs = form_factor_models({"dipole-proton", "electron-anomalous"}, cfg);
    for (int J = 0; J <= 1; ++J)
      for (auto kind : {BlockKind::Singlet, BlockKind::Triplet}) {
        const auto block = ChannelBlock::make(J, kind);
        const KernelEvaluator ev(cfg, block, ffs);
        for (const KinPoint p : {KinPoint{0.02, 0.05}, KinPoint{3.0, 1.2}}) {
          const Eigen::MatrixXd v = ev.full(p), o = oracle::kernel_block(cfg, block, p, ffs);
          CHECK((v - o).cwiseAbs().maxCoeff() < 1e-8 * scale_of(o));
        }
      }
  }

  TEST_CASE("magnetic structures vanish for point-like particles") {
    const TwoBodyConfig cfg = preset("hydrogen");
    const KinPoint p{0.3, 0.7};
    const MomentSet m = compute_moments(cfg, point_like(), p, 3, MomentMode::Full);
    for (const auto& h : all_helicities()) {
      const TermInputs t = term_inputs(1, h, m);
      CHECK(v_term_II(cfg, p, h, t) == 0.0);
      CHECK(v_term_III(cfg, p, h, t) == 0.0);
      CHECK(v_term_IV(cfg, p, h, t) == 0.0);
    }
    CHECK(v_term_B(cfg, {0.5, 0.5}, HelicityLabels{}, TermInputs{}) == 0.0);
  }

  TEST_CASE("k == kp is refused") {
    const TwoBodyConfig cfg = preset("hydrogen");
    const auto blk = ChannelBlock::make(0, BlockKind::Singlet);
    const KernelEvaluator ev(cfg, blk, point_like());
    CHECK_THROWS_AS(ev.full({0.2, 0.2}), std::domain_error);
    CHECK_THROWS_AS(kernel_element(cfg, blk, 0, 0, {0.2, 0.2}, point_like()), std::domain_error);
    CHECK_THROWS_AS(ev.diagonal_regular({0.2, 0.3}), std::domain_error);
    CHECK_THROWS_AS(kernel_element(cfg, blk, 1, 0, {0.2, 0.3}, point_like()), std::out_of_range);
  }

  TEST_CASE("split reassembles the kernel") {
    const TwoBodyConfig cfg = preset("muonic");
    const auto ffs = form_factor_models({"dipole-proton"}, cfg);
    const KernelEvaluator ev(cfg, ChannelBlock::make(1, BlockKind::Triplet), ffs);
    const KinPoint p{0.8, 2.3};
    const KernelSplit s = ev.split(p);
    const Eigen::MatrixXd v = ev.full(p);
    const Eigen::MatrixXd sum = s.A * legendre_q(0, y_of(p)) + s.R;
    CHECK((sum - v).cwiseAbs().maxCoeff() < 1e-10 * scale_of(v));
    CHECK((s.A - ev.log_coefficient(p)).cwiseAbs().maxCoeff() < 1e-12 * scale_of(s.A));
  }

  TEST_CASE("raw projections: rotational invariance") {
    const TwoBodyConfig cfg{1.0, 3.0, 1, 0.2};
    const auto ffs = point_like();
    const KinPoint p{0.4, 0.9};
    const oracle::RawOptions opt{24, 24, 1.0};
    const auto a = oracle::hel1(cfg, ffs, 1, 0, 1, 0, p, opt);
    const auto b = oracle::hel1(cfg, ffs, 1, 1, 1, 1, p, opt);
    const auto c = oracle::hel1(cfg, ffs, 0, 0, 1, 0, p, opt);
    double scale = 0.0;
    for (const auto& v : a) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < 16; ++i) {
      CHECK(std::abs(a[i] - b[i]) < 1e-9 * scale);
      CHECK(std::abs(c[i]) < 1e-9 * scale);
    }
  }

  TEST_CASE("particle relabeling") {
    const TwoBodyConfig cfg = preset("hydrogen");
    const TwoBodyConfig sw{cfg.m2, cfg.m1, cfg.Z, cfg.alpha};
    const auto ffs = form_factor_models({"dipole-proton", "electron-anomalous"}, cfg);
    for (int J = 0; J <= 2; ++J)
      for (auto kind : {BlockKind::Singlet, BlockKind::Triplet}) {
        const auto block = ChannelBlock::make(J, kind);
        const KernelEvaluator a(cfg, block, ffs), b(sw, block, swapped(ffs));
        const KinPoint p{0.7, 0.25};
        const Eigen::MatrixXd va = a.full(p), vb = b.full(p);
        for (Eigen::Index i = 0; i < va.rows(); ++i)
          for (Eigen::Index j = 0; j < va.cols(); ++j) {
            const int sign = (block.channels[i].S + block.channels[j].S) % 2 ? -1 : 1;
            CHECK(std::abs(vb(i, j) - sign * va(i, j)) < 1e-11 * scale_of(va));
          }
      }
    // identical lines and masses: the singlet and triplet J = l states decouple
    const TwoBodyConfig eq = preset("equal-mass");
    for (int J = 1; J <= 3; ++J) {
      const KernelEvaluator ev(eq, ChannelBlock::make(J, BlockKind::Singlet), point_like());
      const Eigen::MatrixXd v = ev.full({0.01, 0.03});
      CHECK(std::abs(v(0, 1)) < 1e-12 * scale_of(v));
      CHECK(std::abs(v(1, 0)) < 1e-12 * scale_of(v));
    }
  }
}
