#include "pwk/interaction.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pwk/quadrature.hpp"
#include "pwk/special_fn.hpp"

namespace pwk {

FormFactorSet point_like() {
  FormFactorSet f;
  f.f1e = [](double) { return 1.0; };
  f.f2e = [](double) { return 0.0; };
  f.f1p = [](double) { return 1.0; };
  f.f2p = [](double) { return 0.0; };
  f.pi_vp = [](double, double) { return 1.0; };
  f.names = {"point"};
  return f;
}

const std::vector<std::string>& registered_models() {
  static const std::vector<std::string> names{"point", "dipole-proton", "electron-anomalous",
                                              "uehling"};
  return names;
}

FormFactorSet form_factor_models(const std::vector<std::string>& names, const TwoBodyConfig& cfg) {
  FormFactorSet f = point_like();
  f.names.clear();
  for (const auto& name : names) {
    if (name == "point") {
    } else if (name == "dipole-proton") {
      const double mp = cfg.m2;
      auto ge = [](double q2) { return 1.0 / std::pow(1.0 - q2 / kDipoleScale, 2); };
      auto f2 = [ge, mp](double q2) {
        const double tau = -q2 / (4.0 * mp * mp);
        return (kProtonMagneticMoment - 1.0) * ge(q2) / (1.0 + tau);
      };
      f.f2p = f2;
      f.f1p = [ge, f2](double q2) { return kProtonMagneticMoment * ge(q2) - f2(q2); };
      f.constant = false;
      f.f2p_zero = false;
    } else if (name == "electron-anomalous") {
      const double a = cfg.alpha / (2.0 * M_PI);
      f.f2e = [a](double) { return a; };
      f.f2e_zero = false;
    } else if (name == "uehling") {
      f.pi_vp = [](double alpha, double q2) { return uehling(alpha, q2); };
      f.constant = false;
    } else {
      throw std::invalid_argument("unknown form-factor model '" + name + "'");
    }
    f.names.push_back(name);
  }
  if (f.names.empty()) f.names = {"point"};
  return f;
}

Sachs sachs(double f1, double f2, double q2, double m) {
  return {f1 + q2 / (4.0 * m * m) * f2, f1 + f2};
}

double uehling(double alpha, double q2) {
  if (q2 > 0.0) throw std::domain_error("uehling: timelike q^2");
  const double a = -q2 / (kElectronMass * kElectronMass);
  // I(a) = int_0^1 x(1-x) ln(1 + a x(1-x)) dx
  double I;
  if (a <= 1.0) {
    // series in a with beta-function coefficients B(n+2, n+2)
    double beta = 1.0 / 30.0, an = a, sum = 0.0;
    for (int n = 1; n < 60; ++n) {
      const double term = (n & 1 ? 1.0 : -1.0) * an * beta / n;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      an *= a;
      beta *= static_cast<double>((n + 2) * (n + 2)) / ((2 * n + 4) * (2 * n + 5));
    }
    I = sum;
  } else {
    const double v = std::sqrt(1.0 + 4.0 / a);
    I = (-5.0 / 3.0 + 4.0 / a + (1.0 - 2.0 / a) * v * std::log((v + 1.0) / (v - 1.0))) / 6.0;
  }
  return 1.0 + 2.0 * alpha / M_PI * I;
}

KValues k_functions(const FormFactorSet& ffs, const TwoBodyConfig& cfg, double q2) {
  if (q2 > 0.0) throw std::domain_error("k_functions: timelike momentum transfer");
  const double f1e = ffs.f1e(q2), f2e = ffs.f2e(q2), f1p = ffs.f1p(q2), f2p = ffs.f2p(q2);
  const double pi = ffs.pi_vp(cfg.alpha, q2);
  const double gme = f1e + f2e, gmp = f1p + f2p;
  return {pi * gmp * gme, pi * gmp * f2e, pi * f2p * gme, pi * f2e * f2p};
}

namespace {

template <class F>
double adaptive(const F& f, double a, double b) {
  static thread_local gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  gsl_set_error_handler_off();
  gsl_function gf;
  gf.function = [](double x, void* params) { return (*static_cast<const F*>(params))(x); };
  gf.params = const_cast<F*>(&f);
  double result = 0.0, err = 0.0;
  const int status = gsl_integration_qag(&gf, a, b, 0.0, 1e-13, 2000, GSL_INTEG_GAUSS61, ws, &result, &err);
  if (status != GSL_SUCCESS && status != GSL_EROUND && err > 1e-9 * std::abs(result))
    throw std::runtime_error(std::string("moment quadrature failed: ") + gsl_strerror(status));
  return result;
}

void require_off_diagonal(const KinPoint& p) {
  if (!(p.k > 0.0) || !(p.kp > 0.0)) throw std::domain_error("moment integral: momenta must be positive");
  if (p.k == p.kp) throw std::domain_error("moment integral: k == kp is handled by the solver");
}

}  // namespace

double r_tilde(int ell, const KinPoint& p, const ScalarKFn& kfn) {
  require_off_diagonal(p);
  const double kk = p.k * p.kp;
  const double ym1 = y_minus_one(p);
  if (kfn.is_constant) return -kfn.constant_value * legendre_q_all(ell, ym1)[ell] / kk;
  const double y = 1.0 + ym1;
  if (ym1 < 1e-3) {
    // x = y - e^u turns the 1/(y - x) weight into a smooth integrand
    auto f = [&](double u) {
      const double e = std::exp(u);
      return -kfn(-2.0 * kk * e) * legendre_p_all(ell, y - e)[ell] / (2.0 * kk);
    };
    return adaptive(f, std::log(ym1), std::log(ym1 + 2.0));
  }
  auto f = [&](double x) {
    const double q2 = q2_of(p, x);
    return kfn(q2) * legendre_p_all(ell, x)[ell] / q2;
  };
  return adaptive(f, -1.0, 1.0);
}

double u_tilde(int ell, const TwoBodyConfig& cfg, const KinPoint& p, const ScalarKFn& kfn) {
  require_off_diagonal(p);
  const double kk = p.k * p.kp;
  const double ym1 = y_minus_one(p);
  const double rho = rho12(cfg, p);
  if (kfn.is_constant)
    return -rho * kfn.constant_value * legendre_q_deriv_all(ell, ym1)[ell] / (2.0 * kk * kk);
  const double y = 1.0 + ym1;
  if (ym1 < 1e-3) {
    auto f = [&](double u) {
      const double e = std::exp(u);
      return kfn(-2.0 * kk * e) * legendre_p_all(ell, y - e)[ell] / (4.0 * kk * kk * e);
    };
    return rho * adaptive(f, std::log(ym1), std::log(ym1 + 2.0));
  }
  auto f = [&](double x) {
    const double q2 = q2_of(p, x);
    return kfn(q2) * legendre_p_all(ell, x)[ell] / (q2 * q2);
  };
  return rho * adaptive(f, -1.0, 1.0);
}

double z_tilde(int ell, double r_minus, double r_plus) {
  return ((ell + 1) * r_plus + ell * r_minus) / (2.0 * ell + 1.0);
}

MomentSet compute_moments(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const KinPoint& p,
                          int lmax, MomentMode mode) {
  MomentSet m;
  m.lmax = lmax;
  m.active = {true, !ffs.f2e_zero, !ffs.f2p_zero, !ffs.f2e_zero && !ffs.f2p_zero};
  const KValues k0v = k_functions(ffs, cfg, 0.0);
  const std::array<double, 4> k0{k0v.kI, k0v.kII, k0v.kIII, k0v.kIV};
  for (int X = 0; X < 4; ++X) {
    if (ffs.constant && k0[X] == 0.0) m.active[X] = false;
    m.R[X].assign(lmax + 2, 0.0);
    m.U[X].assign(lmax + 1, 0.0);
  }
  const int lr = lmax + 1;
  const double kk = p.k * p.kp;

  if (mode == MomentMode::LogCoefficient) {
    const double y = 1.0 + y_minus_one(p);
    const double rho = rho12(cfg, p);
    const auto pl = legendre_p_all(lr, y);
    const auto dpl = legendre_p_deriv_all(lmax, y);
    for (int X = 0; X < 4; ++X) {
      if (!m.active[X]) continue;
      for (int l = 0; l <= lr; ++l) m.R[X][l] = -k0[X] * pl[l] / kk;
      for (int l = 0; l <= lmax; ++l) m.U[X][l] = -rho * k0[X] * dpl[l] / (2.0 * kk * kk);
    }
    return m;
  }

  const GaussRule& rule = gauss_legendre(64);

  if (mode == MomentMode::DiagonalRegular) {
    const double w1 = omega(cfg.m1, p.k), w2 = omega(cfg.m2, p.k);
    std::array<std::vector<double>, 4> ff;
    if (!ffs.constant) {
      for (auto& v : ff) v.assign(lr + 1, 0.0);
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double x = rule.x[i];
        const double q2 = -2.0 * p.k * p.k * (1.0 - x);
        const KValues kv = k_functions(ffs, cfg, q2);
        const std::array<double, 4> kx{kv.kI, kv.kII, kv.kIII, kv.kIV};
        const auto pl = legendre_p_all(lr, x);
        for (int X = 0; X < 4; ++X)
          for (int l = 0; l <= lr; ++l) ff[X][l] += rule.w[i] * (kx[X] - k0[X]) / q2 * pl[l];
      }
    }
    for (int X = 0; X < 4; ++X) {
      if (!m.active[X]) continue;
      for (int l = 0; l <= lr; ++l)
        m.R[X][l] = k0[X] * harmonic(l) / kk + (ffs.constant ? 0.0 : ff[X][l]);
      for (int l = 0; l <= lmax; ++l) m.U[X][l] = -k0[X] / (2.0 * w1 * w2);
    }
    return m;
  }

  require_off_diagonal(p);
  const double ym1 = y_minus_one(p);
  const double rho = rho12(cfg, p);
  const auto ql = legendre_q_all(lr, ym1);
  const auto dql = legendre_q_deriv_all(lmax, ym1);
  for (int X = 0; X < 4; ++X) {
    if (!m.active[X]) continue;
    for (int l = 0; l <= lr; ++l) m.R[X][l] = -k0[X] * ql[l] / kk;
    for (int l = 0; l <= lmax; ++l) m.U[X][l] = -rho * k0[X] * dql[l] / (2.0 * kk * kk);
  }
  if (ffs.constant) return m;

  // q^2-dependent remainder (K - K(0))/q^2 is smooth; the R part needs no
  // special treatment and the U part keeps one power of 1/(y - x)
  const double y = 1.0 + ym1;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double x = rule.x[i];
    const double q2 = q2_of(p, x);
    const KValues kv = k_functions(ffs, cfg, q2);
    const std::array<double, 4> kx{kv.kI, kv.kII, kv.kIII, kv.kIV};
    const auto pl = legendre_p_all(lr, x);
    for (int X = 0; X < 4; ++X) {
      if (!m.active[X]) continue;
      const double d1 = (kx[X] - k0[X]) / q2;
      for (int l = 0; l <= lr; ++l) m.R[X][l] += rule.w[i] * d1 * pl[l];
    }
  }
  const double ua = std::log(ym1), ub = std::log(ym1 + 2.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double u = 0.5 * (ua + ub) + 0.5 * (ub - ua) * rule.x[i];
    const double wu = 0.5 * (ub - ua) * rule.w[i];
    const double e = std::exp(u);
    const double q2 = -2.0 * kk * e;
    const KValues kv = k_functions(ffs, cfg, q2);
    const std::array<double, 4> kx{kv.kI, kv.kII, kv.kIII, kv.kIV};
    const auto pl = legendre_p_all(lmax, y - e);
    for (int X = 0; X < 4; ++X) {
      if (!m.active[X]) continue;
      const double d1 = (kx[X] - k0[X]) / q2;
      for (int l = 0; l <= lmax; ++l) m.U[X][l] += rho * wu * d1 * pl[l] / (-2.0 * kk);
    }
  }
  return m;
}

}  // namespace pwk
