#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "pwk/kinematics.hpp"
#include "pwk/spinor.hpp"

namespace pwk {

inline constexpr double kElectronMass = 0.51099895;  // MeV, vacuum-polarization loop mass
inline constexpr double kProtonMagneticMoment = 2.7928;
inline constexpr double kDipoleScale = 0.71e6;  // MeV^2

// Form factors of line 1 ("e") and line 2 ("p") as functions of q^2 (MeV^2),
// and the photon-propagator dressing Pi(alpha, q^2).
struct FormFactorSet {
  std::function<double(double)> f1e, f2e, f1p, f2p;
  std::function<double(double, double)> pi_vp;
  bool constant = true;   // nothing depends on q^2: closed-form moments apply
  bool f2e_zero = true;   // lets the kernel skip vanishing structures
  bool f2p_zero = true;
  std::vector<std::string> names;
};

FormFactorSet point_like();
// Combination of named models: "point", "dipole-proton", "electron-anomalous",
// "uehling". Throws std::invalid_argument for unknown names.
FormFactorSet form_factor_models(const std::vector<std::string>& names, const TwoBodyConfig& cfg);
const std::vector<std::string>& registered_models();

struct Sachs {
  double gE, gM;
};
Sachs sachs(double f1, double f2, double q2, double m);

// One-loop electron vacuum polarization factor 1 + Pi_2(q^2), q^2 <= 0.
double uehling(double alpha, double q2);

KValues k_functions(const FormFactorSet& ffs, const TwoBodyConfig& cfg, double q2);

// A scalar weight K(q^2) for the moment integrals.
struct ScalarKFn {
  std::function<double(double)> fn;
  bool is_constant = false;
  double constant_value = 0.0;

  static ScalarKFn constant(double c) { return {nullptr, true, c}; }
  static ScalarKFn of(std::function<double(double)> f) { return {std::move(f), false, 0.0}; }
  double operator()(double q2) const { return is_constant ? constant_value : fn(q2); }
};

// R_l = int_{-1}^{1} K(q^2) P_l(x) / q^2 dx; refuses k == kp.
double r_tilde(int ell, const KinPoint& p, const ScalarKFn& kfn);
// U_l = rho12 int K P_l / q^4 dx; refuses k == kp.
double u_tilde(int ell, const TwoBodyConfig& cfg, const KinPoint& p, const ScalarKFn& kfn);
// Z_l = [(l+1) R_{l+1} + l R_{l-1}] / (2l+1)
double z_tilde(int ell, double r_minus, double r_plus);

// Moments of all four K structures, shared across the helicity sum.
enum class MomentMode {
  Full,             // the integrals themselves (k != kp)
  LogCoefficient,   // coefficient of Q_0(y) in their expansion (any k, kp)
  DiagonalRegular,  // k == kp limit after removing the Q_0(y) part
};

struct MomentSet {
  int lmax = 0;                             // R known for l <= lmax + 1, U for l <= lmax
  std::array<bool, 4> active{};             // K^I..K^IV not identically zero
  std::array<std::vector<double>, 4> R, U;

  double Z(int X, int ell) const {
    return z_tilde(ell, ell > 0 ? R[X][ell - 1] : 0.0, R[X][ell + 1]);
  }
};

MomentSet compute_moments(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const KinPoint& p,
                          int lmax, MomentMode mode);

}  // namespace pwk
