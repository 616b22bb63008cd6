#include "pwk/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace pwk {

void TwoBodyConfig::validate() const {
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw std::invalid_argument("masses must be positive");
  if (Z < 1) throw std::invalid_argument("Z must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

TwoBodyConfig preset(const std::string& name) {
  constexpr double me = 0.51099895;
  if (name == "hydrogen") return {me, kProtonMass, 1, kFineStructure};
  if (name == "muonic") return {kMuonMass, kProtonMass, 1, kFineStructure};
  if (name == "equal-mass") return {me, me, 1, kFineStructure};
  throw std::invalid_argument("unknown preset '" + name + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"hydrogen", "muonic", "equal-mass"};
  return names;
}

double omega(double m, double k) {
  if (m < 0.0 || k < 0.0) throw std::domain_error("omega: negative mass or momentum");
  return std::hypot(m, k);
}

double m0(const TwoBodyConfig& cfg, double k) { return omega(cfg.m1, k) + omega(cfg.m2, k); }

double kinetic(const TwoBodyConfig& cfg, double k) {
  const double k2 = k * k;
  return k2 / (omega(cfg.m1, k) + cfg.m1) + k2 / (omega(cfg.m2, k) + cfg.m2);
}

double velocity(double m, double k) {
  if (m == 0.0 && k == 0.0) throw std::domain_error("velocity: m = k = 0");
  return k / omega(m, k);
}

double w_factor(int lambda, int rho, const TwoBodyConfig& cfg, double k) {
  return std::sqrt(1.0 + lambda * velocity(cfg.m1, k)) * std::sqrt(1.0 + rho * velocity(cfg.m2, k));
}

double y_of(const KinPoint& p) { return (p.k * p.k + p.kp * p.kp) / (2.0 * p.k * p.kp); }

double y_minus_one(const KinPoint& p) {
  const double d = p.k - p.kp;
  return d * d / (2.0 * p.k * p.kp);
}

double q2_of(const KinPoint& p, double x) {
  // -2 k k' (y - x), written as -(k^2 + k'^2 - 2 k k' x)
  return -(p.k * p.k + p.kp * p.kp - 2.0 * p.k * p.kp * x);
}

double rho12(const TwoBodyConfig& cfg, const KinPoint& p) {
  const double dk2 = p.kp * p.kp - p.k * p.k;
  const double d1 = dk2 / (omega(cfg.m1, p.kp) + omega(cfg.m1, p.k));
  const double d2 = -dk2 / (omega(cfg.m2, p.kp) + omega(cfg.m2, p.k));
  return d1 * d2;
}

}  // namespace pwk
