#pragma once

#include <string>
#include <vector>

namespace pwk {

// Sign of the overall kernel normalization. The printed master-equation
// prefactor yields a repulsive Coulomb limit for opposite charges; this
// constant flips it so that the NR limit is the attractive Coulomb wave
// -(Z alpha / pi) Q_l(y) / (k k'). Checked by the NR-limit acceptance test
// and by the mutation test in `pwk verify --calibration`.
inline constexpr double kCoulombCalibration = -1.0;

struct TwoBodyConfig {
  double m1 = 0.0;  // MeV, the "electron" line (form factors F^e)
  double m2 = 0.0;  // MeV, the "proton" line (form factors F^p)
  int Z = 1;
  double alpha = 0.0;
  double calibration = kCoulombCalibration;

  void validate() const;
  double reduced_mass() const { return m1 * m2 / (m1 + m2); }
  double bohr_momentum() const { return reduced_mass() * Z * alpha; }
};

inline constexpr double kFineStructure = 1.0 / 137.035999084;
inline constexpr double kMuonMass = 105.6583755;  // MeV
inline constexpr double kProtonMass = 938.27208816;

// "hydrogen" (e p), "muonic" (mu p) and "equal-mass" (two electron masses).
// Throws std::invalid_argument for other names.
TwoBodyConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();

// k is the incoming relative momentum, kp the outgoing one (MeV).
struct KinPoint {
  double k = 0.0;
  double kp = 0.0;
};

double omega(double m, double k);
double m0(const TwoBodyConfig& cfg, double k);
// M_0(k) - m1 - m2 without cancellation.
double kinetic(const TwoBodyConfig& cfg, double k);
double velocity(double m, double k);
// W_{lambda,rho}(k) = sqrt(1 + lambda v1) sqrt(1 + rho v2)
double w_factor(int lambda, int rho, const TwoBodyConfig& cfg, double k);
double y_of(const KinPoint& p);
// y - 1 = (k - kp)^2 / (2 k kp), exact for nearby momenta
double y_minus_one(const KinPoint& p);
double q2_of(const KinPoint& p, double x);
// (omega_1(k') - omega_1(k)) (omega_2(k) - omega_2(k'))
double rho12(const TwoBodyConfig& cfg, const KinPoint& p);

}  // namespace pwk
