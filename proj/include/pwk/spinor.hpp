#pragma once

#include <array>
#include <complex>

#include "pwk/kinematics.hpp"

namespace pwk {

using cplx = std::complex<double>;
using FourVector = std::array<cplx, 4>;  // contravariant components (0,1,2,3)

// Minkowski product a^mu b_mu, metric (+,-,-,-), no complex conjugation.
cplx minkowski(const FourVector& a, const FourVector& b);

struct Tetrad {
  FourVector b_plus, b_minus, n_plus, n_minus;
  const FourVector& b(int sign) const { return sign > 0 ? b_plus : b_minus; }
  const FourVector& n(int sign) const { return sign > 0 ? n_plus : n_minus; }
};

// b_{+-1} = (1,0,0,+-1)/2, n_{+-1} = (0,+-1,i,0)/2
const Tetrad& numeric_tetrad();

// Gamma^{C,A}_{sigma,rho}[gamma^mu] on the numeric tetrad.
FourVector gamma_block(int C, int A, int sigma, int rho);

// Doubled helicities (each +-1): k = incoming, p = outgoing; 1 = first particle.
struct HelicityLabels {
  int lk1 = 1, lk2 = 1, lp1 = 1, lp2 = 1;
};

// All 16 label combinations in a fixed order (lk1 slowest, lp2 fastest).
std::array<HelicityLabels, 16> all_helicities();

// d^{1/2}_{a/2, b/2}(beta) for doubled indices a, b = +-1.
double d_half(int a, int b, double beta);

// Expansion coefficient of a helicity spinor over the massless basis spinors.
cplx s_coeff(double m, double k, double theta, double phi, int A, int rho, int lambda);

// Form-factor weights of the four current structures at one q^2.
struct KValues {
  double kI = 1.0, kII = 0.0, kIII = 0.0, kIV = 0.0;
};

// Closed forms of the normalized current products N * (...) with k along z
// and k' in the x-z plane at polar angle beta. N = 1/sqrt(w1 w1' w2 w2').
//   vector_vector:  N jbar1 gamma^mu j1 . jbar2 gamma_mu j2
//   scalar_slash1:  N (u1'bar u1) (u2'bar (p1+k1)slash u2)
//   slash2_scalar:  N (u1'bar (p2+k2)slash u1) (u2'bar u2)
//   scalar_scalar:  N (u1'bar u1)(u2'bar u2) (p1+k1).(p2+k2)
//   time_time:      N J1^0 J2^0 for Gordon-form currents with weights kv
double contract_vector_vector(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h);
double contract_scalar_slash1(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h);
double contract_slash2_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h);
double contract_scalar_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h);
double contract_time_time(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                          const HelicityLabels& h, const KValues& kv);

// sqrt(1 + s v) for the four external lines, indexed by sign.
struct RootFactors {
  double k1[2], k2[2], p1[2], p2[2];  // [0] -> s = -1, [1] -> s = +1
  double w1k, w1p, w2k, w2p;          // single-particle energies

  RootFactors(const TwoBodyConfig& cfg, const KinPoint& p);
  // W_{a,b}(k) W_{c,d}(k')
  double wk(int a, int b) const { return k1[(a + 1) / 2] * k2[(b + 1) / 2]; }
  double wp(int c, int d) const { return p1[(c + 1) / 2] * p2[(d + 1) / 2]; }
};

}  // namespace pwk
