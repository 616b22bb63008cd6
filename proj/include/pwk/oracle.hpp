#pragma once

// Brute-force reference implementations used by the tests and by `pwk verify`.
// Nothing here uses the closed forms of the spinor or kernel modules: spinors
// are explicit four-component columns, currents are gamma-matrix sandwiches
// and partial waves are direct angular quadratures.

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "pwk/interaction.hpp"
#include "pwk/kernel.hpp"
#include "pwk/kinematics.hpp"
#include "pwk/spinor.hpp"

namespace pwk::oracle {

using Spinor = std::array<cplx, 4>;
using Mat4 = std::array<std::array<cplx, 4>, 4>;
using Vec3 = std::array<double, 3>;

// gamma^0..gamma^3 in the chiral representation.
const std::array<Mat4, 4>& gamma();
Mat4 identity4();

// Jacob-Wick helicity spinor normalized to ubar u = 2m. The first particle
// moves along (theta, phi) with doubled helicity `lambda`; the second one
// moves along the opposite direction and carries spin projection -lambda/2
// in the rotated frame, which is helicity lambda/2 along its own motion.
Spinor helicity_spinor(double m, double k, double theta, double phi, int lambda, bool second);

// ubar M u
cplx sandwich(const Spinor& out, const Mat4& M, const Spinor& in);
Mat4 slash(const FourVector& a);

// The five normalized current products at (k along z, kp at polar angle beta).
cplx vector_vector(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h);
cplx scalar_slash1(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h);
cplx slash2_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h);
cplx scalar_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h);
cplx time_time(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h,
               const KValues& kv);

// N J1^0 J2^0 with the F1 gamma + i F2 sigma q / 2m vertices (no Pi factor).
cplx time_time_sigma(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const KinPoint& p, double beta,
                     const HelicityLabels& h);

struct CurrentPair {
  FourVector j1, j2;  // projected currents
  FourVector q;       // (0, k - k')
};

// Currents for incoming relative momentum `kvec` and outgoing `kpvec`.
CurrentPair projected_currents(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const Vec3& kvec,
                               const Vec3& kpvec, const HelicityLabels& h);

// One-photon helicity amplitude <k', lp1, lp2 | V | k, lk1, lk2> for all 16
// labels in all_helicities() order, with gauge parameter xi in the propagator
// g_{mu nu} - (1 - xi) q_mu q_nu / q^2.
std::array<cplx, 16> amplitudes(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const Vec3& kvec,
                                const Vec3& kpvec, double xi = 1.0);

// d^j_{m',m}(beta) from the explicit factorial sum; all arguments doubled.
double wigner_d_sum(int tj, int tmp, int tm, double beta);

struct AngularOptions {
  int n_u = 96;     // Gauss-Legendre points in u = ln(y - x), split into panels
  int n_phi = 6;    // trapezoid points in the azimuth
  double xi = 1.0;  // gauge parameter
};

// int dcos(beta) int dphi D^J_{lambda, lambda'}(phi, beta, -phi) <k'|V|k> for
// all 16 labels, with k along z.
std::array<cplx, 16> hel2(const TwoBodyConfig& cfg, const FormFactorSet& ffs, int J, const KinPoint& p,
                          const AngularOptions& opt = {});

// CG projection of hel2 onto every channel pair of the block (rows = out).
Eigen::MatrixXd kernel_block(const TwoBodyConfig& cfg, const ChannelBlock& block, const KinPoint& p,
                             const FormFactorSet& ffs, const AngularOptions& opt = {});

// CG projection of hel2 onto one channel pair.
double kernel_element(const TwoBodyConfig& cfg, const ChannelBlock& block, int chan_out, int chan_in,
                      const KinPoint& p, const FormFactorSet& ffs, const AngularOptions& opt = {});

struct RawOptions {
  int n_theta = 24;
  int n_phi = 24;
  double xi = 1.0;
};

// The full four-dimensional angular integral over both directions with
// D^{J'}_{mu', lambda'}(k') D^{J *}_{mu, lambda}(k); J, J', mu, mu' are plain
// integers. Returns all 16 labels.
std::array<cplx, 16> hel1(const TwoBodyConfig& cfg, const FormFactorSet& ffs, int J, int mu, int Jp, int mup,
                          const KinPoint& p, const RawOptions& opt = {});

}  // namespace pwk::oracle
