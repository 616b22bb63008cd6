#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "pwk/interaction.hpp"
#include "pwk/kernel.hpp"
#include "pwk/kinematics.hpp"

namespace pwk {

// Gauss-Legendre nodes t_j mapped to (0, inf) by k = k0 tan(pi (t + 1) / 4).
struct MomentumGrid {
  int n = 0;
  double k0 = 0.0;
  std::vector<double> t, wt;        // reference nodes and weights on (-1, 1)
  std::vector<double> nodes;        // k_j, MeV
  std::vector<double> weights;      // wt_j dk/dt, MeV
  std::vector<double> jacobian;     // dk/dt at t_j
};

// Throws std::invalid_argument for n < 8 or k0 <= 0.
MomentumGrid build_grid(int n, double k0);
// Same mapping without the size floor (n >= 1); for tests and small examples.
MomentumGrid build_grid_unchecked(int n, double k0);

// Galerkin integrals G_ij = int int L_i(t) L_j(t') Q_l(y(t, t')) dt dt' over
// the Lagrange basis of the n-point reference rule. y depends only on t, t',
// so the table is shared by every k0 and every kernel. Cached, thread safe.
const Eigen::MatrixXd& log_table(int n, int ell);

// Nystrom matrix of the radial equation, written for E = M - m1 - m2.
struct KernelMatrix {
  Eigen::MatrixXd H;
  double threshold = 0.0;  // m1 + m2, added back to obtain masses
  double asymmetry = 0.0;  // max |V - V^T| / max |V| of the potential part, before averaging
  std::size_t channels = 1;
  MomentumGrid grid;
};

// Smooth test kernels: v(kout, kin) returns the channels x channels block.
using SmoothKernel = std::function<Eigen::MatrixXd(double kout, double kin)>;

// Plain Nystrom assembly for kernels without a diagonal singularity;
// `kinetic_fn` gives M0(k) - threshold.
KernelMatrix assemble_smooth(const SmoothKernel& v, std::size_t channels, const MomentumGrid& grid,
                             const std::function<double(double)>& kinetic_fn, double threshold);

// A kernel V(kout, kin) = A Q_0(y) + smooth, given through three pieces.
// Channel pair (a, b) is integrated with the Q_l singularity of
// l = singular_ell(a, b); A / P_l(y) must be smooth.
struct SingularKernel {
  std::size_t channels = 1;
  std::function<Eigen::MatrixXd(const KinPoint&)> full;              // k != kp
  std::function<Eigen::MatrixXd(const KinPoint&)> log_coefficient;   // any k, kp
  std::function<Eigen::MatrixXd(const KinPoint&)> diagonal_regular;  // k == kp
  Eigen::MatrixXi singular_ell;
};

KernelMatrix assemble_singular(const SingularKernel& v, const MomentumGrid& grid,
                               const std::function<double(double)>& kinetic_fn, double threshold);

// Physical kernel with the logarithmic diagonal singularity integrated
// through log_table. Throws NumericalError if the raw asymmetry exceeds 1e-9.
KernelMatrix assemble(const TwoBodyConfig& cfg, const ChannelBlock& block, const MomentumGrid& grid,
                      const FormFactorSet& ffs);

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectrumResult {
  std::vector<double> masses;   // ascending, MeV
  std::vector<double> binding;  // masses - threshold
  // column n holds state n: rows (channel a, node i) -> a * N + i, values Phi_a(k_i)
  Eigen::MatrixXd vectors;
  MomentumGrid grid;
  std::size_t channels = 1;
  double threshold = 0.0;

  std::size_t bound_count() const;
};

SpectrumResult solve(const KernelMatrix& m);

struct ConvergenceRow {
  int n = 0;
  double mass = 0.0, binding = 0.0;
  double rel_delta = 0.0;  // |dB| / |B| against the previous row (0 for the first)
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool converged = false;  // last delta below tolerance
  double tolerance = 1e-6;
};

// Ground state of the block at each grid size. k0 <= 0 selects the Bohr momentum.
ConvergenceReport converge(const TwoBodyConfig& cfg, const ChannelBlock& block, const FormFactorSet& ffs,
                           const std::vector<int>& sizes, double k0 = 0.0, double tolerance = 1e-6);

}  // namespace pwk
