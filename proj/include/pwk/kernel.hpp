#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "pwk/interaction.hpp"
#include "pwk/kinematics.hpp"
#include "pwk/spinor.hpp"

namespace pwk {

struct Channel {
  int ell = 0;
  int S = 0;
  friend bool operator==(const Channel&, const Channel&) = default;
};

enum class BlockKind {
  Singlet,  // {(J,0), (J,1)}; J = 0 keeps only (0,0)
  Triplet,  // {(J-1,1), (J+1,1)}; J = 0 keeps only (1,1)
};

struct ChannelBlock {
  int J = 0;
  BlockKind kind = BlockKind::Singlet;
  std::vector<Channel> channels;

  static ChannelBlock make(int J, BlockKind kind);
  void validate() const;
  std::string label() const;  // e.g. "J=1 singlet"
};

// Projections are doubled: m1, m2 of the incoming pair, m1p, m2p outgoing.
// G = sum_s sum_l (2l+1)/(2J+1) C(s1 m1 s2 m2|s M) C(l 0 s M|J M)
//                               C(s1 m1p s2 m2p|s M') C(l 0 s M'|J M') Phi_l
struct GArgs {
  int J = 0;
  int ts1 = 1, ts2 = 1;  // 2 s1, 2 s2
  int tm1 = 1, tm2 = -1, tm1p = 1, tm2p = -1;

  // the labelling used throughout: (lk1/2, -lk2/2; lp1/2, -lp2/2)
  static GArgs from_labels(int J, const HelicityLabels& h, int ts1 = 1, int ts2 = 1);
};

// Coefficients c_l with G[Phi] = sum_l c_l Phi_l (length J + (s1+s2) + 1).
std::vector<double> g_vector(const GArgs& a);
double g_coeff(const GArgs& a, const std::vector<double>& moments);

// Moment functionals entering one helicity amplitude.
struct TermInputs {
  double gR[4] = {0, 0, 0, 0};  // G_direct[R^X]
  double gRcross = 0.0;         // G_cross[R^I]
  double gZ4 = 0.0;             // G_direct[Z^IV]
  double gU[4] = {0, 0, 0, 0};  // G_direct[U^X]
};

TermInputs term_inputs(int J, const HelicityLabels& h, const MomentSet& m);

double v_term_I(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t);
double v_term_II(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t);
double v_term_III(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t);
double v_term_IV(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t);
double v_term_B(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t);

// Sum of the five terms with precomputed root factors.
double helicity_amplitude(const TwoBodyConfig& cfg, const KinPoint& p, const RootFactors& r,
                          const HelicityLabels& h, const TermInputs& t);

// Overall factor cal * (-Z alpha / 4 pi) of the master equation.
double master_prefactor(const TwoBodyConfig& cfg);

// Log-singular split of a kernel block: V(k,k') = A(k,k') Q_0(y) + R(k,k'),
// with A and R finite at k = k'.
struct KernelSplit {
  Eigen::MatrixXd A, R;
};

// All channel pairs of one block; rows = outgoing channel (momentum kp),
// columns = incoming channel (momentum k).
class KernelEvaluator {
 public:
  KernelEvaluator(const TwoBodyConfig& cfg, const ChannelBlock& block, const FormFactorSet& ffs);

  Eigen::MatrixXd full(const KinPoint& p) const;  // requires k != kp
  KernelSplit split(const KinPoint& p) const;     // any k, kp
  // coefficient A of Q_0(y), any k, kp
  Eigen::MatrixXd log_coefficient(const KinPoint& p) const;
  // lim_{kp -> k} (V - A Q_0), requires k == kp
  Eigen::MatrixXd diagonal_regular(const KinPoint& p) const;
  std::size_t size() const { return block_.channels.size(); }
  const ChannelBlock& block() const { return block_; }

 private:
  Eigen::MatrixXd combine(const KinPoint& p, const MomentSet& m) const;

  TwoBodyConfig cfg_;
  ChannelBlock block_;
  FormFactorSet ffs_;
  int lmax_;
  std::array<HelicityLabels, 16> hel_;
  std::array<std::vector<double>, 16> gdirect_, gcross_;
  // channel-projection weight per (out, in, helicity), prefactor included
  std::vector<std::array<double, 16>> weight_;
};

double kernel_element(const TwoBodyConfig& cfg, const ChannelBlock& block, int chan_out, int chan_in,
                      const KinPoint& p, const FormFactorSet& ffs);

}  // namespace pwk
