#include "pwk/kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "pwk/special_fn.hpp"

namespace pwk {

namespace {
// Sign with which the rho12 J0 J0 / q^4 remainder of the current projector
// enters the amplitude, relative to the J.J / q^2 part.
constexpr double kProjectorSign = -1.0;
}  // namespace

ChannelBlock ChannelBlock::make(int J, BlockKind kind) {
  if (J < 0) throw std::invalid_argument("J must be non-negative");
  ChannelBlock b;
  b.J = J;
  b.kind = kind;
  if (kind == BlockKind::Singlet) {
    b.channels.push_back({J, 0});
    if (J >= 1) b.channels.push_back({J, 1});
  } else {
    if (J >= 1) b.channels.push_back({J - 1, 1});
    b.channels.push_back({J + 1, 1});
  }
  b.validate();
  return b;
}

void ChannelBlock::validate() const {
  if (J < 0 || J > kMaxEll - 3) throw std::invalid_argument("J outside supported range");
  if (channels.empty()) throw std::invalid_argument("empty channel block");
  for (const auto& c : channels) {
    if (c.S != 0 && c.S != 1) throw std::invalid_argument("channel spin must be 0 or 1");
    if (c.ell < 0 || std::abs(c.ell - c.S) > J || J > c.ell + c.S)
      throw std::invalid_argument("channel violates |l - S| <= J <= l + S");
  }
}

std::string ChannelBlock::label() const {
  return "J=" + std::to_string(J) + (kind == BlockKind::Singlet ? " singlet" : " triplet");
}

GArgs GArgs::from_labels(int J, const HelicityLabels& h, int ts1, int ts2) {
  return {J, ts1, ts2, h.lk1, -h.lk2, h.lp1, -h.lp2};
}

std::vector<double> g_vector(const GArgs& a) {
  const int smax2 = a.ts1 + a.ts2;
  std::vector<double> c(a.J + smax2 / 2 + 1, 0.0);
  const int tM = a.tm1 + a.tm2, tMp = a.tm1p + a.tm2p;
  const int tJ = 2 * a.J;
  for (int ts = std::abs(a.ts1 - a.ts2); ts <= smax2; ts += 2) {
    const double cin = clebsch_gordan_2(a.ts1, a.tm1, a.ts2, a.tm2, ts, tM);
    const double cout = clebsch_gordan_2(a.ts1, a.tm1p, a.ts2, a.tm2p, ts, tMp);
    if (cin == 0.0 || cout == 0.0) continue;
    for (int l = std::abs(a.J - ts / 2); l <= a.J + ts / 2; ++l) {
      const double w = (2.0 * l + 1.0) / (2.0 * a.J + 1.0);
      c[l] += w * cin * clebsch_gordan_2(2 * l, 0, ts, tM, tJ, tM) * cout *
              clebsch_gordan_2(2 * l, 0, ts, tMp, tJ, tMp);
    }
  }
  return c;
}

double g_coeff(const GArgs& a, const std::vector<double>& moments) {
  const auto c = g_vector(a);
  double s = 0.0;
  for (std::size_t l = 0; l < c.size(); ++l) {
    if (c[l] == 0.0) continue;
    if (l >= moments.size()) throw std::out_of_range("g_coeff: missing moment");
    s += c[l] * moments[l];
  }
  return s;
}

namespace {

double dot(const std::vector<double>& c, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t l = 0; l < c.size(); ++l) s += c[l] * v[l];
  return s;
}

TermInputs inputs_from(const std::vector<double>& gd, const std::vector<double>& gc, const MomentSet& m) {
  TermInputs t;
  for (int X = 0; X < 4; ++X) {
    if (!m.active[X]) continue;
    t.gR[X] = dot(gd, m.R[X]);
    t.gU[X] = dot(gd, m.U[X]);
  }
  if (m.active[3]) {
    double z = 0.0;
    for (std::size_t l = 0; l < gd.size(); ++l) z += gd[l] * m.Z(3, static_cast<int>(l));
    t.gZ4 = z;
  }
  if (!gc.empty()) t.gRcross = dot(gc, m.R[0]);
  return t;
}

std::vector<double> cross_vector(int J, const HelicityLabels& h) {
  if (h.lk1 != h.lk2) return {};
  return g_vector({J, 1, 1, -h.lk1, h.lk1, h.lp1, -h.lp2});
}

}  // namespace

TermInputs term_inputs(int J, const HelicityLabels& h, const MomentSet& m) {
  return inputs_from(g_vector(GArgs::from_labels(J, h)), cross_vector(J, h), m);
}

namespace {

double term_I(const RootFactors& r, const HelicityLabels& h, const TermInputs& t) {
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int q : {-1, 1}) {
      double b = 0.0;
      if (h.lk1 == h.lk2) b -= q * s * t.gRcross;
      if (q * h.lk1 == s * h.lk2) b += t.gR[0];
      sum += r.wk(-s * h.lk1, -q * h.lk2) * r.wp(-s * h.lp1, -q * h.lp2) * b;
    }
  return 2.0 * sum;
}

double term_II(const TwoBodyConfig& cfg, const KinPoint& p, const RootFactors& r, const HelicityLabels& h,
               const TermInputs& t) {
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int q : {-1, 1})
      sum += r.wk(-s * h.lk1, -q * h.lk2) * r.wp(s * h.lp1, -q * h.lp2) *
             ((r.w1k + r.w1p) - q * (h.lk2 * p.k + h.lp2 * p.kp));
  return -sum * t.gR[1] / (2.0 * cfg.m1);
}

double term_III(const TwoBodyConfig& cfg, const KinPoint& p, const RootFactors& r, const HelicityLabels& h,
                const TermInputs& t) {
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int q : {-1, 1})
      sum += r.wk(-s * h.lk1, -q * h.lk2) * r.wp(-s * h.lp1, q * h.lp2) *
             ((r.w2k + r.w2p) - s * (h.lk1 * p.k + h.lp1 * p.kp));
  return -sum * t.gR[2] / (2.0 * cfg.m2);
}

double term_IV(const TwoBodyConfig& cfg, const KinPoint& p, const RootFactors& r, const HelicityLabels& h,
               const TermInputs& t) {
  double w = 0.0;
  for (int s : {-1, 1})
    for (int q : {-1, 1}) w += r.wk(-s * h.lk1, -q * h.lk2) * r.wp(s * h.lp1, q * h.lp2);
  const double e1e2 = (r.w1k + r.w1p) * (r.w2k + r.w2p);
  const double bracket = (p.kp * p.kp + p.k * p.k + e1e2) * t.gR[3] + 2.0 * p.k * p.kp * t.gZ4;
  return w * bracket / (4.0 * cfg.m1 * cfg.m2);
}

double term_B(const TwoBodyConfig& cfg, const RootFactors& r, const HelicityLabels& h, const TermInputs& t) {
  const double c2 = (r.w1k + r.w1p) / (2.0 * cfg.m1);
  const double c3 = (r.w2k + r.w2p) / (2.0 * cfg.m2);
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int q : {-1, 1}) {
      const int a = s * h.lp1, b = q * h.lp2;
      sum += r.wk(-s * h.lk1, -q * h.lk2) *
             (t.gU[0] * r.wp(-a, -b) - t.gU[1] * c2 * r.wp(a, -b) - t.gU[2] * c3 * r.wp(-a, b) +
              t.gU[3] * c2 * c3 * r.wp(a, b));
    }
  return kProjectorSign * sum;
}

}  // namespace

double v_term_I(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t) {
  return term_I(RootFactors(cfg, p), h, t);
}
double v_term_II(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t) {
  return term_II(cfg, p, RootFactors(cfg, p), h, t);
}
double v_term_III(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t) {
  return term_III(cfg, p, RootFactors(cfg, p), h, t);
}
double v_term_IV(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t) {
  return term_IV(cfg, p, RootFactors(cfg, p), h, t);
}
double v_term_B(const TwoBodyConfig& cfg, const KinPoint& p, const HelicityLabels& h, const TermInputs& t) {
  return term_B(cfg, RootFactors(cfg, p), h, t);
}

double helicity_amplitude(const TwoBodyConfig& cfg, const KinPoint& p, const RootFactors& r,
                          const HelicityLabels& h, const TermInputs& t) {
  double v = term_I(r, h, t) + term_B(cfg, r, h, t);
  if (t.gR[1] != 0.0) v += term_II(cfg, p, r, h, t);
  if (t.gR[2] != 0.0) v += term_III(cfg, p, r, h, t);
  if (t.gR[3] != 0.0 || t.gZ4 != 0.0) v += term_IV(cfg, p, r, h, t);
  return v;
}

double master_prefactor(const TwoBodyConfig& cfg) {
  return cfg.calibration * (-cfg.Z * cfg.alpha / (4.0 * M_PI));
}

KernelEvaluator::KernelEvaluator(const TwoBodyConfig& cfg, const ChannelBlock& block, const FormFactorSet& ffs)
    : cfg_(cfg), block_(block), ffs_(ffs), lmax_(block.J + 1), hel_(all_helicities()) {
  cfg_.validate();
  block_.validate();
  const int J = block_.J;
  for (int i = 0; i < 16; ++i) {
    gdirect_[i] = g_vector(GArgs::from_labels(J, hel_[i]));
    gcross_[i] = cross_vector(J, hel_[i]);
  }
  const std::size_t nc = block_.channels.size();
  weight_.assign(nc * nc, {});
  const double pref = master_prefactor(cfg_);
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) {
      const Channel out = block_.channels[a], in = block_.channels[b];
      const double norm = pref * std::sqrt((2.0 * in.ell + 1) * (2.0 * out.ell + 1)) / (2.0 * J + 1);
      for (int i = 0; i < 16; ++i) {
        const auto& h = hel_[i];
        const int tl = h.lk1 - h.lk2, tlp = h.lp1 - h.lp2;
        const double w = clebsch_gordan_2(1, h.lk1, 1, -h.lk2, 2 * in.S, tl) *
                         clebsch_gordan_2(2 * in.ell, 0, 2 * in.S, tl, 2 * J, tl) *
                         clebsch_gordan_2(2 * out.ell, 0, 2 * out.S, tlp, 2 * J, tlp) *
                         clebsch_gordan_2(1, h.lp1, 1, -h.lp2, 2 * out.S, tlp);
        weight_[a * nc + b][i] = norm * w;
      }
    }
}

Eigen::MatrixXd KernelEvaluator::combine(const KinPoint& p, const MomentSet& m) const {
  const std::size_t nc = block_.channels.size();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(nc, nc);
  const RootFactors r(cfg_, p);
  for (int i = 0; i < 16; ++i) {
    bool needed = false;
    for (std::size_t ab = 0; ab < nc * nc; ++ab) needed = needed || weight_[ab][i] != 0.0;
    if (!needed) continue;
    const TermInputs t = inputs_from(gdirect_[i], gcross_[i], m);
    const double amp = helicity_amplitude(cfg_, p, r, hel_[i], t);
    for (std::size_t a = 0; a < nc; ++a)
      for (std::size_t b = 0; b < nc; ++b) v(a, b) += weight_[a * nc + b][i] * amp;
  }
  return v;
}

Eigen::MatrixXd KernelEvaluator::full(const KinPoint& p) const {
  return combine(p, compute_moments(cfg_, ffs_, p, lmax_, MomentMode::Full));
}

Eigen::MatrixXd KernelEvaluator::log_coefficient(const KinPoint& p) const {
  return combine(p, compute_moments(cfg_, ffs_, p, lmax_, MomentMode::LogCoefficient));
}

Eigen::MatrixXd KernelEvaluator::diagonal_regular(const KinPoint& p) const {
  if (p.k != p.kp) throw std::domain_error("diagonal_regular: requires k == kp");
  return combine(p, compute_moments(cfg_, ffs_, p, lmax_, MomentMode::DiagonalRegular));
}

KernelSplit KernelEvaluator::split(const KinPoint& p) const {
  KernelSplit s;
  s.A = log_coefficient(p);
  if (p.k == p.kp) {
    s.R = diagonal_regular(p);
  } else {
    const double q0 = std::log((p.k + p.kp) / std::abs(p.k - p.kp));
    s.R = full(p) - s.A * q0;
  }
  return s;
}

double kernel_element(const TwoBodyConfig& cfg, const ChannelBlock& block, int chan_out, int chan_in,
                      const KinPoint& p, const FormFactorSet& ffs) {
  const int nc = static_cast<int>(block.channels.size());
  if (chan_out < 0 || chan_in < 0 || chan_out >= nc || chan_in >= nc)
    throw std::out_of_range("kernel_element: channel index");
  if (p.k == p.kp) throw std::domain_error("kernel_element: k == kp is handled by the solver");
  KernelEvaluator ev(cfg, block, ffs);
  return ev.full(p)(chan_out, chan_in);
}

}  // namespace pwk
