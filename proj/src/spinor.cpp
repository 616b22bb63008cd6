#include "pwk/spinor.hpp"

#include <cmath>

#include "pwk/special_fn.hpp"

namespace pwk {

cplx minkowski(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

const Tetrad& numeric_tetrad() {
  static const Tetrad t{
      {cplx(0.5), cplx(0.0), cplx(0.0), cplx(0.5)},
      {cplx(0.5), cplx(0.0), cplx(0.0), cplx(-0.5)},
      {cplx(0.0), cplx(0.5), cplx(0.0, 0.5), cplx(0.0)},
      {cplx(0.0), cplx(-0.5), cplx(0.0, 0.5), cplx(0.0)},
  };
  return t;
}

FourVector gamma_block(int C, int A, int sigma, int rho) {
  FourVector out{};
  if (sigma != -rho) return out;
  const Tetrad& t = numeric_tetrad();
  for (int mu = 0; mu < 4; ++mu) {
    cplx v = 0.0;
    if (C == -A) v += t.b(-A)[mu];
    if (C == A) v += static_cast<double>(A) * t.n(-A * rho)[mu];
    out[mu] = 2.0 * v;
  }
  return out;
}

std::array<HelicityLabels, 16> all_helicities() {
  std::array<HelicityLabels, 16> out{};
  int i = 0;
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int c : {1, -1})
        for (int d : {1, -1}) out[i++] = HelicityLabels{a, b, c, d};
  return out;
}

double d_half(int a, int b, double beta) {
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  if (a == b) return c;
  return a > b ? -s : s;
}

cplx s_coeff(double m, double k, double theta, double phi, int A, int rho, int lambda) {
  const double w = omega(m, k);
  const double wt = std::sqrt(w - lambda * rho * k);
  // D^{1/2 *}_{m,m'}(phi, theta, -phi) = e^{i m phi} d e^{-i m' phi}
  const double mm = 0.5 * A * rho, mp = -0.5 * lambda;
  const cplx dconj = std::polar(1.0, (mm - mp) * phi) * d_half(A * rho, -lambda, theta);
  return -static_cast<double>(lambda) * wt * dconj;
}

RootFactors::RootFactors(const TwoBodyConfig& cfg, const KinPoint& p) {
  w1k = omega(cfg.m1, p.k);
  w1p = omega(cfg.m1, p.kp);
  w2k = omega(cfg.m2, p.k);
  w2p = omega(cfg.m2, p.kp);
  const double v[4] = {p.k / w1k, p.k / w2k, p.kp / w1p, p.kp / w2p};
  double* rows[4] = {k1, k2, p1, p2};
  for (int i = 0; i < 4; ++i) {
    rows[i][0] = std::sqrt(1.0 - v[i]);
    rows[i][1] = std::sqrt(1.0 + v[i]);
  }
}

double contract_vector_vector(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h) {
  const RootFactors r(cfg, p);
  const double direct = d_half(h.lk1, h.lp1, beta) * d_half(-h.lk2, -h.lp2, beta);
  const double cross = d_half(-h.lk1, h.lp1, beta) * d_half(h.lk1, -h.lp2, beta);
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int t : {-1, 1}) {
      double bracket = 0.0;
      if (h.lk1 == h.lk2) bracket -= t * s * cross;
      if (t * h.lk1 == s * h.lk2) bracket += direct;
      sum += r.wk(-s * h.lk1, -t * h.lk2) * r.wp(-s * h.lp1, -t * h.lp2) * bracket;
    }
  return 2.0 * sum;
}

double contract_scalar_slash1(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h) {
  const RootFactors r(cfg, p);
  const double pp = d_half(h.lk1, h.lp1, beta) * d_half(-h.lk2, -h.lp2, beta);
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int t : {-1, 1})
      sum += r.wk(-s * h.lk1, -t * h.lk2) * r.wp(s * h.lp1, -t * h.lp2) *
             ((r.w1k + r.w1p) - t * (h.lk2 * p.k + h.lp2 * p.kp));
  return pp * sum;
}

double contract_slash2_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h) {
  const RootFactors r(cfg, p);
  const double pp = d_half(h.lk1, h.lp1, beta) * d_half(-h.lk2, -h.lp2, beta);
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int t : {-1, 1})
      sum += r.wk(-s * h.lk1, -t * h.lk2) * r.wp(-s * h.lp1, t * h.lp2) *
             ((r.w2k + r.w2p) - s * (h.lk1 * p.k + h.lp1 * p.kp));
  return pp * sum;
}

double contract_scalar_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                              const HelicityLabels& h) {
  const RootFactors r(cfg, p);
  const double pp = d_half(h.lk1, h.lp1, beta) * d_half(-h.lk2, -h.lp2, beta);
  const double e1 = r.w1k + r.w1p, e2 = r.w2k + r.w2p;
  const double bracket = p.kp * p.kp + p.k * p.k + e1 * e2 + 2.0 * p.k * p.kp * std::cos(beta);
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int t : {-1, 1}) sum += r.wk(-s * h.lk1, -t * h.lk2) * r.wp(s * h.lp1, t * h.lp2);
  return pp * bracket * sum;
}

double contract_time_time(const TwoBodyConfig& cfg, const KinPoint& p, double beta,
                          const HelicityLabels& h, const KValues& kv) {
  const RootFactors r(cfg, p);
  const double pp = d_half(h.lk1, h.lp1, beta) * d_half(-h.lk2, -h.lp2, beta);
  const double c2 = (r.w1k + r.w1p) / (2.0 * cfg.m1);
  const double c3 = (r.w2k + r.w2p) / (2.0 * cfg.m2);
  double sum = 0.0;
  for (int s : {-1, 1})
    for (int t : {-1, 1}) {
      const int a = s * h.lp1, b = t * h.lp2;
      sum += r.wk(-s * h.lk1, -t * h.lk2) *
             (kv.kI * r.wp(-a, -b) - kv.kII * c2 * r.wp(a, -b) - kv.kIII * c3 * r.wp(-a, b) +
              kv.kIV * c2 * c3 * r.wp(a, b));
    }
  return pp * sum;
}

}  // namespace pwk
