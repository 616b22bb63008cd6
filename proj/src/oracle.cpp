#include "pwk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pwk/quadrature.hpp"
#include "pwk/special_fn.hpp"

namespace pwk::oracle {

namespace {

const cplx I(0.0, 1.0);
constexpr double kMetric[4] = {1.0, -1.0, -1.0, -1.0};

Mat4 zero4() { return Mat4{}; }

Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat4 axpy(cplx s, const Mat4& a, const Mat4& b) {
  Mat4 c = b;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] += s * a[i][j];
  return c;
}

// sigma^{mu nu} = i/2 [gamma^mu, gamma^nu]
const std::array<std::array<Mat4, 4>, 4>& sigma_munu() {
  static const auto table = [] {
    std::array<std::array<Mat4, 4>, 4> s{};
    const auto& g = gamma();
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        const Mat4 a = mul(g[m], g[n]), b = mul(g[n], g[m]);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) s[m][n][i][j] = 0.5 * I * (a[i][j] - b[i][j]);
      }
    return s;
  }();
  return table;
}

using Mat2 = std::array<std::array<cplx, 2>, 2>;

Mat2 mul2(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// exp(-i phi sz/2) exp(-i theta sy/2) exp(+i phi sz/2)
Mat2 rotation(double theta, double phi) {
  const Mat2 rz1{{{std::exp(-0.5 * I * phi), 0.0}, {0.0, std::exp(0.5 * I * phi)}}};
  const Mat2 ry{{{std::cos(theta / 2), -std::sin(theta / 2)}, {std::sin(theta / 2), std::cos(theta / 2)}}};
  const Mat2 rz2{{{std::exp(0.5 * I * phi), 0.0}, {0.0, std::exp(-0.5 * I * phi)}}};
  return mul2(mul2(rz1, ry), rz2);
}

FourVector four(double e, const Vec3& v) { return {cplx(e), cplx(v[0]), cplx(v[1]), cplx(v[2])}; }

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }
double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

void angles(const Vec3& v, double& theta, double& phi) {
  const double r = norm3(v);
  theta = r > 0.0 ? std::acos(std::clamp(v[2] / r, -1.0, 1.0)) : 0.0;
  phi = (v[0] == 0.0 && v[1] == 0.0) ? 0.0 : std::atan2(v[1], v[0]);
}

int hidx(int l) { return l > 0 ? 0 : 1; }
int label_index(const HelicityLabels& h) {
  return ((hidx(h.lk1) * 2 + hidx(h.lk2)) * 2 + hidx(h.lp1)) * 2 + hidx(h.lp2);
}

// Spinors of one two-body state: [particle][helicity index]
struct StateSpinors {
  Spinor u[2][2];
  double w1, w2;
};

StateSpinors state_spinors(const TwoBodyConfig& cfg, double k, double theta, double phi) {
  StateSpinors s;
  for (int l : {1, -1}) {
    s.u[0][hidx(l)] = helicity_spinor(cfg.m1, k, theta, phi, l, false);
    s.u[1][hidx(l)] = helicity_spinor(cfg.m2, k, theta, phi, l, true);
  }
  s.w1 = omega(cfg.m1, k);
  s.w2 = omega(cfg.m2, k);
  return s;
}

// Gamma^mu = F1 gamma^mu + i F2 sigma^{mu nu} q_nu / (2m), q = p_out - p_in
std::array<Mat4, 4> vertex(double f1, double f2, double m, const FourVector& q) {
  std::array<Mat4, 4> v{};
  const auto& g = gamma();
  const auto& sg = sigma_munu();
  for (int mu = 0; mu < 4; ++mu) {
    Mat4 acc = zero4();
    acc = axpy(f1, g[mu], acc);
    for (int nu = 0; nu < 4; ++nu) acc = axpy(I * f2 * kMetric[nu] * q[nu] / (2.0 * m), sg[mu][nu], acc);
    v[mu] = acc;
  }
  return v;
}

FourVector current(const Spinor& out, const std::array<Mat4, 4>& v, const Spinor& in) {
  FourVector j{};
  for (int mu = 0; mu < 4; ++mu) j[mu] = sandwich(out, v[mu], in);
  return j;
}

FourVector project(const FourVector& j, const FourVector& q) {
  const cplx qq = minkowski(q, q), qj = minkowski(q, j);
  FourVector r{};
  for (int mu = 0; mu < 4; ++mu) r[mu] = j[mu] - q[mu] * qj / qq;
  return r;
}

struct Geometry {
  Vec3 k1, p1;  // particle-1 momenta (particle 2 carries the negatives)
  double w1k, w1p, w2k, w2p;
};

Geometry geometry(const TwoBodyConfig& cfg, const Vec3& kvec, const Vec3& kpvec) {
  return {kvec, kpvec, omega(cfg.m1, norm3(kvec)), omega(cfg.m1, norm3(kpvec)), omega(cfg.m2, norm3(kvec)),
          omega(cfg.m2, norm3(kpvec))};
}

// Amplitudes from precomputed spinors of the incoming and outgoing states.
std::array<cplx, 16> amplitudes_from(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const Geometry& g,
                                     const StateSpinors& in, const StateSpinors& out, double xi) {
  const Vec3 dq{g.k1[0] - g.p1[0], g.k1[1] - g.p1[1], g.k1[2] - g.p1[2]};
  const FourVector q = four(0.0, dq);
  const double q2 = -(dq[0] * dq[0] + dq[1] * dq[1] + dq[2] * dq[2]);
  const FourVector q1 = four(g.w1p - g.w1k, {-dq[0], -dq[1], -dq[2]});
  const FourVector q2v = four(g.w2p - g.w2k, dq);
  const auto v1 = vertex(ffs.f1e(q2), ffs.f2e(q2), cfg.m1, q1);
  const auto v2 = vertex(ffs.f1p(q2), ffs.f2p(q2), cfg.m2, q2v);
  FourVector j1[2][2], j2[2][2];  // [out][in]
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      j1[a][b] = project(current(out.u[0][a], v1, in.u[0][b]), q);
      j2[a][b] = project(current(out.u[1][a], v2, in.u[1][b]), q);
    }
  const double N = 1.0 / std::sqrt(g.w1k * g.w1p * g.w2k * g.w2p);
  const double pref = cfg.calibration * (-1.0) * cfg.Z * cfg.alpha * ffs.pi_vp(cfg.alpha, q2) /
                      (8.0 * M_PI * M_PI * q2) * N;
  std::array<cplx, 16> out16{};
  for (const auto& h : all_helicities()) {
    const FourVector& a = j1[hidx(h.lp1)][hidx(h.lk1)];
    const FourVector& b = j2[hidx(h.lp2)][hidx(h.lk2)];
    const cplx gauge = minkowski(q, a) * minkowski(q, b) / q2;
    out16[label_index(h)] = pref * (minkowski(a, b) - (1.0 - xi) * gauge);
  }
  return out16;
}

double fact(int n) { return std::tgamma(n + 1.0); }

}  // namespace

const std::array<Mat4, 4>& gamma() {
  static const std::array<Mat4, 4> g = [] {
    std::array<Mat4, 4> m{};
    // gamma^0 = [[0, 1], [1, 0]], gamma^i = [[0, s_i], [-s_i, 0]]
    const std::array<std::array<std::array<cplx, 2>, 2>, 4> s{{
        {{{1.0, 0.0}, {0.0, 1.0}}},
        {{{0.0, 1.0}, {1.0, 0.0}}},
        {{{0.0, -I}, {I, 0.0}}},
        {{{1.0, 0.0}, {0.0, -1.0}}},
    }};
    for (int mu = 0; mu < 4; ++mu)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          m[mu][i][j + 2] = s[mu][i][j];
          m[mu][i + 2][j] = mu == 0 ? s[mu][i][j] : -s[mu][i][j];
        }
    return m;
  }();
  return g;
}

Mat4 identity4() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

Spinor helicity_spinor(double m, double k, double theta, double phi, int lambda, bool second) {
  const Mat2 R = rotation(theta, phi);
  const int proj = second ? -lambda : lambda;  // doubled projection in the rotated frame
  const int col = proj > 0 ? 0 : 1;
  const cplx xi0 = R[0][col], xi1 = R[1][col];
  const double w = std::hypot(m, k);
  const double lo = std::sqrt(w - lambda * k), hi = std::sqrt(w + lambda * k);
  return {lo * xi0, lo * xi1, hi * xi0, hi * xi1};
}

cplx sandwich(const Spinor& out, const Mat4& M, const Spinor& in) {
  // ubar = u^dagger gamma^0
  const Mat4& g0 = gamma()[0];
  cplx s = 0.0;
  for (int i = 0; i < 4; ++i) {
    cplx bar = 0.0;
    for (int k = 0; k < 4; ++k) bar += std::conj(out[k]) * g0[k][i];
    if (bar == 0.0) continue;
    cplx row = 0.0;
    for (int j = 0; j < 4; ++j) row += M[i][j] * in[j];
    s += bar * row;
  }
  return s;
}

Mat4 slash(const FourVector& a) {
  Mat4 m{};
  for (int mu = 0; mu < 4; ++mu) m = axpy(kMetric[mu] * a[mu], gamma()[mu], m);
  return m;
}

namespace {

struct Planar {
  Spinor u1k, u2k, u1p, u2p;
  double w1k, w1p, w2k, w2p, N;
  FourVector P1, P2;  // p + k of each particle
};

Planar planar(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h) {
  Planar s;
  s.u1k = helicity_spinor(cfg.m1, p.k, 0.0, 0.0, h.lk1, false);
  s.u2k = helicity_spinor(cfg.m2, p.k, 0.0, 0.0, h.lk2, true);
  s.u1p = helicity_spinor(cfg.m1, p.kp, beta, 0.0, h.lp1, false);
  s.u2p = helicity_spinor(cfg.m2, p.kp, beta, 0.0, h.lp2, true);
  s.w1k = omega(cfg.m1, p.k);
  s.w1p = omega(cfg.m1, p.kp);
  s.w2k = omega(cfg.m2, p.k);
  s.w2p = omega(cfg.m2, p.kp);
  s.N = 1.0 / std::sqrt(s.w1k * s.w1p * s.w2k * s.w2p);
  const Vec3 sum{p.kp * std::sin(beta), 0.0, p.k + p.kp * std::cos(beta)};
  s.P1 = four(s.w1k + s.w1p, sum);
  s.P2 = four(s.w2k + s.w2p, scaled(sum, -1.0));
  return s;
}

}  // namespace

cplx vector_vector(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h) {
  const Planar s = planar(cfg, p, beta, h);
  FourVector a{}, b{};
  for (int mu = 0; mu < 4; ++mu) {
    a[mu] = sandwich(s.u1p, gamma()[mu], s.u1k);
    b[mu] = sandwich(s.u2p, gamma()[mu], s.u2k);
  }
  return s.N * minkowski(a, b);
}

cplx scalar_slash1(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h) {
  const Planar s = planar(cfg, p, beta, h);
  return s.N * sandwich(s.u1p, identity4(), s.u1k) * sandwich(s.u2p, slash(s.P1), s.u2k);
}

cplx slash2_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h) {
  const Planar s = planar(cfg, p, beta, h);
  return s.N * sandwich(s.u1p, slash(s.P2), s.u1k) * sandwich(s.u2p, identity4(), s.u2k);
}

cplx scalar_scalar(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h) {
  const Planar s = planar(cfg, p, beta, h);
  return s.N * sandwich(s.u1p, identity4(), s.u1k) * sandwich(s.u2p, identity4(), s.u2k) *
         minkowski(s.P1, s.P2);
}

cplx time_time(const TwoBodyConfig& cfg, const KinPoint& p, double beta, const HelicityLabels& h,
               const KValues& kv) {
  const Planar s = planar(cfg, p, beta, h);
  const Mat4& g0 = gamma()[0];
  const cplx v1 = sandwich(s.u1p, g0, s.u1k), v2 = sandwich(s.u2p, g0, s.u2k);
  const cplx s1 = sandwich(s.u1p, identity4(), s.u1k), s2 = sandwich(s.u2p, identity4(), s.u2k);
  const double c1 = (s.w1k + s.w1p) / (2.0 * cfg.m1), c2 = (s.w2k + s.w2p) / (2.0 * cfg.m2);
  return s.N * (kv.kI * v1 * v2 - kv.kII * c1 * s1 * v2 - kv.kIII * c2 * v1 * s2 + kv.kIV * c1 * c2 * s1 * s2);
}

cplx time_time_sigma(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const KinPoint& p, double beta,
                     const HelicityLabels& h) {
  const Planar s = planar(cfg, p, beta, h);
  const double q2 = q2_of(p, std::cos(beta));
  const Vec3 kv{0.0, 0.0, p.k}, kpv{p.kp * std::sin(beta), 0.0, p.kp * std::cos(beta)};
  const Vec3 d1{kpv[0] - kv[0], kpv[1] - kv[1], kpv[2] - kv[2]};
  const auto v1 = vertex(ffs.f1e(q2), ffs.f2e(q2), cfg.m1, four(s.w1p - s.w1k, d1));
  const auto v2 = vertex(ffs.f1p(q2), ffs.f2p(q2), cfg.m2, four(s.w2p - s.w2k, scaled(d1, -1.0)));
  return s.N * sandwich(s.u1p, v1[0], s.u1k) * sandwich(s.u2p, v2[0], s.u2k);
}

CurrentPair projected_currents(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const Vec3& kvec,
                               const Vec3& kpvec, const HelicityLabels& h) {
  const Geometry g = geometry(cfg, kvec, kpvec);
  double th, ph, thp, php;
  angles(kvec, th, ph);
  angles(kpvec, thp, php);
  const StateSpinors in = state_spinors(cfg, norm3(kvec), th, ph);
  const StateSpinors out = state_spinors(cfg, norm3(kpvec), thp, php);
  const Vec3 dq{kvec[0] - kpvec[0], kvec[1] - kpvec[1], kvec[2] - kpvec[2]};
  const FourVector q = four(0.0, dq);
  const double q2 = -(dq[0] * dq[0] + dq[1] * dq[1] + dq[2] * dq[2]);
  const auto v1 = vertex(ffs.f1e(q2), ffs.f2e(q2), cfg.m1, four(g.w1p - g.w1k, scaled(dq, -1.0)));
  const auto v2 = vertex(ffs.f1p(q2), ffs.f2p(q2), cfg.m2, four(g.w2p - g.w2k, dq));
  CurrentPair c;
  c.q = q;
  c.j1 = project(current(out.u[0][hidx(h.lp1)], v1, in.u[0][hidx(h.lk1)]), q);
  c.j2 = project(current(out.u[1][hidx(h.lp2)], v2, in.u[1][hidx(h.lk2)]), q);
  return c;
}

std::array<cplx, 16> amplitudes(const TwoBodyConfig& cfg, const FormFactorSet& ffs, const Vec3& kvec,
                                const Vec3& kpvec, double xi) {
  double th, ph, thp, php;
  angles(kvec, th, ph);
  angles(kpvec, thp, php);
  return amplitudes_from(cfg, ffs, geometry(cfg, kvec, kpvec), state_spinors(cfg, norm3(kvec), th, ph),
                         state_spinors(cfg, norm3(kpvec), thp, php), xi);
}

double wigner_d_sum(int tj, int tmp, int tm, double beta) {
  if ((tj + tmp) % 2 != 0 || (tj + tm) % 2 != 0 || std::abs(tmp) > tj || std::abs(tm) > tj) return 0.0;
  const int jpm = (tj + tmp) / 2, jmm = (tj - tmp) / 2, jpn = (tj + tm) / 2, jmn = (tj - tm) / 2;
  const int dm = (tmp - tm) / 2;
  const double pre = std::sqrt(fact(jpm) * fact(jmm) * fact(jpn) * fact(jmn));
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  double sum = 0.0;
  for (int k = std::max(0, -dm); k <= std::min(jpn, jmm); ++k) {
    const double den = fact(jpn - k) * fact(k) * fact(dm + k) * fact(jmm - k);
    const double sign = ((dm + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign / den * std::pow(c, tj - dm - 2 * k) * std::pow(s, dm + 2 * k);
  }
  return pre * sum;
}

std::array<cplx, 16> hel2(const TwoBodyConfig& cfg, const FormFactorSet& ffs, int J, const KinPoint& p,
                          const AngularOptions& opt) {
  if (p.k == p.kp) throw std::domain_error("oracle hel2: k == kp");
  const double ym1 = y_minus_one(p);
  // Quadrature in s = 1 - x. Near the forward peak (y close to 1) the nodes
  // are placed in u = ln(y - x); far from it the 1/(y - x) factor is smooth
  // and s is integrated directly, since y - e^u would lose digits of x.
  struct Node {
    double s, w;
  };
  std::vector<Node> nodes;
  if (ym1 < 1.0) {
    const double ua = std::log(ym1), ub = std::log(ym1 + 2.0);
    const int panels = std::max(1, static_cast<int>(std::ceil((ub - ua) / 2.0)));
    const GaussRule& rule = gauss_legendre(std::max(8, opt.n_u / panels));
    const double h = (ub - ua) / panels;
    for (int pi = 0; pi < panels; ++pi)
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double e = std::exp(ua + pi * h + 0.5 * h * (rule.x[i] + 1.0));
        nodes.push_back({e - ym1, 0.5 * h * rule.w[i] * e});
      }
  } else {
    const GaussRule& rule = gauss_legendre(opt.n_u);
    for (std::size_t i = 0; i < rule.x.size(); ++i) nodes.push_back({rule.x[i] + 1.0, rule.w[i]});
  }
  const Vec3 kvec{0.0, 0.0, p.k};
  const StateSpinors in = state_spinors(cfg, p.k, 0.0, 0.0);
  const auto hs = all_helicities();
  std::array<cplx, 16> acc{};
  for (const auto& nd : nodes) {
    {
      const double beta = 2.0 * std::asin(std::sqrt(std::clamp(0.5 * nd.s, 0.0, 1.0)));
      const double wx = nd.w;
      for (int j = 0; j < opt.n_phi; ++j) {
        const double phi = 2.0 * M_PI * j / opt.n_phi;
        const Vec3 kpvec{p.kp * std::sin(beta) * std::cos(phi), p.kp * std::sin(beta) * std::sin(phi),
                         p.kp * std::cos(beta)};
        const StateSpinors out = state_spinors(cfg, p.kp, beta, phi);
        const auto amp = amplitudes_from(cfg, ffs, geometry(cfg, kvec, kpvec), in, out, opt.xi);
        const double wphi = 2.0 * M_PI / opt.n_phi;
        for (const auto& hl : hs) {
          const int tl = hl.lk1 - hl.lk2, tlp = hl.lp1 - hl.lp2;
          // D^J_{l,l'}(phi, beta, -phi) = e^{-i l phi} d e^{i l' phi}
          const cplx D = std::exp(I * (0.5 * (tlp - tl) * phi)) * wigner_d_sum(2 * J, tl, tlp, beta);
          acc[label_index(hl)] += wx * wphi * D * amp[label_index(hl)];
        }
      }
    }
  }
  return acc;
}

Eigen::MatrixXd kernel_block(const TwoBodyConfig& cfg, const ChannelBlock& block, const KinPoint& p,
                             const FormFactorSet& ffs, const AngularOptions& opt) {
  const int J = block.J;
  const std::size_t nc = block.channels.size();
  const auto h2 = hel2(cfg, ffs, J, p, opt);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(nc, nc);
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) {
      const Channel out = block.channels[a], in = block.channels[b];
      double sum = 0.0;
      for (const auto& h : all_helicities()) {
        const int tl = h.lk1 - h.lk2, tlp = h.lp1 - h.lp2;
        const double w = clebsch_gordan_2(1, h.lk1, 1, -h.lk2, 2 * in.S, tl) *
                         clebsch_gordan_2(2 * in.ell, 0, 2 * in.S, tl, 2 * J, tl) *
                         clebsch_gordan_2(2 * out.ell, 0, 2 * out.S, tlp, 2 * J, tlp) *
                         clebsch_gordan_2(1, h.lp1, 1, -h.lp2, 2 * out.S, tlp);
        sum += w * h2[label_index(h)].real();
      }
      v(a, b) = std::sqrt((2.0 * in.ell + 1) * (2.0 * out.ell + 1)) / (2.0 * J + 1) * sum;
    }
  return v;
}

double kernel_element(const TwoBodyConfig& cfg, const ChannelBlock& block, int chan_out, int chan_in,
                      const KinPoint& p, const FormFactorSet& ffs, const AngularOptions& opt) {
  block.channels.at(chan_out);
  block.channels.at(chan_in);
  return kernel_block(cfg, block, p, ffs, opt)(chan_out, chan_in);
}

std::array<cplx, 16> hel1(const TwoBodyConfig& cfg, const FormFactorSet& ffs, int J, int mu, int Jp, int mup,
                          const KinPoint& p, const RawOptions& opt) {
  const GaussRule& rule = gauss_legendre(opt.n_theta);
  struct Dir {
    double theta, phi, w;
    Vec3 n;
  };
  std::vector<Dir> dirs;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double th = 0.5 * M_PI * (rule.x[i] + 1.0);
    const double wt = 0.5 * M_PI * rule.w[i] * std::sin(th);
    for (int j = 0; j < opt.n_phi; ++j) {
      const double ph = 2.0 * M_PI * (j + 0.5) / opt.n_phi;
      dirs.push_back({th, ph, wt * 2.0 * M_PI / opt.n_phi,
                      {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}});
    }
  }
  std::vector<StateSpinors> sin_, sout;
  for (const auto& d : dirs) {
    sin_.push_back(state_spinors(cfg, p.k, d.theta, d.phi));
    sout.push_back(state_spinors(cfg, p.kp, d.theta, d.phi));
  }
  const auto hs = all_helicities();
  std::array<cplx, 16> acc{};
  for (std::size_t a = 0; a < dirs.size(); ++a) {
    const Vec3 kvec = scaled(dirs[a].n, p.k);
    std::array<cplx, 3> dk{};  // D^{J *}_{mu, l}(k) for l = -1, 0, 1
    for (int l = -1; l <= 1; ++l)
      dk[l + 1] = std::conj(std::exp(-I * double(mu) * dirs[a].phi) * wigner_d_sum(2 * J, 2 * mu, 2 * l, dirs[a].theta) *
                            std::exp(I * double(l) * dirs[a].phi));
    for (std::size_t b = 0; b < dirs.size(); ++b) {
      const Vec3 kpvec = scaled(dirs[b].n, p.kp);
      const auto amp = amplitudes_from(cfg, ffs, geometry(cfg, kvec, kpvec), sin_[a], sout[b], opt.xi);
      std::array<cplx, 3> dp{};
      for (int l = -1; l <= 1; ++l)
        dp[l + 1] = std::exp(-I * double(mup) * dirs[b].phi) * wigner_d_sum(2 * Jp, 2 * mup, 2 * l, dirs[b].theta) *
                    std::exp(I * double(l) * dirs[b].phi);
      const double w = dirs[a].w * dirs[b].w;
      for (const auto& h : hs) {
        const int l = (h.lk1 - h.lk2) / 2, lp = (h.lp1 - h.lp2) / 2;
        acc[label_index(h)] += w * dp[lp + 1] * dk[l + 1] * amp[label_index(h)];
      }
    }
  }
  const double pref = std::sqrt((2.0 * J + 1) * (2.0 * Jp + 1)) / (4.0 * M_PI);
  for (auto& v : acc) v *= pref;
  return acc;
}

}  // namespace pwk::oracle
