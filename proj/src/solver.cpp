#include "pwk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "pwk/quadrature.hpp"
#include "pwk/special_fn.hpp"

namespace pwk {

MomentumGrid build_grid_unchecked(int n, double k0) {
  if (n < 1) throw std::invalid_argument("grid size must be positive");
  if (!(k0 > 0.0)) throw std::invalid_argument("grid scale k0 must be positive");
  const GaussRule& rule = gauss_legendre(n);
  MomentumGrid g;
  g.n = n;
  g.k0 = k0;
  g.t = rule.x;
  g.wt = rule.w;
  for (int j = 0; j < n; ++j) {
    const double a = 0.25 * M_PI * (rule.x[j] + 1.0);
    const double c = std::cos(a);
    const double jac = k0 * 0.25 * M_PI / (c * c);
    g.nodes.push_back(k0 * std::tan(a));
    g.jacobian.push_back(jac);
    g.weights.push_back(rule.w[j] * jac);
  }
  return g;
}

MomentumGrid build_grid(int n, double k0) {
  if (n < 8) throw std::invalid_argument("grid size N must be at least 8 (got " + std::to_string(n) + ")");
  return build_grid_unchecked(n, k0);
}

namespace {

// y - 1 for two reference points, free of cancellation near t = t'
double ym1_of_t(double t, double tp) {
  const double s = std::sin(0.25 * M_PI * (t - tp));
  return 2.0 * s * s / (std::sin(0.5 * M_PI * (t + 1.0)) * std::sin(0.5 * M_PI * (tp + 1.0)));
}

struct Barycentric {
  std::vector<double> x, lam;

  explicit Barycentric(const GaussRule& r) : x(r.x), lam(r.x.size()) {
    for (std::size_t j = 0; j < x.size(); ++j)
      lam[j] = ((j & 1) ? -1.0 : 1.0) * std::sqrt((1.0 - x[j] * x[j]) * r.w[j]);
  }

  // all Lagrange basis values at t
  void eval(double t, std::vector<double>& out) const {
    const std::size_t n = x.size();
    out.assign(n, 0.0);
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = t - x[j];
      if (d == 0.0) {
        out.assign(n, 0.0);
        out[j] = 1.0;
        return;
      }
      out[j] = lam[j] / d;
      den += out[j];
    }
    for (auto& v : out) v /= den;
  }
};

// Panel edges on [0, len] for a log singularity at 0: geometric down to 1e-14,
// then uniform steps of at most hmax.
std::vector<double> graded_edges(double len, double hmax) {
  std::vector<double> e{0.0};
  if (len <= 0.0) return e;
  const double first = std::min(len, hmax);
  std::vector<double> small;
  for (double d = first; d > 1e-14; d *= 0.15) small.push_back(d);
  std::reverse(small.begin(), small.end());
  for (double d : small) e.push_back(d);
  const int steps = static_cast<int>(std::ceil((len - first) / hmax - 1e-12));
  for (int s = 1; s <= steps; ++s) e.push_back(first + (len - first) * s / steps);
  return e;
}

Eigen::MatrixXd compute_log_table(int n, int ell) {
  const GaussRule& nodes = gauss_legendre(n);
  const Barycentric bary(nodes);
  const GaussRule& outer = gauss_legendre(2 * n + 20);
  const GaussRule& panel = gauss_legendre(12);
  const double hmax = 1.0 / n;

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> Lt, Ls;
  Eigen::VectorXd inner(n);
  for (std::size_t o = 0; o < outer.x.size(); ++o) {
    const double t = outer.x[o];
    inner.setZero();
    for (int side : {-1, 1}) {
      const double len = side > 0 ? 1.0 - t : 1.0 + t;
      const auto edges = graded_edges(len, hmax);
      for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e], b = edges[e + 1];
        for (std::size_t q = 0; q < panel.x.size(); ++q) {
          const double d = 0.5 * (a + b) + 0.5 * (b - a) * panel.x[q];
          const double w = 0.5 * (b - a) * panel.w[q];
          const double tp = t + side * d;
          const double z = ym1_of_t(t, tp);
          if (!(z > 0.0)) continue;
          const double Q = legendre_q_all(ell, z)[ell];
          if (Q == 0.0) continue;
          bary.eval(tp, Ls);
          for (int j = 0; j < n; ++j) inner[j] += w * Q * Ls[j];
        }
      }
    }
    bary.eval(t, Lt);
    for (int i = 0; i < n; ++i) G.row(i) += outer.w[o] * Lt[i] * inner.transpose();
  }
  return 0.5 * (G + G.transpose());
}

std::string fmt_sci(const char* what, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return std::string(what) + buf;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Called on the potential part alone, before the kinetic diagonal is added,
// so the asymmetry is measured against the interaction scale.
void symmetrize(KernelMatrix& km) {
  const double scale = max_abs(km.H);
  km.asymmetry = scale > 0.0 ? max_abs(km.H - km.H.transpose()) / scale : 0.0;
  km.H = 0.5 * (km.H + km.H.transpose());
}

}  // namespace

const Eigen::MatrixXd& log_table(int n, int ell) {
  if (n < 1) throw std::invalid_argument("log_table: n < 1");
  if (ell < 0 || ell > kMaxEll) throw std::invalid_argument("log_table: ell out of range");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Eigen::MatrixXd>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, ell});
    if (it != cache.end()) return *it->second;
  }
  auto table = std::make_unique<Eigen::MatrixXd>(compute_log_table(n, ell));
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, ell}];
  if (!slot) slot = std::move(table);
  return *slot;
}

KernelMatrix assemble_smooth(const SmoothKernel& v, std::size_t channels, const MomentumGrid& grid,
                             const std::function<double(double)>& kinetic_fn, double threshold) {
  const int n = grid.n;
  const std::size_t dim = channels * n;
  KernelMatrix km;
  km.H = Eigen::MatrixXd::Zero(dim, dim);
  km.threshold = threshold;
  km.channels = channels;
  km.grid = grid;
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) c[i] = grid.nodes[i] * std::sqrt(grid.weights[i]);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd blk = v(grid.nodes[i], grid.nodes[j]);
      for (std::size_t a = 0; a < channels; ++a)
        for (std::size_t b = 0; b < channels; ++b) km.H(a * n + i, b * n + j) = c[i] * c[j] * blk(a, b);
    }
  symmetrize(km);
  for (std::size_t a = 0; a < channels; ++a)
    for (int i = 0; i < n; ++i) km.H(a * n + i, a * n + i) += kinetic_fn(grid.nodes[i]);
  return km;
}

KernelMatrix assemble_singular(const SingularKernel& v, const MomentumGrid& grid,
                               const std::function<double(double)>& kinetic_fn, double threshold) {
  const std::size_t nc = v.channels;
  const int n = grid.n;
  const Eigen::MatrixXi& lbar = v.singular_ell;
  if (static_cast<std::size_t>(lbar.rows()) != nc || static_cast<std::size_t>(lbar.cols()) != nc)
    throw std::invalid_argument("singular_ell must be channels x channels");
  const int lmax = lbar.maxCoeff();
  std::vector<const Eigen::MatrixXd*> tables(lmax + 1, nullptr);
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b)
      if (!tables[lbar(a, b)]) tables[lbar(a, b)] = &log_table(n, lbar(a, b));

  std::vector<double> c(n), sw(n);
  for (int i = 0; i < n; ++i) {
    c[i] = grid.nodes[i] * std::sqrt(grid.jacobian[i]);
    sw[i] = std::sqrt(grid.wt[i]);
  }

  KernelMatrix km;
  km.H = Eigen::MatrixXd::Zero(nc * n, nc * n);
  km.threshold = threshold;
  km.channels = nc;
  km.grid = grid;

#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const KinPoint p{grid.nodes[j], grid.nodes[i]};
      const Eigen::MatrixXd A = v.log_coefficient(p);
      Eigen::MatrixXd Rr, B(nc, nc);
      if (i == j) {
        Rr = v.diagonal_regular(p);
        for (std::size_t a = 0; a < nc; ++a)
          for (std::size_t b = 0; b < nc; ++b) {
            B(a, b) = A(a, b);
            Rr(a, b) += A(a, b) * harmonic(lbar(a, b));
          }
      } else {
        Rr = v.full(p);
        const double ym1 = y_minus_one(p);
        const auto P = legendre_p_all(lmax, 1.0 + ym1);
        const auto Q = legendre_q_all(lmax, ym1);
        for (std::size_t a = 0; a < nc; ++a)
          for (std::size_t b = 0; b < nc; ++b) {
            const int l = lbar(a, b);
            B(a, b) = A(a, b) / P[l];
            Rr(a, b) -= B(a, b) * Q[l];
          }
      }
      for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t b = 0; b < nc; ++b) {
          const double g = (*tables[lbar(a, b)])(i, j);
          km.H(a * n + i, b * n + j) =
              c[i] * c[j] * (sw[i] * sw[j] * Rr(a, b) + B(a, b) * g / (sw[i] * sw[j]));
        }
    }
  }
  symmetrize(km);
  if (km.asymmetry > 1e-9)
    throw NumericalError(fmt_sci("assembled kernel matrix is not symmetric: relative asymmetry ", km.asymmetry));
  for (std::size_t a = 0; a < nc; ++a)
    for (int i = 0; i < n; ++i) km.H(a * n + i, a * n + i) += kinetic_fn(grid.nodes[i]);
  return km;
}

KernelMatrix assemble(const TwoBodyConfig& cfg, const ChannelBlock& block, const MomentumGrid& grid,
                      const FormFactorSet& ffs) {
  cfg.validate();
  block.validate();
  auto ev = std::make_shared<const KernelEvaluator>(cfg, block, ffs);
  SingularKernel v;
  v.channels = block.channels.size();
  v.full = [ev](const KinPoint& p) { return ev->full(p); };
  v.log_coefficient = [ev](const KinPoint& p) { return ev->log_coefficient(p); };
  v.diagonal_regular = [ev](const KinPoint& p) { return ev->diagonal_regular(p); };
  // The log coefficient of every channel pair is a combination of P_l(y)
  // with l up to J + 1 (tensor-like pieces reach it even in the S wave of a
  // coupled block). Dividing by P_{J+1} keeps B bounded as y grows; a lower
  // order leaves B growing in the corners of the grid, and V - B Q_l then
  // loses digits (asymmetry and, with l = min, spurious deep states).
  v.singular_ell = Eigen::MatrixXi::Constant(v.channels, v.channels, block.J + 1);
  return assemble_singular(v, grid, [&cfg](double k) { return kinetic(cfg, k); }, cfg.m1 + cfg.m2);
}

std::size_t SpectrumResult::bound_count() const {
  return static_cast<std::size_t>(std::count_if(binding.begin(), binding.end(), [](double b) { return b < 0.0; }));
}

SpectrumResult solve(const KernelMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.H);
  if (es.info() != Eigen::Success)
    throw NumericalError("symmetric eigen-decomposition failed (dimension " + std::to_string(m.H.rows()) +
                         ", max |H| " + std::to_string(max_abs(m.H)) + ")");
  SpectrumResult r;
  r.grid = m.grid;
  r.channels = m.channels;
  r.threshold = m.threshold;
  const auto& ev = es.eigenvalues();
  for (Eigen::Index s = 0; s < ev.size(); ++s) {
    r.binding.push_back(ev[s]);
    r.masses.push_back(m.threshold + ev[s]);
  }
  const int n = m.grid.n;
  r.vectors = es.eigenvectors();
  for (std::size_t a = 0; a < m.channels; ++a)
    for (int i = 0; i < n; ++i)
      r.vectors.row(a * n + i) /= m.grid.nodes[i] * std::sqrt(m.grid.weights[i]);
  return r;
}

ConvergenceReport converge(const TwoBodyConfig& cfg, const ChannelBlock& block, const FormFactorSet& ffs,
                           const std::vector<int>& sizes, double k0, double tolerance) {
  ConvergenceReport rep;
  rep.tolerance = tolerance;
  const double scale = k0 > 0.0 ? k0 : cfg.bohr_momentum();
  for (int n : sizes) {
    const SpectrumResult s = solve(assemble(cfg, block, build_grid(n, scale), ffs));
    ConvergenceRow row;
    row.n = n;
    row.mass = s.masses.front();
    row.binding = s.binding.front();
    if (!rep.rows.empty()) row.rel_delta = std::abs(row.binding - rep.rows.back().binding) / std::abs(row.binding);
    rep.rows.push_back(row);
  }
  rep.converged = rep.rows.size() >= 2 && rep.rows.back().rel_delta < tolerance;
  return rep;
}

}  // namespace pwk
