#include "covercraft/stable_lattice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "covercraft/error.hpp"

namespace covercraft {

StableNormEstimate stable_norm_estimate(const LatticeAction& action, const DerivedVertex& p, const IntVec& g,
                                        std::size_t K) {
  if (K < 1) throw Error(ErrorKind::kArgument, "K must be >= 1");
  StableNormEstimate est;
  est.K = K;
  if (is_zero(g)) return est;
  const auto k = static_cast<std::int64_t>(K);
  est.upper = displacement(action, scale(g, k), p) / Rational(static_cast<long>(K));
  if (K >= 2) {
    const std::int64_t h = k / 2;
    Rational half = displacement(action, scale(g, h), p) / Rational(static_cast<long>(h));
    est.gap = abs(Rational(est.upper - half));
  }
  return est;
}

namespace {

double dot(const RealVec& a, const RealVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const RealVec& v) { return std::sqrt(dot(v, v)); }

RealVec to_real(const IntVec& v) { return RealVec(v.begin(), v.end()); }

// All primitive integer vectors with max |g_i| <= radius, one per +- pair.
std::vector<IntVec> primitive_directions(std::size_t n, int radius) {
  std::vector<IntVec> out;
  IntVec g(n, -radius);
  while (true) {
    if (content(g) == 1) {
      IntVec m = neg(g);
      if (g > m) out.push_back(g);
    }
    std::size_t i = 0;
    while (i < n && g[i] == radius) g[i++] = -radius;
    if (i == n) break;
    ++g[i];
  }
  return out;
}

bool solve_small(std::vector<RealVec> A, RealVec b, RealVec& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    if (std::abs(A[piv][c]) < 1e-12) return false;
    std::swap(A[piv], A[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return true;
}

// Facets {a : <a, x> <= 1 on all points, equality on n independent points}.
std::vector<RealVec> facets_of(std::size_t n, const std::vector<RealVec>& pts) {
  constexpr double kTol = 1e-9;
  std::vector<RealVec> out;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      std::vector<RealVec> A;
      for (auto i : pick) A.push_back(pts[i]);
      RealVec a;
      if (!solve_small(A, RealVec(n, 1.0), a)) return;
      for (const auto& x : pts)
        if (dot(a, x) > 1 + kTol) return;
      for (const auto& f : out) {
        double d = 0;
        for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(f[i] - a[i]));
        if (d < 1e-9) return;
      }
      out.push_back(a);
      return;
    }
    for (std::size_t i = start; i < pts.size(); ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

NormModel NormModel::analytic(NormKind kind, std::size_t n, Rational C) {
  if (kind == NormKind::kPolyhedral) throw Error(ErrorKind::kArgument, "polyhedral norms are built from data");
  if (n == 0) throw Error(ErrorKind::kArgument, "rank must be >= 1");
  NormModel nm;
  nm.n_ = n;
  nm.kind_ = kind;
  nm.C_ = std::move(C);
  return nm;
}

NormModel NormModel::polyhedral(std::size_t n, const std::vector<std::pair<IntVec, double>>& values, Rational C) {
  if (n == 0 || n > 3) throw Error(ErrorKind::kArgument, "polyhedral norms are supported for 1 <= n <= 3");
  NormModel nm;
  nm.n_ = n;
  nm.kind_ = NormKind::kPolyhedral;
  nm.C_ = std::move(C);
  nm.source_ = "estimated";
  for (const auto& [g, val] : values) {
    if (!(val > 0)) throw Error(ErrorKind::kNumericalFailure, "nonpositive norm value", to_string(g));
    RealVec x = to_real(g);
    for (auto& c : x) c /= val;
    nm.points_.push_back(x);
    for (auto& c : x) c = -c;
    nm.points_.push_back(x);
  }
  nm.facets_ = facets_of(n, nm.points_);
  if (nm.facets_.empty()) throw Error(ErrorKind::kNumericalFailure, "norm data span no full-dimensional body");
  return nm;
}

NormModel NormModel::estimated(const LatticeAction& action, const DerivedVertex& p, std::size_t K, Rational C,
                               int direction_radius) {
  std::vector<std::pair<IntVec, double>> values;
  for (const auto& g : primitive_directions(action.rank(), direction_radius))
    values.push_back({g, to_double(stable_norm_estimate(action, p, g, K).upper)});
  NormModel nm = polyhedral(action.rank(), values, std::move(C));
  nm.K_ = K;
  return nm;
}

void NormModel::set_C(Rational C, bool empirical) {
  C_ = std::move(C);
  C_empirical_ = empirical;
}

std::string NormModel::name() const {
  switch (kind_) {
    case NormKind::kL1: return "l1";
    case NormKind::kL2: return "l2";
    case NormKind::kLinf: return "linf";
    case NormKind::kPolyhedral: return "polyhedral";
  }
  return "?";
}

double NormModel::operator()(const RealVec& v) const {
  double s = 0;
  switch (kind_) {
    case NormKind::kL1:
      for (double x : v) s += std::abs(x);
      return s;
    case NormKind::kL2: return norm2(v);
    case NormKind::kLinf:
      for (double x : v) s = std::max(s, std::abs(x));
      return s;
    case NormKind::kPolyhedral:
      for (const auto& a : facets_) s = std::max(s, dot(a, v));
      return s;
  }
  return s;
}

double NormModel::operator()(const IntVec& v) const { return (*this)(to_real(v)); }

double NormModel::dual(const RealVec& u) const {
  double s = 0;
  switch (kind_) {
    case NormKind::kL1:
      for (double x : u) s = std::max(s, std::abs(x));
      return s;
    case NormKind::kL2: return norm2(u);
    case NormKind::kLinf:
      for (double x : u) s += std::abs(x);
      return s;
    case NormKind::kPolyhedral:
      for (const auto& x : points_) s = std::max(s, dot(u, x));
      return s;
  }
  return s;
}

std::vector<RealVec> NormModel::dual_vertices() const {
  std::vector<RealVec> out;
  switch (kind_) {
    case NormKind::kL1:
      for (std::size_t mask = 0; mask < (std::size_t{1} << n_); ++mask) {
        RealVec v(n_);
        for (std::size_t i = 0; i < n_; ++i) v[i] = (mask >> i & 1) ? -1.0 : 1.0;
        out.push_back(v);
      }
      break;
    case NormKind::kLinf:
      for (std::size_t i = 0; i < n_; ++i) {
        RealVec v(n_, 0.0);
        v[i] = 1;
        out.push_back(v);
        v[i] = -1;
        out.push_back(v);
      }
      break;
    case NormKind::kPolyhedral:
      for (const auto& a : facets_) out.push_back(a);
      break;
    case NormKind::kL2: break;
  }
  return out;
}

Rational empirical_comparison_constant(const NormModel& nm, const LatticeAction& action, const DerivedVertex& p,
                                       int radius) {
  const std::size_t n = action.rank();
  double worst = 0;
  IntVec g(n, -radius);
  while (true) {
    if (!is_zero(g)) {
      const double d = to_double(displacement(action, g, p));
      worst = std::max(worst, std::abs(d - nm(g)));
    }
    std::size_t i = 0;
    while (i < n && g[i] == radius) g[i++] = -radius;
    if (i == n) break;
    ++g[i];
  }
  // rounded up to a multiple of 1/1024
  Rational C(static_cast<long>(std::ceil(worst * 1024 - 1e-9)), 1024);
  C.canonicalize();
  return C;
}

RealVec JohnTransform::apply(const RealVec& v) const {
  RealVec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out[i] = dot(alpha[i], v);
  return out;
}

RealVec JohnTransform::apply_inverse(const RealVec& v) const {
  RealVec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out[i] = dot(alpha_inv[i], v);
  return out;
}

double JohnTransform::operator_norm() const {
  Eigen::MatrixXd A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = alpha[i][j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues()(0);
}

namespace {

RealVec random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealVec v(n);
  double len = 0;
  while (len < 1e-9) {
    for (auto& x : v) x = gauss(rng);
    len = norm2(v);
  }
  for (auto& x : v) x /= len;
  return v;
}

void check_direction(SandwichCheck& chk, const JohnTransform& jt, const NormModel& nm, const RealVec& v, double tol) {
  const double len = norm2(v);
  const double val = nm(jt.apply(v));
  const double lower = val - len / std::sqrt(static_cast<double>(jt.n));
  const double upper = len - val;
  if (chk.samples == 0 || lower < chk.worst_lower) {
    chk.worst_lower = lower;
    if (lower < -tol) chk.worst_direction = v;
  }
  if (chk.samples == 0 || upper < chk.worst_upper) {
    chk.worst_upper = upper;
    if (upper < -tol) chk.worst_direction = v;
  }
  if (lower < -tol || upper < -tol) chk.passed = false;
  ++chk.samples;
}

// Centered minimum-volume enclosing ellipsoid {u : u^T X^-1 u <= n} of the columns of Q.
Eigen::MatrixXd mvee_shape(const Eigen::MatrixXd& Q, std::size_t& iterations) {
  const auto n = static_cast<double>(Q.rows());
  const Eigen::Index m = Q.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  Eigen::MatrixXd X;
  for (iterations = 0; iterations < 1000000; ++iterations) {
    X = Q * w.asDiagonal() * Q.transpose();
    const Eigen::MatrixXd Xi = X.inverse();
    Eigen::VectorXd lev = (Q.transpose() * Xi * Q).diagonal();
    Eigen::Index up = 0, down = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (lev(i) > lev(up)) up = i;
      if (w(i) > 0 && (down < 0 || lev(i) < lev(down))) down = i;
    }
    const double eps_up = lev(up) / n - 1;
    const double eps_down = 1 - lev(down) / n;
    if (std::max(eps_up, eps_down) < 1e-13) break;
    if (eps_up >= eps_down) {
      const double step = (lev(up) - n) / (n * (lev(up) - 1));
      w *= 1 - step;
      w(up) += step;
    } else {
      const double drop = -w(down) / (1 - w(down));
      const double step = lev(down) > 1 ? std::max((lev(down) - n) / (n * (lev(down) - 1)), drop) : drop;
      w *= 1 - step;
      w(down) += step;
      if (w(down) < 1e-300) w(down) = 0;
    }
  }
  return X;
}

}  // namespace

SandwichCheck certify_sandwich(const JohnTransform& jt, const NormModel& nm, std::size_t count, double tol,
                               std::uint64_t seed) {
  SandwichCheck chk;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < count; ++s) check_direction(chk, jt, nm, random_unit(rng, jt.n), tol);
  return chk;
}

JohnTransform john_transform(const NormModel& nm, std::size_t samples, double tol, std::uint64_t seed) {
  const std::size_t n = nm.n();
  if (n == 0 || n > 3) throw Error(ErrorKind::kArgument, "John transform supports 1 <= n <= 3");
  std::mt19937_64 rng(seed);
  std::vector<RealVec> dirs;
  for (const auto& g : primitive_directions(n, 3)) {
    RealVec u = to_real(g);
    const double len = norm2(u);
    for (auto& x : u) x /= len;
    dirs.push_back(u);
  }
  for (std::size_t s = 0; s < samples; ++s) dirs.push_back(random_unit(rng, n));

  std::vector<RealVec> pts = nm.dual_vertices();
  for (const auto& u : dirs) {
    const double d = nm.dual(u);
    RealVec q = u;
    for (auto& x : q) x /= d;
    pts.push_back(q);
    for (auto& x : q) x = -x;
    pts.push_back(q);
  }
  Eigen::MatrixXd Q(n, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) Q(i, j) = pts[j][i];

  JohnTransform jt;
  jt.n = n;
  const Eigen::MatrixXd X = mvee_shape(Q, jt.iterations);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(static_cast<double>(n) * X);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0)
    throw Error(ErrorKind::kNumericalFailure, "ellipsoid fit is degenerate");
  Eigen::MatrixXd alpha =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();

  std::vector<RealVec> dense = dirs;
  std::mt19937_64 extra(seed ^ 0x5bd1e995ULL);
  for (int s = 0; s < 4096; ++s) dense.push_back(random_unit(extra, n));
  auto to_rows = [n](const Eigen::MatrixXd& A) {
    std::vector<RealVec> rows(n, RealVec(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return rows;
  };
  jt.alpha = to_rows(alpha);
  double s = 0;
  for (const auto& u : dense) s = std::max(s, nm(jt.apply(u)));
  alpha /= s;
  jt.alpha = to_rows(alpha);
  jt.alpha_inv = to_rows(alpha.inverse());

  jt.certified_samples = dirs;
  SandwichCheck chk;
  for (const auto& u : dirs) check_direction(chk, jt, nm, u, tol);
  jt.certificate = chk;
  if (!chk.passed) {
    std::string w;
    for (double x : chk.worst_direction) w += (w.empty() ? "" : ",") + std::to_string(x);
    throw Error(ErrorKind::kNumericalFailure, "sandwich violated beyond tolerance", w);
  }
  return jt;
}

Rational cs_M(std::size_t n, const Rational& D, const Rational& C) {
  const long nn = static_cast<long>(n);
  return Rational(2 * nn * nn * nn) * (2 * D + C);
}

Rational cs_D_prime(std::size_t n, const Rational& D, const Rational& C) {
  const long nn = static_cast<long>(n);
  return 2 * cs_M(n, D, C) * nn + Rational(2 * (nn * nn + 1)) * (2 * D + C);
}

namespace {

// Calls f on every integer vector in prod [lo_i, hi_i].
template <class F>
void for_box(const IntVec& lo, const IntVec& hi, F&& f) {
  IntVec g = lo;
  const std::size_t n = lo.size();
  while (true) {
    f(g);
    std::size_t i = 0;
    while (i < n && g[i] == hi[i]) {
      g[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++g[i];
  }
}

IntVec combine(const std::vector<IntVec>& basis, const IntVec& c) {
  IntVec g(basis.front().size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) g = add(g, scale(basis[i], c[i]));
  return g;
}

}  // namespace

SublatticeCertificate cs_sublattice(const NormModel& nm, const JohnTransform& jt, const Rational& D) {
  if (D <= 0) throw Error(ErrorKind::kArgument, "D must be positive");
  if (jt.n != nm.n()) throw Error(ErrorKind::kArgument, "John transform has the wrong rank");
  SublatticeCertificate cert;
  const std::size_t n = nm.n();
  const double rn = std::sqrt(static_cast<double>(n));
  cert.n = n;
  cert.D = D;
  cert.C = nm.C();
  cert.M = cs_M(n, D, cert.C);
  cert.D_prime = cs_D_prime(n, D, cert.C);
  cert.rounding_bound = Rational(static_cast<long>(n)) * (2 * D + cert.C);
  const double M = to_double(cert.M);
  const double bound = to_double(cert.rounding_bound);
  const double DC = to_double(Rational(cert.D + cert.C));

  const auto radius = static_cast<std::int64_t>(std::ceil(jt.operator_norm() * rn * bound)) + 1;
  double box = 1;
  for (std::size_t i = 0; i < n; ++i) box *= static_cast<double>(2 * radius + 1);
  if (box > 5e6) throw Error(ErrorKind::kResourceBudget, "rounding box too large", std::to_string(radius));

  for (std::size_t i = 0; i < n; ++i) {
    RealVec v(n, 0.0);
    v[i] = M;
    RealVec t = jt.apply(v);
    IntVec lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = static_cast<std::int64_t>(std::llround(t[j]));
      lo[j] = c - radius;
      hi[j] = c + radius;
    }
    std::optional<IntVec> best;
    double best_err = 0, best_norm = 0;
    for_box(lo, hi, [&](const IntVec& g) {
      RealVec diff = to_real(g);
      for (std::size_t j = 0; j < n; ++j) diff[j] -= t[j];
      const double err = nm(diff), gn = nm(g);
      if (!best || err < best_err - 1e-12 ||
          (err <= best_err + 1e-12 && (gn < best_norm - 1e-12 || (gn <= best_norm + 1e-12 && g < *best)))) {
        best = g;
        best_err = err;
        best_norm = gn;
      }
    });
    if (best_err > bound + 1e-9)
      throw Error(ErrorKind::kCertificateFailure,
                  "no lattice point within n(2D+C) of alpha v_" + std::to_string(i + 1) + "; C is too small",
                  std::to_string(best_err));
    cert.targets.push_back(t);
    cert.basis.push_back(*best);
    cert.rounding_errors.push_back(best_err);
  }

  IntMatrix B(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) B(i, j) = static_cast<long>(cert.basis[i][j]);
  cert.index = abs(determinant(B));
  cert.independent = cert.index != 0;

  bool first = true;
  for_box(IntVec(n, -2), IntVec(n, 2), [&](const IntVec& c) {
    if (is_zero(c)) return;
    const IntVec g = combine(cert.basis, c);
    const double pre = norm2(jt.apply_inverse(to_real(g)));
    const double gn = nm(g);
    if (first || pre < cert.box_min_preimage) cert.box_min_preimage = pre;
    if (first || gn < cert.box_min_norm) cert.box_min_norm = gn;
    first = false;
  });
  cert.box_separation = cert.box_min_preimage >= DC;
  cert.box_separation_sqrt_n = cert.box_min_preimage >= rn * DC;
  cert.box_norm_separation = cert.box_min_norm >= DC;

  bool consistent = true;
  for (std::size_t i = 0; i < n; ++i) {
    RealVec e = jt.apply_inverse(to_real(cert.basis[i]));
    e[i] -= M;
    const double eps = norm2(e);
    cert.perturbation = std::max(cert.perturbation, eps);
    if (eps > rn * cert.rounding_errors[i] + 1e-6) consistent = false;
  }
  cert.analytic_lower = 3 * (M - rn * cert.perturbation);
  cert.analytic_separation = consistent && cert.analytic_lower >= rn * DC;
  return cert;
}

void check_on_action(SublatticeCertificate& cert, const LatticeAction& action, const DerivedVertex& p) {
  if (action.rank() != cert.n) throw Error(ErrorKind::kArgument, "action rank does not match the certificate");
  std::optional<Rational> low;
  for_box(IntVec(cert.n, -2), IntVec(cert.n, 2), [&](const IntVec& c) {
    if (is_zero(c)) return;
    Rational d = displacement(action, combine(cert.basis, c), p);
    if (!low || d < *low) low = d;
  });
  cert.box_min_displacement = low;
  cert.box_displacement_separation = low && *low >= cert.D;
  const QuotientDiameter qd = quotient_diameter(action, cert.basis, p);
  if (qd.infinite) {
    cert.diameter_bound = false;
    return;
  }
  cert.quotient_diameter = qd.diameter;
  cert.diameter_bound = qd.diameter <= cert.D_prime;
}

AsymptoticVolume asymptotic_volume_estimate(const LatticeAction& action, const DerivedVertex& p, const Rational& r) {
  if (r <= 0) throw Error(ErrorKind::kArgument, "r must be positive");
  if (!action.faithful()) throw Error(ErrorKind::kPrecondition, "orbit counting needs a faithful action");
  AsymptoticVolume av;
  av.r = r;
  Ball ball = derived_ball(action.graph(), p, r);
  for (const auto& v : ball.vertices) av.count += action.index().solutions(p, v).size();
  av.estimate = static_cast<double>(av.count) / std::pow(to_double(r), static_cast<double>(action.rank()));
  return av;
}

}  // namespace covercraft
