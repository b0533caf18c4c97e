#include "covercraft/short_basis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "covercraft/error.hpp"

namespace covercraft {

namespace {

struct Short {
  IntVec g;
  Rational d;
};

// Elements of Z^N (one per isometry) moving p to a vertex at distance < R.
std::vector<Short> short_elements(const LatticeAction& action, const DerivedVertex& p, const Rational& R) {
  const auto& pg = action.graph();
  std::vector<Short> out;
  Ball ball = derived_ball(pg, p, R);
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (auto& g : action.index().solutions(p, ball.vertices[i])) out.push_back({std::move(g), ball.distances[i]});
  return out;
}

// By displacement, then word length, preferring positive coordinates.
bool shorter(const Short& a, const Short& b) {
  if (a.d != b.d) return a.d < b.d;
  if (l1_norm(a.g) != l1_norm(b.g)) return l1_norm(a.g) < l1_norm(b.g);
  return a.g > b.g;
}

}  // namespace

WordSet milnor_svarc_generators(const LatticeAction& action, const DerivedVertex& p, const Rational& R) {
  std::vector<IntVec> units;
  for (std::size_t i = 0; i < action.rank(); ++i) units.push_back(unit_vector(action.rank(), i));
  const QuotientDiameter qd = quotient_diameter(action, units, p);
  if (R <= 2 * qd.diameter)
    throw Error(ErrorKind::kPrecondition, "R must exceed 2 diam(X/G) = " + to_string(Rational(2 * qd.diameter)),
                to_string(qd.diameter));
  std::vector<IntVec> elems;
  for (auto& s : short_elements(action, p, R)) {
    elems.push_back(neg(s.g));
    elems.push_back(std::move(s.g));
  }
  WordSet S(action.rank(), elems);
  std::vector<IntVec> gens = S.elements();
  for (const auto& k : action.kernel().basis_rows()) gens.push_back(k);
  Lattice L(action.rank(), gens);
  if (!L.full_rank() || L.index() != 1)
    throw Error(ErrorKind::kPrecondition, "displacement set {d(gp,p) < " + to_string(R) + "} does not generate",
                std::to_string(S.size()));
  return S;
}

SeparationResult verify_separation(const LatticeAction& action, const DerivedVertex& p,
                                   const std::vector<IntVec>& basis, const Rational& D) {
  SeparationResult res;
  const std::size_t n = action.rank();
  res.certificate.push_back(IntVec(n, 0));
  if (basis.empty()) return res;

  const auto kb = action.kernel().basis_rows();
  IntMatrix A(n, basis.size() + kb.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) A(i, j) = static_cast<long>(basis[j][i]);
  for (std::size_t j = 0; j < kb.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) A(i, basis.size() + j) = static_cast<long>(kb[j][i]);

  auto combine = [&](const std::vector<BigInt>& coef) {
    IntVec g(n, 0);
    for (std::size_t j = 0; j < basis.size(); ++j) g = add(g, scale(basis[j], to_int64(coef[j])));
    return g;
  };
  auto flag = [&](IntVec g, const Rational& d) {
    if (res.separated) {
      res.separated = false;
      res.witness = g;
      res.witness_displacement = d;
    }
    res.certificate.push_back(std::move(g));
  };

  // Sublattice elements acting trivially.
  IntMatrix ker = integer_kernel(A);
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    std::vector<BigInt> coef(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) coef[j] = ker(r, j);
    IntVec g = combine(coef);
    if (!is_zero(g)) {
      flag(std::move(g), Rational(0));
      break;
    }
  }

  IntegerSolver solver(A);
  for (const auto& s : short_elements(action, p, D)) {
    if (s.d == 0 && action.image(s.g).is_identity()) continue;
    std::vector<BigInt> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = static_cast<long>(s.g[i]);
    auto sol = solver.solve(rhs);
    if (sol) flag(combine(*sol), s.d);
  }
  std::sort(res.certificate.begin(), res.certificate.end());
  res.certificate.erase(std::unique(res.certificate.begin(), res.certificate.end()), res.certificate.end());
  return res;
}

bool ShortBasisResult::displacements_within_2D() const {
  return std::all_of(displacements.begin(), displacements.end(), [&](const Rational& d) { return d <= 2 * D; });
}

bool ShortBasisResult::measure_strictly_decreasing() const {
  for (std::size_t i = 1; i < log.size(); ++i)
    if (log[i].measure >= log[i - 1].measure) return false;
  return true;
}

ShortBasisResult gromov_short_basis(const LatticeAction& action, const DerivedVertex& p, const Rational& D,
                                    std::size_t max_iterations) {
  if (D <= 0) throw Error(ErrorKind::kArgument, "D must be positive");
  if (!action.faithful()) throw Error(ErrorKind::kPrecondition, "short basis needs a faithful action");
  const auto& pg = action.graph();
  const std::size_t n = action.rank();

  std::vector<IntVec> units;
  for (std::size_t i = 0; i < n; ++i) units.push_back(unit_vector(n, i));
  const QuotientDiameter qd = quotient_diameter(action, units, p);
  if (qd.infinite) throw Error(ErrorKind::kPrecondition, "action is not cocompact");

  ShortBasisResult res;
  res.D = D;
  Rational R = 2 * (qd.diameter + qd.continuum_gap) + pg.min_edge_length() / 2;
  std::vector<Short> pool;
  for (int attempt = 0;; ++attempt) {
    pool = short_elements(action, p, R);
    std::vector<IntVec> gens;
    for (const auto& s : pool) gens.push_back(s.g);
    Lattice L(n, gens);
    if (L.full_rank()) break;
    if (attempt > 20) throw Error(ErrorKind::kResourceBudget, "no generating displacement ball found");
    R *= 2;
  }
  res.initial_radius = R;

  std::sort(pool.begin(), pool.end(), shorter);
  std::vector<IntVec> basis;
  for (const auto& s : pool) {
    if (is_zero(s.g)) continue;
    std::vector<IntVec> trial = basis;
    trial.push_back(s.g);
    if (Lattice(n, trial).rank() == trial.size()) basis = std::move(trial);
    if (basis.size() == n) break;
  }

  auto disp = [&](const IntVec& g) { return displacement(action, g, p); };
  auto basis_matrix = [&](const std::vector<IntVec>& b) {
    IntMatrix A(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) A(i, j) = static_cast<long>(b[j][i]);
    return A;
  };

  for (std::size_t iter = 0;; ++iter) {
    if (iter >= max_iterations) throw Error(ErrorKind::kResourceBudget, "doubling loop did not terminate");
    IntegerSolver solver(basis_matrix(basis));
    std::vector<std::pair<Short, IntVec>> F;  // element and its coordinates in the current basis
    for (const auto& s : short_elements(action, p, D)) {
      if (is_zero(s.g)) continue;
      std::vector<BigInt> rhs(n);
      for (std::size_t i = 0; i < n; ++i) rhs[i] = static_cast<long>(s.g[i]);
      auto sol = solver.solve(rhs);
      if (!sol) continue;
      IntVec c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = to_int64((*sol)[i]);
      F.push_back({s, c});
    }
    if (F.empty()) break;

    const std::pair<Short, IntVec>* pick = nullptr;
    for (const auto& f : F) {
      if (content(f.second) != 1) continue;
      if (!pick || shorter(f.first, pick->first)) pick = &f;
    }
    if (!pick)
      throw Error(ErrorKind::kCertificateFailure, "no primitive element among the short sublattice elements",
                  to_string(F.front().first.g));

    DoublingStep step;
    step.measure = F.size();
    step.w = pick->first.g;
    step.w_displacement = pick->first.d;

    // Complete the coordinate vector of w to a unimodular basis.
    IntMatrix row(1, n);
    for (std::size_t i = 0; i < n; ++i) row(0, i) = static_cast<long>(pick->second[i]);
    SmithForm snf = smith_normal_form(row);
    std::vector<IntVec> next(n, IntVec(n, 0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t c = r == 0 ? pick->second[j] : to_int64(snf.V_inv(r, j));
        if (c != 0) next[r] = add(next[r], scale(basis[j], c));
      }

    IntVec v = step.w;
    Rational dv = step.w_displacement;
    while (dv < D) {
      v = scale(v, 2);
      dv = disp(v);
      ++step.doublings;
    }
    next[0] = v;
    step.replacement = v;
    step.replacement_displacement = dv;
    res.log.push_back(std::move(step));
    basis = std::move(next);
  }

  res.basis = basis;
  for (const auto& b : basis) res.displacements.push_back(disp(b));
  res.index = abs(determinant(basis_matrix(basis)));
  res.separation = verify_separation(action, p, basis, D);
  return res;
}

}  // namespace covercraft
