#include "covercraft/gh_tools.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "covercraft/error.hpp"

namespace covercraft {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<Rational>> dist, std::optional<std::size_t> basepoint)
    : dist_(std::move(dist)), basepoint_(basepoint) {
  const std::size_t k = dist_.size();
  if (k == 0) throw Error(ErrorKind::kModelInvalid, "metric space is empty");
  if (basepoint_ && *basepoint_ >= k) throw Error(ErrorKind::kModelInvalid, "basepoint out of range");
  for (const auto& row : dist_)
    if (row.size() != k) throw Error(ErrorKind::kModelInvalid, "distance matrix is not square");
  for (std::size_t i = 0; i < k; ++i) {
    if (dist_[i][i] != 0) throw Error(ErrorKind::kModelInvalid, "nonzero diagonal", std::to_string(i));
    for (std::size_t j = 0; j < k; ++j) {
      if (dist_[i][j] != dist_[j][i]) throw Error(ErrorKind::kModelInvalid, "distance matrix is not symmetric");
      if (i != j && dist_[i][j] <= 0) throw Error(ErrorKind::kModelInvalid, "distinct points at distance 0");
      for (std::size_t l = 0; l < k; ++l)
        if (dist_[i][l] > dist_[i][j] + dist_[j][l])
          throw Error(ErrorKind::kModelInvalid, "triangle inequality fails",
                      std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l));
    }
  }
}

Rational FiniteMetricSpace::diameter() const {
  Rational m = 0;
  for (const auto& row : dist_)
    for (const auto& x : row)
      if (x > m) m = x;
  return m;
}

namespace {

class CorrespondenceSearch {
public:
  CorrespondenceSearch(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const Rational& bound)
      : A_(A), B_(B), bound_(bound) {}

  bool run(std::optional<std::pair<std::size_t, std::size_t>> forced) {
    pairs_.clear();
    covered_.assign(B_.size(), 0);
    assigned_.assign(A_.size(), false);
    if (forced) {
      push(forced->first, forced->second);
      assigned_[forced->first] = true;
    }
    return next_a(0);
  }

private:
  bool compatible(std::size_t a, std::size_t b) const {
    for (const auto& [x, y] : pairs_)
      if (abs(Rational(A_.d(a, x) - B_.d(b, y))) > bound_) return false;
    return true;
  }
  void push(std::size_t a, std::size_t b) {
    pairs_.push_back({a, b});
    ++covered_[b];
  }
  void pop() {
    --covered_[pairs_.back().second];
    pairs_.pop_back();
  }

  bool next_a(std::size_t a) {
    while (a < A_.size() && assigned_[a]) ++a;
    if (a == A_.size()) return next_b(0);
    for (std::size_t b = 0; b < B_.size(); ++b) {
      if (!compatible(a, b)) continue;
      push(a, b);
      if (next_a(a + 1)) return true;
      pop();
    }
    return false;
  }

  bool next_b(std::size_t b) {
    while (b < B_.size() && covered_[b] > 0) ++b;
    if (b == B_.size()) return true;
    for (std::size_t a = 0; a < A_.size(); ++a) {
      if (!compatible(a, b)) continue;
      push(a, b);
      if (next_b(b + 1)) return true;
      pop();
    }
    return false;
  }

  const FiniteMetricSpace& A_;
  const FiniteMetricSpace& B_;
  Rational bound_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<int> covered_;
  std::vector<bool> assigned_;
};

}  // namespace

Rational gh_distance_exact(const FiniteMetricSpace& A, const FiniteMetricSpace& B, bool pointed) {
  if (A.size() + B.size() > kMaxGhPoints)
    throw Error(ErrorKind::kResourceBudget,
                "exact GH search is limited to " + std::to_string(kMaxGhPoints) +
                    " points in total; use an upper bound from an explicit correspondence instead",
                std::to_string(A.size() + B.size()));
  std::optional<std::pair<std::size_t, std::size_t>> forced;
  if (pointed && A.basepoint() && B.basepoint()) forced = std::make_pair(*A.basepoint(), *B.basepoint());

  std::set<Rational> cand{Rational(0)};
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j)
      for (std::size_t k = 0; k < B.size(); ++k)
        for (std::size_t l = 0; l < B.size(); ++l) cand.insert(abs(Rational(A.d(i, j) - B.d(k, l))));
  std::vector<Rational> values(cand.begin(), cand.end());

  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    CorrespondenceSearch search(A, B, values[mid]);
    if (search.run(forced))
      hi = mid;
    else
      lo = mid + 1;
  }
  return values[lo] / 2;
}

QuotientSpace quotient_space(const LatticeAction& action, const std::vector<IntVec>& subgroup_basis,
                             const DerivedVertex& p, const Rational& window_radius) {
  QuotientSpace out;
  QuotientMetric q = quotient_metric(action, subgroup_basis, p);
  if (q.infinite) {
    out.infinite = true;
    return out;
  }
  std::vector<std::size_t> keep;
  if (window_radius > 0) {
    std::vector<Isometry> gens;
    for (const auto& b : subgroup_basis) gens.push_back(action.image(b));
    IsometryGroupIndex sub(action.graph(), gens);
    std::map<DerivedVertex, std::size_t> where;
    for (std::size_t i = 0; i < q.classes.size(); ++i) where[q.classes[i]] = i;
    std::set<std::size_t> met;
    for (const auto& v : derived_ball(action.graph(), p, window_radius).vertices)
      met.insert(where.at(sub.orbit_representative(v)));
    keep.assign(met.begin(), met.end());
  } else {
    keep.resize(q.classes.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  }
  std::vector<std::vector<Rational>> dist(keep.size(), std::vector<Rational>(keep.size()));
  std::optional<std::size_t> base;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] == q.basepoint) base = i;
    out.classes.push_back(q.classes[keep[i]]);
    for (std::size_t j = 0; j < keep.size(); ++j) dist[i][j] = q.dist[keep[i]][keep[j]];
  }
  out.space = FiniteMetricSpace(std::move(dist), base);
  return out;
}

}  // namespace covercraft
