#include "covercraft/abelian_groups.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "covercraft/error.hpp"

namespace covercraft {

WordSet::WordSet(std::size_t rank, std::vector<IntVec> elements) : rank_(rank), elements_(std::move(elements)) {
  for (const auto& e : elements_)
    if (e.size() != rank_) throw Error(ErrorKind::kArgument, "word set element of wrong rank");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool WordSet::contains(const IntVec& g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

std::optional<std::size_t> WordSet::index_of(const IntVec& g) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool WordSet::is_symmetric() const {
  if (!contains(IntVec(rank_, 0))) return false;
  return std::all_of(elements_.begin(), elements_.end(), [&](const IntVec& g) { return contains(neg(g)); });
}

WordSet l1_ball(std::size_t rank, int radius) {
  std::vector<IntVec> out;
  IntVec cur(rank, 0);
  // Odometer over the box [-radius, radius]^rank.
  if (rank == 0) return WordSet(0, {IntVec{}});
  std::fill(cur.begin(), cur.end(), -radius);
  for (;;) {
    if (l1_norm(cur) <= radius) out.push_back(cur);
    std::size_t i = 0;
    while (i < rank && cur[i] == radius) cur[i++] = -radius;
    if (i == rank) break;
    ++cur[i];
  }
  return WordSet(rank, std::move(out));
}

WordSet sumset_power(const WordSet& S, int M) {
  if (M < 1) throw Error(ErrorKind::kArgument, "sumset exponent must be >= 1");
  if (!S.is_symmetric()) throw Error(ErrorKind::kPrecondition, "sumset_power needs a symmetric set");
  std::set<IntVec> acc(S.elements().begin(), S.elements().end());
  for (int k = 1; k < M; ++k) {
    std::set<IntVec> next;
    for (const auto& a : acc)
      for (const auto& s : S.elements()) next.insert(add(a, s));
    acc = std::move(next);
  }
  return WordSet(S.rank(), std::vector<IntVec>(acc.begin(), acc.end()));
}

int defining_exponent(int relator_length) {
  if (relator_length < 1) throw Error(ErrorKind::kArgument, "relator length must be >= 1");
  return (relator_length + 2) / 3;
}

std::vector<TableEntry> table_from_oracle(std::size_t label_count, const MultiplicationOracle& oracle) {
  std::vector<TableEntry> out;
  for (std::size_t a = 0; a < label_count; ++a)
    for (std::size_t b = 0; b < label_count; ++b)
      if (auto c = oracle(a, b)) out.push_back({a, b, *c});
  return out;
}

IntMatrix full_relation_matrix(std::size_t label_count, const std::vector<TableEntry>& table) {
  IntMatrix R(table.size(), label_count);
  for (std::size_t i = 0; i < table.size(); ++i) {
    R(i, table[i].a) += 1;
    R(i, table[i].b) += 1;
    R(i, table[i].c) -= 1;
  }
  return R;
}

std::string IsoType::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : torsion) {
    if (!first) os << " x ";
    os << "Z/" << t.get_str();
    first = false;
  }
  if (free_rank > 0) {
    if (!first) os << " x ";
    os << "Z^" << free_rank;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

IsoType iso_type_of_cokernel(const IntMatrix& relations) {
  SmithForm s = smith_normal_form(relations);
  IsoType t;
  t.free_rank = relations.cols() - s.rank;
  for (const auto& d : s.diagonal)
    if (d > 1) t.torsion.push_back(d);
  return t;
}

namespace {

using SparseRow = std::map<std::size_t, BigInt>;

// dst += k * src, dropping zeros.
void axpy(SparseRow& dst, const BigInt& k, const SparseRow& src) {
  if (k == 0) return;
  for (const auto& [col, v] : src) {
    BigInt& slot = dst[col];
    slot += k * v;
    if (slot == 0) dst.erase(col);
  }
}

SparseRow scaled(const SparseRow& r, const BigInt& k) {
  SparseRow out;
  if (k == 0) return out;
  for (const auto& [col, v] : r) out[col] = v * k;
  return out;
}

// Echelon basis of a row lattice, keyed by leading (largest) column.
class SparseEchelon {
public:
  explicit SparseEchelon(std::size_t cols) : pivots_(cols) {}

  void insert(SparseRow row) {
    while (!row.empty()) {
      const std::size_t lead = row.rbegin()->first;
      const BigInt lc = row.rbegin()->second;
      auto& piv = pivots_[lead];
      if (!piv) {
        if (lc < 0) row = scaled(row, -1);
        piv = std::move(row);
        return;
      }
      const BigInt pc = piv->at(lead);
      if (lc % pc == 0) {
        axpy(row, -(lc / pc), *piv);
        continue;
      }
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pc.get_mpz_t(), lc.get_mpz_t());
      SparseRow fresh = scaled(*piv, s);
      axpy(fresh, t, row);
      SparseRow rest = scaled(row, pc / g);
      axpy(rest, -(lc / g), *piv);
      if (fresh.rbegin()->second < 0) fresh = scaled(fresh, -1);
      piv = std::move(fresh);
      row = std::move(rest);
    }
  }

  const std::vector<std::optional<SparseRow>>& pivots() const { return pivots_; }

private:
  std::vector<std::optional<SparseRow>> pivots_;
};

IntVec dense(const SparseRow& r, std::size_t n) {
  IntVec v(n, 0);
  for (const auto& [c, x] : r) v[c] = to_int64(x);
  return v;
}

}  // namespace

IntVec PresentedAbelianGroup::phi(const IntVec& coords) const {
  const std::size_t N = evaluation_kernel_.dim();
  IntVec out(N, 0);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == 0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += coords[j] * phi_columns_[j][i];
  }
  return out;
}

std::optional<IntVec> PresentedAbelianGroup::preimage(const IntVec& target) const {
  const std::size_t N = evaluation_kernel_.dim();
  const std::size_t k = coordinate_count();
  const auto kb = evaluation_kernel_.basis();
  IntMatrix A(N, k + kb.size());
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < N; ++i) A(i, j) = static_cast<long>(phi_columns_[j][i]);
  for (std::size_t j = 0; j < kb.size(); ++j)
    for (std::size_t i = 0; i < N; ++i) A(i, k + j) = -kb[j][i];
  std::vector<BigInt> rhs(N);
  for (std::size_t i = 0; i < N; ++i) rhs[i] = static_cast<long>(target[i]);
  auto sol = solve_integer(A, rhs);
  if (!sol) return std::nullopt;
  IntVec w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = to_int64((*sol)[j]);
  return canonical(w);
}

std::vector<IntVec> PresentedAbelianGroup::enumerate_kernel(std::size_t limit) const {
  if (kernel_iso_.free_rank > 0)
    throw Error(ErrorKind::kArgument, "kernel is infinite: " + kernel_iso_.to_string());
  std::size_t total = 1;
  for (const auto& o : kernel_orders_) {
    total *= o.get_ui();
    if (total > limit) throw Error(ErrorKind::kResourceBudget, "kernel too large to enumerate");
  }
  std::vector<IntVec> out;
  std::vector<std::uint64_t> digit(kernel_orders_.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    IntVec x = zero();
    for (std::size_t g = 0; g < digit.size(); ++g)
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += static_cast<std::int64_t>(digit[g]) * kernel_generators_[g][c];
    out.push_back(canonical(x));
    for (std::size_t g = 0; g < digit.size(); ++g) {
      if (++digit[g] < kernel_orders_[g].get_ui()) break;
      digit[g] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PresentedAbelianGroup presented_group_from_table(const std::vector<IntVec>& labels,
                                                 const std::vector<TableEntry>& table,
                                                 const Lattice& evaluation_kernel) {
  const std::size_t n_labels = labels.size();
  const std::size_t N = evaluation_kernel.dim();
  {
    std::set<IntVec> seen;
    for (const auto& l : labels) {
      if (l.size() != N) throw Error(ErrorKind::kArgument, "label of wrong rank");
      if (!seen.insert(evaluation_kernel.reduce(l)).second)
        throw Error(ErrorKind::kModelInvalid, "two labels name the same group element", to_string(l));
    }
  }
  {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> product;
    for (const auto& e : table) {
      if (e.a >= n_labels || e.b >= n_labels || e.c >= n_labels)
        throw Error(ErrorKind::kArgument, "table entry out of range");
      auto [it, fresh] = product.emplace(std::make_pair(e.a, e.b), e.c);
      if (!fresh && it->second != e.c)
        throw Error(ErrorKind::kModelInvalid, "multiplication table assigns two products",
                    to_string(labels[e.a]) + "*" + to_string(labels[e.b]));
    }
  }

  SparseEchelon ech(n_labels);
  for (const auto& e : table) {
    SparseRow row;
    axpy(row, 1, SparseRow{{e.a, 1}});
    axpy(row, 1, SparseRow{{e.b, 1}});
    axpy(row, -1, SparseRow{{e.c, 1}});
    ech.insert(std::move(row));
  }

  // Tietze elimination of unit pivots, in increasing column order.
  std::vector<SparseRow> expr(n_labels);
  std::vector<std::size_t> coord_column;
  for (std::size_t col = 0; col < n_labels; ++col) {
    const auto& piv = ech.pivots()[col];
    if (piv && (piv->at(col) == 1 || piv->at(col) == -1)) {
      const BigInt lead = piv->at(col);
      SparseRow e;
      for (const auto& [k, v] : *piv) {
        if (k == col) continue;
        axpy(e, -lead * v, expr[k]);
      }
      expr[col] = std::move(e);
    } else {
      expr[col] = SparseRow{{coord_column.size(), 1}};
      coord_column.push_back(col);
    }
  }
  const std::size_t k = coord_column.size();

  std::vector<IntVec> rel_rows;
  for (std::size_t col = 0; col < n_labels; ++col) {
    const auto& piv = ech.pivots()[col];
    if (!piv || piv->at(col) == 1 || piv->at(col) == -1) continue;
    SparseRow r;
    for (const auto& [c, v] : *piv) axpy(r, v, expr[c]);
    rel_rows.push_back(dense(r, k));
  }

  PresentedAbelianGroup G;
  G.labels_ = labels;
  G.relation_count_ = table.size();
  G.relations_ = Lattice(k, rel_rows);
  G.evaluation_kernel_ = evaluation_kernel;
  for (std::size_t j = 0; j < k; ++j) G.phi_columns_.push_back(labels[coord_column[j]]);
  for (std::size_t i = 0; i < n_labels; ++i) G.sharp_.push_back(G.relations_.reduce(dense(expr[i], k)));

  const auto rel_basis = G.relations_.basis_rows();
  G.iso_ = iso_type_of_cokernel(IntMatrix::from_rows(rel_basis, k));

  for (const auto& r : rel_basis)
    if (!evaluation_kernel.contains(G.phi(r)))
      throw Error(ErrorKind::kModelInvalid, "relation does not hold in the target group", to_string(r));
  for (std::size_t i = 0; i < n_labels; ++i)
    if (!evaluation_kernel.contains(sub(G.phi(G.sharp_[i]), labels[i])))
      throw Error(ErrorKind::kModelInvalid, "Phi(t#) != t", to_string(labels[i]));

  // Q = {w : Phi(w) in evaluation_kernel}; Ker Phi = Q / relations.
  const auto kb = evaluation_kernel.basis_rows();
  std::vector<IntVec> q_gens;
  if (k > 0) {
    IntMatrix A(N, k + kb.size());
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < N; ++i) A(i, j) = static_cast<long>(G.phi_columns_[j][i]);
    for (std::size_t j = 0; j < kb.size(); ++j)
      for (std::size_t i = 0; i < N; ++i) A(i, k + j) = static_cast<long>(-kb[j][i]);
    IntMatrix K = integer_kernel(A);
    for (std::size_t r = 0; r < K.rows(); ++r) {
      IntVec w(k);
      for (std::size_t j = 0; j < k; ++j) w[j] = to_int64(K(r, j));
      q_gens.push_back(std::move(w));
    }
  }
  G.kernel_lattice_ = Lattice(k, q_gens);
  const auto qb = G.kernel_lattice_.basis_rows();
  const std::size_t s = qb.size();
  IntMatrix C(rel_basis.size(), s);
  if (s > 0) {
    IntMatrix QT = IntMatrix::from_rows(qb, k).transpose();
    for (std::size_t r = 0; r < rel_basis.size(); ++r) {
      std::vector<BigInt> rhs(k);
      for (std::size_t j = 0; j < k; ++j) rhs[j] = static_cast<long>(rel_basis[r][j]);
      auto c = solve_integer(QT, rhs);
      if (!c) throw Error(ErrorKind::kModelInvalid, "relation lattice not inside Phi-kernel lattice");
      for (std::size_t j = 0; j < s; ++j) C(r, j) = (*c)[j];
    }
  }
  SmithForm snf = smith_normal_form(C);
  G.kernel_iso_.free_rank = s - snf.rank;
  for (std::size_t i = 0; i < s; ++i) {
    BigInt order = i < snf.rank ? snf.diagonal[i] : BigInt(0);
    if (order == 1) continue;
    if (order > 1) G.kernel_iso_.torsion.push_back(order);
    IntVec gen(k, 0);
    for (std::size_t m = 0; m < s; ++m) {
      const std::int64_t f = to_int64(snf.V_inv(i, m));
      for (std::size_t c = 0; c < k; ++c) gen[c] += f * qb[m][c];
    }
    gen = G.relations_.reduce(gen);
    if (order == 0 && is_zero(gen)) continue;
    G.kernel_generators_.push_back(std::move(gen));
    G.kernel_orders_.push_back(order);
  }
  return G;
}

}  // namespace covercraft
