#pragma once

#include <functional>
#include <set>

#include "covercraft/models.hpp"
#include "covercraft/monodromy.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace covercraft;

inline MonodromyInput input(const models::Model& m, const Rational& r, const WordSet& S, int M) {
  MonodromyInput in;
  in.action = m.action;
  in.basepoint = m.basepoint;
  in.radius = r;
  in.S = S;
  in.M = M;
  return in;
}

// r = 3/2, S = ell^1 ball of radius 2, M = 2.
inline MonodromyInput grid_input() { return input(models::grid(), Rational(3, 2), l1_ball(2, 2), 2); }
inline MonodromyInput cylinder_input(std::int64_t m) {
  return input(models::cylinder(m), Rational(3, 2), l1_ball(2, 2), 2);
}

// Rotation by 2 on Z/27 x Z/8, S = {-1, 0, 1}, M = 2, B a strip of width 3 (narrow on
// the last narrow_rows rows).
inline MonodromyInput strip_input(std::int64_t narrow_rows) {
  const auto m = models::rotation_torus(27, 8, 2);
  MonodromyInput in = input(m, Rational(0), WordSet(1, {{-1}, {0}, {1}}), 2);
  in.region = models::strip_region(m, 1, narrow_rows);
  return in;
}

inline MonodromyInput tree_input(const models::Model& m) {
  return input(m, Rational(3, 2), l1_ball(m.action.rank(), 1), 2);
}

// Conditions decided by explicit set arithmetic for one-vertex models on which Z^N
// acts by translations of the offset group.
struct TranslationOracle {
  std::vector<std::int64_t> moduli;
  std::function<IntVec(const IntVec&)> shift;  // translation vector of g
  std::set<IntVec> B;

  IntVec reduce(const IntVec& v) const { return oracle::reduce_offset(v, moduli); }
  std::set<IntVec> translate(const IntVec& g, const std::set<IntVec>& X) const {
    std::set<IntVec> out;
    const IntVec s = shift(g);
    for (const auto& x : X) {
      IntVec y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += s[i];
      out.insert(reduce(y));
    }
    return out;
  }
  bool meets(const IntVec& g) const {
    for (const auto& y : translate(g, B))
      if (B.count(y)) return true;
    return false;
  }
};

struct OracleConditions {
  bool i = true, ii = true, iii = true;
  std::size_t meeting_images = 0;
  bool t6_injective = true;
};

// group_box lists elements of Z^N whose images exhaust every image meeting B.
inline OracleConditions decide(const TranslationOracle& o, const std::vector<IntVec>& S, int M,
                               const std::vector<IntVec>& group_box) {
  std::vector<IntVec> T{IntVec(S[0].size(), 0)};
  for (int k = 0; k < M; ++k) T = oracle::sumset(T, S);
  std::vector<IntVec> T6{IntVec(S[0].size(), 0)};
  for (int k = 0; k < 6; ++k) T6 = oracle::sumset(T6, T);
  std::set<IntVec> T_images;
  for (const auto& t : T) T_images.insert(o.reduce(o.shift(t)));
  std::set<IntVec> TB;
  for (const auto& t : T)
    for (const auto& y : o.translate(t, o.B)) TB.insert(y);

  OracleConditions out;
  for (const auto& s : S) out.i = out.i && o.meets(s);
  std::set<IntVec> T6_images;
  for (const auto& t : T6) {
    T6_images.insert(o.reduce(o.shift(t)));
    if (o.meets(t) && !T_images.count(o.reduce(o.shift(t)))) out.ii = false;
  }
  out.t6_injective = T6_images.size() == T6.size();
  std::set<IntVec> meeting;
  for (const auto& g : group_box) {
    if (!o.meets(g)) continue;
    meeting.insert(o.reduce(o.shift(g)));
    for (const auto& y : o.translate(g, o.B))
      if (!TB.count(y)) out.iii = false;
  }
  out.meeting_images = meeting.size();
  return out;
}

inline std::vector<IntVec> box(std::size_t n, std::int64_t r) {
  std::vector<IntVec> out;
  IntVec cur(n, -r);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < n && cur[i] == r) cur[i++] = -r;
    if (i == n) break;
    ++cur[i];
  }
  return out;
}

inline std::set<IntVec> offsets(const std::vector<DerivedVertex>& vs) {
  std::set<IntVec> out;
  for (const auto& v : vs) out.insert(v.offset);
  return out;
}

}  // namespace fixtures
