#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace covercraft {

using BigInt = mpz_class;
using Rational = mpq_class;

// Integer vectors: group elements of Z^N and offsets in a voltage group.
using IntVec = std::vector<std::int64_t>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const IntVec& v);
IntVec parse_intvec(std::string_view text);  // "1,-2,0"

double to_double(const Rational& q);
std::int64_t to_int64(const BigInt& z);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec neg(const IntVec& a);
IntVec scale(const IntVec& a, std::int64_t k);
IntVec unit_vector(std::size_t n, std::size_t i);
bool is_zero(const IntVec& a);
std::int64_t l1_norm(const IntVec& a);
std::int64_t content(const IntVec& a);  // gcd of entries, 0 for the zero vector

struct IntVecHash {
  std::size_t operator()(const IntVec& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) {
      h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace covercraft
