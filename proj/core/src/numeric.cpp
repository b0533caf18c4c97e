#include "covercraft/numeric.hpp"

#include <numeric>
#include <sstream>

#include "covercraft/error.hpp"

namespace covercraft {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCertificateFailure:
    case ErrorKind::kNumericalFailure:
      return 2;
    case ErrorKind::kArgument:
    case ErrorKind::kModelInvalid:
    case ErrorKind::kTie:
    case ErrorKind::kPrecondition:
      return 3;
    case ErrorKind::kResourceBudget:
      return 4;
    case ErrorKind::kParse:
      return 5;
  }
  return 1;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kModelInvalid: return "model_invalid";
    case ErrorKind::kTie: return "perturb_radius";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kCertificateFailure: return "certificate_failure";
    case ErrorKind::kNumericalFailure: return "numerical_failure";
    case ErrorKind::kResourceBudget: return "resource_budget";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::kParse, "empty rational");
  if (s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::kParse, "bad rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

IntVec parse_intvec(std::string_view text) {
  IntVec out;
  std::string s(text);
  if (!s.empty() && s.front() == '(') s.erase(0, 1);
  if (!s.empty() && s.back() == ')') s.pop_back();
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "bad integer vector '" + std::string(text) + "'");
    }
  }
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::kResourceBudget, "integer overflow: " + z.get_str());
  return z.get_si();
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec neg(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

IntVec scale(const IntVec& a, std::int64_t k) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

IntVec unit_vector(std::size_t n, std::size_t i) {
  IntVec r(n, 0);
  r[i] = 1;
  return r;
}

bool is_zero(const IntVec& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

std::int64_t l1_norm(const IntVec& a) {
  std::int64_t s = 0;
  for (auto x : a) s += x < 0 ? -x : x;
  return s;
}

std::int64_t content(const IntVec& a) {
  std::int64_t g = 0;
  for (auto x : a) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace covercraft
