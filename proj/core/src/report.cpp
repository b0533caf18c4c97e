#include "covercraft/report.hpp"

#include <cstdio>
#include <sstream>

namespace covercraft {

void Report::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }

void Report::add(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  add(key, std::string(buf));
}

void Report::add_list(const std::string& key, const std::vector<IntVec>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + to_string(values[i]);
  add(key, s + "]");
}

void Report::append(const Report& other, const std::string& prefix) {
  for (const auto& [k, v] : other.entries_) add(prefix + k, v);
}

std::string Report::get(const std::string& key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->first == key) return it->second;
  return {};
}

bool Report::has(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.first == key) return true;
  return false;
}

std::string Report::str() const {
  std::ostringstream os;
  for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
  return os.str();
}

std::string format_distance_matrix(const std::vector<std::vector<Rational>>& dist) {
  std::ostringstream os;
  for (const auto& row : dist) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << to_string(row[j]);
    os << '\n';
  }
  return os.str();
}

}  // namespace covercraft
