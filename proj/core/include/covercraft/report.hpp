#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covercraft/numeric.hpp"

namespace covercraft {

// Ordered key = value text; keys keep insertion order.
class Report {
public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, const Rational& value) { add(key, to_string(value)); }
  void add(const std::string& key, const IntVec& value) { add(key, to_string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, double value);
  void add_list(const std::string& key, const std::vector<IntVec>& values);
  void append(const Report& other, const std::string& prefix = {});

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  // Last value stored under key, or empty.
  std::string get(const std::string& key) const;
  bool has(const std::string& key) const;
  std::string str() const;

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_distance_matrix(const std::vector<std::vector<Rational>>& dist);

}  // namespace covercraft
