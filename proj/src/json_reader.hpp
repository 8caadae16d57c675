#pragma once

// Strict JSON object access: typed getters that accumulate violations and
// a final check that rejects keys nobody asked for.

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace casimir::detail {

class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& object, std::string path, std::vector<std::string>& errors)
      : object_(object), path_(std::move(path)), errors_(errors) {
    if (!object_.is_object()) {
      errors_.push_back(path_ + ": expected an object");
      valid_ = false;
    }
  }

  ObjectReader(const ObjectReader&) = delete;
  ObjectReader& operator=(const ObjectReader&) = delete;

  ~ObjectReader() { reject_unknown(); }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return path_ + "." + key; }
  bool valid() const { return valid_; }

  bool has(const std::string& key) const { return valid_ && object_.contains(key); }

  const nlohmann::json* raw(const std::string& key) {
    if (!valid_) return nullptr;
    seen_.insert(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  std::optional<double> number(const std::string& key, bool required = true) {
    const auto* v = raw(key);
    if (!v) {
      if (required && valid_) errors_.push_back(at(key) + ": missing required field");
      return std::nullopt;
    }
    if (!v->is_number()) {
      errors_.push_back(at(key) + ": expected a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::string> string(const std::string& key, bool required = true) {
    const auto* v = raw(key);
    if (!v) {
      if (required && valid_) errors_.push_back(at(key) + ": missing required field");
      return std::nullopt;
    }
    if (!v->is_string()) {
      errors_.push_back(at(key) + ": expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    const auto* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      errors_.push_back(at(key) + ": expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<int> integer(const std::string& key, bool required = true) {
    const auto* v = raw(key);
    if (!v) {
      if (required && valid_) errors_.push_back(at(key) + ": missing required field");
      return std::nullopt;
    }
    if (!v->is_number_integer()) {
      errors_.push_back(at(key) + ": expected an integer");
      return std::nullopt;
    }
    return v->get<int>();
  }

  void reject_unknown() {
    if (!valid_ || checked_) return;
    checked_ = true;
    for (auto it = object_.begin(); it != object_.end(); ++it) {
      if (!seen_.count(it.key())) errors_.push_back(at(it.key()) + ": unknown key");
    }
  }

 private:
  const nlohmann::json& object_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
  bool valid_ = true;
  bool checked_ = false;
};

// Reads [[x, y], ...] into pairs.
inline std::vector<std::pair<double, double>> read_pairs(const nlohmann::json& v,
                                                        const std::string& path,
                                                        std::vector<std::string>& errors) {
  std::vector<std::pair<double, double>> out;
  if (!v.is_array() || v.empty()) {
    errors.push_back(path + ": expected a non-empty array of [x, y] pairs");
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& row = v[i];
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      errors.push_back(path + "[" + std::to_string(i) + "]: expected [number, number]");
      continue;
    }
    out.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return out;
}

}  // namespace casimir::detail
