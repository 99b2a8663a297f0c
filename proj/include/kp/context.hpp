#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kp/formula.hpp"

namespace kp {

// Ordered assumptions; lookup returns the rightmost binding.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<std::pair<std::string, Formula>> items) : items_(items) {}

  void push(std::string name, Formula f) { items_.emplace_back(std::move(name), f); }
  void pop() { items_.pop_back(); }

  std::optional<Formula> lookup(const std::string& name) const {
    for (auto it = items_.rbegin(); it != items_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    return std::nullopt;
  }

  Context extended(std::string name, Formula f) const {
    Context c = *this;
    c.push(std::move(name), f);
    return c;
  }

  std::set<std::string> names() const {
    std::set<std::string> out;
    for (const auto& [n, _] : items_) out.insert(n);
    return out;
  }

  std::vector<Formula> formulas() const {
    std::vector<Formula> out;
    for (const auto& [_, f] : items_) out.push_back(f);
    return out;
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::pair<std::string, Formula>>& items() const { return items_; }

 private:
  std::vector<std::pair<std::string, Formula>> items_;
};

}  // namespace kp
