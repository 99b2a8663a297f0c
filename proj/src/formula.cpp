#include "kp/formula.hpp"

#include <cassert>
#include <deque>
#include <mutex>
#include <ostream>
#include <unordered_map>

namespace kp {

class FormulaNode {
 public:
  FormulaKind kind;
  std::string name;
  const FormulaNode* left = nullptr;
  const FormulaNode* right = nullptr;
  std::uint32_t id = 0;
  std::size_t size = 1;
  int depth = 1;
  bool harrop = false;
};

namespace {

struct Key {
  FormulaKind kind;
  std::string name;
  const FormulaNode* left;
  const FormulaNode* right;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = std::hash<std::string>{}(k.name);
    h ^= static_cast<std::size_t>(k.kind) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>{}(k.left) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>{}(k.right) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

class FormulaTable {
 public:
  static FormulaTable& instance() {
    static FormulaTable table;
    return table;
  }

  Formula intern(FormulaKind kind, std::string_view name, Formula l, Formula r) {
    Key key{kind, std::string(name), l.node_, r.node_};
    std::lock_guard lock(mu_);
    if (auto it = index_.find(key); it != index_.end()) return Formula(it->second);
    FormulaNode& n = nodes_.emplace_back();
    n.kind = kind;
    n.name = key.name;
    n.left = l.node_;
    n.right = r.node_;
    n.id = static_cast<std::uint32_t>(nodes_.size() - 1);
    if (n.left) {
      n.size = 1 + n.left->size + n.right->size;
      n.depth = 1 + std::max(n.left->depth, n.right->depth);
    }
    switch (kind) {
      case FormulaKind::Atom: n.harrop = true; break;
      case FormulaKind::Falsum: n.harrop = false; break;
      case FormulaKind::And: n.harrop = n.left->harrop && n.right->harrop; break;
      case FormulaKind::Or: n.harrop = false; break;
      case FormulaKind::Imp: n.harrop = n.right->harrop; break;
    }
    index_.emplace(std::move(key), &n);
    return Formula(&n);
  }

 private:
  std::mutex mu_;
  std::deque<FormulaNode> nodes_;
  std::unordered_map<Key, const FormulaNode*, KeyHash> index_;
};

FormulaKind Formula::kind() const {
  assert(node_);
  return node_->kind;
}
const std::string& Formula::name() const { return node_->name; }
Formula Formula::left() const { return Formula(node_->left); }
Formula Formula::right() const { return Formula(node_->right); }
std::uint32_t Formula::id() const { return node_->id; }
std::size_t Formula::size() const { return node_->size; }
int Formula::depth() const { return node_->depth; }

namespace fm {

Formula atom(std::string_view name) {
  return FormulaTable::instance().intern(FormulaKind::Atom, name, {}, {});
}
Formula falsum() { return FormulaTable::instance().intern(FormulaKind::Falsum, "", {}, {}); }
Formula conj(Formula a, Formula b) {
  return FormulaTable::instance().intern(FormulaKind::And, "", a, b);
}
Formula disj(Formula a, Formula b) {
  return FormulaTable::instance().intern(FormulaKind::Or, "", a, b);
}
Formula imp(Formula a, Formula b) {
  return FormulaTable::instance().intern(FormulaKind::Imp, "", a, b);
}
Formula neg(Formula a) { return imp(a, falsum()); }

}  // namespace fm

namespace {

// Binding strength: -> 1, \/ 2, /\ 3, ~ and atoms 4.
int level(Formula f) {
  switch (f.kind()) {
    case FormulaKind::Imp: return f.right().is(FormulaKind::Falsum) ? 4 : 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    default: return 4;
  }
}

void print(std::string& out, Formula f, int min_level) {
  const bool parens = level(f) < min_level;
  if (parens) out += '(';
  switch (f.kind()) {
    case FormulaKind::Atom: out += f.name(); break;
    case FormulaKind::Falsum: out += "_|_"; break;
    case FormulaKind::And:
      print(out, f.left(), 3);
      out += " /\\ ";
      print(out, f.right(), 4);
      break;
    case FormulaKind::Or:
      print(out, f.left(), 2);
      out += " \\/ ";
      print(out, f.right(), 3);
      break;
    case FormulaKind::Imp:
      if (f.right().is(FormulaKind::Falsum)) {
        out += '~';
        print(out, f.left(), 4);
      } else {
        print(out, f.left(), 2);
        out += " -> ";
        print(out, f.right(), 1);
      }
      break;
  }
  if (parens) out += ')';
}

std::string join_path(const std::string& path, std::string_view step) {
  if (path.empty()) return std::string(step);
  return path + "." + std::string(step);
}

std::string diagnose(Formula f, const std::string& path) {
  switch (f.kind()) {
    case FormulaKind::Atom: return {};
    case FormulaKind::Falsum: return "falsum at " + (path.empty() ? "root" : path);
    case FormulaKind::Or: return "disjunction at " + (path.empty() ? "root" : path);
    case FormulaKind::And: {
      auto l = diagnose(f.left(), join_path(path, "left"));
      return l.empty() ? diagnose(f.right(), join_path(path, "right")) : l;
    }
    case FormulaKind::Imp: return diagnose(f.right(), join_path(path, "consequent"));
  }
  return {};
}

bool occurs_with(Formula x, Formula host, Polarity want, Polarity here) {
  if (host == x && here == want) return true;
  switch (host.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Falsum: return false;
    case FormulaKind::And:
    case FormulaKind::Or:
      return occurs_with(x, host.left(), want, here) || occurs_with(x, host.right(), want, here);
    case FormulaKind::Imp:
      return occurs_with(x, host.left(), want, flip(here)) ||
             occurs_with(x, host.right(), want, here);
  }
  return false;
}

}  // namespace

std::string to_string(Formula f) {
  std::string out;
  print(out, f, 0);
  return out;
}

std::ostream& operator<<(std::ostream& os, Formula f) { return os << to_string(f); }

bool is_harrop(Formula f) { return f.node()->harrop; }

std::string harrop_diagnosis(Formula f) { return diagnose(f, ""); }

bool occurs_negatively(Formula x, Formula host) {
  return occurs_with(x, host, Polarity::Negative, Polarity::Positive);
}

bool occurs_positively(Formula x, Formula host) {
  return occurs_with(x, host, Polarity::Positive, Polarity::Positive);
}

Formula substitute(Formula f, std::string_view atom, Formula replacement) {
  switch (f.kind()) {
    case FormulaKind::Atom: return f.name() == atom ? replacement : f;
    case FormulaKind::Falsum: return f;
    case FormulaKind::And:
      return fm::conj(substitute(f.left(), atom, replacement),
                      substitute(f.right(), atom, replacement));
    case FormulaKind::Or:
      return fm::disj(substitute(f.left(), atom, replacement),
                      substitute(f.right(), atom, replacement));
    case FormulaKind::Imp:
      return fm::imp(substitute(f.left(), atom, replacement),
                     substitute(f.right(), atom, replacement));
  }
  return f;
}

}  // namespace kp
