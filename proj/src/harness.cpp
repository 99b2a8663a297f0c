#include "kp/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>

#include "kp/prover.hpp"
#include "kp/slash.hpp"

namespace kp {

std::string atom_name(int i) {
  static const char* names[] = {"p", "q", "r", "s", "t", "u"};
  if (i < 6) return names[i];
  return "p" + std::to_string(i);
}

std::vector<Formula> enumerate_formulas(int atoms, int max_depth) {
  std::vector<Formula> all;
  if (max_depth < 1) return all;
  for (int i = 0; i < atoms; ++i) all.push_back(fm::atom(atom_name(i)));
  all.push_back(fm::falsum());
  std::size_t prev_start = 0;
  for (int d = 2; d <= max_depth; ++d) {
    const std::size_t n = all.size();
    using Ctor = Formula (*)(Formula, Formula);
    for (Ctor make : {Ctor(&fm::conj), Ctor(&fm::disj), Ctor(&fm::imp)}) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i < prev_start && j < prev_start) continue;
          all.push_back(make(all[i], all[j]));
        }
      }
    }
    prev_start = n;
  }
  return all;
}

std::uint64_t count_formulas(int atoms, int max_depth) {
  std::uint64_t before = 0, cur = max_depth >= 1 ? atoms + 1 : 0;
  for (int d = 2; d <= max_depth; ++d) {
    std::uint64_t next = cur + 3 * (cur * cur - before * before);
    before = cur;
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------------------

namespace {

// Rooted trees on n nodes as parent arrays (parent[i] < i), one per
// isomorphism class.
std::vector<std::vector<int>> rooted_trees(int n) {
  std::vector<std::vector<int>> out;
  std::vector<std::string> seen;
  std::vector<int> parent(n, -1);
  std::function<std::string(int)> code = [&](int v) {
    std::vector<std::string> kids;
    for (int i = 0; i < n; ++i) {
      if (parent[i] == v) kids.push_back(code(i));
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    return s + ")";
  };
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      std::string c = code(0);
      if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
        seen.push_back(c);
        out.push_back(parent);
      }
      return;
    }
    for (int p = 0; p < i; ++p) {
      parent[i] = p;
      go(i + 1);
    }
  };
  go(1);
  return out;
}

}  // namespace

KripkeBank::KripkeBank(int atoms, int max_nodes) : atom_count_(atoms) {
  int slot = 1;
  while (slot < max_nodes) slot *= 2;
  std::vector<std::vector<bool>> val(atoms);  // per world
  auto add_world = [&](std::uint64_t local_up, std::size_t base, const std::vector<std::uint32_t>& v,
                       int local) {
    up_.push_back(local_up << (base % 64));
    for (int a = 0; a < atoms; ++a) val[a].push_back(((v[a] >> local) & 1u) != 0);
  };
  for (int n = 1; n <= max_nodes; ++n) {
    for (const auto& parent : rooted_trees(n)) {
      std::vector<std::uint32_t> desc(n);
      for (int i = n - 1; i >= 0; --i) {
        desc[i] |= 1u << i;
        if (i > 0) desc[parent[i]] |= desc[i];
      }
      std::vector<std::uint32_t> upsets;
      for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool closed = true;
        for (int i = 0; i < n && closed; ++i) {
          if ((s >> i & 1u) && (desc[i] & ~s)) closed = false;
        }
        if (closed) upsets.push_back(s);
      }
      std::vector<std::size_t> pick(atoms, 0);
      for (;;) {
        std::vector<std::uint32_t> v(atoms);
        for (int a = 0; a < atoms; ++a) v[a] = upsets[pick[a]];
        const std::size_t base = up_.size();
        for (int i = 0; i < n; ++i) add_world(desc[i], base, v, i);
        std::vector<std::uint32_t> none(atoms, 0);
        for (int i = n; i < slot; ++i) add_world(1u << i, base, none, i);
        int a = 0;
        while (a < atoms && ++pick[a] == upsets.size()) pick[a++] = 0;
        if (a == atoms) break;
      }
    }
  }
  words_ = (up_.size() + 63) / 64;
  for (int a = 0; a < atoms; ++a) {
    Bits b(words_, 0);
    for (std::size_t w = 0; w < up_.size(); ++w) {
      if (val[a][w]) b[w / 64] |= 1ull << (w % 64);
    }
    atoms_.push_back(std::move(b));
  }
}

KripkeBank::Bits KripkeBank::truth(Formula f) const { return eval(f); }

bool KripkeBank::valid(const Bits& b) const {
  for (std::size_t i = 0; i < words_; ++i) {
    std::uint64_t want = ~0ull;
    if (i == words_ - 1 && up_.size() % 64) want = (1ull << (up_.size() % 64)) - 1;
    if ((b[i] & want) != want) return false;
  }
  return true;
}

KripkeBank::Bits KripkeBank::eval(Formula f) const {
  switch (f.kind()) {
    case FormulaKind::Atom:
      for (int a = 0; a < atom_count_; ++a) {
        if (f.name() == atom_name(a)) return atoms_[a];
      }
      return Bits(words_, 0);
    case FormulaKind::Falsum: return Bits(words_, 0);
    case FormulaKind::And:
    case FormulaKind::Or: {
      Bits l = eval(f.left()), r = eval(f.right());
      for (std::size_t i = 0; i < words_; ++i) {
        l[i] = f.is(FormulaKind::And) ? (l[i] & r[i]) : (l[i] | r[i]);
      }
      return l;
    }
    case FormulaKind::Imp: {
      Bits l = eval(f.left()), r = eval(f.right());
      Bits out(words_, 0);
      for (std::size_t w = 0; w < up_.size(); ++w) {
        const std::size_t i = w / 64;
        if ((up_[w] & l[i] & ~r[i]) == 0) out[i] |= 1ull << (w % 64);
      }
      return out;
    }
  }
  return Bits(words_, 0);
}

// ---------------------------------------------------------------------------

std::string to_string(Property p) {
  switch (p) {
    case Property::SplitAdmissibility: return "split-admissibility";
    case Property::DisjunctionProperty: return "disjunction-property";
    case Property::HarropSelfSlash: return "harrop-self-slash";
  }
  return "?";
}

std::optional<Property> parse_property(const std::string& s) {
  for (Property p : {Property::SplitAdmissibility, Property::DisjunctionProperty,
                     Property::HarropSelfSlash}) {
    if (s == to_string(p)) return p;
  }
  if (s == "split") return Property::SplitAdmissibility;
  if (s == "dp") return Property::DisjunctionProperty;
  if (s == "self-slash") return Property::HarropSelfSlash;
  return std::nullopt;
}

std::string to_string(SweepMode m) {
  switch (m) {
    case SweepMode::Classes: return "exhaustive";
    case SweepMode::Brute: return "exhaustive-brute";
    case SweepMode::Sampled: return "sampled";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

bool desk_scale(const SweepConfig& cfg) { return cfg.atoms <= 2 && cfg.max_depth <= 3; }

SweepMode mode_of(const SweepConfig& cfg) {
  if (cfg.samples > 0 || !desk_scale(cfg)) return SweepMode::Sampled;
  return cfg.brute ? SweepMode::Brute : SweepMode::Classes;
}

int bank_nodes(int atoms) { return atoms <= 2 ? 4 : atoms == 3 ? 3 : 2; }

class Query {
 public:
  explicit Query(SweepReport& r) : report_(r) {}
  bool operator()(Formula f) {
    ++report_.prover_queries;
    return prover_.provable(f);
  }
  Prover& prover() { return prover_; }

 private:
  SweepReport& report_;
  Prover prover_;
};

void record(SweepReport& r, std::vector<Formula> fs, std::string evidence, std::uint64_t weight) {
  r.counterexample_total += weight;
  if (r.counterexamples.size() < SweepReport::kMaxListed) {
    r.counterexamples.push_back({std::move(fs), std::move(evidence)});
  }
}

// IPC-equivalence classes of an enumeration.
struct Classes {
  std::vector<Formula> rep;
  std::vector<KripkeBank::Bits> bits;
  std::vector<std::vector<std::size_t>> members;  // indices into the enumeration
};

Classes partition(const std::vector<Formula>& fs, const KripkeBank& bank, Query& prove) {
  Classes cls;
  std::map<KripkeBank::Bits, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    KripkeBank::Bits b = bank.truth(fs[i]);
    auto& bucket = buckets[b];
    bool placed = false;
    for (std::size_t c : bucket) {
      Formula r = cls.rep[c];
      if (prove(fm::imp(fs[i], r)) && prove(fm::imp(r, fs[i]))) {
        cls.members[c].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      bucket.push_back(cls.rep.size());
      cls.rep.push_back(fs[i]);
      cls.bits.push_back(std::move(b));
      cls.members.push_back({i});
    }
  }
  return cls;
}

class Sampler {
 public:
  Sampler(int atoms, int max_depth, std::uint64_t seed)
      : atoms_(atoms), max_depth_(max_depth), rng_(seed) {}

  Formula formula() { return gen(max_depth_); }
  Formula harrop() {
    for (;;) {
      Formula f = formula();
      if (is_harrop(f)) return f;
    }
  }

 private:
  Formula gen(int depth) {
    if (depth <= 1 || pick(4) == 0) {
      int k = pick(atoms_ + 1);
      return k == atoms_ ? fm::falsum() : fm::atom(atom_name(k));
    }
    Formula l = gen(depth - 1), r = gen(depth - 1);
    switch (pick(3)) {
      case 0: return fm::conj(l, r);
      case 1: return fm::disj(l, r);
      default: return fm::imp(l, r);
    }
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  int atoms_, max_depth_;
  std::mt19937_64 rng_;
};

std::uint64_t sample_count(const SweepConfig& cfg) { return cfg.samples > 0 ? cfg.samples : 1000; }

// One Split instance by direct prover queries.
void split_instance(SweepReport& r, Query& prove, Formula c, Formula a, Formula b) {
  ++r.instances_checked;
  if (!prove(fm::imp(c, fm::disj(a, b)))) return;
  ++r.theorems;
  if (!prove(fm::disj(fm::imp(c, a), fm::imp(c, b)))) {
    record(r, {c, a, b}, "C -> A \\/ B provable, (C -> A) \\/ (C -> B) not", 1);
  }
}

void dp_instance(SweepReport& r, Query& prove, SlashEngine& slash, Formula a, Formula b) {
  ++r.instances_checked;
  if (!prove(fm::disj(a, b))) return;
  ++r.theorems;
  const bool pa = prove(a), pb = prove(b);
  if (!pa && !pb) record(r, {a, b}, "A \\/ B provable, neither disjunct is", 1);
  if (slash.holds({}, a) == pa && slash.holds({}, b) == pb) ++r.slash_agreements;
}

void self_slash_instance(SweepReport& r, SlashEngine& slash, Formula c) {
  ++r.instances_checked;
  ++r.theorems;
  if (!slash.holds({c}, c)) record(r, {c}, "C does not slash itself", 1);
}

bool subset_of_union(const KripkeBank::Bits& c, const KripkeBank::Bits& a,
                     const KripkeBank::Bits& b) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] & ~(a[i] | b[i])) return false;
  }
  return true;
}

void split_classes(SweepReport& r, const std::vector<Formula>& fs, const SweepConfig& cfg) {
  KripkeBank bank(cfg.atoms, bank_nodes(cfg.atoms));
  Query prove(r);
  Classes cls = partition(fs, bank, prove);
  const std::size_t k = cls.rep.size();
  r.classes = k;
  std::vector<std::uint64_t> weight(k), cweight(k);
  std::vector<Formula> crep(k);
  for (std::size_t c = 0; c < k; ++c) {
    weight[c] = cls.members[c].size();
    for (std::size_t i : cls.members[c]) {
      if (cfg.harrop_filter && !is_harrop(fs[i])) continue;
      if (cweight[c]++ == 0) crep[c] = fs[i];
    }
  }
  // implied[c * k + a]: C -> A provable; -1 unknown.
  std::vector<signed char> implied(k * k, -1);
  auto implies = [&](std::size_t c, std::size_t a) {
    signed char& v = implied[c * k + a];
    if (v < 0) {
      bool sub = subset_of_union(cls.bits[c], cls.bits[a], cls.bits[a]);
      v = sub && prove(fm::imp(cls.rep[c], cls.rep[a]));
    }
    return v == 1;
  };
  for (std::size_t c = 0; c < k; ++c) {
    if (cweight[c] == 0) continue;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a; b < k; ++b) {
        const std::uint64_t w = cweight[c] * weight[a] * weight[b] * (a == b ? 1 : 2);
        r.instances_checked += w;
        if (!subset_of_union(cls.bits[c], cls.bits[a], cls.bits[b])) continue;
        if (implies(c, a) || implies(c, b)) {
          r.theorems += w;
          continue;
        }
        Formula C = crep[c], A = cls.rep[a], B = cls.rep[b];
        if (!prove(fm::imp(C, fm::disj(A, B)))) continue;
        r.theorems += w;
        if (!prove(fm::disj(fm::imp(C, A), fm::imp(C, B)))) {
          record(r, {C, A, B}, "C -> A \\/ B provable, (C -> A) \\/ (C -> B) not", w);
        }
      }
    }
  }
}

void dp_classes(SweepReport& r, const std::vector<Formula>& fs, const SweepConfig& cfg) {
  KripkeBank bank(cfg.atoms, bank_nodes(cfg.atoms));
  Query prove(r);
  SlashEngine slash(&prove.prover());
  Classes cls = partition(fs, bank, prove);
  const std::size_t k = cls.rep.size();
  r.classes = k;
  std::vector<std::uint64_t> weight(k), agree(k);
  std::vector<char> provable(k);
  for (std::size_t c = 0; c < k; ++c) {
    weight[c] = cls.members[c].size();
    provable[c] = bank.valid(cls.bits[c]) && prove(cls.rep[c]);
    for (std::size_t i : cls.members[c]) agree[c] += slash.holds({}, fs[i]) == bool(provable[c]);
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const std::uint64_t mult = a == b ? 1 : 2;
      r.instances_checked += weight[a] * weight[b] * mult;
      KripkeBank::Bits u = cls.bits[a];
      for (std::size_t i = 0; i < u.size(); ++i) u[i] |= cls.bits[b][i];
      if (!bank.valid(u)) continue;
      if (!provable[a] && !provable[b]) {
        if (!prove(fm::disj(cls.rep[a], cls.rep[b]))) continue;
        record(r, {cls.rep[a], cls.rep[b]}, "A \\/ B provable, neither disjunct is",
               weight[a] * weight[b] * mult);
      }
      r.theorems += weight[a] * weight[b] * mult;
      r.slash_agreements += agree[a] * agree[b] * mult;
    }
  }
}

}  // namespace

SweepReport sweep_split_admissibility(SweepConfig cfg) {
  cfg.property = Property::SplitAdmissibility;
  return run_sweep(cfg);
}

SweepReport sweep_disjunction_property(SweepConfig cfg) {
  cfg.property = Property::DisjunctionProperty;
  return run_sweep(cfg);
}

SweepReport sweep_harrop_self_slash(SweepConfig cfg) {
  cfg.property = Property::HarropSelfSlash;
  return run_sweep(cfg);
}

SweepReport run_sweep(const SweepConfig& cfg) {
  const auto start = Clock::now();
  SweepReport r;
  r.property = cfg.property;
  r.mode = mode_of(cfg);
  if (cfg.atoms < 1 || cfg.max_depth < 1) return r;

  if (r.mode == SweepMode::Sampled) {
    Sampler gen(cfg.atoms, cfg.max_depth, cfg.seed);
    Query prove(r);
    SlashEngine slash(&prove.prover());
    const std::uint64_t n = sample_count(cfg);
    for (std::uint64_t i = 0; i < n; ++i) {
      switch (cfg.property) {
        case Property::SplitAdmissibility: {
          Formula c = cfg.harrop_filter ? gen.harrop() : gen.formula();
          Formula a = gen.formula();
          split_instance(r, prove, c, a, gen.formula());
          break;
        }
        case Property::DisjunctionProperty: {
          Formula a = gen.formula();
          dp_instance(r, prove, slash, a, gen.formula());
          break;
        }
        case Property::HarropSelfSlash: self_slash_instance(r, slash, gen.harrop()); break;
      }
    }
    r.formulas = 0;
  } else {
    const std::vector<Formula> fs = enumerate_formulas(cfg.atoms, cfg.max_depth);
    r.formulas = fs.size();
    if (cfg.property == Property::HarropSelfSlash) {
      Query prove(r);
      SlashEngine slash(&prove.prover());
      for (Formula c : fs) {
        if (is_harrop(c)) self_slash_instance(r, slash, c);
      }
    } else if (r.mode == SweepMode::Brute) {
      Query prove(r);
      SlashEngine slash(&prove.prover());
      for (Formula a : fs) {
        for (Formula b : fs) {
          if (cfg.property == Property::DisjunctionProperty) {
            dp_instance(r, prove, slash, a, b);
            continue;
          }
          for (Formula c : fs) {
            if (!cfg.harrop_filter || is_harrop(c)) split_instance(r, prove, c, a, b);
          }
        }
      }
    } else if (cfg.property == Property::SplitAdmissibility) {
      split_classes(r, fs, cfg);
    } else {
      dp_classes(r, fs, cfg);
    }
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return r;
}

}  // namespace kp
