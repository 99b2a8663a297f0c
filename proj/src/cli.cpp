#include "kp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kp/checker.hpp"
#include "kp/eval.hpp"
#include "kp/harness.hpp"
#include "kp/parser.hpp"
#include "kp/prover.hpp"
#include "kp/slash.hpp"
#include "kp/transforms.hpp"

namespace kp::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Judgment load_judgment(const std::string& path) {
  std::string src = read_file(path);
  try {
    return parse_judgment(src);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

Formula load_formula(const std::string& src) {
  try {
    return parse_formula(src);
  } catch (const ParseError& e) {
    throw UsageError(std::string("formula:") + e.what());
  }
}

std::vector<Formula> load_context(const std::string& src) {
  try {
    return parse_formula_list(src);
  } catch (const ParseError& e) {
    throw UsageError(std::string("context:") + e.what());
  }
}

json opt_formula(const std::optional<Formula>& f) {
  return f ? json(to_string(*f)) : json(nullptr);
}

json error_json(const CheckError& e) {
  return {{"kind", to_string(e.kind)},
          {"path", path_to_string(e.path)},
          {"expected", opt_formula(e.expected)},
          {"actual", opt_formula(e.actual)},
          {"detail", e.detail}};
}

std::string judgment_text(const Context& ctx, const Term& t, Formula f) {
  std::string s;
  for (const auto& [name, type] : ctx.items()) s += "assume " + name + " : " + to_string(type) + "\n";
  return s + to_string(t) + " : " + to_string(f);
}

struct Io {
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;

  void emit(json j) const { out << j.dump() << "\n"; }
};

// -- commands

int cmd_check(const Io& io, const std::string& file) {
  Judgment j = load_judgment(file);
  auto e = check_judgment(j.context, j.term, j.formula);
  if (io.as_json) {
    json r = {{"schema", 1}, {"command", "check"}, {"ok", !e}};
    if (e) {
      r["error"] = error_json(*e);
    } else {
      r["formula"] = to_string(j.formula);
    }
    io.emit(r);
  } else if (e) {
    io.out << "rejected: " << e->message() << "\n";
  } else {
    io.out << to_string(j.formula) << "\n";
  }
  return e ? kReject : kOk;
}

int cmd_nf(const Io& io, const std::string& file, bool trace, std::size_t fuel, bool split_red2) {
  Judgment j = load_judgment(file);
  if (auto e = check_judgment(j.context, j.term, j.formula)) {
    if (io.as_json) {
      io.emit({{"schema", 1}, {"command", "nf"}, {"ok", false}, {"error", error_json(*e)}});
    } else {
      io.out << "rejected: " << e->message() << "\n";
    }
    return kReject;
  }
  ReductionTrace tr;
  try {
    tr = normalize(j.term, j.context, EvalOptions{fuel, split_red2});
  } catch (const EvalError& e) {
    io.out << "evaluation error at " << path_to_string(e.path()) << ": " << e.what() << "\n";
    return kReject;
  }
  if (trace) {
    for (const TraceStep& s : tr.steps) {
      io.emit({{"rule", to_string(s.rule)},
               {"path", path_to_string(s.position)},
               {"before", to_string(s.before)},
               {"after", to_string(s.after)}});
    }
  }
  if (io.as_json) {
    io.emit({{"schema", 1},
             {"command", "nf"},
             {"ok", tr.normal()},
             {"outcome", tr.normal() ? "normal-form" : "fuel-exhausted"},
             {"steps", tr.steps.size()},
             {"term", to_string(tr.result)},
             {"formula", to_string(j.formula)}});
  } else if (tr.normal()) {
    io.out << to_string(tr.result) << "\n";
  } else {
    io.out << "fuel exhausted after " << tr.steps.size() << " steps\n";
  }
  return tr.normal() ? kOk : kReject;
}

int cmd_prove(const Io& io, const std::string& formula, const std::string& ctx, bool term) {
  Formula f = load_formula(formula);
  Sequent s{load_context(ctx), f};
  ProofResult r = prove(s);
  if (io.as_json) {
    json j = {{"schema", 1}, {"command", "prove"}, {"sequent", to_string(s)}, {"provable", r.provable}};
    if (r.provable) j["term"] = to_string(r.witness);
    io.emit(j);
  } else {
    io.out << (r.provable ? "provable" : "unprovable") << "\n";
    if (term && r.provable) io.out << to_string(r.witness) << "\n";
  }
  return r.provable ? kOk : kReject;
}

json slash_json(const SlashNode& n) {
  json j = {{"formula", to_string(n.formula)}, {"clause", n.clause}, {"holds", n.holds}};
  if (n.derivable) j["derivable"] = *n.derivable;
  if (!n.children.empty()) {
    j["children"] = json::array();
    for (const auto& c : n.children) j["children"].push_back(slash_json(c));
  }
  return j;
}

void print_slash(std::ostream& out, const SlashNode& n, int indent) {
  out << std::string(indent * 2, ' ') << n.clause << " " << to_string(n.formula) << ": "
      << (n.holds ? "holds" : "fails");
  if (n.derivable) out << (*n.derivable ? " (derivable)" : " (not derivable)");
  out << "\n";
  for (const auto& c : n.children) print_slash(out, c, indent + 1);
}

int cmd_slash(const Io& io, const std::string& formula, const std::string& ctx, bool trace) {
  Formula f = load_formula(formula);
  std::vector<Formula> gamma = load_context(ctx);
  SlashVerdict v = slash_formula(gamma, f);
  if (io.as_json) {
    json j = {{"schema", 1},
              {"command", "slash"},
              {"holds", v.holds},
              {"provability_calls", v.provability_calls.size()}};
    if (trace) j["trace"] = slash_json(v.trace);
    io.emit(j);
  } else {
    io.out << (v.holds ? "holds" : "fails") << "\n";
    if (trace) print_slash(io.out, v.trace, 0);
  }
  return v.holds ? kOk : kReject;
}

int cmd_audit(const Io& io, const std::string& file, int depth) {
  Judgment j = load_judgment(file);
  if (!j.context.empty()) throw UsageError("audit expects a closed term (no assume lines)");
  AuditReport r = audit_term(j.term, j.formula, depth);
  if (io.as_json) {
    json entries = json::array();
    for (const auto& e : r.audited) {
      entries.push_back({{"position", e.position},
                         {"formula", to_string(e.formula)},
                         {"shape", to_string(e.shape)},
                         {"normal_form", to_string(e.normal_form)}});
    }
    json out = {{"schema", 1},     {"command", "audit"},          {"passed", r.passed},
                {"depth", depth},  {"audited", entries},          {"unexhausted", r.unexhausted},
                {"failure", r.failure ? json(*r.failure) : json(nullptr)}};
    if (r.type_error) out["error"] = error_json(*r.type_error);
    io.emit(out);
  } else {
    for (const auto& e : r.audited) {
      io.out << e.position << "  " << to_string(e.formula) << "  " << to_string(e.shape) << "\n";
    }
    for (const auto& u : r.unexhausted) io.out << "unexhausted: " << u << "\n";
    if (r.passed) {
      io.out << "passed\n";
    } else {
      io.out << "failed: " << r.failure.value_or("") << "\n";
    }
  }
  return r.passed ? kOk : kReject;
}

int cmd_harrop(const Io& io, const std::string& formula) {
  Formula f = load_formula(formula);
  const bool h = is_harrop(f);
  if (io.as_json) {
    json j = {{"schema", 1}, {"command", "harrop"}, {"harrop", h}};
    if (!h) j["reason"] = harrop_diagnosis(f);
    io.emit(j);
  } else if (h) {
    io.out << "Harrop\n";
  } else {
    io.out << "not Harrop: " << harrop_diagnosis(f) << "\n";
  }
  return h ? kOk : kReject;
}

int cmd_transform(const Io& io, const std::string& file, bool to_s, bool to_split, bool red2) {
  if (int(to_s) + int(to_split) + int(red2) != 1) {
    throw UsageError("transform needs exactly one of --split-to-s, --s-to-split, --split-red2");
  }
  Judgment j = load_judgment(file);
  std::optional<TransformReport> r;
  try {
    if (to_s) {
      r = split_to_s(j.context, j.term, j.formula);
    } else if (to_split) {
      if (auto e = check_judgment(j.context, j.term, j.formula)) throw TransformError(*e);
      r = s_to_split(j.context, j.term);
    } else {
      if (auto e = check_judgment(j.context, j.term, j.formula)) throw TransformError(*e);
      r = apply_split_red2(j.context, j.term);
    }
  } catch (const TransformError& e) {
    if (io.as_json) {
      io.emit({{"schema", 1}, {"command", "transform"}, {"ok", false}, {"error", error_json(e.error())}});
    } else {
      io.out << "rejected: " << e.what() << "\n";
    }
    return kReject;
  }
  if (!r) {
    if (io.as_json) {
      io.emit({{"schema", 1}, {"command", "transform"}, {"ok", false}, {"error", nullptr}});
    } else {
      io.out << "not a split-red2 redex\n";
    }
    return kReject;
  }
  const Typed& o = r->output;
  if (io.as_json) {
    io.emit({{"schema", 1},
             {"command", "transform"},
             {"ok", true},
             {"rule", to_string(r->rule)},
             {"term", to_string(o.term)},
             {"formula", to_string(o.formula)},
             {"recheck", r->recheck}});
  } else {
    io.out << judgment_text(o.context, o.term, o.formula) << "\n";
  }
  return kOk;
}

int cmd_sweep(const Io& io, SweepConfig cfg, const std::string& property) {
  auto p = parse_property(property);
  if (!p) throw UsageError("unknown property '" + property + "'");
  if (cfg.atoms < 1 || cfg.max_depth < 1) throw UsageError("--atoms and --depth must be at least 1");
  cfg.property = *p;
  SweepReport r = run_sweep(cfg);
  if (io.as_json) {
    json cx = json::array();
    for (const auto& c : r.counterexamples) {
      json fs = json::array();
      for (Formula f : c.formulas) fs.push_back(to_string(f));
      cx.push_back({{"formulas", fs}, {"evidence", c.evidence}});
    }
    json j = {{"schema", 1},
              {"command", "sweep"},
              {"property", to_string(r.property)},
              {"mode", to_string(r.mode)},
              {"checked", r.instances_checked},
              {"theorems", r.theorems},
              {"counterexamples", cx},
              {"counterexample_total", r.counterexample_total},
              {"formulas", r.formulas},
              {"classes", r.classes},
              {"prover_queries", r.prover_queries},
              {"elapsed_ms", r.elapsed.count()}};
    if (r.property == Property::DisjunctionProperty) j["slash_agreements"] = r.slash_agreements;
    io.emit(j);
  } else {
    io.out << to_string(r.property) << " (" << to_string(r.mode) << ", atoms " << cfg.atoms
           << ", depth " << cfg.max_depth << ")\n";
    io.out << "checked " << r.instances_checked << ", theorems " << r.theorems
           << ", counterexamples " << r.counterexample_total << "\n";
    if (r.property == Property::DisjunctionProperty) {
      io.out << "slash agreement " << r.slash_agreements << "/" << r.theorems << "\n";
    }
    for (const auto& c : r.counterexamples) {
      io.out << "  ";
      for (std::size_t i = 0; i < c.formulas.size(); ++i) {
        io.out << (i ? " ; " : "") << to_string(c.formulas[i]);
      }
      io.out << "  [" << c.evidence << "]\n";
    }
    io.out << "elapsed " << r.elapsed.count() << " ms\n";
  }
  return r.counterexample_total == 0 ? kOk : kReject;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kpc: checker, normalizer and decision procedures for IPC with the S rule"};
  app.name("kpc");
  app.require_subcommand(1, 1);

  bool json_out = false;
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json_out, "Machine-readable output"); };

  std::string file, formula, ctx;
  bool trace = false, term = false, split_red2 = false;
  bool to_s = false, to_split = false, red2 = false;
  std::size_t fuel = kDefaultFuel;
  int depth = 2;
  SweepConfig sweep;
  std::string property;
  bool no_filter = false;

  auto* check = app.add_subcommand("check", "Type-check a proof script; prints the formula");
  check->add_option("FILE", file, "Proof script")->required();
  add_json(check);

  auto* nf = app.add_subcommand("nf", "Normalize the term of a proof script");
  nf->add_option("FILE", file, "Proof script")->required();
  nf->add_flag("--trace", trace, "Print every contraction as a JSON line");
  nf->add_option("--fuel", fuel, "Contraction budget")->capture_default_str();
  nf->add_flag("--split-red2", split_red2, "Enable the one-step ssel shortcut");
  add_json(nf);

  auto* pr = app.add_subcommand("prove", "Decide IPC derivability");
  pr->add_option("FORMULA", formula, "Goal")->required();
  pr->add_option("--ctx", ctx, "Comma-separated antecedents");
  pr->add_flag("--term", term, "Print the proof term");
  add_json(pr);

  auto* sl = app.add_subcommand("slash", "Evaluate the slash relation ctx | FORMULA");
  sl->add_option("FORMULA", formula, "Formula")->required();
  sl->add_option("--ctx", ctx, "Comma-separated context");
  sl->add_flag("--trace", trace, "Print the clause tree");
  add_json(sl);

  auto* au = app.add_subcommand("audit", "Bounded canonicity audit of a closed proof script");
  au->add_option("FILE", file, "Proof script")->required();
  au->add_option("--depth", depth, "Argument enumeration depth")->capture_default_str();
  add_json(au);

  auto* ha = app.add_subcommand("harrop", "Classify a formula as Harrop or not");
  ha->add_option("FORMULA", formula, "Formula")->required();
  add_json(ha);

  auto* tr = app.add_subcommand("transform", "Split/S interderivability transforms");
  tr->add_option("FILE", file, "Proof script")->required();
  tr->add_flag("--split-to-s", to_s, "f : C -> A \\/ B to an scase term");
  tr->add_flag("--s-to-split", to_split, "scase term to case over ssel");
  tr->add_flag("--split-red2", red2, "Contract ssel (\\z. inl a) in one step");
  add_json(tr);

  auto* sw = app.add_subcommand("sweep", "Exhaustive or sampled property sweeps");
  sw->add_option("--property", property,
                 "split-admissibility | disjunction-property | harrop-self-slash")
      ->required();
  sw->add_option("--atoms", sweep.atoms, "Number of atoms")->capture_default_str();
  sw->add_option("--depth", sweep.max_depth, "Formula depth bound")->capture_default_str();
  sw->add_option("--seed", sweep.seed, "Seed for sampled mode")->capture_default_str();
  sw->add_option("--samples", sweep.samples, "Force sampled mode with this many instances");
  sw->add_flag("--no-harrop-filter", no_filter, "Allow non-Harrop C (negative control)");
  sw->add_flag("--brute", sweep.brute, "One prover query per instance");
  add_json(sw);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "kpc: " << e.what() << "\n" << "run 'kpc --help' for usage\n";
    return kUsage;
  }

  Io io{out, err, json_out};
  try {
    if (*check) return cmd_check(io, file);
    if (*nf) return cmd_nf(io, file, trace, fuel, split_red2);
    if (*pr) return cmd_prove(io, formula, ctx, term);
    if (*sl) return cmd_slash(io, formula, ctx, trace);
    if (*au) return cmd_audit(io, file, depth);
    if (*ha) return cmd_harrop(io, formula);
    if (*tr) return cmd_transform(io, file, to_s, to_split, red2);
    if (*sw) {
      sweep.harrop_filter = !no_filter;
      return cmd_sweep(io, sweep, property);
    }
  } catch (const UsageError& e) {
    err << "kpc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "kpc: internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace kp::cli
