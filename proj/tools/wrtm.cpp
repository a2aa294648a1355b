#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wrtm/automaton.hpp"
#include "wrtm/bn.hpp"
#include "wrtm/error.hpp"
#include "wrtm/halting.hpp"
#include "wrtm/machine.hpp"
#include "wrtm/machine_io.hpp"
#include "wrtm/regularize.hpp"
#include "wrtm/simulate.hpp"
#include "wrtm/weight.hpp"

namespace {

using namespace wrtm;

enum Exit { kTrue = 0, kFalse = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::string machine;
  std::string automaton;
  std::string other;
  std::string word;
  std::string output;
  std::string report;
  std::string seq_cap = "m";
  std::uint64_t max_steps = 0;
  std::uint64_t state_budget = 1'000'000;
  std::uint64_t k = 0, big_k = 0, c = 0, n = 0, length = 6;
  bool canonical = false;
  bool accepting = false;
  bool divergence_accepts = false;
  bool via_transform = false;
  bool plain = false;
  std::string oracle = "machine";
};

struct Report {
  std::string verb, input, verdict;
  std::optional<std::uint64_t> steps, states, symbols;
};

void emit_report(const Options& o, const Report& r) {
  if (o.report.empty()) return;
  nlohmann::json j;
  j["verb"] = r.verb;
  j["input"] = r.input;
  j["verdict"] = r.verdict;
  j["steps"] = r.steps ? nlohmann::json(*r.steps) : nlohmann::json(nullptr);
  j["states"] = r.states ? nlohmann::json(*r.states) : nlohmann::json(nullptr);
  j["symbols"] = r.symbols ? nlohmann::json(*r.symbols) : nlohmann::json(nullptr);
  if (o.report == "-") {
    std::cout << j.dump() << "\n";
    return;
  }
  std::ofstream out(o.report, std::ios::app);
  if (!out) throw Error("cannot open report file '" + o.report + "'");
  out << j.dump() << "\n";
}

void write_text(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw Error("cannot write '" + o.output + "'");
  out << text;
}

Word word_of(const Machine& m, const std::string& text) {
  if (text.empty() || text == "ε" || text == "eps") return {};
  return parse_word(m, text);
}

std::string shown(const std::string& w) { return w.empty() ? "ε" : w; }

NfaOptions nfa_options(const Options& o) {
  NfaOptions opts;
  opts.state_budget = o.state_budget;
  opts.divergence_accepts = o.divergence_accepts;
  if (o.seq_cap == "m+1") opts.seq_cap_plus_one = true;
  else if (o.seq_cap != "m") throw Error("--seq-cap expects m or m+1");
  return opts;
}

bool is_machine_file(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".tm") == 0;
}

// Automaton from an automaton file, or to_nfa of a machine file.
Automaton automaton_from(const Options& o, const std::string& path) {
  if (is_machine_file(path)) return to_nfa(load_machine(path), nfa_options(o));
  return load_automaton(path);
}

int cmd_simulate(const Options& o) {
  const Machine m = load_machine(o.machine);
  const Word w = word_of(m, o.word);
  RunOutcome r;
  if (check_weight_reducing(m).weight_reducing() && o.max_steps == 0) {
    r = run_wr(m, w);
  } else {
    r = run(m, w, o.max_steps ? o.max_steps : default_max_steps(m, w.size()));
  }
  std::cout << to_string(r.verdict) << "\n";
  if (r.certificate) std::cout << describe(m, *r.certificate) << "\n";
  emit_report(o, {"simulate", shown(o.word), to_string(r.verdict), r.steps, m.state_count(), m.symbol_count()});
  switch (r.verdict) {
    case Verdict::Accept: return kTrue;
    case Verdict::BudgetExceeded: return kBudget;
    default: return kFalse;
  }
}

int cmd_enum(const Options& o) {
  const Machine m = load_machine(o.machine);
  const auto sample = enum_language(m, o.length, o.max_steps);
  for (const auto& w : sample.accepted) std::cout << shown(format_word(m, w)) << "\n";
  for (const auto& w : sample.diverging) std::cout << "# diverges " << shown(format_word(m, w)) << "\n";
  for (const auto& w : sample.budget_exceeded)
    std::cout << "# budget-exceeded " << shown(format_word(m, w)) << "\n";
  emit_report(o, {"enum-lang", o.machine, std::to_string(sample.accepted.size()), std::nullopt,
                  m.state_count(), m.symbol_count()});
  return sample.budget_exceeded.empty() ? kTrue : kBudget;
}

int cmd_validate(const Options& o) {
  std::ifstream in(o.machine);
  if (!in) throw Error("cannot open '" + o.machine + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    const Machine m = parse_machine(buffer.str());
    std::cout << "valid\n";
    emit_report(o, {"validate", o.machine, "true", std::nullopt, m.state_count(), m.symbol_count()});
    return kTrue;
  } catch (const InvalidMachine& e) {
    std::cout << "invalid\n" << e.what() << "\n";
    emit_report(o, {"validate", o.machine, "false", std::nullopt, std::nullopt, std::nullopt});
    return kFalse;
  }
}

int cmd_check_wr(const Options& o) {
  const Machine m = load_machine(o.machine);
  const auto v = check_weight_reducing(m);
  if (v.weight_reducing()) {
    std::cout << "weight-reducing\n";
    for (SymbolId s = 0; s < m.symbol_count(); ++s)
      std::cout << "rank " << m.symbol_name(s) << " " << v.order->rank[s] << "\n";
  } else {
    std::cout << "not weight-reducing\ncycle";
    for (auto s : v.cycle) std::cout << " " << m.symbol_name(s);
    std::cout << "\n";
  }
  emit_report(o, {"check-wr", o.machine, v.weight_reducing() ? "true" : "false", std::nullopt,
                  m.state_count(), m.symbol_count()});
  return v.weight_reducing() ? kTrue : kFalse;
}

int emit_machine(const Options& o, const std::string& verb, const Machine& out) {
  SerializeOptions so;
  so.canonical = o.canonical;
  write_text(o, serialize_machine(out, so));
  emit_report(o, {verb, o.machine.empty() ? std::to_string(o.n) : o.machine, "ok", std::nullopt,
                  out.state_count(), out.symbol_count()});
  return kTrue;
}

int emit_automaton(const Options& o, const std::string& verb, const Automaton& a) {
  write_text(o, serialize_automaton(a));
  emit_report(o, {verb, o.machine.empty() ? o.automaton : o.machine, "ok", std::nullopt,
                  a.state_count(), a.alphabet.size()});
  return kTrue;
}

int cmd_equiv(const Options& o) {
  const Automaton a = automaton_from(o, o.automaton);
  const Automaton b = automaton_from(o, o.other);
  const auto r = equivalent(a, b, o.state_budget);
  std::cout << (r.equal ? "true" : "false") << "\n";
  if (r.counterexample) std::cout << "counterexample " << format_automaton_word(a, *r.counterexample) << "\n";
  emit_report(o, {"equiv", o.automaton + " " + o.other, r.equal ? "true" : "false", std::nullopt,
                  a.state_count() + b.state_count(), a.alphabet.size()});
  return r.equal ? kTrue : kFalse;
}

int cmd_decide(const Options& o, const std::string& verb) {
  const Machine m = load_machine(o.machine);
  DecideOptions d;
  d.state_budget = o.state_budget;
  d.via_transform = o.via_transform;
  const bool verdict = verb == "decide-linear" ? decide_linear_time(m, d) : decide_halting(m, d);
  std::cout << (verdict ? "true" : "false") << "\n";
  emit_report(o, {verb, o.machine, verdict ? "true" : "false", std::nullopt, m.state_count(), m.symbol_count()});
  return verdict ? kTrue : kFalse;
}

int cmd_bn_member(const Options& o) {
  const std::string w = o.word == "ε" ? "" : o.word;
  const bool verdict = bn_member(w, static_cast<std::uint32_t>(o.n));
  std::cout << (verdict ? "true" : "false") << "\n";
  emit_report(o, {"bn-member", shown(w), verdict ? "true" : "false", std::nullopt, std::nullopt, std::nullopt});
  return verdict ? kTrue : kFalse;
}

int cmd_fooling(const Options& o) {
  const auto n = static_cast<std::uint32_t>(o.n);
  WordOracle oracle;
  std::optional<Machine> m;
  if (o.oracle == "definition") {
    oracle = [n](const std::string& w) { return bn_member(w, n); };
  } else if (o.oracle == "machine") {
    m = gen_bn(n).machine;
    oracle = [&m](const std::string& w) { return run_wr(*m, parse_word(*m, w)).verdict == Verdict::Accept; };
  } else {
    throw Error("--oracle expects definition or machine");
  }
  const auto count = fooling_set_check(n, oracle);
  std::cout << count << "\n";
  emit_report(o, {"fooling-set", std::to_string(n), std::to_string(count), std::nullopt, std::nullopt, std::nullopt});
  return kTrue;
}

int cmd_stats(const Options& o) {
  const Machine m = load_machine(o.machine);
  const double q = static_cast<double>(m.state_count());
  const double g = static_cast<double>(m.symbol_count());
  const double size = q * g * std::log2(q * g);
  std::cout << "states " << m.state_count() << "\nsymbols " << m.symbol_count() << "\ninput "
            << m.input_symbols().size() << "\ntransitions " << m.rules().size() << "\ndescription-size "
            << size << "\n";
  emit_report(o, {"stats", o.machine, "ok", std::nullopt, m.state_count(), m.symbol_count()});
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight-reducing Turing machine toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--report", o.report, "Append a JSON line per command to FILE ('-' for stdout)");

  auto machine_opt = [&](CLI::App* sub) {
    sub->add_option("-m,--machine", o.machine, "Machine file")->required()->check(CLI::ExistingFile);
  };
  auto output_opt = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "Output file (default stdout)");
  };
  auto nfa_opts = [&](CLI::App* sub) {
    sub->add_option("--state-budget", o.state_budget, "Automaton state budget (0 = unlimited)");
    sub->add_option("--seq-cap", o.seq_cap, "Sequence length cap: m or m+1");
    sub->add_flag("--divergence-accepts", o.divergence_accepts, "Count diverging runs as accepting");
  };

  auto* simulate = app.add_subcommand("simulate", "Run a machine on a word");
  machine_opt(simulate);
  simulate->add_option("-w,--word", o.word, "Input word")->required();
  simulate->add_option("--max-steps", o.max_steps, "Step budget (forces plain simulation)");

  auto* enum_lang = app.add_subcommand("enum-lang", "List accepted words up to a length");
  machine_opt(enum_lang);
  enum_lang->add_option("-l,--length", o.length, "Maximum word length");
  enum_lang->add_option("--max-steps", o.max_steps, "Per-word step budget for non-WR machines");

  auto* validate_cmd = app.add_subcommand("validate", "Check structural rules");
  machine_opt(validate_cmd);

  auto* check_wr = app.add_subcommand("check-wr", "Decide weight-reduction; print order or cycle");
  machine_opt(check_wr);

  auto* bound = app.add_subcommand("bound-visits", "Cap visits per cell at k");
  machine_opt(bound);
  bound->add_option("-k", o.k, "Visit cap")->required()->check(CLI::PositiveNumber);
  output_opt(bound);
  bound->add_flag("--canonical", o.canonical, "Sorted serialization");

  auto* lt = app.add_subcommand("lt-to-wr", "Weight-reducing machine from a linear time bound K|w|+C");
  machine_opt(lt);
  lt->add_option("-K", o.big_k, "Slope")->required()->check(CLI::PositiveNumber);
  lt->add_option("-C", o.c, "Offset")->required();
  output_opt(lt);
  lt->add_flag("--canonical", o.canonical, "Sorted serialization");

  auto* to_nfa_cmd = app.add_subcommand("to-nfa", "NFA for a weight-reducing machine");
  machine_opt(to_nfa_cmd);
  nfa_opts(to_nfa_cmd);
  output_opt(to_nfa_cmd);

  auto* to_dfa = app.add_subcommand("to-dfa", "Subset construction on the NFA");
  machine_opt(to_dfa);
  nfa_opts(to_dfa);
  output_opt(to_dfa);

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimal complete DFA");
  auto* min_src = minimize_cmd->add_option_group("source");
  min_src->add_option("-m,--machine", o.machine, "Machine file")->check(CLI::ExistingFile);
  min_src->add_option("-a,--automaton", o.automaton, "Automaton file")->check(CLI::ExistingFile);
  min_src->require_option(1);
  nfa_opts(minimize_cmd);
  output_opt(minimize_cmd);

  auto* equiv = app.add_subcommand("equiv", "Language equivalence of two automata or machines");
  equiv->add_option("a", o.automaton, "Automaton or .tm file")->required()->check(CLI::ExistingFile);
  equiv->add_option("b", o.other, "Automaton or .tm file")->required()->check(CLI::ExistingFile);
  nfa_opts(equiv);

  auto* decide = app.add_subcommand("decide-halting", "Does the machine halt on every input?");
  machine_opt(decide);
  decide->add_option("--state-budget", o.state_budget, "Automaton state budget");
  decide->add_flag("--via-transform", o.via_transform, "Compare against the halting transform");

  auto* linear = app.add_subcommand("decide-linear", "Is the machine linear-time?");
  machine_opt(linear);
  linear->add_option("--state-budget", o.state_budget, "Automaton state budget");
  linear->add_flag("--via-transform", o.via_transform, "Compare against the halting transform");

  auto* halting = app.add_subcommand("make-halting", "Equivalent machine that halts on every input");
  machine_opt(halting);
  halting->add_flag("--accepting", o.accepting, "Accept when the run leaves the marked region");
  output_opt(halting);
  halting->add_flag("--canonical", o.canonical, "Sorted serialization");

  auto* bn = app.add_subcommand("gen-bn", "Machine for B_n");
  bn->add_option("-n", o.n, "Block length bound")->required()->check(CLI::PositiveNumber);
  output_opt(bn);
  bn->add_flag("--canonical", o.canonical, "Sorted serialization");
  bn->add_flag("--plain", o.plain, "Experimental: simulate the endmarkers in a plain machine");

  auto* member = app.add_subcommand("bn-member", "Membership in B_n by definition");
  member->add_option("-n", o.n, "Block length bound")->required();
  member->add_option("-w,--word", o.word, "Word over 0, 1, $")->required();

  auto* fooling = app.add_subcommand("fooling-set", "Verify the 2^(2^n) fooling set for B_n");
  fooling->add_option("-n", o.n, "Block length bound")->required()->check(CLI::Range(1, 3));
  fooling->add_option("--oracle", o.oracle, "definition or machine");

  auto* stats = app.add_subcommand("stats", "Size figures of a machine");
  machine_opt(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kTrue : kUsage;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    if (verb == "simulate") return cmd_simulate(o);
    if (verb == "enum-lang") return cmd_enum(o);
    if (verb == "validate") return cmd_validate(o);
    if (verb == "check-wr") return cmd_check_wr(o);
    if (verb == "bound-visits") return emit_machine(o, verb, bound_visits(load_machine(o.machine), o.k));
    if (verb == "lt-to-wr") return emit_machine(o, verb, lt_to_wr(load_machine(o.machine), o.big_k, o.c));
    if (verb == "to-nfa") return emit_automaton(o, verb, to_nfa(load_machine(o.machine), nfa_options(o)));
    if (verb == "to-dfa")
      return emit_automaton(o, verb, determinize(to_nfa(load_machine(o.machine), nfa_options(o)), o.state_budget));
    if (verb == "minimize") {
      const Automaton a = o.machine.empty() ? load_automaton(o.automaton)
                                            : to_nfa(load_machine(o.machine), nfa_options(o));
      return emit_automaton(o, verb, minimize(a.deterministic() ? a : determinize(a, o.state_budget)));
    }
    if (verb == "equiv") return cmd_equiv(o);
    if (verb == "decide-halting" || verb == "decide-linear") return cmd_decide(o, verb);
    if (verb == "make-halting") {
      const Machine m = load_machine(o.machine);
      return emit_machine(o, verb, o.accepting ? make_halting_accepting(m) : make_halting(m));
    }
    if (verb == "gen-bn") {
      const Machine m = gen_bn(static_cast<std::uint32_t>(o.n)).machine;
      return emit_machine(o, verb, o.plain ? end_marked_to_plain(m) : m);
    }
    if (verb == "bn-member") return cmd_bn_member(o);
    if (verb == "fooling-set") return cmd_fooling(o);
    if (verb == "stats") return cmd_stats(o);
    std::cerr << "unknown verb '" << verb << "'\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    std::cout << "budget-exceeded\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
