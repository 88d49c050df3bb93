#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "report.hpp"
#include "sga/sga.hpp"

namespace sga::cli {

/// Bad flags or arguments; exit status 2.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

/// Verbosity from SGA_LOG (quiet, info, debug); quiet by default.
inline LogLevel log_level() {
  const char* v = std::getenv("SGA_LOG");
  if (v == nullptr) return LogLevel::quiet;
  const std::string s(v);
  if (s == "debug") return LogLevel::debug;
  if (s == "info") return LogLevel::info;
  return LogLevel::quiet;
}

inline void log(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) <= static_cast<int>(log_level())) std::cerr << "[sga] " << msg << '\n';
}

inline std::uint64_t parse_uint(const std::string& tok, const std::string& what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 19) {
    throw usage_error("invalid " + what + " '" + tok + "'");
  }
  return std::stoull(tok);
}

/// "1,4,8..11" → {1, 4, 8, 9, 10, 11}; ranges are inclusive.
inline std::set<std::uint64_t> parse_value_set(const std::string& text, const std::string& what) {
  std::set<std::uint64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.insert(parse_uint(item, what));
      continue;
    }
    const auto lo = parse_uint(item.substr(0, dots), what);
    const auto hi = parse_uint(item.substr(dots + 2), what);
    if (lo > hi) throw usage_error("empty range '" + item + "' in " + what);
    if (hi - lo > (std::uint64_t{1} << 24)) throw usage_error("range '" + item + "' too large");
    for (auto v = lo; v <= hi; ++v) out.insert(v);
  }
  return out;
}

/// Membership predicate from either an explicit marked set or "x mod a == b".
inline MembershipOracle::predicate parse_predicate(const std::optional<std::string>& marked,
                                                   const std::optional<std::string>& rule, nlohmann::json& echo) {
  if (marked.has_value() == rule.has_value()) throw usage_error("give exactly one of --marked or --rule");
  if (marked) {
    auto values = parse_value_set(*marked, "marked value");
    echo["marked"] = values;
    return [values = std::move(values)](std::uint64_t x) { return values.contains(x); };
  }
  static const std::regex form(R"(^\s*x\s+mod\s+(\d+)\s*==\s*(\d+)\s*$)");
  std::smatch mt;
  if (!std::regex_match(*rule, mt, form)) throw usage_error("rule must read 'x mod <a> == <b>', got '" + *rule + "'");
  const auto a = parse_uint(mt[1].str(), "modulus");
  const auto b = parse_uint(mt[2].str(), "residue");
  if (a == 0) throw usage_error("modulus must be positive");
  echo["rule"] = {{"mod", a}, {"equals", b}};
  return [a, b](std::uint64_t x) { return x % a == b; };
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void dump_state(const std::optional<std::string>& path, const Multivector& m) {
  if (!path) return;
  std::ofstream out(*path);
  if (!out) throw error("cannot write '" + *path + "'");
  out << dump_multivector(m, 2) << '\n';
}

template <typename Range>
std::string join(const Range& r, const char* sep = " ") {
  std::ostringstream out;
  bool first = true;
  for (const auto& v : r) {
    if (!first) out << sep;
    out << v;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------- search

struct SearchOptions {
  std::size_t n = 0;
  std::string set;
  std::optional<std::string> marked;
  std::optional<std::string> rule;
  std::optional<std::string> dump;
};

inline RunReport cmd_search(const SearchOptions& o) {
  Stopwatch clock;
  if (o.n == 0 || o.n > 24) throw usage_error("--n must be in [1, 24]");
  RunReport r;
  r.command = "search";
  r.params["n"] = o.n;
  const auto ys = parse_value_set(o.set, "set element");
  for (auto y : ys) {
    if ((y >> o.n) != 0) throw usage_error("set element " + std::to_string(y) + " does not fit " + std::to_string(o.n) + " bits");
  }
  r.params["set_size"] = ys.size();
  MembershipOracle oracle(parse_predicate(o.marked, o.rule, r.params));

  const SearchLayout sl(o.n);
  const auto psi0 = build_initial_state(ys, sl);
  log(LogLevel::info, "initial state: " + std::to_string(psi0.size()) + " terms");
  const auto filtered = apply_filter(oracle, psi0, sl);
  const auto matches = extract_matches(filtered, sl);

  r.result["matches"] = matches;
  r.stages = {{"initial", psi0.size()}, {"filtered", filtered.size()}};
  r.counters = {{"oracle_applications", oracle.op_count()}, {"oracle_evaluations", oracle.eval_count()}};
  r.text.push_back("matches: " + join(matches));
  dump_state(o.dump, filtered);
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------- factor

struct FactorOptions {
  std::uint64_t z = 0;
  std::size_t n = 0;
  std::string route = "fast";
  std::optional<std::string> dump;
};

inline RunReport cmd_factor(const FactorOptions& o) {
  Stopwatch clock;
  MultiplierRoute route;
  if (o.route == "fast") {
    route = MultiplierRoute::fast;
  } else if (o.route == "faithful") {
    route = MultiplierRoute::faithful;
  } else {
    throw usage_error("--route must be faithful or fast");
  }
  const auto cap = route == MultiplierRoute::fast ? fast_width_cap : faithful_width_cap;
  if (o.n == 0 || o.n > cap) {
    throw usage_error("--n must be in [1, " + std::to_string(cap) + "] for the " + o.route + " route");
  }
  if (o.z == 0 || (o.z >> o.n) != 0) {
    throw usage_error("--z must satisfy 1 <= z < 2^n (got z = " + std::to_string(o.z) + ", n = " + std::to_string(o.n) + ")");
  }

  const FactoringLayout fl(o.n);
  Multiplier t(fl, route);
  const auto psi = build_factoring_superposition(fl, route);
  log(LogLevel::info, "superposition: " + std::to_string(psi.size()) + " terms");
  const auto multiplied = t(psi);
  const auto projected = project_product(multiplied, o.z, fl);
  const auto divisors = read_divisors(projected, fl);

  RunReport r;
  r.command = "factor";
  r.params = {{"z", o.z}, {"n", o.n}, {"route", o.route}};
  r.result = {{"z", o.z}, {"n", o.n}, {"divisors", divisors}, {"terms_before", psi.size()},
              {"terms_after", projected.size()}, {"route", o.route}};
  r.stages = {{"superposition", psi.size()}, {"multiplied", multiplied.size()}, {"projected", projected.size()}};
  r.counters = {{"multiplier_applications", t.applications()}};
  if (route == MultiplierRoute::faithful) r.counters["nand_gates"] = t.circuit().gates().size();
  r.text.push_back("divisors of " + std::to_string(o.z) + ": " + join(divisors));
  dump_state(o.dump, projected);
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------- halt-probe

struct HaltProbeOptions {
  std::string machine;
  std::string input;
  std::size_t steps = 1;
  std::size_t tape = 8;
  std::optional<std::size_t> head;
  std::string mode = "ga";
  std::string construction = "chained";
  std::size_t max_terms = std::size_t{1} << 20;
  std::optional<std::string> dump;
};

inline std::string halts_label(std::size_t k) { return "halts within " + std::to_string(k) + " steps"; }

inline RunReport cmd_halt_probe(const HaltProbeOptions& o) {
  Stopwatch clock;
  if (o.mode != "ga" && o.mode != "direct" && o.mode != "both") throw usage_error("--mode must be ga, direct or both");
  if (o.construction != "chained" && o.construction != "free") throw usage_error("--construction must be chained or free");
  if (o.steps == 0) throw usage_error("--steps must be at least 1");
  if (o.tape == 0 || o.tape > halting::max_cells) {
    throw usage_error("--tape must be in [1, " + std::to_string(halting::max_cells) + "]");
  }
  if (o.input.size() > o.tape || o.input.find_first_not_of("01") != std::string::npos) {
    throw usage_error("--input must be at most " + std::to_string(o.tape) + " characters of 0/1");
  }
  const auto head = o.head.value_or(o.tape / 2);
  if (head >= o.tape) throw usage_error("--head must lie on the tape");

  const auto spec = tm::load_machine(o.machine);
  tm::Config start;
  for (std::size_t i = 0; i < o.input.size(); ++i) {
    if (o.input[i] == '1') start.tape |= std::uint64_t{1} << i;
  }
  start.head = head;
  const auto x = tm::config_code(start, o.tape);
  const auto m = tm::encode_machine(spec);

  RunReport r;
  r.command = "halt-probe";
  r.params = {{"machine", o.machine}, {"input", o.input},          {"steps", o.steps},
              {"tape", o.tape},       {"head", head},              {"mode", o.mode},
              {"construction", o.construction}};
  r.result["machine_code"] = m;
  r.result["input_config_code"] = x;
  r.result["label"] = halts_label(o.steps);
  r.result["bounded"] = true;

  std::optional<bool> ga;
  std::optional<bool> direct;
  if (o.mode != "direct") {
    auto params = halting::default_params(spec, o.steps, o.tape);
    params.term_cap = o.max_terms;
    const auto how = o.construction == "free" ? halting::Construction::free : halting::Construction::chained;
    const halting::HaltProbe probe(params, how);
    const auto q = probe.query(m, x);
    ga = q.halts_within_k;
    if (probe.psi0_terms()) r.stages.emplace_back("psi0", *probe.psi0_terms());
    if (probe.psi1_terms()) r.stages.emplace_back("psi1", *probe.psi1_terms());
    r.stages.emplace_back("psi2", probe.consistent().size());
    r.stages.emplace_back("psi3", q.instance_terms);
    r.stages.emplace_back("halted", q.halted_terms);
    r.counters["step_operators"] = o.steps;
    r.result["dimension"] = probe.layout().dimension();
    if (o.dump) dump_state(o.dump, halting::halt_project(halting::instance_project(probe.consistent(), m, x, probe.layout()), probe.layout()));
  }
  if (o.mode != "ga") {
    const auto steps = tm::steps_to_halt(spec, start, o.tape, o.steps);
    direct = steps.has_value();
    if (steps) r.result["direct_halt_step"] = *steps;
  }

  const bool answer = ga.has_value() ? *ga : *direct;
  r.result["halts_within_k"] = answer;
  r.text.push_back(halts_label(o.steps) + ": " + (answer ? "true" : "false") + " (bounded probe, B = " +
                   std::to_string(o.tape) + " cells)");
  if (ga && direct) {
    r.result["ga"] = *ga;
    r.result["direct"] = *direct;
    r.result["agreement"] = *ga == *direct;
    r.text.push_back(std::string("direct simulation: ") + (*direct ? "true" : "false") +
                     ", agreement: " + (*ga == *direct ? "true" : "false"));
  }
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------- circuit

struct CircuitOptions {
  std::string netlist;
  std::optional<std::string> bits;
  std::optional<std::string> words;
};

inline Netlist load_netlist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open netlist file '" + path + "'");
  return parse_netlist(in);
}

inline RunReport cmd_circuit(const CircuitOptions& o) {
  Stopwatch clock;
  if (o.bits.has_value() == o.words.has_value()) throw usage_error("give exactly one of --bits or --words");
  const auto nl = load_netlist(o.netlist);
  const auto& inputs = nl.inputs();

  MemoryBlade m;
  std::string assigned;
  if (o.bits) {
    if (o.bits->size() != inputs.size() || o.bits->find_first_not_of("01") != std::string::npos) {
      throw usage_error("--bits needs exactly " + std::to_string(inputs.size()) + " characters of 0/1");
    }
    assigned = *o.bits;
  } else {
    std::vector<std::uint64_t> values;
    std::stringstream ss(*o.words);
    std::string tok;
    while (std::getline(ss, tok, ',')) values.push_back(parse_uint(tok, "word"));
    if (values.empty() || inputs.size() % values.size() != 0) {
      throw usage_error("INPUT places do not split evenly into " + std::to_string(values.size()) + " words");
    }
    const auto w = inputs.size() / values.size();
    for (const auto v : values) {
      if (w < 64 && (v >> w) != 0) throw usage_error("word " + std::to_string(v) + " does not fit " + std::to_string(w) + " bits");
      for (std::size_t i = 0; i < w; ++i) assigned.push_back(((v >> i) & 1U) != 0 ? '1' : '0');
    }
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (assigned[i] == '1') m.mask.set(inputs[i]);
  }

  const auto out = run_netlist(nl, m);
  std::string out_bits;
  for (auto p : nl.outputs()) out_bits.push_back(bit_read(out, p) ? '1' : '0');

  RunReport r;
  r.command = "circuit";
  r.params = {{"netlist", o.netlist}, {"input_bits", assigned}};
  r.result = {{"output_bits", out_bits}, {"sign", out.sign}};
  if (nl.outputs().size() <= 64) r.result["output_value"] = read_outputs(nl, out);
  r.counters = {{"nand_gates", nl.gates().size()}};
  r.text.push_back("output bits (first OUTPUT place first): " + out_bits);
  if (nl.outputs().size() <= 64) r.text.push_back("output value: " + std::to_string(read_outputs(nl, out)));
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

}  // namespace sga::cli
