#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "commands.hpp"
#include "report.hpp"
#include "sga/sga.hpp"

// Reduced-size invariant suite behind `sga selftest`.

namespace sga::cli {

struct SelfTestOptions {
  std::string filter;              ///< Module name; empty runs everything.
  bool inject_sign_fault = false;  ///< Blade-core checks use a product that ignores reordering signs.
};

struct PropertyOutcome {
  std::string module;
  std::string property;
  bool passed = false;
};

namespace selftest_detail {

using Product = std::function<Multivector(const Multivector&, const Multivector&)>;

inline Multivector sign_blind_product(const Multivector& a, const Multivector& b) {
  Multivector out(a.dimension());
  for (const auto& [ba, ca] : a) {
    for (const auto& [bb, cb] : b) out.accumulate(ba ^ bb, ca * cb);
  }
  return out;
}

// Sign of sorting the concatenated index lists by adjacent swaps.
inline int bubble_parity(const Blade& a, const Blade& b) {
  auto seq = a.indices();
  const auto tail = b.indices();
  seq.insert(seq.end(), tail.begin(), tail.end());
  int swaps = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = 0; j + 1 < seq.size() - i; ++j) {
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        ++swaps;
      }
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

inline Multivector random_mv(std::mt19937_64& rng, std::size_t dim, std::size_t terms) {
  Multivector m(dim);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (std::size_t t = 0; t < terms; ++t) {
    m.accumulate(Blade::from_word(rng() & ((std::uint64_t{1} << dim) - 1)), make_coefficient(coeff(rng), static_cast<unsigned long>(1 + rng() % 3)));
  }
  return m;
}

inline std::vector<std::string> builtin_machines() {
  return {
      R"({"states":["A","B","H"],"start":"A","halt_states":["H"],"transitions":[
        {"state":"A","read":0,"write":1,"move":"R","next":"B"},{"state":"A","read":1,"write":1,"move":"L","next":"B"},
        {"state":"B","read":0,"write":1,"move":"L","next":"A"},{"state":"B","read":1,"write":1,"move":"R","next":"H"}]})",
      R"({"states":["A","B"],"start":"A","halt_states":[],"transitions":[
        {"state":"A","read":0,"write":0,"move":"R","next":"B"},{"state":"A","read":1,"write":1,"move":"R","next":"B"},
        {"state":"B","read":0,"write":0,"move":"L","next":"A"},{"state":"B","read":1,"write":1,"move":"L","next":"A"}]})",
      R"({"states":["A","H"],"start":"A","halt_states":["H"],"transitions":[
        {"state":"A","read":0,"write":0,"move":"R","next":"A"},{"state":"A","read":1,"write":1,"move":"L","next":"H"}]})",
  };
}

}  // namespace selftest_detail

inline std::vector<PropertyOutcome> run_selftest(const SelfTestOptions& opt) {
  using namespace selftest_detail;
  std::vector<PropertyOutcome> out;
  std::mt19937_64 rng(20240601);
  const auto want = [&](const std::string& module) { return opt.filter.empty() || opt.filter == module; };
  const auto record = [&](const std::string& module, const std::string& property, const std::function<bool()>& check) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception&) {
      ok = false;
    }
    out.push_back({module, property, ok});
  };

  if (want("blade-core")) {
    const Product mul = opt.inject_sign_fault ? Product(sign_blind_product) : Product([](const Multivector& a, const Multivector& b) {
      return geometric_product(a, b);
    });
    constexpr std::size_t dim = 6;
    record("blade-core", "anticommutation", [&] {
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          const auto ei = Multivector::basis(dim, i);
          const auto ej = Multivector::basis(dim, j);
          if (i != j && mul(ei, ej) != -mul(ej, ei)) return false;
          if (i == j && mul(ei, ei) != Multivector::scalar(dim, 1)) return false;
        }
      }
      return true;
    });
    record("blade-core", "reorder-sign-parity", [&] {
      for (std::uint64_t a = 0; a < 32; ++a) {
        for (std::uint64_t b = 0; b < 32; ++b) {
          const auto ba = Blade::from_word(a);
          const auto bb = Blade::from_word(b);
          const auto m = mul(Multivector::from_blade(dim, ba), Multivector::from_blade(dim, bb));
          if (m.coefficient(ba ^ bb) != bubble_parity(ba, bb)) return false;
        }
      }
      return true;
    });
    record("blade-core", "associativity", [&] {
      for (int t = 0; t < 200; ++t) {
        const auto a = random_mv(rng, 8, 4);
        const auto b = random_mv(rng, 8, 4);
        const auto c = random_mv(rng, 8, 4);
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
      }
      return true;
    });
    record("blade-core", "distributivity", [&] {
      for (int t = 0; t < 200; ++t) {
        const auto a = random_mv(rng, 8, 4);
        const auto b = random_mv(rng, 8, 4);
        const auto c = random_mv(rng, 8, 4);
        if (mul(a, b + c) != mul(a, b) + mul(a, c)) return false;
      }
      return true;
    });
  }

  if (want("encoding")) {
    record("encoding", "round-trip-and-grade", [&] {
      SubspaceLayout l;
      l.add("s", 8);
      for (std::uint64_t x = 0; x < 256; ++x) {
        const auto b = encode(x, l[0]);
        if (decode(b, l[0]) != x || b.grade() != static_cast<std::size_t>(std::popcount(x))) return false;
      }
      return true;
    });
  }

  if (want("oracle-search")) {
    record("oracle-search", "filter-equals-brute-force", [&] {
      for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + rng() % 6;
        std::set<std::uint64_t> ys;
        std::set<std::uint64_t> marked;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
          if (rng() % 2) ys.insert(x);
          if (rng() % 3 == 0) marked.insert(x);
        }
        MembershipOracle o([&](std::uint64_t x) { return marked.contains(x); });
        const SearchLayout sl(n);
        const auto got = extract_matches(filter_marked(o, ys, sl), sl);
        std::set<std::uint64_t> expect;
        for (auto y : ys) {
          if (marked.contains(y)) expect.insert(y);
        }
        if (got != expect || o.op_count() != 1) return false;
      }
      return true;
    });
  }

  if (want("ga-circuit")) {
    record("ga-circuit", "nand-truth-table", [&] {
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          MemoryBlade m;
          if (p) m.mask.set(0);
          if (q) m.mask.set(1);
          if (bit_read(nand_apply({0, 1, 2}, m), 2) != !(p && q)) return false;
        }
      }
      return true;
    });
    record("ga-circuit", "multiplier-exhaustive-n3", [&] {
      const auto nl = build_nand_multiplier(3);
      for (std::uint64_t a = 0; a < 8; ++a) {
        for (std::uint64_t b = 0; b < 8; ++b) {
          MemoryBlade m{Blade::from_word(a | (b << 3)), 1};
          if (read_outputs(nl, run_netlist(nl, m)) != a * b) return false;
        }
      }
      return true;
    });
  }

  if (want("factoring")) {
    record("factoring", "divisors-n4-both-routes", [&] {
      for (auto route : {MultiplierRoute::fast, MultiplierRoute::faithful}) {
        const FactoringLayout fl(4);
        const auto multiplied = multiply_all(build_factoring_superposition(fl, route), fl, route);
        for (std::uint64_t z = 1; z < 16; ++z) {
          std::set<std::uint64_t> expect;
          for (std::uint64_t d = 1; d <= z; ++d) {
            if (z % d == 0) expect.insert(d);
          }
          if (read_divisors(project_product(multiplied, z, fl), fl) != expect) return false;
        }
      }
      return true;
    });
  }

  if (want("halting-probe")) {
    std::vector<tm::TMSpec> machines;
    for (const auto& text : builtin_machines()) machines.push_back(tm::parse_machine(nlohmann::json::parse(text)));
    record("halting-probe", "probe-agrees-with-simulation", [&] {
      for (const auto& spec : machines) {
        for (std::size_t cells = 1; cells <= 4; ++cells) {
          for (std::size_t k = 1; k <= 4; ++k) {
            const halting::HaltProbe probe(halting::default_params(spec, k, cells), halting::Construction::chained);
            const tm::Config start{0, cells / 2};
            const bool ga = probe.query(tm::encode_machine(spec), tm::config_code(start, cells)).halts_within_k;
            if (ga != tm::steps_to_halt(spec, start, cells, k).has_value()) return false;
          }
        }
      }
      return true;
    });
    record("halting-probe", "chained-equals-free", [&] {
      auto p = halting::default_params(machines[0], 2, 1);
      p.machine_set.push_back(tm::encode_machine(machines[1]));
      const halting::SlotLayout sl(p);
      return halting::chained_pipeline(sl) == halting::consistent_runs(sl, halting::Construction::free);
    });
  }
  return out;
}

inline RunReport cmd_selftest(const SelfTestOptions& opt) {
  static const std::set<std::string> modules{"blade-core", "encoding", "oracle-search", "ga-circuit", "factoring",
                                             "halting-probe"};
  if (!opt.filter.empty() && !modules.contains(opt.filter)) {
    throw usage_error("unknown module '" + opt.filter + "'");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcomes = run_selftest(opt);
  RunReport r;
  r.command = "selftest";
  r.params = {{"filter", opt.filter}, {"inject_sign_fault", opt.inject_sign_fault}};
  nlohmann::json props = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& o : outcomes) {
    props.push_back({{"module", o.module}, {"property", o.property}, {"passed", o.passed}});
    r.text.push_back(std::string(o.passed ? "PASS " : "FAIL ") + o.module + " / " + o.property);
    if (!o.passed) ++failed;
  }
  r.result = {{"properties", props}, {"failed", failed}, {"passed", failed == 0}};
  r.counters = {{"properties_run", outcomes.size()}, {"properties_failed", failed}};
  r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace sga::cli
