#pragma once

// Brute-force reference implementations. None of these call into the code
// paths they are used to check.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sga/circuit.hpp"
#include "sga/multivector.hpp"

namespace oracle {

/// Sorts the concatenation a ++ b by adjacent swaps and returns (-1)^swaps.
inline int permutation_parity(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> seq(a);
  seq.insert(seq.end(), b.begin(), b.end());
  std::size_t swaps = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        ++swaps;
        moved = true;
      }
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

/// Product of two index lists: bubble sort the concatenation, then cancel equal neighbours (e_i e_i = 1).
inline std::pair<std::vector<std::size_t>, int> index_product(const std::vector<std::size_t>& a,
                                                              const std::vector<std::size_t>& b) {
  const int sign = permutation_parity(a, b);
  std::vector<std::size_t> seq(a);
  seq.insert(seq.end(), b.begin(), b.end());
  std::sort(seq.begin(), seq.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < seq.size();) {
    if (i + 1 < seq.size() && seq[i] == seq[i + 1]) {
      i += 2;
    } else {
      out.push_back(seq[i++]);
    }
  }
  return {out, sign};
}

/// Term-by-term expansion of A·B with index lists as blades.
inline std::map<std::vector<std::size_t>, mpq_class> expand_product(const sga::Multivector& a, const sga::Multivector& b) {
  std::map<std::vector<std::size_t>, mpq_class> out;
  for (const auto& [ba, ca] : a) {
    for (const auto& [bb, cb] : b) {
      const auto [idx, sign] = index_product(ba.indices(), bb.indices());
      out[idx] += mpq_class(ca * cb * sign);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline std::map<std::vector<std::size_t>, mpq_class> as_index_map(const sga::Multivector& m) {
  std::map<std::vector<std::size_t>, mpq_class> out;
  for (const auto& [b, c] : m) out[b.indices()] = c;
  return out;
}

/// Evaluates the netlist as a plain boolean circuit.
inline std::map<sga::Place, bool> eval_circuit(const sga::Netlist& nl, const std::map<sga::Place, bool>& inputs) {
  std::map<sga::Place, bool> v(inputs);
  for (const auto& g : nl.gates()) v[g.r] = !(v[g.p] && v[g.q]);
  return v;
}

inline std::set<std::uint64_t> divisors(std::uint64_t z) {
  std::set<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= z; ++d) {
    if (z % d == 0) out.insert(d);
  }
  return out;
}

/// Direct Turing-machine simulation straight from the JSON description.
/// Leaving the tape halts the run (the engine's REJECT convention).
struct DirectMachine {
  std::string start;
  std::set<std::string> halts;
  std::map<std::pair<std::string, int>, std::tuple<int, int, std::string>> delta;  // write, move (+1/-1), next

  static DirectMachine from_json(const nlohmann::json& j) {
    DirectMachine m;
    m.start = j.at("start").get<std::string>();
    for (const auto& h : j.at("halt_states")) m.halts.insert(h.get<std::string>());
    for (const auto& t : j.at("transitions")) {
      m.delta[{t.at("state").get<std::string>(), t.at("read").get<int>()}] = {
          t.at("write").get<int>(), t.at("move").get<std::string>() == "R" ? 1 : -1, t.at("next").get<std::string>()};
    }
    return m;
  }

  static DirectMachine load(const std::string& path) {
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
  }

  struct Run {
    std::optional<std::size_t> halt_step;  ///< Steps taken until halted, if within the budget.
    std::vector<int> tape;
    bool ran_off = false;
  };

  Run run(std::vector<int> tape, long head, std::size_t budget) const {
    std::string state = start;
    for (std::size_t k = 0;; ++k) {
      if (halts.contains(state)) return {k, tape, false};
      if (k == budget) return {std::nullopt, tape, false};
      const auto& [w, mv, next] = delta.at({state, tape[static_cast<std::size_t>(head)]});
      tape[static_cast<std::size_t>(head)] = w;
      const long nh = head + mv;
      if (nh < 0 || nh >= static_cast<long>(tape.size())) return {k + 1, tape, true};
      head = nh;
      state = next;
    }
  }
};

}  // namespace oracle
