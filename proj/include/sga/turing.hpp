#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sga/errors.hpp"

namespace sga::tm {

enum class Move : std::uint8_t { left = 0, right = 1 };

struct Transition {
  std::uint8_t write = 0;
  Move move = Move::left;
  std::uint32_t next = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Most control states (including halt states) a machine code can describe.
inline constexpr std::size_t max_states = 5;

/// A two-symbol Turing machine. Rows of halt states are unused and kept zero.
struct TMSpec {
  std::vector<std::string> names;
  std::uint32_t start = 0;
  std::vector<bool> halting;
  std::vector<std::array<Transition, 2>> table;

  std::size_t state_count() const noexcept { return halting.size(); }

  /// Structural equality: names are labels and do not take part.
  friend bool same_table(const TMSpec& a, const TMSpec& b) {
    return a.start == b.start && a.halting == b.halting && a.table == b.table;
  }
};

// Machine code m, little-endian fields:
//   3 bits  state count - 1
//   3 bits  start state
//   S bits  halt flag per state
//   per state, per read symbol 0 then 1: write (1 bit), move (1 bit, 1 = right), next (3 bits)
inline constexpr std::size_t next_field_bits = 3;
inline constexpr std::size_t row_bits = 2 + next_field_bits;

inline std::size_t code_width(std::size_t states) noexcept { return 6 + states + 2 * row_bits * states; }

inline void check_spec(const TMSpec& spec) {
  const auto s = spec.state_count();
  if (s == 0 || s > max_states) throw parse_error("machine must have 1.." + std::to_string(max_states) + " states");
  if (spec.table.size() != s || spec.names.size() != s) throw parse_error("machine tables have inconsistent sizes");
  if (spec.start >= s) throw parse_error("start state out of range");
  for (std::size_t i = 0; i < s; ++i) {
    if (spec.halting[i]) continue;
    for (const auto& t : spec.table[i]) {
      if (t.next >= s || t.write > 1) throw parse_error("transition of state '" + spec.names[i] + "' out of range");
    }
  }
}

inline std::uint64_t encode_machine(const TMSpec& spec) {
  check_spec(spec);
  std::uint64_t m = 0;
  std::size_t pos = 0;
  const auto put = [&](std::uint64_t v, std::size_t bits) {
    m |= v << pos;
    pos += bits;
  };
  put(spec.state_count() - 1, 3);
  put(spec.start, 3);
  for (bool h : spec.halting) put(h ? 1 : 0, 1);
  for (std::size_t i = 0; i < spec.state_count(); ++i) {
    for (const auto& t : spec.table[i]) {
      if (spec.halting[i]) {
        put(0, row_bits);
      } else {
        put(t.write, 1);
        put(static_cast<std::uint64_t>(t.move), 1);
        put(t.next, next_field_bits);
      }
    }
  }
  return m;
}

/// Inverse of encode_machine; nullopt when m is not a well-formed code.
inline std::optional<TMSpec> decode_machine(std::uint64_t m) {
  std::size_t pos = 0;
  const auto get = [&](std::size_t bits) {
    const auto v = (m >> pos) & ((std::uint64_t{1} << bits) - 1);
    pos += bits;
    return v;
  };
  TMSpec spec;
  const auto s = static_cast<std::size_t>(get(3)) + 1;
  if (s > max_states) return std::nullopt;
  spec.start = static_cast<std::uint32_t>(get(3));
  if (spec.start >= s) return std::nullopt;
  for (std::size_t i = 0; i < s; ++i) {
    spec.halting.push_back(get(1) != 0);
    spec.names.push_back("q" + std::to_string(i));
  }
  spec.table.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    for (auto& t : spec.table[i]) {
      t.write = static_cast<std::uint8_t>(get(1));
      t.move = get(1) != 0 ? Move::right : Move::left;
      t.next = static_cast<std::uint32_t>(get(next_field_bits));
      if (spec.halting[i] ? (t.write != 0 || t.move != Move::left || t.next != 0) : t.next >= s) return std::nullopt;
    }
  }
  if (pos < 64 && (m >> pos) != 0) return std::nullopt;
  return spec;
}

/// Tape of B cells over {0,1} plus head position.
/// Code: tape bits (cell 0 least significant) then the head index.
struct Config {
  std::uint64_t tape = 0;
  std::size_t head = 0;

  friend bool operator==(const Config&, const Config&) = default;
};

inline std::size_t head_bits(std::size_t cells) noexcept {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(cells - 1)));
}

inline std::size_t config_width(std::size_t cells) noexcept { return cells + head_bits(cells); }

inline std::uint64_t config_code(const Config& c, std::size_t cells) noexcept {
  return c.tape | (static_cast<std::uint64_t>(c.head) << cells);
}

inline Config config_from_code(std::uint64_t x, std::size_t cells) noexcept {
  return {x & ((std::uint64_t{1} << cells) - 1), static_cast<std::size_t>(x >> cells)};
}

/// Every config with head inside the tape, in code order.
inline std::vector<std::uint64_t> all_config_codes(std::size_t cells) {
  std::vector<std::uint64_t> out;
  for (std::size_t h = 0; h < cells; ++h) {
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << cells); ++t) out.push_back(config_code({t, h}, cells));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Control state and halted flag. control = 0 is the REJECT halt state
/// shared by every machine; control = i + 1 is state i of the machine.
/// Code: halted flag in bit 0, control above it.
struct MachineState {
  std::uint32_t control = 0;
  bool halted = true;

  static MachineState reject() noexcept { return {0, true}; }
  static MachineState of(const TMSpec& spec, std::uint32_t i) noexcept { return {i + 1, spec.halting[i]}; }

  bool is_reject() const noexcept { return control == 0; }

  friend bool operator==(const MachineState&, const MachineState&) = default;
};

inline std::uint64_t state_code(const MachineState& s) noexcept {
  return (static_cast<std::uint64_t>(s.control) << 1) | (s.halted ? 1U : 0U);
}

inline MachineState state_from_code(std::uint64_t code) noexcept {
  return {static_cast<std::uint32_t>(code >> 1), (code & 1U) != 0};
}

inline bool state_code_halted(std::uint64_t code) noexcept { return (code & 1U) != 0; }

inline std::size_t state_width(std::size_t states) noexcept {
  return static_cast<std::size_t>(std::bit_width(state_code({static_cast<std::uint32_t>(states), true})));
}

/// REJECT plus every state of the machine, in code order.
inline std::vector<std::uint64_t> all_state_codes(const TMSpec& spec) {
  std::vector<std::uint64_t> out{state_code(MachineState::reject())};
  for (std::uint32_t i = 0; i < spec.state_count(); ++i) out.push_back(state_code(MachineState::of(spec, i)));
  std::sort(out.begin(), out.end());
  return out;
}

/// One step on a B-cell tape. Halted states are fixed points. A state that
/// is not a state of this machine, a head outside the tape, or a move off
/// the tape all lead to REJECT; on a move off the tape the symbol is
/// still written and the head stays.
inline std::pair<Config, MachineState> tm_step(const TMSpec& spec, const Config& c, const MachineState& s,
                                               std::size_t cells) {
  if (s.halted && (s.is_reject() || (s.control <= spec.state_count() && spec.halting[s.control - 1]))) {
    return {c, s};
  }
  if (s.is_reject() || s.control > spec.state_count() || s.halted != spec.halting[s.control - 1] ||
      c.head >= cells || (c.tape >> cells) != 0) {
    return {c, MachineState::reject()};
  }
  const auto i = s.control - 1;
  const auto read = static_cast<std::size_t>((c.tape >> c.head) & 1U);
  const auto& t = spec.table[i][read];
  Config out = c;
  out.tape = (c.tape & ~(std::uint64_t{1} << c.head)) | (static_cast<std::uint64_t>(t.write) << c.head);
  if (t.move == Move::left) {
    if (c.head == 0) return {out, MachineState::reject()};
    --out.head;
  } else {
    if (c.head + 1 >= cells) return {out, MachineState::reject()};
    ++out.head;
  }
  return {out, MachineState::of(spec, t.next)};
}

/// Runs the machine from `c` in its start state for at most `max_steps`
/// steps. Returns the step count after which it is halted, if it halts in time.
inline std::optional<std::size_t> steps_to_halt(const TMSpec& spec, Config c, std::size_t cells,
                                                std::size_t max_steps) {
  auto s = MachineState::of(spec, spec.start);
  for (std::size_t k = 0; k <= max_steps; ++k) {
    if (s.halted) return k;
    if (k == max_steps) break;
    std::tie(c, s) = tm_step(spec, c, s, cells);
  }
  return std::nullopt;
}

inline TMSpec parse_machine(const nlohmann::json& j) {
  try {
    TMSpec spec;
    std::map<std::string, std::uint32_t> index;
    for (const auto& n : j.at("states")) {
      const auto name = n.get<std::string>();
      if (index.contains(name)) throw parse_error("duplicate state '" + name + "'");
      index.emplace(name, static_cast<std::uint32_t>(spec.names.size()));
      spec.names.push_back(name);
    }
    if (spec.names.empty() || spec.names.size() > max_states) {
      throw parse_error("machine must have 1.." + std::to_string(max_states) + " states");
    }
    const auto lookup = [&](const std::string& name) {
      const auto it = index.find(name);
      if (it == index.end()) throw parse_error("unknown state '" + name + "'");
      return it->second;
    };
    spec.start = lookup(j.at("start").get<std::string>());
    spec.halting.assign(spec.names.size(), false);
    for (const auto& h : j.at("halt_states")) spec.halting[lookup(h.get<std::string>())] = true;
    spec.table.resize(spec.names.size());
    std::vector<std::array<bool, 2>> seen(spec.names.size(), {false, false});
    for (const auto& t : j.at("transitions")) {
      const auto from = lookup(t.at("state").get<std::string>());
      const auto read = t.at("read").get<int>();
      const auto write = t.at("write").get<int>();
      const auto move = t.at("move").get<std::string>();
      if (read < 0 || read > 1 || write < 0 || write > 1) throw parse_error("symbols must be 0 or 1");
      if (move != "L" && move != "R") throw parse_error("move must be \"L\" or \"R\"");
      if (spec.halting[from]) throw parse_error("halt state '" + spec.names[from] + "' has a transition");
      if (seen[from][read]) throw parse_error("duplicate transition for state '" + spec.names[from] + "'");
      seen[from][read] = true;
      spec.table[from][read] = {static_cast<std::uint8_t>(write), move == "R" ? Move::right : Move::left,
                                lookup(t.at("next").get<std::string>())};
    }
    for (std::size_t i = 0; i < spec.names.size(); ++i) {
      if (!spec.halting[i] && !(seen[i][0] && seen[i][1])) {
        throw parse_error("transition table is not total on state '" + spec.names[i] + "'");
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("machine description: ") + e.what());
  }
}

inline nlohmann::json machine_to_json(const TMSpec& spec) {
  nlohmann::json j;
  j["states"] = spec.names;
  j["start"] = spec.names[spec.start];
  j["halt_states"] = nlohmann::json::array();
  j["transitions"] = nlohmann::json::array();
  for (std::size_t i = 0; i < spec.state_count(); ++i) {
    if (spec.halting[i]) {
      j["halt_states"].push_back(spec.names[i]);
      continue;
    }
    for (int read = 0; read < 2; ++read) {
      const auto& t = spec.table[i][static_cast<std::size_t>(read)];
      j["transitions"].push_back({{"state", spec.names[i]},
                                  {"read", read},
                                  {"write", t.write},
                                  {"move", t.move == Move::right ? "R" : "L"},
                                  {"next", spec.names[t.next]}});
    }
  }
  return j;
}

inline TMSpec load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open machine file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("machine file '" + path + "': " + e.what());
  }
  return parse_machine(j);
}

}  // namespace sga::tm
