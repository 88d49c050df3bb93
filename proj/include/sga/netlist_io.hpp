#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sga/circuit.hpp"
#include "sga/errors.hpp"

namespace sga {

// Text netlist format, one directive per line:
//
//   # comment
//   INPUT <place>...
//   OUTPUT <place>...
//   NAND <p> <q> <r>
//
// Places are decimal. INPUT and OUTPUT may repeat; their lists concatenate.

inline Netlist parse_netlist(std::istream& in) {
  std::vector<Place> inputs;
  std::vector<Place> outputs;
  std::vector<NandGate> gates;
  std::vector<std::size_t> gate_lines;
  std::string line;
  std::size_t lineno = 0;

  const auto read_place = [&](std::istringstream& ls, const char* what) {
    std::string tok;
    if (!(ls >> tok)) throw parse_error("line " + std::to_string(lineno) + ": missing " + what);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw parse_error("line " + std::to_string(lineno) + ": '" + tok + "' is not a place index");
    }
    return static_cast<Place>(std::stoull(tok));
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "NAND") {
      NandGate g;
      g.p = read_place(ls, "p");
      g.q = read_place(ls, "q");
      g.r = read_place(ls, "r");
      std::string extra;
      if (ls >> extra) throw parse_error("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
      gates.push_back(g);
      gate_lines.push_back(lineno);
    } else if (kw == "INPUT" || kw == "OUTPUT") {
      auto& dst = kw == "INPUT" ? inputs : outputs;
      std::string tok;
      while (ls >> tok) {
        std::istringstream ts(tok);
        dst.push_back(read_place(ts, "place"));
      }
    } else {
      throw parse_error("line " + std::to_string(lineno) + ": unknown directive '" + kw + "'");
    }
  }

  try {
    return {std::move(inputs), std::move(outputs), std::move(gates)};
  } catch (const validation_error& e) {
    // Point at the source line as well as the gate index.
    std::string msg = e.what();
    if (msg.rfind("gate ", 0) == 0) {
      const auto idx = std::stoull(msg.substr(5));
      if (idx < gate_lines.size()) msg = "line " + std::to_string(gate_lines[idx]) + ", " + msg;
    }
    throw validation_error(msg);
  }
}

inline Netlist parse_netlist(const std::string& text) {
  std::istringstream in(text);
  return parse_netlist(in);
}

inline void write_netlist(std::ostream& out, const Netlist& nl, const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "INPUT";
  for (auto p : nl.inputs()) out << ' ' << p;
  out << "\nOUTPUT";
  for (auto p : nl.outputs()) out << ' ' << p;
  out << '\n';
  for (const auto& g : nl.gates()) out << "NAND " << g.p << ' ' << g.q << ' ' << g.r << '\n';
}

}  // namespace sga
