#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "selftest.hpp"

namespace {

int emit(const sga::cli::RunReport& r, const std::string& format) {
  if (format == "json") {
    std::cout << sga::cli::to_json(r).dump(2) << '\n';
  } else {
    std::cout << sga::cli::render_text(r);
  }
  return 0;
}

int emit_multiplier(std::size_t n, const std::string& out_path) {
  if (n == 0 || n > 16) throw sga::cli::usage_error("--n must be in [1, 16]");
  const auto nl = sga::build_nand_multiplier(n);
  const auto comment = std::to_string(n) + "-bit NAND multiplier: INPUT a (LSB first) then b, OUTPUT a*b (LSB first)";
  if (out_path.empty()) {
    sga::write_netlist(std::cout, nl, comment);
  } else {
    std::ofstream out(out_path);
    if (!out) throw sga::error("cannot write '" + out_path + "'");
    sga::write_netlist(out, nl, comment);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sparse geometric-algebra engine: oracle search, NAND circuits, factoring, bounded halting probe"};
  app.require_subcommand(1);
  std::string format = "text";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  sga::cli::SearchOptions search;
  auto* s = app.add_subcommand("search", "Mark and read out database entries with one oracle application");
  s->add_option("--n", search.n, "Data width in bits")->required();
  s->add_option("--set", search.set, "Database Y, e.g. 0..15 or 1,2,5..7")->required();
  s->add_option("--marked", search.marked, "Marked values, e.g. 2,9");
  s->add_option("--rule", search.rule, "Modular rule 'x mod a == b'");
  s->add_option("--dump", search.dump, "Write the filtered multivector as JSON");
  add_format(s);

  sga::cli::FactorOptions factor;
  auto* f = app.add_subcommand("factor", "List every divisor of z from one multiplication pass");
  f->add_option("--z", factor.z, "Number to factor, 1 <= z < 2^n")->required();
  f->add_option("--n", factor.n, "Operand width in bits")->required();
  f->add_option("--route", factor.route, "faithful (NAND netlist) or fast (host multiply)");
  f->add_option("--dump", factor.dump, "Write the projected multivector as JSON");
  add_format(f);

  sga::cli::HaltProbeOptions probe;
  auto* h = app.add_subcommand("halt-probe", "Decide whether a machine halts within K steps");
  h->add_option("--machine", probe.machine, "Machine description (JSON)")->required();
  h->add_option("--input", probe.input, "Initial tape bits, cell 0 first; rest blank");
  h->add_option("--steps", probe.steps, "Step bound K")->required();
  h->add_option("--tape", probe.tape, "Tape cells B");
  h->add_option("--head", probe.head, "Initial head cell (default B/2)");
  h->add_option("--mode", probe.mode, "ga, direct or both");
  h->add_option("--construction", probe.construction, "chained or free");
  h->add_option("--max-terms", probe.max_terms, "Term cap for the superposition");
  h->add_option("--dump", probe.dump, "Write the halted-instance multivector as JSON");
  add_format(h);

  sga::cli::CircuitOptions circuit;
  auto* c = app.add_subcommand("circuit", "Run a NAND netlist on a blade memory");
  c->add_option("--netlist", circuit.netlist, "Netlist file")->required();
  c->add_option("--bits", circuit.bits, "One 0/1 per INPUT place, in declaration order");
  c->add_option("--words", circuit.words, "Integers filling equal-width INPUT groups, LSB first");
  add_format(c);

  std::size_t mul_n = 0;
  std::string mul_out;
  auto* e = app.add_subcommand("emit-multiplier", "Write the NAND multiplier netlist for width n");
  e->add_option("--n", mul_n, "Operand width")->required();
  e->add_option("--out", mul_out, "Output file (default stdout)");

  sga::cli::SelfTestOptions self;
  auto* t = app.add_subcommand("selftest", "Run the invariant suite at reduced sizes");
  t->add_option("--filter", self.filter, "Only this module");
  t->add_flag("--inject-sign-fault", self.inject_sign_fault, "Mutation check: ignore reordering signs");
  add_format(t);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (*s) return emit(sga::cli::cmd_search(search), format);
    if (*f) return emit(sga::cli::cmd_factor(factor), format);
    if (*h) {
      const auto r = sga::cli::cmd_halt_probe(probe);
      emit(r, format);
      return r.result.contains("agreement") && !r.result["agreement"].get<bool>() ? 1 : 0;
    }
    if (*c) return emit(sga::cli::cmd_circuit(circuit), format);
    if (*e) return emit_multiplier(mul_n, mul_out);
    if (*t) {
      const auto r = sga::cli::cmd_selftest(self);
      emit(r, format);
      return r.result["passed"].get<bool>() ? 0 : 1;
    }
  } catch (const sga::cli::usage_error& ex) {
    std::cerr << "usage error: " << ex.what() << '\n';
    return 2;
  } catch (const sga::validation_error& ex) {
    std::cerr << "validation error: " << ex.what() << '\n';
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 2;
}
