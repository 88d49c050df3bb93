#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "report.hpp"
#include "selftest.hpp"
#include "sga/serialize.hpp"

using namespace sga::cli;

namespace {

const std::string data = SGA_DATA_DIR;

struct Run {
  int status = -1;
  std::string out;
};

// Runs the installed binary through the shell, capturing stdout and stderr.
Run run_cli(const std::string& args) {
  const std::string cmd = std::string(SGA_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json without_time(nlohmann::json j) {
  j.erase("wall_time_ms");
  return j;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  SearchOptions o;
  o.n = 4;
  o.set = "0..15";
  o.marked = "2,9";
  const auto r = cmd_search(o);
  EXPECT_EQ(report_from_json(to_json(r)), r);
}

TEST(Search, MarkedValues) {
  SearchOptions o;
  o.n = 4;
  o.set = "0..15";
  o.marked = "2,9";
  const auto r = cmd_search(o);
  EXPECT_EQ(r.result["matches"], nlohmann::json({2, 9}));
  EXPECT_EQ(r.counters.at("oracle_applications"), 1u);
}

TEST(Search, ModularRule) {
  SearchOptions o;
  o.n = 5;
  o.set = "1,4,8..11,30";
  o.rule = "x mod 4 == 0";
  EXPECT_EQ(cmd_search(o).result["matches"], nlohmann::json({4, 8}));
}

TEST(Search, UsageErrors) {
  SearchOptions o;
  o.n = 3;
  o.set = "0..9";
  o.marked = "1";
  EXPECT_THROW(cmd_search(o), usage_error);
  o.set = "0..7";
  o.marked.reset();
  o.rule = "x mod 0 == 0";
  EXPECT_THROW(cmd_search(o), usage_error);
  o.rule = "x mod 3 = 1";
  EXPECT_THROW(cmd_search(o), usage_error);
}

TEST(Factor, ReportsDivisors) {
  FactorOptions o;
  o.z = 91;
  o.n = 7;
  const auto r = cmd_factor(o);
  EXPECT_EQ(r.result["divisors"], nlohmann::json({1, 7, 13, 91}));
  EXPECT_EQ(r.result["terms_before"], 1u << 14);
  EXPECT_EQ(r.result["terms_after"], 4u);
  EXPECT_EQ(r.counters.at("multiplier_applications"), 1u);
}

TEST(Factor, RepeatedRunsAreIdenticalApartFromTime) {
  FactorOptions o;
  o.z = 21;
  o.n = 5;
  o.route = "faithful";
  EXPECT_EQ(without_time(to_json(cmd_factor(o))), without_time(to_json(cmd_factor(o))));
}

TEST(Factor, DumpWritesParsableState) {
  const auto path = std::filesystem::temp_directory_path() / "sga_factor_dump.json";
  FactorOptions o;
  o.z = 12;
  o.n = 4;
  o.dump = path.string();
  cmd_factor(o);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto m = sga::parse_multivector(text);
  EXPECT_EQ(m.size(), 6u);
  std::filesystem::remove(path);
}

TEST(HaltProbe, LabelIsBounded) {
  HaltProbeOptions o;
  o.machine = data + "/machines/bb2.json";
  o.steps = 6;
  o.tape = 6;
  o.mode = "both";
  const auto r = cmd_halt_probe(o);
  EXPECT_EQ(r.result["label"], "halts within 6 steps");
  EXPECT_TRUE(r.result["halts_within_k"].get<bool>());
  EXPECT_TRUE(r.result["agreement"].get<bool>());
  EXPECT_EQ(r.result["direct_halt_step"], 6);
  EXPECT_NE(render_text(r).find("halts within 6 steps: true"), std::string::npos);
  for (const auto& line : r.text) EXPECT_EQ(line.find("halts:"), std::string::npos);
}

TEST(HaltProbe, FreeAndChainedReportTheSameAnswer) {
  HaltProbeOptions o;
  o.machine = data + "/machines/seek_one.json";
  o.input = "001";
  o.steps = 2;
  o.tape = 3;
  o.head = 0;
  const auto chained = cmd_halt_probe(o);
  o.construction = "free";
  const auto free = cmd_halt_probe(o);
  EXPECT_EQ(chained.result["halts_within_k"], free.result["halts_within_k"]);
  EXPECT_EQ(chained.stages.back(), free.stages.back());
}

TEST(Circuit, MultiplierNetlistFromData) {
  CircuitOptions o;
  o.netlist = data + "/netlists/mul3.nl";
  o.words = "5,7";
  const auto r = cmd_circuit(o);
  EXPECT_EQ(r.result["output_value"], 35);
}

TEST(SelfTest, PassesAndCatchesInjectedFault) {
  SelfTestOptions o;
  EXPECT_TRUE(cmd_selftest(o).result["passed"].get<bool>());
  o.inject_sign_fault = true;
  o.filter = "blade-core";
  EXPECT_FALSE(cmd_selftest(o).result["passed"].get<bool>());
  o.filter = "nope";
  EXPECT_THROW(cmd_selftest(o), usage_error);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("search --n 4 --set 0..15 --marked 2,9").status, 0);
  EXPECT_EQ(run_cli("factor --z 0 --n 4").status, 2);
  EXPECT_EQ(run_cli("factor --z 5").status, 2);
  EXPECT_EQ(run_cli("nonsense").status, 2);
  EXPECT_EQ(run_cli("halt-probe --machine /nonexistent.json --steps 2").status, 1);
  const auto bad = run_cli("circuit --netlist " + data + "/netlists/invalid_double_write.nl --bits 11");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("written twice"), std::string::npos);
}

TEST(Binary, JsonOutputParses) {
  const auto r = run_cli("factor --z 91 --n 7 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["divisors"], nlohmann::json({1, 7, 13, 91}));
  EXPECT_TRUE(j.contains("wall_time_ms"));
}

TEST(Binary, HaltProbeTextSaysWithinKSteps) {
  const auto r = run_cli("halt-probe --machine " + data + "/machines/tight_loop.json --steps 8 --mode both --format text");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("halts within 8 steps: false"), std::string::npos);
  EXPECT_NE(r.out.find("agreement: true"), std::string::npos);
}

TEST(Binary, SelfTestFilterAndFault) {
  EXPECT_EQ(run_cli("selftest --filter encoding").status, 0);
  EXPECT_EQ(run_cli("selftest --filter blade-core --inject-sign-fault").status, 1);
  EXPECT_EQ(run_cli("selftest --filter bogus").status, 2);
}

TEST(Binary, EmitMultiplierRoundTrips) {
  const auto path = std::filesystem::temp_directory_path() / "sga_mul4.nl";
  ASSERT_EQ(run_cli("emit-multiplier --n 4 --out " + path.string()).status, 0);
  const auto r = run_cli("circuit --netlist " + path.string() + " --words 13,11 --format json");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["output_value"], 143);
  std::filesystem::remove(path);
}
