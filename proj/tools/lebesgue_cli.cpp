#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lebesgue/check.hpp"
#include "lebesgue/selftest.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitInputError = 2;

int cmd_check(const std::string& spec_path, const std::string& out_dir, bool json_only) {
  lebesgue::CheckOutcome outcome;
  try {
    outcome = lebesgue::run_check(lebesgue::io::load_problem_spec(spec_path));
  } catch (const lebesgue::KernelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string report = outcome.report.dump(2) + "\n";
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream(fs::path(out_dir) / "report.json") << report;
    if (!json_only) std::ofstream(fs::path(out_dir) / "summary.txt") << outcome.summary;
  }
  if (json_only)
    std::cout << report;
  else
    std::cout << outcome.summary;
  return outcome.passed ? kExitPass : kExitVerdictFail;
}

int cmd_selftest(const lebesgue::SelftestOptions& options, bool json_only) {
  std::vector<lebesgue::SuiteResult> results;
  try {
    results = lebesgue::run_selftest(options);
  } catch (const lebesgue::KernelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  std::size_t failures = 0;
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    failures += r.failures;
    if (json_only) {
      nlohmann::ordered_json s{{"suite", r.name}, {"cases", r.cases}, {"failures", r.failures}};
      if (r.counterexample) s["counterexample"] = *r.counterexample;
      j.push_back(s);
      continue;
    }
    std::cout << r.name << ": " << r.cases - r.failures << "/" << r.cases << " passed";
    if (r.counterexample) std::cout << "\n  counterexample " << *r.counterexample;
    std::cout << "\n";
  }
  if (json_only)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << (failures == 0 ? "selftest: pass" : "selftest: FAIL") << "\n";
  return failures == 0 ? kExitPass : kExitVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Lebesgue integration and Tonelli verifier"};
  app.require_subcommand(1);

  std::string out_dir;
  bool json_only = false;
  app.add_option("--out", out_dir, "directory for report.json and summary.txt");
  app.add_flag("--json-only", json_only, "print the JSON report instead of the text summary");

  std::string spec_path;
  auto* check = app.add_subcommand("check", "verify a problem spec");
  check->add_option("spec", spec_path, "spec file")->required();
  check->add_option("--out", out_dir, "directory for report.json and summary.txt");
  check->add_flag("--json-only", json_only, "print the JSON report instead of the text summary");

  lebesgue::SelftestOptions opts;
  std::string mutant;
  auto* selftest = app.add_subcommand("selftest", "run the randomized property suites");
  selftest->add_option("--seed", opts.seed, "random seed");
  selftest->add_option("--cases", opts.cases, "cases per suite");
  selftest->add_option("--depth", opts.depth, "maximum expression depth");
  selftest->add_option("--size", opts.size, "maximum factor carrier size")->check(CLI::Range(1, 8));
  selftest->add_option("--mutant", mutant, "inject a known bug (zero-times-inf)");
  selftest->add_flag("--json-only", json_only, "print results as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInputError;
  }

  if (*check) return cmd_check(spec_path, out_dir, json_only);
  if (!mutant.empty()) opts.mutant = mutant;
  return cmd_selftest(opts, json_only);
}
