// Acceptance suite: criteria 1-10 in process, then criterion 11 runs the
// CLI's verify-all end to end when --cli is given. One line per criterion.
//
//   acceptance [--cli path/to/qgabor] [--only id] [--seed n]

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "qgabor/verify.hpp"

namespace {

using qgabor::CriterionResult;

// Criterion 11: verify-all exits 0 within the limit and prints one PASS row
// per criterion 1-10 plus the summary.
CriterionResult run_cli(const std::string& cli) {
  CriterionResult r;
  r.id = 11;
  r.key = "verify-all";
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = "\"" + cli + "\" verify-all 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    r.detail = "could not start " + cli;
    return r;
  }
  std::string output;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  const int status = pclose(pipe);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  int rows = 0;
  bool all_pass = true;
  for (int id = 1; id <= qgabor::kCriterionCount; ++id) {
    char tag[16];
    std::snprintf(tag, sizeof tag, "] %2d ", id);
    const auto pos = output.find(tag);
    if (pos == std::string::npos || pos < 5) {
      all_pass = false;
      continue;
    }
    ++rows;
    all_pass = all_pass && output.compare(pos - 5, 5, "[PASS") == 0;
  }
  const bool summary = output.find("10/10 passed") != std::string::npos;
  r.passed = code == 0 && all_pass && summary && r.seconds < 300.0;
  char detail[160];
  std::snprintf(detail, sizeof detail, "exit %d, %d/10 rows, all pass %s, %.1fs %s 300s", code,
                rows, all_pass && summary ? "yes" : "no", r.seconds,
                r.seconds < 300.0 ? "<" : ">=");
  r.detail = detail;
  if (!r.passed) std::cerr << output;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  int only = 0;
  qgabor::VerifyOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: acceptance [--cli path] [--only id] [--seed n]\n";
      return 2;
    }
  }

  std::vector<CriterionResult> results;
  for (int id = 1; id <= qgabor::kCriterionCount; ++id) {
    if (only != 0 && only != id) continue;
    results.push_back(qgabor::run_criterion(id, options));
    std::cout << qgabor::format_result(results.back()) << std::endl;
  }
  if ((only == 0 || only == 11) && !cli.empty()) {
    results.push_back(run_cli(cli));
    std::cout << qgabor::format_result(results.back()) << std::endl;
  } else if (only == 11) {
    std::cerr << "criterion 11 needs --cli\n";
    return 2;
  }

  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  return ok ? 0 : 1;
}
