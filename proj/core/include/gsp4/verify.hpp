#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsp4 {

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string id;  // "<suite>.<check>.p<p>"
  int criterion = 0;
  std::string anchor;  // short description of the identity being checked
  CheckStatus status = CheckStatus::Skipped;
  std::vector<std::string> witness;  // canonical strings, filled on failure
  double seconds = 0;
};

struct VerifyOptions {
  long p = 2;
  int samples = 0;  // 0: the suite's default sample count
  std::uint64_t seed = 1;
  int eis_bound = 200;
  int eis_max_k = 10;
};

// trace, eigenvectors, zeta, eis, corr-identity, branching, constants, whittaker
const std::vector<std::string>& verify_suite_names();
// Throws ConfigError for an unknown suite.  Results are sorted by id.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt);
std::vector<CheckResult> run_all_suites(const VerifyOptions& opt);

}  // namespace gsp4
