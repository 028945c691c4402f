#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skewca/rules.hpp"

namespace skewca::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CheckStatus { kPass, kFail, kSkipped };

std::string_view status_name(CheckStatus s);

struct VerifyResult {
  std::string check_name;
  CheckStatus status = CheckStatus::kPass;
  std::string expected;
  std::string observed;
  double runtime_ms = 0.0;
  std::string repro;  // set on failures
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string corruption;  // as given on the command line, echoed in repro lines
};

// One orbit table: rows of token text over `window` for steps 0..27.
struct OrbitTableFixture {
  std::string name;
  std::string rule;
  std::string config;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<std::string> rows;
};

const std::vector<OrbitTableFixture>& orbit_table_fixtures();

/// Reference "center,right,output" rows of the arrow automaton, one per
/// table entry.
std::string_view arrow_rule_display_csv();

const std::vector<std::string>& verify_suite_names();

/// Runs a suite ("all" for every suite) against the given rule tables.
std::vector<VerifyResult> run_verify(std::string_view suite, const RuleSet& rules,
                                     const VerifyOptions& options);

/// Overrides one table entry. Format "RULE:CENTER,RIGHT=OUT" in token text,
/// e.g. "t:0,_=2" or "ts:_b,0a=_c".
void apply_corruption(RuleSet& rules, std::string_view spec);

std::string render_verify(const std::vector<VerifyResult>& results, bool csv);

}  // namespace skewca::cli
