#ifndef GRAPHLIM_CHECKS_HPP
#define GRAPHLIM_CHECKS_HPP

#include <string>
#include <vector>

namespace graphlim::checks {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured quantities, as "key=value" pairs separated by spaces.
  std::string detail;
  double seconds = 0.0;
};

/// Ids of the acceptance experiments, 1..13.
std::vector<int> check_ids();
std::string check_name(int id);
/// Accepts a numeric id or the check name.
int parse_check_id(const std::string& text);

/// Runs one acceptance experiment with its fixed seeds. Throws
/// std::out_of_range for an unknown id.
CheckResult run_check(int id, int threads = 1);

/// "criterion <id> <PASS|FAIL> <name> (<seconds>s): <detail>".
std::string format_result(const CheckResult& r);

}  // namespace graphlim::checks

#endif  // GRAPHLIM_CHECKS_HPP
