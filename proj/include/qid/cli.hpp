#pragma once

#include <string>
#include <vector>

namespace qid {

// Batch front end. Exit codes: 0 success, 2 validation/usage failure,
// 3 infeasible construction. Failures also emit a machine-readable JSON
// object on standard error.
int run_cli(const std::vector<std::string>& args);

}  // namespace qid
