#ifndef CHARMOMENT_CLI_HPP
#define CHARMOMENT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace charmoment::cli {

// Entry point behind the charmoment binary. Exit codes: 0 success,
// 1 domain/capacity error (message names the failing precondition),
// 2 usage error. Identical argument vectors (including --seed and
// --threads) produce byte-identical outputs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace charmoment::cli

#endif
