#ifndef IWASAWA_CLI_HPP
#define IWASAWA_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace iwasawa::cli {

enum exit_code : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_bad_arguments = 2,
    exit_precondition = 3,
};

/* Runs the command line `args` (program name excluded). Reports go to `out`
 * unless --output is given; diagnostics go to `err`. */
int run(std::vector<std::string> const & args, std::ostream & out,
        std::ostream & err);

/* "10000", "1e10", "2.5e3": non-negative integers, exact. */
std::uint64_t parse_count(std::string const & text);

/* "3", "3..43" (odd primes in the range), "3,5,7". */
std::vector<unsigned long> parse_primes(std::string const & text);

} // namespace iwasawa::cli

#endif
