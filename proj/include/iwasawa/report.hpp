#ifndef IWASAWA_REPORT_HPP
#define IWASAWA_REPORT_HPP

#include <string>
#include <vector>

#include "iwasawa/greenberg.hpp"
#include "iwasawa/stats.hpp"

namespace iwasawa::report {

/* Per-p line of the counting table. */
struct count_row
{
    unsigned long p = 0;
    long c1 = 0;
    long c2 = 0;

    friend bool operator==(count_row const &, count_row const &) = default;
};

/*
 * CSV layouts. Every emit_* writes a header line followed by records; the
 * matching parse_* accepts exactly that text and throws std::runtime_error
 * on anything else.
 *
 *   rows:    m,p,h,h0,v_p_h,delta_eps,delta_pi,z_eps,z_pi,class_ok,
 *            normic_ok,resolved,torsion_v
 *   check:   the rows columns, then n0,eps_a,eps_b,eps_den,pi1_a,pi1_b,pi1_den
 *   counts:  p,C1,C2,C1-C2
 *   tally:   m,p,n,bound,total,C0..Crmax,prop0..proprmax,exp0..exprmax,skipped
 *   density: m,p,mode,seed,samples,trials,accepted,hits,density,expected
 *
 * Lines starting with '#' are comments and skipped by the parsers.
 * z columns are "1", "1/3", "1/9", ...; a rows record parses back into a
 * verdict with n0 = 0 and default eps, pi1.
 */
std::string emit_rows_csv(std::vector<greenberg::verdict> const & rows,
                          bool header = true);
std::vector<greenberg::verdict> parse_rows_csv(std::string const & text);

std::string emit_check_csv(greenberg::verdict const & v);
greenberg::verdict parse_check_csv(std::string const & text);

std::string emit_counts_csv(std::vector<count_row> const & rows);
std::vector<count_row> parse_counts_csv(std::string const & text);

std::string emit_tally_csv(stats::stat_tally const & t);
stats::stat_tally parse_tally_csv(std::string const & text);

std::string emit_density_csv(stats::density_result const & d);
stats::density_result parse_density_csv(std::string const & text);

/* JSON documents, top-level {"schema": 1, "kind": ..., "data": ...}, with a
 * "generated" timestamp member on its own line when `generated` is set. */
std::string emit_check_json(greenberg::verdict const & v,
                            std::string const & generated = {});
std::string emit_counts_json(std::vector<count_row> const & rows,
                             std::string const & generated = {});
std::string emit_tally_json(stats::stat_tally const & t,
                            std::string const & generated = {});
std::string emit_density_json(stats::density_result const & d,
                              std::string const & generated = {});

/* Human-readable tables. */
std::string emit_check_text(greenberg::verdict const & v);
std::string emit_counts_text(std::vector<count_row> const & rows);
std::string emit_tally_text(stats::stat_tally const & t);
std::string emit_density_text(stats::density_result const & d);

char const * mode_name(stats::density_mode mode);
stats::density_mode parse_mode(std::string const & s);

} // namespace iwasawa::report

#endif
