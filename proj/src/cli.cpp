#include "iwasawa/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iwasawa/arith.hpp"
#include "iwasawa/greenberg.hpp"
#include "iwasawa/report.hpp"
#include "iwasawa/stats.hpp"

namespace iwasawa::cli {

std::uint64_t parse_count(std::string const & text)
{
    auto fail = [&]() -> std::uint64_t {
        throw CLI::ValidationError("'" + text +
                                   "' is not a non-negative integer");
    };
    std::string mant = text, expo = "0";
    if (auto pos = text.find_first_of("eE"); pos != std::string::npos) {
        mant = text.substr(0, pos);
        expo = text.substr(pos + 1);
    }
    std::string digits;
    long scale = 0;
    bool seen_dot = false;
    for (char c : mant) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits += c;
            if (seen_dot)
                --scale;
        } else {
            return fail();
        }
    }
    if (digits.empty() || expo.empty() || expo.size() > 3)
        return fail();
    for (std::size_t i = 0; i < expo.size(); ++i)
        if (!(std::isdigit(static_cast<unsigned char>(expo[i])) ||
              (i == 0 && (expo[i] == '+' || expo[i] == '-') &&
               expo.size() > 1)))
            return fail();
    scale += std::stol(expo);
    mpz_class v(digits, 10);
    if (scale >= 0) {
        if (scale > 30)
            return fail();
        v *= arith::pow(10, static_cast<unsigned long>(scale));
    } else {
        mpz_class d = arith::pow(10, static_cast<unsigned long>(-scale));
        if (v % d != 0)
            return fail();
        v /= d;
    }
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
        return fail();
    return static_cast<std::uint64_t>(std::stoull(v.get_str()));
}

std::vector<unsigned long> parse_primes(std::string const & text)
{
    std::vector<unsigned long> out;
    if (auto pos = text.find(".."); pos != std::string::npos) {
        std::uint64_t lo = parse_count(text.substr(0, pos));
        std::uint64_t hi = parse_count(text.substr(pos + 2));
        for (std::uint64_t q = std::max<std::uint64_t>(lo, 3); q <= hi; ++q)
            if (arith::is_prime(static_cast<arith::u64>(q)))
                out.push_back(static_cast<unsigned long>(q));
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(static_cast<unsigned long>(parse_count(item)));
    if (out.empty())
        throw CLI::ValidationError("empty prime list");
    return out;
}

namespace {

enum class format { csv, json, text };

struct common_options
{
    unsigned workers = 0;
    std::string fmt = "csv";
    std::string output;
    bool no_header = false;

    format kind() const
    {
        return fmt == "json" ? format::json
               : fmt == "text" ? format::text
                               : format::csv;
    }
};

void add_common(CLI::App * sub, common_options & c)
{
    sub->add_option("--workers", c.workers,
                    "worker threads (0: available parallelism)");
    sub->add_option("--format", c.fmt, "csv, json or text")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--output", c.output, "write the report to this file");
    sub->add_flag("--no-header", c.no_header,
                  "omit the timestamped header line");
}

std::string timestamp()
{
    auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string header_line(std::string const & command)
{
    return "# iwasawa " + command + " " + timestamp() + "\n";
}

void write_text(std::string const & text, std::string const & path,
                std::ostream & out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f)
        throw std::runtime_error("write to " + path + " failed");
}

/* CSV and text get a comment line; JSON a "generated" member. */
template <typename Csv, typename Json, typename Text>
std::string render(std::string const & command, common_options const & c,
                   Csv csv, Json json, Text text)
{
    std::string stamp = c.no_header ? std::string() : timestamp();
    switch (c.kind()) {
    case format::json:
        return json(stamp);
    case format::text:
        return (c.no_header ? "" : header_line(command)) + text();
    case format::csv:
    default:
        return (c.no_header ? "" : header_line(command)) + csv();
    }
}

kernels::isa pick_isa(std::string const & name)
{
    if (name == "scalar")
        return kernels::isa::scalar;
    if (name == "avx2") {
        if (!kernels::isa_available(kernels::isa::avx2))
            throw precondition_error("avx2 is not available on this CPU");
        return kernels::isa::avx2;
    }
    return kernels::active_isa();
}

} // namespace

int run(std::vector<std::string> const & args, std::ostream & out,
        std::ostream & err)
{
    CLI::App app{"Sufficient test for lambda = mu = 0 over real quadratic "
                 "fields with p split, and Fermat-quotient statistics",
                 "iwasawa"};
    app.require_subcommand(1);

    // check
    common_options check_opts;
    std::int64_t check_m = 0;
    unsigned long check_p = 0, check_n0 = 8;
    auto * check = app.add_subcommand("check", "verdict for one field");
    check->add_option("--m", check_m, "squarefree m > 1")->required();
    check->add_option("--p", check_p, "odd prime split in Q(sqrt m)")
        ->required();
    check->add_option("--n0", check_n0, "precision of the z values")
        ->capture_default_str();
    add_common(check, check_opts);

    // scan
    common_options scan_opts;
    std::string scan_p, scan_rows, scan_min = "2", scan_max = "10000";
    unsigned long scan_n0 = 1;
    auto * scan = app.add_subcommand("scan", "counting table over a range of m");
    scan->add_option("--p", scan_p, "prime, range a..b or list a,b,c")
        ->required();
    scan->add_option("--min-m", scan_min, "smallest m")->capture_default_str();
    scan->add_option("--max-m", scan_max, "largest m")->capture_default_str();
    scan->add_option("--n0", scan_n0, "precision of the test")
        ->capture_default_str();
    scan->add_option("--rows", scan_rows, "write per-field rows (CSV) here");
    add_common(scan, scan_opts);

    // stats-primes
    common_options sp_opts;
    std::int64_t sp_m = 0;
    unsigned long sp_p = 0, sp_n = 0;
    std::string sp_bound;
    unsigned sp_rmax = 5;
    std::string sp_isa = "auto";
    auto * sp = app.add_subcommand(
        "stats-primes", "delta distribution over generators of split primes");
    sp->add_option("--m", sp_m, "squarefree m > 1")->required();
    sp->add_option("--p", sp_p, "odd prime split in Q(sqrt m)")->required();
    sp->add_option("--n", sp_n, "scan primes l with l^(p-1) = 1 mod p^(n+1)")
        ->required();
    sp->add_option("--bound", sp_bound, "scan l < bound (1e10 accepted)")
        ->required();
    sp->add_option("--rmax", sp_rmax, "last bucket collects delta >= rmax")
        ->capture_default_str();
    sp->add_option("--isa", sp_isa, "auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    add_common(sp, sp_opts);

    // stats-random
    common_options sr_opts;
    std::int64_t sr_m = 7;
    unsigned long sr_p = 3;
    std::string sr_samples = "1000000", sr_mode = "norm";
    std::uint64_t sr_seed = 0;
    std::string sr_isa = "auto";
    auto * sr = app.add_subcommand(
        "stats-random", "density of delta = 0 for random integers");
    sr->add_option("--m", sr_m, "squarefree m > 1")->capture_default_str();
    sr->add_option("--p", sr_p, "odd prime split in Q(sqrt m)")
        ->capture_default_str();
    sr->add_option("--samples", sr_samples, "accepted samples (1e6 accepted)")
        ->capture_default_str();
    sr->add_option("--mode", sr_mode, "norm or free")
        ->check(CLI::IsMember({"norm", "free"}))
        ->capture_default_str();
    sr->add_option("--seed", sr_seed, "random seed")->capture_default_str();
    sr->add_option("--isa", sr_isa, "auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    add_common(sr, sr_opts);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (CLI::ParseError const & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_bad_arguments;
    }

    try {
        if (*check) {
            auto v = greenberg::check_field(check_m, check_p, check_n0);
            auto text = render(
                "check", check_opts, [&] { return report::emit_check_csv(v); },
                [&](std::string const & g) {
                    return report::emit_check_json(v, g);
                },
                [&] { return report::emit_check_text(v); });
            write_text(text, check_opts.output, out);
        } else if (*scan) {
            std::vector<unsigned long> primes;
            std::uint64_t lo = 0, hi = 0;
            try {
                primes = parse_primes(scan_p);
                lo = parse_count(scan_min);
                hi = parse_count(scan_max);
            } catch (CLI::ValidationError const & e) {
                err << "iwasawa scan: " << e.what() << "\n";
                return exit_bad_arguments;
            }
            if (hi >= (std::uint64_t(1) << 62))
                throw precondition_error("--max-m is too large");
            std::vector<report::count_row> counts;
            std::vector<greenberg::verdict> rows;
            // an empty m range gives a header-only table
            for (unsigned long p : lo <= hi ? primes
                                            : std::vector<unsigned long>{}) {
                auto r = greenberg::scan_range(
                    p, static_cast<std::int64_t>(lo),
                    static_cast<std::int64_t>(hi), scan_n0, scan_opts.workers);
                counts.push_back({p, r.c1, r.c2});
                if (!scan_rows.empty())
                    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
            }
            auto text = render(
                "scan", scan_opts,
                [&] { return report::emit_counts_csv(counts); },
                [&](std::string const & g) {
                    return report::emit_counts_json(counts, g);
                },
                [&] { return report::emit_counts_text(counts); });
            write_text(text, scan_opts.output, out);
            if (!scan_rows.empty())
                write_text((scan_opts.no_header ? "" : header_line("scan")) +
                               report::emit_rows_csv(rows),
                           scan_rows, out);
        } else if (*sp) {
            std::uint64_t bound = 0;
            try {
                bound = parse_count(sp_bound);
            } catch (CLI::ValidationError const & e) {
                err << "iwasawa stats-primes: " << e.what() << "\n";
                return exit_bad_arguments;
            }
            auto t = stats::prime_fermat_scan(sp_m, sp_p, sp_n, bound, sp_rmax,
                                              sp_opts.workers,
                                              pick_isa(sp_isa));
            auto text = render(
                "stats-primes", sp_opts,
                [&] { return report::emit_tally_csv(t); },
                [&](std::string const & g) {
                    return report::emit_tally_json(t, g);
                },
                [&] { return report::emit_tally_text(t); });
            write_text(text, sp_opts.output, out);
        } else if (*sr) {
            std::uint64_t samples = 0;
            try {
                samples = parse_count(sr_samples);
            } catch (CLI::ValidationError const & e) {
                err << "iwasawa stats-random: " << e.what() << "\n";
                return exit_bad_arguments;
            }
            auto d = stats::random_elem_density(sr_m, sr_p, samples,
                                                report::parse_mode(sr_mode),
                                                sr_seed, pick_isa(sr_isa));
            auto text = render(
                "stats-random", sr_opts,
                [&] { return report::emit_density_csv(d); },
                [&](std::string const & g) {
                    return report::emit_density_json(d, g);
                },
                [&] { return report::emit_density_text(d); });
            write_text(text, sr_opts.output, out);
        }
    } catch (precondition_error const & e) {
        err << "iwasawa: " << e.what() << "\n";
        return exit_precondition;
    } catch (std::exception const & e) {
        err << "iwasawa: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}

} // namespace iwasawa::cli
