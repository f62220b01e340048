#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "iwasawa/cli.hpp"
#include "iwasawa/report.hpp"

using namespace iwasawa;

namespace {

struct result
{
    int code;
    std::string out;
    std::string err;
};

result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(std::string const & path)
{
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("parse_count")
{
    CHECK(cli::parse_count("10000") == 10000);
    CHECK(cli::parse_count("1e10") == 10000000000ULL);
    CHECK(cli::parse_count("2.5e3") == 2500);
    CHECK(cli::parse_count("1E13") == 10000000000000ULL);
    CHECK(cli::parse_count("0") == 0);
    CHECK_THROWS(cli::parse_count("2.55e1"));
    CHECK_THROWS(cli::parse_count("-1"));
    CHECK_THROWS(cli::parse_count("abc"));
    CHECK_THROWS(cli::parse_count("1e30"));
    CHECK_THROWS(cli::parse_count(""));
}

TEST_CASE("parse_primes")
{
    CHECK(cli::parse_primes("3") == std::vector<unsigned long>{3});
    CHECK(cli::parse_primes("3..13") ==
          std::vector<unsigned long>{3, 5, 7, 11, 13});
    CHECK(cli::parse_primes("5,7,43") == std::vector<unsigned long>{5, 7, 43});
    CHECK(cli::parse_primes("24..28").empty());
}

TEST_CASE("check command")
{
    auto r = run({"check", "--m", "30007", "--p", "3", "--no-header"});
    REQUIRE(r.code == 0);
    auto v = report::parse_check_csv(r.out);
    CHECK(v.h == 2);
    CHECK(v.z_pi_exp == 2);
    CHECK(v.z_eps_exp == 1);
    CHECK(v.n0 == 8);
    CHECK(r.out.find("1/9,1/3") == std::string::npos);  // z_eps before z_pi
    CHECK(r.out.find(",1/3,1/9,") != std::string::npos);

    auto e = run({"check", "--m", "4", "--p", "3"});
    CHECK(e.code == 3);
    CHECK(e.err.find("squarefree") != std::string::npos);

    auto t = run({"check", "--m", "103", "--p", "3", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("227528 + 22419*sqrt(103)") != std::string::npos);

    auto j = run({"check", "--m", "103", "--p", "3", "--format", "json",
                  "--no-header"});
    CHECK(j.out.find("\"schema\": 1") != std::string::npos);
    CHECK(j.out.find("generated") == std::string::npos);
}

TEST_CASE("argument errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"check", "--m", "7"}).code == 2);
    CHECK(run({"check", "--m", "x", "--p", "3"}).code == 2);
    CHECK(run({"scan", "--p", "3", "--format", "xml"}).code == 2);
    CHECK(run({"stats-primes", "--m", "103", "--p", "3", "--n", "12",
               "--bound", "1e10.5"})
              .code == 2);
    CHECK(run({"check", "--help"}).code == 0);
}

TEST_CASE("scan command")
{
    auto r = run({"scan", "--p", "3..7", "--max-m", "1000", "--no-header"});
    REQUIRE(r.code == 0);
    auto rows = report::parse_counts_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].p == 3);

    auto empty = run({"scan", "--p", "3", "--min-m", "20", "--max-m", "10",
                      "--no-header"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "p,C1,C2,C1-C2\n");

    auto bad = run({"scan", "--p", "9", "--max-m", "100"});
    CHECK(bad.code == 3);

    std::string path = "cli_rows_test.csv";
    auto w = run({"scan", "--p", "5", "--max-m", "300", "--rows", path,
                  "--no-header"});
    CHECK(w.code == 0);
    auto parsed = report::parse_rows_csv(slurp(path));
    CHECK(static_cast<long>(parsed.size()) ==
          report::parse_counts_csv(w.out)[0].c1);
    std::remove(path.c_str());
}

TEST_CASE("stats commands")
{
    auto r = run({"stats-primes", "--m", "103", "--p", "3", "--n", "6",
                  "--bound", "1e7", "--no-header"});
    REQUIRE(r.code == 0);
    auto t = report::parse_tally_csv(r.out);
    CHECK(t.params.bound == 10000000);
    CHECK(t.total > 0);

    auto z = run({"stats-random", "--samples", "0", "--no-header"});
    CHECK(z.code == 0);
    CHECK_FALSE(report::parse_density_csv(z.out).density.has_value());

    auto d = run({"stats-random", "--samples", "1e4", "--mode", "free",
                  "--seed", "3", "--no-header", "--isa", "scalar"});
    CHECK(d.code == 0);
    CHECK(report::parse_density_csv(d.out).accepted == 10000);
}

TEST_CASE("identical flags give identical output")
{
    std::vector<std::vector<std::string>> cmds = {
        {"check", "--m", "30043", "--p", "3"},
        {"scan", "--p", "3,5", "--max-m", "800"},
        {"stats-primes", "--m", "103", "--p", "3", "--n", "5", "--bound",
         "1e7"},
        {"stats-random", "--samples", "20000", "--seed", "9"},
    };
    for (auto const & base : cmds) {
        for (std::string fmt : {"csv", "json", "text"}) {
            auto args = base;
            args.insert(args.end(), {"--format", fmt, "--no-header"});
            auto a = run(args), b = run(args);
            auto workers = args;
            workers.insert(workers.end(), {"--workers", "3"});
            auto c = run(workers);
            CHECK(a.code == 0);
            CHECK(a.out == b.out);
            CHECK(a.out == c.out);
        }
        // with the header, only the first line may differ
        auto a = run(base), b = run(base);
        CHECK(a.out.substr(a.out.find('\n')) == b.out.substr(b.out.find('\n')));
        CHECK(a.out.rfind("# iwasawa ", 0) == 0);
    }
}

TEST_CASE("reports round-trip through CSV")
{
    auto v = greenberg::check_field(2659, 3, 8);
    CHECK(report::parse_check_csv(report::emit_check_csv(v)) == v);

    auto scan = greenberg::scan_range(7, 2, 500, 1, 1);
    auto rows = report::parse_rows_csv(report::emit_rows_csv(scan.rows));
    REQUIRE(rows.size() == scan.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto expect = scan.rows[i];
        expect.n0 = 0;
        expect.eps = quad_elem();
        expect.pi1 = quad_elem();
        CHECK(rows[i] == expect);
    }

    std::vector<report::count_row> counts{{3, 2279, 2042}, {43, 2971, 2971}};
    CHECK(report::parse_counts_csv(report::emit_counts_csv(counts)) == counts);

    auto t = stats::prime_fermat_scan(103, 3, 4, 3000000, 4, 1);
    CHECK(report::parse_tally_csv(report::emit_tally_csv(t)) == t);

    for (auto mode : {stats::density_mode::norm, stats::density_mode::free}) {
        auto d = stats::random_elem_density(7, 3, 5000, mode, 4);
        CHECK(report::parse_density_csv(report::emit_density_csv(d)) == d);
    }
    auto d0 = stats::random_elem_density(7, 3, 0, stats::density_mode::norm, 0);
    CHECK(report::parse_density_csv(report::emit_density_csv(d0)) == d0);

    CHECK_THROWS(report::parse_counts_csv("p,C1,C2\n3,1,1\n"));
    CHECK_THROWS(report::parse_counts_csv("p,C1,C2,C1-C2\n3,5,1,3\n"));
    CHECK_THROWS(report::parse_rows_csv(""));
}
