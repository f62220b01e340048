#include "iwasawa/report.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "iwasawa/arith.hpp"

namespace iwasawa::report {

namespace {

using json = nlohmann::ordered_json;

std::string fixed10(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", x);
    return buf;
}

std::vector<std::string> split(std::string const & line, char sep = ',')
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

std::vector<std::string> lines_of(std::string const & text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty() && line[0] != '#')
            out.push_back(line);
    }
    return out;
}

[[noreturn]] void bad(std::string const & what)
{
    throw std::runtime_error("malformed report: " + what);
}

long long to_ll(std::string const & s)
{
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (std::exception const &) {
        bad("integer expected, got '" + s + "'");
    }
    if (pos != s.size())
        bad("integer expected, got '" + s + "'");
    return v;
}

unsigned long long to_ull(std::string const & s)
{
    if (s.empty() || s[0] == '-')
        bad("unsigned integer expected, got '" + s + "'");
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (std::exception const &) {
        bad("unsigned integer expected, got '" + s + "'");
    }
    if (pos != s.size())
        bad("unsigned integer expected, got '" + s + "'");
    return v;
}

bool to_bool(std::string const & s)
{
    if (s == "1")
        return true;
    if (s == "0")
        return false;
    bad("boolean expected, got '" + s + "'");
}

mpz_class to_mpz(std::string const & s)
{
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0)
        bad("integer expected, got '" + s + "'");
    return z;
}

int z_exponent(std::string const & s, unsigned long p)
{
    if (s == "1")
        return 0;
    if (s.rfind("1/", 0) != 0)
        bad("z value expected, got '" + s + "'");
    mpz_class d = to_mpz(s.substr(2));
    int e = arith::valuation(d, p);
    if (e == 0 || arith::pow(p, static_cast<unsigned long>(e)) != d)
        bad("z value is not an inverse power of p: '" + s + "'");
    return e;
}

void expect_header(std::string const & line, std::string const & want)
{
    if (line != want)
        bad("header '" + line + "', expected '" + want + "'");
}

constexpr char const * rows_header =
    "m,p,h,h0,v_p_h,delta_eps,delta_pi,z_eps,z_pi,class_ok,normic_ok,"
    "resolved,torsion_v";
constexpr char const * check_extra =
    ",n0,eps_a,eps_b,eps_den,pi1_a,pi1_b,pi1_den";

std::string row_fields(greenberg::verdict const & v)
{
    std::ostringstream o;
    o << v.m << ',' << v.p << ',' << v.h << ',' << v.h0 << ',' << v.v_p_h
      << ',' << v.delta_eps << ',' << v.delta_pi << ','
      << arith::inverse_prime_power_string(v.p, v.z_eps_exp) << ','
      << arith::inverse_prime_power_string(v.p, v.z_pi_exp) << ','
      << int(v.class_ok) << ',' << int(v.normic_ok) << ',' << int(v.resolved)
      << ',' << v.torsion_v;
    return o.str();
}

greenberg::verdict parse_row_fields(std::vector<std::string> const & f)
{
    greenberg::verdict v;
    v.m = to_ll(f[0]);
    v.p = to_ull(f[1]);
    v.h = to_ll(f[2]);
    v.h0 = to_ll(f[3]);
    v.v_p_h = static_cast<int>(to_ll(f[4]));
    v.delta_eps = static_cast<int>(to_ll(f[5]));
    v.delta_pi = static_cast<int>(to_ll(f[6]));
    v.z_eps_exp = z_exponent(f[7], v.p);
    v.z_pi_exp = z_exponent(f[8], v.p);
    v.class_ok = to_bool(f[9]);
    v.normic_ok = to_bool(f[10]);
    v.resolved = to_bool(f[11]);
    v.torsion_v = static_cast<int>(to_ll(f[12]));
    return v;
}

std::string elem_fields(quad_elem const & x)
{
    return x.a().get_str() + ',' + x.b().get_str() + ',' +
           std::to_string(x.den());
}

quad_elem parse_elem(std::string const & a, std::string const & b,
                     std::string const & den, std::int64_t m)
{
    try {
        return make_elem(to_mpz(a), to_mpz(b), static_cast<int>(to_ll(den)),
                         m);
    } catch (precondition_error const & e) {
        bad(e.what());
    }
}

std::string tally_header(unsigned rmax)
{
    std::string h = "m,p,n,bound,total";
    for (unsigned r = 0; r <= rmax; ++r)
        h += ",C" + std::to_string(r);
    for (unsigned r = 0; r <= rmax; ++r)
        h += ",prop" + std::to_string(r);
    for (unsigned r = 0; r <= rmax; ++r)
        h += ",exp" + std::to_string(r);
    return h + ",skipped";
}

constexpr char const * density_header =
    "m,p,mode,seed,samples,trials,accepted,hits,density,expected";

json verdict_json(greenberg::verdict const & v)
{
    json j;
    j["m"] = v.m;
    j["p"] = v.p;
    j["n0"] = v.n0;
    j["h"] = v.h;
    j["h0"] = v.h0;
    j["v_p_h"] = v.v_p_h;
    j["delta_eps"] = v.delta_eps;
    j["delta_pi"] = v.delta_pi;
    j["z_eps"] = arith::inverse_prime_power_string(v.p, v.z_eps_exp);
    j["z_pi"] = arith::inverse_prime_power_string(v.p, v.z_pi_exp);
    j["class_ok"] = v.class_ok;
    j["normic_ok"] = v.normic_ok;
    j["resolved"] = v.resolved;
    j["torsion_v"] = v.torsion_v;
    auto elem = [](quad_elem const & x) {
        return json{{"a", x.a().get_str()},
                    {"b", x.b().get_str()},
                    {"den", x.den()},
                    {"text", x.to_string()}};
    };
    j["eps"] = elem(v.eps);
    j["pi1"] = elem(v.pi1);
    return j;
}

std::string document(char const * kind, json data,
                     std::string const & generated)
{
    json doc;
    doc["schema"] = 1;
    if (!generated.empty())
        doc["generated"] = generated;
    doc["kind"] = kind;
    doc["data"] = std::move(data);
    return doc.dump(2) + "\n";
}

} // namespace

char const * mode_name(stats::density_mode mode)
{
    return mode == stats::density_mode::norm ? "norm" : "free";
}

stats::density_mode parse_mode(std::string const & s)
{
    if (s == "norm")
        return stats::density_mode::norm;
    if (s == "free")
        return stats::density_mode::free;
    bad("mode must be norm or free, got '" + s + "'");
}

std::string emit_rows_csv(std::vector<greenberg::verdict> const & rows,
                          bool header)
{
    std::string out;
    if (header)
        out += std::string(rows_header) + "\n";
    for (auto const & v : rows)
        out += row_fields(v) + "\n";
    return out;
}

std::vector<greenberg::verdict> parse_rows_csv(std::string const & text)
{
    auto lines = lines_of(text);
    if (lines.empty())
        bad("empty input");
    expect_header(lines[0], rows_header);
    std::vector<greenberg::verdict> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split(lines[i]);
        if (f.size() != 13)
            bad("row with " + std::to_string(f.size()) + " fields");
        out.push_back(parse_row_fields(f));
    }
    return out;
}

std::string emit_check_csv(greenberg::verdict const & v)
{
    return std::string(rows_header) + check_extra + "\n" + row_fields(v) +
           ',' + std::to_string(v.n0) + ',' + elem_fields(v.eps) + ',' +
           elem_fields(v.pi1) + "\n";
}

greenberg::verdict parse_check_csv(std::string const & text)
{
    auto lines = lines_of(text);
    if (lines.size() != 2)
        bad("check report must have exactly one record");
    expect_header(lines[0], std::string(rows_header) + check_extra);
    auto f = split(lines[1]);
    if (f.size() != 20)
        bad("check record with " + std::to_string(f.size()) + " fields");
    auto v = parse_row_fields(f);
    v.n0 = to_ull(f[13]);
    v.eps = parse_elem(f[14], f[15], f[16], v.m);
    v.pi1 = parse_elem(f[17], f[18], f[19], v.m);
    return v;
}

std::string emit_counts_csv(std::vector<count_row> const & rows)
{
    std::string out = "p,C1,C2,C1-C2\n";
    for (auto const & r : rows)
        out += std::to_string(r.p) + ',' + std::to_string(r.c1) + ',' +
               std::to_string(r.c2) + ',' + std::to_string(r.c1 - r.c2) + "\n";
    return out;
}

std::vector<count_row> parse_counts_csv(std::string const & text)
{
    auto lines = lines_of(text);
    if (lines.empty())
        bad("empty input");
    expect_header(lines[0], "p,C1,C2,C1-C2");
    std::vector<count_row> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split(lines[i]);
        if (f.size() != 4)
            bad("count row with " + std::to_string(f.size()) + " fields");
        count_row r{to_ull(f[0]), to_ll(f[1]), to_ll(f[2])};
        if (to_ll(f[3]) != r.c1 - r.c2)
            bad("C1-C2 column inconsistent");
        out.push_back(r);
    }
    return out;
}

std::string emit_tally_csv(stats::stat_tally const & t)
{
    auto const & pr = t.params;
    std::string out = tally_header(pr.rmax) + "\n";
    out += std::to_string(pr.m) + ',' + std::to_string(pr.p) + ',' +
           std::to_string(pr.n) + ',' + std::to_string(pr.bound) + ',' +
           std::to_string(t.total);
    for (auto c : t.counts)
        out += ',' + std::to_string(c);
    for (double x : t.proportions())
        out += ',' + fixed10(x);
    for (double x : t.expected)
        out += ',' + fixed10(x);
    out += ',' + std::to_string(t.skipped) + "\n";
    return out;
}

stats::stat_tally parse_tally_csv(std::string const & text)
{
    auto lines = lines_of(text);
    if (lines.size() != 2)
        bad("tally report must have exactly one record");
    auto h = split(lines[0]);
    // 5 leading, 3 (rmax + 1) bucket columns, skipped
    if (h.size() < 9 || (h.size() - 6) % 3 != 0)
        bad("tally header");
    unsigned rmax = static_cast<unsigned>((h.size() - 6) / 3 - 1);
    expect_header(lines[0], tally_header(rmax));
    auto f = split(lines[1]);
    if (f.size() != h.size())
        bad("tally record width");

    stats::stat_tally t;
    t.params.m = to_ll(f[0]);
    t.params.p = to_ull(f[1]);
    t.params.n = to_ull(f[2]);
    t.params.bound = to_ull(f[3]);
    t.params.rmax = rmax;
    t.total = to_ull(f[4]);
    for (unsigned r = 0; r <= rmax; ++r)
        t.counts.push_back(to_ull(f[5 + r]));
    t.skipped = to_ull(f.back());
    t.expected = stats::expected_proportions(t.params.p, 2, rmax);
    auto props = t.proportions();
    for (unsigned r = 0; r <= rmax; ++r) {
        if (f[6 + rmax + r] != fixed10(props[r]))
            bad("prop" + std::to_string(r) + " inconsistent with counts");
        if (f[7 + 2 * rmax + r] != fixed10(t.expected[r]))
            bad("exp" + std::to_string(r) + " inconsistent with p");
    }
    return t;
}

std::string emit_density_csv(stats::density_result const & d)
{
    std::ostringstream o;
    o << density_header << "\n"
      << d.m << ',' << d.p << ',' << mode_name(d.mode) << ',' << d.seed << ','
      << d.samples << ',' << d.trials << ',' << d.accepted << ',' << d.hits
      << ',' << (d.density ? fixed10(*d.density) : std::string()) << ','
      << fixed10(d.expected) << "\n";
    return o.str();
}

stats::density_result parse_density_csv(std::string const & text)
{
    auto lines = lines_of(text);
    if (lines.size() != 2)
        bad("density report must have exactly one record");
    expect_header(lines[0], density_header);
    auto f = split(lines[1]);
    if (f.size() != 10)
        bad("density record width");
    stats::density_result d;
    d.m = to_ll(f[0]);
    d.p = to_ull(f[1]);
    d.mode = parse_mode(f[2]);
    d.seed = to_ull(f[3]);
    d.samples = to_ull(f[4]);
    d.trials = to_ull(f[5]);
    d.accepted = to_ull(f[6]);
    d.hits = to_ull(f[7]);
    if (d.accepted > 0)
        d.density = static_cast<double>(d.hits) /
                    static_cast<double>(d.accepted);
    if (f[8] != (d.density ? fixed10(*d.density) : std::string()))
        bad("density inconsistent with hits / accepted");
    double const p = static_cast<double>(d.p);
    d.expected = d.mode == stats::density_mode::norm ? (p - 1) / p
                                                     : (p * p - 1) / (p * p);
    if (f[9] != fixed10(d.expected))
        bad("expected density inconsistent with p and mode");
    return d;
}

std::string emit_check_json(greenberg::verdict const & v,
                            std::string const & generated)
{
    return document("check", verdict_json(v), generated);
}

std::string emit_counts_json(std::vector<count_row> const & rows,
                             std::string const & generated)
{
    json arr = json::array();
    for (auto const & r : rows)
        arr.push_back({{"p", r.p}, {"C1", r.c1}, {"C2", r.c2},
                       {"C1-C2", r.c1 - r.c2}});
    return document("scan", std::move(arr), generated);
}

std::string emit_tally_json(stats::stat_tally const & t,
                            std::string const & generated)
{
    json j;
    j["m"] = t.params.m;
    j["p"] = t.params.p;
    j["n"] = t.params.n;
    j["bound"] = t.params.bound;
    j["rmax"] = t.params.rmax;
    j["total"] = t.total;
    j["skipped"] = t.skipped;
    j["counts"] = t.counts;
    j["proportions"] = t.proportions();
    j["expected"] = t.expected;
    return document("stats-primes", std::move(j), generated);
}

std::string emit_density_json(stats::density_result const & d,
                              std::string const & generated)
{
    json j;
    j["m"] = d.m;
    j["p"] = d.p;
    j["mode"] = mode_name(d.mode);
    j["seed"] = d.seed;
    j["samples"] = d.samples;
    j["trials"] = d.trials;
    j["accepted"] = d.accepted;
    j["hits"] = d.hits;
    j["density"] = d.density ? json(*d.density) : json(nullptr);
    j["expected"] = d.expected;
    return document("stats-random", std::move(j), generated);
}

std::string emit_check_text(greenberg::verdict const & v)
{
    std::ostringstream o;
    o << "m = " << v.m << "  p = " << v.p << "  n0 = " << v.n0 << "\n"
      << "h = " << v.h << "  h0 = " << v.h0 << "  v_p(h) = " << v.v_p_h
      << "\n"
      << "eps = " << v.eps << "\n"
      << "pi1 = " << v.pi1 << "  (norm " << v.pi1.norm() << ")\n"
      << "z_pi = " << arith::inverse_prime_power_string(v.p, v.z_pi_exp)
      << "  z_eps = " << arith::inverse_prime_power_string(v.p, v.z_eps_exp)
      << "  delta_pi = " << v.delta_pi << "  delta_eps = " << v.delta_eps
      << "\n"
      << "class test: " << (v.class_ok ? "ok" : "PROBLEME-CLASSES") << "\n"
      << "normic test: " << (v.normic_ok ? "ok" : "PROBLEME-NORMIQUE") << "\n"
      << "v_p(#T) = " << v.torsion_v << "\n"
      << "verdict: "
      << (v.resolved ? "resolved (lambda = mu = 0)" : "unresolved") << "\n";
    return o.str();
}

std::string emit_counts_text(std::vector<count_row> const & rows)
{
    std::ostringstream o;
    o << std::setw(8) << "p" << std::setw(10) << "C1" << std::setw(10)
      << "C2" << std::setw(10) << "C1-C2" << "\n";
    for (auto const & r : rows)
        o << std::setw(8) << r.p << std::setw(10) << r.c1 << std::setw(10)
          << r.c2 << std::setw(10) << r.c1 - r.c2 << "\n";
    return o.str();
}

std::string emit_tally_text(stats::stat_tally const & t)
{
    std::ostringstream o;
    auto const & pr = t.params;
    o << "m = " << pr.m << "  p = " << pr.p << "  n = " << pr.n
      << "  bound = " << pr.bound << "\n"
      << "N_L = " << t.total;
    if (t.skipped)
        o << "  (skipped, non-principal: " << t.skipped << ")";
    o << "\n" << std::setw(8) << "r" << std::setw(12) << "count"
      << std::setw(16) << "proportion" << std::setw(16) << "expected"
      << "\n";
    auto props = t.proportions();
    for (unsigned r = 0; r <= pr.rmax; ++r) {
        std::string label =
            (r == pr.rmax ? ">=" : "") + std::to_string(r);
        o << std::setw(8) << label << std::setw(12) << t.counts[r]
          << std::setw(16) << fixed10(props[r]) << std::setw(16)
          << fixed10(t.expected[r]) << "\n";
    }
    return o.str();
}

std::string emit_density_text(stats::density_result const & d)
{
    std::ostringstream o;
    o << "m = " << d.m << "  p = " << d.p << "  mode = " << mode_name(d.mode)
      << "  seed = " << d.seed << "\n"
      << "trials = " << d.trials << "  accepted = " << d.accepted
      << "  hits = " << d.hits << "\n"
      << "density = " << (d.density ? fixed10(*d.density) : "absent")
      << "  expected = " << fixed10(d.expected) << "\n";
    return o.str();
}

} // namespace iwasawa::report
