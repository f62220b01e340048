#include "iwasawa/qforms.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <utility>

#include "iwasawa/arith.hpp"
#include "iwasawa/pell.hpp"

namespace iwasawa::qforms {

namespace {

mpz_class isqrt(mpz_class const & x)
{
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

mpz_class exact_div(mpz_class const & n, mpz_class const & d)
{
    mpz_class q;
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
        throw invariant_error("inexact division " + n.get_str() + " / " +
                              d.get_str());
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

// Equivalent form with a > 0; reduced forms have ac < 0 so at most one rho.
indef_form positive_leading(indef_form const & f)
{
    indef_form g = reduce(f.without_transform());
    if (sgn(g.a()) < 0)
        g = g.rho();
    return g;
}

} // namespace

matrix2 operator*(matrix2 const & x, matrix2 const & y)
{
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

indef_form::indef_form(mpz_class a, mpz_class b, mpz_class c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
{
    disc_ = b_ * b_ - 4 * a_ * c_;
    if (sgn(disc_) <= 0)
        throw precondition_error("form (" + a_.get_str() + ", " +
                                 b_.get_str() + ", " + c_.get_str() +
                                 ") is not indefinite");
    if (mpz_perfect_square_p(disc_.get_mpz_t()))
        throw precondition_error("discriminant " + disc_.get_str() +
                                 " is a square");
    root_ = isqrt(disc_);
}

indef_form::indef_form(mpz_class a, mpz_class b, mpz_class c, mpz_class disc,
                       mpz_class root, std::optional<matrix2> t)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)),
      disc_(std::move(disc)), root_(std::move(root)), transform_(std::move(t))
{
}

indef_form indef_form::with_transform() const
{
    return indef_form(a_, b_, c_, disc_, root_, matrix2{});
}

indef_form indef_form::without_transform() const
{
    return indef_form(a_, b_, c_, disc_, root_, std::nullopt);
}

bool indef_form::is_reduced() const
{
    // sqrt D is irrational, so strict inequalities become integer ones
    if (sgn(b_) <= 0 || b_ > root_)
        return false;
    mpz_class twice_a = 2 * abs(a_);
    return twice_a + b_ >= root_ + 1 && twice_a - b_ <= root_;
}

mpz_class indef_form::operator()(mpz_class const & x,
                                 mpz_class const & y) const
{
    return a_ * x * x + b_ * x * y + c_ * y * y;
}

indef_form indef_form::rho() const
{
    mpz_class abs_c = abs(c_);
    mpz_class two_c = 2 * abs_c;
    mpz_class r = arith::mod(-b_, two_c);
    mpz_class b_new;
    if (abs_c > root_) {
        // -|c| < b' <= |c|
        b_new = r <= abs_c ? r : r - two_c;
    } else {
        // sqrt D - 2|c| < b' < sqrt D
        b_new = root_ - arith::mod(root_ - r, two_c);
    }
    mpz_class a_new = exact_div(b_new * b_new - disc_, 4 * c_);

    std::optional<matrix2> t;
    if (transform_) {
        mpz_class step = exact_div(b_new + b_, 2 * c_);
        t = *transform_ * matrix2{0, -1, 1, step};
    }
    return indef_form(c_, std::move(b_new), std::move(a_new), disc_, root_,
                      std::move(t));
}

indef_form indef_form::negated() const
{
    return indef_form(-a_, b_, -c_, disc_, root_, std::nullopt);
}

std::ostream & operator<<(std::ostream & o, indef_form const & f)
{
    return o << "(" << f.a() << ", " << f.b() << ", " << f.c() << ")";
}

mpz_class field_discriminant(std::int64_t m)
{
    if (m <= 1 || !arith::is_squarefree(m))
        throw precondition_error("m = " + std::to_string(m) +
                                 " is not a squarefree integer > 1");
    mpz_class mz(static_cast<long>(m));
    return m % 4 == 1 ? mz : 4 * mz;
}

bool is_fundamental(mpz_class const & D)
{
    if (sgn(D) <= 0 || !mpz_fits_slong_p(D.get_mpz_t()))
        return false;
    long d = D.get_si();
    if (d % 4 == 1)
        return d > 1 && arith::is_squarefree(d);
    if (d % 4 != 0)
        return false;
    long m = d / 4;
    return (m % 4 == 2 || m % 4 == 3) && arith::is_squarefree(m);
}

std::int64_t radicand(mpz_class const & D)
{
    if (!is_fundamental(D))
        throw precondition_error("discriminant " + D.get_str() +
                                 " is not fundamental");
    long d = D.get_si();
    return d % 4 == 1 ? d : d / 4;
}

indef_form reduce(indef_form const & f)
{
    indef_form g = f;
    while (!g.is_reduced())
        g = g.rho();
    return g;
}

std::vector<indef_form> cycle(indef_form const & f)
{
    indef_form start = reduce(f);
    std::vector<indef_form> out{start};
    indef_form g = start.rho();
    while (!g.same_coefficients(start)) {
        out.push_back(g);
        g = g.rho();
    }
    return out;
}

indef_form principal_form(mpz_class const & D)
{
    mpz_class s = isqrt(D);
    mpz_class b = s;
    if (mpz_odd_p(b.get_mpz_t()) != mpz_odd_p(D.get_mpz_t()))
        b -= 1;
    return indef_form(1, b, exact_div(b * b - D, 4));
}

indef_form compose(indef_form const & f, indef_form const & g)
{
    if (f.discriminant() != g.discriminant())
        throw precondition_error("compose: discriminants " +
                                 f.discriminant().get_str() + " and " +
                                 g.discriminant().get_str() + " differ");
    mpz_class const & D = f.discriminant();
    indef_form f1 = positive_leading(f);
    indef_form f2 = positive_leading(g);
    if (f1.a() > f2.a())
        std::swap(f1, f2);

    mpz_class a1 = f1.a(), a2 = f2.a();
    mpz_class b2 = f2.b(), c2 = f2.c();
    mpz_class s = exact_div(f1.b() + f2.b(), 2);
    mpz_class n = b2 - s;

    mpz_class y1, d;
    if (mpz_divisible_p(a2.get_mpz_t(), a1.get_mpz_t())) {
        y1 = 0;
        d = a1;
    } else {
        mpz_class v;
        mpz_gcdext(d.get_mpz_t(), y1.get_mpz_t(), v.get_mpz_t(),
                   a2.get_mpz_t(), a1.get_mpz_t());
    }

    mpz_class x2, y2, d1;
    if (mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        mpz_class v;
        mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), v.get_mpz_t(),
                   s.get_mpz_t(), d.get_mpz_t());
        y2 = -v;
    }

    mpz_class v1 = exact_div(a1, d1);
    mpz_class v2 = exact_div(a2, d1);
    mpz_class r = arith::mod(y1 * y2 * n - x2 * c2, v1);
    mpz_class b3 = b2 + 2 * v2 * r;
    mpz_class a3 = v1 * v2;
    mpz_class c3 = exact_div(b3 * b3 - D, 4 * a3);
    indef_form h(a3, b3, c3);
    if (h.discriminant() != D)
        throw invariant_error("compose changed the discriminant");
    return reduce(h);
}

indef_form inverse(indef_form const & f)
{
    return indef_form(f.a(), -f.b(), f.c());
}

bool properly_equivalent(indef_form const & f, indef_form const & g)
{
    if (f.discriminant() != g.discriminant())
        return false;
    indef_form target = reduce(f.without_transform());
    for (indef_form const & h : cycle(g.without_transform())) {
        if (h.same_coefficients(target))
            return true;
    }
    return false;
}

bool is_principal(indef_form const & f)
{
    // P and -P are the only reduced forms with |a| = 1
    for (indef_form const & h : cycle(f.without_transform())) {
        if (abs(h.a()) == 1)
            return true;
    }
    return false;
}

std::vector<indef_form> reduced_forms(mpz_class const & D)
{
    if (!is_fundamental(D))
        throw precondition_error("discriminant " + D.get_str() +
                                 " is not fundamental");
    if (D >= mpz_class("4503599627370496"))
        throw precondition_error("discriminant too large for enumeration");
    std::int64_t const d = D.get_si();
    std::int64_t const s = isqrt(D).get_si();

    std::vector<indef_form> out;
    for (std::int64_t b = (d % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        std::int64_t const n = (d - b * b) / 4; // -ac
        // sqrt D - b < 2|a| < sqrt D + b
        std::int64_t lo = (s - b) / 2 + 1;
        std::int64_t hi = (s + b) / 2;
        for (std::int64_t a = lo; a <= hi; ++a) {
            if (n % a != 0)
                continue;
            std::int64_t c = -n / a;
            out.emplace_back(mpz_class(a), mpz_class(b), mpz_class(c));
            out.emplace_back(mpz_class(-a), mpz_class(b), mpz_class(-c));
        }
    }
    return out;
}

long narrow_class_number(mpz_class const & D)
{
    std::vector<indef_form> forms = reduced_forms(D);
    std::map<std::pair<long, long>, bool> seen;
    for (auto const & f : forms)
        seen[{f.a().get_si(), f.b().get_si()}] = false;

    long cycles = 0;
    for (auto const & f : forms) {
        auto key = std::make_pair(f.a().get_si(), f.b().get_si());
        if (seen.at(key))
            continue;
        ++cycles;
        indef_form g = f;
        do {
            auto it = seen.find({g.a().get_si(), g.b().get_si()});
            if (it == seen.end())
                throw invariant_error("rho left the set of reduced forms");
            it->second = true;
            g = g.rho();
        } while (!g.same_coefficients(f));
    }
    return cycles;
}

long class_number(mpz_class const & D)
{
    long narrow = narrow_class_number(D);
    indef_form p = principal_form(D);
    return properly_equivalent(p, p.negated()) ? narrow : narrow / 2;
}

indef_form prime_power_form(mpz_class const & D, unsigned long q,
                            unsigned long k)
{
    std::int64_t m = radicand(D);
    if (q == 2)
        throw precondition_error("prime_form: q must be odd");
    if (arith::kronecker(D, mpz_class(q)) != 1)
        throw precondition_error("q = " + std::to_string(q) +
                                 " is not split in Q(sqrt " +
                                 std::to_string(m) + ")");
    mpz_class qk = arith::pow(q, k);
    mpz_class root = hensel_sqrt(m, q, k);
    // (b + sqrt D)/2 lies in the ideal, so sqrt m = -b/2 (D = 4m) or -b (D = m)
    mpz_class b;
    if (D == mpz_class(static_cast<long>(m))) {
        b = arith::mod(-root, qk);
        if (mpz_even_p(b.get_mpz_t()))
            b += qk;
    } else {
        b = 2 * arith::mod(-root, qk);
    }
    return indef_form(qk, b, exact_div(b * b - D, 4 * qk));
}

long class_order(indef_form const & f, long h)
{
    if (h <= 0)
        throw precondition_error("class_order: h must be positive");
    indef_form base = reduce(f.without_transform());
    indef_form power = base;
    for (long k = 1; k <= h; ++k) {
        if (is_principal(power))
            return k;
        power = compose(power, base);
    }
    throw invariant_error("class order does not divide h = " +
                          std::to_string(h));
}

std::optional<quad_elem> ideal_generator(indef_form const & f)
{
    if (sgn(f.a()) <= 0)
        throw precondition_error("ideal_generator: leading coefficient must "
                                 "be positive");
    std::int64_t m = radicand(f.discriminant());

    indef_form g = reduce(f.with_transform());
    indef_form const start = g;
    while (abs(g.a()) != 1) {
        g = g.rho();
        if (g.same_coefficients(start))
            return std::nullopt;
    }
    // f(x0, y0) = g(1, 0) = +-1
    matrix2 const & t = *g.transform();
    mpz_class const & x0 = t.m00;
    mpz_class const & y0 = t.m10;

    quad_elem alpha;
    if (f.discriminant() == mpz_class(static_cast<long>(m))) {
        alpha = make_elem(2 * f.a() * x0 + f.b() * y0, y0, 2, m);
    } else {
        alpha = make_elem(f.a() * x0 + exact_div(f.b(), 2) * y0, y0, 1, m);
    }
    if (abs(alpha.norm()) != f.a())
        throw invariant_error("ideal_generator: norm " +
                              alpha.norm().get_str() + " != +-" +
                              f.a().get_str());
    return alpha;
}

quad_elem normalize_generator(quad_elem const & alpha, quad_elem const & eps)
{
    long double log_eps = eps.log_abs();
    long double ratio = alpha.log_abs() - alpha.log_abs_conjugate();
    // multiplying by eps^-j moves the log-ratio by -2j log eps
    auto j = static_cast<long>(
        std::floor((ratio + log_eps) / (2 * log_eps)));

    quad_elem result = alpha;
    if (j != 0) {
        quad_elem unit = j > 0 ? eps.conjugate() : eps;
        if (j > 0 && eps.norm() < 0)
            unit = -unit; // eps^-1 = norm(eps) * conj(eps)
        result = result * pow(unit, static_cast<unsigned long>(j > 0 ? j : -j));
    }
    if (result.sign() < 0)
        result = -result;
    return result;
}

std::optional<quad_elem> represent(mpz_class const & D, unsigned long q,
                                   unsigned long k, quad_elem const & eps)
{
    auto alpha = ideal_generator(prime_power_form(D, q, k));
    if (!alpha)
        return std::nullopt;
    return normalize_generator(*alpha, eps);
}

std::optional<quad_elem> represent(mpz_class const & D,
                                   mpz_class const & target,
                                   quad_elem const & eps)
{
    mpz_class n = abs(target);
    if (n < 2)
        throw precondition_error("represent: |target| must be > 1");
    // n = q^k with q prime
    for (unsigned long k = 1;; ++k) {
        mpz_class q;
        if (mpz_root(q.get_mpz_t(), n.get_mpz_t(), k) != 0 &&
            arith::is_prime(q)) {
            if (!mpz_fits_ulong_p(q.get_mpz_t()))
                throw precondition_error("represent: prime too large");
            return represent(D, q.get_ui(), k, eps);
        }
        if (mpz_sizeinbase(n.get_mpz_t(), 2) < k)
            throw precondition_error("represent: target " + target.get_str() +
                                     " is not a prime power");
    }
}

} // namespace iwasawa::qforms
