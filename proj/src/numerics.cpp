#include "schwarzf2/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace schwarzf2 {

void Tolerance::validate() const
{
    if (!(abs_eps > 0.0) || !(rel_eps > 0.0) || !(theta_trunc_eps > 0.0))
        throw DomainError("tolerances must be strictly positive");
    if (quad_levels < 1 || quad_levels > 16)
        throw DomainError("quad_levels must lie in [1, 16], got " + std::to_string(quad_levels));
}

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw DomainError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0)
        g = 1;
    num = n / g;
    den = d / g;
}

Rational Rational::operator+(const Rational& o) const
{
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const
{
    return Rational(num * o.den - o.num * den, den * o.den);
}

cplx UnitPhase::value() const
{
    std::int64_t r = q.num % q.den;
    if (r < 0)
        r += q.den;
    // Exact values on the eighth roots of unity, which carry every branch
    // factor used by the period computations.
    if ((8 * r) % q.den == 0) {
        static const double h = std::sqrt(0.5);
        static const std::array<cplx, 8> table = {
            cplx(1, 0), cplx(h, h), cplx(0, 1), cplx(-h, h),
            cplx(-1, 0), cplx(-h, -h), cplx(0, -1), cplx(h, -h)};
        return table[static_cast<std::size_t>((8 * r) / q.den)];
    }
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(q.den));
}

cplx e_phase(std::int64_t num, std::int64_t den)
{
    return UnitPhase(Rational(num, den)).value();
}

namespace {

// Half-width in t of the tanh-sinh window for one endpoint. Past it the
// neglected tail of a (t-a)^e singularity is far below the tolerance.
double window_half_width(double exponent, const Tolerance& tol)
{
    const double eps = std::min(tol.abs_eps, tol.rel_eps) * 1e-4;
    const double p = 1.0 + exponent;
    double delta = std::pow(eps * p, 1.0 / p);
    delta = std::max(delta, 1e-250);
    const double u = 0.5 * std::log(1.0 / delta);
    return std::asinh(2.0 * std::max(u, 1.0) / kPi) + 0.05;
}

} // namespace

cplx integrate_de(const Integrand& f, double a, double b,
                  std::pair<double, double> singular_exponents,
                  const Tolerance& tol)
{
    tol.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw DomainError("integrate_de needs a finite interval with a < b");
    if (!(singular_exponents.first > -1.0) || !(singular_exponents.second > -1.0))
        throw DomainError("endpoint exponents must exceed -1");

    const double length = b - a;
    const double t_lo = -window_half_width(singular_exponents.first, tol);
    const double t_hi = window_half_width(singular_exponents.second, tol);

    auto node = [&](double t) -> cplx {
        const double u = 0.5 * kPi * std::sinh(t);
        const double ex = std::exp(-2.0 * std::abs(u));
        const double small = length * ex / (1.0 + ex);
        const double big = length / (1.0 + ex);
        if (small <= 0.0)
            return 0.0;
        const double from_a = u < 0 ? small : big;
        const double to_b = u < 0 ? big : small;
        const double x = u < 0 ? a + from_a : b - to_b;
        const double weight = 0.5 * length * 0.5 * kPi * std::cosh(t) * 4.0 * ex / ((1.0 + ex) * (1.0 + ex));
        const cplx val = f(x, from_a, to_b);
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw NonConvergent("integrand is not finite at t = " + std::to_string(x));
        return weight * val;
    };

    // Level 0 uses step 1/2 over the whole window; each later level halves the
    // step and adds only the new odd nodes.
    double h = 0.5;
    cplx raw{0.0, 0.0};
    for (long j = static_cast<long>(std::ceil(t_lo / h)); j * h <= t_hi; ++j)
        raw += node(j * h);
    cplx estimate = raw * h;
    double last_diff = std::numeric_limits<double>::infinity();

    for (int level = 1; level <= tol.quad_levels; ++level) {
        h *= 0.5;
        cplx added{0.0, 0.0};
        long j = static_cast<long>(std::ceil(t_lo / h));
        if (j % 2 == 0)
            ++j;
        for (; j * h <= t_hi; j += 2)
            added += node(j * h);
        raw += added;
        const cplx next = raw * h;
        last_diff = std::abs(next - estimate);
        estimate = next;
        const double target = std::max(tol.abs_eps, tol.rel_eps * std::abs(estimate));
        if (level >= 3 && last_diff <= target)
            return estimate;
    }
    const double target = std::max(tol.abs_eps, tol.rel_eps * std::abs(estimate));
    if (last_diff > 10.0 * target)
        throw NonConvergent("tanh-sinh refinement did not settle: last change " +
                            std::to_string(last_diff));
    return estimate;
}

bool is_nonpositive_integer(cplx a)
{
    if (a.imag() != 0.0)
        return false;
    const double r = std::round(a.real());
    return r <= 0.0 && std::abs(a.real() - r) < 1e-14;
}

namespace {

cplx lanczos_gamma(cplx z)
{
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993, 676.5203681218851, -1259.1392167224028,
        771.32342877765313, -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5)
        return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
    z -= 1.0;
    cplx x = coef[0];
    for (int k = 1; k < 9; ++k)
        x += coef[k] / (z + static_cast<double>(k));
    const cplx t = z + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace

cplx gamma_fn(cplx a)
{
    if (is_nonpositive_integer(a))
        throw PoleError("gamma has a pole at " + std::to_string(a.real()));
    if (a.imag() == 0.0 && a.real() > 0.0)
        return std::tgamma(a.real());
    return lanczos_gamma(a);
}

cplx beta_fn(cplx a, cplx b)
{
    const cplx ga = gamma_fn(a);
    const cplx gb = gamma_fn(b);
    if (is_nonpositive_integer(a + b))
        return 0.0;
    return ga * gb / gamma_fn(a + b);
}

std::pair<double, double> lattice_coords(cplx y, cplx tau)
{
    const double p = y.imag() / tau.imag();
    const double q = y.real() - p * tau.real();
    return {p, q};
}

namespace {

bool in_unit(double c) { return c >= 0.0 && c < 1.0; }

void require_upper(cplx tau)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("tau must lie in the upper half-plane");
}

} // namespace

TorusPoint torus_reduce(const TorusPoint& p)
{
    require_upper(p.tau);
    auto [pc, qc] = lattice_coords(p.y, p.tau);
    if (in_unit(pc) && in_unit(qc))
        return p;
    cplx y = p.y - std::floor(pc) * p.tau - std::floor(qc);
    for (int round = 0; round < 4; ++round) {
        auto [pp, qq] = lattice_coords(y, p.tau);
        if (in_unit(pp) && in_unit(qq))
            return {y, p.tau};
        if (pp < 0.0)
            y += p.tau;
        else if (pp >= 1.0)
            y -= p.tau;
        if (qq < 0.0)
            y += 1.0;
        else if (qq >= 1.0)
            y -= 1.0;
    }
    // Rounding kept a coordinate on the wrong side of 0 or 1; rebuild the
    // point from clamped coordinates, snapping the offending one to 0.
    auto [pp, qq] = lattice_coords(y, p.tau);
    pp = in_unit(pp) ? pp : 0.0;
    qq = in_unit(qq) ? qq : 0.0;
    y = pp * p.tau + qq;
    auto [p2, q2] = lattice_coords(y, p.tau);
    if (!in_unit(p2))
        y = qq;
    else if (!in_unit(q2))
        y = pp * p.tau;
    return {y, p.tau};
}

bool torus_eq(const TorusPoint& p, const TorusPoint& q, const Tolerance& tol)
{
    require_upper(p.tau);
    if (std::abs(p.tau - q.tau) > std::max(tol.abs_eps, tol.rel_eps * std::abs(p.tau)))
        throw DomainError("torus_eq called with different tau values");
    const TorusPoint rp = torus_reduce(p);
    const TorusPoint rq = torus_reduce({q.y, p.tau});
    auto [p1, q1] = lattice_coords(rp.y, p.tau);
    auto [p2, q2] = lattice_coords(rq.y, p.tau);
    double best = std::numeric_limits<double>::infinity();
    for (int m = -1; m <= 1; ++m)
        for (int n = -1; n <= 1; ++n)
            best = std::min(best, std::hypot(p1 - p2 + m, q1 - q2 + n));
    return best < tol.abs_eps;
}

double torus_distance(const TorusPoint& p, const TorusPoint& q)
{
    require_upper(p.tau);
    const cplx d = p.y - q.y;
    auto [pc, qc] = lattice_coords(d, p.tau);
    const double m0 = std::round(pc);
    double best = std::numeric_limits<double>::infinity();
    for (int dm = -1; dm <= 1; ++dm) {
        const cplx shifted = d - (m0 + dm) * p.tau;
        const double n0 = std::round(shifted.real());
        for (int dn = -1; dn <= 1; ++dn)
            best = std::min(best, std::abs(shifted - (n0 + dn)));
    }
    return best;
}

cplx principal_root4(cplx x)
{
    if (x.imag() == 0.0) {
        if (x.real() >= 0.0)
            return std::pow(x.real(), 0.25);
        return std::pow(-x.real(), 0.25) * e_phase(1, 8);
    }
    return std::pow(x, 0.25);
}

} // namespace schwarzf2
