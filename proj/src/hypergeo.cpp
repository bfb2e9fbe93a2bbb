#include "schwarzf2/hypergeo.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace schwarzf2 {

namespace {

constexpr long kTermCap = 1000000;

void require_not_pole(cplx c, const char* name)
{
    if (is_nonpositive_integer(c))
        throw PoleError(std::string("parameter ") + name + " is a non-positive integer");
}

// Tracks the "three consecutive small terms" stopping rule.
class StopRule {
public:
    explicit StopRule(double eps) : eps_(eps) {}

    bool update(double term_size, cplx sum)
    {
        if (term_size < eps_ * std::abs(sum))
            ++quiet_;
        else
            quiet_ = 0;
        return quiet_ >= 3;
    }

private:
    double eps_;
    int quiet_ = 0;
};

} // namespace

void F2Params::validate() const
{
    require_not_pole(c1, "c1");
    require_not_pole(c2, "c2");
}

F2Params F2Params::fixed()
{
    return {0.5, 0.25, 0.25, 0.5, 0.5};
}

RationalF2Params RationalF2Params::fixed()
{
    return {Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 2), Rational(1, 2)};
}

DomainPoint::DomainPoint(cplx x1, cplx x2) : x1_(x1), x2_(x2)
{
    const double guard = 1e-14;
    if (std::abs(x1) < guard || std::abs(1.0 - x1) < guard || std::abs(x2) < guard ||
        std::abs(1.0 - x2) < guard || std::abs(1.0 - x1 - x2) < guard)
        throw DomainError("point lies on the singular divisor x1 x2 (1-x1)(1-x2)(1-x1-x2) = 0");
    z_ = (1.0 - x1 - x2) / ((1.0 - x1) * (1.0 - x2));
    real_chamber_ = x1.imag() == 0.0 && x2.imag() == 0.0 && x1.real() > 0.0 &&
                    x2.real() > 0.0 && x1.real() + x2.real() < 1.0;
}

cplx gauss_f(cplx a, cplx b, cplx c, cplx x, const Tolerance& tol)
{
    require_not_pole(c, "c");
    if (std::abs(x) >= 1.0)
        throw DomainError("gauss_f series needs |x| < 1");
    cplx term = 1.0;
    cplx sum = 1.0;
    StopRule stop(tol.theta_trunc_eps);
    for (long n = 0; n < kTermCap; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
        sum += term;
        if (stop.update(std::abs(term), sum))
            return sum;
    }
    throw NonConvergent("gauss_f series exceeded the term cap");
}

namespace {

// Sums a double series along anti-diagonals n1 + n2 = N. `along` gives the
// ratio A(n1, n2) / A(n1 - 1, n2) and `down` the ratio A(0, N) / A(0, N - 1).
template <class Along, class Down>
cplx sum_by_diagonals(Along along, Down down, const Tolerance& tol)
{
    std::vector<cplx> diag{1.0};
    cplx sum = 1.0;
    StopRule stop(tol.theta_trunc_eps);
    long terms = 1;
    for (long N = 1; terms < kTermCap; ++N) {
        std::vector<cplx> next(static_cast<std::size_t>(N + 1));
        next[0] = diag[0] * down(N);
        double size = std::abs(next[0]);
        cplx diag_sum = next[0];
        for (long n1 = 1; n1 <= N; ++n1) {
            next[static_cast<std::size_t>(n1)] = diag[static_cast<std::size_t>(n1 - 1)] * along(n1, N - n1);
            size += std::abs(next[static_cast<std::size_t>(n1)]);
            diag_sum += next[static_cast<std::size_t>(n1)];
        }
        sum += diag_sum;
        terms += N + 1;
        diag.swap(next);
        if (stop.update(size, sum))
            return sum;
    }
    throw NonConvergent("double series exceeded the term cap");
}

} // namespace

cplx appell_f2(const F2Params& p, cplx x1, cplx x2, const Tolerance& tol)
{
    p.validate();
    if (std::abs(x1) + std::abs(x2) >= 1.0)
        throw DomainError("appell_f2 series needs |x1| + |x2| < 1");
    auto along = [&](long n1, long n2) {
        const double m = static_cast<double>(n1 - 1);
        const double total = static_cast<double>(n1 - 1 + n2);
        return (p.a + total) * (p.b1 + m) / ((p.c1 + m) * (m + 1.0)) * x1;
    };
    auto down = [&](long N) {
        const double m = static_cast<double>(N - 1);
        return (p.a + m) * (p.b2 + m) / ((p.c2 + m) * (m + 1.0)) * x2;
    };
    return sum_by_diagonals(along, down, tol);
}

cplx appell_f1(cplx a, cplx b1, cplx b2, cplx c, cplx x1, cplx x2, const Tolerance& tol)
{
    require_not_pole(c, "c");
    if (std::abs(x1) >= 1.0 || std::abs(x2) >= 1.0)
        throw DomainError("appell_f1 series needs |x1| < 1 and |x2| < 1");
    auto along = [&](long n1, long n2) {
        const double m = static_cast<double>(n1 - 1);
        const double total = static_cast<double>(n1 - 1 + n2);
        return (a + total) * (b1 + m) / ((c + total) * (m + 1.0)) * x1;
    };
    auto down = [&](long N) {
        const double m = static_cast<double>(N - 1);
        return (a + m) * (b2 + m) / ((c + m) * (m + 1.0)) * x2;
    };
    return sum_by_diagonals(along, down, tol);
}

std::pair<cplx, cplx> f2_operators(const F2Params& p, cplx x1, cplx x2, const Jet2& j)
{
    const cplx op1 = x1 * (1.0 - x1) * j.f11 - x1 * x2 * j.f12 +
                     (p.c1 - (p.a + p.b1 + 1.0) * x1) * j.f1 - p.b1 * x2 * j.f2 - p.a * p.b1 * j.f;
    const cplx op2 = x2 * (1.0 - x2) * j.f22 - x1 * x2 * j.f12 +
                     (p.c2 - (p.a + p.b2 + 1.0) * x2) * j.f2 - p.b2 * x1 * j.f1 - p.a * p.b2 * j.f;
    return {op1, op2};
}

std::pair<double, double> f2_pde_residual(const F2Params& p, const DomainPoint& x, double h,
                                          const Tolerance& tol)
{
    if (!(h >= 1e-5 && h <= 1e-3))
        throw DomainError("finite-difference step must lie in [1e-5, 1e-3]");
    const cplx x1 = x.x1();
    const cplx x2 = x.x2();
    if (std::abs(x1) + std::abs(x2) + 4.0 * h >= 1.0)
        throw DomainError("point too close to the boundary of the convergence domain");
    auto F = [&](double d1, double d2) { return appell_f2(p, x1 + d1, x2 + d2, tol); };
    const cplx f00 = F(0, 0);
    const cplx fp0 = F(h, 0), fm0 = F(-h, 0), f0p = F(0, h), f0m = F(0, -h);
    const cplx fpp = F(h, h), fpm = F(h, -h), fmp = F(-h, h), fmm = F(-h, -h);
    Jet2 jet;
    jet.f = f00;
    jet.f1 = (fp0 - fm0) / (2.0 * h);
    jet.f2 = (f0p - f0m) / (2.0 * h);
    jet.f11 = (fp0 - 2.0 * f00 + fm0) / (h * h);
    jet.f22 = (f0p - 2.0 * f00 + f0m) / (h * h);
    jet.f12 = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    auto [r1, r2] = f2_operators(p, x1, x2, jet);
    return {std::abs(r1), std::abs(r2)};
}

bool is_reducible(const RationalF2Params& p)
{
    const Rational combos[] = {p.a, p.b1, p.b2, p.b1 - p.c1, p.b2 - p.c2,
                               p.a - p.c1, p.a - p.c2, p.a - p.c1 - p.c2};
    for (const Rational& r : combos)
        if (r.is_integer())
            return true;
    return false;
}

bool is_reducible(const F2Params& p)
{
    const cplx combos[] = {p.a, p.b1, p.b2, p.b1 - p.c1, p.b2 - p.c2,
                           p.a - p.c1, p.a - p.c2, p.a - p.c1 - p.c2};
    for (const cplx& r : combos)
        if (std::abs(r.imag()) < 1e-12 && std::abs(r.real() - std::round(r.real())) < 1e-12)
            return true;
    return false;
}

cplx euler_d1(double x1, double x2, const Tolerance& tol)
{
    if (!DomainPoint(x1, x2).real_chamber())
        throw DomainError("euler_d1 is defined on the real chamber only");
    Tolerance inner = tol;
    inner.abs_eps = tol.abs_eps * 1e-2;
    inner.rel_eps = tol.rel_eps * 1e-2;
    auto outer = [&](double, double s1, double r1) {
        // 1 - t1 x1 written through the distance to t1 = 1.
        const double base = (1.0 - x1) + x1 * r1;
        auto g = [&](double, double s2, double r2) {
            const double lin = base - x2 + x2 * r2;
            return cplx(std::pow(s2 * r2, -0.75) / std::sqrt(lin));
        };
        const cplx in = integrate_de(g, 0.0, 1.0, {-0.75, -0.75}, inner);
        return std::pow(s1 * r1, -0.75) * in;
    };
    return integrate_de(outer, 0.0, 1.0, {-0.75, -0.75}, tol);
}

cplx euler_d1_reduction(const DomainPoint& x, const Tolerance& tol)
{
    const cplx b = beta_fn(0.25, 0.25);
    return b * b * std::pow((1.0 - x.x1()) * (1.0 - x.x2()), -0.25) *
           gauss_f(0.25, 0.25, 0.5, 1.0 - x.z(), tol);
}

} // namespace schwarzf2
