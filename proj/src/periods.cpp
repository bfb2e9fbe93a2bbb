#include "schwarzf2/periods.hpp"

#include <cmath>
#include <future>
#include <string>

namespace schwarzf2 {

namespace {

// Exponents of |v|, |1-v|, |1-vz| in the integrand of eta_j.
struct Exps {
    double ev, e1, ez;
};

Exps eta_exponents(int j)
{
    switch (j) {
    case 1: return {-0.75, -0.25, -0.25};
    case 2: return {-0.25, -0.75, -0.75};
    case 3: return {-0.5, -0.5, -0.5};
    default: throw DomainError("eta index must be 1, 2 or 3, got " + std::to_string(j));
    }
}

struct Factors {
    cplx a, b, c, jac;
};

cplx power(cplx x, double e)
{
    if (x.imag() == 0.0 && x.real() > 0.0)
        return std::pow(x.real(), e);
    return std::pow(x, e);
}

// Integrates jac * a^ev * b^e1 * c^ez over u in (0,1); `factors` receives the
// distances u and 1-u.
template <class F>
cplx integrate_factors(const Exps& e, F factors, std::pair<double, double> ends, const Tolerance& tol)
{
    auto integrand = [&](double, double s, double r) {
        const Factors f = factors(s, r);
        return f.jac * power(f.a, e.ev) * power(f.b, e.e1) * power(f.c, e.ez);
    };
    return integrate_de(integrand, 0.0, 1.0, ends, tol);
}

bool real_unit_z(cplx z) { return z.imag() == 0.0 && z.real() > 0.0 && z.real() < 1.0; }

void check_segment_z(PathSegment seg, cplx z)
{
    if (z.imag() != 0.0) {
        if (std::abs(z) < 1e-300 || std::abs(1.0 - z) < 1e-300)
            throw DomainError("z must avoid 0 and 1");
        return;
    }
    const double zr = z.real();
    if (zr == 1.0)
        throw DomainError("z = 1 is a singular value");
    if (zr == 0.0) {
        if (seg != PathSegment::I01)
            throw DomainError("z = 0 is only admitted on the segment (0,1)");
        return;
    }
    if (zr > 1.0 && seg == PathSegment::I01)
        throw BranchError("the segment (0,1) contains the branch point 1/z");
    if (zr < 0.0 && seg == PathSegment::Iminf_0)
        throw BranchError("the segment (-oo,0) contains the branch point 1/z");
    if (zr > 1.0 || zr < 0.0)
        throw BranchError("segment endpoints are not in the expected order for real z outside (0,1)");
}

double tail_exponent(const Exps& e) { return -e.ev - e.e1 - e.ez - 2.0; }

} // namespace

const char* segment_name(PathSegment seg)
{
    switch (seg) {
    case PathSegment::I01: return "I01";
    case PathSegment::I1_1z: return "I1_1z";
    case PathSegment::I1z_inf: return "I1z_inf";
    case PathSegment::Iminf_0: return "Iminf_0";
    }
    return "?";
}

cplx segment_phase(int j, PathSegment seg)
{
    eta_exponents(j);
    switch (seg) {
    case PathSegment::I01:
        return 1.0;
    case PathSegment::I1_1z:
        // arg(1-v) = -pi after passing above v = 1.
        return j == 1 ? e_phase(1, 8) : j == 2 ? e_phase(3, 8) : kI;
    case PathSegment::I1z_inf:
        // arg(1-v) = arg(1-vz) = -pi after passing above v = 1 and v = 1/z.
        return j == 1 ? kI : j == 2 ? -kI : cplx(-1.0);
    case PathSegment::Iminf_0:
        // arg(v) = pi, traversed from -oo to 0.
        return j == 1 ? e_phase(-3, 8) : j == 2 ? e_phase(-1, 8) : -kI;
    }
    return 0.0;
}

cplx segment_magnitude(int j, PathSegment seg, cplx z, const Tolerance& tol)
{
    const Exps e = eta_exponents(j);
    check_segment_z(seg, z);
    switch (seg) {
    case PathSegment::I01:
        return integrate_factors(e, [&](double s, double r) {
            return Factors{s, r, (1.0 - z) + z * r, 1.0};
        }, {e.ev, e.e1}, tol);
    case PathSegment::I1_1z: {
        const cplx len = (1.0 - z) / z;
        return integrate_factors(e, [&](double s, double r) {
            return Factors{1.0 + s * len, s * len, r * (1.0 - z), len};
        }, {e.e1, e.ez}, tol);
    }
    case PathSegment::I1z_inf:
        return integrate_factors(e, [&](double s, double r) {
            const cplx zs = z * s;
            return Factors{1.0 / zs, ((1.0 - z) + z * r) / zs, r / s, 1.0 / (zs * s)};
        }, {tail_exponent(e), e.ez}, tol);
    case PathSegment::Iminf_0:
        return integrate_factors(e, [&](double s, double r) {
            return Factors{s / r, 1.0 / r, (r + z * s) / r, 1.0 / (r * r)};
        }, {e.ev, tail_exponent(e)}, tol);
    }
    return 0.0;
}

cplx eta_segment(int j, PathSegment seg, cplx z, const Tolerance& tol)
{
    return segment_phase(j, seg) * segment_magnitude(j, seg, z, tol);
}

cplx positive_partial_01(int j, cplx end, cplx z, const Tolerance& tol)
{
    const Exps e = eta_exponents(j);
    if (std::abs(end) == 0.0)
        return 0.0;
    if (end.imag() == 0.0 && z.imag() == 0.0 && end.real() > 0.5 && end.real() < 1.0 &&
        real_unit_z(z)) {
        // Closer to v = 1: subtract the short piece (end, 1) from the full segment.
        const double x = end.real();
        const double zr = z.real();
        const cplx piece = integrate_factors(e, [&](double s, double r) {
            const double rest = (1.0 - x) * r;
            return Factors{x + (1.0 - x) * s, rest, (1.0 - zr) + zr * rest, 1.0 - x};
        }, {0.0, e.e1}, tol);
        return segment_magnitude(j, PathSegment::I01, z, tol) - piece;
    }
    const bool to_one = end == cplx(1.0);
    return integrate_factors(e, [&](double s, double r) {
        const cplx v = end * s;
        const cplx b = (1.0 - end) + end * r;
        return Factors{v, b, (1.0 - end * z) + end * z * r, end};
    }, {e.ev, to_one ? e.e1 : 0.0}, tol);
}

cplx eta_path_integral(int j, double end, double z, const Tolerance& tol)
{
    const Exps e = eta_exponents(j);
    if (!(z > 0.0 && z < 1.0))
        throw DomainError("real path integrals need z in (0,1)");
    if (!(end > 0.0) || end > 1.0 / z)
        throw DomainError("end point must lie in (0, 1/z]");
    if (end <= 1.0)
        return positive_partial_01(j, end, z, tol);
    const cplx first = segment_magnitude(j, PathSegment::I01, z, tol);
    const double inv = 1.0 / z;
    cplx second;
    if (end == inv) {
        second = segment_magnitude(j, PathSegment::I1_1z, z, tol);
    } else if (end - 1.0 <= inv - end) {
        second = integrate_factors(e, [&](double s, double r) {
            const double d = s * (end - 1.0);
            return Factors{1.0 + d, d, (1.0 - end * z) + r * (end - 1.0) * z, end - 1.0};
        }, {e.e1, 0.0}, tol);
    } else {
        const cplx rest = integrate_factors(e, [&](double s, double r) {
            const double d = r * (inv - end);
            return Factors{end + s * (inv - end), (end - 1.0) + s * (inv - end), z * d, inv - end};
        }, {0.0, e.ez}, tol);
        second = segment_magnitude(j, PathSegment::I1_1z, z, tol) - rest;
    }
    return first + segment_phase(j, PathSegment::I1_1z) * second;
}

namespace {

cplx eigen_factor(int j)
{
    if (j == 1)
        return -kI;
    if (j == 2)
        return kI;
    throw DomainError("alpha/beta periods are defined for eta1 and eta2 only");
}

void check_cycle(int i)
{
    if (i != 1 && i != 2)
        throw DomainError("cycle index must be 1 or 2");
}

} // namespace

cplx beta_period(int j, int i, cplx z, const Tolerance& tol)
{
    const cplx eps = eigen_factor(j);
    check_cycle(i);
    const cplx b1 = 2.0 * eta_segment(j, PathSegment::I01, z, tol);
    return i == 1 ? b1 : eps * b1;
}

cplx alpha_period(int j, int i, cplx z, const Tolerance& tol)
{
    const cplx eps = eigen_factor(j);
    check_cycle(i);
    const cplx s01 = eta_segment(j, PathSegment::I01, z, tol);
    const cplx s11z = eta_segment(j, PathSegment::I1_1z, z, tol);
    const cplx a1 = 2.0 * (1.0 - eps) * (s01 + s11z) - 2.0 * s01;
    return i == 1 ? a1 : eps * a1;
}

cplx tau_from(int j, cplx z, const Tolerance& tol)
{
    return alpha_period(j, j, z, tol) / beta_period(j, j, z, tol);
}

PeriodVector periods(const DomainPoint& x, const Tolerance& tol)
{
    tol.validate();
    const cplx z = x.z();
    auto ia = std::async(std::launch::async, [&] { return segment_magnitude(1, PathSegment::Iminf_0, z, tol); });
    auto ib = std::async(std::launch::async, [&] { return segment_magnitude(1, PathSegment::I1z_inf, z, tol); });
    auto j3 = std::async(std::launch::async, [&] { return positive_partial_01(1, 1.0 - x.x1(), z, tol); });
    auto j4 = std::async(std::launch::async, [&] { return positive_partial_01(1, 1.0 - x.x2(), z, tol); });
    const cplx b = beta_fn(0.25, 0.25);
    const cplx b_half = beta_fn(0.25, 0.5);
    const cplx pre = std::pow((1.0 - x.x1()) * (1.0 - x.x2()), -0.25);
    PeriodVector out;
    out.f1 = b * pre * ia.get();
    out.f2 = kI * b_half * pre * ib.get();
    out.f3 = e_phase(3, 8) * b * pre * j3.get();
    out.f4 = e_phase(3, 8) * b * pre * j4.get();
    out.validated = x.real_chamber();
    return out;
}

std::array<double, 4> LambdaVector::coords() const
{
    return {twice_[0] / 2.0, twice_[1] / 2.0, twice_[2] / 2.0, twice_[3] / 2.0};
}

bool LambdaVector::integral_coords() const
{
    for (long t : twice_)
        if (t % 2 != 0)
            return false;
    return true;
}

LambdaVector LambdaVector::operator+(const LambdaVector& o) const
{
    return LambdaVector({twice_[0] + o.twice_[0], twice_[1] + o.twice_[1],
                         twice_[2] + o.twice_[2], twice_[3] + o.twice_[3]});
}

LambdaVector LambdaVector::operator*(long k) const
{
    return LambdaVector({twice_[0] * k, twice_[1] * k, twice_[2] * k, twice_[3] * k});
}

LambdaClass lambda_classify(const LambdaVector& v)
{
    const auto& t = v.twice();
    const long parity = ((t[0] % 2) + 2) % 2;
    for (long c : t)
        if (((c % 2) + 2) % 2 != parity)
            return LambdaClass::outside;
    if (parity == 1)
        return LambdaClass::in_Hminus;
    const long half_sum = (t[0] + t[1] + t[2] + t[3]) / 2;
    return half_sum % 2 == 0 ? LambdaClass::in_sublattice_1ms2 : LambdaClass::in_Lambda;
}

const char* lambda_class_name(LambdaClass c)
{
    switch (c) {
    case LambdaClass::in_sublattice_1ms2: return "in_sublattice_1ms2";
    case LambdaClass::in_Lambda: return "in_Lambda";
    case LambdaClass::in_Hminus: return "in_Hminus";
    case LambdaClass::outside: return "outside";
    }
    return "?";
}

LambdaVector sigma_on_lambda(const LambdaVector& v)
{
    const auto& t = v.twice();
    return LambdaVector::from_twice({-t[1], t[0], -t[3], t[2]});
}

long intersection(const LambdaVector& u, const LambdaVector& v)
{
    if (!u.integral_coords() || !v.integral_coords())
        throw DomainError("intersection is defined here for integral coordinates only");
    const auto& a = u.twice();
    const auto& b = v.twice();
    // Doubled coordinates: divide the form 2 J4 by 4.
    const long twice_form = 2 * (-a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1]);
    return twice_form / 4;
}

LambdaVector segment_homology(PathSegment seg)
{
    switch (seg) {
    case PathSegment::I01: return LambdaVector::from_twice({0, 0, 2, 0});
    case PathSegment::I1_1z: return LambdaVector::from_twice({1, 1, -1, 1});
    case PathSegment::I1z_inf: return LambdaVector::from_twice({0, 0, 0, -2});
    case PathSegment::Iminf_0: return LambdaVector::from_twice({-1, -1, -1, 1});
    }
    return {};
}

std::pair<long, long> lattice_index_chain()
{
    long h = 0, lam = 0, sub = 0;
    for (long a = 0; a < 4; ++a)
        for (long b = 0; b < 4; ++b)
            for (long c = 0; c < 4; ++c)
                for (long d = 0; d < 4; ++d) {
                    const LambdaClass k = lambda_classify(LambdaVector::from_twice({a, b, c, d}));
                    if (k == LambdaClass::outside)
                        continue;
                    ++h;
                    if (k != LambdaClass::in_Hminus)
                        ++lam;
                    if (k == LambdaClass::in_sublattice_1ms2)
                        ++sub;
                }
    return {h / lam, lam / sub};
}

} // namespace schwarzf2
