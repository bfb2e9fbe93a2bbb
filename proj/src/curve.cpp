#include "schwarzf2/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "schwarzf2/periods.hpp"
#include "schwarzf2/theta.hpp"

namespace schwarzf2 {

namespace {

cplx ipow(int k)
{
    static const cplx table[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    return table[((k % 4) + 4) % 4];
}

int mod4(int k) { return ((k % 4) + 4) % 4; }

void require_unit_z(double z, const char* what)
{
    if (!(z > 0.0 && z < 1.0))
        throw DomainError(std::string(what) + " needs z in (0,1)");
}

void require_separated_z(double z, const char* what)
{
    require_unit_z(z, what);
    if (z > 1.0 - 1e-6)
        throw DomainError(std::string(what) + ": v_+ and v_- collide as z -> 1");
}

bool is_real_unit(cplx z) { return z.imag() == 0.0 && z.real() > 0.0 && z.real() < 1.0; }

double rel_residual(cplx exact, cplx approx)
{
    return std::abs(exact - approx) / std::max(1.0, std::abs(exact));
}

} // namespace

const char* ramification_name(Ramification r)
{
    switch (r) {
    case Ramification::none: return "none";
    case Ramification::P0: return "P0";
    case Ramification::P1: return "P1";
    case Ramification::P1z: return "P1/z";
    case Ramification::Pinf: return "Pinf";
    }
    return "?";
}

CurvePoint CurvePoint::at(cplx v, int branch)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("curve point needs a finite v");
    return CurvePoint{v, mod4(branch), Ramification::none};
}

CurvePoint CurvePoint::ramification(Ramification r, double z)
{
    switch (r) {
    case Ramification::P0: return CurvePoint{0.0, 0, r};
    case Ramification::P1: return CurvePoint{1.0, 0, r};
    case Ramification::P1z:
        if (z == 0.0)
            throw DomainError("P_{1/z} needs z != 0");
        return CurvePoint{1.0 / z, 0, r};
    case Ramification::Pinf:
        return CurvePoint{std::numeric_limits<double>::infinity(), 0, r};
    case Ramification::none: break;
    }
    throw DomainError("not a ramification point");
}

cplx sheet_w0(cplx v, cplx z)
{
    const cplx x = v * v * v * (1.0 - v) * (1.0 - v * z);
    if (v.imag() != 0.0 || !is_real_unit(z))
        return principal_root4(x);
    const double t = v.real();
    const double inv = 1.0 / z.real();
    const double mag = std::pow(std::abs(x), 0.25);
    if (t > 0.0 && t < 1.0)
        return mag;
    if (t > 1.0 && t < inv)
        return mag * e_phase(-1, 8);
    if (t > inv)
        return mag * cplx(0.0, -1.0);
    if (t < 0.0)
        return mag * e_phase(3, 8);
    return 0.0;
}

cplx curve_w(const CurvePoint& p, cplx z)
{
    switch (p.ram) {
    case Ramification::P0:
    case Ramification::P1:
    case Ramification::P1z: return 0.0;
    case Ramification::Pinf: throw PoleError("w has a pole at P_oo");
    case Ramification::none: break;
    }
    return ipow(p.branch) * sheet_w0(p.v, z);
}

double curve_residual(const CurvePoint& p, cplx z)
{
    if (p.ram == Ramification::Pinf)
        return 0.0;
    const cplx w = curve_w(p, z);
    const cplx v = p.v;
    const cplx w2 = w * w;
    return std::abs(w2 * w2 - v * v * v * (1.0 - v) * (1.0 - v * z)) / std::max(1.0, std::norm(w2));
}

CurvePoint sigma_pt(const CurvePoint& p, int times)
{
    if (p.is_ramification())
        return p;
    CurvePoint q = p;
    q.branch = mod4(p.branch + times);
    return q;
}

CurvePoint iota_pt(const CurvePoint& p, double z)
{
    require_unit_z(z, "iota");
    switch (p.ram) {
    case Ramification::P0: return CurvePoint::ramification(Ramification::P1, z);
    case Ramification::P1: return CurvePoint::ramification(Ramification::P0, z);
    case Ramification::P1z: return CurvePoint::ramification(Ramification::Pinf, z);
    case Ramification::Pinf: return CurvePoint::ramification(Ramification::P1z, z);
    case Ramification::none: break;
    }
    const cplx v = p.v;
    const cplx den = 1.0 - v * z;
    const cplx w = curve_w(p, z);
    if (std::abs(w) == 0.0 || std::abs(den) == 0.0 || !std::isfinite(std::abs(w)))
        throw BranchError("iota is only defined by continuity at a ramification point");
    const cplx v_new = (1.0 - v) / den;
    const cplx w_formula = v * (1.0 - v) * std::sqrt(1.0 - z) / (den * w);
    const cplx w_base = sheet_w0(v_new, z);
    std::array<std::pair<double, int>, 4> dist;
    for (int k = 0; k < 4; ++k)
        dist[k] = {std::abs(ipow(k) * w_base - w_formula), k};
    std::sort(dist.begin(), dist.end());
    if (dist[1].first - dist[0].first < 1e-6)
        throw BranchError("iota image branch is ambiguous");
    return CurvePoint{v_new, dist[0].second, Ramification::none};
}

bool same_point(const CurvePoint& a, const CurvePoint& b, double z, double eps)
{
    if (a.is_ramification() || b.is_ramification())
        return a.ram == b.ram;
    if (std::abs(a.v - b.v) > eps * std::max(1.0, std::abs(a.v)))
        return false;
    const cplx wa = curve_w(a, z);
    const cplx wb = curve_w(b, z);
    return std::abs(wa - wb) <= eps * std::max(1.0, std::abs(wa));
}

cplx fn_s(const CurvePoint& p, cplx z)
{
    switch (p.ram) {
    case Ramification::P0:
    case Ramification::P1: return 0.0;
    case Ramification::P1z:
    case Ramification::Pinf: throw PoleError("s has a pole at P_{1/z} and P_oo");
    case Ramification::none: break;
    }
    const cplx w = curve_w(p, z);
    const cplx den = p.v * (1.0 - p.v * z);
    if (std::abs(den) == 0.0)
        throw PoleError("s evaluated at a ramification value of v");
    return w * w / den;
}

std::array<cplx, 4> fn_s_forms(const CurvePoint& p, cplx z)
{
    if (p.is_ramification())
        throw PoleError("the four forms of s are indeterminate at ramification points");
    const cplx v = p.v;
    const cplx w = curve_w(p, z);
    const cplx u = w * w;
    if (std::abs(u) == 0.0 || std::abs(v * (1.0 - v * z)) == 0.0)
        throw PoleError("the four forms of s are indeterminate where w = 0");
    return {u / (v * (1.0 - v * z)), v * v * (1.0 - v) / u, w * w / (v * (1.0 - v * z)),
            v * v * (1.0 - v) / (w * w)};
}

namespace {

cplx f_pm(const CurvePoint& p, double z, double sign)
{
    require_unit_z(z, "f_+-");
    if (p.is_ramification())
        throw PoleError("f_+ and f_- have poles at the ramification points");
    const cplx w = curve_w(p, z);
    if (std::abs(w) == 0.0 || std::abs(p.v) == 0.0)
        throw PoleError("f_+ and f_- have poles where w or v vanishes");
    return w / p.v + sign * std::sqrt(1.0 - z) * p.v / w;
}

} // namespace

cplx fn_fplus(const CurvePoint& p, double z) { return f_pm(p, z, 1.0); }
cplx fn_fminus(const CurvePoint& p, double z) { return f_pm(p, z, -1.0); }

std::pair<cplx, cplx> v_pm(cplx z)
{
    if (std::abs(z) == 0.0)
        throw DomainError("v_+- needs z != 0");
    const cplx r = std::sqrt(1.0 - z);
    return {1.0 / (1.0 + r), (1.0 + r) / z};
}

cplx fn_hpm(int sign, cplx s_val, double z)
{
    require_separated_z(z, "h_+-");
    if (sign != 1 && sign != -1)
        throw DomainError("h_+- sign must be +1 or -1");
    if (std::abs(s_val) == 0.0)
        throw PoleError("h_+- has a pole at s = 0");
    const auto [vm, vp] = v_pm(z);
    if (sign > 0)
        return (s_val - vp) * (s_val + vm) / s_val;
    return (s_val + vp) * (s_val - vm) / s_val;
}

CurvePoint point_v_minus(double z, int branch)
{
    require_separated_z(z, "P_{v-}");
    return CurvePoint::at(v_pm(z).first.real(), branch);
}

CurvePoint point_v_plus(double z, int branch)
{
    require_separated_z(z, "P_{v+}");
    return CurvePoint::at(v_pm(z).second.real(), branch);
}

cplx DualBasisData::beta_phi(int k, int i) const
{
    const cplx e1 = k == 1 ? b1_eta1 : b2_eta1;
    const cplx e2 = k == 1 ? b1_eta2 : b2_eta2;
    return phi[i - 1][0] * e1 + phi[i - 1][1] * e2;
}

cplx DualBasisData::alpha_phi(int k, int i) const
{
    const cplx e1 = k == 1 ? a1_eta1 : a2_eta1;
    const cplx e2 = k == 1 ? a1_eta2 : a2_eta2;
    return phi[i - 1][0] * e1 + phi[i - 1][1] * e2;
}

DualBasisData dual_basis(double z, const Tolerance& tol)
{
    require_unit_z(z, "dual basis");
    DualBasisData d;
    d.z = z;
    d.b1_eta1 = beta_period(1, 1, z, tol);
    d.b2_eta1 = beta_period(1, 2, z, tol);
    d.b1_eta2 = beta_period(2, 1, z, tol);
    d.b2_eta2 = beta_period(2, 2, z, tol);
    d.a1_eta1 = alpha_period(1, 1, z, tol);
    d.a2_eta1 = alpha_period(1, 2, z, tol);
    d.a1_eta2 = alpha_period(2, 1, z, tol);
    d.a2_eta2 = alpha_period(2, 2, z, tol);
    d.tau = d.a1_eta1 / d.b1_eta1;

    // Rows of M are cycles, columns are forms: M[k][j] = int_{beta_k} eta_j.
    // The coefficient matrix C with phi_i = sum_j C[i][j] eta_j satisfies
    // C M^T = 1.
    const cplx m00 = d.b1_eta1, m01 = d.b1_eta2, m10 = d.b2_eta1, m11 = d.b2_eta2;
    const cplx det = m00 * m11 - m01 * m10;
    if (std::abs(det) == 0.0)
        throw NonConvergent("beta periods are degenerate");
    // (M^T)^{-1} = (M^{-1})^T.
    d.phi[0][0] = m11 / det;
    d.phi[0][1] = -m10 / det;
    d.phi[1][0] = -m01 / det;
    d.phi[1][1] = m00 / det;
    if (!(d.tau.imag() > 0.0))
        throw NonConvergent("period ratio left the upper half plane");
    return d;
}

cplx phi_dv(const DualBasisData& d, int i, const CurvePoint& p)
{
    if (i != 1 && i != 2)
        throw DomainError("phi index must be 1 or 2");
    if (p.is_ramification())
        throw DomainError("use phi_local_abs at ramification points");
    const cplx w = curve_w(p, d.z);
    if (std::abs(w) == 0.0)
        throw PoleError("dv-coefficient of phi is infinite where w = 0");
    return d.phi[i - 1][0] / w + d.phi[i - 1][1] * p.v * p.v / (w * w * w);
}

double phi_local_abs(const DualBasisData& d, int i, const CurvePoint& p)
{
    if (i != 1 && i != 2)
        throw DomainError("phi index must be 1 or 2");
    const double z = d.z;
    const cplx c1 = d.phi[i - 1][0];
    const cplx c2 = d.phi[i - 1][1];
    switch (p.ram) {
    case Ramification::P0: return 4.0 * std::abs(c1);
    case Ramification::P1:
    case Ramification::P1z: return 4.0 * std::abs(c2) / std::pow(1.0 - z, 0.75);
    case Ramification::Pinf: return 4.0 * std::abs(c1) / std::pow(z, 0.25);
    case Ramification::none: break;
    }
    return std::abs(phi_dv(d, i, p));
}

AbelJacobi abel_jacobi(const CurvePoint& p, const DualBasisData& d, const Tolerance& tol)
{
    const double z = d.z;
    const double inv = 1.0 / z;
    std::array<cplx, 2> g{0.0, 0.0};
    switch (p.ram) {
    case Ramification::P0: break;
    case Ramification::P1:
        for (int j = 1; j <= 2; ++j)
            g[j - 1] = eta_path_integral(j, 1.0, z, tol);
        break;
    case Ramification::P1z:
        for (int j = 1; j <= 2; ++j)
            g[j - 1] = eta_path_integral(j, inv, z, tol);
        break;
    case Ramification::Pinf:
        for (int j = 1; j <= 2; ++j)
            g[j - 1] = eta_path_integral(j, inv, z, tol) + eta_segment(j, PathSegment::I1z_inf, z, tol);
        break;
    case Ramification::none: {
        const double v = p.v.real();
        const bool ok = p.v.imag() == 0.0 && ((v > 0.0 && v < 1.0) || (v > 1.0 && v < inv));
        if (!ok)
            throw PathError("Abel-Jacobi map supports real v in (0,1) or (1,1/z) and ramification points");
        // On branch k, eta1 = dv/w picks up i^{-k} and eta2 = v^2 dv/w^3
        // picks up i^{-3k} = i^{k}.
        g[0] = ipow(-p.branch) * eta_path_integral(1, v, z, tol);
        g[1] = ipow(p.branch) * eta_path_integral(2, v, z, tol);
        break;
    }
    }
    AbelJacobi out;
    out.y1_lift = 2.0 * (d.phi[0][0] * g[0] + d.phi[0][1] * g[1]);
    out.y2_lift = 2.0 * (d.phi[1][0] * g[0] + d.phi[1][1] * g[1]);
    out.y1 = torus_reduce({out.y1_lift, d.tau});
    out.y2 = torus_reduce({out.y2_lift, d.tau});
    return out;
}

AbelJacobi abel_jacobi(const CurvePoint& p, double z, const Tolerance& tol)
{
    return abel_jacobi(p, dual_basis(z, tol), tol);
}

cplx eta_on_branch_01(int j, int branch, double z, const Tolerance& tol)
{
    require_unit_z(z, "eta_on_branch_01");
    std::pair<double, double> ends;
    switch (j) {
    case 1: ends = {-0.75, -0.25}; break;
    case 2: ends = {-0.25, -0.75}; break;
    case 3: ends = {-0.5, -0.5}; break;
    default: throw DomainError("eta index must be 1, 2 or 3");
    }
    const cplx phase = ipow(branch);
    auto f = [&](double t, double from_a, double to_b) -> cplx {
        const cplx w = phase * std::pow(from_a * from_a * from_a * to_b * (1.0 - t * z), 0.25);
        switch (j) {
        case 1: return 1.0 / w;
        case 2: return t * t / (w * w * w);
        default: return t / (w * w);
        }
    };
    return integrate_de(f, 0.0, 1.0, ends, tol);
}

PhiVanishing phi2_vanishing_check(double z, const Tolerance& tol)
{
    require_separated_z(z, "phi2 vanishing check");
    const DualBasisData d = dual_basis(z, tol);
    const CurvePoint p = point_v_minus(z, 0);
    return {std::abs(phi_dv(d, 2, p)), std::abs(phi_dv(d, 1, p))};
}

double phi_common_zero_margin(double z, const Tolerance& tol)
{
    require_separated_z(z, "phi common zero margin");
    const DualBasisData d = dual_basis(z, tol);
    std::vector<CurvePoint> pts;
    for (Ramification r : {Ramification::P0, Ramification::P1, Ramification::P1z, Ramification::Pinf})
        pts.push_back(CurvePoint::ramification(r, z));
    const double inv = 1.0 / z;
    const std::vector<cplx> vs = {-2.0, -0.5, 0.1, 0.3, 0.5, 0.7, 0.9,
                                  1.0 + 0.25 * (inv - 1.0), 1.0 + 0.75 * (inv - 1.0),
                                  inv + 0.5, cplx(0.5, 0.5), cplx(2.0, -1.0)};
    for (int k = 0; k < 4; ++k) {
        for (cplx v : vs)
            pts.push_back(CurvePoint::at(v, k));
        pts.push_back(point_v_minus(z, k));
        pts.push_back(point_v_plus(z, k));
    }
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& p : pts)
        margin = std::min(margin, std::max(phi_local_abs(d, 1, p), phi_local_abs(d, 2, p)));
    return margin;
}

double ThetaExprReport::max() const
{
    double m = branch_equation;
    for (const auto* o : {&s_y1, &s_y2, &fplus, &fminus, &one_minus_v_first, &one_minus_v_second, &w_over_v,
                          &vv_y1, &vv_y2})
        if (o->has_value())
            m = std::max(m, **o);
    return m;
}

ThetaExprReport theta_exprs_check(const CurvePoint& p, double z, const Tolerance& tol)
{
    require_separated_z(z, "theta expressions");
    const DualBasisData d = dual_basis(z, tol);
    const AbelJacobi aj = abel_jacobi(p, d, tol);
    const cplx tau = d.tau;
    const cplx y1 = aj.y1_lift;
    const cplx y2 = aj.y2_lift;
    const double sqrt_z = std::sqrt(z);

    auto th = [&](ThetaChar c, cplx y) { return theta(c, y, tau, tol); };
    const cplx t00 = theta_const(kTheta00, tau, tol);
    const cplx t01 = theta_const(kTheta01, tau, tol);
    const cplx t10 = theta_const(kTheta10, tau, tol);
    const cplx c_const = std::pow(t00, 4) / (4.0 * t01 * t01 * t10 * t10);
    auto T = [&](cplx y) { const cplx a = th(kTheta00, y); return th(kTheta01, y) * th(kTheta10, y) / (a * a); };
    auto Q = [&](cplx y) {
        return th(kTheta01, y) * th(kTheta10, y) / (th(kTheta00, y) * th(kTheta11, y));
    };
    auto s_theta = [&](cplx y, double sign) {
        const cplx r = th(kTheta11, y) / th(kTheta00, y);
        return sign * r * r / sqrt_z;
    };
    auto vv_theta = [&](cplx y) { return std::pow(th(kTheta11, y) / th(kTheta00, y), 4); };

    ThetaExprReport rep;
    const cplx lambda = std::pow(t01 / t10, 4);
    auto branch_res = [&](cplx l) { return std::abs(l * l + (2.0 - 4.0 / z) * l + 1.0) / std::max(1.0, std::norm(l)); };
    rep.branch_equation = std::max(branch_res(lambda), branch_res(1.0 / lambda));

    if (p.ram == Ramification::P0 || p.ram == Ramification::P1) {
        rep.s_y1 = rel_residual(0.0, s_theta(y1, 1.0));
        rep.s_y2 = rel_residual(0.0, s_theta(y2, -1.0));
        rep.vv_y1 = rel_residual(0.0, vv_theta(y1));
        rep.vv_y2 = rel_residual(0.0, vv_theta(y2));
        const cplx sum = T(y1) + T(y2);
        rep.one_minus_v_first = rel_residual(1.0 - p.v, c_const * sum * sum);
        return rep;
    }
    if (p.is_ramification())
        return rep;

    const cplx v = p.v;
    const cplx w = curve_w(p, z);
    const cplx s = fn_s(p, z);
    const cplx fp = fn_fplus(p, z);
    const cplx fm = fn_fminus(p, z);
    const cplx q1 = Q(y1);
    const cplx q2 = Q(y2);
    const cplx y1_prime = -y2;

    rep.s_y1 = rel_residual(s, s_theta(y1, 1.0));
    rep.s_y2 = rel_residual(s, s_theta(y2, -1.0));
    rep.fplus = rel_residual(fp * fp, -2.0 * q2 * q2);
    rep.fminus = rel_residual(fm * fm, 2.0 * q1 * q1);
    const cplx sum = T(y1) + T(y2);
    rep.one_minus_v_first = rel_residual(1.0 - v, c_const * sum * sum);
    const cplx second = q1 - kI * Q(y1_prime);
    rep.one_minus_v_second = rel_residual(1.0 - v, s_theta(y1, 1.0) * second * second / 2.0);
    rep.w_over_v = rel_residual(w / v, -(q1 + kI * q2) / std::sqrt(2.0));
    const cplx vv = v * (v - 1.0) / (v - 1.0 / z);
    rep.vv_y1 = rel_residual(vv, vv_theta(y1));
    rep.vv_y2 = rel_residual(vv, vv_theta(y2));
    return rep;
}

double diagram_check(const CurvePoint& p, double z)
{
    const CurvePoint sp = sigma_pt(p);
    const cplx top_f = fn_fplus(sp, z);
    const cplx top_s = fn_s(sp, z);
    const cplx psi_f = kI * fn_fminus(p, z);
    const cplx psi_s = -fn_s(p, z);
    return std::max(std::abs(top_f - psi_f), std::abs(top_s - psi_s));
}

std::pair<double, double> elliptic_membership(const CurvePoint& p, double z)
{
    require_separated_z(z, "elliptic membership");
    const auto [vm, vp] = v_pm(z);
    const cplx s = fn_s(p, z);
    const cplx a = s * fn_fplus(p, z);
    const cplx b = s * fn_fminus(p, z);
    const double e1 = std::abs(a * a + z * s * (s - vp) * (s + vm));
    const double e2 = std::abs(b * b + z * s * (s + vp) * (s - vm));
    return {e1, e2};
}

} // namespace schwarzf2
