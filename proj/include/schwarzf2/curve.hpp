#pragma once

#include <array>
#include <optional>
#include <utility>

#include "schwarzf2/numerics.hpp"

namespace schwarzf2 {

enum class Ramification { none, P0, P1, P1z, Pinf };

const char* ramification_name(Ramification r);

// A point (v, w) of C_z : w^4 = v^3 (1 - v)(1 - v z).
//
// The branch index k selects w = i^k * w0(v), where w0 is the sheet value
// obtained from the positive root on (0,1) by continuation through the upper
// half v-plane when v is real, and the principal fourth root otherwise.
// Ramification points carry a flag; their v is 0, 1, 1/z or +inf.
struct CurvePoint {
    cplx v{0.0, 0.0};
    int branch = 0;
    Ramification ram = Ramification::none;

    static CurvePoint at(cplx v, int branch = 0);
    static CurvePoint ramification(Ramification r, double z);

    bool is_ramification() const { return ram != Ramification::none; }
};

// Sheet value of w on branch 0 at v (see CurvePoint).
cplx sheet_w0(cplx v, cplx z);

// w coordinate of P. Zero at P0, P1, P_{1/z}; PoleError at P_oo.
cplx curve_w(const CurvePoint& p, cplx z);

// |w^4 - v^3 (1-v)(1-vz)| relative to max(1, |w|^4).
double curve_residual(const CurvePoint& p, cplx z);

CurvePoint sigma_pt(const CurvePoint& p, int times = 1);

// Involution v -> (1-v)/(1-vz), w -> v(1-v) sqrt(1-z) / ((1-vz) w). The new
// branch is the one whose w lies nearest the formula value.
CurvePoint iota_pt(const CurvePoint& p, double z);

bool same_point(const CurvePoint& a, const CurvePoint& b, double z, double eps = 1e-10);

cplx fn_s(const CurvePoint& p, cplx z);

// The four expressions u/(v(1-vz)), v^2(1-v)/u, w^2/(v(1-vz)), v^2(1-v)/w^2
// with u = w^2.
std::array<cplx, 4> fn_s_forms(const CurvePoint& p, cplx z);

cplx fn_fplus(const CurvePoint& p, double z);
cplx fn_fminus(const CurvePoint& p, double z);

// h_+ = (s - v_+)(s + v_-)/s and h_- = (s + v_+)(s - v_-)/s.
cplx fn_hpm(int sign, cplx s_val, double z);

// (v_-, v_+), the roots of z v^2 - 2 v + 1.
std::pair<cplx, cplx> v_pm(cplx z);

// Point over v_- or v_+ on a given branch.
CurvePoint point_v_minus(double z, int branch = 0);
CurvePoint point_v_plus(double z, int branch = 0);

struct DualBasisData {
    double z = 0.0;
    cplx b1_eta1, b1_eta2, b2_eta1, b2_eta2;
    cplx a1_eta1, a1_eta2, a2_eta1, a2_eta2;
    cplx tau;
    // phi[i][j] is the coefficient of eta_{j+1} in phi_{i+1}.
    std::array<std::array<cplx, 2>, 2> phi;

    // Integrals of phi_i over beta_k and alpha_k rebuilt from the stored
    // periods.
    cplx beta_phi(int k, int i) const;
    cplx alpha_phi(int k, int i) const;
};

DualBasisData dual_basis(double z, const Tolerance& tol = {});

// dv-coefficient of phi_i at an unramified point.
cplx phi_dv(const DualBasisData& d, int i, const CurvePoint& p);

// |phi_i| in a local parameter at P: the dv-coefficient at ordinary points,
// the coefficient of dt (v = t^4, 1 - v = t^4, 1 - vz = t^4, v = t^-4) at
// ramification points.
double phi_local_abs(const DualBasisData& d, int i, const CurvePoint& p);

struct AbelJacobi {
    cplx y1_lift, y2_lift;
    TorusPoint y1, y2;
};

// (y1, y2) = (int 2 phi1, int 2 phi2) from P0 along the real axis, then
// applied to the branch of P through sigma. Supported: the four ramification
// points and unramified P with real v in (0,1) or (1,1/z); PathError otherwise.
AbelJacobi abel_jacobi(const CurvePoint& p, const DualBasisData& d, const Tolerance& tol = {});
AbelJacobi abel_jacobi(const CurvePoint& p, double z, const Tolerance& tol = {});

// Integral of eta_j along I_{0,1} with the integrand evaluated pointwise on
// branch k of the curve.
cplx eta_on_branch_01(int j, int branch, double z, const Tolerance& tol = {});

struct PhiVanishing {
    double phi2_at_v_minus;
    double phi1_at_v_minus;
};

PhiVanishing phi2_vanishing_check(double z, const Tolerance& tol = {});

// min over a sample of points of max(|phi1|, |phi2|) in local parameters.
double phi_common_zero_margin(double z, const Tolerance& tol = {});

struct ThetaExprReport {
    std::optional<double> s_y1, s_y2;
    std::optional<double> fplus, fminus;
    std::optional<double> one_minus_v_first, one_minus_v_second;
    std::optional<double> w_over_v;
    std::optional<double> vv_y1, vv_y2;
    double branch_equation = 0.0;

    double max() const;
};

// Residuals of the theta expressions of s, f_+^2, f_-^2, 1 - v, w/v and
// v(v-1)/(v-1/z) at P, each relative to max(1, |exact value|). Entries that
// have a pole or an indeterminate form at P are left empty.
ThetaExprReport theta_exprs_check(const CurvePoint& p, double z, const Tolerance& tol = {});

// max over both components of |pr1(sigma P) - psi(pr2 P)|.
double diagram_check(const CurvePoint& p, double z);

// (E1, E2) residuals: (s f_+)^2 + z s (s - v_+)(s + v_-) and the same with f_-.
std::pair<double, double> elliptic_membership(const CurvePoint& p, double z);

} // namespace schwarzf2
