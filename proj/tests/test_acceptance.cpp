// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "schwarzf2/curve.hpp"
#include "schwarzf2/hypergeo.hpp"
#include "schwarzf2/monodromy.hpp"
#include "schwarzf2/periods.hpp"
#include "schwarzf2/schwarz.hpp"
#include "schwarzf2/theta.hpp"

using namespace schwarzf2;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// {0.05, 0.15, ..., 0.85}^2 restricted to x1 + x2 < 1.
std::vector<DomainPoint> grid()
{
    std::vector<DomainPoint> pts;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) {
            const double x1 = 0.05 + 0.1 * a, x2 = 0.05 + 0.1 * b;
            if (x1 + x2 < 1.0 - 1e-12)
                pts.emplace_back(x1, x2);
        }
    return pts;
}

struct GridRun {
    std::vector<DomainPoint> pts;
    std::vector<SchwarzImage> imgs;
    double seconds = 0.0;
};

const GridRun& grid_run()
{
    static const GridRun run = [] {
        GridRun r;
        const auto t0 = Clock::now();
        r.pts = grid();
        r.imgs = forward_batch(r.pts);
        r.seconds = seconds_since(t0);
        return r;
    }();
    return run;
}

Outcome criterion1()
{
    const auto t0 = Clock::now();
    const GridRun& g = grid_run();
    double worst = 0.0;
    for (std::size_t k = 0; k < g.pts.size(); ++k) {
        const DomainPoint back = inverse(g.imgs[k]);
        worst = std::max({worst, std::abs(back.x1() - g.pts[k].x1()), std::abs(back.x2() - g.pts[k].x2())});
    }
    const double secs = seconds_since(t0);
    return {worst < 1e-8 && secs < 120.0,
            std::to_string(g.pts.size()) + " grid points, max |inverse(forward(x)) - x| = " + fmt(worst) + " in " +
                fmt(secs) + " s"};
}

Outcome criterion2()
{
    const GridRun& g = grid_run();
    double worst = 0.0;
    for (std::size_t k = 0; k < g.pts.size(); ++k) {
        const DomainPoint& x = g.pts[k];
        const cplx direct = (1.0 - x.x1() - x.x2()) / ((1.0 - x.x1()) * (1.0 - x.x2()));
        worst = std::max(worst, std::abs(z_of_tau(g.imgs[k].tau) - direct));
    }
    const double at_i = std::abs(z_of_tau(kI) - 1.0);
    return {worst < 1e-9 && at_i < 1e-10, "max |z_of_tau(tau) - z| = " + fmt(worst) + ", |z_of_tau(i) - 1| = " + fmt(at_i)};
}

Outcome criterion3()
{
    const GridRun& g = grid_run();
    double worst = 0.0, moved_off = 1e300, moved_diag = 1e300;
    for (std::size_t k = 0; k < g.pts.size(); ++k) {
        worst = std::max(worst, image_residual(g.imgs[k]));
        SchwarzImage m = g.imgs[k];
        m.y1 += 0.01;
        const double r = image_residual(m);
        if (g.pts[k].x1() == g.pts[k].x2())
            moved_diag = std::min(moved_diag, r);
        else
            moved_off = std::min(moved_off, r);
    }
    SchwarzImage ex = forward(DomainPoint(0.2, 0.3));
    ex.y1 += 0.01;
    const double moved_example = image_residual(ex);
    // On x1 = x2, y1 = 1/2 is a critical point of theta11/theta00 (see criterion 5).
    return {worst < 1e-9 && moved_off > 1e-3 && moved_example > 1e-3,
            "max residual = " + fmt(worst) + "; after y1 += 0.01: min off x1 = x2 " + fmt(moved_off) +
                ", at (0.2, 0.3) " + fmt(moved_example) + ", on x1 = x2 " + fmt(moved_diag) +
                " (second order, not gated)"};
}

Outcome criterion4()
{
    const GridRun& g = grid_run();
    double re = 0.0, agree = 0.0;
    bool upper = true;
    for (std::size_t k = 0; k < g.pts.size(); ++k) {
        re = std::max(re, std::abs(g.imgs[k].tau.real()));
        upper = upper && g.imgs[k].tau.imag() > 0.0;
        const cplx z = g.pts[k].z();
        agree = std::max(agree, std::abs(tau_from(1, z) - tau_from(2, z)));
    }
    return {re < 1e-9 && upper && agree < 1e-9,
            "max |Re tau| = " + fmt(re) + ", Im tau > 0: " + (upper ? "yes" : "no") +
                ", max |tau(eta1) - tau(eta2)| = " + fmt(agree)};
}

Outcome criterion5()
{
    const ThetaChar chars[] = {kTheta00, kTheta01, kTheta10, kTheta11};
    double jac = 0.0;
    for (double re : {-1.0, -0.5, 0.0, 0.25, 0.75})
        for (double im : {0.25, 0.6, 1.0, 1.7, 3.5})
            jac = std::max(jac, jacobi_identity_residual(cplx(re, im)));

    std::mt19937_64 rng(515);
    std::uniform_real_distribution<double> re_tau(-1.0, 1.0), im_tau(0.5, 3.0), ang(0.0, 2.0 * kPi), rad(0.0, 2.0);
    std::uniform_int_distribution<int> shift(-3, 3), pick(0, 3);
    double laws = 0.0;
    for (int s = 0; s < 100; ++s) {
        const cplx tau(re_tau(rng), im_tau(rng));
        const cplx y = std::polar(rad(rng), ang(rng));
        const ThetaChar c = chars[pick(rng)];
        const int p = shift(rng), q = shift(rng);
        for (BasicIdentity id : {BasicIdentity::quasi_period, BasicIdentity::parity, BasicIdentity::half_one,
                                 BasicIdentity::half_tau, BasicIdentity::half_tau_plus_one})
            laws = std::max(laws, basic_identity_residual(id, c, y, tau, p, q));
    }

    std::uniform_real_distribution<double> u(-0.8, 0.8), im(0.6, 1.6);
    double modular = 0.0;
    for (int s = 0; s < 40; ++s) {
        const cplx tau(u(rng), im(rng)), y(u(rng), u(rng));
        for (ThetaChar c : {kTheta00, kTheta11}) {
            modular = std::max(modular, modular_residual(ModularKind::shift2, c, y, tau));
            modular = std::max(modular, modular_residual(ModularKind::inversion, c, y, tau));
        }
    }

    double deriv = 0.0;
    for (cplx tau : {cplx(0.0, 1.5), cplx(0.0, 0.8), cplx(0.3, 1.2)}) {
        const auto [a, b] = theta11_ratio_derivative_check(tau, 1e-5);
        deriv = std::max({deriv, a, b});
    }
    const double t00 = std::abs(theta_const(kTheta00, kI) - std::pow(kPi, 0.25) / gamma_fn(0.75));
    return {jac < 1e-12 && laws < 1e-10 && modular < 1e-10 && deriv < 1e-7 && t00 < 1e-10,
            "Jacobi " + fmt(jac) + ", basic laws " + fmt(laws) + ", modular laws " + fmt(modular) +
                ", derivative at half periods " + fmt(deriv) + ", theta00(0,i) " + fmt(t00)};
}

Outcome criterion6()
{
    double worst = 0.0;
    int points = 0;
    bool complete = true;
    for (double z : {0.3, 0.5, 0.7}) {
        for (int k = 0; k < 20; ++k) {
            // Ten points on each of the real path pieces (0,1) and (1,1/z), on all four sheets.
            const double v = k < 10 ? 0.04 + 0.1 * k : 1.0 + (k - 9.5) / 10.0 * (1.0 / z - 1.0);
            const ThetaExprReport r = theta_exprs_check(CurvePoint::at(v, k % 4), z);
            complete = complete && r.s_y1 && r.s_y2 && r.fplus && r.fminus && r.one_minus_v_first &&
                       r.one_minus_v_second && r.w_over_v && r.vv_y1 && r.vv_y2;
            worst = std::max(worst, r.max());
            ++points;
        }
    }
    return {worst < 1e-8 && complete,
            std::to_string(points) + " on-path points, max residual over s, f+-^2, 1 - v (two forms), w/v, "
                                     "v(v-1)/(v-1/z), branch equation = " +
                fmt(worst)};
}

std::vector<CurvePoint> random_points(unsigned seed, int count, double z)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    std::uniform_int_distribution<int> branch(0, 3);
    std::vector<CurvePoint> pts;
    for (int n = 0; n < count; ++n) {
        cplx v;
        switch (n % 4) {
        case 0: v = unit(gen); break;
        case 1: v = 1.0 + unit(gen) * (1.0 / z - 1.0); break;
        case 2: v = cplx(unit(gen), unit(gen) - 0.5); break;
        default: v = -3.0 * unit(gen); break;
        }
        pts.push_back(CurvePoint::at(v, branch(gen)));
    }
    return pts;
}

Outcome criterion7()
{
    bool dihedral = true;
    double s_iota = 0.0, fpm = 0.0, ell = 0.0, diag = 0.0;
    int count = 0;
    for (double z : {0.3, 0.5, 0.7}) {
        for (const CurvePoint& p : random_points(77, 50, z)) {
            dihedral = dihedral && same_point(sigma_pt(p, 4), p, z, 1e-10);
            dihedral = dihedral && same_point(iota_pt(iota_pt(p, z), z), p, z, 1e-10);
            dihedral = dihedral && same_point(iota_pt(sigma_pt(p), z), sigma_pt(iota_pt(p, z), 3), z, 1e-10);
            const cplx s = fn_s(p, z);
            s_iota = std::max(s_iota, std::abs(fn_s(iota_pt(p, z), z) - s) / std::max(1.0, std::abs(s)));
            const cplx fp = fn_fplus(p, z), fm = fn_fminus(p, z);
            const double scale = std::max(1.0, std::norm(fp) + std::norm(fm));
            fpm = std::max(fpm, std::abs(fp * fp + z * fn_hpm(1, s, z)) / scale);
            fpm = std::max(fpm, std::abs(fm * fm + z * fn_hpm(-1, s, z)) / scale);
            const auto [e1, e2] = elliptic_membership(p, z);
            ell = std::max(ell, std::max(e1, e2) / std::max(1.0, std::pow(std::abs(s), 3)));
            diag = std::max(diag, diagram_check(p, z) / std::max(1.0, std::abs(fp)));
            ++count;
        }
    }
    return {dihedral && s_iota < 1e-10 && fpm < 1e-10 && ell < 1e-10 && diag < 1e-10,
            std::to_string(count) + " points, dihedral relations " + (dihedral ? "hold" : "fail") + ", s o iota " +
                fmt(s_iota) + ", f+-^2 + z h+- " + fmt(fpm) + ", E1/E2 " + fmt(ell) + ", diagram " + fmt(diag)};
}

Outcome criterion8()
{
    double anchors = 0.0, half = 0.0, phi2 = 0.0, phi1 = 1e300;
    for (double z : {0.3, 0.5, 0.7}) {
        const DualBasisData d = dual_basis(z);
        const cplx tau = d.tau;
        auto dist = [&](Ramification r, cplx e1, cplx e2) {
            const AbelJacobi a = abel_jacobi(CurvePoint::ramification(r, z), d);
            return std::max(torus_distance(a.y1, {e1, tau}), torus_distance(a.y2, {e2, tau}));
        };
        anchors = std::max(anchors, dist(Ramification::P0, 0.0, 0.0));
        anchors = std::max(anchors, dist(Ramification::P1, 0.0, 0.0));
        anchors = std::max(anchors, dist(Ramification::P1z, (tau + 1.0) / 2.0, (tau + 1.0) / 2.0));
        anchors = std::max(anchors, dist(Ramification::Pinf, (tau + 1.0) / 2.0, (tau - 1.0) / 2.0));
        half = std::max(half, std::abs(abel_jacobi(point_v_minus(z), d).y1_lift - 0.5));
        const PhiVanishing pv = phi2_vanishing_check(z);
        phi2 = std::max(phi2, pv.phi2_at_v_minus);
        phi1 = std::min(phi1, pv.phi1_at_v_minus);
    }
    return {anchors < 1e-8 && half < 1e-8 && phi2 < 1e-8 && phi1 > 1e-2,
            "anchors " + fmt(anchors) + ", |y1(P_v-) - 1/2| " + fmt(half) + ", |phi2(P_v-)| " + fmt(phi2) +
                ", |phi1(P_v-)| " + fmt(phi1)};
}

Outcome criterion9()
{
    using IntM = GaussianMatrix::IntEntries;
    const auto& g = generators();
    const GaussianMatrix e4 = GaussianMatrix::identity();
    const GaussianMatrix printed[5] = {
        GaussianMatrix::from_integer(IntM{{{0, 1, 0, 0}, {-1, 0, 0, 0}, {-1, 0, 0, 1}, {0, 1, -1, 0}}}, 1),
        GaussianMatrix::from_integer(IntM{{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}}, 1),
        GaussianMatrix::from_integer(IntM{{{1, 2, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}),
        GaussianMatrix::from_integer(IntM{{{2, 1, 0, 0}, {-1, 0, 0, 0}, {-1, -1, 1, 0}, {0, 0, 0, 1}}}),
        GaussianMatrix::from_integer(IntM{{{2, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}),
    };
    bool as_printed = true;
    for (int k = 0; k < 5; ++k)
        as_printed = as_printed && g[k] == printed[k];
    const Matrix4c q_printed = {{
        {cplx(-1.0, 0.0), cplx(0.0, -1.0), 0.0, 0.0},
        {0.0, 1.0, 0.0, 0.0},
        {0.0, 0.5, cplx(0.25, -0.25), cplx(-0.25, 0.25)},
        {0.0, cplx(0.0, -0.5), cplx(0.25, 0.25), cplx(0.25, 0.25)},
    }};
    as_printed = as_printed && q_matrix() == q_printed;
    const bool relations = g[0] * g[0] == e4 && g[1] * g[1] == e4 && g[0] * g[1] == g[1] * g[0];

    const auto t0 = Clock::now();
    const MatrixSet closure = bfs_closure(8);
    bool members = true;
    for (std::size_t k = 0; k < closure.size(); ++k)
        members = members && is_in_M(closure[k]).member;
    const double bfs_secs = seconds_since(t0);

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> len(0, 20), gen(1, 5), sign(0, 1);
    int round = 0;
    for (int t = 0; t < 200; ++t) {
        Word w;
        const int n = len(rng);
        for (int k = 0; k < n; ++k)
            w.push_back({gen(rng), sign(rng) ? 1 : -1});
        const GaussianMatrix m = evaluate(w);
        if (evaluate(decompose(m)) == m)
            ++round;
    }
    const bool igusa = igusa_index() == 3 && igusa_gamma2_index() == 2;
    const bool minus = !is_in_M(-e4).member;
    return {as_printed && relations && members && bfs_secs < 60.0 && round == 200 && igusa && minus,
            std::string("as printed: ") + (as_printed ? "yes" : "no") + ", relations: " + (relations ? "yes" : "no") +
                ", closure(8) " + std::to_string(closure.size()) + " elements all members: " +
                (members ? "yes" : "no") + " in " + fmt(bfs_secs) + " s, decompose round trips " +
                std::to_string(round) + "/200, Igusa indices " + std::to_string(igusa_index()) + " and " +
                std::to_string(igusa_gamma2_index()) + ", -E4 rejected: " + (minus ? "yes" : "no")};
}

Outcome criterion10()
{
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    double pde = 0.0;
    for (int done = 0; done < 10;) {
        const double x1 = u(rng), x2 = u(rng);
        if (std::abs(x1) + std::abs(x2) > 0.8 || std::abs(x1) < 0.01 || std::abs(x2) < 0.01)
            continue;
        const auto [a, b] = f2_pde_residual(F2Params::fixed(), DomainPoint(x1, x2), 1e-4);
        pde = std::max({pde, a, b});
        ++done;
    }
    double euler = 0.0;
    for (auto [x1, x2] : {std::pair{0.1, 0.1}, std::pair{0.2, 0.3}, std::pair{0.6, 0.3}, std::pair{0.05, 0.85},
                          std::pair{0.4, 0.15}})
        euler = std::max(euler, std::abs(euler_d1(x1, x2) - euler_d1_reduction(DomainPoint(x1, x2))));
    const double beta = std::abs(beta_fn(0.25, 0.5) - beta_fn(0.25, 0.25) / std::sqrt(2.0));
    return {pde < 1e-6 && euler < 1e-6 && beta < 1e-12,
            "PDE residual " + fmt(pde) + ", euler_d1 vs reduction " + fmt(euler) + ", beta identity " + fmt(beta)};
}

} // namespace

int main()
{
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass)
            ++failed;
        std::printf("criterion %zu: %s (%s)\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
