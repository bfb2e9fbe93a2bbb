#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "schwarzf2/curve.hpp"
#include "schwarzf2/monodromy.hpp"
#include "schwarzf2/periods.hpp"
#include "schwarzf2/schwarz.hpp"
#include "schwarzf2/theta.hpp"

namespace schwarzf2::cli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad numeric value for " + key + ": '" + text + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "1" || text == "true" || text == "yes" || text == "on")
        return true;
    if (text == "0" || text == "false" || text == "no" || text == "off")
        return false;
    throw ParseError("bad boolean value for " + key + ": '" + text + "'");
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

void emit(const json& j, std::string& out)
{
    switch (j.type()) {
    case json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ',';
            first = false;
            out += json(it.key()).dump();
            out += ':';
            emit(it.value(), out);
        }
        out += '}';
        break;
    }
    case json::value_t::array: {
        out += '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k)
                out += ',';
            emit(j[k], out);
        }
        out += ']';
        break;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_number(v) : "null";
        break;
    }
    default:
        out += j.dump();
    }
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    auto line = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k)
                s += ',';
            const bool quote = cells[k].find_first_of(",\"") != std::string::npos;
            if (quote) {
                s += '"';
                for (char c : cells[k]) {
                    if (c == '"')
                        s += '"';
                    s += c;
                }
                s += '"';
            } else {
                s += cells[k];
            }
        }
        return s + "\n";
    };
    std::string out = line(header);
    for (const auto& r : rows)
        out += line(r);
    return out;
}

std::string num(double x) { return format_number(x); }

bool want_csv(const RunConfig& cfg) { return cfg.format == "csv" || cfg.emit_table; }

DomainPoint checked_point(double x1, double x2, const RunConfig& cfg)
{
    const DomainPoint x(x1, x2);
    if (!x.real_chamber() && !cfg.unvalidated)
        throw DomainError("point lies outside the real chamber 0 < x1, x2, x1 + x2 < 1; pass --unvalidated");
    return x;
}

std::vector<DomainPoint> config_grid(const RunConfig& cfg)
{
    return grid_points(cfg.grid.value_or(GridSpec{}), cfg.unvalidated);
}

Check below(std::string id, std::string anchor, double value, double threshold)
{
    return {std::move(id), std::move(anchor), value, threshold, value < threshold};
}

Check above(std::string id, std::string anchor, double value, double threshold)
{
    return {std::move(id), std::move(anchor), value, threshold, value > threshold};
}

Check exact(std::string id, std::string anchor, bool ok)
{
    return {std::move(id), std::move(anchor), ok, std::nullopt, ok};
}

constexpr ThetaChar kChars[] = {kTheta00, kTheta01, kTheta10, kTheta11};

void theta_suite(const RunConfig& cfg, std::vector<Check>& out)
{
    const Tolerance& tol = cfg.tol;
    double jac = 0.0;
    for (double re : {-1.0, -0.4, 0.0, 0.3, 0.9})
        for (double im : {0.3, 0.7, 1.0, 1.8, 3.0})
            jac = std::max(jac, jacobi_identity_residual(cplx(re, im), tol));
    out.push_back(below("jacobi_identity", "Jacobi quartic identity of theta constants", jac, 1e-12));

    const std::pair<BasicIdentity, const char*> laws[] = {
        {BasicIdentity::quasi_period, "quasi_period"},
        {BasicIdentity::parity, "parity"},
        {BasicIdentity::half_one, "half_period_one"},
        {BasicIdentity::half_tau, "half_period_tau"},
        {BasicIdentity::half_tau_plus_one, "half_period_tau_plus_one"},
    };
    for (const auto& [id, name] : laws) {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> re_tau(-1.0, 1.0), im_tau(0.5, 3.0), ang(0.0, 2.0 * kPi),
            rad(0.0, 2.0);
        std::uniform_int_distribution<int> shift(-3, 3), pick(0, 3);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            const cplx tau(re_tau(rng), im_tau(rng));
            const cplx y = std::polar(rad(rng), ang(rng));
            const ThetaChar c = kChars[pick(rng)];
            const int p = shift(rng), q = shift(rng);
            worst = std::max(worst, basic_identity_residual(id, c, y, tau, p, q, tol));
        }
        out.push_back(below(std::string("theta_law_") + name,
                            "transformation law of theta with characteristics under lattice and half-period shifts",
                            worst, 1e-10));
    }

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.8, 0.8), im(0.6, 1.6);
    double shift2 = 0.0, inversion = 0.0;
    for (int s = 0; s < 40; ++s) {
        const cplx tau(u(rng), im(rng)), y(u(rng), u(rng));
        for (ThetaChar c : {kTheta00, kTheta11}) {
            shift2 = std::max(shift2, modular_residual(ModularKind::shift2, c, y, tau, tol));
            inversion = std::max(inversion, modular_residual(ModularKind::inversion, c, y, tau, tol));
        }
    }
    out.push_back(below("modular_shift2", "theta under tau -> tau + 2 in the image-equation proof", shift2, 1e-10));
    out.push_back(
        below("modular_inversion", "theta under tau -> -1/tau in the image-equation proof", inversion, 1e-10));

    const auto [d_half, d_tau] = theta11_ratio_derivative_check(cplx(0.0, 1.5), 1e-5, tol);
    out.push_back(below("theta11_ratio_critical_half", "d/dy theta11/theta00 vanishes at y = 1/2", d_half, 1e-7));
    out.push_back(below("theta11_ratio_critical_half_tau", "d/dy theta11/theta00 vanishes at y = tau/2", d_tau, 1e-7));

    const double t00 = std::abs(theta_const(kTheta00, kI, tol) - std::pow(kPi, 0.25) / gamma_fn(0.75));
    out.push_back(below("theta00_at_i", "theta00(0, i) = pi^(1/4) / Gamma(3/4)", t00, 1e-10));
}

void periods_suite(const RunConfig& cfg, std::vector<Check>& out)
{
    const Tolerance& tol = cfg.tol;
    const auto pts = config_grid(cfg);
    double re_tau = 0.0, agree = 0.0;
    bool upper = true;
    for (const DomainPoint& x : pts) {
        const SchwarzImage img = forward(x, tol);
        re_tau = std::max(re_tau, std::abs(img.tau.real()));
        upper = upper && img.tau.imag() > 0.0;
        const cplx z = x.z();
        agree = std::max(agree, std::abs(tau_from(1, z, tol) - tau_from(2, z, tol)));
    }
    out.push_back(below("tau_purely_imaginary", "tau is purely imaginary on the real chamber", re_tau, 1e-9));
    out.push_back(exact("tau_upper_half_plane", "Im tau > 0 for the period matrix", upper));
    out.push_back(below("tau_eigenform_agreement", "tau from (alpha1, beta1, eta1) equals tau from (alpha2, beta2, eta2)",
                        agree, 1e-9));

    const double beta = std::abs(beta_fn(0.25, 0.5) - beta_fn(0.25, 0.25) / std::sqrt(2.0));
    out.push_back(below("beta_quarter_half", "B(1/4, 1/2) = B(1/4, 1/4) / sqrt(2)", beta, 1e-12));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    double pde = 0.0;
    for (int done = 0; done < 10;) {
        const double x1 = u(rng), x2 = u(rng);
        if (std::abs(x1) + std::abs(x2) > 0.8 || std::abs(x1) < 0.01 || std::abs(x2) < 0.01)
            continue;
        const auto [a, b] = f2_pde_residual(F2Params::fixed(), DomainPoint(x1, x2), 1e-4, tol);
        pde = std::max({pde, a, b});
        ++done;
    }
    out.push_back(below("f2_pde_residual", "Appell F2 system at (1/2, 1/4, 1/4, 1/2, 1/2)", pde, 1e-6));

    double euler = 0.0;
    for (auto [x1, x2] : {std::pair{0.1, 0.1}, std::pair{0.2, 0.3}, std::pair{0.6, 0.3}, std::pair{0.05, 0.85},
                          std::pair{0.4, 0.15}})
        euler = std::max(euler, std::abs(euler_d1(x1, x2, tol) - euler_d1_reduction(DomainPoint(x1, x2), tol)));
    out.push_back(below("euler_d1_reduction", "Euler integral of f1 reduces to a one-variable Gauss function",
                        euler, 1e-6));

    out.push_back(exact("lattice_index_chain", "[H- : Lambda] = [Lambda : (1 - sigma^2) H] = 2",
                        lattice_index_chain() == std::pair<long, long>{2, 2}));
}

std::vector<CurvePoint> sample_points(unsigned seed, int count, double z)
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

void curve_suite(const RunConfig& cfg, std::vector<Check>& out)
{
    const Tolerance& tol = cfg.tol;
    const double zs[] = {0.3, 0.5, 0.7};
    bool dihedral = true;
    double s_iota = 0.0, fpm = 0.0, ell = 0.0, diag = 0.0;
    for (double z : zs) {
        for (const CurvePoint& p : sample_points(11, 50, z)) {
            dihedral = dihedral && same_point(sigma_pt(p, 4), p, z);
            dihedral = dihedral && same_point(iota_pt(iota_pt(p, z), z), p, z);
            dihedral = dihedral && same_point(iota_pt(sigma_pt(p), z), sigma_pt(iota_pt(p, z), 3), z);
            const cplx s = fn_s(p, z);
            s_iota = std::max(s_iota, std::abs(fn_s(iota_pt(p, z), z) - s) / std::max(1.0, std::abs(s)));
            const cplx fp = fn_fplus(p, z), fm = fn_fminus(p, z);
            const double scale = std::max(1.0, std::norm(fp) + std::norm(fm));
            fpm = std::max(fpm, std::abs(fp * fp + z * fn_hpm(1, s, z)) / scale);
            fpm = std::max(fpm, std::abs(fm * fm + z * fn_hpm(-1, s, z)) / scale);
            const auto [e1, e2] = elliptic_membership(p, z);
            ell = std::max(ell, std::max(e1, e2) / std::max(1.0, std::pow(std::abs(s), 3)));
            diag = std::max(diag, diagram_check(p, z) / std::max(1.0, std::abs(fp)));
        }
    }
    out.push_back(exact("dihedral_relations", "sigma^4 = iota^2 = id and iota sigma = sigma^-1 iota", dihedral));
    out.push_back(below("s_fixed_by_iota", "s is invariant under iota", s_iota, 1e-10));
    out.push_back(below("fpm_squared", "f+-^2 = -z h+-", fpm, 1e-10));
    out.push_back(below("elliptic_quotients", "images lie on the cubics E1 and E2", ell, 1e-10));
    out.push_back(below("quotient_diagram", "pr1 o sigma = psi o pr2", diag, 1e-10));

    double theta_exprs = 0.0;
    for (double z : zs)
        for (int k = 0; k < 20; ++k) {
            const double v = k < 10 ? 0.05 + 0.09 * k : 1.0 + (k - 9.5) / 10.0 * (1.0 / z - 1.0);
            theta_exprs = std::max(theta_exprs, theta_exprs_check(CurvePoint::at(v, k % 4), z, tol).max());
        }
    out.push_back(below("theta_expressions",
                        "theta expressions of s, f+-^2, 1 - v, w/v, v(v-1)/(v-1/z) and the branch equation",
                        theta_exprs, 1e-8));

    double anchors = 0.0, half = 0.0, phi2 = 0.0, phi1 = 1e300;
    for (double z : zs) {
        const DualBasisData d = dual_basis(z, tol);
        const cplx tau = d.tau;
        auto dist = [&](Ramification r, cplx e1, cplx e2) {
            const AbelJacobi a = abel_jacobi(CurvePoint::ramification(r, z), d, tol);
            return std::max(torus_distance(a.y1, {e1, tau}), torus_distance(a.y2, {e2, tau}));
        };
        anchors = std::max(anchors, dist(Ramification::P0, 0.0, 0.0));
        anchors = std::max(anchors, dist(Ramification::P1, 0.0, 0.0));
        anchors = std::max(anchors, dist(Ramification::P1z, (tau + 1.0) / 2.0, (tau + 1.0) / 2.0));
        anchors = std::max(anchors, dist(Ramification::Pinf, (tau + 1.0) / 2.0, (tau - 1.0) / 2.0));
        half = std::max(half, std::abs(abel_jacobi(point_v_minus(z), d, tol).y1_lift - 0.5));
        const PhiVanishing pv = phi2_vanishing_check(z, tol);
        phi2 = std::max(phi2, pv.phi2_at_v_minus);
        phi1 = std::min(phi1, pv.phi1_at_v_minus);
    }
    out.push_back(below("abel_jacobi_anchors", "images of P0, P1, P1/z, Pinf under the Abel-Jacobi map", anchors, 1e-8));
    out.push_back(below("abel_jacobi_v_minus", "y1(P_v-) = 1/2", half, 1e-8));
    out.push_back(below("phi2_vanishes_at_v_minus", "phi2 vanishes at P_v-", phi2, 1e-8));
    out.push_back(above("phi1_nonzero_at_v_minus", "phi1 does not vanish at P_v-", phi1, 1e-2));
}

void schwarz_suite(const RunConfig& cfg, std::vector<Check>& out)
{
    const Tolerance& tol = cfg.tol;
    const auto pts = config_grid(cfg);
    const auto imgs = forward_batch(pts, tol);
    double round = 0.0, zc = 0.0, image = 0.0, perturbed = 1e300, qmap = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const DomainPoint back = inverse(imgs[k], tol);
        round = std::max({round, std::abs(back.x1() - pts[k].x1()), std::abs(back.x2() - pts[k].x2())});
        zc = std::max(zc, std::abs(z_of_tau(imgs[k].tau, tol) - pts[k].z()));
        image = std::max(image, image_residual(imgs[k], tol));
        // Skips x1 = x2, where y1 = 1/2 is a critical point of theta11/theta00.
        if (pts[k].x1() != pts[k].x2()) {
            SchwarzImage moved = imgs[k];
            moved.y1 += 0.01;
            perturbed = std::min(perturbed, image_residual(moved, tol));
        }
        const auto f = modified_solution_vector(pts[k], tol);
        qmap = std::max(qmap, std::abs(f[0] / f[1] - imgs[k].tau));
    }
    out.push_back(below("round_trip", "inverse(forward(x)) = x", round, 1e-8));
    out.push_back(below("z_consistency", "z = 4 theta01^4 theta10^4 / theta00^8", zc, 1e-9));
    out.push_back(below("z_of_tau_at_i", "z(i) = 1", std::abs(z_of_tau(kI, tol) - 1.0), 1e-10));
    out.push_back(below("image_equation", "theta00(y1) theta11(y2) = i theta11(y1) theta00(y2)", image, 1e-9));
    out.push_back(above("image_equation_perturbed", "image equation fails after moving y1 by 0.01 off the line x1 = x2", perturbed, 1e-3));
    out.push_back(below("modified_period_map", "first ratio of Q f equals tau", qmap, 1e-10));
}

using IntM = GaussianMatrix::IntEntries;

void monodromy_suite(const RunConfig&, std::vector<Check>& out)
{
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
    out.push_back(exact("generators_as_printed", "circuit matrices M1..M5", as_printed));

    const Matrix4c& q = q_matrix();
    const Matrix4c q_printed = {{
        {cplx(-1.0, 0.0), cplx(0.0, -1.0), 0.0, 0.0},
        {0.0, 1.0, 0.0, 0.0},
        {0.0, 0.5, cplx(0.25, -0.25), cplx(-0.25, 0.25)},
        {0.0, cplx(0.0, -0.5), cplx(0.25, 0.25), cplx(0.25, 0.25)},
    }};
    out.push_back(exact("q_matrix_as_printed", "matrix Q of the modified period map", q == q_printed));

    out.push_back(exact("m1_squared", "M1^2 = E4", g[0] * g[0] == e4));
    out.push_back(exact("m2_squared", "M2^2 = E4", g[1] * g[1] == e4));
    out.push_back(exact("m1_m2_commute", "M1 M2 = M2 M1", g[0] * g[1] == g[1] * g[0]));
    out.push_back(exact("minus_e4_rejected", "-E4 is not in the monodromy group", !is_in_M(-e4).member));

    const MatrixSet one = bfs_closure(1);
    out.push_back(exact("bfs1_size=9", "generators and inverses with M1, M2 self-inverse", one.size() == 9));

    const MatrixSet eight = bfs_closure(8);
    bool all_members = true;
    for (std::size_t k = 0; k < eight.size() && all_members; ++k)
        all_members = is_in_M(eight[k]).member;
    out.push_back(exact("bfs8_membership", "block and parity characterisation of the monodromy group", all_members));

    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> len(0, 20), gen(1, 5), sign(0, 1);
    bool round = true;
    for (int t = 0; t < 200; ++t) {
        Word w;
        const int n = len(rng);
        for (int k = 0; k < n; ++k)
            w.push_back({gen(rng), sign(rng) ? 1 : -1});
        const GaussianMatrix m = evaluate(w);
        round = round && evaluate(decompose(m)) == m;
    }
    out.push_back(exact("decompose_round_trip", "constructive word for members of the monodromy group", round));
    out.push_back(exact("igusa_index=3", "[SL2(Z) : Igusa group] = 3", igusa_index() == 3));
    out.push_back(exact("igusa_gamma2_index=2", "[Igusa group : Gamma(2)] = 2", igusa_gamma2_index() == 2));
}

json check_json(const Check& c)
{
    json j;
    j["check_id"] = c.check_id;
    j["paper_anchor"] = c.paper_anchor;
    if (std::holds_alternative<bool>(c.value))
        j["residual_or_bool"] = std::get<bool>(c.value);
    else
        j["residual_or_bool"] = std::get<double>(c.value);
    j["threshold"] = c.threshold ? json(*c.threshold) : json(nullptr);
    j["pass"] = c.pass;
    return j;
}

json image_json(const SchwarzImage& img, const DomainPoint& x, const Tolerance& tol)
{
    json j;
    j["y1"] = cjson(img.y1);
    j["y2"] = cjson(img.y2);
    j["tau"] = cjson(img.tau);
    j["z"] = cjson(x.z());
    j["image_residual"] = image_residual(img, tol);
    j["validated"] = img.validated;
    return j;
}

std::string read_input(const std::string& input)
{
    if (input == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    const std::string t = trim(input);
    if (!t.empty() && (t[0] == '{' || t[0] == '['))
        return t;
    std::ifstream in(input);
    if (!in)
        throw ParseError("cannot read matrix input '" + input + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

GaussianMatrix parse_matrix_input(const std::string& input)
{
    if (input.size() == 2 && input[0] == 'M' && input[1] >= '1' && input[1] <= '5')
        return generators()[input[1] - '1'];
    if (input == "E4")
        return GaussianMatrix::identity();
    json j;
    try {
        j = json::parse(read_input(input));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (j.is_array())
        return evaluate(word_from_json(j));
    return matrix_from_json(j);
}

json block_json(const std::array<std::array<std::int64_t, 2>, 2>& b)
{
    return json::array({json::array({b[0][0], b[0][1]}), json::array({b[1][0], b[1][1]})});
}

} // namespace

GridSpec parse_grid(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(trim(item));
    if (parts.size() != 3)
        throw ParseError("grid must look like a:b:step, got '" + text + "'");
    GridSpec g{parse_double("grid", parts[0]), parse_double("grid", parts[1]), parse_double("grid", parts[2])};
    if (!(g.step > 0.0) || !(g.stop >= g.start) || !std::isfinite(g.stop))
        throw ParseError("grid needs step > 0 and a <= b");
    if ((g.stop - g.start) / g.step > 1e5)
        throw ParseError("grid has too many points");
    return g;
}

std::vector<DomainPoint> grid_points(const GridSpec& g, bool unvalidated)
{
    std::vector<double> axis;
    const int n = static_cast<int>(std::floor((g.stop - g.start) / g.step + 1e-3)) + 1;
    for (int k = 0; k < n; ++k)
        axis.push_back(std::round((g.start + k * g.step) * 1e12) / 1e12);
    std::vector<DomainPoint> out;
    for (double x1 : axis)
        for (double x2 : axis) {
            if (!unvalidated && !(x1 > 0.0 && x2 > 0.0 && x1 + x2 < 1.0 - 1e-12))
                continue;
            try {
                out.emplace_back(x1, x2);
            } catch (const DomainError&) {
                // on the singular divisor
            }
        }
    return out;
}

void apply_config_text(const std::string& text, RunConfig& cfg, const std::set<std::string>& overridden)
{
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) + " is not key=value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '-', '_');
        if (overridden.count(key))
            continue;
        if (key == "abs_eps")
            cfg.tol.abs_eps = parse_double(key, value);
        else if (key == "rel_eps")
            cfg.tol.rel_eps = parse_double(key, value);
        else if (key == "quad_levels")
            cfg.tol.quad_levels = static_cast<int>(parse_double(key, value));
        else if (key == "theta_trunc_eps")
            cfg.tol.theta_trunc_eps = parse_double(key, value);
        else if (key == "format") {
            if (value != "json" && value != "csv")
                throw ParseError("format must be json or csv");
            cfg.format = value;
        } else if (key == "unvalidated")
            cfg.unvalidated = parse_bool(key, value);
        else if (key == "emit_table")
            cfg.emit_table = parse_bool(key, value);
        else if (key == "grid")
            cfg.grid = parse_grid(value);
        else
            throw ParseError("unknown config key '" + key + "'");
    }
}

void apply_config_file(const std::string& path, RunConfig& cfg, const std::set<std::string>& overridden)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read config file '" + path + "'");
    apply_config_text(std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()), cfg,
                      overridden);
}

std::string format_number(double x)
{
    char buf[40];
    if (x == 0.0)
        return "0";
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string render_json(const json& j)
{
    std::string out;
    emit(j, out);
    return out + "\n";
}

std::vector<Check> run_suite(const std::string& suite, const RunConfig& cfg)
{
    cfg.tol.validate();
    std::vector<Check> out;
    const bool all = suite == "all";
    if (!all && suite != "theta" && suite != "periods" && suite != "curve" && suite != "schwarz" &&
        suite != "monodromy")
        throw ParseError("unknown verify suite '" + suite + "'");
    if (all || suite == "theta")
        theta_suite(cfg, out);
    if (all || suite == "periods")
        periods_suite(cfg, out);
    if (all || suite == "curve")
        curve_suite(cfg, out);
    if (all || suite == "schwarz")
        schwarz_suite(cfg, out);
    if (all || suite == "monodromy")
        monodromy_suite(cfg, out);
    return out;
}

Output cmd_forward(const std::optional<std::pair<double, double>>& x, const RunConfig& cfg)
{
    cfg.tol.validate();
    if (x) {
        const DomainPoint p = checked_point(x->first, x->second, cfg);
        const SchwarzImage img = forward(p, cfg.tol);
        const json j = image_json(img, p, cfg.tol);
        if (!want_csv(cfg))
            return {render_json(j)};
        return {csv({"y1_re", "y1_im", "y2_re", "y2_im", "tau_re", "tau_im", "z_re", "z_im", "image_residual",
                     "validated"},
                    {{num(img.y1.real()), num(img.y1.imag()), num(img.y2.real()), num(img.y2.imag()),
                      num(img.tau.real()), num(img.tau.imag()), num(p.z().real()), num(p.z().imag()),
                      num(j["image_residual"].get<double>()), img.validated ? "true" : "false"}})};
    }
    return cmd_table(cfg);
}

Output cmd_table(const RunConfig& cfg)
{
    cfg.tol.validate();
    const auto pts = config_grid(cfg);
    const auto imgs = forward_batch(pts, cfg.tol);
    if (!want_csv(cfg)) {
        json rows = json::array();
        for (std::size_t k = 0; k < pts.size(); ++k) {
            json j = image_json(imgs[k], pts[k], cfg.tol);
            j["x1"] = cjson(pts[k].x1());
            j["x2"] = cjson(pts[k].x2());
            rows.push_back(j);
        }
        return {render_json(json{{"points", rows}})};
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const SchwarzImage& img = imgs[k];
        rows.push_back({num(pts[k].x1().real()), num(pts[k].x2().real()), num(img.y1.real()), num(img.y1.imag()),
                        num(img.y2.real()), num(img.y2.imag()), num(img.tau.real()), num(img.tau.imag()),
                        num(pts[k].z().real()), num(image_residual(img, cfg.tol)),
                        img.validated ? "true" : "false"});
    }
    return {csv({"x1", "x2", "y1_re", "y1_im", "y2_re", "y2_im", "tau_re", "tau_im", "z", "image_residual",
                 "validated"},
                rows)};
}

Output cmd_inverse(cplx y1, cplx y2, cplx tau, const RunConfig& cfg)
{
    cfg.tol.validate();
    SchwarzImage img;
    img.y1 = y1;
    img.y2 = y2;
    img.tau = tau;
    const DomainPoint x = inverse(img, cfg.tol);
    if (want_csv(cfg))
        return {csv({"x1_re", "x1_im", "x2_re", "x2_im"},
                    {{num(x.x1().real()), num(x.x1().imag()), num(x.x2().real()), num(x.x2().imag())}})};
    return {render_json(json{{"x1", cjson(x.x1())}, {"x2", cjson(x.x2())}})};
}

Output cmd_periods(const std::optional<std::pair<double, double>>& x, const RunConfig& cfg)
{
    cfg.tol.validate();
    std::vector<DomainPoint> pts;
    if (x)
        pts.push_back(checked_point(x->first, x->second, cfg));
    else
        pts = config_grid(cfg);
    std::vector<PeriodVector> pv;
    for (const DomainPoint& p : pts)
        pv.push_back(periods(p, cfg.tol));
    if (want_csv(cfg)) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::vector<std::string> r = {num(pts[k].x1().real()), num(pts[k].x2().real())};
            for (cplx f : {pv[k].f1, pv[k].f2, pv[k].f3, pv[k].f4}) {
                r.push_back(num(f.real()));
                r.push_back(num(f.imag()));
            }
            r.push_back(pv[k].validated ? "true" : "false");
            rows.push_back(r);
        }
        return {csv({"x1", "x2", "f1_re", "f1_im", "f2_re", "f2_im", "f3_re", "f3_im", "f4_re", "f4_im",
                     "validated"},
                    rows)};
    }
    auto one = [](const PeriodVector& f, const DomainPoint& p) {
        return json{{"f1", cjson(f.f1)}, {"f2", cjson(f.f2)}, {"f3", cjson(f.f3)},
                    {"f4", cjson(f.f4)}, {"validated", f.validated}, {"z", cjson(p.z())}};
    };
    if (x)
        return {render_json(one(pv[0], pts[0]))};
    json rows = json::array();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        json j = one(pv[k], pts[k]);
        j["x1"] = cjson(pts[k].x1());
        j["x2"] = cjson(pts[k].x2());
        rows.push_back(j);
    }
    return {render_json(json{{"points", rows}})};
}

Output cmd_verify(const std::string& suite, const RunConfig& cfg)
{
    const auto checks = run_suite(suite, cfg);
    bool all_pass = true;
    for (const Check& c : checks)
        all_pass = all_pass && c.pass;
    const int code = all_pass ? kExitOk : kExitVerifyFailed;
    if (want_csv(cfg)) {
        std::vector<std::vector<std::string>> rows;
        for (const Check& c : checks) {
            const std::string v = std::holds_alternative<bool>(c.value)
                                      ? (std::get<bool>(c.value) ? "true" : "false")
                                      : num(std::get<double>(c.value));
            rows.push_back({c.check_id, c.paper_anchor, v, c.threshold ? num(*c.threshold) : "",
                            c.pass ? "true" : "false"});
        }
        return {csv({"check_id", "paper_anchor", "residual_or_bool", "threshold", "pass"}, rows), code};
    }
    json list = json::array();
    for (const Check& c : checks)
        list.push_back(check_json(c));
    return {render_json(json{{"suite", suite}, {"checks", list}, {"pass", all_pass}}), code};
}

Output cmd_monodromy(const std::string& action, const std::string& input, bool signed_group, const RunConfig& cfg)
{
    const GaussianMatrix g = parse_matrix_input(input);
    if (action == "check") {
        const MembershipWitness w = is_in_M(g);
        json j;
        j["member"] = w.member;
        j["matrix"] = matrix_to_json(g);
        if (w.member)
            j["witness"] = json{{"n1", w.n1}, {"n2", w.n2}, {"G", block_json(w.G)}, {"L", block_json(w.L)}};
        else
            j["reason"] = w.reason;
        if (want_csv(cfg))
            return {csv({"member", "n1", "n2"}, {{w.member ? "true" : "false", w.member ? std::to_string(w.n1) : "",
                                                  w.member ? std::to_string(w.n2) : ""}})};
        return {render_json(j)};
    }
    if (action == "decompose") {
        SignedWord sw;
        if (signed_group)
            sw = decompose_signed(g);
        else
            sw.word = decompose(g);
        GaussianMatrix back = evaluate(sw.word);
        if (sw.sign < 0)
            back = -back;
        const bool round_trip = back == g;
        if (!round_trip)
            throw Error("decomposition failed its round-trip check");
        if (want_csv(cfg))
            return {csv({"sign", "word"}, {{std::to_string(sw.sign), word_to_string(sw.word)}})};
        return {render_json(json{{"word", word_to_json(sw.word)},
                                 {"word_string", word_to_string(sw.word)},
                                 {"sign", sw.sign},
                                 {"round_trip", round_trip}})};
    }
    throw ParseError("monodromy action must be check or decompose");
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ParseError*>(&e))
        return kExitParse;
    if (dynamic_cast<const NotOnImage*>(&e))
        return kExitNotOnImage;
    if (dynamic_cast<const NonConvergent*>(&e))
        return kExitConvergence;
    if (dynamic_cast<const nlohmann::json::exception*>(&e))
        return kExitParse;
    return kExitDomain;
}

} // namespace schwarzf2::cli
