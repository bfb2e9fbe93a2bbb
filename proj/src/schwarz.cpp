#include "schwarzf2/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "schwarzf2/periods.hpp"
#include "schwarzf2/theta.hpp"

namespace schwarzf2 {

namespace {

void require_upper(cplx tau)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("tau must lie in the upper half plane");
}

struct ThetaQuotients {
    cplx c;     // th00^4 / (4 th01^2 th10^2) at y = 0
    cplx t1, t2; // th01 th10 / th00^2 at y1 and y2
};

ThetaQuotients quotients(cplx y1, cplx y2, cplx tau, const Tolerance& tol)
{
    const cplx a = theta_const(kTheta00, tau, tol);
    const cplx b = theta_const(kTheta01, tau, tol);
    const cplx c = theta_const(kTheta10, tau, tol);
    auto t = [&](cplx y) {
        const cplx d = theta(kTheta00, y, tau, tol);
        return theta(kTheta01, y, tau, tol) * theta(kTheta10, y, tau, tol) / (d * d);
    };
    return {std::pow(a, 4) / (4.0 * b * b * c * c), t(y1), t(y2)};
}

} // namespace

const Matrix4c& q_matrix()
{
    static const Matrix4c q = {{
        {cplx(-1.0, 0.0), cplx(0.0, -1.0), 0.0, 0.0},
        {0.0, 1.0, 0.0, 0.0},
        {0.0, 0.5, cplx(0.25, -0.25), cplx(-0.25, 0.25)},
        {0.0, cplx(0.0, -0.5), cplx(0.25, 0.25), cplx(0.25, 0.25)},
    }};
    return q;
}

SchwarzImage forward(const DomainPoint& x, const Tolerance& tol)
{
    const PeriodVector f = periods(x, tol);
    SchwarzImage img;
    img.tau = -f.f1 / f.f2 - kI;
    img.y1 = cplx(0.25, -0.25) * (f.f3 - f.f4) / f.f2 + 0.5;
    img.y2 = cplx(0.25, 0.25) * (f.f3 + f.f4) / f.f2 - 0.5 * kI;
    img.validated = f.validated;
    if (!(img.tau.imag() > 0.0))
        throw NonConvergent("period ratio left the upper half plane");
    return img;
}

std::vector<SchwarzImage> forward_batch(const std::vector<DomainPoint>& xs, const Tolerance& tol, unsigned threads)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<SchwarzImage> out(xs.size());
    const std::size_t n = xs.size();
    const std::size_t chunk = (n + threads - 1) / std::max<std::size_t>(threads, 1);
    std::vector<std::future<void>> jobs;
    for (std::size_t start = 0; start < n; start += std::max<std::size_t>(chunk, 1)) {
        const std::size_t stop = std::min(n, start + std::max<std::size_t>(chunk, 1));
        jobs.push_back(std::async(std::launch::async, [&, start, stop] {
            for (std::size_t k = start; k < stop; ++k)
                out[k] = forward(xs[k], tol);
        }));
    }
    for (auto& j : jobs)
        j.get();
    return out;
}

std::array<cplx, 4> modified_solution_vector(const DomainPoint& x, const Tolerance& tol)
{
    const PeriodVector f = periods(x, tol);
    const std::array<cplx, 4> v = {f.f1, f.f2, f.f3, f.f4};
    const Matrix4c& q = q_matrix();
    std::array<cplx, 4> out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out[r] += q[r][c] * v[c];
    return out;
}

double image_residual(const SchwarzImage& img, const Tolerance& tol)
{
    require_upper(img.tau);
    const cplx a1 = theta(kTheta00, img.y1, img.tau, tol);
    const cplx b1 = theta(kTheta11, img.y1, img.tau, tol);
    const cplx a2 = theta(kTheta00, img.y2, img.tau, tol);
    const cplx b2 = theta(kTheta11, img.y2, img.tau, tol);
    return std::abs(a1 * b2 - kI * b1 * a2) / std::abs(a1 * a2);
}

cplx z_of_tau(cplx tau, const Tolerance& tol)
{
    require_upper(tau);
    const cplx a = theta_const(kTheta00, tau, tol);
    const cplx b = theta_const(kTheta01, tau, tol);
    const cplx c = theta_const(kTheta10, tau, tol);
    const cplx a2 = a * a;
    const cplx a4 = a2 * a2;
    return 4.0 * std::pow(b, 4) * std::pow(c, 4) / (a4 * a4);
}

cplx one_minus_v(cplx y1, cplx y2, cplx tau, const Tolerance& tol)
{
    require_upper(tau);
    const ThetaQuotients q = quotients(y1, y2, tau, tol);
    const cplx s = q.t1 + q.t2;
    return q.c * s * s;
}

DomainPoint inverse(const SchwarzImage& img, const Tolerance& tol)
{
    require_upper(img.tau);
    const double res = image_residual(img, tol);
    if (!(res < kNotOnImageThreshold))
        throw NotOnImage("image equation residual " + std::to_string(res) + " is not below 1e-6");
    const ThetaQuotients q = quotients(img.y1, img.y2, img.tau, tol);
    const cplx plus = q.t1 + q.t2;
    const cplx minus = q.t2 - q.t1;
    return DomainPoint(q.c * plus * plus, q.c * minus * minus);
}

} // namespace schwarzf2
