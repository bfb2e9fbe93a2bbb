#include "schwarzf2/theta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace schwarzf2 {

namespace {

void check_char(ThetaChar c)
{
    if ((c.k != 0 && c.k != 1) || (c.l != 0 && c.l != 1))
        throw DomainError("theta characteristics must be 0 or 1");
}

void check_tau(cplx tau)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("tau must have positive imaginary part");
    if (tau.imag() < 0.05)
        throw DomainError("Im tau below 0.05 is not supported");
}

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

cplx neg_i_pow(int e)
{
    static const cplx table[4] = {1.0, -kI, -1.0, kI};
    return table[((e % 4) + 4) % 4];
}

} // namespace

int theta_terms(cplx y, cplx tau, const Tolerance& tol)
{
    check_tau(tau);
    const double tail = std::sqrt(std::max(0.0, -std::log(tol.theta_trunc_eps)) / (kPi * tau.imag()));
    return static_cast<int>(std::ceil(std::abs(y.imag()) / tau.imag() + tail + 2.0));
}

ThetaValue theta_eval(ThetaChar c, cplx y, cplx tau, const Tolerance& tol, int n_terms)
{
    check_char(c);
    check_tau(tau);
    const int N = n_terms < 0 ? theta_terms(y, tau, tol) : n_terms;
    const double kh = 0.5 * c.k;
    const cplx shift = y + 0.5 * c.l;
    auto term = [&](int n) {
        const double m = n + kh;
        return std::exp(kI * kPi * (m * m * tau + 2.0 * m * shift));
    };
    // Smallest terms first, from both ends inwards.
    cplx sum = 0.0;
    double abs_sum = 0.0;
    for (int n = N; n >= 1; --n) {
        const cplx a = term(n), b = term(-n);
        sum += a + b;
        abs_sum += std::abs(a) + std::abs(b);
    }
    const cplx t0 = term(0);
    sum += t0;
    abs_sum += std::abs(t0);
    return {sum, abs_sum};
}

cplx theta(ThetaChar c, cplx y, cplx tau, const Tolerance& tol)
{
    return theta_eval(c, y, tau, tol).value;
}

cplx theta_const(ThetaChar c, cplx tau, const Tolerance& tol)
{
    return theta(c, 0.0, tau, tol);
}

double basic_identity_residual(BasicIdentity id, ThetaChar c, cplx y, cplx tau, int p, int q,
                               const Tolerance& tol)
{
    check_char(c);
    if (p < -3 || p > 3 || q < -3 || q > 3)
        throw DomainError("shift integers must lie in [-3, 3]");
    const int k = c.k, l = c.l;
    cplx arg;
    ThetaChar rhs_char = c;
    cplx factor;
    switch (id) {
    case BasicIdentity::quasi_period:
        arg = y + static_cast<double>(p) * tau + static_cast<double>(q);
        factor = sign_pow(k * q + l * p) * std::exp(-kI * kPi * (static_cast<double>(p * p) * tau + 2.0 * p * y));
        break;
    case BasicIdentity::parity:
        arg = -y;
        factor = sign_pow(k * l);
        break;
    case BasicIdentity::half_one:
        arg = y + 0.5;
        factor = sign_pow(k * l);
        rhs_char = {k, 1 - l};
        break;
    case BasicIdentity::half_tau:
        arg = y + 0.5 * tau;
        factor = neg_i_pow(l) * std::exp(-kI * kPi * (0.25 * tau + y));
        rhs_char = {1 - k, l};
        break;
    case BasicIdentity::half_tau_plus_one:
        arg = y + 0.5 * (tau + 1.0);
        factor = sign_pow(k * l) * neg_i_pow(1 - l) * std::exp(-kI * kPi * (0.25 * tau + y));
        rhs_char = {1 - k, 1 - l};
        break;
    }
    const ThetaValue lhs = theta_eval(c, arg, tau, tol);
    const ThetaValue rhs = theta_eval(rhs_char, y, tau, tol);
    const double scale = std::max({1.0, lhs.abs_sum, std::abs(factor) * rhs.abs_sum});
    return std::abs(lhs.value - factor * rhs.value) / scale;
}

double modular_residual(ModularKind kind, ThetaChar c, cplx y, cplx tau, const Tolerance& tol)
{
    const bool even = c.k == 0 && c.l == 0;
    const bool odd = c.k == 1 && c.l == 1;
    if (!even && !odd)
        throw DomainError("modular laws are implemented for (0,0) and (1,1) only");
    ThetaValue lhs;
    cplx factor;
    if (kind == ModularKind::shift2) {
        lhs = theta_eval(c, y, tau + 2.0, tol);
        factor = even ? cplx(1.0) : kI;
    } else {
        lhs = theta_eval(c, y / tau, -1.0 / tau, tol);
        factor = std::sqrt(-kI * tau) * std::exp(kI * kPi * y * y / tau);
        if (odd)
            factor *= -kI;
    }
    const ThetaValue rhs = theta_eval(c, y, tau, tol);
    const double scale = std::max({1.0, lhs.abs_sum, std::abs(factor) * rhs.abs_sum});
    return std::abs(lhs.value - factor * rhs.value) / scale;
}

double jacobi_identity_residual(cplx tau, const Tolerance& tol)
{
    const cplx t00 = theta_const(kTheta00, tau, tol);
    const cplx t01 = theta_const(kTheta01, tau, tol);
    const cplx t10 = theta_const(kTheta10, tau, tol);
    const double scale = std::pow(std::abs(t00), 4) + std::pow(std::abs(t01), 4) + std::pow(std::abs(t10), 4);
    return std::abs(std::pow(t01, 4) + std::pow(t10, 4) - std::pow(t00, 4)) / scale;
}

cplx theta11_ratio_derivative(cplx y, cplx tau, double h, const Tolerance& tol)
{
    auto ratio = [&](cplx u) { return theta(kTheta11, u, tau, tol) / theta(kTheta00, u, tau, tol); };
    return (ratio(y + h) - ratio(y - h)) / (2.0 * h);
}

std::pair<double, double> theta11_ratio_derivative_check(cplx tau, double h, const Tolerance& tol)
{
    return {std::abs(theta11_ratio_derivative(0.5, tau, h, tol)),
            std::abs(theta11_ratio_derivative(0.5 * tau, tau, h, tol))};
}

double shifted_ratio_evenness_residual(cplx y, cplx tau, const Tolerance& tol)
{
    auto ratio = [&](cplx u) { return theta(kTheta11, u, tau, tol) / theta(kTheta00, u, tau, tol); };
    double worst = 0.0;
    for (cplx s : {cplx(0.5), 0.5 * tau}) {
        const cplx a = ratio(s + y), b = ratio(s - y);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    return worst;
}

} // namespace schwarzf2
