#pragma once

#include <utility>

#include "schwarzf2/numerics.hpp"

namespace schwarzf2 {

struct ThetaChar {
    int k = 0;
    int l = 0;
};

inline constexpr ThetaChar kTheta00{0, 0};
inline constexpr ThetaChar kTheta01{0, 1};
inline constexpr ThetaChar kTheta10{1, 0};
inline constexpr ThetaChar kTheta11{1, 1};

// Number N of terms on each side of n = 0 kept in the theta series.
int theta_terms(cplx y, cplx tau, const Tolerance& tol = {});

struct ThetaValue {
    cplx value;
    double abs_sum; // sum of |terms|, the scale of the rounding error
};

// Theta function with characteristics, summed over n in [-n_terms, n_terms]
// (n_terms < 0 selects theta_terms()).
ThetaValue theta_eval(ThetaChar c, cplx y, cplx tau, const Tolerance& tol = {}, int n_terms = -1);

cplx theta(ThetaChar c, cplx y, cplx tau, const Tolerance& tol = {});
cplx theta_const(ThetaChar c, cplx tau, const Tolerance& tol = {});

enum class BasicIdentity { quasi_period, parity, half_one, half_tau, half_tau_plus_one };

// |LHS - RHS| of one transformation law, divided by the larger series scale
// of the two sides (at least 1).
double basic_identity_residual(BasicIdentity id, ThetaChar c, cplx y, cplx tau, int p, int q,
                               const Tolerance& tol = {});

enum class ModularKind { shift2, inversion };

// Residual of theta(y, tau + 2) or theta(y/tau, -1/tau) against theta(y, tau)
// for the characteristics (0,0) and (1,1), scaled as above.
double modular_residual(ModularKind kind, ThetaChar c, cplx y, cplx tau, const Tolerance& tol = {});

// |theta01^4 + theta10^4 - theta00^4| relative to the sum of the three
// fourth-power moduli.
double jacobi_identity_residual(cplx tau, const Tolerance& tol = {});

// Central difference of theta11/theta00 in y.
cplx theta11_ratio_derivative(cplx y, cplx tau, double h, const Tolerance& tol = {});

// Derivative magnitudes at y = 1/2 and y = tau/2.
std::pair<double, double> theta11_ratio_derivative_check(cplx tau, double h, const Tolerance& tol = {});

// Largest deviation from evenness in y of theta11/theta00 shifted by 1/2 and
// by tau/2.
double shifted_ratio_evenness_residual(cplx y, cplx tau, const Tolerance& tol = {});

} // namespace schwarzf2
