#pragma once

#include <utility>

#include "schwarzf2/numerics.hpp"

namespace schwarzf2 {

struct F2Params {
    cplx a, b1, b2, c1, c2;

    // Throws PoleError when c1 or c2 is a non-positive integer.
    void validate() const;

    // (1/2, 1/4, 1/4, 1/2, 1/2), the parameters studied throughout.
    static F2Params fixed();
};

// Same tuple with exact rational entries, for the exact reducibility test.
struct RationalF2Params {
    Rational a, b1, b2, c1, c2;

    static RationalF2Params fixed();
};

class DomainPoint {
public:
    // Throws DomainError when (x1, x2) lies on the singular divisor.
    DomainPoint(cplx x1, cplx x2);

    cplx x1() const { return x1_; }
    cplx x2() const { return x2_; }
    cplx z() const { return z_; }
    bool real_chamber() const { return real_chamber_; }

private:
    cplx x1_, x2_, z_;
    bool real_chamber_;
};

cplx gauss_f(cplx a, cplx b, cplx c, cplx x, const Tolerance& tol = {});

cplx appell_f2(const F2Params& p, cplx x1, cplx x2, const Tolerance& tol = {});

cplx appell_f1(cplx a, cplx b1, cplx b2, cplx c, cplx x1, cplx x2, const Tolerance& tol = {});

// Value and partial derivatives of a function of (x1, x2) at one point.
struct Jet2 {
    cplx f, f1, f2, f11, f12, f22;
};

// The two second-order operators of the Appell F2 system applied to a jet.
std::pair<cplx, cplx> f2_operators(const F2Params& p, cplx x1, cplx x2, const Jet2& jet);

// Magnitudes of both F2 operators applied to appell_f2, with derivatives
// taken by central differences of step h.
std::pair<double, double> f2_pde_residual(const F2Params& p, const DomainPoint& x, double h,
                                          const Tolerance& tol = {});

bool is_reducible(const RationalF2Params& p);
bool is_reducible(const F2Params& p);

// Euler double integral of the fixed-parameter F2 over the unit square.
cplx euler_d1(double x1, double x2, const Tolerance& tol = {});

// B(1/4,1/4)^2 ((1-x1)(1-x2))^{-1/4} F(1/4,1/4,1/2;1-z), the one-variable
// form of euler_d1.
cplx euler_d1_reduction(const DomainPoint& x, const Tolerance& tol = {});

} // namespace schwarzf2
