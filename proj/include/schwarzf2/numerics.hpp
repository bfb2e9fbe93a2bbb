#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <utility>

#include "schwarzf2/errors.hpp"

namespace schwarzf2 {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

struct Tolerance {
    double abs_eps = 1e-12;
    double rel_eps = 1e-11;
    int quad_levels = 12;
    double theta_trunc_eps = 1e-16;

    // Throws DomainError unless every field is positive and quad_levels <= 16.
    void validate() const;
};

// Exact rational number with a positive denominator, kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// The root of unity e(q) = exp(2 pi i q).
struct UnitPhase {
    Rational q;

    explicit UnitPhase(Rational q_) : q(q_) {}
    cplx value() const;
};

// Shorthand for UnitPhase(Rational(num, den)).value().
cplx e_phase(std::int64_t num, std::int64_t den);

struct TorusPoint {
    cplx y;
    cplx tau;
};

// Integrand callback for integrate_de. It receives the abscissa t together
// with the distances t - a and b - t, computed without cancellation.
using Integrand = std::function<cplx(double t, double from_a, double to_b)>;

// Tanh-sinh quadrature on the finite interval (a, b). The exponents give the
// algebraic behaviour (t-a)^ea and (b-t)^eb at the two ends.
cplx integrate_de(const Integrand& f, double a, double b,
                  std::pair<double, double> singular_exponents,
                  const Tolerance& tol);

cplx gamma_fn(cplx a);
cplx beta_fn(cplx a, cplx b);

// True when a is within 1e-14 of a non-positive integer.
bool is_nonpositive_integer(cplx a);

// Lattice coordinates (p, q) with y = p*tau + q.
std::pair<double, double> lattice_coords(cplx y, cplx tau);

TorusPoint torus_reduce(const TorusPoint& p);
bool torus_eq(const TorusPoint& p, const TorusPoint& q, const Tolerance& tol);

// Distance between the classes of p and q measured in the y-plane, i.e. the
// minimum of |p.y - q.y - (m tau + n)| over lattice vectors.
double torus_distance(const TorusPoint& p, const TorusPoint& q);

// Principal fourth root. Real x is handled with real arithmetic and a negative
// real argument always receives the phase e(1/8).
cplx principal_root4(cplx x);

} // namespace schwarzf2
