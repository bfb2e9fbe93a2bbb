#pragma once

#include <array>
#include <utility>

#include "schwarzf2/hypergeo.hpp"
#include "schwarzf2/numerics.hpp"

namespace schwarzf2 {

// Real segments of the v-line joining the ramification values 0, 1, 1/z, oo.
enum class PathSegment { I01, I1_1z, I1z_inf, Iminf_0 };

const char* segment_name(PathSegment seg);

// Homology vector over the basis (alpha1, alpha2, beta1, beta2), stored as
// doubled integer coordinates; half-integers are exact.
class LambdaVector {
public:
    LambdaVector() = default;
    static LambdaVector from_twice(std::array<long, 4> twice) { return LambdaVector(twice); }
    static LambdaVector integral(long p1, long p2, long q1, long q2)
    {
        return LambdaVector({2 * p1, 2 * p2, 2 * q1, 2 * q2});
    }

    const std::array<long, 4>& twice() const { return twice_; }
    std::array<double, 4> coords() const;
    bool integral_coords() const;

    LambdaVector operator+(const LambdaVector& o) const;
    LambdaVector operator*(long k) const;
    bool operator==(const LambdaVector& o) const { return twice_ == o.twice_; }

private:
    explicit LambdaVector(std::array<long, 4> twice) : twice_(twice) {}
    std::array<long, 4> twice_{0, 0, 0, 0};
};

enum class LambdaClass { in_sublattice_1ms2, in_Lambda, in_Hminus, outside };

struct PeriodVector {
    cplx f1, f2, f3, f4;
    // False when x is off the real chamber; branch labels are then principal
    // continuations and carry no homology guarantee.
    bool validated = true;
};

// Integral of eta_j (j = 1: dv/w, j = 2: v^2 dv/w^3, j = 3: v dv/w^2) over a
// real segment, on the sheet obtained from the positive branch on (0,1) by
// continuation through the upper half v-plane.
cplx eta_segment(int j, PathSegment seg, cplx z, const Tolerance& tol = {});

// Constant phase of eta_j on a segment relative to its positive integrand.
cplx segment_phase(int j, PathSegment seg);

// Integral over the segment of the positive (sign-normalised) integrand.
cplx segment_magnitude(int j, PathSegment seg, cplx z, const Tolerance& tol = {});

// Integral of eta_j from v = 0 to v = end along the real axis on the same
// sheet; end may lie in (0, 1] or in (1, 1/z].
cplx eta_path_integral(int j, double end, double z, const Tolerance& tol = {});

// Integral of the positive eta_j integrand from 0 to a complex end point along
// the straight segment, principal branches throughout.
cplx positive_partial_01(int j, cplx end, cplx z, const Tolerance& tol = {});

cplx beta_period(int j, int i, cplx z, const Tolerance& tol = {});
cplx alpha_period(int j, int i, cplx z, const Tolerance& tol = {});

// tau computed from (alpha_j, beta_j, eta_j).
cplx tau_from(int j, cplx z, const Tolerance& tol = {});

// The four periods f1..f4 at x. The four integrals run concurrently.
PeriodVector periods(const DomainPoint& x, const Tolerance& tol = {});

LambdaClass lambda_classify(const LambdaVector& v);
const char* lambda_class_name(LambdaClass c);
LambdaVector sigma_on_lambda(const LambdaVector& v);

// Intersection number through the Gram matrix 2 J4; needs integral coords.
long intersection(const LambdaVector& u, const LambdaVector& v);

LambdaVector segment_homology(PathSegment seg);

// ([H^- : Lambda], [Lambda : (1 - sigma^2) H]) by counting classes mod 4 of
// the doubled coordinates.
std::pair<long, long> lattice_index_chain();

} // namespace schwarzf2
