#pragma once

#include <array>
#include <vector>

#include "schwarzf2/hypergeo.hpp"
#include "schwarzf2/numerics.hpp"

namespace schwarzf2 {

struct SchwarzImage {
    cplx y1, y2;
    cplx tau;
    // False for points off the real chamber, where periods use principal
    // branches and carry no homology guarantee.
    bool validated = true;
};

using Matrix4c = std::array<std::array<cplx, 4>, 4>;

// The matrix Q of the modified period map f' = Q f.
const Matrix4c& q_matrix();

// tau = -f1/f2 - i and (y1, y2) = image of P_{1-x1} under the Abel-Jacobi map,
// both assembled from the periods f1..f4.
SchwarzImage forward(const DomainPoint& x, const Tolerance& tol = {});

// Evaluates forward on every point; the work is spread over threads but the
// output order always matches the input order.
std::vector<SchwarzImage> forward_batch(const std::vector<DomainPoint>& xs, const Tolerance& tol = {},
                                        unsigned threads = 0);

std::array<cplx, 4> modified_solution_vector(const DomainPoint& x, const Tolerance& tol = {});

// |th00(y1) th11(y2) - i th11(y1) th00(y2)| / |th00(y1) th00(y2)|.
double image_residual(const SchwarzImage& img, const Tolerance& tol = {});

// 4 th01(0)^4 th10(0)^4 / th00(0)^8.
cplx z_of_tau(cplx tau, const Tolerance& tol = {});

// th00^4 / (4 th01^2 th10^2) * (T(y1) + T(y2))^2 with T = th01 th10 / th00^2.
cplx one_minus_v(cplx y1, cplx y2, cplx tau, const Tolerance& tol = {});

inline constexpr double kNotOnImageThreshold = 1e-6;

// (x1, x2) from the theta quotients. Throws NotOnImage when the image
// residual is at or above kNotOnImageThreshold.
DomainPoint inverse(const SchwarzImage& img, const Tolerance& tol = {});

} // namespace schwarzf2
