#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schwarzf2/periods.hpp"

using namespace schwarzf2;

namespace {

// Closed forms evaluated with 40-digit arithmetic (mpmath):
//   E  = B(1/4,3/4) F(1/4,1/4;1;z)       (eta1 over (0,1))
//   F  = B(3/4,1/4) F(3/4,3/4;1;z)       (eta2 over (0,1))
//   IA = B(1/4,1/4) F(1/4,1/4;1/2;1-z)   (eta1 magnitude over (-oo,0))
//   tau = i (sqrt(2) IA / E - 1)
struct Row {
    double z, E, F, IA, tau_im;
};
constexpr Row kRows[] = {
    {0.1, 4.4718010015386655672, 4.7136921359614355382, 9.6263539185843172954, 2.0443484097751881786},
    {0.3, 4.5380149394578689925, 5.4239652852269313039, 8.5563610866607981257, 1.6664790783528524367},
    {0.5, 4.6204798226285949225, 6.5343452298325915733, 8.0673615331837017578, 1.4692180316253004926},
    {0.7, 4.7320933525043429948, 8.6395809112895810205, 7.7492980229242062178, 1.3159226892873022659},
    {0.9, 4.9192983775999379901, 15.556187363186836498, 7.5141834172942293362, 1.1601983216316142681},
};

constexpr PathSegment kSegs[] = {PathSegment::I01, PathSegment::I1_1z, PathSegment::I1z_inf,
                                 PathSegment::Iminf_0};

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

} // namespace

TEST_CASE("segment integrals against closed forms")
{
    for (const Row& r : kRows) {
        CHECK(rel_err(eta_segment(1, PathSegment::I01, r.z), r.E) < 1e-11);
        CHECK(rel_err(eta_segment(2, PathSegment::I01, r.z), r.F) < 1e-11);
        CHECK(rel_err(segment_magnitude(1, PathSegment::Iminf_0, r.z), r.IA) < 1e-11);
        // The substitution v = 1/(z u) maps (1/z, oo) onto the (0,1) integrals.
        CHECK(rel_err(segment_magnitude(1, PathSegment::I1z_inf, r.z), r.E) < 1e-11);
        CHECK(rel_err(segment_magnitude(2, PathSegment::I1z_inf, r.z), r.F) < 1e-11);
        // IA = K + sqrt(2) E with K the magnitude over (1, 1/z).
        const cplx K = segment_magnitude(1, PathSegment::I1_1z, r.z);
        CHECK(rel_err(K + std::sqrt(2.0) * r.E, r.IA) < 1e-11);
    }
}

TEST_CASE("eta_segment examples")
{
    const cplx v = eta_segment(1, PathSegment::I01, 0.37);
    CHECK(v.real() > 0.0);
    CHECK(v.imag() == 0.0);

    // v = -u with u in (0, oo), folded onto (0,1) by u = t/(1-t).
    auto f = [](double, double t, double r) {
        const double u = t / r;
        return cplx(std::pow(u, -0.75) * std::pow(1.0 + u, -0.25) * std::pow(1.0 + u / 2.0, -0.25) / (r * r));
    };
    const cplx oracle = e_phase(-3, 8) * integrate_de(f, 0.0, 1.0, {-0.75, -0.75}, Tolerance{});
    CHECK(std::abs(eta_segment(1, PathSegment::Iminf_0, 0.5) - oracle) < 1e-10);
    CHECK(std::abs(eta_segment(1, PathSegment::Iminf_0, 0.5) - e_phase(-3, 8) * kRows[2].IA) < 1e-10);

    CHECK(std::abs(eta_segment(3, PathSegment::I01, 0.0) - kPi) < 1e-11);
    CHECK_THROWS_AS(eta_segment(1, PathSegment::I1_1z, 0.0), DomainError);
    CHECK_THROWS_AS(eta_segment(1, PathSegment::I01, 2.0), BranchError);
    CHECK_THROWS_AS(eta_segment(1, PathSegment::Iminf_0, -0.5), BranchError);
    CHECK_THROWS_AS(eta_segment(4, PathSegment::I01, 0.5), DomainError);
}

TEST_CASE("segment integrals around the real line sum to zero")
{
    for (int j = 1; j <= 3; ++j)
        for (double z : {0.2, 0.5, 0.8}) {
            cplx total = 0.0;
            double scale = 0.0;
            for (PathSegment s : kSegs) {
                total += eta_segment(j, s, z);
                scale += std::abs(eta_segment(j, s, z));
            }
            CHECK(std::abs(total) < 1e-10 * scale);
        }
}

TEST_CASE("segment homology labels agree with the period values")
{
    for (double z : {0.25, 0.6}) {
        for (int j = 1; j <= 2; ++j) {
            const cplx per[4] = {alpha_period(j, 1, z), alpha_period(j, 2, z), beta_period(j, 1, z),
                                 beta_period(j, 2, z)};
            for (PathSegment s : kSegs) {
                const auto c = segment_homology(s).coords();
                const cplx from_label = c[0] * per[0] + c[1] * per[1] + c[2] * per[2] + c[3] * per[3];
                // (1 - sigma^2) doubles eta1 and eta2.
                CHECK(std::abs(from_label - 2.0 * eta_segment(j, s, z)) < 1e-10 * std::abs(per[2]));
            }
        }
    }
}

TEST_CASE("beta and alpha periods")
{
    const double z = 0.4;
    CHECK(std::abs(beta_period(1, 1, z) - 2.0 * eta_segment(1, PathSegment::I01, z)) < 1e-14);
    CHECK(std::abs(beta_period(1, 2, z) + kI * beta_period(1, 1, z)) < 1e-14);
    CHECK(std::abs(beta_period(2, 2, z) - kI * beta_period(2, 1, z)) < 1e-14);
    const cplx s01 = eta_segment(1, PathSegment::I01, z);
    const cplx s11z = eta_segment(1, PathSegment::I1_1z, z);
    CHECK(std::abs(alpha_period(1, 1, z) - (2.0 * (1.0 + kI) * (s01 + s11z) - 2.0 * s01)) < 1e-13);
    CHECK_THROWS_AS(beta_period(3, 1, z), DomainError);
    CHECK_THROWS_AS(alpha_period(1, 3, z), DomainError);
}

TEST_CASE("tau is purely imaginary and agrees between the two eigenforms")
{
    for (const Row& r : kRows) {
        const cplx t1 = tau_from(1, r.z);
        const cplx t2 = tau_from(2, r.z);
        CHECK(std::abs(t1 - t2) < 1e-9);
        CHECK(std::abs(t1.real()) < 1e-9);
        CHECK(t1.imag() > 0.0);
        CHECK(std::abs(t1.imag() - r.tau_im) < 1e-10);
    }
}

TEST_CASE("periods on the real chamber")
{
    const DomainPoint x(0.2, 0.3);
    const PeriodVector p = periods(x);
    CHECK(p.validated);
    CHECK(p.f1.real() > 0.0);
    CHECK(std::abs(p.f1.imag()) < 1e-14 * std::abs(p.f1));
    CHECK(std::abs(p.f2.real()) < 1e-14 * std::abs(p.f2));
    CHECK(p.f2.imag() > 0.0);
    const cplx r3 = p.f3 / e_phase(3, 8);
    CHECK(r3.real() > 0.0);
    CHECK(std::abs(r3.imag()) < 1e-13 * std::abs(r3));
    const cplx tau = -p.f1 / p.f2 - kI;
    CHECK(std::abs(tau.real()) < 1e-12);
    CHECK(std::abs(tau - tau_from(1, x.z())) < 1e-10);

    const PeriodVector q = periods(DomainPoint(0.3, 0.3));
    CHECK(std::abs(q.f3 - q.f4) < 1e-14 * std::abs(q.f3));

    // f1 agrees with the product form B(1/4,1/4)^2 ((1-x1)(1-x2))^{-1/4} F(1/4,1/4,1/2;1-z).
    CHECK(rel_err(p.f1, euler_d1_reduction(x)) < 1e-11);
}

TEST_CASE("periods are bit-identical across repeated concurrent evaluation")
{
    const DomainPoint x(0.15, 0.45);
    const PeriodVector a = periods(x);
    const PeriodVector b = periods(x);
    CHECK(a.f1 == b.f1);
    CHECK(a.f2 == b.f2);
    CHECK(a.f3 == b.f3);
    CHECK(a.f4 == b.f4);
    const cplx j3 = positive_partial_01(1, 1.0 - 0.15, x.z(), Tolerance{});
    CHECK(a.f3 == e_phase(3, 8) * beta_fn(0.25, 0.25) * std::pow((1.0 - 0.15) * (1.0 - 0.45), -0.25) * j3);
}

TEST_CASE("complex x is flagged and continuous with the chamber")
{
    const PeriodVector p = periods(DomainPoint(cplx(0.2, 1e-7), 0.3));
    const PeriodVector q = periods(DomainPoint(0.2, 0.3));
    CHECK_FALSE(p.validated);
    CHECK(std::abs(p.f1 - q.f1) < 1e-5);
    CHECK(std::abs(p.f2 - q.f2) < 1e-5);
    CHECK(std::abs(p.f3 - q.f3) < 1e-5);
}

TEST_CASE("path integral along the real line")
{
    const double z = 0.5;
    CHECK(std::abs(eta_path_integral(1, 1.0, z) - eta_segment(1, PathSegment::I01, z)) < 1e-12);
    CHECK(std::abs(eta_path_integral(1, 2.0, z) -
                   (eta_segment(1, PathSegment::I01, z) + eta_segment(1, PathSegment::I1_1z, z))) < 1e-11);
    // Split point handling on both halves of each segment.
    for (double v : {0.3, 0.7, 1.2, 1.9}) {
        const double h = 1e-6;
        const cplx d = (eta_path_integral(1, v + h, z) - eta_path_integral(1, v - h, z)) / (2 * h);
        const double w4 = v * v * v * (1 - v) * (1 - v * z);
        const cplx w = v < 1 ? cplx(std::pow(w4, 0.25)) : std::pow(-w4, 0.25) * e_phase(1, 8) * -kI;
        CHECK(std::abs(d - 1.0 / w) < 1e-6);
    }
    CHECK_THROWS_AS(eta_path_integral(1, 2.5, z), DomainError);
}

TEST_CASE("lambda classification")
{
    CHECK(lambda_classify(LambdaVector::integral(1, 1, 1, 1)) == LambdaClass::in_sublattice_1ms2);
    CHECK(lambda_classify(LambdaVector::from_twice({1, 1, 1, 1})) == LambdaClass::in_Hminus);
    CHECK(lambda_classify(LambdaVector::integral(1, 0, 0, 0)) == LambdaClass::in_Lambda);
    CHECK(lambda_classify(LambdaVector::from_twice({1, 0, 0, 0})) == LambdaClass::outside);
    for (PathSegment s : kSegs)
        CHECK(lambda_classify(segment_homology(s)) != LambdaClass::outside);
    CHECK(segment_homology(PathSegment::I01) == LambdaVector::integral(0, 0, 1, 0));
    LambdaVector total;
    for (PathSegment s : kSegs)
        total = total + segment_homology(s);
    CHECK(total == LambdaVector());
    CHECK(lattice_index_chain() == std::pair<long, long>{2, 2});
}

TEST_CASE("sigma action and the intersection form")
{
    const LambdaVector basis[4] = {LambdaVector::integral(1, 0, 0, 0), LambdaVector::integral(0, 1, 0, 0),
                                   LambdaVector::integral(0, 0, 1, 0), LambdaVector::integral(0, 0, 0, 1)};
    for (const auto& b : basis) {
        CHECK(sigma_on_lambda(sigma_on_lambda(sigma_on_lambda(sigma_on_lambda(b)))) == b);
        CHECK(intersection(b, b) == 0);
        for (const auto& c : basis) {
            CHECK(intersection(sigma_on_lambda(b), sigma_on_lambda(c)) == intersection(b, c));
            CHECK(intersection(b, c) == -intersection(c, b));
        }
    }
    CHECK(intersection(basis[2], basis[0]) == 2);
    CHECK(intersection(basis[0], basis[2]) == -2);
    CHECK(sigma_on_lambda(basis[0]) == basis[1]);
    CHECK(sigma_on_lambda(basis[1]) == basis[0] * -1);
    CHECK_THROWS_AS(intersection(LambdaVector::from_twice({1, 1, 1, 1}), basis[0]), DomainError);
}
