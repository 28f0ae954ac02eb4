#include <gtest/gtest.h>

#include <llc/wiener_hopf.hpp>

using namespace llc;

namespace {

const KernelContext& ctx()
{
    static const KernelContext k(derive_constants({0.3, 3.0, 0.3, 1.0}));
    return k;
}

std::vector<double> grid50()
{
    std::vector<double> g;
    for (int i = 0; i < 50; ++i) g.push_back(-10 + 20 * (i + 0.5) / 50);
    return g;
}

}  // namespace

TEST(WienerHopf, QuarterPiIdentity)
{
    for (double ds : {0.1, 0.5, 0.9, 0.01, 0.99}) EXPECT_NEAR(quarter_pi_identity(ds), PI / 4, 1e-10) << ds;
}

TEST(WienerHopf, PsiLargeXi)
{
    const auto& k = ctx();
    for (double x : {1e2, 1e3}) {
        const cplx v = psi_star(x, HalfPlane::UPPER, k);
        const cplx lead = I / (PI * x) * std::log(2 * x / I);
        EXPECT_LT(std::abs(v - lead), 2 * std::log(x) / (x * x * x)) << x;
    }
    EXPECT_LT(std::abs(psi_star(cplx(1e-3, 1e6), HalfPlane::UPPER, k)), 1e-4);
}

TEST(WienerHopf, PsiConjugateSymmetry)
{
    const auto& k = ctx();
    for (cplx z : {cplx(0.4, 0.3), cplx(-2, 1.5), cplx(5, 0.1)}) {
        const cplx up = psi_star(z, HalfPlane::UPPER, k), dn = psi_star(std::conj(z), HalfPlane::LOWER, k);
        EXPECT_LT(std::abs(dn + std::conj(up)), 1e-14 * std::abs(up)) << z;
    }
}

TEST(WienerHopf, B1SelfConvergence)
{
    const auto c = constants_from_reduced(0.5, 0.4);
    const KernelContext k1(c, 1e-10, 1e-13), k2(c, 5e-11, 5e-14);
    const cplx a = b1_contour_integral(0.0, HalfPlane::UPPER, k1), b = b1_contour_integral(0.0, HalfPlane::UPPER, k2);
    EXPECT_LT(std::abs(a - b), 1e-10);
}

TEST(WienerHopf, B1SmallDStarLimit)
{
    // only the -i pi jump on |t| < |a| survives, and |a| grows without bound
    const KernelContext k(constants_from_reduced(1e-6, 0.4));
    const cplx xi(0.3, 0.5);
    auto f = [&](double t) -> cplx { return 1.0 / (std::hypot(t, 1.0) * (t - xi)); };
    const cplx lim = 0.25 * I * detail::line_integral(f, {-1.0, 0.0, 1.0}, {1e-12, 1e-14});
    EXPECT_LT(std::abs(b1_contour_integral(xi, HalfPlane::UPPER, k) - lim), 1e-4);
}

TEST(WienerHopf, BStarLargeXi)
{
    const auto& k = ctx();
    const double d1 = k.c.d1;
    // constant term; on the real axis the jump of B1 adds -i/(2 d* xi)
    for (double x : {1e3, 1e4}) {
        const cplx b = b_star(x, HalfPlane::UPPER, k);
        const cplx c0 = b - d1 / (2 * PI) * std::log(x) - d1 / (2 * PI) * std::log(2.0 / I);
        EXPECT_LT(std::abs(c0 - k.c.B0), 1.0 / (k.c.d_star * x));
        EXPECT_LT(std::abs(c0 + I / (2 * k.c.d_star * x) - k.c.B0), 10 * std::log(x) / (x * x));
    }
    EXPECT_LT(std::abs(k.c.B0 - (PI / 4 - 0.5 * I * std::log((1 - k.c.a * k.c.d_star) / k.c.d_star))), 1e-14);
    // slope in log xi
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 9;
    for (int i = 0; i < n; ++i) {
        const double xi = std::pow(10.0, 2 + 2.0 * i / (n - 1)), lx = std::log(xi);
        const double y = b_star(xi, HalfPlane::UPPER, k).real();
        sx += lx;
        sy += y;
        sxx += lx * lx;
        sxy += lx * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_NEAR(slope / (d1 / (2 * PI)), 1.0, 1e-4);
    EXPECT_NEAR(d1 / (2 * PI), std::atanh(k.c.d_star) / PI, 1e-14);
}

TEST(WienerHopf, InversePairs)
{
    const auto& k = ctx();
    const MatrixPair Y = y_matrices(k);
    for (double x : {0.0, 0.5, -0.5, 2.0, -2.0, 10.0, -10.0})
        for (int sl : {1, -1}) {
            const KernelParts P = kernel_parts(x, k);
            EXPECT_LT((Y.y_plus_inv(P, sl) * Y.y_plus(P, sl) - Mat3::Identity()).norm(), 1e-10) << x;
            EXPECT_LT((Y.y_minus_inv(P, sl) * Y.y_minus(P, sl) - Mat3::Identity()).norm(), 1e-10) << x;
        }
}

TEST(WienerHopf, FactorizationResidual)
{
    const auto& k = ctx();
    for (int sl : {1, -1}) {
        EXPECT_LT(wh_residual(k, {-1.0, 0.0, 1.0}, sl), 1e-8);
        EXPECT_LT(wh_residual(k, grid50(), sl), 1e-8);
    }
}

TEST(WienerHopf, ResidualNearBranchPoints)
{
    const auto& k = ctx();
    const double A = k.A();
    for (int sl : {1, -1})
        EXPECT_LT(wh_residual(k, {A + 1e-3, A - 1e-3, -A + 1e-4, -A - 1e-4, A + 1e-6}, sl), 1e-8);
}

TEST(WienerHopf, DegenerateRejected)
{
    EXPECT_THROW(KernelContext(derive_constants({0.3, 1, 0.3, 1})), DegenerateBimaterial);
}

TEST(WienerHopf, KinkRejected)
{
    const auto& k = ctx();
    EXPECT_THROW(b1_real(k.A(), k), PoleOnContour);
}
