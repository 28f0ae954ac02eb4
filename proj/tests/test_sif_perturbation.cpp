#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <llc/sif_perturbation.hpp>

using namespace llc;

namespace {

const BimaterialConstants& stiff()
{
    static const BimaterialConstants c = derive_constants({0.3, 3, 0.3, 1});
    return c;
}

const KernelContext& ctx()
{
    static const KernelContext k(stiff());
    return k;
}

const WeightTransforms& transforms()
{
    static const WeightTransforms wt(ctx());
    return wt;
}

}  // namespace

TEST(Coupling, InverseOfA)
{
    for (MaterialPair p : {MaterialPair{0.3, 3, 0.3, 1}, MaterialPair{0, 1, 0.5, 1}, MaterialPair{0.3, 2, 0.3, 1}}) {
        const auto cm = coupling_matrices(derive_constants(p));
        for (double l : {-3.0, -0.5, 0.2, 1.0, 7.0}) {
            EXPECT_LT((cm.A(l) * cm.B_tilde(l) - Mat3::Identity()).norm(), 1e-10) << l;
            EXPECT_EQ(cm.A(l)(2, 2), cplx(0));
        }
    }
}

TEST(Coupling, DegenerateRejected)
{
    const auto c = derive_constants({0.3, 1, 0.3, 1});
    EXPECT_THROW(coupling_a(1.0, c), DegenerateBimaterial);
    EXPECT_THROW(coupling_b_tilde(1.0, c), DegenerateBimaterial);
}

TEST(Coupling, PhysicalKernelMatchesTransform)
{
    const auto r = coupling_phys_oracle(stiff(), {0.5, 1, 2, -1});
    EXPECT_LT(r.max_rel_error, 1e-4);
}

TEST(NearTip, LeadingTerms)
{
    const auto& c = stiff();
    NearTipCoefficients q;
    q.K = cplx(1.2, -0.4);
    q.K_III = 0.7;
    const double x = 1e-4, eps = c.epsilon;
    const auto f = near_tip_fields(q, x, c);
    const cplx z = q.K * std::exp(I * eps * std::log(x)) / std::sqrt(2 * PI * x);
    EXPECT_NEAR(f.s22, z.real(), 1e-12 * std::abs(z));
    EXPECT_NEAR(f.s12, z.imag(), 1e-12 * std::abs(z));
    EXPECT_NEAR(f.s32, q.K_III / std::sqrt(2 * PI * x), 1e-12 * f.s32);

    const auto g = near_tip_fields(q, -x, c);
    const cplx w = c.b / ((0.5 + I * eps) * std::cosh(PI * eps)) * q.K * std::exp(I * eps * std::log(x)) *
                   std::sqrt(x / (2 * PI));
    EXPECT_NEAR(g.u2, w.real(), 1e-12 * std::abs(w));
    EXPECT_NEAR(g.u1, w.imag(), 1e-12 * std::abs(w));
    EXPECT_FALSE(g.ahead);
}

TEST(NearTip, AntiplaneIdentical)
{
    const auto c = derive_constants({0.3, 1, 0.3, 1});
    NearTipCoefficients q;
    q.K_III = 1;
    const auto g = near_tip_fields(q, -0.01, c);
    EXPECT_NEAR(g.u3, 2 * (c.b + c.e) * std::sqrt(0.01 / (2 * PI)), 1e-14);
    EXPECT_THROW(near_tip_fields(q, 0.0, c), std::invalid_argument);
}

TEST(Perturb, ZeroProfile)
{
    const auto& c = stiff();
    const auto k = exact_constants(c);
    PerturbationParameters p;
    p.K = cplx(1, 0.3);
    p.K_III = 0.4;
    p.dK_da = 0.2;
    const auto r = perturb_front(std::vector<double>(32, 0.0), 2 * PI, p, k, c);
    for (auto v : r.dK) EXPECT_EQ(std::abs(v), 0.0);
    for (auto v : r.dK_III) EXPECT_EQ(v, 0.0);
}

TEST(Perturb, HomogeneousCollapse)
{
    const auto c = derive_constants({0.3, 1, 0.3, 1});
    const auto k = exact_constants(c);
    SpectralPerturbation in;
    in.K = 1.3;
    for (double l : {-3.0, -1.0, 0.5, 2.0}) {
        in.lambda_grid.push_back(l);
        in.delta_phi_hat.push_back(cplx(0.7, -0.2));
    }
    auto r = perturb_spectral(in, k, c);
    for (std::size_t i = 0; i < in.lambda_grid.size(); ++i)
        EXPECT_LT(std::abs(r.dK[i] + 0.5 * std::abs(in.lambda_grid[i]) * in.K * in.delta_phi_hat[i]), 1e-12);

    in.K = 0;
    in.K_III = 0.8;
    r = perturb_spectral(in, k, c);
    for (std::size_t i = 0; i < in.lambda_grid.size(); ++i)
        EXPECT_LT(std::abs(r.dK_III[i] + PI / 4 * k.gamma * 0.8 * std::abs(in.lambda_grid[i]) * in.delta_phi_hat[i]),
                  1e-12);
}

TEST(Perturb, Linear)
{
    const auto& c = stiff();
    const auto k = exact_constants(c);
    std::vector<double> a(64), b(64), s(64);
    for (int i = 0; i < 64; ++i) {
        const double x = 2 * PI * i / 64;
        a[i] = std::sin(2 * x) + 0.3 * std::cos(5 * x);
        b[i] = std::cos(x) - 0.1 * std::sin(7 * x);
        s[i] = 2 * a[i] - 3 * b[i];
    }
    PerturbationParameters p;
    p.K = cplx(1, -0.5);
    p.K_III = 0.3;
    const auto ra = perturb_front(a, 2 * PI, p, k, c), rb = perturb_front(b, 2 * PI, p, k, c),
               rs = perturb_front(s, 2 * PI, p, k, c);
    for (int i = 0; i < 64; ++i) {
        EXPECT_LT(std::abs(rs.dK[i] - (2.0 * ra.dK[i] - 3.0 * rb.dK[i])), 1e-12);
        EXPECT_NEAR(rs.dK_III[i], 2 * ra.dK_III[i] - 3 * rb.dK_III[i], 1e-12);
    }
}

TEST(Perturb, ConstantShift)
{
    const auto& c = stiff();
    const auto k = exact_constants(c);
    PerturbationParameters p;
    p.K = 1;
    p.dK_da = cplx(0.4, 0.1);
    p.dKIII_da = -0.2;
    const auto r = perturb_front(std::vector<double>(16, 0.5), 1.0, p, k, c);
    for (int i = 0; i < 16; ++i) {
        EXPECT_LT(std::abs(r.dK[i] - 0.5 * p.dK_da), 1e-14);
        EXPECT_NEAR(r.dK_III[i], 0.5 * p.dKIII_da, 1e-14);
    }
}

TEST(Perturb, CosineRoundTrip)
{
    const auto c = derive_constants({0.3, 1, 0.3, 1});
    const auto k = exact_constants(c);
    const int n = 256;
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = std::cos(3 * 2 * PI * i / n);
    PerturbationParameters p;
    p.K = 1.3;
    const auto r = perturb_front(phi, 2 * PI, p, k, c);
    for (int i = 0; i < n; ++i) EXPECT_LT(std::abs(r.dK[i] + 0.5 * 3 * 1.3 * phi[i]), 1e-10);
    EXPECT_LT(parseval_defect(r.dK, r.dK_hat), 1e-12);
    EXPECT_LT(r.imag_residue, 1e-10);
}

TEST(Perturb, DeltaScales)
{
    const auto& c = stiff();
    const auto k = exact_constants(c);
    std::vector<double> phi(32);
    for (int i = 0; i < 32; ++i) phi[i] = std::sin(2 * PI * i / 32);
    PerturbationParameters p;
    p.K = 1;
    const auto a = perturb_front(phi, 4.0, p, k, c);
    p.delta = 0.01;
    const auto b = perturb_front(phi, 4.0, p, k, c);
    for (int i = 0; i < 32; ++i) EXPECT_LT(std::abs(b.dK[i] - 0.01 * a.dK[i]), 1e-15);
}

TEST(Perturb, RejectsNonPowerOfTwo)
{
    const auto& c = stiff();
    EXPECT_THROW(perturb_front(std::vector<double>(48, 0.0), 1.0, {}, exact_constants(c), c), std::invalid_argument);
}

TEST(SifFromLoad, ZeroAndLinear)
{
    const auto cm = coupling_matrices(stiff());
    const auto& wt = transforms();
    LoadOptions o;
    o.x1_min = -2;
    o.x1_max = -0.5;
    auto load = [](double x) {
        Vec3 v = Vec3::Zero();
        v(1) = std::exp(-40 * (x + 1.25) * (x + 1.25));
        return v;
    };
    EXPECT_EQ(sif_from_load([](double) { return Vec3::Zero(); }, 1.0, wt, cm, o).norm(), 0.0);
    const Vec3 a = sif_from_load(load, 1.0, wt, cm, o);
    const Vec3 b = sif_from_load([&](double x) { return Vec3(2.0 * load(x)); }, 1.0, wt, cm, o);
    EXPECT_LT((b - 2.0 * a).norm(), 1e-12 * a.norm());
    EXPECT_GT(a.norm(), 0.0);
}

TEST(SifFromLoad, MatchesKernelIntegral)
{
    const auto cm = coupling_matrices(stiff());
    const auto& wt = transforms();
    const double x0 = -1, sg = 0.1;
    auto G = [&](double x) { return std::exp(-(x - x0) * (x - x0) / (2 * sg * sg)) / (sg * std::sqrt(2 * PI)); };
    LoadOptions o;
    o.x1_min = x0 - 10 * sg;
    o.x1_max = x0 + 10 * sg;
    o.h = 1e-2;
    for (double lam : {1.0, -2.0}) {
        const int p = 1;
        const Vec3 K = sif_from_load(
            [&](double x) {
                Vec3 v = Vec3::Zero();
                v(p) = -G(x);
                return v;
            },
            lam, wt, cm, o);
        Vec3 D = Vec3::Zero();
        for (int k = 0; k < 3; ++k) {
            auto f = [&](double x) { return G(x) * h_tilde(x, lam, wt, cm)(k, p); };
            D(k) = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, o.x1_min, o.x1_max, 5, 1e-10);
        }
        EXPECT_LT((K - D).norm() / D.norm(), 1e-5) << lam;
    }
}

TEST(SifFromLoad, SlowDecayRejected)
{
    const auto cm = coupling_matrices(stiff());
    LoadOptions o;
    o.x1_min = -5;
    EXPECT_THROW(sif_from_load([](double) { return Vec3(1, 0, 0); }, 1.0, transforms(), cm, o), LoadDecayTooSlow);
}

TEST(Kernel, H33Properties)
{
    KernelOptions opt;
    opt.Y = 100;
    const KernelOracle K(ctx(), opt);
    const cplx h = K(3, 3, -1, 2);
    EXPECT_LT(std::abs(h - K.h33_single(-1, 2)), 1e-3 * std::abs(h));
    EXPECT_LT(std::abs(h - K(3, 3, -1, -2)), 1e-6 * std::abs(h));
    EXPECT_LT(std::abs(K(3, 3, -2, 4) * std::pow(2.0, 1.5) - h), 1e-3 * std::abs(h));
    EXPECT_LT(K.matrix(1, 2).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT(std::abs(h.imag()), 1e-8 * std::abs(h));
}
