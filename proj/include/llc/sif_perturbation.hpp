#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "fft.hpp"
#include "fourier.hpp"
#include "ll_constants.hpp"
#include "sif_coupling.hpp"
#include "weight_functions.hpp"

namespace llc {

// ---------------------------------------------------------------------------
// First-order SIF variation for a wavy front x1 = delta phi(x3)

struct PerturbationParameters {
    cplx K{};           // K_I + i K_II
    double K_III = 0;
    cplx dK_da{};
    double dKIII_da = 0;
    double delta = 1;   // the front displacement is delta times the supplied phi
};

struct SpectralPerturbation : PerturbationParameters {
    std::vector<double> lambda_grid;
    std::vector<cplx> delta_phi_hat;  // spectrum of phi
};

struct SpectralResult {
    std::vector<cplx> dK, dK_III;
};

/// dK~ = m.first * phi~, dK~_III = m.second * phi~ at one lambda (delta included).
inline std::pair<cplx, cplx> perturbation_multipliers(double lambda, const PerturbationParameters& in,
                                                      const LLConstants& k, const BimaterialConstants& c)
{
    cplx mk = in.dK_da, m3 = in.dKIII_da;
    if (lambda != 0) {
        const double eps = c.epsilon, nu = c.nu_composite, L = std::abs(lambda), sg = lambda > 0 ? 1 : -1;
        const cplx l1 = L * std::exp(I * eps * std::log(L));            // |lambda|^{1+i eps}
        const cplx l2 = L * std::exp(2.0 * I * eps * std::log(L));      // |lambda|^{1+2i eps}
        const double sh = eps == 0 ? PI : std::sinh(PI * eps) / eps;
        const cplx g3 = eps == 0 ? gamma_III_over_eps(c) : k.gamma_III / eps;
        const cplx gz = eps == 0 ? gamma_z_over_eps(c) : k.gamma_z / eps;
        const double ch2 = std::cosh(PI * eps / 2);
        const cplx G1 = cgamma(cplx(1, -eps)), G2 = cgamma(cplx(1, -2 * eps));
        const cplx K = in.K, Kc = std::conj(in.K);
        const cplx bracket = k.gamma_plus * sh * G2 * Kc * l2 / (1.0 + 2.0 * I * eps) + PI * k.gamma_minus * K * L -
                             4.0 * g3 / (1 - nu) * ch2 * G1 * in.K_III * sg * l1 / (1.0 + I * eps);
        mk -= (1.0 + 2.0 * I * eps) / (8 * std::cosh(PI * eps)) * bracket;
        const double im = std::imag(gz * G1 * Kc * l1 / (1.0 + I * eps));
        m3 -= PI * k.gamma / 4 * in.K_III * L - I * ((1 - nu) / 2 * ch2) * sg * im;
    }
    return {in.delta * mk, in.delta * m3};
}

inline SpectralResult perturb_spectral(const SpectralPerturbation& in, const LLConstants& k,
                                       const BimaterialConstants& c)
{
    if (in.lambda_grid.size() != in.delta_phi_hat.size())
        throw std::invalid_argument("lambda grid and spectrum differ in length");
    SpectralResult r;
    r.dK.resize(in.lambda_grid.size());
    r.dK_III.resize(in.lambda_grid.size());
    for (std::size_t i = 0; i < in.lambda_grid.size(); ++i) {
        const auto m = perturbation_multipliers(in.lambda_grid[i], in, k, c);
        r.dK[i] = m.first * in.delta_phi_hat[i];
        r.dK_III[i] = m.second * in.delta_phi_hat[i];
    }
    return r;
}

struct FrontResult {
    std::vector<double> x3;
    std::vector<cplx> dK;
    std::vector<double> dK_III;
    std::vector<cplx> dK_hat, dK_III_hat;  // output spectra (unnormalized DFT)
    double imag_residue = 0;               // max |Im dK_III| / max |dK_III|
};

inline constexpr double non_real_tol = 1e-10;

/// phi sampled at x3_n = x0 + n length/N, N a power of two, periodic.
inline FrontResult perturb_front(const std::vector<double>& phi, double length, const PerturbationParameters& p,
                                 const LLConstants& k, const BimaterialConstants& c, double x0 = 0)
{
    const std::size_t n = phi.size();
    if (!fft::is_power_of_two(n)) throw std::invalid_argument("profile length must be a power of two");
    if (!(length > 0)) throw std::invalid_argument("period must be positive");
    const std::vector<cplx> spec = fft::forward(std::vector<cplx>(phi.begin(), phi.end()));
    FrontResult r;
    r.dK_hat.resize(n);
    r.dK_III_hat.resize(n);
    for (std::size_t b = 0; b < n; ++b) {
        const double lam = fft::bin_frequency(b, n, length);
        auto m = perturbation_multipliers(lam, p, k, c);
        if (n > 1 && b == n / 2) {
            // the Nyquist bin carries both +lambda and -lambda
            const auto mm = perturbation_multipliers(-lam, p, k, c);
            m = {0.5 * (m.first + mm.first), 0.5 * (m.second + mm.second)};
        }
        r.dK_hat[b] = m.first * spec[b];
        r.dK_III_hat[b] = m.second * spec[b];
    }
    const std::vector<cplx> dk = fft::inverse(r.dK_hat), d3 = fft::inverse(r.dK_III_hat);
    r.x3.resize(n);
    r.dK_III.resize(n);
    double big = 0, im = 0;
    for (std::size_t i = 0; i < n; ++i) {
        r.x3[i] = x0 + length * double(i) / double(n);
        r.dK_III[i] = d3[i].real();
        big = std::max(big, std::abs(d3[i]));
        im = std::max(im, std::abs(d3[i].imag()));
    }
    r.dK = dk;
    r.imag_residue = big > 0 ? im / big : 0;
    if (r.imag_residue > non_real_tol)
        throw NonRealOutput("dK_III has imaginary residue " + std::to_string(r.imag_residue));
    return r;
}

/// sum |x_n|^2 against (1/N) sum |X_k|^2; returns the relative difference.
inline double parseval_defect(const std::vector<cplx>& x, const std::vector<cplx>& X)
{
    double a = 0, b = 0;
    for (auto v : x) a += std::norm(v);
    for (auto v : X) b += std::norm(v);
    b /= double(X.size());
    const double s = std::max(a, b);
    return s > 0 ? std::abs(a - b) / s : 0;
}

// ---------------------------------------------------------------------------
// Two-term near-tip fields

struct NearTipCoefficients {
    cplx K{};
    double K_III = 0;
    cplx A_coef{};
    double A_III = 0;
    cplx B_coef{};
    double B_III = 0;
};

struct NearTipFields {
    bool ahead = false;              // x1 > 0: tractions filled, otherwise jumps
    double s12 = 0, s22 = 0, s32 = 0;
    double u1 = 0, u2 = 0, u3 = 0;
};

inline NearTipFields near_tip_fields(const NearTipCoefficients& q, double x1, const BimaterialConstants& c)
{
    if (x1 == 0) throw std::invalid_argument("near_tip_fields at x1 = 0");
    const double eps = c.epsilon, s2p = std::sqrt(2 * PI);
    NearTipFields f;
    if (x1 > 0) {
        f.ahead = true;
        const cplx xe = std::exp(I * eps * std::log(x1));
        const cplx z = q.K * xe / std::sqrt(x1) + q.A_coef * xe * std::sqrt(x1);
        f.s22 = z.real() / s2p;
        f.s12 = z.imag() / s2p;
        f.s32 = (q.K_III / std::sqrt(x1) + q.A_III * std::sqrt(x1)) / s2p;
        return f;
    }
    const double r = -x1;
    const cplx re = std::exp(I * eps * std::log(r));
    const cplx w = q.K / (1.0 + 2.0 * I * eps) * std::sqrt(r) * re + q.B_coef * r * std::sqrt(r) * re;
    const double pre = 2 * c.b / (s2p * std::cosh(PI * eps));
    f.u2 = pre * w.real();
    f.u1 = pre * w.imag();
    f.u3 = 2 * (c.b + c.e) / s2p * (q.K_III * std::sqrt(r) + q.B_III * r * std::sqrt(r));
    return f;
}

// ---------------------------------------------------------------------------
// Physical-space weight-function jumps u^j_p(y) for both signs of lambda

namespace detail {

inline int wt_index(int sl, int j, int p) { return (sl > 0 ? 0 : 9) + 3 * j + p; }

}  // namespace detail

/// Inverse transforms of the displacement-side components U1, U2, U3 of
/// all three weight functions.  The (xi + i)^{-1/2 +- i eps} leading terms
/// are removed before tabulation and restored analytically.
class WeightTransforms {
public:
    using Table = std::array<cplx, 18>;

    explicit WeightTransforms(const KernelContext& k, fourier::GridSpec grid = {}, bool corrected = true)
        : k_(&k), R_(make(k, grid, corrected, lead_))
    {
    }

    const KernelContext& context() const { return *k_; }
    std::size_t panel_count() const { return R_.panel_count(); }

    /// all(y)[wt_index(sl, j, p)], j = 0..2 for W1..W3, p = 0..2 for U1..U3
    Table all(double y) const
    {
        const std::vector<cplx> r = R_(y);
        const double eps = k_->c.epsilon;
        const cplx ip = fourier::inverse_power_plus(cplx(0.5, -eps), y);
        const cplx im = fourier::inverse_power_plus(cplx(0.5, eps), y);
        const cplx iz = fourier::inverse_power_plus(0.5, y);
        Table t;
        for (int i = 0; i < 18; ++i) t[i] = r[i] + lead_[i].p * ip + lead_[i].m * im + lead_[i].z * iz;
        return t;
    }

    /// u^j_p(y) for one sign of lambda, indexed [j][p].
    std::array<Comp3, 3> at(double y, int sl) const
    {
        const Table t = all(y);
        std::array<Comp3, 3> u;
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 3; ++p) u[j][p] = t[detail::wt_index(sl, j, p)];
        return u;
    }

private:
    static fourier::FilonInverse make(const KernelContext& k, fourier::GridSpec grid, bool corrected,
                                      std::array<Osc, 18>& lead)
    {
        const auto& c = k.c;
        for (int sl : {1, -1})
            for (int j = 0; j < 3; ++j) {
                const auto T = asymptotic_terms(WF(j + 1), sl, c, corrected);
                for (int p = 0; p < 3; ++p) lead[detail::wt_index(sl, j, p)] = T[p].t0;
            }
        grid.kinks = {-k.A(), k.A()};
        const double eps = c.epsilon;
        return fourier::FilonInverse(fourier::build_panels(grid), 18, [&](double xi) {
            std::vector<cplx> v = near_point_guard(xi, c.a, [&](cplx z) {
                const KernelParts P = kernel_parts(z, k);
                std::vector<cplx> out(18);
                for (int sl : {1, -1})
                    for (int j = 0; j < 3; ++j) {
                        const Comp3 U = weight_values(P, WF(j + 1), sl, k).U();
                        for (int p = 0; p < 3; ++p) out[detail::wt_index(sl, j, p)] = U[p];
                    }
                return out;
            });
            const cplx pp = branch_pow(BranchShift::XI_PLUS_I, xi, cplx(-0.5, eps));
            const cplx pm = branch_pow(BranchShift::XI_PLUS_I, xi, cplx(-0.5, -eps));
            const cplx pz = pow_pi(xi, -0.5);
            for (int i = 0; i < 18; ++i) v[i] -= lead[i].p * pp + lead[i].m * pm + lead[i].z * pz;
            return v;
        });
    }

    const KernelContext* k_;
    std::array<Osc, 18> lead_{};
    fourier::FilonInverse R_;
};

inline constexpr std::array<double, 3> R_diag = {-1, 1, -1};

/// h~_kp(x, lambda) = i B~_kj(lambda) R_pp |lambda| u^j_p(-x |lambda|, sign lambda).
inline Mat3 h_tilde(double x, double lambda, const WeightTransforms& wt, const CouplingMatrices& cm)
{
    if (lambda == 0) return Mat3::Zero();
    const double L = std::abs(lambda);
    const auto u = wt.at(-x * L, lambda > 0 ? 1 : -1);
    Mat3 U;
    for (int j = 0; j < 3; ++j)
        for (int p = 0; p < 3; ++p) U(j, p) = L * R_diag[p] * u[j][p];
    return I * cm.B_tilde(lambda) * U;
}

// ---------------------------------------------------------------------------
// The kernels h_kp(x, t) by double inverse transform

struct KernelOptions {
    double Y = 400;              // lambda |x| runs up to Y
    double taper_start = 0.5;    // cosine taper over [taper_start Y, Y]
    double panel_phase = 2;      // radians of oscillation per panel
    double grade_min = 1e-10;    // smallest y panel at the origin
    fourier::GridSpec grid{};
};

namespace detail {

inline double taper(double y, const KernelOptions& o)
{
    const double y0 = o.taper_start * o.Y;
    if (y <= y0) return 1;
    if (y >= o.Y) return 0;
    return 0.5 * (1 + std::cos(PI * (y - y0) / (o.Y - y0)));
}

// Gauss-Legendre nodes on [0, ymax] in y: geometric grading at 0, then
// panels no wider than dy.
template <class F>
void y_quadrature(double ymax, double dy, double grade_min, F&& f)
{
    using G = boost::math::quadrature::gauss<double, 16>;
    std::vector<double> pts{0};
    for (double y = grade_min; y < dy; y *= 2) pts.push_back(y);
    const double start = pts.back();
    const int n = std::max(1, int(std::ceil((ymax - start) / dy)));
    for (int i = 1; i <= n; ++i) pts.push_back(start + (ymax - start) * i / n);
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double m = 0.5 * (pts[i] + pts[i + 1]), h = 0.5 * (pts[i + 1] - pts[i]);
        for (std::size_t g = 0; g < ab.size(); ++g) {
            if (ab[g] == 0) {
                f(m, h * wt[g]);
                continue;
            }
            f(m - h * ab[g], h * wt[g]);
            f(m + h * ab[g], h * wt[g]);
        }
    }
}

}  // namespace detail

class KernelOracle {
public:
    explicit KernelOracle(const KernelContext& k, const KernelOptions& opt = {})
        : opt_(opt), cm_(coupling_matrices(k.c)), wt_(k, opt.grid), f33_(f33_remainder_transform(k, {.grid = opt.grid}))
    {
    }

    const WeightTransforms& transforms() const { return wt_; }
    const CouplingMatrices& coupling() const { return cm_; }
    const KernelOptions& options() const { return opt_; }

    /// All nine h_kp(x, t), x != 0.
    Mat3 matrix(double x, double t) const
    {
        if (x == 0) throw std::invalid_argument("kernel at x = 0");
        const double ax = std::abs(x);
        const double dy = opt_.panel_phase / std::max({std::abs(t) / ax, std::max(1.0, wt_.context().A())});
        Mat3 h = Mat3::Zero();
        detail::y_quadrature(opt_.Y, dy, opt_.grade_min, [&](double y, double w) {
            const double L = y / ax, tw = detail::taper(y, opt_);
            if (tw == 0) return;
            const auto all = wt_.all(x > 0 ? -y : y);
            for (int sl : {1, -1}) {
                Mat3 U;
                for (int j = 0; j < 3; ++j)
                    for (int p = 0; p < 3; ++p) U(j, p) = L * R_diag[p] * all[detail::wt_index(sl, j, p)];
                const cplx ph = std::exp(-I * t * (sl * L));
                h += (w / ax * tw) * ph * (I * cm_.B_tilde(sl * L) * U);
            }
        });
        return h / (2 * PI);
    }

    /// One entry, k and p in 1..3.
    cplx operator()(int k, int p, double x, double t) const
    {
        if (k < 1 || k > 3 || p < 1 || p > 3) throw std::out_of_range("kernel index");
        return matrix(x, t)(k - 1, p - 1);
    }

    /// h33 from the single integral of sqrt(y) cos(y |t/x|) f33(y).
    cplx h33_single(double x, double t) const
    {
        if (x == 0) throw std::invalid_argument("kernel at x = 0");
        if (x > 0) return 0.0;
        const double ax = -x, om = std::abs(t / x);
        const double dy = opt_.panel_phase / std::max({om, std::max(1.0, wt_.context().A())});
        cplx s = std::sqrt(2 / PI) / (1 + om * om);
        detail::y_quadrature(opt_.Y, dy, opt_.grade_min, [&](double y, double w) {
            const double tw = detail::taper(y, opt_);
            if (tw == 0) return;
            s += w * tw * std::sqrt(y) * std::cos(om * y) * f33_(y)[0];
        });
        return s / (PI * ax * std::sqrt(ax));
    }

private:
    KernelOptions opt_;
    CouplingMatrices cm_;
    WeightTransforms wt_;
    fourier::FilonInverse f33_;
};

inline cplx ll_weight_kernel(int k, int p, double x, double t, const KernelOracle& ctx) { return ctx(k, p, x, t); }

// ---------------------------------------------------------------------------
// SIF transforms from a crack-face load

/// p~_i(x1) at the fixed lambda, for x1 <= 0.
using LoadSpectrum = std::function<Vec3(double)>;

struct LoadOptions {
    double x1_min = -20;   // truncation of the loaded face
    double x1_max = 0;     // load vanishes on (x1_max, 0)
    double h = 1e-3;       // largest offset x1'
    double panel = 0.25;   // panel width away from x1 = 0
    double decay_tol = 1e-8;
};

/// K~_k(lambda) = -i lim B~_kj int p~_i R_ih U~^j_h(x1' - x1) dx1,
/// the limit x1' -> 0 by Richardson over {h, h/2, h/4}.
inline Vec3 sif_from_load(const LoadSpectrum& load, double lambda, const WeightTransforms& wt,
                          const CouplingMatrices& cm, const LoadOptions& opt = {})
{
    if (lambda == 0) throw std::invalid_argument("sif_from_load at lambda = 0");
    if (!(opt.x1_min < opt.x1_max) || opt.x1_max > 0) throw std::invalid_argument("load interval");
    const double L = std::abs(lambda);
    const int sl = lambda > 0 ? 1 : -1;
    const double len = opt.x1_max - opt.x1_min;

    // nodes in s = x1_max - x1, graded at s = 0 when the load reaches the tip
    std::vector<double> xs, ws;
    const double grade = opt.x1_max == 0 ? 1e-9 : opt.panel;
    detail::y_quadrature(len, std::min(opt.panel, len), std::min(grade, 0.5 * len), [&](double s, double w) {
        xs.push_back(opt.x1_max - s);
        ws.push_back(w);
    });
    std::vector<Vec3> P(xs.size());
    double pmax = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        P[i] = load(xs[i]);
        pmax = std::max(pmax, P[i].cwiseAbs().maxCoeff());
    }
    if (pmax == 0) return Vec3::Zero();
    const double tail = load(opt.x1_min).cwiseAbs().maxCoeff();
    if (tail > opt.decay_tol * pmax)
        throw LoadDecayTooSlow("load at x1 = " + std::to_string(opt.x1_min) + " is " + std::to_string(tail / pmax) +
                               " of its maximum");

    std::array<Vec3, 3> f;
    for (int m = 0; m < 3; ++m) {
        const double xp = std::ldexp(opt.h, -m);
        Vec3 acc = Vec3::Zero();  // indexed by j
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto u = wt.at(L * (xp - xs[i]), sl);
            for (int j = 0; j < 3; ++j) {
                cplx s = 0;
                for (int p = 0; p < 3; ++p) s += P[i](p) * R_diag[p] * L * u[j][p];
                acc(j) += ws[i] * s;
            }
        }
        f[m] = -I * (cm.B_tilde(lambda) * acc);
    }
    const double d1 = (f[1] - f[0]).norm(), d2 = (f[2] - f[1]).norm();
    const double scale = std::max({f[0].norm(), f[1].norm(), f[2].norm()});
    if (d2 > d1 && d2 > 1e-12 * scale)
        throw ExtrapolationUnstable("x1' differences grow: " + std::to_string(d1) + " -> " + std::to_string(d2));
    return (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
}

// ---------------------------------------------------------------------------
// Check of the physical kernel B(x3) against B~(lambda) by FFT

struct CouplingOracleResult {
    std::vector<double> x;
    std::vector<Mat3> fft, direct;
    double max_rel_error = 0;  // per entry, relative to the entry's largest sample
};

/// Both sides smoothed by -g'' with g a Gaussian of width sigma: the FFT of
/// B~(lambda) lambda^2 exp(-sigma^2 lambda^2 / 2) against the convolution of
/// B(x3) with -g''.  Samples at the grid points nearest to `at`.
inline CouplingOracleResult coupling_phys_oracle(const BimaterialConstants& c, const std::vector<double>& at,
                                                 double sigma = 0.1, int log2n = 16, double lambda_max = 120)
{
    const std::size_t n = std::size_t(1) << log2n;
    const double dl = 2 * lambda_max / double(n), dx = 2 * PI / (double(n) * dl);
    std::array<std::vector<cplx>, 9> a;
    for (auto& v : a) v.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = (double(i) - double(n / 2)) * dl;
        if (lam == 0) continue;
        const Mat3 B = coupling_b_tilde(lam, c) * (lam * lam * std::exp(-0.5 * sigma * sigma * lam * lam));
        for (int e = 0; e < 9; ++e) a[e][i] = B(e / 3, e % 3);
    }
    std::array<std::vector<cplx>, 9> A;
    for (int e = 0; e < 9; ++e) A[e] = fft::forward(a[e]);

    auto g2 = [&](double x) {  // -g''
        const double s2 = sigma * sigma;
        return -std::exp(-x * x / (2 * s2)) / (sigma * std::sqrt(2 * PI)) * (x * x / (s2 * s2) - 1 / s2);
    };
    CouplingOracleResult r;
    std::array<double, 9> big{};
    for (double xt : at) {
        const long m = std::lround(xt / dx);
        const double x = double(m) * dx;
        const std::size_t idx = m >= 0 ? std::size_t(m) : std::size_t(long(n) + m);
        Mat3 F;
        const double sgn = (m % 2 == 0) ? 1 : -1;
        for (int e = 0; e < 9; ++e) F(e / 3, e % 3) = dl / (2 * PI) * sgn * A[e][idx];
        Mat3 D = Mat3::Zero();
        const double lo = x - 12 * sigma, hi = x + 12 * sigma;
        for (int e = 0; e < 9; ++e) {
            auto f = [&](double u) -> cplx { return u == 0 ? cplx(0) : coupling_b_phys(u, c)(e / 3, e % 3) * g2(x - u); };
            const quad::Tol tol{1e-11, 1e-13};
            D(e / 3, e % 3) = lo < 0 && hi > 0 ? quad::finite(f, lo, 0.0, tol) + quad::finite(f, 0.0, hi, tol)
                                               : quad::finite(f, lo, hi, tol);
            big[e] = std::max(big[e], std::abs(D(e / 3, e % 3)));
        }
        r.x.push_back(x);
        r.fft.push_back(F);
        r.direct.push_back(D);
    }
    for (std::size_t s = 0; s < r.x.size(); ++s)
        for (int e = 0; e < 9; ++e)
            if (big[e] > 0)
                r.max_rel_error =
                    std::max(r.max_rel_error, std::abs(r.fft[s](e / 3, e % 3) - r.direct[s](e / 3, e % 3)) / big[e]);
    return r;
}

}  // namespace llc
