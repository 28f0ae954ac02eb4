#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include "bimaterial.hpp"
#include "fourier.hpp"
#include "weight_functions.hpp"

namespace llc {

struct LLConstants {
    cplx gamma_plus{}, gamma_minus{}, gamma_III{}, gamma_z{};
    double gamma = 0;
};

namespace detail {

// atanh(x)/x, which is eps/d times pi b
inline double atanh_ratio(double x)
{
    if (std::abs(x) < 1e-6) return 1 + x * x / 3;
    return std::atanh(x) / x;
}

inline double root_bd(const BimaterialConstants& c) { return std::sqrt((c.b - c.d) * (c.b + c.d)); }

}  // namespace detail

/// gamma_III / eps; finite at eps = 0.
inline cplx gamma_III_over_eps(const BimaterialConstants& c)
{
    const double b = c.b, d = c.d, e = c.e, eps = c.epsilon, s = detail::root_bd(c);
    const cplx num = -8 * std::sqrt(PI) * (1.0 + I * eps) * s * std::sqrt(s);
    const cplx den = std::exp(I * eps * std::log(2.0)) * (1.0 + 2.0 * I * eps) * cgamma(cplx(0.5, eps)) *
                     cgamma(cplx(1, -eps)) * (s + b + e) * (std::sqrt(b + d) + std::sqrt(b - d));
    return num / den;
}

/// gamma_z / eps; finite at eps = 0.
inline cplx gamma_z_over_eps(const BimaterialConstants& c)
{
    return -gamma_III_over_eps(c) * (1.0 + 2.0 * I * c.epsilon) * (c.b + c.e) / detail::root_bd(c);
}

/// The five constants from their closed forms.  eps/d is taken as
/// atanh(d*)/(pi b d*), so d -> 0 needs no special branch.
inline LLConstants exact_constants(const BimaterialConstants& c)
{
    const double b = c.b, e = c.e, eps = c.epsilon, s = detail::root_bd(c);
    LLConstants k;
    k.gamma = 2 / PI * (3 * (b + e) - s) / (s + b + e);
    k.gamma_III = c.epsilon * gamma_III_over_eps(c);
    k.gamma_z = c.epsilon * gamma_z_over_eps(c);
    k.gamma_minus = 8 * b / (PI * (1.0 + 2.0 * I * eps) * (s + b + e));
    const double eps_over_d = detail::atanh_ratio(c.d_star) / (PI * b);
    k.gamma_plus = -4 * eps_over_d * b * cgamma(cplx(0.5, -eps)) * (s - b - e) /
                   (std::exp(I * eps * std::log(4.0)) * cgamma(cplx(0.5, eps)) * cgamma(cplx(1, -2 * eps)) *
                    (s + b + e));
    return k;
}

/// Small-eps series.
inline LLConstants asymptotic_constants(double eps, double nu)
{
    const double L2 = std::log(2.0), q = 2 - nu;
    LLConstants k;
    k.gamma_plus = cplx(4 * nu / (PI * q), 8 * nu * L2 * eps / (PI * q));
    k.gamma_minus = cplx(8 * (1 - nu) / (PI * q), -16 * (1 - nu) * eps / (PI * q));
    k.gamma_III = cplx(-4 * (1 - nu) * eps / q, 4 * (1 - nu) * (1 - L2) * eps * eps / q);
    k.gamma_z = cplx(4 * eps / q, 4 * (1 + L2) * eps * eps / q);
    k.gamma = 2 * (2 + nu) / (PI * q);
    return k;
}

inline LLConstants asymptotic_constants(const BimaterialConstants& c)
{
    return asymptotic_constants(c.epsilon, c.nu_composite);
}

// ---------------------------------------------------------------------------
// gamma from the small-y behaviour of f33

struct InversionOptions {
    double X = 1e7;
    double y0 = 0.05;
    int levels = 9;  // y_k = y0 2^{-k}
    fourier::GridSpec grid{};
};

struct InversionResult {
    double gamma = 0;
    cplx kappa{};                 // limit of r(y)/sqrt(y)
    std::vector<double> y;        // sample points
    std::vector<cplx> q;          // r(y)/sqrt(y)
    std::vector<cplx> diagonal;   // Richardson diagonal
    double richardson_change = 0; // last accepted diagonal step
    double negative_y_residual = 0;
    std::size_t panels = 0;
    double seconds = 0;
};

/// Transform of F33 minus its leading term (1+i)(xi+i)^{-1/2}, tabulated
/// for Filon inversion.
inline fourier::FilonInverse f33_remainder_transform(const KernelContext& k, const InversionOptions& opt = {})
{
    fourier::GridSpec g = opt.grid;
    g.X = opt.X;
    g.kinks = {-k.A(), k.A()};
    return fourier::FilonInverse(fourier::build_panels(g), 1, [&](double xi) {
        return std::vector<cplx>{f33_plus(xi, k) - (1.0 + I) * pow_pi(xi, -0.5)};
    });
}

/// Richardson extrapolation to y -> 0 for samples on y0 2^{-k}, assuming
/// an expansion in integer powers of y.  Returns the diagonal.
inline std::vector<cplx> richardson_diagonal(const std::vector<cplx>& q)
{
    std::vector<std::vector<cplx>> T(q.size());
    std::vector<cplx> diag;
    for (std::size_t i = 0; i < q.size(); ++i) {
        T[i].push_back(q[i]);
        for (std::size_t m = 1; m <= i; ++m) {
            const double f = std::ldexp(1.0, int(m));
            T[i].push_back((f * T[i][m - 1] - T[i - 1][m - 1]) / (f - 1));
        }
        diag.push_back(T[i][i]);
    }
    return diag;
}

inline cplx richardson_limit(const std::vector<cplx>& q, double* change = nullptr)
{
    const auto diag = richardson_diagonal(q);
    if (diag.size() < 3) throw ExtrapolationUnstable("need at least three samples");
    // accept the diagonal entry after which the steps stop shrinking
    std::size_t best = 1;
    double best_step = std::abs(diag[1] - diag[0]);
    for (std::size_t i = 2; i < diag.size(); ++i) {
        const double step = std::abs(diag[i] - diag[i - 1]);
        if (step >= best_step) break;
        best = i;
        best_step = step;
    }
    if (best < 2 || best_step > 1e-3 * std::max(1e-12, std::abs(diag[best])))
        throw ExtrapolationUnstable("Richardson steps do not settle: " + std::to_string(best_step));
    if (change) *change = best_step;
    return diag[best];
}

inline InversionResult gamma_via_inversion_detailed(const KernelContext& k, const InversionOptions& opt = {})
{
    const auto t0 = std::chrono::steady_clock::now();
    const fourier::FilonInverse R = f33_remainder_transform(k, opt);
    InversionResult out;
    out.panels = R.panel_count();
    for (int i = 0; i < opt.levels; ++i) {
        const double y = std::ldexp(opt.y0, -i);
        out.y.push_back(y);
        out.q.push_back(R(y)[0] / std::sqrt(y));
        // f33 vanishes for y < 0 and the leading term contributes nothing there
        out.negative_y_residual = std::max(out.negative_y_residual, std::abs(R(-y)[0]));
    }
    out.diagonal = richardson_diagonal(out.q);
    out.kappa = richardson_limit(out.q, &out.richardson_change);
    out.gamma = 2 / PI - std::sqrt(2 / PI) * out.kappa.real();
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline double gamma_via_inversion(const KernelContext& k, const InversionOptions& opt = {})
{
    return gamma_via_inversion_detailed(k, opt).gamma;
}

/// f33(y) = sqrt(2/pi) y^{-1/2} e^{-y} + r(y) on y > 0, zero for y < 0.
inline cplx f33_inverse(const fourier::FilonInverse& R, double y)
{
    return (1.0 + I) * fourier::inverse_power_plus(0.5, y) + R(y)[0];
}

// ---------------------------------------------------------------------------
// eta sweep

struct SweepRecord {
    double eta = 0;
    double epsilon = 0;
    bool swapped = false;
    LLConstants exact, asymptotic;
    std::array<double, 5> modulus_ratios{};  // gamma_plus, gamma_minus, gamma_III, gamma_z, gamma
};

inline SweepRecord sweep_point(double nu_plus, double nu_minus, double eta)
{
    if (!(eta > -1 && eta < 1)) throw InvalidMaterial("eta must lie in (-1, 1)");
    const BimaterialConstants c = derive_constants({nu_plus, 1 + eta, nu_minus, 1 - eta});
    SweepRecord r;
    r.eta = eta;
    r.epsilon = c.epsilon;
    r.swapped = c.pair.swapped;
    r.exact = exact_constants(c);
    r.asymptotic = asymptotic_constants(c);
    const LLConstants& a = r.asymptotic;
    const double nu = c.nu_composite, q = 2 - nu, L2 = std::log(2.0), eps = c.epsilon;
    // the mode III couplings compare through their eps-free parts
    const cplx a3 = cplx(-4 * (1 - nu) / q, 4 * (1 - nu) * (1 - L2) * eps / q);
    const cplx az = cplx(4 / q, 4 * (1 + L2) * eps / q);
    r.modulus_ratios = {std::abs(r.exact.gamma_plus / a.gamma_plus), std::abs(r.exact.gamma_minus / a.gamma_minus),
                        std::abs(gamma_III_over_eps(c) / a3), std::abs(gamma_z_over_eps(c) / az),
                        std::abs(r.exact.gamma / a.gamma)};
    return r;
}

/// Sweep over eta with mu+ = 1 + eta, mu- = 1 - eta.  Points are computed
/// on up to `threads` workers; the output order follows eta_grid.
inline std::vector<SweepRecord> sweep(double nu_plus, double nu_minus, const std::vector<double>& eta_grid,
                                      unsigned threads = 0)
{
    std::vector<SweepRecord> out(eta_grid.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, eta_grid.size()));
    std::vector<std::exception_ptr> errs(threads);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i = w; i < eta_grid.size(); i += threads)
                out[i] = sweep_point(nu_plus, nu_minus, eta_grid[i]);
        } catch (...) {
            errs[w] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

inline std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace llc
