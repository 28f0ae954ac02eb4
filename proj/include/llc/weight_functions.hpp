#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "sif_coupling.hpp"
#include "wiener_hopf.hpp"

namespace llc {

enum class WF { W1 = 1, W2 = 2, W3 = 3 };

// Printed component order is (phi1, phi2, phi3) on each side.
// Displacement side: phi1 = U2, phi2 = U3, phi3 = U1.
// Traction side:     phi1 = S22, phi2 = S32, phi3 = S12.
inline constexpr std::array<int, 3> phys_from_phi = {2, 0, 1};  // U_{k+1} = phi[phys_from_phi[k]]

using Comp3 = std::array<cplx, 3>;

struct WFValues {
    Comp3 up{}, um{};  // printed order
    bool has_up = false, has_um = false;

    Comp3 U() const { return {up[2], up[0], up[1]}; }      // U1, U2, U3
    Comp3 Sigma() const { return {um[2], um[0], um[1]}; }  // S12, S22, S32
    // U1 U2 U3 S12 S22 S32
    std::array<cplx, 6> physical() const { return {up[2], up[0], up[1], um[2], um[0], um[1]}; }
};

/// F1, F2, P1, P2 at one point.
struct FPValues {
    cplx F1{}, F2{}, P1{}, P2{};
};

inline FPValues fp_values(const KernelParts& P, const KernelContext& k)
{
    const auto& c = k.c;
    FPValues v;
    if (P.has_plus()) {
        const cplx f = -I * c.M_minus / c.d_star * P.Lp;
        v.F1 = f * P.S1 / (P.r * P.r);
        v.F2 = f * P.S2;
    }
    if (P.has_minus()) {
        v.P1 = c.M_minus * P.Lm * std::sin(*P.Bm) / P.r;
        v.P2 = c.M_minus * P.Lm * std::cos(*P.Bm);
    }
    return v;
}

/// Coefficients C1..C6 of the entire vector for weight function j.
inline std::array<cplx, 6> wf_coefficients(WF j, int sl, const BimaterialConstants& c)
{
    const double ds = c.d_star, es = c.e_star, s = sl;
    const cplx M = c.M_minus;
    switch (j) {
        case WF::W1: return {1.0 / (1 + es), 0.0, 0.0, 0.0, 0.0, -2.0 * I * ds * M * s};
        case WF::W2: return {0.0, -I * ds * M * M * s, ds * M, 0.0, 0.0, 0.0};
        default: return {0.0, 0.0, 0.0, -I * M, M / ds, -M / (ds * (I - c.a))};
    }
}

/// The three analyticity conditions evaluated for a coefficient vector.
inline std::array<cplx, 3> cond_residuals(const std::array<cplx, 6>& C, int sl, const BimaterialConstants& c)
{
    const double ds = c.d_star, es = c.e_star;
    const cplx M = c.M_minus;
    return {(1 + es) * double(sl) * C[0] - I / (2 * ds * M) * (C[4] / (I - c.a) + C[5]),
            C[1] + I * double(sl) * M * C[2], I * C[3] - ds * C[4]};
}

inline Vec3 entire_vector(const std::array<cplx, 6>& C, cplx xi, double a)
{
    return Vec3(C[0] / (xi - I) + C[1] / (xi + I), C[2] / (xi + I) + C[3] / (xi - a), C[4] / (xi - a) + C[5]);
}

/// Weight function j from precomputed kernel parts.
inline WFValues weight_values(const KernelParts& P, WF j, int sl, const KernelContext& k)
{
    const auto& c = k.c;
    const double ds = c.d_star, es = c.e_star, a = c.a, d0 = c.d0, s = sl;
    const cplx xi = P.xi, r2 = P.r * P.r;
    const FPValues f = fp_values(P, k);
    WFValues w;
    w.has_up = P.has_plus();
    w.has_um = P.has_minus();
    const cplx F1 = f.F1, F2 = f.F2, P1 = f.P1, P2 = f.P2;

    if (j == WF::W1) {
        if (w.has_up) {
            const cplx hp = pow_pi(xi, -0.5);
            w.up = {2.0 * s * F2 * hp, -(xi / (xi - I) + 2.0 * F1) * hp, s * (1.0 / (xi - I) - 2.0 * xi * F1) * hp};
        }
        if (w.has_um) {
            const cplx hm = pow_mi(xi, 0.5);
            w.um = {-2.0 * I * ds * s * P2 * hm, (xi / ((1 + es) * (xi - I)) - 2.0 * I * ds * P1) * hm,
                    -s * (1.0 / ((1 + es) * (xi - I)) + 2.0 * I * ds * xi * P1) * hm};
        }
    } else if (j == WF::W2) {
        const cplx kk = (1 + es) / (2 * d0 * d0 * ds * (I - a));
        const cplx q = 1.0 / (2 * d0 * d0 * ds * (I - a));
        if (w.has_up) {
            const cplx hp3 = pow_pi(xi, -1.5);
            w.up = {I * r2 * F1 * hp3, -s * (kk * xi - I * F2) * hp3, (kk + I * xi * F2) * hp3};
        }
        if (w.has_um) {
            const cplx hm3 = pow_mi(xi, 0.5) / (xi + I);
            w.um = {-ds * r2 * P1 * hm3, s * (q * xi + ds * P2) * hm3, (-q + ds * xi * P2) * hm3};
        }
    } else {
        const cplx t = I * (I - xi) / (ds * (I - a));
        const cplx g = 1.0 / (ds * (xi - a));
        const cplx u = 1.0 / (ds * (I - a));
        if (w.has_up) {
            const cplx hp = pow_pi(xi, -0.5);
            const cplx m = F2 - t * F1;
            w.up = {g * (r2 * F1 + t * F2) * hp, s * g * m * hp, xi * g * m * hp};
        }
        if (w.has_um) {
            const cplx hm = pow_mi(xi, 0.5);
            const cplx m = -I * P2 / (xi - a) + P1 * g - P1 * u;
            w.um = {(I * r2 * P1 / (xi - a) + P2 * g - P2 * u) * hm, s * m * hm, xi * m * hm};
        }
    }
    return w;
}

/// Evaluate g at xi, switching to quadratic extrapolation from three points
/// further out when xi lies within `radius` of +-a or +-i, where the
/// displayed formulas are 0/0.
template <class G>
std::vector<cplx> near_point_guard(cplx xi, double a, G&& g, double radius = 1e-6)
{
    for (cplx s : {cplx(a), cplx(-a), I, -I}) {
        const cplx dz = xi - s;
        if (std::abs(dz) >= radius) continue;
        const cplx dir = std::abs(dz) > 0 ? dz / std::abs(dz) : (s.imag() == 0 ? cplx(1) : s);
        const double tau = std::abs(dz);
        const double nodes[3] = {2 * radius, 3 * radius, 4 * radius};
        std::vector<cplx> v[3];
        for (int m = 0; m < 3; ++m) v[m] = g(s + nodes[m] * dir);
        std::vector<cplx> out(v[0].size());
        for (int m = 0; m < 3; ++m) {
            double L = 1;
            for (int n = 0; n < 3; ++n)
                if (n != m) L *= (tau - nodes[n]) / (nodes[m] - nodes[n]);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += L * v[m][i];
        }
        return out;
    }
    return g(xi);
}

class WeightFunctionSet {
public:
    WeightFunctionSet(WF j, const KernelContext& k) : j_(j), k_(&k) {}

    WF index() const { return j_; }
    const KernelContext& context() const { return *k_; }
    std::array<cplx, 6> coefficients(int sl) const { return wf_coefficients(j_, sl, k_->c); }

    /// All components defined at xi (both sides on the real axis).
    WFValues eval(cplx xi, int sl) const
    {
        auto pack = [&](cplx z) {
            const WFValues w = weight_values(kernel_parts(z, *k_), j_, sl, *k_);
            return std::vector<cplx>{w.up[0], w.up[1], w.up[2], w.um[0], w.um[1], w.um[2],
                                     double(w.has_up), double(w.has_um)};
        };
        const std::vector<cplx> v = near_point_guard(xi, k_->c.a, pack);
        WFValues w;
        for (int i = 0; i < 3; ++i) {
            w.up[i] = v[i];
            w.um[i] = v[3 + i];
        }
        w.has_up = v[6].real() > 0.5;
        w.has_um = v[7].real() > 0.5;
        return w;
    }

    Comp3 plus(cplx xi, int sl) const { return eval(xi, sl).up; }
    Comp3 minus(cplx xi, int sl) const { return eval(xi, sl).um; }

private:
    WF j_;
    const KernelContext* k_;
};

inline WeightFunctionSet make_weight_function(WF j, const KernelContext& k) { return WeightFunctionSet(j, k); }

/// |phi+ - G* phi- / rho| at real xi.
inline double wh_equation_residual(const WeightFunctionSet& w, double xi, int sl)
{
    const KernelContext& k = w.context();
    const WFValues v = w.eval(xi, sl);
    const Vec3 up(v.up[0], v.up[1], v.up[2]), um(v.um[0], v.um[1], v.um[2]);
    return (up - g_star(xi, sl, k) * um / rho_star(xi)).norm();
}

/// |Y+ phi+ - E| (upper half-plane or real xi) or |Y- phi- - E| (lower).
inline double entire_vector_residual(const WeightFunctionSet& w, cplx xi, int sl)
{
    const KernelContext& k = w.context();
    const KernelParts P = kernel_parts(xi, k);
    const WFValues v = weight_values(P, w.index(), sl, k);
    const Vec3 E = entire_vector(w.coefficients(sl), xi, k.c.a);
    const MatrixPair Y = y_matrices(k);
    double r = 0;
    if (P.has_plus()) r = std::max(r, (Y.y_plus(P, sl) * Vec3(v.up[0], v.up[1], v.up[2]) - E).norm());
    if (P.has_minus()) r = std::max(r, (Y.y_minus(P, sl) * Vec3(v.um[0], v.um[1], v.um[2]) - E).norm());
    return r;
}

// ---------------------------------------------------------------------------
// Large-xi asymptotics

/// p xi^{i eps} + m xi^{-i eps} + z
struct Osc {
    cplx p{}, m{}, z{};

    Osc operator+(const Osc& o) const { return {p + o.p, m + o.m, z + o.z}; }
    Osc operator-(const Osc& o) const { return {p - o.p, m - o.m, z - o.z}; }
    Osc operator-() const { return {-p, -m, -z}; }
    friend Osc operator*(cplx s, const Osc& o) { return {s * o.p, s * o.m, s * o.z}; }
    friend Osc operator*(const Osc& o, cplx s) { return s * o; }
    friend Osc operator/(const Osc& o, cplx s) { return {o.p / s, o.m / s, o.z / s}; }
    static Osc constant(cplx v) { return {0.0, 0.0, v}; }

    cplx operator()(double xi, double eps) const
    {
        const cplx xe = std::exp(I * eps * std::log(xi));
        return p * xe + m / xe + z;
    }
    bool zero() const { return p == cplx(0) && m == cplx(0) && z == cplx(0); }
};

/// xi^{base} (t0 + t1/xi + t2/xi^2)
struct AsymComponent {
    double base = -0.5;
    Osc t0, t1, t2;

    cplx operator()(double xi, double eps) const
    {
        return std::pow(xi, base) * (t0(xi, eps) + t1(xi, eps) / xi + t2(xi, eps) / (xi * xi));
    }
    cplx leading(double xi, double eps) const
    {
        if (!t0.zero()) return std::pow(xi, base) * t0(xi, eps);
        return std::pow(xi, base - 1) * t1(xi, eps);
    }
};

/// c+-, s+- and the F/P coefficients.
struct AsymptoticCoefficients {
    Osc cp, sp, cm, sm;
    Osc F10, F11, F20, F21, P10, P11, P20, P21;
    double e0 = 1;
    cplx D{}, B0{};
};

inline AsymptoticCoefficients asymptotic_coefficients(const BimaterialConstants& c, bool corrected = true)
{
    AsymptoticCoefficients A;
    A.e0 = c.e0;
    A.D = c.D;
    A.B0 = c.B0;
    const cplx eD = c.e0 * c.D, Dd = c.D / c.e0;
    A.cp = {eD / 2.0, 1.0 / (2.0 * eD), 0.0};
    A.sp = {-I / 2.0 * eD, I / (2.0 * eD), 0.0};
    A.cm = {Dd / 2.0, 1.0 / (2.0 * Dd), 0.0};
    A.sm = {-I / 2.0 * Dd, I / (2.0 * Dd), 0.0};
    const double ds = c.d_star, a = c.a, d02 = c.d0 * c.d0;
    const cplx q = std::sqrt((1.0 - I * a) / 2.0);
    const cplx ia = I - a;
    A.F10 = q * (-I * ds * A.sp);
    A.F20 = q * (I * ds * A.cp);
    A.P10 = q * A.sm / d02;
    A.P20 = q * A.cm / d02;
    if (corrected) {
        A.F11 = q * (A.cp / 2.0 - I / 2.0 * ds * ia * A.sp);
        A.F21 = q * (A.sp / 2.0 + I / 2.0 * ds * ia * A.cp);
        A.P11 = q / d02 * (ia / 2.0 * A.sm + I / (2 * ds) * A.cm);
        A.P21 = q / d02 * (ia / 2.0 * A.cm - I / (2 * ds) * A.sm);
    } else {
        A.F11 = q * (A.cp - I / 2.0 * ds * ia * A.sp);
        A.F21 = q * (A.sp + I / 2.0 * ds * ia * A.cp);
        A.P11 = q * ia / 2.0 * A.sm / d02;
        A.P21 = q * ia / 2.0 * A.cm / d02;
    }
    return A;
}

/// Two-term large-xi forms of U1 U2 U3 S12 S22 S32 for weight function j.
/// `corrected` selects the 1/xi coefficients that match the exact
/// expansion; false gives the F11/F21/P11/P21 as printed.
inline std::array<AsymComponent, 6> asymptotic_terms(WF j, int sl, const BimaterialConstants& c, bool corrected = true)
{
    const AsymptoticCoefficients A = asymptotic_coefficients(c, corrected);
    const double ds = c.d_star, es = c.e_star, a = c.a, d0 = c.d0, s = sl;
    auto K = [](cplx v) { return Osc::constant(v); };
    const Osc &F10 = A.F10, &F11 = A.F11, &F20 = A.F20, &F21 = A.F21;
    const Osc &P10 = A.P10, &P11 = A.P11, &P20 = A.P20, &P21 = A.P21;
    std::array<AsymComponent, 6> r;
    for (int i = 0; i < 6; ++i) r[i].base = i < 3 ? -0.5 : 0.5;

    if (j == WF::W1) {
        r[0].t0 = s * (-2.0 * F10);
        r[0].t1 = s * (K(1) - 2.0 * F11 + I * F10);
        r[1].t0 = s * (2.0 * F20);
        r[1].t1 = s * (2.0 * F21 - I * F20);
        r[2].t0 = K(-1);
        r[2].t1 = -(K(I / 2.0) + 2.0 * F10);
        r[3].t0 = -s * (2.0 * I * ds * P10);
        r[3].t1 = -s * (K(1 / (1 + es)) + 2.0 * I * ds * P11 + ds * P10);
        r[4].t0 = -s * (2.0 * I * ds * P20);
        r[4].t1 = -s * (2.0 * I * ds * P21 + ds * P20);
        r[5].t0 = K(1 / (1 + es));
        r[5].t1 = K(I / (2 * (1 + es))) - 2.0 * I * ds * P10;
    } else if (j == WF::W2) {
        const cplx k = 1.0 / (2 * d0 * d0 * ds * (I - a));
        r[0].t0 = I * F20;
        r[0].t1 = K((1 + es) * k) + I * F21 + 1.5 * F20;
        r[1].t0 = I * F10;
        r[1].t1 = I * F11 + 1.5 * F10;
        r[2].t0 = s * K(-(1 + es) * k);
        r[2].t1 = s * (I * F20 + K(1.5 * I * (1 + es) * k));
        r[3].t0 = ds * P20;
        r[3].t1 = K(-k) + ds * P21 - 1.5 * I * ds * P20;
        r[4].t0 = -ds * P10;
        r[4].t1 = -ds * P11 + 1.5 * I * ds * P10;
        r[5].t0 = s * K(k);
        r[5].t1 = s * (ds * P20 - K(1.5 * I * k));
    } else {
        const cplx t = I / (ds * (I - a)), u = 1.0 / (ds * (I - a));
        r[0].t0 = (F20 + t * F10) / ds;
        r[0].t1 = (F21 + t * F11 + (a - I / 2.0) * F20 + (1.5 + I * a) * u * F10) / ds;
        r[1].t0 = (F10 - t * F20) / ds;
        r[1].t1 = (F11 - t * F21 + (a - I / 2.0) * F10 - (1.5 + I * a) * u * F20) / ds;
        r[3].t0 = -I * P20 - u * P10;
        r[3].t1 = -I * P21 - (0.5 + I * a) * P20 - u * P11 - (2 * a - 3.0 * I) / 2.0 * u * P10;
        r[4].t0 = I * P10 - u * P20;
        r[4].t1 = I * P11 + (0.5 + I * a) * P10 - u * P21 - (2 * a - 3.0 * I) / 2.0 * u * P20;
        // U3 = sl U1 / xi and S32 = sl S12 / xi hold exactly
        r[2].t1 = s * r[0].t0;
        r[5].t1 = s * r[3].t0;
        if (corrected) {
            r[2].t2 = s * r[0].t1;
            r[5].t2 = s * r[3].t1;
        }
    }
    return r;
}

/// Six two-term asymptotic values, physical order.
inline std::array<cplx, 6> asymptotic_eval(WF j, double xi, int sl, const KernelContext& k, bool corrected = true)
{
    const auto t = asymptotic_terms(j, sl, k.c, corrected);
    std::array<cplx, 6> v;
    for (int i = 0; i < 6; ++i) v[i] = t[i](xi, k.c.epsilon);
    return v;
}

/// Least-squares slope p of log|exact - asymptotic|/|exact| against -log xi
/// over n log-spaced points in [lo, hi], per physical component.
inline std::array<double, 6> asymptotic_decay_exponents(WF j, int sl, const KernelContext& k, bool corrected = true,
                                                        double lo = 1e2, double hi = 1e4, int n = 17)
{
    const WeightFunctionSet w(j, k);
    std::vector<double> lx(n);
    std::array<std::vector<double>, 6> ly;
    for (int i = 0; i < n; ++i) {
        const double x = lo * std::pow(hi / lo, double(i) / (n - 1));
        const auto ex = w.eval(x, sl).physical();
        const auto as = asymptotic_eval(j, x, sl, k, corrected);
        lx[i] = std::log(x);
        for (int m = 0; m < 6; ++m) ly[m].push_back(std::log(std::abs(ex[m] - as[m]) / std::abs(ex[m])));
    }
    std::array<double, 6> p{};
    double mx = 0;
    for (double v : lx) mx += v / n;
    for (int m = 0; m < 6; ++m) {
        double my = 0, sxy = 0, sxx = 0;
        for (double v : ly[m]) my += v / n;
        for (int i = 0; i < n; ++i) {
            sxy += (lx[i] - mx) * (ly[m][i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        p[m] = -sxy / sxx;
    }
    return p;
}

// ---------------------------------------------------------------------------
// F33

/// -i sqrt|lambda| sum_j Bt_3j(lambda) U3^j(xi, sign lambda) from kernel parts.
inline cplx f33_from_parts(const KernelParts& P, double lambda, const KernelContext& k)
{
    const int sl = lambda > 0 ? 1 : -1;
    const Mat3 Bt = coupling_b_tilde(lambda, k.c);
    cplx tot = 0;
    for (WF j : {WF::W1, WF::W2, WF::W3}) tot += Bt(2, int(j) - 1) * weight_values(P, j, sl, k).up[1];
    return -I * std::sqrt(std::abs(lambda)) * tot;
}

inline constexpr double lambda_check_tol = 1e-10;

/// F33+(xi); the value is confirmed to be the same for lambda = +-1, +-2.
inline cplx f33_plus(cplx xi, const KernelContext& k)
{
    const std::vector<cplx> v = near_point_guard(xi, k.c.a, [&](cplx z) {
        const KernelParts P = kernel_parts(z, k);
        const cplx ref = f33_from_parts(P, 1.0, k);
        for (double lam : {-1.0, 2.0, -2.0}) {
            const cplx v = f33_from_parts(P, lam, k);
            if (std::abs(v - ref) > lambda_check_tol * std::max(1.0, std::abs(ref)))
                throw LambdaDependenceDetected("F33 differs between lambda = 1 and " + std::to_string(lam));
        }
        return std::vector<cplx>{ref};
    });
    return v[0];
}

/// gamma33 from its closed form.
inline double gamma33_closed(const BimaterialConstants& c)
{
    const double s = std::sqrt(1 - c.d_star * c.d_star);
    return 2 / PI * (3 * (1 + c.e_star) - s) / (s + 1 + c.e_star);
}

}  // namespace llc
