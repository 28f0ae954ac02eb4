#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bimaterial.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace llc {

using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

/// Everything the factorization needs; immutable once built.
struct KernelContext {
    BimaterialConstants c;
    double quad_abs_tol = 1e-10;
    double quad_rel_tol = 1e-13;

    KernelContext() = default;
    explicit KernelContext(const BimaterialConstants& cc, double abs_tol = 1e-10, double rel_tol = 1e-13)
        : c(cc), quad_abs_tol(abs_tol), quad_rel_tol(rel_tol)
    {
        if (c.degenerate || !(c.d_star >= degenerate_threshold))
            throw DegenerateBimaterial("factorization needs d* >= 1e-8, got " + std::to_string(c.d_star));
        if (!(abs_tol > 0)) throw std::invalid_argument("quad_abs_tol must be positive");
    }

    double A() const { return -c.a; }
    quad::Tol tol() const { return {quad_rel_tol, quad_abs_tol}; }
};

inline int side_of(HalfPlane hp) { return hp == HalfPlane::UPPER ? 1 : -1; }

/// rho*(xi) = (xi+i)^{1/2} (xi-i)^{1/2}; sqrt(xi^2+1) > 0 on the real axis.
inline cplx rho_star(cplx xi)
{
    if (xi.imag() == 0.0) return std::hypot(xi.real(), 1.0);
    return pow_pi(xi, 0.5) * pow_mi(xi, 0.5);
}

namespace detail {

// g at t = S + u where S = +-|a|; the distance |t| - |a| is formed from u
// directly so points next to the kink keep full relative accuracy.
inline cplx b1_density_at(double S, double u, const KernelContext& k)
{
    const double A = k.A(), ds = k.c.d_star;
    const double t = S + u;
    if (!(std::abs(t) < 1e100)) return 0.0;
    const double r = std::hypot(t, 1.0);
    const double at = std::abs(t);
    const double diff = (t > 0) == (S > 0) ? (S > 0 ? u : -u) : at - A;
    if (diff == 0.0) return 0.0;  // integrable log singularity, reached only by rounding
    const double x = ds * r;
    // log((1+x)/|1-x|) with 1 - x^2 = -d*^2 (|t|-A)(|t|+A)
    const double L = std::log1p(2 * (1 + x) * std::min(x, 1.0) / (ds * ds * std::abs(diff) * (at + A)));
    return diff < 0 ? cplx(L, -PI) / r : cplx(L / r, 0.0);
}

}  // namespace detail

/// Density of the B1 integral on the real line, g(t) = L(t)/sqrt(t^2+1).
/// The jump -i pi sits on |t| < |a|.
inline cplx b1_density(double t, const KernelContext& k)
{
    const double S = t >= 0 ? k.A() : -k.A();
    return detail::b1_density_at(S, t - S, k);
}

namespace detail {

// Integrate f over the real line split at the sorted breakpoints, skipping
// the interval [skip_lo, skip_hi].
template <class F>
cplx line_integral(F&& f, std::vector<double> pts, const quad::Tol& tol, double skip_lo = 1, double skip_hi = 0)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    cplx tot = quad::lower_tail(f, pts.front(), tol);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i] == skip_lo && pts[i + 1] == skip_hi) continue;
        tot += quad::finite(f, pts[i], pts[i + 1], tol);
    }
    tot += quad::upper_tail(f, pts.back(), tol);
    return tot;
}

}  // namespace detail

/// Principal value of the B1 integral at real x plus the density there.
struct B1Real {
    cplx pv;  // PV of int g(t)/(t-x) dt
    cplx gx;  // g(x)
    cplx value(HalfPlane hp) const { return -(pv + double(side_of(hp)) * I * PI * gx) / (4 * PI); }
};

inline B1Real b1_real(double x, const KernelContext& k)
{
    const double A = k.A();
    // work in u = t - S with S the kink nearest to x
    const double S = x >= 0 ? A : -A;
    const double dx = x - S;
    const double dist = std::min(std::abs(dx), std::abs(x + S));
    if (dist == 0.0) throw PoleOnContour("B1 at xi = +-|a|");
    const double h = 0.5 * dist;
    const auto tol = k.tol();
    auto g = [&](double u) { return detail::b1_density_at(S, u, k); };
    const cplx gx = g(dx);

    // s = h v keeps the window on [0, 1] however close x is to a kink
    auto win = [&](double v) -> cplx { return (g(dx + h * v) - g(dx - h * v)) / v; };
    const cplx pv_win = quad::smooth(win, 0.0, 1.0, tol);

    const double c = A + std::max(1.0, A);
    std::vector<double> pts{0.0, -2 * S, dx - h, dx + h};
    for (double p : {-c - S, c - S})
        if (p < dx - h || p > dx + h) pts.push_back(p);
    auto f = [&](double u) -> cplx { return g(u) / (u - dx); };
    const cplx rest = detail::line_integral(f, pts, tol, dx - h, dx + h);
    return {pv_win + rest, gx};
}

/// B1 in the designated half-plane; real xi takes the one-sided limit.
inline cplx b1_contour_integral(cplx xi, HalfPlane hp, const KernelContext& k)
{
    if (xi.imag() == 0.0) return b1_real(xi.real(), k).value(hp);
    if ((xi.imag() > 0) != (hp == HalfPlane::UPPER))
        throw OnBranchCut("B1: xi outside the designated half-plane");
    const double A = k.A();
    const double c = A + std::max(1.0, A);
    std::vector<double> pts{-A, A, -c, c};
    const double xr = xi.real();
    if (std::abs(std::abs(xr) - A) > 1e-12) pts.push_back(xr);
    auto f = [&](double t) -> cplx { return b1_density(t, k) / (t - xi); };
    return -detail::line_integral(f, pts, k.tol()) / (4 * PI);
}

inline cplx psi_star(cplx xi, HalfPlane hp, const KernelContext&)
{
    const cplx r = rho_star(xi);
    // xi + rho loses everything for large negative xi
    const cplx w = xi.real() < 0 ? 1.0 / (r - xi) : xi + r;
    return I / (PI * r) * std::log(w / (double(side_of(hp)) * I));
}

namespace detail {
inline cplx b_star_from(cplx xi, cplx b1, HalfPlane hp, const KernelContext& k)
{
    return rho_star(xi) * (k.c.d1 / (2.0 * I) * psi_star(xi, hp, k) + b1);
}
}  // namespace detail

inline cplx b_star(cplx xi, HalfPlane hp, const KernelContext& k)
{
    return detail::b_star_from(xi, b1_contour_integral(xi, hp, k), hp, k);
}

/// Scalar building blocks of Y*+- at one point.  On the real axis both
/// sides are present; off it only the side owning that half-plane.
struct KernelParts {
    cplx xi, r, delta;
    std::optional<cplx> Bp, Bm;
    cplx S1{}, S2{}, Lp{}, Lm{};
    bool has_plus() const { return Bp.has_value(); }
    bool has_minus() const { return Bm.has_value(); }
};

inline KernelParts kernel_parts(cplx xi, const KernelContext& k)
{
    const auto& c = k.c;
    KernelParts P;
    P.xi = xi;
    P.r = rho_star(xi);
    P.delta = c.delta_star(xi);
    if (xi.imag() == 0.0) {
        const B1Real b = b1_real(xi.real(), k);
        P.Bp = detail::b_star_from(xi, b.value(HalfPlane::UPPER), HalfPlane::UPPER, k);
        P.Bm = detail::b_star_from(xi, b.value(HalfPlane::LOWER), HalfPlane::LOWER, k);
    } else if (xi.imag() > 0) {
        P.Bp = b_star(xi, HalfPlane::UPPER, k);
    } else {
        P.Bm = b_star(xi, HalfPlane::LOWER, k);
    }
    const double ds = c.d_star;
    if (P.Bp) {
        const cplx cb = std::cos(*P.Bp), sb = std::sin(*P.Bp);
        P.S1 = I * ds * (cb - I * ds * P.r * sb);
        P.S2 = I * ds * (sb / P.r + I * ds * cb);
        P.Lp = c.d0 * pow_pi(xi, 0.5) / branch_pow(BranchShift::XI_PLUS_A, xi, 0.5, HalfPlane::UPPER, c.a);
    }
    if (P.Bm) P.Lm = branch_pow(BranchShift::XI_MINUS_A, xi, 0.5, HalfPlane::LOWER, c.a) / (c.d0 * pow_mi(xi, 0.5));
    return P;
}

/// Y*+, Y*-, and their displayed inverses.
struct MatrixPair {
    const KernelContext* k = nullptr;

    Mat3 y_plus(const KernelParts& P, int sl) const
    {
        need(P.has_plus());
        const double es = k->c.e_star;
        const cplx xi = P.xi, r2 = P.r * P.r, q = P.delta * P.Lp;
        Mat3 m;
        m << 0.0, -xi / ((1 + es) * r2), double(sl) / ((1 + es) * r2),
            P.S1 / q, double(sl) * P.S2 / q, xi * P.S2 / q,
            r2 * P.S2 / q, -double(sl) * P.S1 / q, -xi * P.S1 / q;
        return pow_pi(xi, 0.5) * m;
    }
    Mat3 y_minus(const KernelParts& P, int sl) const
    {
        need(P.has_minus());
        const cplx xi = P.xi, r = P.r, r2 = r * r, Lm = P.Lm;
        const cplx sn = std::sin(*P.Bm), cs = std::cos(*P.Bm);
        Mat3 m;
        m << 0.0, xi / r2, -double(sl) / r2,
            -sn / (r * Lm), double(sl) * cs / (r2 * Lm), xi * cs / (r2 * Lm),
            cs / Lm, double(sl) * sn / (r * Lm), xi * sn / (r * Lm);
        return pow_mi(xi, -0.5) * m;
    }
    Mat3 y_plus_inv(const KernelParts& P, int sl) const
    {
        need(P.has_plus());
        const double es = k->c.e_star, ds2 = k->c.d_star * k->c.d_star;
        const cplx xi = P.xi, r2 = P.r * P.r, a1 = P.Lp * P.S1 / ds2, a2 = P.Lp * P.S2 / ds2;
        const double s = sl;
        Mat3 m;
        m << 0.0, a1, a2,
            -(1 + es) * xi, s * a2, -s * a1 / r2,
            (1 + es) * s, xi * a2, -xi * a1 / r2;
        return pow_pi(xi, -0.5) * m;
    }
    Mat3 y_minus_inv(const KernelParts& P, int sl) const
    {
        need(P.has_minus());
        const cplx xi = P.xi, r = P.r, Lm = P.Lm;
        const cplx sn = std::sin(*P.Bm), cs = std::cos(*P.Bm);
        const double s = sl;
        Mat3 m;
        m << 0.0, -r * Lm * sn, Lm * cs,
            xi, s * Lm * cs, s * Lm * sn / r,
            -s, xi * Lm * cs, xi * Lm * sn / r;
        return pow_mi(xi, 0.5) * m;
    }

    Mat3 y_plus(cplx xi, int sl) const { return y_plus(kernel_parts(xi, *k), sl); }
    Mat3 y_minus(cplx xi, int sl) const { return y_minus(kernel_parts(xi, *k), sl); }
    Mat3 y_plus_inv(cplx xi, int sl) const { return y_plus_inv(kernel_parts(xi, *k), sl); }
    Mat3 y_minus_inv(cplx xi, int sl) const { return y_minus_inv(kernel_parts(xi, *k), sl); }

private:
    static void need(bool ok)
    {
        if (!ok) throw OnBranchCut("factor not defined in this half-plane");
    }
};

inline MatrixPair y_matrices(const KernelContext& k) { return MatrixPair{&k}; }

/// Kernel G*(xi, sign lambda) built from its definition.
inline Mat3 g_star(cplx xi, int sl, const KernelContext& k)
{
    const double ds = k.c.d_star, es = k.c.e_star, s = sl;
    const cplx r = rho_star(xi), r2 = r * r;
    Mat3 m;
    m << r2, I * ds * s * r, I * ds * xi * r,
        -I * ds * s * r, r2 + es * xi * xi, -es * xi * s,
        -I * ds * xi * r, -es * xi * s, r2 + es;
    return -m / r2;
}

inline double wh_residual_at(double xi, int sl, const KernelContext& k)
{
    const MatrixPair Y = y_matrices(k);
    const KernelParts P = kernel_parts(xi, k);
    const Mat3 R = Y.y_plus_inv(P, sl) * Y.y_minus(P, sl) - g_star(xi, sl, k) / P.r;
    return R.norm();
}

/// Largest Frobenius residual of Y+^{-1} Y- - G*/rho over the grid.
inline double wh_residual(const KernelContext& k, const std::vector<double>& grid, int sl)
{
    double worst = 0;
    for (double x : grid) worst = std::max(worst, wh_residual_at(x, sl, k));
    return worst;
}

/// (1/2pi) int_0^inf log|(d* rho + 1)/(d* rho - 1)| dt / rho, which equals pi/4.
inline double quarter_pi_identity(double d_star, const quad::Tol& tol = {1e-14, 1e-14})
{
    const double u0 = std::acosh(1.0 / d_star);
    // t = sinh u turns dt/rho into du; the log is singular at u0
    auto f = [&](double u) -> cplx {
        if (u > 700) return 0.0;
        const double ch = std::cosh(u);
        const double x = d_star * ch;
        const double num = 2 * (1 + x) * std::min(x, 1.0);
        // d*^2 cosh^2 u - 1 = d*^2 (cosh u - cosh u0)(cosh u + cosh u0)
        const double dc = 2 * std::sinh((u + u0) / 2) * std::sinh((u - u0) / 2);
        if (dc == 0.0) return 0.0;
        const double den = d_star * d_star * std::abs(dc) * (ch + 1.0 / d_star);
        return std::log1p(num / den);
    };
    const double c = u0 + 1.0;
    cplx v = quad::finite(f, 0.0, u0, tol) + quad::finite(f, u0, c, tol) + quad::upper_tail(f, c, tol);
    return v.real() / (2 * PI);
}

}  // namespace llc
