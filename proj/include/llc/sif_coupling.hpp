#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "bimaterial.hpp"
#include "errors.hpp"
#include "special_functions.hpp"

namespace llc {

using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

/// Fourier-side constants of the near-tip expansions.
struct NearTipConstants {
    cplx c1, c2, g1, g2, v1, v2, w1, w2;
    double e0 = 1;
};

inline NearTipConstants near_tip_constants(const BimaterialConstants& c)
{
    const double eps = c.epsilon, sp = std::sqrt(PI);
    NearTipConstants n;
    n.e0 = std::exp(eps * PI / 2);
    n.c1 = (1.0 + I) * sp / (2.0 * cgamma(cplx(0.5, eps)));
    n.c2 = (1.0 + I) * sp / (2.0 * cgamma(cplx(0.5, -eps)));
    n.g1 = (1.0 - I) * sp / (2.0 * cgamma(cplx(1.5, eps)));
    n.g2 = (1.0 - I) * sp / (2.0 * cgamma(cplx(1.5, -eps)));
    const double bd = c.b * c.d0 * c.d0;
    n.v1 = -I * bd / (4.0 * n.c1);
    n.v2 = -I * bd / (4.0 * n.c2);
    n.w1 = I * bd / (4.0 * n.g1) * cgamma(cplx(3, 2 * eps));
    n.w2 = I * bd / (4.0 * n.g2) * cgamma(cplx(3, -2 * eps));
    return n;
}

namespace detail {

inline void require_nondegenerate(const BimaterialConstants& c, const char* who)
{
    if (c.degenerate) throw DegenerateBimaterial(std::string(who) + ": d* below threshold");
}

// |lambda|^{i eps} for real lambda != 0
inline cplx abs_pow_ieps(double x, double eps) { return std::exp(I * eps * std::log(std::abs(x))); }

}  // namespace detail

/// Matrix A(lambda) linking the near-front weight-function amplitudes to the SIFs.
inline Mat3 coupling_a(double lambda, const BimaterialConstants& c)
{
    detail::require_nondegenerate(c, "coupling_a");
    const NearTipConstants n = near_tip_constants(c);
    const double ds = c.d_star, a = c.a, es = c.e_star, L = std::abs(lambda), sl = lambda > 0 ? 1 : -1;
    const cplx li = detail::abs_pow_ieps(lambda, c.epsilon), q = std::sqrt(1.0 - I * a), D = c.D;
    const double r2 = std::sqrt(2.0);
    Mat3 A;
    A << -sl * 2 * ds * q / n.c1 * D / li, -sl * 2 * ds * q / n.c2 * li / D, 2 * r2 * (1.0 + I),
        ds * q / n.c1 * D / li, -ds * q / n.c2 * li / D, -sl * r2 * (1.0 + I) * (1 + es) / ((I - a) * a * ds * ds),
        2.0 * (1.0 - I * a) * std::pow(ds, 1.5) / ((1.0 + I) * n.c1 * std::sqrt(1 - a * ds)) * D / li,
        2.0 * (1.0 - I * a) * std::sqrt(ds) * std::sqrt(1 - a * ds) / ((1.0 - I) * n.c2) * li / D, 0.0;
    return std::sqrt(L) / (4 * r2) * A;
}

/// The raw entries b~_kj(lambda).
inline Mat3 coupling_b_tilde_raw(double lambda, const BimaterialConstants& c)
{
    detail::require_nondegenerate(c, "coupling_b_tilde");
    const NearTipConstants n = near_tip_constants(c);
    const double ds = c.d_star, a = c.a, es = c.e_star, sL = std::sqrt(std::abs(lambda)), sl = lambda > 0 ? 1 : -1;
    const cplx li = detail::abs_pow_ieps(lambda, c.epsilon), q = std::sqrt(1.0 - I * a), D = c.D;
    const cplx m = -I + a, p1 = li / (D * sL), p2 = D / (li * sL);
    const double r2 = std::sqrt(2.0);
    Mat3 B;
    B << -sl * n.c1 * (-1.0 + m * ds) * (1 + es) / (m * ds * ds) * p1, 2.0 * n.c1 * (-1.0 + m * ds) * a * p1,
        2.0 * I * n.c1 * ((1.0 + I * a) * ds * ds + es) * p1,
        -sl * n.c2 * (1.0 + m * ds) * (1 + es) / (m * ds * ds) * p2, 2.0 * n.c2 * (1.0 + m * ds) * a * p2,
        2.0 * I * n.c2 * ((1.0 + I * a) * ds * ds - 2.0 - es) * p2,
        -(1.0 - I) / r2 * a * ds * q / sL, -r2 * sl * (1.0 + I) * (1.0 + I * a) * a * ds * ds * q / sL,
        -r2 * sl * (1.0 + I) * m * a * ds * ds * ds * q / sL;
    return B;
}

inline cplx coupling_scale(const BimaterialConstants& c)
{
    return std::sqrt(2.0) / (std::sqrt(1.0 - I * c.a) * (-c.a * c.d_star + 1 + c.e_star));
}

/// B~(lambda), the inverse of A(lambda).
inline Mat3 coupling_b_tilde(double lambda, const BimaterialConstants& c)
{
    return coupling_scale(c) * coupling_b_tilde_raw(lambda, c);
}

/// The raw physical-space entries b_kj(x3).
inline Mat3 coupling_b_phys_raw(double x3, const BimaterialConstants& c)
{
    detail::require_nondegenerate(c, "coupling_b_phys");
    const NearTipConstants n = near_tip_constants(c);
    const double ds = c.d_star, a = c.a, es = c.e_star, eps = c.epsilon;
    const double sx = std::sqrt(std::abs(x3)), sg = x3 > 0 ? 1 : -1, sp = std::sqrt(PI);
    const cplx xi = detail::abs_pow_ieps(x3, eps), q = std::sqrt(1.0 - I * a), D = c.D, m = -I + a;
    const cplx gp = cgamma(cplx(0.5, eps)), gm = cgamma(cplx(0.5, -eps));
    auto cosq = [](cplx z) { return std::cos(PI * z / 4.0); };
    const cplx k1 = gp / (D * xi * sx), k2 = gm * D * xi / sx;
    Mat3 B;
    B << -I / PI * sg * n.c1 * (-1.0 + m * ds) * (1 + es) / (m * ds * ds) * cosq(cplx(3, 2 * eps)) * k1,
        2 / PI * n.c1 * (-1.0 + m * ds) * a * cosq(cplx(1, 2 * eps)) * k1,
        2.0 * I / PI * n.c1 * ((1.0 + I * a) * ds * ds + es) * cosq(cplx(1, 2 * eps)) * k1,
        -I / PI * sg * n.c2 * (1.0 + m * ds) * (1 + es) / (m * ds * ds) * cosq(cplx(3, -2 * eps)) * k2,
        2 / PI * n.c2 * (1.0 + m * ds) * a * cosq(cplx(1, -2 * eps)) * k2,
        2.0 * I / PI * n.c2 * ((1.0 + I * a) * ds * ds - 2.0 - es) * cosq(cplx(1, -2 * eps)) * k2,
        -(1.0 - I) / (2 * sp) * a * ds * q / sx, I / sp * sg * (1.0 + I) * (1.0 + I * a) * a * ds * ds * q / sx,
        I / sp * sg * (1.0 + I) * m * a * ds * ds * ds * q / sx;
    return B;
}

/// Physical-space kernel B(x3), the inverse transform of B~(lambda).
inline Mat3 coupling_b_phys(double x3, const BimaterialConstants& c)
{
    return coupling_scale(c) * coupling_b_phys_raw(x3, c);
}

struct CouplingMatrices {
    BimaterialConstants c;

    Mat3 A(double lambda) const { return coupling_a(lambda, c); }
    Mat3 B_tilde(double lambda) const { return coupling_b_tilde(lambda, c); }
    Mat3 B_phys(double x3) const { return coupling_b_phys(x3, c); }
};

inline CouplingMatrices coupling_matrices(const BimaterialConstants& c)
{
    detail::require_nondegenerate(c, "coupling_matrices");
    return {c};
}

}  // namespace llc
