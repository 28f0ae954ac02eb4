#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"

namespace llc {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double PI = std::numbers::pi;

enum class HalfPlane { UPPER, LOWER };

// Which factor a multivalued power refers to; the shift fixes the branch point.
enum class BranchShift { XI_PLUS_I, XI_MINUS_I, XI_PLUS_A, XI_MINUS_A, XI_BARE };

namespace detail {

// Lanczos g = 7, n = 9.
inline constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

template <class T>
std::complex<T> gamma_right(std::complex<T> z)
{
    z -= T(1);
    std::complex<T> x = T(lanczos_p[0]);
    for (int i = 1; i < 9; ++i) x += T(lanczos_p[i]) / (z + T(i));
    const std::complex<T> t = z + T(7.5);
    const T s2pi = std::sqrt(T(2) * std::numbers::pi_v<T>);
    return s2pi * std::exp((z + T(0.5)) * std::log(t) - t) * x;
}

// arg(w) taken in (lo, lo + 2pi]
inline double arg_from(cplx w, double lo)
{
    double th = std::arg(w);
    while (th <= lo) th += 2 * PI;
    while (th > lo + 2 * PI) th -= 2 * PI;
    return th;
}

}  // namespace detail

/// Complex gamma function (Lanczos, reflection for Re z < 1/2).
template <class T = double>
std::complex<T> cgamma(std::complex<T> z)
{
    if (z.imag() == T(0) && z.real() <= T(0) && std::floor(z.real()) == z.real())
        throw PoleAtNonPositiveInteger("cgamma: pole at z = " + std::to_string(double(z.real())));
    if (z.real() < T(0.5)) {
        const T pi = std::numbers::pi_v<T>;
        return pi / (std::sin(pi * z) * detail::gamma_right(std::complex<T>(T(1)) - z));
    }
    return detail::gamma_right(z);
}

/// Single-valued power of a shifted argument.
///
/// Cuts: (xi+i)^al goes down from -i, (xi-i)^al goes up from +i,
/// (xi+a)^al goes down from -a, (xi-a)^al goes up from a.  XI_BARE
/// uses a downward cut under UPPER and an upward cut under LOWER.
inline cplx branch_pow(BranchShift shift, cplx xi, cplx alpha, HalfPlane hp = HalfPlane::UPPER,
                       double a = 0.0)
{
    cplx w;
    double lo;  // the cut is the ray arg(w) = lo
    switch (shift) {
        case BranchShift::XI_PLUS_I: w = xi + I; lo = -PI / 2; break;
        case BranchShift::XI_MINUS_I: w = xi - I; lo = -3 * PI / 2; break;
        case BranchShift::XI_PLUS_A: w = xi + a; lo = -PI / 2; break;
        case BranchShift::XI_MINUS_A: w = xi - a; lo = -3 * PI / 2; break;
        default: w = xi; lo = hp == HalfPlane::UPPER ? -PI / 2 : -3 * PI / 2; break;
    }
    if (w == cplx(0)) {
        if (alpha.real() > 0) return 0.0;
        if (alpha == cplx(0)) return 1.0;
        throw OnBranchCut("branch_pow: branch point");
    }
    if (w.real() == 0.0 && ((lo < -PI && w.imag() > 0) || (lo > -PI && w.imag() < 0)))
        throw OnBranchCut("branch_pow: argument on the cut");
    const double th = detail::arg_from(w, lo);
    return std::exp(alpha * cplx(std::log(std::abs(w)), th));
}

// Shorthands used throughout the factorization code.
inline cplx pow_pi(cplx xi, double al) { return branch_pow(BranchShift::XI_PLUS_I, xi, al); }
inline cplx pow_mi(cplx xi, double al) { return branch_pow(BranchShift::XI_MINUS_I, xi, al); }

}  // namespace llc
