#pragma once

// Thin wrappers over Boost.Math double-exponential and Gauss-Kronrod rules
// for complex-valued integrands.

#include <cmath>
#include <complex>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "errors.hpp"
#include "special_functions.hpp"

namespace llc::quad {

struct Tol {
    double rel = 1e-13;
    double abs = 1e-10;
};

namespace detail {

inline void check(double err, double L1, const Tol& tol, const char* where)
{
    if (!std::isfinite(err) || err > 1e3 * std::max(tol.abs, tol.rel * L1))
        throw QuadratureNonConvergence(std::string(where) + ": error estimate " + std::to_string(err));
}

inline boost::math::quadrature::tanh_sinh<double>& ts()
{
    thread_local boost::math::quadrature::tanh_sinh<double> q(12);
    return q;
}

inline boost::math::quadrature::exp_sinh<double>& es()
{
    thread_local boost::math::quadrature::exp_sinh<double> q(12);
    return q;
}

}  // namespace detail

/// Integral over [lo, hi]; endpoint singularities are fine.
/// Each half is integrated in a coordinate anchored at its endpoint, so
/// abscissae never round onto a nonzero endpoint.
template <class F>
cplx finite(F&& f, double lo, double hi, const Tol& tol = {})
{
    if (hi <= lo) return 0.0;
    const double w = 0.5 * (hi - lo);
    double err = 0, L1 = 0, err2 = 0, L12 = 0;
    auto left = [&](double v) -> cplx { return w * f(lo + w * v); };
    auto right = [&](double v) -> cplx { return w * f(hi - w * v); };
    cplx v = detail::ts().integrate(left, 0.0, 1.0, tol.rel, &err, &L1);
    v += detail::ts().integrate(right, 0.0, 1.0, tol.rel, &err2, &L12);
    detail::check(err + err2, L1 + L12, tol, "tanh_sinh");
    return v;
}

/// Integral over [lo, +inf).
template <class F>
cplx upper_tail(F&& f, double lo, const Tol& tol = {})
{
    double err = 0, L1 = 0;
    auto g = [&](double u) -> cplx { return f(lo + u); };
    cplx v = detail::es().integrate(g, 0.0, std::numeric_limits<double>::infinity(), tol.rel, &err, &L1);
    detail::check(err, L1, tol, "exp_sinh");
    return v;
}

/// Integral over (-inf, hi].
template <class F>
cplx lower_tail(F&& f, double hi, const Tol& tol = {})
{
    return upper_tail([&](double u) -> cplx { return f(2 * hi - u); }, hi, tol);
}

/// Adaptive Gauss-Kronrod for smooth integrands.
template <class F>
cplx smooth(F&& f, double lo, double hi, const Tol& tol = {})
{
    double err = 0, L1 = 0;
    cplx v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, tol.rel, &err, &L1);
    detail::check(err, L1, tol, "gauss_kronrod");
    return v;
}

}  // namespace llc::quad
