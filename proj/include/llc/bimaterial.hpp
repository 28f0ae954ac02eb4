#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "errors.hpp"
#include "special_functions.hpp"

namespace llc {

struct MaterialPair {
    double nu_plus = 0.3;
    double mu_plus = 1.0;
    double nu_minus = 0.3;
    double mu_minus = 1.0;
    bool swapped = false;

    MaterialPair swap() const { return {nu_minus, mu_minus, nu_plus, mu_plus, !swapped}; }
};

/// Every scalar derived from a material pair.  When `degenerate` is set,
/// a, d1, M_minus, D and B0 are NaN.
struct BimaterialConstants {
    double b = 0, d = 0, e = 0;
    double epsilon = 0;
    double d_star = 0, e_star = 0;
    double d0 = 1, d1 = 0;
    double a = 0;
    cplx M_minus{};
    double e0 = 1;
    cplx D{}, B0{};
    double nu_composite = 0;
    double eta = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;
    double raw_d = 0;  // d before orientation normalization
    MaterialPair pair{};

    double abs_a() const { return -a; }
    // delta*(xi) = d*^2 (xi^2 + 1) - 1
    cplx delta_star(cplx xi) const { return d_star * d_star * (xi - a) * (xi + a); }
};

inline constexpr double degenerate_threshold = 1e-8;

namespace detail {

inline void fill_from_bde(BimaterialConstants& c)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    c.d_star = c.d / c.b;
    c.e_star = c.e / c.b;
    const double ds = c.d_star;
    // atanh keeps the d -> 0 end exact
    c.epsilon = std::atanh(ds) / PI;
    c.d0 = std::pow(1 - ds * ds, 0.25);
    c.d1 = std::log1p(ds) - std::log1p(-ds);
    c.e0 = std::exp(PI * c.epsilon / 2);
    c.nu_composite = (c.d * c.d + c.b * c.e) / (c.b * (c.b + c.e));
    c.degenerate = ds < degenerate_threshold;
    if (c.degenerate) {
        c.a = nan;
        c.M_minus = c.D = c.B0 = cplx(nan, nan);
        return;
    }
    c.a = -std::sqrt(1 - ds * ds) / ds;
    c.M_minus = std::sqrt((1.0 - I * c.a) / 2.0) / c.d0;
    const double r = (1 - c.a * ds) / ds;
    c.D = std::exp(I * c.epsilon * std::log(2.0)) * (std::sqrt(2.0) / 2) * (1.0 + I) * std::sqrt(r);
    c.B0 = PI / 4 - I * 0.5 * std::log(r);
}

}  // namespace detail

inline void validate(const MaterialPair& p)
{
    auto bad_nu = [](double v) { return !(v >= 0.0 && v <= 0.5); };
    if (bad_nu(p.nu_plus)) throw InvalidMaterial("nu_plus outside [0, 0.5]: " + std::to_string(p.nu_plus));
    if (bad_nu(p.nu_minus)) throw InvalidMaterial("nu_minus outside [0, 0.5]: " + std::to_string(p.nu_minus));
    if (!(p.mu_plus > 0)) throw InvalidMaterial("mu_plus must be positive");
    if (!(p.mu_minus > 0)) throw InvalidMaterial("mu_minus must be positive");
}

/// epsilon from the shear moduli and Poisson ratios directly.
inline double epsilon_from_moduli(const MaterialPair& p)
{
    return std::log((p.mu_plus + (3 - 4 * p.nu_plus) * p.mu_minus) /
                    (p.mu_minus + (3 - 4 * p.nu_minus) * p.mu_plus)) /
           (2 * PI);
}

inline BimaterialConstants derive_constants(MaterialPair pair)
{
    validate(pair);
    auto raw_d = [](const MaterialPair& p) {
        return (1 - 2 * p.nu_plus) / (2 * p.mu_plus) - (1 - 2 * p.nu_minus) / (2 * p.mu_minus);
    };
    BimaterialConstants c;
    c.raw_d = raw_d(pair);
    if (c.raw_d < 0) pair = pair.swap();
    c.pair = pair;
    c.b = (1 - pair.nu_plus) / pair.mu_plus + (1 - pair.nu_minus) / pair.mu_minus;
    c.d = std::max(0.0, raw_d(pair));
    c.e = pair.nu_plus / pair.mu_plus + pair.nu_minus / pair.mu_minus;
    c.eta = (pair.mu_plus - pair.mu_minus) / (pair.mu_plus + pair.mu_minus);
    detail::fill_from_bde(c);

    const double eps_moduli = epsilon_from_moduli(pair);
    const double eps_bd = std::log((c.b + c.d) / (c.b - c.d)) / (2 * PI);
    if (std::abs(eps_moduli - c.epsilon) > 1e-12 || std::abs(eps_bd - c.epsilon) > 1e-12)
        throw std::logic_error("derive_constants: epsilon cross-check failed");
    return c;
}

/// Constants from (b, d, e) with no moduli behind them; used to reach
/// d* values no isotropic pair can produce.
inline BimaterialConstants constants_from_bde(double b, double d, double e)
{
    if (!(b > 0) || !(d >= 0) || !(d < b) || !(e >= 0))
        throw InvalidMaterial("constants_from_bde: need b > 0, 0 <= d < b, e >= 0");
    BimaterialConstants c;
    c.b = b;
    c.d = c.raw_d = d;
    c.e = e;
    detail::fill_from_bde(c);
    return c;
}

inline BimaterialConstants constants_from_reduced(double d_star, double e_star)
{
    return constants_from_bde(1.0, d_star, e_star);
}

}  // namespace llc
