#pragma once

// Inverse Fourier transform f(y) = (1/2pi) int F(xi) e^{-i xi y} dxi of
// tabulated functions by Filon quadrature on Chebyshev panels.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "errors.hpp"
#include "special_functions.hpp"

namespace llc::fourier {

inline constexpr int NP = 8;  // nodes per panel

struct Panel {
    double m, h;  // centre and half-width
    double lo() const { return m - h; }
    double hi() const { return m + h; }
};

struct GridSpec {
    std::vector<double> kinks;  // points where the transform is only continuous
    double X = 1e7;             // the panels cover [-X, X]
    double grade_min = 1e-9;    // first panel width next to a kink
    double grade_ratio = 1.5;
    double inner_width = 0.5;   // panel width between kinks
    double outer_ratio = 1.15;  // geometric growth for large |xi|
};

namespace detail {

struct NodeTables {
    std::array<double, NP> s{};
    Eigen::Matrix<double, NP, NP> vinv;  // monomial coefficients of the Lagrange basis, column j
    std::array<double, 24> gx{}, gw{};
    Eigen::Matrix<double, 24, NP> lag;  // l_j at the Gauss points

    NodeTables()
    {
        for (int j = 0; j < NP; ++j) s[j] = -std::cos(PI * (j + 0.5) / NP);
        Eigen::Matrix<double, NP, NP> V;
        for (int i = 0; i < NP; ++i)
            for (int k = 0; k < NP; ++k) V(i, k) = std::pow(s[i], k);
        vinv = V.inverse();
        using G = boost::math::quadrature::gauss<double, 24>;
        const auto& ab = G::abscissa();
        const auto& wt = G::weights();
        for (int i = 0; i < 12; ++i) {
            gx[i] = -ab[i];
            gw[i] = wt[i];
            gx[12 + i] = ab[i];
            gw[12 + i] = wt[i];
        }
        for (int g = 0; g < 24; ++g)
            for (int j = 0; j < NP; ++j) {
                double p = 1;
                for (int i = 0; i < NP; ++i)
                    if (i != j) p *= (gx[g] - s[i]) / (s[j] - s[i]);
                lag(g, j) = p;
            }
    }
};

inline const NodeTables& tables()
{
    static const NodeTables t;
    return t;
}

}  // namespace detail

/// w_j(theta) = int_{-1}^{1} l_j(s) e^{-i theta s} ds
inline std::array<cplx, NP> filon_weights(double theta)
{
    const auto& T = detail::tables();
    std::array<cplx, NP> w{};
    if (std::abs(theta) <= 8) {
        for (int g = 0; g < 24; ++g) {
            const cplx e = T.gw[g] * std::exp(-I * theta * T.gx[g]);
            for (int j = 0; j < NP; ++j) w[j] += T.lag(g, j) * e;
        }
        return w;
    }
    // upward recurrence for int s^k e^{-i theta s} ds, stable for |theta| > NP
    std::array<cplx, NP> mu{};
    const cplx em = std::exp(-I * theta), ep = std::exp(I * theta);
    mu[0] = 2 * std::sin(theta) / theta;
    for (int k = 1; k < NP; ++k) {
        const cplx edge = (em - (k % 2 ? -ep : ep)) / (-I * theta);
        mu[k] = edge + double(k) / (I * theta) * mu[k - 1];
    }
    for (int j = 0; j < NP; ++j)
        for (int k = 0; k < NP; ++k) w[j] += T.vinv(k, j) * mu[k];
    return w;
}

/// Panels over [-X, X]: geometric grading into every kink, moderate
/// panels between kinks, geometric growth beyond them.
inline std::vector<Panel> build_panels(const GridSpec& g)
{
    std::vector<double> k = g.kinks;
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    std::vector<double> pts;
    double inner = 1.0;
    for (double v : k) inner = std::max(inner, 2 * std::abs(v));
    pts.push_back(-inner);
    pts.push_back(inner);
    for (std::size_t i = 0; i < k.size(); ++i) {
        double room_l = i == 0 ? k[i] + inner : k[i] - k[i - 1];
        double room_r = i + 1 == k.size() ? inner - k[i] : k[i + 1] - k[i];
        const double reach = 0.5 * std::min({room_l, room_r, 2 * g.inner_width});
        pts.push_back(k[i]);
        for (double d = g.grade_min; d < reach; d *= g.grade_ratio) {
            pts.push_back(k[i] - d);
            pts.push_back(k[i] + d);
        }
        pts.push_back(k[i] - reach);
        pts.push_back(k[i] + reach);
    }
    // the inner region gets no panel wider than inner_width
    std::sort(pts.begin(), pts.end());
    std::vector<double> filled;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        filled.push_back(pts[i]);
        const double gap = pts[i + 1] - pts[i];
        const int n = int(std::ceil(gap / g.inner_width));
        for (int m = 1; m < n; ++m) filled.push_back(pts[i] + gap * m / n);
    }
    filled.push_back(pts.back());
    // geometric outer region on both sides
    std::vector<double> outer;
    for (double x = inner * g.outer_ratio; x < g.X; x *= g.outer_ratio) outer.push_back(x);
    outer.push_back(g.X);
    std::vector<double> all;
    for (auto it = outer.rbegin(); it != outer.rend(); ++it) all.push_back(-*it);
    all.insert(all.end(), filled.begin(), filled.end());
    all.insert(all.end(), outer.begin(), outer.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
        if (all[i + 1] > all[i]) panels.push_back({0.5 * (all[i] + all[i + 1]), 0.5 * (all[i + 1] - all[i])});
    return panels;
}

/// Tabulated vector-valued transform F(xi) with M components, inverted at
/// arbitrary y != 0.  The tails beyond +-X use two integration-by-parts terms.
class FilonInverse {
public:
    using Fn = std::function<std::vector<cplx>(double)>;

    FilonInverse(std::vector<Panel> panels, int M, const Fn& F) : panels_(std::move(panels)), M_(M)
    {
        const auto& T = detail::tables();
        vals_.resize(panels_.size() * NP * M_);
        for (std::size_t p = 0; p < panels_.size(); ++p)
            for (int j = 0; j < NP; ++j) {
                const std::vector<cplx> v = F(panels_[p].m + panels_[p].h * T.s[j]);
                for (int c = 0; c < M_; ++c) vals_[(p * NP + j) * M_ + c] = v[c];
            }
        edge(panels_.front(), 0, -1.0, left_val_, left_der_);
        edge(panels_.back(), panels_.size() - 1, 1.0, right_val_, right_der_);
    }

    int components() const { return M_; }
    std::size_t panel_count() const { return panels_.size(); }
    double X() const { return panels_.back().hi(); }

    std::vector<cplx> operator()(double y) const
    {
        if (std::abs(y) < 1e-300) throw QuadratureNonConvergence("Filon inverse at y = 0");
        std::vector<cplx> out(M_, 0.0);
        for (std::size_t p = 0; p < panels_.size(); ++p) {
            const Panel& P = panels_[p];
            const auto w = filon_weights(y * P.h);
            const cplx ph = P.h * std::exp(-I * y * P.m);
            for (int c = 0; c < M_; ++c) {
                cplx s = 0;
                for (int j = 0; j < NP; ++j) s += w[j] * vals_[(p * NP + j) * M_ + c];
                out[c] += ph * s;
            }
        }
        // int_X^inf F e^{-i y xi} = e^{-iyX} [F(X)/(iy) + F'(X)/(iy)^2 + ...]
        const double Xr = panels_.back().hi(), Xl = panels_.front().lo();
        const cplx iy = I * y;
        const cplx er = std::exp(-iy * Xr), el = std::exp(-iy * Xl);
        for (int c = 0; c < M_; ++c) {
            out[c] += er * (right_val_[c] / iy + right_der_[c] / (iy * iy));
            out[c] -= el * (left_val_[c] / iy + left_der_[c] / (iy * iy));
        }
        for (auto& v : out) v /= 2 * PI;
        return out;
    }

private:
    // value and derivative of the panel interpolant at the outer endpoint s = side
    void edge(const Panel& P, std::size_t p, double side, std::vector<cplx>& val, std::vector<cplx>& der) const
    {
        const auto& T = detail::tables();
        val.assign(M_, 0.0);
        der.assign(M_, 0.0);
        for (int j = 0; j < NP; ++j) {
            double lv = 0, ld = 0;
            for (int k = 0; k < NP; ++k) {
                lv += T.vinv(k, j) * std::pow(side, k);
                if (k > 0) ld += T.vinv(k, j) * k * std::pow(side, k - 1);
            }
            for (int c = 0; c < M_; ++c) {
                val[c] += lv * vals_[(p * NP + j) * M_ + c];
                der[c] += ld / P.h * vals_[(p * NP + j) * M_ + c];
            }
        }
    }

    std::vector<Panel> panels_;
    int M_;
    std::vector<cplx> vals_;
    std::vector<cplx> left_val_, left_der_, right_val_, right_der_;
};

/// Inverse transform of (xi + i)^{-s}: y^{s-1} e^{-y} e^{-i pi s/2} / Gamma(s) for y > 0.
inline cplx inverse_power_plus(cplx s, double y)
{
    if (y <= 0) return 0.0;
    return std::exp((s - 1.0) * std::log(y) - y - I * PI * s / 2.0) / cgamma(s);
}

}  // namespace llc::fourier
