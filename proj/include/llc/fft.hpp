#pragma once

// Thin FFTW wrapper.  Buffers belong to the call; only plan creation is
// serialized, since the FFTW planner is not thread safe.

#include <complex>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "special_functions.hpp"

namespace llc::fft {

namespace detail {

inline std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace detail

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// Unnormalized DFT, sum_n in_n exp(sign 2 pi i k n / N) with sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
inline std::vector<cplx> dft(const std::vector<cplx>& in, int sign)
{
    const int n = int(in.size());
    if (n == 0) return {};
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buf) throw std::bad_alloc();
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::planner_mutex());
        plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
    }
    std::memcpy(buf, in.data(), sizeof(fftw_complex) * n);
    fftw_execute(plan);
    std::vector<cplx> out(n);
    std::memcpy(out.data(), buf, sizeof(fftw_complex) * n);
    {
        std::lock_guard<std::mutex> lock(detail::planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    return out;
}

inline std::vector<cplx> forward(const std::vector<cplx>& in) { return dft(in, FFTW_FORWARD); }

/// Inverse including the 1/N.
inline std::vector<cplx> inverse(const std::vector<cplx>& in)
{
    std::vector<cplx> out = dft(in, FFTW_BACKWARD);
    for (auto& v : out) v /= double(out.size());
    return out;
}

/// Angular frequency of bin k for a forward transform of samples spaced
/// `length / N` apart, under F(lambda) = int f exp(i lambda x) dx.
inline double bin_frequency(std::size_t k, std::size_t n, double length)
{
    const double kk = k <= n / 2 ? double(k) : double(k) - double(n);
    return -2 * PI * kk / length;
}

}  // namespace llc::fft
