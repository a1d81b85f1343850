#pragma once

// Test-side oracles, independent of the implementation paths they check:
// the gamma integral representation by quadrature, zetas by long-double bulk
// summation, Bessel / 2F1 by long-double series with stricter stopping, and
// Neville extrapolation for the asymptotic-limit checks.

#include <cmath>
#include <cstdint>
#include <vector>

#include "fracmt/quadrature.hpp"

namespace oracle {

// Gamma(x) = int_0^inf t^{x-1} e^{-t} dt, on t = e^w a doubly-truncated
// smooth integral of e^{x w - e^w}.
inline double gamma_integral(double x) {
    const double log_scale = std::lgamma(x);
    const double w_lo = -(55.0 + std::max(0.0, log_scale)) / x;
    double w_hi = std::log(55.0 + std::abs(log_scale) + 2.0 * x);
    while (x * w_hi - std::exp(w_hi) > -55.0 - std::abs(log_scale)) w_hi += 0.5;
    auto f = [&](double w) { return std::exp(x * w - std::exp(w) - log_scale); };
    fracmt::AdaptiveResult r = fracmt::integrate_marked(
        f, fracmt::geometric_marks(w_lo, w_hi, std::min(1.0, (w_hi - w_lo) / 8.0)), 1e-14, 0.0);
    return r.value * std::exp(log_scale);
}

// B(x,y) split at 1/2 and desingularized by t = u^2 on each half.
inline double beta_integral(double x, double y) {
    auto half = [](double a, double b) {
        auto f = [&](double u) {
            return 2.0 * std::pow(u, 2.0 * a - 1.0) * std::pow(1.0 - u * u, b - 1.0);
        };
        const double lim = std::sqrt(0.5);
        fracmt::GradedResult edge = fracmt::graded_toward_edge(f, 0.0, 0.25 * lim, 1e-16);
        fracmt::AdaptiveResult bulk = fracmt::adaptive_gk(f, 0.25 * lim, lim, 1e-14);
        return edge.value + bulk.value;
    };
    return half(x, y) + half(y, x);
}

// zeta(s, q) by long-double bulk summation (2e5 terms) with a short
// trapezoidal tail, a different regime from the implementation's 15-term
// Euler-Maclaurin split.
inline double hurwitz_sum(double s, double q) {
    const int m = 200000;
    long double acc = 0.0L;
    for (int k = m - 1; k >= 0; --k) acc += std::pow((long double)(q + k), (long double)-s);
    const long double a = q + m;
    acc += std::pow(a, (long double)(1.0 - s)) / (long double)(s - 1.0);
    acc += 0.5L * std::pow(a, (long double)-s);
    acc += (long double)s * std::pow(a, (long double)(-s - 1.0)) / 12.0L;
    return double(acc);
}

inline double zeta_sum(double s) { return hurwitz_sum(s, 1.0); }

// modified Bessel series in long double with a stricter stopping rule
inline double bessel_series(double alpha, double z) {
    const long double h = 0.5L * (long double)z;
    long double term = std::exp((long double)alpha * std::log(h) -
                                (long double)std::lgamma(alpha + 1.0));
    long double sum = term;
    for (int k = 0; k < 2000; ++k) {
        term *= h * h / ((k + 1.0L) * ((long double)alpha + k + 1.0L));
        sum += term;
        if (term < 1e-21L * sum) break;
    }
    return double(sum);
}

// 2F1 series in long double
inline double hyp2f1_series(double a, double b, double c, double z) {
    long double term = 1.0L, sum = 1.0L;
    for (int n = 0; n < 5000; ++n) {
        term *= ((long double)a + n) * ((long double)b + n) /
                (((long double)c + n) * (n + 1.0L)) * (long double)z;
        sum += term;
        if (std::abs((double)term) < 1e-21 * std::abs((double)sum)) break;
    }
    return double(sum);
}

// Neville polynomial extrapolation of (x_i, y_i) to x = 0.
inline double extrapolate_to_zero(std::vector<double> xs, std::vector<double> ys) {
    const std::size_t n = xs.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            ys[i] = ys[i + 1] + (ys[i] - ys[i + 1]) * (0.0 - xs[i + level]) /
                                    (xs[i] - xs[i + level]);
    return ys[0];
}

// Extrapolation of y = (1-s) alpha*_{s,2} to s = 1. With x = 1-s and
// G = (1-s) gamma_{s,2}, the identity alpha* = 2 (G/x)^{s/(2-s)} gives
// y = 2 G^{s/(2-s)} x^{2x/(1+x)}: the factor x^{2x/(1+x)} is explicit and
// carries an x ln x singularity that defeats polynomial extrapolation, so it
// is divided out first and the smooth remainder extrapolated.
inline double extrapolate_alpha_scaled(const std::vector<double>& xs, std::vector<double> ys) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] *= std::pow(xs[i], -2.0 * xs[i] / (1.0 + xs[i]));
    return extrapolate_to_zero(xs, ys);
}

// deterministic uniform helper for randomized spot checks
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    double uniform(double lo, double hi) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = double(state >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

}
