#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fracmt/errors.hpp"
#include "fracmt/fractional_params.hpp"
#include "fracmt/quadrature.hpp"
#include "fracmt/special_functions.hpp"

// The threshold constants of the conformal fractional setting:
//
//   S(N,p)     = sum_{k>=0} (N+k-1)!/k! * (N+2k)^-p            (p > N)
//   gamma_sN   = 2 (N omega_N)^2 Gamma(p+1)/N! * S(N,p)
//   alpha*_sN  = N * gamma_sN^{s/(N-s)}
//
// S(N,p) is evaluated three ways: literal summation with an integral-comparison
// tail (method `direct`), the exact Hurwitz-zeta re-centering about k + N/2
// (method `hurwitz_closed`), and the dedicated N = 2,3,4 closed forms
// (method `small_n_closed`). The routes are independent and must agree.

namespace fracmt {

enum class SeriesMethod { direct, hurwitz_closed, small_n_closed };

inline const char* to_string(SeriesMethod m) {
    switch (m) {
        case SeriesMethod::direct: return "direct";
        case SeriesMethod::hurwitz_closed: return "hurwitz_closed";
        case SeriesMethod::small_n_closed: return "small_n_closed";
    }
    return "?";
}

struct SeriesEvaluation {
    double value;
    SeriesMethod method;
    long long terms_used;
    double tail_bound;
};

struct GammaConstant {
    FractionalParams params;
    double gamma_value;
    SeriesEvaluation series;
};

// Integer coefficients b_m with  prod_{j=1}^{N-1}(k+j) = 2^{-(N-1)} sum_m b_m (2k+N)^m.
// (Expansion of the factorial ratio about k + N/2; all offsets 2j - N are integers,
// so the re-centered coefficients are exact dyadic rationals.)
inline std::vector<std::int64_t> factorial_ratio_coeffs(int dim) {
    if (dim < 1 || dim > 20)
        throw domain_error("factorial_ratio_coeffs: dimension must be in [1, 20]");
    std::vector<std::int64_t> c{1};
    for (int j = 1; j < dim; ++j) {
        const std::int64_t off = 2 * j - dim;
        std::vector<std::int64_t> next(c.size() + 1, 0);
        for (std::size_t m = 0; m < c.size(); ++m) {
            next[m] += c[m] * off;
            next[m + 1] += c[m];
        }
        c = std::move(next);
    }
    return c;
}

namespace detail {

// Summand (N+k-1)!/k! (N+2k)^-p at real argument x >= 0, via the exact product
// form of the gamma ratio for integer N (stable in log space; no factorial overflow).
inline double series_summand(int dim, double p, double x) {
    double lg = 0.0;
    for (int j = 1; j < dim; ++j) lg += std::log(x + j);
    return std::exp(lg - p * std::log(dim + 2.0 * x));
}

// d/dx log summand = sum_j 1/(x+j) - 2p/(N+2x)
inline double series_summand_logderiv(int dim, double p, double x) {
    double d = 0.0;
    for (int j = 1; j < dim; ++j) d += 1.0 / (x + j);
    return d - 2.0 * p / (dim + 2.0 * x);
}

// log summand at x = e^t, stable for t far beyond the overflow range of e^t
inline double series_summand_log_at(int dim, double p, double t) {
    const double emt = (t < 700.0) ? std::exp(-t) : 0.0;
    double lg = 0.0;
    for (int j = 1; j < dim; ++j) lg += t + std::log1p(j * emt);
    return lg - p * (t + std::log(2.0 + dim * emt));
}

}

// Literal summation of S(N,p): partial sum of the defining series plus the
// integral-comparison tail int_{K-1/2}^inf f(x) dx. The midpoint-rule residual
// (1/24)|f'(K-1/2)| bounds the sum-vs-integral gap and is reported in tail_bound
// together with the quadrature error and the analytic remainder
// f <= 2^-p (1+N/x)^{N-1} x^{N-1-p} integrated beyond the quadrature cutoff.
inline SeriesEvaluation series_direct(const FractionalParams& params, double rel_tol) {
    if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2))
        throw domain_error("series_direct: rel_tol must lie in (1e-14, 1e-2)");
    const int dim = params.dim;
    const double p = params.p;
    const double excess = p - dim;  // > 0

    double sum = 0.0, comp = 0.0;  // Kahan
    long long k = 0;
    long long cap = 256;
    double bound_mid = 0.0;
    double est_total = 0.0;
    for (;;) {
        for (; k < cap; ++k) {
            const double y = detail::series_summand(dim, p, double(k)) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        const double a = double(k) - 0.5;
        const double fa = detail::series_summand(dim, p, a);
        bound_mid = fa * std::abs(detail::series_summand_logderiv(dim, p, a)) / 24.0;
        const double tail_rough = fa * (a + 0.5 * dim) / excess;
        est_total = sum + tail_rough;
        if (bound_mid <= 0.25 * rel_tol * est_total) break;
        if (cap >= (1LL << 21))
            throw convergence_error(
                "series_direct: tail bound unreachable within the term cap (p too close to N); "
                "use the Hurwitz closed form");
        cap *= 2;
    }

    // tail integral on x = a e^y, integrand a e^y f(a e^y) ~ e^{-(p-N)y};
    // evaluated in log space so huge x never materializes
    const double a = double(k) - 0.5;
    const double log_a = std::log(a);
    auto g = [&](double y) {
        const double t = log_a + y;
        const double lg = t + detail::series_summand_log_at(dim, p, t);
        return (lg < -745.0) ? 0.0 : std::exp(lg);
    };
    // pick the cutoff from the analytic remainder bound
    // f <= 2^-p (1+N/x)^{N-1} x^{N-1-p}, integrated beyond x = a e^Y
    auto remainder = [&](double y_end) {
        const double t = log_a + y_end;
        const double lg = -p * std::log(2.0) + (dim - p) * t - std::log(excess) +
                          (dim - 1) * std::log1p(dim * ((t < 700.0) ? std::exp(-t) : 0.0));
        return (lg < -745.0) ? 0.0 : std::exp(lg);
    };
    double Y = 10.0 / excess;
    while (remainder(Y) > 0.05 * rel_tol * est_total && Y < 1e12 / excess) Y *= 1.5;
    // geometric marks from unit width: the gamma-ratio corrections form an O(1)
    // boundary layer at y = 0 that wide panels would sample right past
    AdaptiveResult tail = integrate_marked(g, geometric_marks(0.0, Y, 1.0), 0.5 * rel_tol,
                                           0.2 * rel_tol * est_total, 2000);

    const double value = sum + tail.value;
    const double tb = bound_mid + tail.error + remainder(Y);
    if (!(tb <= rel_tol * value))
        throw convergence_error("series_direct: requested tolerance not reached "
                                "(achieved bound " + std::to_string(tb) + ")");
    return {value, SeriesMethod::direct, k, tb};
}

// Exact re-centering: S(N,p) = 2^{-p-N+1} sum_m b_m 2^m zeta(p-m, N/2).
inline SeriesEvaluation series_hurwitz_closed(const FractionalParams& params) {
    const int dim = params.dim;
    const double p = params.p;
    if (!(p - dim > 1e-9))
        throw domain_error("series_hurwitz_closed: needs all zeta arguments > 1 "
                           "(p must exceed N by more than 1e-9)");
    const std::vector<std::int64_t> b = factorial_ratio_coeffs(dim);
    const double q = 0.5 * dim;
    double acc = 0.0, bound = 0.0;
    for (std::size_t m = 0; m < b.size(); ++m) {
        if (b[m] == 0) continue;
        const EvalResult z = hurwitz_zeta(p - double(m), q);
        const double w = double(b[m]) * std::ldexp(1.0, int(m));
        acc += w * z.value;
        bound += std::abs(w) * z.abs_error_bound;
    }
    const double scale = std::pow(2.0, -p - dim + 1);
    return {scale * acc, SeriesMethod::hurwitz_closed, (long long)b.size(),
            scale * bound + 4e-16 * std::abs(scale * acc)};
}

// Dedicated closed forms for N = 2, 3, 4.
inline SeriesEvaluation series_small_n_closed(const FractionalParams& params) {
    const int dim = params.dim;
    const double p = params.p;
    const double tp = std::pow(2.0, -p);
    double v;
    switch (dim) {
        case 2:
            v = tp * riemann_zeta(p - 1.0).value;
            break;
        case 3:
            v = tp * ((std::pow(2.0, p - 2.0) - 1.0) * riemann_zeta(p - 2.0).value -
                      0.25 * (std::pow(2.0, p) - 1.0) * riemann_zeta(p).value);
            break;
        case 4:
            v = tp * (riemann_zeta(p - 3.0).value - riemann_zeta(p - 1.0).value);
            break;
        default:
            throw domain_error("series_small_n_closed: closed forms exist for N = 2, 3, 4 only");
    }
    return {v, SeriesMethod::small_n_closed, dim, 1e-12 * std::abs(v)};
}

inline SeriesEvaluation evaluate_series(const FractionalParams& params, SeriesMethod method,
                                        double rel_tol = 1e-10) {
    switch (method) {
        case SeriesMethod::direct: return series_direct(params, rel_tol);
        case SeriesMethod::small_n_closed: return series_small_n_closed(params);
        case SeriesMethod::hurwitz_closed: default: return series_hurwitz_closed(params);
    }
}

inline GammaConstant gamma_constant(const FractionalParams& params,
                                    SeriesMethod method = SeriesMethod::hurwitz_closed) {
    const SeriesEvaluation series = evaluate_series(params, method);
    const int dim = params.dim;
    const double p = params.p;
    const double surface = dim * unit_ball_volume(dim);  // N omega_N
    const double log_pref = std::log(2.0) + 2.0 * std::log(surface) + lgamma_pos(p + 1.0) -
                            lgamma_pos(dim + 1.0);
    if (log_pref + std::log(series.value) > 709.0)
        throw overflow_error("gamma_constant: value overflows double");
    return {params, std::exp(log_pref) * series.value, series};
}

inline double alpha_star_from_gamma(double gamma_value, const FractionalParams& params) {
    return params.dim * std::pow(gamma_value, params.s / (params.dim - params.s));
}

inline double alpha_star(const FractionalParams& params) {
    return alpha_star_from_gamma(gamma_constant(params).gamma_value, params);
}

// K(p,N) = (1/p) int_{S^{N-1}} |<sigma,e>|^p dH^{N-1}
//        = (1/p) S_{N-2} B((p+1)/2, (N-1)/2),  with S_0 = 2.
inline double bbm_constant(double p, int dim) {
    if (!(p >= 1.0)) throw domain_error("bbm_constant: p must be >= 1");
    if (dim < 2) throw domain_error("bbm_constant: dimension must be >= 2");
    const double s_nm2 = (dim - 1) * unit_ball_volume(dim - 1);  // = 2 for N = 2
    return s_nm2 * beta(0.5 * (p + 1.0), 0.5 * (dim - 1.0)).value / p;
}

}
