#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fracmt/errors.hpp"
#include "fracmt/fractional_params.hpp"
#include "fracmt/quadrature.hpp"
#include "fracmt/radial_profile.hpp"

// Gagliardo seminorms of radial profiles via the exact 2D reduction
//
//   [u]^p = (N omega_N)^2 iint |u(r)-u(t)|^p k(r,t) dr dt,
//   k(r,t) = r^{N-1} t^{N-1} (r^2+t^2) / |r^2-t^2|^{N+1},
//
// evaluated in log-radius coordinates xi = ln r, eta = ln t, where
// k dr dt = g(xi-eta) dxi deta with the convolution kernel
//
//   g(d) = cosh(d) / (2^N sinh^{N+1}(d)).
//
// For profiles piecewise linear in ln r the inner shifted-difference integral
// Phi(d) = int |v(xi)-v(xi-d)|^p dxi is evaluated in closed form, so only the
// 1D outer integral 2 int_0^inf g(d) Phi(d) dd is done numerically, with
// geometric grading (ratio 2) toward the diagonal d = 0 where the integrand
// behaves like d^{p-N-1}. Scale invariance under r -> lambda r is exact here
// (a lambda-scaling is a shift in xi, which Phi never sees).

namespace fracmt {

inline double kernel(double r, double t, int dim) {
    if (!(r > 0.0) || !(t > 0.0)) throw domain_error("kernel: radii must be positive");
    if (r == t) throw domain_error("kernel: singular on the diagonal r = t "
                                   "(callers must use graded panels)");
    return std::pow(r, dim - 1) * std::pow(t, dim - 1) * (r * r + t * t) /
           std::pow(std::abs(r * r - t * t), dim + 1);
}

// g(d) above, stable for both tiny and large |d|.
inline double log_kernel(double d, int dim) {
    d = std::abs(d);
    if (d == 0.0) throw domain_error("log_kernel: singular at d = 0");
    return std::exp(-dim * d + std::log1p(std::exp(-2.0 * d)) -
                    (dim + 1) * std::log(-std::expm1(-2.0 * d)));
}

struct SeminormResult {
    double value_p;         // [u]^p, not [u]
    double error_estimate;
    int panels_used;
};

struct MoserDecomposition {
    double eps;
    double i1, i2, i3, i4;
    double total;
};

namespace detail {

// Profile in log-radius: v(xi), constant `left` for xi <= xi.front(),
// zero for xi >= xi.back(), linear or piecewise-constant between knots.
struct LogProfile {
    std::vector<double> xi;
    std::vector<double> v;
    bool linear;
    double left;

    double width() const { return xi.back() - xi.front(); }

    double eval(double x) const {
        if (x <= xi.front()) return left;
        if (x >= xi.back()) return 0.0;
        const auto it = std::upper_bound(xi.begin(), xi.end(), x);
        const std::size_t i = std::size_t(it - xi.begin()) - 1;
        if (!linear) return v[i];
        const double t = (x - xi[i]) / (xi[i + 1] - xi[i]);
        return v[i] + t * (v[i + 1] - v[i]);
    }
};

inline LogProfile make_log_profile(const RadialProfile& profile) {
    LogProfile lp;
    lp.xi.reserve(profile.breakpoints.size());
    for (double b : profile.breakpoints) lp.xi.push_back(std::log(b));
    lp.v = profile.values;
    lp.linear = profile.interpolation == Interpolation::linear_in_log_r;
    lp.left = profile.values.front();
    return lp;
}

// Exact int_a^b |D(xi)|^p dxi for D affine with endpoint values Da, Db.
inline double abs_pow_segment(double Da, double Db, double len, double p) {
    if (!(len > 0.0)) return 0.0;
    const double scale = std::max(std::abs(Da), std::abs(Db));
    if (scale == 0.0) return 0.0;
    if (std::abs(Db - Da) <= 1e-12 * scale)
        return std::pow(0.5 * std::abs(Da + Db), p) * len;
    const double slope = (Db - Da) / len;
    auto F = [p](double x) { return std::copysign(std::pow(std::abs(x), p + 1.0), x); };
    return (F(Db) - F(Da)) / (slope * (p + 1.0));
}

// Phi(d) = int |v(xi) - v(xi - d)|^p dxi, exact for piecewise-linear v.
inline double shifted_difference_integral(const LogProfile& lp, double d, double p) {
    const double lo = lp.xi.front();
    const double hi = lp.xi.back() + d;
    std::vector<double> knots;
    knots.reserve(2 * lp.xi.size() + 2);
    for (double x : lp.xi)
        if (x > lo && x < hi) knots.push_back(x);
    for (double x : lp.xi) {
        const double y = x + d;
        if (y > lo && y < hi) knots.push_back(y);
    }
    knots.push_back(lo);
    knots.push_back(hi);
    std::sort(knots.begin(), knots.end());

    double phi = 0.0;
    double a = knots.front();
    double Da = lp.eval(a) - lp.eval(a - d);
    for (std::size_t i = 1; i < knots.size(); ++i) {
        const double b = knots[i];
        if (!(b > a)) continue;
        if (lp.linear) {
            const double Db = lp.eval(b) - lp.eval(b - d);
            phi += abs_pow_segment(Da, Db, b - a, p);
            a = b;
            Da = Db;
        } else {
            const double m = 0.5 * (a + b);
            phi += std::pow(std::abs(lp.eval(m) - lp.eval(m - d)), p) * (b - a);
            a = b;
        }
    }
    return phi;
}

// For d >= width, Phi(d) = K0 + |v0|^p d exactly.
struct PhiTail {
    double K0;
    double v0p;
};

inline PhiTail phi_tail_coeffs(const LogProfile& lp, double p) {
    const double W = lp.xi.back() - lp.xi.front();
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t i = 0; i + 1 < lp.xi.size(); ++i) {
        const double len = lp.xi[i + 1] - lp.xi[i];
        if (lp.linear) {
            c1 += abs_pow_segment(lp.v[i] - lp.left, lp.v[i + 1] - lp.left, len, p);
            c2 += abs_pow_segment(lp.v[i], lp.v[i + 1], len, p);
        } else {
            c1 += std::pow(std::abs(lp.v[i] - lp.left), p) * len;
            c2 += std::pow(std::abs(lp.v[i]), p) * len;
        }
    }
    const double v0p = std::pow(std::abs(lp.left), p);
    return {c1 + c2 - v0p * W, v0p};
}

// int_D^inf g(d) dd = 1 / (N 2^N sinh^N D), in log form for large D.
inline double log_kernel_tail_integral(double D, int dim) {
    return std::exp(-std::log(double(dim)) -
                    dim * (D + std::log(-std::expm1(-2.0 * D)))) ;
}

}

// Adaptive evaluation of [u]^p with error_estimate <= tol * value_p on success.
inline SeminormResult seminorm_radial(const RadialProfile& profile,
                                      const FractionalParams& params, double tol) {
    profile.validate();
    if (!(tol > 1e-10) || !(tol < 1e-2))
        throw domain_error("seminorm_radial: tol must lie in (1e-10, 1e-2)");
    if (profile.is_zero()) return {0.0, 0.0, 0};

    const int dim = params.dim;
    const double p = params.p;
    const detail::LogProfile lp = detail::make_log_profile(profile);
    const double W = lp.width();
    const double C = std::pow(dim * unit_ball_volume(dim), 2);

    auto f = [&](double d) { return log_kernel(d, dim) *
                                    detail::shifted_difference_integral(lp, d, p); };

    const double d_base = 0.5;
    const double D1 = W + 45.0 / dim + 2.0;
    // unit-width marks across the kink region (Phi has derivative kinks at all
    // knot differences), geometric beyond it
    std::vector<double> marks{d_base};
    for (double d = 1.0; d < std::min(W + 2.0, D1); d += 1.0) marks.push_back(d);
    for (double x : geometric_marks(std::max(marks.back(), W + 2.0), D1, 1.0))
        if (x > marks.back()) marks.push_back(x);

    // analytic bound on the tail beyond D1 from Phi(d) = K0 + |v0|^p d
    const detail::PhiTail tc = detail::phi_tail_coeffs(lp, p);
    const double tail_bound =
        (std::abs(tc.K0) + tc.v0p * (D1 + 2.0 / dim)) * detail::log_kernel_tail_integral(D1, dim);

    double half_value = 0.0, err = 0.0;
    int panels = 0;
    for (int round = 0; round < 3; ++round) {
        const double shrink = std::pow(0.05, round);
        AdaptiveResult mid = integrate_marked(f, marks, 0.25 * tol * shrink, 0.0, 2000);
        GradedResult near = graded_toward_edge(
            f, 0.0, d_base,
            std::max(0.05 * tol * shrink * std::abs(mid.value), 1e-280));
        half_value = mid.value + near.value;
        err = mid.error + near.error + tail_bound;
        panels = mid.panels + near.panels;
        if (err <= 0.5 * tol * std::abs(half_value)) break;
    }

    const double value = 2.0 * C * half_value;
    const double error = 2.0 * C * err;
    if (!(error <= tol * value))
        throw convergence_error("seminorm_radial: quadrature did not converge (value " +
                                std::to_string(value) + ", error estimate " +
                                std::to_string(error) + ", panels " + std::to_string(panels) +
                                ")");
    return {value, error, panels};
}

// The concentration decomposition I(eps) = I1 + I2 + I3 + I4 of the Moser
// family, each term from its reduced 1D form:
//   I1 = 2/(N|ln eps|) int_1^{1/eps} |ln x|^p x^{N-1} (x^2-1)^{-N} dx
//   I2 = 2 int_1^{1/eps} |ln x|^p x^{N-1}(x^2+1)(x^2-1)^{-N-1} dx
//        - (2/|ln eps|) int_eps^1 |ln x|^{p+1} x^{N-1}(1+x^2)(1-x^2)^{-N-1} dx
//        (the integrated-by-parts form; its eps -> 0 limit is the first term alone)
//   I3 = (2 eps^N |ln eps|^{p-1}/N) int_1^inf r^{N-1} (r^2-eps^2)^{-N} dr,
//        inner range mapped to (0,1] by r -> 1/w
//   I4 = 2/(N|ln eps|) int_eps^1 |ln r|^p r^{N-1} (1-r^2)^{-N} dr
// The sum equals [u_eps]^p / (N omega_N)^2.
inline MoserDecomposition moser_decomposition(double eps, const FractionalParams& params,
                                              double tol) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw domain_error("moser_decomposition: eps must lie in (0,1)");
    if (!(tol > 1e-10) || !(tol < 1e-2))
        throw domain_error("moser_decomposition: tol must lie in (1e-10, 1e-2)");
    const int dim = params.dim;
    const double p = params.p;
    const double L = std::abs(std::log(eps));
    const double X = 1.0 / eps;
    const double rt = 0.2 * tol;

    // integral over (1, X] with an edge singularity (x-1)^q, q > -1, at x = 1
    auto upper_integral = [&](auto&& h) {
        const double b1 = std::min(2.0, X);
        AdaptiveResult bulk;
        bulk.converged = true;  // no bulk segment when X <= 2
        if (X > b1) bulk = integrate_log_segmented(h, b1, X, rt);
        if (!bulk.converged)
            throw convergence_error("moser_decomposition: quadrature on (1, 1/eps] stalled");
        GradedResult edge = graded_toward_edge(
            h, 1.0, b1, std::max(rt * 0.2 * std::abs(bulk.value), 1e-280));
        return bulk.value + edge.value;
    };
    // integral over [eps, 1) with the edge at x = 1
    auto lower_integral = [&](auto&& h) {
        const double b0 = std::max(0.5, eps);
        AdaptiveResult bulk;
        bulk.converged = true;
        if (eps < b0) bulk = integrate_log_segmented(h, eps, b0, rt);
        if (!bulk.converged)
            throw convergence_error("moser_decomposition: quadrature on [eps, 1) stalled");
        GradedResult edge = graded_toward_edge(
            h, 1.0, b0, std::max(rt * 0.2 * (std::abs(bulk.value) + 1e-3), 1e-280));
        return bulk.value + edge.value;
    };

    auto h1 = [&](double x) {
        return std::pow(std::log(x), p) * std::pow(x, dim - 1) / std::pow(x * x - 1.0, dim);
    };
    const double i1 = 2.0 / (dim * L) * upper_integral(h1);

    auto a2 = [&](double x) {
        return std::pow(std::log(x), p) * std::pow(x, dim - 1) * (x * x + 1.0) /
               std::pow(x * x - 1.0, dim + 1);
    };
    auto b2 = [&](double x) {
        return std::pow(-std::log(x), p + 1.0) * std::pow(x, dim - 1) * (1.0 + x * x) /
               std::pow(1.0 - x * x, dim + 1);
    };
    const double i2 = 2.0 * upper_integral(a2) - 2.0 / L * lower_integral(b2);

    auto h3 = [&](double w) {
        return std::pow(w, dim - 1) / std::pow(1.0 - eps * eps * w * w, dim);
    };
    AdaptiveResult r3 = adaptive_gk(h3, 0.0, 1.0, rt);
    if (!r3.converged) throw convergence_error("moser_decomposition: I3 quadrature stalled");
    const double i3 = 2.0 * std::pow(eps, dim) * std::pow(L, p - 1.0) / dim * r3.value;

    auto h4 = [&](double r) {
        return std::pow(-std::log(r), p) * std::pow(r, dim - 1) / std::pow(1.0 - r * r, dim);
    };
    const double i4 = 2.0 / (dim * L) * lower_integral(h4);

    MoserDecomposition out{eps, i1, i2, i3, i4, 0.0};
    out.total = i1 + i2 + i3 + i4;
    return out;
}

}
