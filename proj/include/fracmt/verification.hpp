#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fracmt/errors.hpp"
#include "fracmt/fractional_params.hpp"
#include "fracmt/quadrature.hpp"
#include "fracmt/radial_profile.hpp"
#include "fracmt/special_functions.hpp"

// Independent brute-force verification of the reduction chain: the sphere
// integral of e^{beta cos}, the Bessel-Laplace integral, and a full
// 2N-dimensional Monte Carlo estimate of the Gagliardo integral.

namespace fracmt {

struct McEstimate {
    double mean;
    double std_error;
    long long samples;
    std::uint64_t seed;
};

// int_{S^{N-1}} e^{beta cos(angle)} dH^{N-1}, computed by 1D quadrature of
// (N-1) omega_{N-1} int_0^pi e^{beta cos t} sin^{N-2} t dt and checked against
// the closed form 2 pi^{N/2} (2/beta)^{N/2-1} I_{N/2-1}(beta); returns the
// quadrature value, throws verification_error if the two disagree.
inline double sphere_exp_integral(double beta_arg, int dim, double check_tol = 1e-9) {
    if (!(beta_arg > 0.0)) throw domain_error("sphere_exp_integral: beta must be > 0");
    if (dim < 2) throw domain_error("sphere_exp_integral: dimension must be >= 2");
    const double pref = (dim - 1) * unit_ball_volume(dim - 1);
    auto f = [&](double t) {
        return std::exp(beta_arg * std::cos(t)) * std::pow(std::sin(t), dim - 2);
    };
    AdaptiveResult q = adaptive_gk(f, 0.0, M_PI, 1e-12, 0.0, 2000);
    if (!q.converged) throw convergence_error("sphere_exp_integral: quadrature stalled");
    const double quad = pref * q.value;

    const double nu = 0.5 * dim - 1.0;
    const double closed = 2.0 * std::pow(M_PI, 0.5 * dim) *
                          std::pow(2.0 / beta_arg, nu) * bessel_i(nu, beta_arg).value;
    const double gap = std::abs(quad - closed) / std::abs(closed);
    if (!(gap <= check_tol))
        throw verification_error("sphere_exp_integral: quadrature and Bessel closed form "
                                 "disagree by " + std::to_string(gap));
    return quad;
}

// Relative discrepancy between the quadrature of
//   int_0^inf h^{N/2} e^{-h(r^2+t^2)} I_{N/2-1}(2 r t h) dh
// and the closed form Gamma(N)/Gamma(N/2) (rt)^{N/2-1} (r^2+t^2)/|r^2-t^2|^{N+1}.
inline double bessel_integral_check(double r, double t, int dim) {
    if (!(r > 0.0) || !(t > 0.0))
        throw domain_error("bessel_integral_check: radii must be positive");
    if (r == t) throw domain_error("bessel_integral_check: requires r != t");
    if (dim < 2) throw domain_error("bessel_integral_check: dimension must be >= 2");

    const double nu = 0.5 * dim - 1.0;
    const double s2 = r * r + t * t;
    const double d2 = (r - t) * (r - t);
    const double closed = gamma(double(dim)).value / gamma(0.5 * dim).value *
                          std::pow(r * t, nu) * s2 / std::pow(std::abs(r * r - t * t), dim + 1);

    // e^{-h s2} I_nu(2rth) = e^{-h d2} [e^{-z} I_nu(z)]: the scaled Bessel keeps
    // every intermediate in range for arbitrary r, t
    auto scaled_bessel = [nu](double z) {
        if (z <= 500.0) return bessel_i(nu, z).value * std::exp(-z);
        const double mu = 4.0 * nu * nu;  // large-argument expansion of e^-z I_nu(z)
        const double a1 = (mu - 1.0) / 8.0;
        const double a2 = (mu - 1.0) * (mu - 9.0) / 128.0;
        const double a3 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / 3072.0;
        return (1.0 - a1 / z + a2 / (z * z) - a3 / (z * z * z)) / std::sqrt(2.0 * M_PI * z);
    };
    auto f = [&](double h) {
        if (h == 0.0) return 0.0;
        const double z = 2.0 * r * t * h;
        return std::pow(h, 0.5 * dim) * std::exp(-h * d2) * scaled_bessel(z);
    };
    double H = (2.0 + 0.5 * dim) / d2;
    auto tail_bound = [&](double h_end) {
        // e^{-z} I_nu(z) <= 1.2 / sqrt(2 pi z) for z >= 1
        const double z = 2.0 * r * t * h_end;
        if (z < 1.0 || h_end * d2 < dim) return 1e300;
        const double integrand_end = 1.2 * std::pow(h_end, 0.5 * dim) *
                                     std::exp(-h_end * d2) / std::sqrt(2.0 * M_PI * z);
        return 2.0 * integrand_end / d2;
    };
    while (tail_bound(H) > 1e-12 * closed) H *= 1.5;
    AdaptiveResult q = integrate_marked(f, geometric_marks(0.0, H, std::min(1.0 / s2, H)),
                                        1e-12, 0.0, 2000);
    if (!q.converged) throw convergence_error("bessel_integral_check: quadrature stalled");
    return std::abs(q.value - closed) / closed;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// uniform in [0, 1), 53-bit, engine-agnostic mapping for bit reproducibility
inline double uniform01(std::mt19937_64& gen) {
    return double(gen() >> 11) * 0x1.0p-53;
}

}

// Importance-sampled Monte Carlo for the full 2N-dimensional integral
//   iint |u(x)-u(y)|^p / |x-y|^{2N} dx dy   (sp = N, so N + sp = 2N).
//
// x is drawn uniformly in the support ball (fixed along the first axis by
// radial symmetry); y = x + rho sigma with rho ~ rho^{p-N-1} on (0, D]
// (cancelling the |x-y|^{p-2N} local behaviour; D = support diameter) plus a
// far-field stratum rho ~ rho^{-N-1} on (D, inf). Only cos(angle) between x
// and sigma matters and is drawn from its exact marginal. Deterministic for a
// fixed seed: fixed batches, per-batch sub-seeds from splitmix64, fixed
// accumulation order.
inline McEstimate mc_gagliardo(const RadialProfile& profile, const FractionalParams& params,
                               long long samples, std::uint64_t seed) {
    profile.validate();
    if (params.dim != 2 && params.dim != 3)
        throw domain_error("mc_gagliardo: dimension must be 2 or 3 (desk scale)");
    if (samples < 10000) throw domain_error("mc_gagliardo: need at least 1e4 samples");
    if (profile.interpolation != Interpolation::linear_in_log_r)
        throw domain_error("mc_gagliardo: profile must be Lipschitz in log r "
                           "(linear_in_log_r)");

    const int dim = params.dim;
    const double p = params.p;
    const double R = profile.support_radius();
    const double D = 2.0 * R;
    const double V = unit_ball_volume(dim) * std::pow(R, dim);
    const double S = sphere_area(dim);
    const double w_near = V * S * std::pow(D, p - dim) / (p - dim);
    const double w_far = V * S / (dim * std::pow(D, dim));

    if (profile.is_zero()) return {0.0, 0.0, samples, seed};

    long double acc = 0.0L, acc2 = 0.0L;
    const long long batch = 1 << 16;
    std::uint64_t sm_state = seed;
    long long done = 0;
    while (done < samples) {
        const long long n = std::min(batch, samples - done);
        std::uint64_t sub = detail::splitmix64(sm_state);
        std::mt19937_64 gen(sub);
        long double bacc = 0.0L, bacc2 = 0.0L;
        for (long long i = 0; i < n; ++i) {
            const double rx = R * std::pow(detail::uniform01(gen), 1.0 / dim);
            const double ux = profile(rx);
            // cos(angle(x, y-x)) from the uniform-sphere marginal
            const double c = (dim == 2)
                                 ? std::cos(2.0 * M_PI * detail::uniform01(gen))
                                 : 2.0 * detail::uniform01(gen) - 1.0;
            // near stratum; pairs with y outside the support count twice, since
            // x is drawn inside only and the integrand is symmetric in (x, y)
            const double rho = D * std::pow(detail::uniform01(gen), 1.0 / (p - dim));
            double contrib = 0.0;
            if (rho > 0.0) {
                const double ry = std::sqrt(std::max(0.0, rx * rx + rho * rho + 2.0 * rx * rho * c));
                const double du = std::abs(ux - profile(ry));
                if (du > 0.0)
                    contrib += (ry >= R ? 2.0 : 1.0) * std::pow(du / rho, p) * w_near;
            }
            // far stratum: y always beyond the support (rho2 > D >= 2R), weight 2
            const double c2 = (dim == 2)
                                  ? std::cos(2.0 * M_PI * detail::uniform01(gen))
                                  : 2.0 * detail::uniform01(gen) - 1.0;
            const double rho2 = D * std::pow(std::max(detail::uniform01(gen), 1e-300), -1.0 / dim);
            const double ry2 = std::sqrt(rx * rx + rho2 * rho2 + 2.0 * rx * rho2 * c2);
            const double du2 = std::abs(ux - profile(ry2));
            if (du2 > 0.0) contrib += 2.0 * std::pow(du2, p) * w_far;

            bacc += contrib;
            bacc2 += (long double)contrib * contrib;
        }
        acc += bacc;
        acc2 += bacc2;
        done += n;
    }
    const double mean = double(acc / samples);
    const double var = std::max(0.0L, (long double)(acc2 / samples) - (long double)mean * mean);
    const double std_error = std::sqrt(double(var) / std::max(1.0, double(samples - 1)));
    return {mean, std_error, samples, seed};
}

}
