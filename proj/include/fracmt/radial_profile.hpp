#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fracmt/errors.hpp"
#include "fracmt/fractional_params.hpp"

namespace fracmt {

enum class Interpolation { linear_in_log_r, constant };

inline const char* to_string(Interpolation i) {
    return i == Interpolation::linear_in_log_r ? "linear_in_log_r" : "constant";
}

// Piecewise description of a radial function r -> u(r): constant value
// values.front() on (0, breakpoints.front()], interpolated between breakpoints
// (linearly in ln r, or piecewise constant), zero on [breakpoints.back(), inf).
// Compact support is enforced through values.back() == 0.
struct RadialProfile {
    std::vector<double> breakpoints;
    std::vector<double> values;
    Interpolation interpolation = Interpolation::linear_in_log_r;

    void validate() const {
        if (breakpoints.empty() || breakpoints.size() != values.size())
            throw domain_error("RadialProfile: breakpoints and values must be nonempty and "
                               "of equal length");
        if (!(breakpoints.front() > 0.0))
            throw domain_error("RadialProfile: breakpoints must be positive");
        for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
            if (!(breakpoints[i] < breakpoints[i + 1]))
                throw domain_error("RadialProfile: breakpoints must be strictly increasing");
        for (double v : values)
            if (!std::isfinite(v)) throw domain_error("RadialProfile: values must be finite");
        if (values.back() != 0.0)
            throw domain_error("RadialProfile: last value must be 0 (compact support)");
    }

    double support_radius() const { return breakpoints.back(); }

    bool is_zero() const {
        return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
    }

    double operator()(double r) const {
        if (!(r > 0.0)) return values.front();
        if (r <= breakpoints.front()) return values.front();
        if (r >= breakpoints.back()) return 0.0;
        const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
        const std::size_t i = std::size_t(it - breakpoints.begin()) - 1;
        if (interpolation == Interpolation::constant) return values[i];
        const double t = (std::log(r) - std::log(breakpoints[i])) /
                         (std::log(breakpoints[i + 1]) - std::log(breakpoints[i]));
        return values[i] + t * (values[i + 1] - values[i]);
    }

    RadialProfile scaled_argument(double lambda) const {  // u(lambda r)
        RadialProfile out = *this;
        for (double& b : out.breakpoints) b /= lambda;
        return out;
    }

    RadialProfile scaled_values(double c) const {  // c * u(r)
        RadialProfile out = *this;
        for (double& v : out.values) v *= c;
        return out;
    }
};

// The concentrating family: plateau |ln eps|^{(N-s)/N} on (0, eps], decay
// |ln r| / |ln eps|^{s/N} on (eps, 1), zero outside. Exactly representable
// with two breakpoints and linear-in-log-r interpolation.
inline RadialProfile moser_profile(double eps, const FractionalParams& params) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw domain_error("moser_profile: eps must lie in (0,1)");
    const double L = std::abs(std::log(eps));
    const double plateau = std::pow(L, (params.dim - params.s) / params.dim);
    return RadialProfile{{eps, 1.0}, {plateau, 0.0}, Interpolation::linear_in_log_r};
}

// Sample profiles used by the verification suite and tests.

// (1 - r^2)_+^2 sampled on `knots` log-spaced breakpoints in [1e-3, 1]
inline RadialProfile bump_profile(int knots = 400) {
    if (knots < 2) throw domain_error("bump_profile: need at least 2 knots");
    RadialProfile prof;
    prof.interpolation = Interpolation::linear_in_log_r;
    for (int i = 0; i <= knots; ++i) {
        const double r = std::pow(10.0, -3.0 + 3.0 * double(i) / knots);
        const double w = 1.0 - r * r;
        prof.breakpoints.push_back(r);
        prof.values.push_back(w > 0.0 ? w * w : 0.0);
    }
    prof.values.back() = 0.0;
    return prof;
}

// plateau 1 up to 0.3, log-linear decay to zero at 1
inline RadialProfile tent_profile() {
    return RadialProfile{{0.05, 0.3, 1.0}, {1.0, 1.0, 0.0}, Interpolation::linear_in_log_r};
}

}
