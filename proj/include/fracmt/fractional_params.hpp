#pragma once

#include <cmath>
#include <string>

#include "fracmt/errors.hpp"
#include "fracmt/special_functions.hpp"

namespace fracmt {

// The conformal-case parameter triple (N, s, p) with sp = N, hence p = N/s > N.
struct FractionalParams {
    int dim;
    double s;
    double p;

    static FractionalParams make(int dim, double s) {
        if (dim < 1) throw domain_error("FractionalParams: dimension must be >= 1");
        if (!(s > 0.0) || !(s < 1.0))
            throw domain_error("FractionalParams: s must lie strictly in (0,1); "
                               "the conformal constraint sp = N fixes p = N/s (got s = " +
                               std::to_string(s) + ")");
        return {dim, s, double(dim) / s};
    }
};

inline double unit_ball_volume(int dim) {
    if (dim < 1) throw domain_error("unit_ball_volume: dimension must be >= 1");
    return std::pow(M_PI, 0.5 * dim) / gamma(0.5 * dim + 1.0).value;
}

// Surface measure of the unit sphere S^{N-1}.
inline double sphere_area(int dim) { return dim * unit_ball_volume(dim); }

}
