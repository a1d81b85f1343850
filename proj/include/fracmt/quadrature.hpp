#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fracmt/errors.hpp"

// Panel-based 1D quadrature: a fixed-order 15-point Gauss-Kronrod rule with the
// embedded 7-point Gauss rule as error estimator, plus an adaptive bisection
// driver and a geometrically graded driver for integrable edge singularities.

namespace fracmt {

struct PanelResult {
    double value;
    double error;
    double resabs;
};

namespace detail {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights.
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}

template <class F>
PanelResult gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv1[7], fv2[7];
    const double fc = f(c);
    double resk = detail::gk15_wk[7] * fc;
    double resg = detail::gk15_wg[3] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * detail::gk15_x[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        const double fsum = fv1[j] + fv2[j];
        resk += detail::gk15_wk[j] * fsum;
        resabs += detail::gk15_wk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += detail::gk15_wg[j / 2] * fsum;
    }

    resk *= h;
    resg *= h;
    resabs *= std::abs(h);

    // Plain |K15 - G7| as the error estimate. It overestimates on smooth
    // integrands (costing extra refinement) but is not fooled by panels much
    // wider than the integrand's variation scale, which the usual rescaled
    // heuristic can accept prematurely.
    const double eps = std::numeric_limits<double>::epsilon();
    const double err = std::max(std::abs(resk - resg), 20.0 * eps * resabs);
    return {resk, err, resabs};
}

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    bool converged = false;
};

// Bisection-adaptive integration of a bounded integrand on [a, b].
template <class F>
AdaptiveResult adaptive_gk(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                           int max_panels = 4000) {
    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> panels;
    const PanelResult first = gk15(f, a, b);
    panels.push_back({a, b, first.value, first.error});

    AdaptiveResult out;
    out.panels = 1;
    for (;;) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        out.value = total;
        out.error = err;
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (err <= target) {
            out.converged = true;
            return out;
        }
        if (out.panels >= max_panels) return out;
        const Panel w = panels[worst];
        const double mid = 0.5 * (w.a + w.b);
        if (!(mid > w.a && mid < w.b)) return out;  // interval exhausted by rounding
        const PanelResult left = gk15(f, w.a, mid);
        const PanelResult right = gk15(f, mid, w.b);
        panels[worst] = {w.a, mid, left.value, left.error};
        panels.push_back({mid, w.b, right.value, right.error});
        out.panels++;
    }
}

// Integration on [a, b] where b/a is huge and the mass location is unknown a
// priori: split at geometric marks a*4^j so no scale is skipped, then refine.
template <class F>
AdaptiveResult integrate_log_segmented(F&& f, double a, double b, double rel_tol,
                                       double abs_tol = 0.0, int max_panels_per_seg = 600) {
    if (!(a > 0.0) || !(b > a)) throw domain_error("integrate_log_segmented: need 0 < a < b");
    AdaptiveResult out;
    std::vector<std::pair<double, double>> segs;
    double lo = a;
    while (lo * 4.0 < b) {
        segs.emplace_back(lo, lo * 4.0);
        lo *= 4.0;
    }
    segs.emplace_back(lo, b);
    // first pass for a magnitude estimate, second pass against the shared budget
    double rough = 0.0;
    for (auto& s : segs) rough += std::abs(gk15(f, s.first, s.second).value);
    const double budget = std::max(abs_tol, rel_tol * rough) / double(segs.size() + 1);
    out.converged = true;
    for (auto& s : segs) {
        AdaptiveResult r = adaptive_gk(f, s.first, s.second, 0.5 * rel_tol, budget,
                                       max_panels_per_seg);
        out.value += r.value;
        out.error += r.error;
        out.panels += r.panels;
        out.converged = out.converged && r.converged;
    }
    return out;
}

// Marks a, a+w, a+2w, a+4w, ... , b: geometric segmentation with an explicit
// smallest scale w, so features of width >= w near `a` cannot fall between
// quadrature nodes of a panel much wider than they are.
inline std::vector<double> geometric_marks(double a, double b, double first_width) {
    std::vector<double> m{a};
    double w = first_width;
    double x = a + w;
    while (x < b) {
        m.push_back(x);
        w *= 2.0;
        x += w;
    }
    m.push_back(b);
    return m;
}

// Adaptive integration over an explicit segment list with a shared error budget.
template <class F>
AdaptiveResult integrate_marked(F&& f, const std::vector<double>& marks, double rel_tol,
                                double abs_tol = 0.0, int max_panels_per_seg = 600) {
    AdaptiveResult out;
    if (marks.size() < 2) {
        out.converged = true;
        return out;
    }
    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i)
        rough += std::abs(gk15(f, marks[i], marks[i + 1]).value);
    const double budget =
        std::max(abs_tol, rel_tol * rough) / double(marks.size());
    out.converged = true;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        AdaptiveResult r =
            adaptive_gk(f, marks[i], marks[i + 1], 0.5 * rel_tol, budget, max_panels_per_seg);
        out.value += r.value;
        out.error += r.error;
        out.panels += r.panels;
        out.converged = out.converged && r.converged;
    }
    return out;
}

struct GradedResult {
    double value = 0.0;
    double error = 0.0;  // includes the bound on the un-integrated remainder at the edge
    int panels = 0;
    bool converged = false;
};

// Geometric grading (ratio 2) toward an integrable singularity at `edge`.
// Covers the half-open interval (edge, far]; level k is the dyadic band at
// distance |far-edge|*2^-(k+1) .. 2^-k from the edge. Stops once the
// geometric-series bound on the remaining levels falls below abs_target.
template <class F>
GradedResult graded_toward_edge(F&& f, double edge, double far, double abs_target,
                                int max_levels = 40000) {
    GradedResult out;
    const double w = far - edge;
    if (w == 0.0) {
        out.converged = true;
        return out;
    }
    double prev = std::numeric_limits<double>::infinity();
    int rising = 0;
    for (int k = 0; k < max_levels; ++k) {
        const double hi = edge + w * std::ldexp(1.0, -k);
        const double lo = edge + w * std::ldexp(1.0, -(k + 1));
        const double x0 = std::min(lo, hi), x1 = std::max(lo, hi);
        if (!(x1 > x0)) {  // dyadic bands exhausted by rounding
            out.converged = true;
            return out;
        }
        const PanelResult p = gk15(f, x0, x1);
        out.value += p.value;
        out.error += p.error;
        out.panels++;
        const double lvl = std::abs(p.value);
        if (lvl == 0.0 && k >= 2) {
            out.converged = true;
            return out;
        }
        if (k >= 1) {
            if (lvl >= prev && lvl > abs_target) {
                if (++rising >= 4)
                    throw convergence_error(
                        "graded quadrature: level contributions do not decay toward the edge "
                        "(non-integrable singularity?)");
            } else {
                rising = 0;
            }
            const double r = std::min(lvl / prev, 0.97);
            const double remaining = lvl * r / (1.0 - r);
            if (lvl <= abs_target && remaining <= abs_target) {
                out.error += remaining;
                out.converged = true;
                return out;
            }
        }
        prev = std::max(lvl, std::numeric_limits<double>::min());
    }
    throw convergence_error("graded quadrature: level cap reached before the edge remainder "
                            "fell below the requested tolerance");
}

}
