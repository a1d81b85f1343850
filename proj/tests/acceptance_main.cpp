// Acceptance suite: one checked criterion per section, one PASS/FAIL line
// each, nonzero exit code when any criterion fails. Run a single criterion
// with `acceptance --criterion <k>`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "fracmt/exponents.hpp"
#include "fracmt/functional.hpp"
#include "fracmt/seminorm.hpp"
#include "fracmt/verification.hpp"

namespace fm = fracmt;

namespace {

int failures = 0;

struct Criterion {
    int id;
    const char* label;
    bool ok = true;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    Criterion(int id, const char* label) : id(id), label(label) {}

    void require(bool cond, const std::string& detail) {
        if (!cond) {
            ok = false;
            std::printf("       criterion %d violated: %s\n", id, detail.c_str());
        }
    }

    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, label, secs);
        if (!ok) ++failures;
        std::fflush(stdout);
    }
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// 1. gamma via direct series vs Hurwitz closed form to 1e-9 over the grid;
//    N = 2,3,4 also against the dedicated closed forms to 1e-10.
void criterion1() {
    Criterion c(1, "constant cross-method agreement on the (N, s) grid");
    for (int dim : {2, 3, 4, 5})
        for (double s : {0.3, 0.5, 0.7, 0.9}) {
            const auto params = fm::FractionalParams::make(dim, s);
            const double gd = fm::gamma_constant(params, fm::SeriesMethod::direct).gamma_value;
            const double gh =
                fm::gamma_constant(params, fm::SeriesMethod::hurwitz_closed).gamma_value;
            c.require(std::abs(gd - gh) <= 1e-9 * gh,
                      "direct vs hurwitz at N=" + std::to_string(dim) + " s=" + fmt(s) +
                          ": rel gap " + fmt(std::abs(gd - gh) / gh));
            if (dim <= 4) {
                const double gc =
                    fm::gamma_constant(params, fm::SeriesMethod::small_n_closed).gamma_value;
                c.require(std::abs(gc - gh) <= 1e-10 * gh,
                          "closed form at N=" + std::to_string(dim) + " s=" + fmt(s) +
                              ": rel gap " + fmt(std::abs(gc - gh) / gh));
            }
        }
}

// 2. alpha*_{1/2,1} = 2 pi^2 to 1e-10 relative.
void criterion2() {
    Criterion c(2, "alpha*_{1/2,1} = 2 pi^2");
    const double a = fm::alpha_star(fm::FractionalParams::make(1, 0.5));
    const double ref = 2.0 * M_PI * M_PI;
    c.require(std::abs(a - ref) <= 1e-10 * ref,
              "got " + fmt(a) + ", expected " + fmt(ref));
}

// 3. extrapolated asymptotics: (1-s) gamma_{s,N} -> N omega_N^2 / 2^{N-1}
//    within 1% for N = 2,3; (1-s) alpha*_{s,2} -> 2 pi^2 within 1%.
void criterion3() {
    Criterion c(3, "asymptotic limits by extrapolation over s");
    const std::vector<double> sgrid{0.9, 0.95, 0.99, 0.995};
    auto neville = [](std::vector<double> xs, std::vector<double> ys) {
        for (std::size_t lv = 1; lv < xs.size(); ++lv)
            for (std::size_t i = 0; i + lv < xs.size(); ++i)
                ys[i] = ys[i + 1] + (ys[i] - ys[i + 1]) * (0.0 - xs[i + lv]) /
                                        (xs[i] - xs[i + lv]);
        return ys[0];
    };
    auto collect = [&](auto&& f) {
        std::pair<std::vector<double>, std::vector<double>> d;
        for (double s : sgrid) {
            d.first.push_back(1.0 - s);
            d.second.push_back((1.0 - s) * f(s));
        }
        return d;
    };
    for (int dim : {2, 3}) {
        const double limit =
            dim * std::pow(fm::unit_ball_volume(dim), 2) / std::pow(2.0, dim - 1);
        auto [xs, ys] = collect([&](double s) {
            return fm::gamma_constant(fm::FractionalParams::make(dim, s)).gamma_value;
        });
        const double got = neville(xs, ys);
        c.require(std::abs(got - limit) <= 0.01 * limit,
                  "(1-s) gamma at N=" + std::to_string(dim) + ": " + fmt(got) + " vs " +
                      fmt(limit));
    }
    // (1-s) alpha* = 2 ((1-s)gamma)^{s/(2-s)} x^{2x/(1+x)}, x = 1-s: the explicit
    // x^{2x/(1+x)} factor carries an x ln x term that polynomial extrapolation
    // cannot digest, so it is divided out before extrapolating
    auto [xs, ys] = collect(
        [&](double s) { return fm::alpha_star(fm::FractionalParams::make(2, s)); });
    for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] *= std::pow(xs[i], -2.0 * xs[i] / (1.0 + xs[i]));
    const double got = neville(xs, ys);
    const double ref = 2.0 * M_PI * M_PI;
    c.require(std::abs(got - ref) <= 0.01 * ref,
              "(1-s) alpha*_{s,2}: " + fmt(got) + " vs " + fmt(ref));
}

// 4. reduction-formula validation: full-dimensional Monte Carlo vs the reduced
//    quadrature within max(3 sigma, 2%) at 1e6 samples, 3 profiles x 3 grids.
void criterion4() {
    Criterion c(4, "Monte Carlo validation of the radial reduction (9 x 1e6 samples)");
    const std::pair<int, double> grid[3] = {{2, 0.5}, {2, 0.7}, {3, 0.5}};
    int idx = 0;
    for (auto [dim, s] : grid) {
        const auto params = fm::FractionalParams::make(dim, s);
        const fm::RadialProfile profiles[3] = {fm::moser_profile(0.1, params),
                                               fm::bump_profile(400), fm::tent_profile()};
        const char* names[3] = {"moser(0.1)", "bump", "tent"};
        for (int i = 0; i < 3; ++i) {
            const auto sem = fm::seminorm_radial(profiles[i], params, 1e-8);
            const auto mc = fm::mc_gagliardo(profiles[i], params, 1000000, 90210 + idx);
            const double gap = std::abs(mc.mean - sem.value_p);
            const double tol = std::max(3.0 * mc.std_error, 0.02 * sem.value_p);
            c.require(gap <= tol, std::string(names[i]) + " at N=" + std::to_string(dim) +
                                      " s=" + fmt(s) + ": |mc - quad| = " + fmt(gap) +
                                      " > " + fmt(tol));
            ++idx;
        }
    }
}

// 5. lemma suite at the stated tolerances and point counts.
void criterion5() {
    Criterion c(5, "lemma suite (sphere, Bessel integral, 2F1 identity, Hurwitz relation)");
    const double betas[10] = {0.25, 0.5, 1.0, 1.7, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0};
    const int bdims[10] = {2, 3, 4, 5, 2, 3, 4, 5, 2, 3};
    for (int i = 0; i < 10; ++i) {
        try {
            fm::sphere_exp_integral(betas[i], bdims[i], 1e-9);
        } catch (const std::exception& e) {
            c.require(false, std::string("sphere integral: ") + e.what());
        }
    }
    const double rs[10] = {1.0, 0.5, 2.0, 1.7, 0.4, 0.9, 1.3, 2.5, 0.75, 1.1};
    const double ts[10] = {2.0, 3.0, 1.0, 0.4, 1.6, 1.15, 0.5, 1.0, 1.9, 2.6};
    const int ds[10] = {2, 3, 2, 4, 3, 2, 5, 4, 2, 3};
    for (int i = 0; i < 10; ++i) {
        const double disc = fm::bessel_integral_check(rs[i], ts[i], ds[i]);
        c.require(disc <= 1e-8, "bessel integral at (r,t,N) = (" + fmt(rs[i]) + "," +
                                    fmt(ts[i]) + "," + std::to_string(ds[i]) +
                                    "): discrepancy " + fmt(disc));
    }
    int points = 0;
    for (int dim = 2; dim <= 5; ++dim)
        for (double z = 0.1; z < 0.95; z += 0.1, ++points) {
            const double f = fm::hyp2f1(0.5 * dim, 0.5 * (dim + 1), 0.5 * dim, z).value;
            const double gap = std::abs(f * std::pow(1.0 - z, 0.5 * (dim + 1)) - 1.0);
            c.require(gap <= 1e-10, "2F1 identity at N=" + std::to_string(dim) +
                                        " z=" + fmt(z) + ": " + fmt(gap));
        }
    c.require(points == 36, "2F1 grid should have 36 points");
    for (double s : {1.5, 2.0, 3.7, 10.0}) {
        const double lhs = fm::hurwitz_zeta(s, 0.5).value;
        const double rhs = (std::pow(2.0, s) - 1.0) * fm::riemann_zeta(s).value;
        c.require(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs),
                  "Hurwitz half-shift at s=" + fmt(s));
    }
}

// 6. Moser concentration at (N,s) = (2, 1/2) over eps = 10^-1..10^-5:
//    i1, i3, i4 each below 5% of total at 1e-4, and total (N omega_N)^2
//    within 1% of gamma at 1e-5. The sweep's convergence in 1/|ln eps| is
//    logarithmic, so the desk-scale thresholds are not met; the measured
//    values are reported either way.
void criterion6() {
    Criterion c(6, "Moser concentration thresholds at eps = 1e-4 / 1e-5");
    const auto params = fm::FractionalParams::make(2, 0.5);
    const double C = std::pow(2.0 * fm::unit_ball_volume(2), 2);
    const double gamma = fm::gamma_constant(params).gamma_value;
    fm::MoserDecomposition at4{}, at5{};
    for (int k = 1; k <= 5; ++k) {
        const auto d = fm::moser_decomposition(std::pow(10.0, -k), params, 1e-8);
        if (k == 4) at4 = d;
        if (k == 5) at5 = d;
    }
    c.require(at4.i1 / at4.total < 0.05,
              "i1/total at eps=1e-4 is " + fmt(at4.i1 / at4.total) + " (need < 0.05)");
    c.require(at4.i3 / at4.total < 0.05,
              "i3/total at eps=1e-4 is " + fmt(at4.i3 / at4.total) + " (need < 0.05)");
    c.require(at4.i4 / at4.total < 0.05,
              "i4/total at eps=1e-4 is " + fmt(at4.i4 / at4.total) + " (need < 0.05)");
    const double v = C * at5.total;
    c.require(std::abs(v - gamma) <= 0.01 * gamma,
              "total (N omega_N)^2 at eps=1e-5 is " + fmt(v) + " vs gamma = " + fmt(gamma) +
                  " (rel gap " + fmt(std::abs(v - gamma) / gamma) + ", need <= 0.01)");
}

// 7. blow-up/boundedness regimes for factors 0.9 and 1.1 per the module's
//    decision rules (ratio > 10 => above; last-two change < 5% => below),
//    on an eps grid deep enough to exhibit the asymptotics (10^-1 .. 10^-13).
void criterion7() {
    Criterion c(7, "blow-up above alpha*, boundedness below (sweep regimes)");
    const auto params = fm::FractionalParams::make(2, 0.5);
    std::vector<double> grid;
    for (int k = 1; k <= 13; ++k) grid.push_back(std::pow(10.0, -k));
    const auto rows = fm::blowup_sweep(params, {0.9, 1.1}, grid, 1e-8);
    const fm::Regime low = rows[grid.size() - 1].result.regime;
    const fm::Regime high = rows[2 * grid.size() - 1].result.regime;
    c.require(low == fm::Regime::below_threshold,
              std::string("factor 0.9 classified ") + fm::to_string(low));
    c.require(high == fm::Regime::above_threshold,
              std::string("factor 1.1 classified ") + fm::to_string(high));
}

// 8. property suites: kernel antiderivative by finite differences, seminorm
//    scale invariance, functional monotonicity in alpha, probe ascent.
void criterion8() {
    Criterion c(8, "property suites (kernel, scale invariance, monotonicity, ascent)");
    // kernel antiderivative finite-difference check
    for (int i = 0; i < 12; ++i) {
        const int dim = (i % 2) ? 3 : 2;
        const double r = 0.4 + 0.2 * i;
        const double t = 0.3 * r;
        auto F = [&](double x) { return std::pow(x, dim) / (dim * std::pow(r * r - x * x, dim)); };
        const double h = 1e-5;
        const double fd = (F(t + h) - F(t - h)) / (2.0 * h);
        const double exact = fm::kernel(r, t, dim) / std::pow(r, dim - 1);
        c.require(std::abs(fd - exact) <= 1e-6 * std::abs(exact),
                  "kernel antiderivative FD at (r,t,N)=(" + fmt(r) + "," + fmt(t) + "," +
                      std::to_string(dim) + ")");
    }
    // scale invariance
    const auto params = fm::FractionalParams::make(2, 0.5);
    const double tol = 1e-7;
    const auto prof = fm::moser_profile(0.05, params);
    const double base = fm::seminorm_radial(prof, params, tol).value_p;
    for (double lam : {0.5, 2.0}) {
        const double v = fm::seminorm_radial(prof.scaled_argument(lam), params, tol).value_p;
        c.require(std::abs(v - base) <= 2.0 * tol * base,
                  "scale invariance drift at lambda=" + fmt(lam));
    }
    // functional monotonicity in alpha
    const auto sem = fm::seminorm_radial(prof, params, tol);
    const auto v = prof.scaled_values(1.0 / std::pow(sem.value_p, 1.0 / params.p));
    double prev = 0.0;
    for (double alpha : {0.5, 1.5, 3.0, 6.0}) {
        const double val = fm::mt_functional(v, params, alpha, 1e-8);
        c.require(val > prev, "functional not increasing at alpha=" + fmt(alpha));
        prev = val;
    }
    // probe ascent monotonicity
    const auto run =
        fm::supremum_probe(params, 0.5 * fm::alpha_star(params), 5, 8, 2024, 1e-6);
    for (std::size_t i = 1; i < run.trace.size(); ++i)
        c.require(run.trace[i] >= run.trace[i - 1],
                  "probe trace decreased at sweep " + std::to_string(i));
}

}

int main(int argc, char** argv) {
    int only = 0;
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) only = std::atoi(argv[2]);
    void (*criteria[8])() = {criterion1, criterion2, criterion3, criterion4,
                             criterion5, criterion6, criterion7, criterion8};
    for (int k = 1; k <= 8; ++k)
        if (only == 0 || only == k) criteria[k - 1]();
    if (failures)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}
