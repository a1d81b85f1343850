#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracmt/errors.hpp"
#include "fracmt/exponents.hpp"
#include "fracmt/functional.hpp"
#include "fracmt/seminorm.hpp"
#include "fracmt/serialization.hpp"
#include "fracmt/verification.hpp"

// Command-line driver. One verb per experiment:
//   alpha-star, gamma, seminorm, moser-scan, sweep, verify, probe
// Exit codes: 0 success, 1 domain/validation error, 2 numeric failure
// (non-convergence/overflow), 3 verification failure.

namespace fracmt::cli {

namespace detail {

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open output path: " + path);
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
}

struct Shared {
    int N = 2;
    double s = 0.5;
    double tol = 1e-8;
    std::string format = "json";
    std::string out = "-";
    std::uint64_t seed = 20240901;
};

inline nlohmann::json scalar_payload(const std::string& command, double value) {
    return {{"command", command}, {"value", value}};
}

inline std::string render_scalar(const Shared& sh, const std::string& command, double value,
                                 nlohmann::json extra, const nlohmann::json& meta) {
    if (sh.format == "csv") {
        std::string csv = metadata_csv_comments(meta);
        csv += "name,value\n";
        csv += command + "," + fmt17(value) + "\n";
        return csv;
    }
    nlohmann::json j = scalar_payload(command, value);
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["metadata"] = meta;
    return j.dump(2);
}

template <class Row>
std::string render_rows(const Shared& sh, const std::string& command, const char* csv_header,
                        const std::vector<Row>& rows, const nlohmann::json& meta) {
    if (sh.format == "csv") {
        std::string csv = metadata_csv_comments(meta);
        csv += csv_header;
        csv += "\n";
        for (const Row& r : rows) csv += to_csv_row(r) + "\n";
        return csv;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const Row& r : rows) arr.push_back(to_json(r));
    return nlohmann::json{{"command", command}, {"rows", arr}, {"metadata", meta}}.dump(2);
}

// verification suites

inline void specfun_checks(std::vector<CheckRecord>& checks) {
    {
        const double lhs = gamma(4.7).value / gamma(3.7).value;
        checks.push_back({"gamma_recurrence_x3.7", false, std::abs(lhs - 3.7) / 3.7, 1e-12});
    }
    {
        const double a = beta(1.3, 2.4).value, b = beta(2.4, 1.3).value;
        checks.push_back({"beta_symmetry", false, std::abs(a - b) / a, 1e-13});
    }
    for (int dim = 2; dim <= 5; ++dim) {
        const double z = 0.5;
        const double f = hyp2f1(0.5 * dim, 0.5 * (dim + 1), 0.5 * dim, z).value;
        const double gap = std::abs(f * std::pow(1.0 - z, 0.5 * (dim + 1)) - 1.0);
        checks.push_back({"hyp2f1_reduction_N" + std::to_string(dim), false, gap, 1e-10});
    }
    for (double sarg : {1.5, 2.0, 3.7, 10.0}) {
        const double lhs = hurwitz_zeta(sarg, 0.5).value;
        const double rhs = (std::pow(2.0, sarg) - 1.0) * riemann_zeta(sarg).value;
        checks.push_back({"hurwitz_half_shift_s" + fmt17(sarg), false,
                          std::abs(lhs - rhs) / std::abs(rhs), 1e-11});
    }
    {
        const double sarg = 1.0 + 1e-6;
        checks.push_back({"zeta_pole_residue", false,
                          std::abs((sarg - 1.0) * riemann_zeta(sarg).value - 1.0), 2e-6});
    }
    for (auto& c : checks)
        if (!c.pass) c.pass = c.discrepancy <= c.tolerance;
}

inline void lemma_checks(std::vector<CheckRecord>& checks) {
    const double betas[10] = {0.25, 0.5, 1.0, 1.7, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0};
    const int dims[10] = {2, 3, 4, 5, 2, 3, 4, 5, 2, 3};
    for (int i = 0; i < 10; ++i) {
        double disc;
        bool pass = true;
        try {
            const double pref = (dims[i] - 1) * unit_ball_volume(dims[i] - 1);
            auto f = [&](double t) {
                return std::exp(betas[i] * std::cos(t)) * std::pow(std::sin(t), dims[i] - 2);
            };
            const double quad = pref * adaptive_gk(f, 0.0, M_PI, 1e-12, 0.0, 2000).value;
            const double nu = 0.5 * dims[i] - 1.0;
            const double closed = 2.0 * std::pow(M_PI, 0.5 * dims[i]) *
                                  std::pow(2.0 / betas[i], nu) * bessel_i(nu, betas[i]).value;
            disc = std::abs(quad - closed) / std::abs(closed);
        } catch (const std::exception&) {
            disc = std::numeric_limits<double>::infinity();
            pass = false;
        }
        checks.push_back({"sphere_exp_integral_N" + std::to_string(dims[i]) + "_b" +
                              fmt17(betas[i]),
                          pass && disc <= 1e-9, disc, 1e-9});
    }
    const double rs[10] = {1.0, 0.5, 2.0, 1.7, 0.4, 0.9, 1.3, 2.5, 0.75, 1.1};
    const double ts[10] = {2.0, 3.0, 1.0, 0.4, 1.6, 1.15, 0.5, 1.0, 1.9, 2.6};
    const int ds[10] = {2, 3, 2, 4, 3, 2, 5, 4, 2, 3};
    for (int i = 0; i < 10; ++i) {
        double disc;
        try {
            disc = bessel_integral_check(rs[i], ts[i], ds[i]);
        } catch (const std::exception&) {
            disc = std::numeric_limits<double>::infinity();
        }
        checks.push_back({"bessel_integral_r" + fmt17(rs[i]) + "_t" + fmt17(ts[i]) + "_N" +
                              std::to_string(ds[i]),
                          disc <= 1e-8, disc, 1e-8});
    }
}

inline void reduction_checks(std::vector<CheckRecord>& checks, long long samples,
                             std::uint64_t seed) {
    const std::pair<int, double> grids[3] = {{2, 0.5}, {2, 0.7}, {3, 0.5}};
    const char* names[3] = {"moser_eps0.1", "bump", "tent"};
    for (auto [dim, s] : grids) {
        const FractionalParams params = FractionalParams::make(dim, s);
        const RadialProfile profiles[3] = {moser_profile(0.1, params), bump_profile(400),
                                           tent_profile()};
        for (int i = 0; i < 3; ++i) {
            const SeminormResult sem = seminorm_radial(profiles[i], params, 1e-8);
            const McEstimate mc = mc_gagliardo(profiles[i], params, samples, seed + i);
            const double gap = std::abs(mc.mean - sem.value_p);
            const double tolerance = std::max(3.0 * mc.std_error, 0.02 * sem.value_p);
            checks.push_back({std::string("reduction_") + names[i] + "_N" +
                                  std::to_string(dim) + "_s" + fmt17(s),
                              gap <= tolerance, gap, tolerance});
        }
    }
}

}

inline int run(const std::vector<std::string>& args) {
    using nlohmann::json;
    detail::Shared sh;

    CLI::App app{"Gagliardo seminorms of radial profiles and the fractional "
                 "Moser-Trudinger threshold exponent"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file supplying defaults (flags override)");
    app.allow_config_extras(CLI::config_extras_mode::error);  // unknown keys rejected
    app.add_option("--N", sh.N, "space dimension N >= 1");
    app.add_option("--s", sh.s, "fractional order s in (0,1); sp = N fixes p = N/s");
    app.add_option("--tol", sh.tol, "quadrature tolerance");
    app.add_option("--format", sh.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", sh.out, "output path ('-' for stdout)");
    app.add_option("--seed", sh.seed, "random seed (Monte Carlo, probe)");

    auto* cmd_alpha = app.add_subcommand("alpha-star", "threshold exponent alpha*_{s,N}");
    std::string method = "auto";
    auto* cmd_gamma = app.add_subcommand("gamma", "concentration limit gamma_{s,N}");
    cmd_gamma->add_option("--method", method, "series method")
        ->check(CLI::IsMember({"auto", "direct", "hurwitz", "closed"}));
    std::string profile_path;
    auto* cmd_semi = app.add_subcommand("seminorm", "Gagliardo seminorm of a profile file");
    cmd_semi->add_option("--profile", profile_path, "RadialProfile JSON file")->required();
    std::vector<double> eps_grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    auto* cmd_scan = app.add_subcommand("moser-scan", "concentration decomposition sweep");
    cmd_scan->add_option("--eps", eps_grid, "eps grid (descending)")->delimiter(',');
    std::vector<double> factors{0.9, 1.0, 1.1};
    std::vector<double> sweep_eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    auto* cmd_sweep = app.add_subcommand("sweep", "blow-up/boundedness sweep");
    cmd_sweep->add_option("--factors", factors, "alpha factors relative to alpha*")
        ->delimiter(',');
    cmd_sweep->add_option("--eps", sweep_eps, "eps grid (descending)")->delimiter(',');
    std::string suite = "all";
    long long samples = 200000;
    auto* cmd_verify = app.add_subcommand("verify", "independent verification checks");
    cmd_verify->add_option("--suite", suite, "check suite")
        ->check(CLI::IsMember({"specfun", "lemmas", "reduction", "all"}));
    cmd_verify->add_option("--samples", samples, "Monte Carlo samples per reduction check");
    double alpha_factor = 0.5;
    int dof = 8, max_iters = 40;
    auto* cmd_probe = app.add_subcommand("probe", "coordinate-ascent supremum probe");
    cmd_probe->add_option("--alpha-factor", alpha_factor, "alpha as a multiple of alpha*");
    cmd_probe->add_option("--dof", dof, "free profile values")->check(CLI::Range(3, 50));
    cmd_probe->add_option("--max-iters", max_iters, "ascent sweeps");
    for (auto* sub : {cmd_alpha, cmd_gamma, cmd_semi, cmd_scan, cmd_sweep, cmd_verify, cmd_probe})
        sub->fallthrough();

    // CLI11 wants argv in reverse order for its vector-parse entry point
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        // help prints to stdout and exits 0; everything else is a usage error
        return app.exit(e) == 0 ? 0 : 1;
    }

    const std::string timestamp = detail::utc_timestamp();
    try {
        if (*cmd_alpha || *cmd_gamma) {
            const FractionalParams params = FractionalParams::make(sh.N, sh.s);
            SeriesMethod m = SeriesMethod::hurwitz_closed;
            if (method == "direct") m = SeriesMethod::direct;
            if (method == "closed") m = SeriesMethod::small_n_closed;
            const GammaConstant gc = gamma_constant(params, m);
            const json meta = metadata_block(params, {{"tol", sh.tol}}, std::nullopt, timestamp);
            if (*cmd_gamma) {
                json extra{{"method", to_string(gc.series.method)},
                           {"series",
                            {{"value", gc.series.value},
                             {"terms_used", gc.series.terms_used},
                             {"tail_bound", gc.series.tail_bound}}}};
                detail::write_output(sh.out,
                                     detail::render_scalar(sh, "gamma", gc.gamma_value, extra, meta));
            } else {
                const double a = alpha_star_from_gamma(gc.gamma_value, params);
                detail::write_output(
                    sh.out, detail::render_scalar(sh, "alpha-star", a,
                                                  {{"gamma", gc.gamma_value}}, meta));
            }
            return 0;
        }
        if (*cmd_semi) {
            const FractionalParams params = FractionalParams::make(sh.N, sh.s);
            std::ifstream in(profile_path);
            if (!in) throw domain_error("cannot open profile file: " + profile_path);
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw domain_error(std::string("profile JSON parse error: ") + e.what());
            }
            const RadialProfile prof = profile_from_json(j);
            const SeminormResult res = seminorm_radial(prof, params, sh.tol);
            const json meta = metadata_block(params, {{"tol", sh.tol}}, std::nullopt, timestamp);
            json extra{{"error_estimate", res.error_estimate}, {"panels_used", res.panels_used}};
            detail::write_output(sh.out,
                                 detail::render_scalar(sh, "seminorm", res.value_p, extra, meta));
            return 0;
        }
        if (*cmd_scan) {
            const FractionalParams params = FractionalParams::make(sh.N, sh.s);
            const double gamma_limit = gamma_constant(params).gamma_value;
            std::vector<MoserScanRecord> rows;
            for (double eps : eps_grid)
                rows.push_back({moser_decomposition(eps, params, sh.tol), gamma_limit});
            const json meta = metadata_block(params, {{"tol", sh.tol}}, std::nullopt, timestamp);
            detail::write_output(sh.out, detail::render_rows(sh, "moser-scan",
                                                             moser_scan_csv_header, rows, meta));
            return 0;
        }
        if (*cmd_sweep) {
            const FractionalParams params = FractionalParams::make(sh.N, sh.s);
            const auto rows = blowup_sweep(params, factors, sweep_eps, sh.tol);
            const json meta = metadata_block(
                params,
                {{"tol", sh.tol}, {"ratio_rule", 10.0}, {"stabilize_rule", 0.05}},
                std::nullopt, timestamp);
            detail::write_output(sh.out,
                                 detail::render_rows(sh, "sweep", sweep_csv_header, rows, meta));
            return 0;
        }
        if (*cmd_verify) {
            std::vector<CheckRecord> checks;
            if (suite == "specfun" || suite == "all") detail::specfun_checks(checks);
            if (suite == "lemmas" || suite == "all") detail::lemma_checks(checks);
            if (suite == "reduction" || suite == "all")
                detail::reduction_checks(checks, samples, sh.seed);
            bool all_pass = true;
            json arr = json::array();
            for (const CheckRecord& c : checks) {
                all_pass = all_pass && c.pass;
                arr.push_back(to_json(c));
            }
            const json meta =
                metadata_block(std::nullopt, {{"samples", samples}}, sh.seed, timestamp);
            detail::write_output(sh.out, json{{"command", "verify"},
                                              {"suite", suite},
                                              {"checks", arr},
                                              {"all_pass", all_pass},
                                              {"metadata", meta}}
                                             .dump(2));
            return all_pass ? 0 : 3;
        }
        if (*cmd_probe) {
            const FractionalParams params = FractionalParams::make(sh.N, sh.s);
            const double alpha = alpha_factor * alpha_star(params);
            const ProbeRun run = supremum_probe(params, alpha, dof, max_iters, sh.seed, sh.tol);
            const json meta = metadata_block(params, {{"tol", sh.tol}}, sh.seed, timestamp);
            detail::write_output(sh.out, json{{"command", "probe"},
                                              {"alpha", alpha},
                                              {"profile", to_json(run.state.profile)},
                                              {"normalized_value", run.state.normalized_value},
                                              {"seminorm_p", run.state.seminorm_p},
                                              {"iterations", run.state.iteration},
                                              {"converged", run.converged},
                                              {"trace", run.trace},
                                              {"metadata", meta}}
                                             .dump(2));
            return 0;
        }
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const unsupported_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const convergence_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const overflow_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}
