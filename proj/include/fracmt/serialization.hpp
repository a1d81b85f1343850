#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracmt/errors.hpp"
#include "fracmt/exponents.hpp"
#include "fracmt/fractional_params.hpp"
#include "fracmt/functional.hpp"
#include "fracmt/radial_profile.hpp"
#include "fracmt/seminorm.hpp"
#include "fracmt/verification.hpp"
#include "fracmt/version.hpp"

// File formats: RadialProfile JSON, the sweep CSV schemas, and the metadata
// block every CLI output carries. All floating-point text is written with 17
// significant digits so values round-trip exactly.

namespace fracmt {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// --- RadialProfile <-> JSON (strict keys) ---

inline nlohmann::json to_json(const RadialProfile& p) {
    return {{"breakpoints", p.breakpoints},
            {"values", p.values},
            {"interpolation", to_string(p.interpolation)}};
}

inline RadialProfile profile_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw domain_error("RadialProfile JSON: expected an object");
    for (auto& [key, _] : j.items())
        if (key != "breakpoints" && key != "values" && key != "interpolation")
            throw domain_error("RadialProfile JSON: unknown key '" + key + "'");
    RadialProfile p;
    try {
        p.breakpoints = j.at("breakpoints").get<std::vector<double>>();
        p.values = j.at("values").get<std::vector<double>>();
        const std::string interp = j.at("interpolation").get<std::string>();
        if (interp == "linear_in_log_r")
            p.interpolation = Interpolation::linear_in_log_r;
        else if (interp == "constant")
            p.interpolation = Interpolation::constant;
        else
            throw domain_error("RadialProfile JSON: interpolation must be "
                               "'linear_in_log_r' or 'constant'");
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("RadialProfile JSON: ") + e.what());
    }
    p.validate();
    return p;
}

// --- sweep rows ---

struct MoserScanRecord {
    MoserDecomposition decomposition;
    double gamma_limit;  // gamma_{s,N}, the eps -> 0 limit of total * (N omega_N)^2
};

inline constexpr const char* moser_scan_csv_header = "eps,i1,i2,i3,i4,total,gamma_limit";

inline std::string to_csv_row(const MoserScanRecord& r) {
    const MoserDecomposition& d = r.decomposition;
    return fmt17(d.eps) + "," + fmt17(d.i1) + "," + fmt17(d.i2) + "," + fmt17(d.i3) + "," +
           fmt17(d.i4) + "," + fmt17(d.total) + "," + fmt17(r.gamma_limit);
}

inline nlohmann::json to_json(const MoserScanRecord& r) {
    const MoserDecomposition& d = r.decomposition;
    return {{"eps", d.eps},       {"i1", d.i1},   {"i2", d.i2},
            {"i3", d.i3},         {"i4", d.i4},   {"total", d.total},
            {"gamma_limit", r.gamma_limit}};
}

inline constexpr const char* sweep_csv_header =
    "factor,alpha,eps,seminorm_p,functional_value,regime";

inline std::string to_csv_row(const BlowupRecord& r) {
    return fmt17(r.factor) + "," + fmt17(r.result.alpha) + "," +
           fmt17(r.result.eps.value_or(0.0)) + "," + fmt17(r.seminorm_p) + "," +
           fmt17(r.result.value) + "," + to_string(r.result.regime);
}

inline nlohmann::json to_json(const BlowupRecord& r) {
    return {{"factor", r.factor},
            {"alpha", r.result.alpha},
            {"eps", r.result.eps.value_or(0.0)},
            {"seminorm_p", r.seminorm_p},
            {"functional_value", r.result.value},
            {"regime", to_string(r.result.regime)},
            {"overflow_witness", r.overflow_witness}};
}

inline nlohmann::json to_json(const McEstimate& e) {
    return {{"mean", e.mean},
            {"std_error", e.std_error},
            {"samples", e.samples},
            {"seed", e.seed}};
}

// --- verification report entries ---

struct CheckRecord {
    std::string check_name;
    bool pass;
    double discrepancy;
    double tolerance;
};

inline nlohmann::json to_json(const CheckRecord& c) {
    return {{"check_name", c.check_name},
            {"status", c.pass ? "pass" : "fail"},
            {"discrepancy", c.discrepancy},
            {"tolerance", c.tolerance}};
}

// --- metadata block ---

inline nlohmann::json metadata_block(const std::optional<FractionalParams>& params,
                                     const nlohmann::json& tolerances,
                                     std::optional<std::uint64_t> seed,
                                     const std::string& timestamp) {
    nlohmann::json meta;
    if (params) {
        meta["params"] = {{"N", params->dim}, {"s", params->s}, {"p", params->p}};
    } else {
        meta["params"] = nullptr;
    }
    meta["tolerances"] = tolerances;
    if (seed)
        meta["seed"] = *seed;
    else
        meta["seed"] = nullptr;
    meta["artifact_version"] = artifact_version;
    meta["timestamp"] = timestamp;
    return meta;
}

// metadata as leading comment lines for CSV outputs
inline std::string metadata_csv_comments(const nlohmann::json& meta) {
    std::string out;
    out += "# metadata " + meta.dump() + "\n";
    return out;
}

}
