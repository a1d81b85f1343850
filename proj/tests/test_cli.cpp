#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end tests of the installed binary (FRACMT_CLI_PATH set by CMake).

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // file written through --out
};

std::string tmp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACMT_CLI_PATH) + " " + args + " 2> cli_test_stderr.txt";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string slurp_stderr() { return slurp("cli_test_stderr.txt"); }

nlohmann::json run_json(const std::string& args, int expected_code = 0) {
    const std::string out = tmp_path("out.json");
    const int code = run_cli(args + " --out " + out);
    REQUIRE(code == expected_code);
    return nlohmann::json::parse(slurp(out));
}

}

TEST_CASE("alpha-star reproduces 2 pi^2 for (N,s) = (1, 1/2)") {
    const auto j = run_json("alpha-star --N 1 --s 0.5");
    CHECK(std::abs(j["value"].get<double>() - 2.0 * M_PI * M_PI) <=
          1e-10 * 2.0 * M_PI * M_PI);
    CHECK(j["metadata"]["params"]["N"] == 1);
    CHECK(j["metadata"]["artifact_version"].is_string());
    CHECK(j["metadata"].contains("tolerances"));
    CHECK(j["metadata"].contains("seed"));
    CHECK(j["metadata"].contains("timestamp"));
}

TEST_CASE("gamma with the hurwitz method") {
    const auto j = run_json("gamma --N 2 --s 0.5 --method hurwitz");
    CHECK(std::abs(j["value"].get<double>() - 71.182956610702660) <= 1e-9);
    CHECK(j["method"] == "hurwitz_closed");
    CHECK(j["series"].contains("terms_used"));
}

TEST_CASE("deterministic output modulo the timestamp field") {
    const std::string out1 = tmp_path("det1.json"), out2 = tmp_path("det2.json");
    REQUIRE(run_cli("gamma --N 2 --s 0.5 --seed 7 --out " + out1) == 0);
    REQUIRE(run_cli("gamma --N 2 --s 0.5 --seed 7 --out " + out2) == 0);
    const std::regex ts_line("\"timestamp\": \"[^\"]*\"");
    const std::string a = std::regex_replace(slurp(out1), ts_line, "");
    const std::string b = std::regex_replace(slurp(out2), ts_line, "");
    CHECK(a == b);  // byte-identical except the one timestamp field
}

TEST_CASE("seminorm subcommand on a profile file") {
    const std::string prof_path = tmp_path("profile.json");
    {
        std::ofstream f(prof_path);
        f << R"({"breakpoints": [0.05, 0.3, 1.0], "values": [1.0, 1.0, 0.0],
                 "interpolation": "linear_in_log_r"})";
    }
    const auto j = run_json("seminorm --N 2 --s 0.5 --profile " + prof_path);
    CHECK(j["value"].get<double>() > 0.0);
    CHECK(j["error_estimate"].get<double>() <= 1e-8 * j["value"].get<double>());
    CHECK(j["panels_used"].get<int>() > 0);

    // validation failures exit 1
    CHECK(run_cli("seminorm --N 2 --s 0.5 --profile does_not_exist.json") == 1);
    const std::string bad = tmp_path("bad_profile.json");
    {
        std::ofstream f(bad);
        f << R"({"breakpoints": [1.0, 0.5], "values": [1.0, 0.0],
                 "interpolation": "linear_in_log_r"})";
    }
    CHECK(run_cli("seminorm --N 2 --s 0.5 --profile " + bad) == 1);
}

TEST_CASE("seminorm exits 2 on a divergent jump profile") {
    const std::string prof_path = tmp_path("jump.json");
    {
        std::ofstream f(prof_path);
        f << R"({"breakpoints": [0.5, 1.0], "values": [1.0, 0.0],
                 "interpolation": "constant"})";
    }
    CHECK(run_cli("seminorm --N 2 --s 0.5 --profile " + prof_path) == 2);
    CHECK(slurp_stderr().find("numeric failure") != std::string::npos);
}

TEST_CASE("moser-scan CSV schema") {
    const std::string out = tmp_path("scan.csv");
    REQUIRE(run_cli("moser-scan --N 2 --s 0.5 --eps 0.1,0.01 --format csv --out " + out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("eps,i1,i2,i3,i4,total,gamma_limit\n") != std::string::npos);
    CHECK(text.find("# metadata") != std::string::npos);
    // exactly two data rows
    int rows = 0;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'e') ++rows;
    CHECK(rows == 2);
}

TEST_CASE("moser-scan JSON rows carry gamma_limit") {
    const auto j = run_json("moser-scan --N 2 --s 0.5 --eps 0.1");
    REQUIRE(j["rows"].size() == 1);
    CHECK(std::abs(j["rows"][0]["gamma_limit"].get<double>() - 71.182956610702660) <= 1e-9);
    CHECK(j["rows"][0].contains("i2"));
    CHECK(j["rows"][0]["total"].get<double>() > 0.0);
}

TEST_CASE("sweep CSV schema and regime column") {
    const std::string out = tmp_path("sweep.csv");
    REQUIRE(run_cli("sweep --N 2 --s 0.5 --factors 0.9 --eps 0.1,0.01,0.001 "
                    "--format csv --out " + out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("factor,alpha,eps,seminorm_p,functional_value,regime\n") !=
          std::string::npos);
    CHECK(text.find("unknown") != std::string::npos);  // short grid stays inconclusive
}

TEST_CASE("verify subcommand reports per-check records") {
    const auto j = run_json("verify --suite specfun");
    REQUIRE(j["checks"].is_array());
    REQUIRE(!j["checks"].empty());
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("check_name"));
        CHECK(c.contains("status"));
        CHECK(c.contains("discrepancy"));
        CHECK(c.contains("tolerance"));
        CHECK(c["status"] == "pass");
    }
    CHECK(j["all_pass"] == true);
}

TEST_CASE("verify lemmas suite passes") {
    const auto j = run_json("verify --suite lemmas");
    CHECK(j["all_pass"] == true);
    CHECK(j["checks"].size() == 20);
}

TEST_CASE("probe subcommand emits profile and trace") {
    const auto j = run_json("probe --N 2 --s 0.5 --alpha-factor 0.5 --dof 4 "
                            "--max-iters 5 --seed 3 --tol 1e-6");
    CHECK(j["profile"]["breakpoints"].size() == 5);
    CHECK(j["profile"]["values"].size() == 5);
    CHECK(j["trace"].size() >= 1);
    CHECK(j["normalized_value"].get<double>() > 0.0);
    CHECK(std::abs(j["seminorm_p"].get<double>() - 1.0) < 1e-5);
}

TEST_CASE("config file supplies defaults, flags override") {
    const std::string cfg = tmp_path("config.ini");
    {
        std::ofstream f(cfg);
        f << "N=1\ns=0.5\nformat=json\n";
    }
    const auto j = run_json("alpha-star --config " + cfg);
    CHECK(std::abs(j["value"].get<double>() - 2.0 * M_PI * M_PI) <= 1e-8);
    // flag overrides the config value
    const auto j2 = run_json("alpha-star --config " + cfg + " --N 2");
    CHECK(std::abs(j2["value"].get<double>() - 8.2887429183585016) <= 1e-8);
    // unknown config keys are rejected
    const std::string bad_cfg = tmp_path("bad_config.ini");
    {
        std::ofstream f(bad_cfg);
        f << "N=2\nwibble=3\n";
    }
    CHECK(run_cli("alpha-star --config " + bad_cfg) == 1);
}

TEST_CASE("usage errors exit 1 with a message") {
    CHECK(run_cli("alpha-star --no-such-flag") == 1);
    CHECK(run_cli("no-such-command") == 1);
    CHECK(run_cli("") == 1);
    CHECK(run_cli("alpha-star --N 2 --s 1.5") == 1);
    CHECK(slurp_stderr().find("sp = N") != std::string::npos);
}

TEST_CASE("scalar csv format") {
    const std::string out = tmp_path("gamma.csv");
    REQUIRE(run_cli("gamma --N 2 --s 0.5 --format csv --out " + out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("name,value\n") != std::string::npos);
    CHECK(text.find("gamma,71.18295661070") != std::string::npos);
}
