#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#ifndef SEMISPEC_CLI_PATH
#error "SEMISPEC_CLI_PATH must point at the command line binary"
#endif
#ifndef SEMISPEC_CONFIG_DIR
#error "SEMISPEC_CONFIG_DIR must point at the shipped configs"
#endif

namespace {

using nlohmann::ordered_json;

int run(const std::string& args) {
    const std::string cmd = std::string(SEMISPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string config(const std::string& name) {
    return std::string(SEMISPEC_CONFIG_DIR) + "/" + name;
}

std::string fresh_dir(const std::string& tag) {
    const std::string d = "cli_scratch_" + tag;
    std::system(("rm -rf " + d + " && mkdir -p " + d).c_str());
    return d;
}

ordered_json report(const std::string& dir, const std::string& command) {
    std::ifstream in(dir + "/" + command + "_report.json");
    REQUIRE_MESSAGE(in.good(), "missing report in " << dir);
    ordered_json j;
    in >> j;
    return j;
}

std::string write_config(const std::string& dir, const std::string& name,
                         const std::string& body) {
    const std::string path = dir + "/" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("shipped configs all run clean") {
    struct Row {
        const char* file;
        const char* sub;
    };
    const Row rows[] = {
        {"weights_standard_alpha0.json", "weights"},
        {"weights_exponential.json", "weights"},
        {"spectrum_rotation.json", "spectrum"},
        {"resolvent_identity_spectrum.json", "resolvent"},
        {"resolvent_apply.json", "resolvent"},
        {"semigroup_example3.json", "semigroup"},
        {"compactness_dilation.json", "difference"},
    };
    int n = 0;
    for (const Row& r : rows) {
        const std::string out = fresh_dir("cfg" + std::to_string(n++));
        CAPTURE(r.file);
        CHECK(run(std::string(r.sub) + " --config " + config(r.file) + " --out " + out) == 0);
        const ordered_json j = report(out, r.sub);
        CHECK(j.at("status").get<std::string>() == "ok");
        CHECK(j.at("command").get<std::string>() == r.sub);
        CHECK(j.contains("timestamp"));
        CHECK(j.contains("result"));
    }
}

TEST_CASE("long-running shipped configs" * doctest::skip(false)) {
    for (const char* pair : {"spectrum spectrum_dilation_p2.json",
                             "difference difference_dilation_continuity.json",
                             "resolvent bloch_example2.json"}) {
        std::istringstream ss(pair);
        std::string sub, file;
        ss >> sub >> file;
        const std::string out = fresh_dir("slow_" + sub + file.substr(0, 5));
        CAPTURE(file);
        CHECK(run(sub + " --config " + config(file) + " --out " + out) == 0);
        CHECK(report(out, sub).at("status").get<std::string>() == "ok");
    }
}

TEST_CASE("reports are deterministic apart from the timestamp") {
    const std::string a = fresh_dir("det_a"), b = fresh_dir("det_b");
    REQUIRE(run("semigroup --config " + config("semigroup_example3.json") + " --out " + a) == 0);
    REQUIRE(run("semigroup --config " + config("semigroup_example3.json") + " --out " + b) == 0);
    ordered_json ja = report(a, "semigroup"), jb = report(b, "semigroup");
    ja.erase("timestamp");
    jb.erase("timestamp");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("truncation flag overrides the config value") {
    const std::string out = fresh_dir("trunc");
    REQUIRE(run("resolvent --config " + config("resolvent_apply.json") + " --out " + out +
                " --truncation 32") == 0);
    const ordered_json j = report(out, "resolvent");
    CHECK(j.at("result").at("series").at("coeffs").size() == 32);
}

TEST_CASE("plot data lands next to the report") {
    const std::string out = fresh_dir("plot");
    REQUIRE(run("weights --config " + config("weights_standard_alpha0.json") + " --out " + out +
                " --emit-plot-data") == 0);
    std::ifstream csv(out + "/weights_profiles.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "r,w,tail,star");
}

TEST_CASE("inconclusive verdicts exit with code 2") {
    const std::string out = fresh_dir("inc");
    const std::string cfg = write_config(
        out, "rotation_continuity.json",
        R"json({"weight":{"kind":"standard","alpha":0.0},)json"
        R"json("semigroup":{"closed_form":"rotation(1)"},)json"
        R"json("test":"continuity","t0_candidates":[0.5]})json");
    CHECK(run("difference --config " + cfg + " --out " + out) == 2);
    CHECK(report(out, "difference").at("status").get<std::string>() == "inconclusive");
}

TEST_CASE("precondition refusals exit with code 3") {
    const std::string out = fresh_dir("refuse");
    SUBCASE("missing config file") {
        CHECK(run("weights --config " + out + "/does_not_exist.json --out " + out) == 3);
    }
    SUBCASE("malformed json") {
        const std::string cfg = write_config(out, "broken.json", "{\"weight\": ");
        CHECK(run("weights --config " + cfg + " --out " + out) == 3);
    }
    SUBCASE("unknown weight kind") {
        const std::string cfg =
            write_config(out, "bad_kind.json", R"({"weight":{"kind":"harmonic"}})");
        CHECK(run("weights --config " + cfg + " --out " + out) == 3);
    }
    SUBCASE("generator spectrum off the theorem hypotheses") {
        const std::string cfg = write_config(
            out, "p3_generator.json",
            R"json({"weight":{"kind":"standard","alpha":0.0},)json"
            R"json("semigroup":{"closed_form":"dilation(1)"},)json"
            R"json("operator":"generator","p":3.0,"t":1.0})json");
        CHECK(run("spectrum --config " + cfg + " --out " + out) == 3);
    }
    SUBCASE("bad subcommand") {
        CHECK(run("frobnicate --config x.json") == 3);
    }
}

TEST_CASE("help exits cleanly") {
    CHECK(run("--help") == 0);
    CHECK(run("weights --help") == 0);
}

TEST_SUITE_END();
