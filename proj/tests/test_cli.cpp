#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "scn/cli_app.hpp"
#include "scn/json_io.hpp"
#include "scn/model.hpp"
#include "scn/thresholds.hpp"

using namespace scn;
using nlohmann::json;

namespace {

const std::string& tmp_dir() {
    static const std::string dir = [] {
        const auto d = std::filesystem::temp_directory_path() / "scn_cli_tests";
        std::filesystem::create_directories(d);
        return d.string();
    }();
    return dir;
}

std::string tmp_file(const std::string& name, const std::string& content) {
    const std::string path = tmp_dir() + "/" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string& cone_file() {
    static const std::string path =
        tmp_file("cone.json", "{\"n\":2,\"m\":2,\"links\":[[1],[1]]}");
    return path;
}

const std::string& parallel_file() {
    static const std::string path =
        tmp_file("parallel.json", "{\"n\":2,\"m\":2,\"links\":[[1],[2]]}");
    return path;
}

const std::string& zee_file() {
    static const std::string path =
        tmp_file("zee.json", "{\"n\":2,\"m\":2,\"links\":[[1],[1,2]]}");
    return path;
}

const std::string& full_file() {
    static const std::string path =
        tmp_file("full.json", "{\"n\":2,\"m\":2,\"links\":[[1,2],[1,2]]}");
    return path;
}

const std::string& chain_file() {
    static const std::string path = tmp_file(
        "chain3.json", "{\"tiers\":[2,2,2],\"links\":[[[1],[1,2]],[[1],[2]]]}");
    return path;
}

// Payload must parse and satisfy the published response schema.
void require_schema(const std::string& payload, const char* schema_name) {
    const json value = json::parse(payload);
    const std::string path = std::string(SCN_SOURCE_DIR) + "/docs/schemas/" + schema_name;
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing schema file " << path);
    json schema;
    in >> schema;
    std::string why;
    const bool ok = matches_schema(value, schema, &why);
    INFO(schema_name << " violation: " << why);
    CHECK(ok);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("payoff payload is exact for the shared-supplier network") {
    const CliResult r =
        dispatch({"payoff", "--net", cone_file(), "--lambda", "0.8", "--gamma", "0.02"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(r.out == "{\"retailers\":[0.096,0.096],\"suppliers\":[0,0]}\n");
    require_schema(r.out, "payoff.schema.json");
}

TEST_CASE("per-supplier parameters switch the payoff engine") {
    const CliResult r = dispatch({"payoff", "--net", parallel_file(), "--lambda-r", "0.7",
                                  "--lambda-sup", "0.6,0.6", "--gamma-sup", "0.3,0.3"});
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["retailers"][0].get<double>() == doctest::Approx(-0.0864).epsilon(1e-12));
    CHECK(j["retailers"][1].get<double>() == doctest::Approx(-0.0864).epsilon(1e-12));
    require_schema(r.out, "payoff.schema.json");
}

TEST_CASE("simulate payload is identical for any worker count") {
    const std::vector<std::string> base = {"simulate",  "--net",  zee_file(), "--lambda", "0.8",
                                           "--gamma",   "0.05",   "--c",      "0.01",
                                           "--samples", "4000",   "--seed",   "7"};
    std::vector<std::string> one = base;
    one.insert(one.end(), {"--jobs", "1"});
    std::vector<std::string> three = base;
    three.insert(three.end(), {"--jobs", "3"});
    const CliResult r1 = dispatch(one);
    const CliResult r3 = dispatch(three);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r3.exit_code == 0);
    CHECK(r1.out == r3.out);
    const json j = json::parse(r1.out);
    CHECK(j["samples"].get<std::uint64_t>() == 4000);
    CHECK(j["seed"].get<std::uint64_t>() == 7);
    REQUIRE(j["tiers"].size() == 2);
    CHECK(j["tiers"][0].size() == 2);
    require_schema(r1.out, "simulate.schema.json");
}

TEST_CASE("simulate follows a longer chain when the file declares one") {
    const CliResult r = dispatch({"simulate", "--net", chain_file(), "--lambda", "0.9",
                                  "--gamma", "0.04", "--c", "0.003", "--samples", "2000",
                                  "--seed", "5"});
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["tiers"].size() == 3);
    require_schema(r.out, "simulate.schema.json");
}

TEST_CASE("equilibria enumeration payload lists the dense-regime set") {
    const CliResult r = dispatch(
        {"equilibria", "--lambda", "0.85", "--gamma", "0.05", "--c", "1e-9"});
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["profiles_examined"].get<int>() == 16);
    CHECK(j["canonical"].get<bool>() == false);
    REQUIRE(j["equilibria"].size() == 2);
    CHECK(j["equilibria"][0]["class"].get<std::string>() == "empty");
    CHECK(j["equilibria"][1]["class"].get<std::string>() == "full");
    CHECK(j["equilibria"][1]["links"] == json::parse("[[1,2],[1,2]]"));
    require_schema(r.out, "equilibria.schema.json");

    const CliResult folded = dispatch({"equilibria", "--lambda", "0.8", "--c", "0.0352",
                                       "--canonical"});
    REQUIRE(folded.exit_code == 0);
    const json jf = json::parse(folded.out);
    CHECK(jf["canonical"].get<bool>() == true);
    CHECK(jf["equilibria"].size() == 2);
    require_schema(folded.out, "equilibria.schema.json");
}

TEST_CASE("nash payloads carry a one-based deviation certificate") {
    const CliResult stable = dispatch({"equilibria", "--mode", "nash", "--net", cone_file(),
                                       "--lambda", "0.8", "--gamma", "0.02"});
    REQUIRE(stable.exit_code == 0);
    CHECK(stable.out == "{\"is_nash\":true}\n");
    require_schema(stable.out, "nash.schema.json");

    const CliResult unstable = dispatch({"equilibria", "--mode", "nash", "--net",
                                         parallel_file(), "--lambda", "0.8", "--c", "0.01"});
    REQUIRE(unstable.exit_code == 0);
    const json j = json::parse(unstable.out);
    CHECK(j["is_nash"].get<bool>() == false);
    CHECK(j["deviation"]["retailer"].get<int>() == 1);
    CHECK(j["deviation"]["from"] == json::parse("[1]"));
    CHECK(j["deviation"]["to"] == json::parse("[2]"));
    CHECK(j["deviation"]["gain"].get<double>() == doctest::Approx(0.0576).epsilon(1e-9));
    require_schema(unstable.out, "nash.schema.json");
}

TEST_CASE("dynamics payload walks full to zee to cone") {
    const CliResult r = dispatch({"equilibria", "--mode", "br", "--net", full_file(),
                                  "--lambda", "0.8", "--c", "0.01"});
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["converged"].get<bool>());
    CHECK(j["rounds"].get<int>() == 2);
    REQUIRE(j["trajectory"].size() == 3);
    CHECK(j["trajectory"][0]["class"].get<std::string>() == "full");
    CHECK(j["trajectory"][1]["class"].get<std::string>() == "zee");
    CHECK(j["trajectory"][2]["class"].get<std::string>() == "cone");
    require_schema(r.out, "br.schema.json");
}

TEST_CASE("threshold payload reports solved values, flags, and regime quantities") {
    const CliResult r = dispatch({"thresholds", "--lambda", "0.8", "--c", "0.0016",
                                  "--gamma", "0.1", "--degree", "4"});
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["gamma_hat"]["fz1"]["solved"].get<double>() ==
          doctest::Approx(0.0352).epsilon(1e-9));
    CHECK(j["gamma_hat"]["pz2"]["matches"].get<bool>() == false);
    CHECK(j["regime"]["d_hat"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(j["regime"]["low_gamma_threshold"].get<double>() ==
          doctest::Approx(0.036).epsilon(1e-9));
    CHECK(j["regime"]["f_hat"].get<double>() == doctest::Approx(0.47).epsilon(1e-9));
    require_schema(r.out, "thresholds.schema.json");

    // no linking cost: the balance degree has no finite optimum
    const CliResult free_link = dispatch({"thresholds", "--lambda", "0.8"});
    REQUIRE(free_link.exit_code == 0);
    const json jf = json::parse(free_link.out);
    CHECK(jf["regime"]["d_hat"].is_null());
    CHECK(!jf["regime"].contains("f_hat"));
    CHECK(!jf.contains("lambda_hat"));
    require_schema(free_link.out, "thresholds.schema.json");

    // interior reliability optimum appears when all three inputs are given
    const CliResult hat = dispatch({"thresholds", "--lambda", "0.8", "--gamma", "0.3",
                                    "--lambda1", "0.6", "--lambda2", "0.6", "--lambda-r",
                                    "0.7"});
    REQUIRE(hat.exit_code == 0);
    const json jh = json::parse(hat.out);
    CHECK(jh["lambda_hat"].get<double>() == doctest::Approx(0.729411764706).epsilon(1e-9));
    require_schema(hat.out, "thresholds.schema.json");
}

TEST_CASE("sweep renders csv by default and schema-valid json on request") {
    const std::vector<std::string> base = {"sweep",          "--lambda-lo", "0.85",
                                           "--lambda-hi",    "0.9",         "--lambda-points",
                                           "2",              "--gamma-lo",  "0.004",
                                           "--gamma-hi",     "0.05",        "--gamma-points",
                                           "3"};
    const CliResult csv = dispatch(base);
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.rfind("lambda,gamma,c,predicted,enumerated,agree\n", 0) == 0);

    std::vector<std::string> as_json = base;
    as_json.insert(as_json.end(), {"--format", "json"});
    const CliResult r = dispatch(as_json);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["cells"].size() == 6);
    CHECK(j["reconcile"]["total_cells"].get<int>() == 6);
    REQUIRE(j["reconcile"]["printed_findings"].size() == 3);
    CHECK(j["reconcile"]["printed_findings"][0]["threshold"].get<std::string>() ==
          "gamma_hat_pz2");
    require_schema(r.out, "sweep.schema.json");
}

TEST_CASE("hetero payload reports reliability optima and parameter scans") {
    const CliResult r = dispatch({"hetero", "--net", parallel_file(), "--lambda-r", "0.7",
                                  "--lambda-sup", "0.6,0.6", "--gamma-sup", "0.3,0.3",
                                  "--scan", "lambda", "--supplier", "1", "--scan-points", "5",
                                  "--scan-lo", "0.5", "--scan-hi", "0.9"});
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["lambda_hat"].size() == 2);
    CHECK(j["lambda_hat"][0].get<double>() == doctest::Approx(0.729411764706).epsilon(1e-9));
    REQUIRE(j["scan"]["values"].size() == 5);
    CHECK(j["scan"]["values"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["scan"]["values"][4].get<double>() == doctest::Approx(0.9).epsilon(1e-12));
    REQUIRE(j["scan"]["retailer_payoffs"].size() == 5);
    // partner retailer benefits from the scanned supplier's reliability
    for (int k = 1; k < 5; ++k)
        CHECK(j["scan"]["retailer_payoffs"][k][1].get<double>() >
              j["scan"]["retailer_payoffs"][k - 1][1].get<double>());
    require_schema(r.out, "hetero.schema.json");
}

TEST_CASE("config files feed parameters and flags override them") {
    const std::string cfg = tmp_file("cfg.json", "{\"lambda\":0.8,\"gamma\":0.02,\"c\":0}");
    const CliResult from_cfg = dispatch({"payoff", "--net", cone_file(), "--config", cfg});
    REQUIRE(from_cfg.exit_code == 0);
    CHECK(json::parse(from_cfg.out)["retailers"][0].get<double>() ==
          doctest::Approx(0.096).epsilon(1e-12));

    const CliResult overridden =
        dispatch({"payoff", "--net", cone_file(), "--config", cfg, "--gamma", "0"});
    REQUIRE(overridden.exit_code == 0);
    CHECK(json::parse(overridden.out)["retailers"][0].get<double>() ==
          doctest::Approx(0.128).epsilon(1e-12));

    const std::string bad = tmp_file("badcfg.json", "{\"bogus\":1}");
    const CliResult rejected = dispatch({"payoff", "--net", cone_file(), "--config", bad});
    CHECK(rejected.exit_code == 2);
    CHECK(rejected.err.find("config: unknown key bogus") != std::string::npos);
}

TEST_CASE("--out writes the payload to a file and stdout stays empty") {
    const std::string out_path = tmp_dir() + "/payoff_out.json";
    const CliResult r = dispatch({"payoff", "--net", cone_file(), "--lambda", "0.8",
                                  "--gamma", "0.02", "--out", out_path});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    const std::string written = read_file(out_path);
    CHECK(written == "{\"retailers\":[0.096,0.096],\"suppliers\":[0,0]}\n");
    require_schema(written, "payoff.schema.json");
}

TEST_CASE("rejected input exits 2 with a diagnostic, help exits 0") {
    const CliResult none = dispatch({});
    CHECK(none.exit_code == 2);
    CHECK(none.err.find("subcommand") != std::string::npos);

    const CliResult missing = dispatch({"payoff", "--net", tmp_dir() + "/absent.json"});
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("cannot open") != std::string::npos);

    const CliResult bad_lambda =
        dispatch({"payoff", "--net", cone_file(), "--lambda", "1.5"});
    CHECK(bad_lambda.exit_code == 2);
    CHECK(bad_lambda.err.find("lambda") != std::string::npos);

    const CliResult bad_flag = dispatch({"payoff", "--net", cone_file(), "--bogus"});
    CHECK(bad_flag.exit_code == 2);

    const CliResult no_net = dispatch({"equilibria", "--mode", "nash"});
    CHECK(no_net.exit_code == 2);
    CHECK(no_net.err.find("--net is required") != std::string::npos);

    const CliResult zero_samples =
        dispatch({"simulate", "--net", cone_file(), "--samples", "0"});
    CHECK(zero_samples.exit_code == 2);

    const CliResult bad_supplier =
        dispatch({"hetero", "--net", parallel_file(), "--lambda-r", "0.7", "--lambda-sup",
                  "0.6,0.6", "--gamma-sup", "0.3,0.3", "--scan", "lambda", "--supplier", "3"});
    CHECK(bad_supplier.exit_code == 2);
    CHECK(bad_supplier.err.find("supplier index") != std::string::npos);

    const CliResult bad_index = dispatch(
        {"payoff", "--net", tmp_file("badnet.json", "{\"n\":2,\"m\":2,\"links\":[[3],[1]]}")});
    CHECK(bad_index.exit_code == 2);
    CHECK(bad_index.err.find("out of range") != std::string::npos);

    const CliResult help = dispatch({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("payoff") != std::string::npos);
    CHECK(help.out.find("sweep") != std::string::npos);
}

TEST_CASE("network files round-trip through the serializer") {
    const Network cone = load_network_file(cone_file());
    const std::string text = network_to_json(cone);
    require_schema(text, "network.schema.json");
    CHECK(load_network_text(text) == cone);

    const Network chain = load_network_file(chain_file());
    const std::string chain_text = network_to_json(chain);
    require_schema(chain_text, "network.schema.json");
    CHECK(load_network_text(chain_text) == chain);

    CHECK_THROWS_AS(load_network_text("{\"n\":2,\"m\":2,\"links\":[[3],[1]]}"),
                    ValidationError);
    CHECK_THROWS_AS(load_network_text("not json"), ValidationError);
    CHECK_THROWS_AS(load_network_text("{\"n\":2,\"m\":2}"), ValidationError);
}

}  // TEST_SUITE
