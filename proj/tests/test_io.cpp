#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "puccilab/norms.hpp"
#include "puccilab/runner.hpp"
#include "puccilab/rng.hpp"

using namespace puccilab;
namespace fs = std::filesystem;

namespace {

const EllipticityPair kPair12 = EllipticityPair::strict(1.0, 2.0);

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("puccilab_io_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("profile JSON round-trip is bit-exact") {
    Rng rng(515);
    for (int rep = 0; rep < 50; ++rep) {
        RadialPiecewise f;
        f.dim = static_cast<int>(rng.uniform_int(2, 6));
        f.breakpoints = {0.0};
        const int pieces = static_cast<int>(rng.uniform_int(1, 4));
        for (int i = 0; i < pieces; ++i)
            f.breakpoints.push_back(f.breakpoints.back() + rng.uniform(0.1, 2.0));
        for (int i = 0; i < pieces; ++i) {
            TermSum terms;
            if (i == 0) {
                terms.push_back(BasisTerm::power(rng.uniform(-2.0, 2.0), 2.0));
                terms.push_back(BasisTerm::constant(rng.uniform(-2.0, 2.0)));
            } else {
                terms.push_back(BasisTerm::power(rng.uniform(-2.0, 2.0), rng.uniform(-3.0, 3.0)));
                terms.push_back(BasisTerm::log_term(rng.uniform(-1.0, 1.0)));
                terms.push_back(BasisTerm::exp_term(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 0.5)));
                terms.push_back(BasisTerm::shifted_square(rng.uniform(-1.0, 1.0), rng.uniform(0.0, 4.0)));
            }
            f.pieces.push_back(std::move(terms));
        }
        f.validate();

        const Json j = profile_to_json(f);
        const RadialPiecewise back = profile_from_json(Json::parse(j.dump()));
        REQUIRE(back.breakpoints == f.breakpoints);
        REQUIRE(back.pieces.size() == f.pieces.size());
        for (std::size_t p = 0; p < f.pieces.size(); ++p) {
            REQUIRE(back.pieces[p].size() == f.pieces[p].size());
            for (std::size_t t = 0; t < f.pieces[p].size(); ++t) {
                CHECK(back.pieces[p][t].kind == f.pieces[p][t].kind);
                CHECK(back.pieces[p][t].coef == f.pieces[p][t].coef);
                CHECK(back.pieces[p][t].param == f.pieces[p][t].param);
            }
        }
    }
}

TEST_CASE("instance JSON reload reproduces the residual report") {
    const ConstructionInstance inst = build_small_norm(ParamsSmallNorm{3, kPair12, 10});
    const Json j = instance_to_json(inst);
    const ConstructionInstance back = instance_from_json(Json::parse(j.dump()));

    ResidualSampleSpec spec;
    spec.samples_per_piece = 100;
    const ResidualReport a = residual_verify(inst, spec, OpSign::Plus, false);
    const ResidualReport b = residual_verify(back, spec, OpSign::Plus, false);
    CHECK(a.max_normalized == b.max_normalized);
    CHECK(a.argmax_radius == b.argmax_radius);

    // tampered profile is rejected
    Json bad = Json::parse(j.dump());
    bad["profile"]["pieces"][1][0]["coef"] = 1.25;
    CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);

    // scaled instances round-trip through the provenance scale factor
    const ConstructionInstance scaled = scale_instance(inst, 2.0);
    const ConstructionInstance scaled_back = instance_from_json(instance_to_json(scaled));
    CHECK(scaled_back.domain_radius == scaled.domain_radius);
}

TEST_CASE("runner: verify writes reports and finds the two concave kinks") {
    const fs::path dir = fresh_dir("verify");
    const Json config = {{"seed", 7},
                         {"family", "small"},
                         {"params", {{"N", 3}, {"lambda", 1.0}, {"Lambda", 2.0}, {"k", 10}}}};
    const RunOutcome outcome = run_command("verify", config, dir.string(), false);
    CHECK(outcome.exit_code == 0);
    CHECK(fs::exists(dir / "instance.json"));
    CHECK(fs::exists(dir / "verify_report.json"));

    const Json report = Json::parse(slurp(dir / "verify_report.json"));
    int concave = 0;
    for (const auto& f : report.at("findings"))
        if (f.at("kind") == "kink" && f.at("orientation") == "concave") ++concave;
    CHECK(concave == 2);
    CHECK(report.at("asserted").at("residual_max_plus").at("pass").get<bool>());

    // reloading the emitted instance reproduces the reported residual
    const ConstructionInstance reloaded =
        instance_from_json(Json::parse(slurp(dir / "instance.json")));
    ResidualSampleSpec spec;
    spec.samples_per_piece = 200;
    spec.seed = 7;
    spec.jitter = true;
    const ResidualReport recomputed = residual_verify(reloaded, spec, OpSign::Plus, false);
    CHECK(recomputed.max_normalized ==
          report.at("residual").at("plus").at("max_normalized").get<double>());
    fs::remove_all(dir);
}

TEST_CASE("runner: identical config and seed give byte-identical artifacts") {
    const Json sweep_config = {{"seed", 3},
                               {"family", "small"},
                               {"params", {{"N", 3}, {"lambda", 1.0}, {"Lambda", 2.0}, {"k", 10}}},
                               {"exponent", 1.0},
                               {"sweep", {{"values", {10, 31, 100}}}}};
    const fs::path dir_a = fresh_dir("sweep_a");
    const fs::path dir_b = fresh_dir("sweep_b");
    CHECK(run_command("sweep", sweep_config, dir_a.string(), false).exit_code == 0);
    CHECK(run_command("sweep", sweep_config, dir_b.string(), false).exit_code == 0);
    CHECK(slurp(dir_a / "sweep.csv") == slurp(dir_b / "sweep.csv"));
    CHECK(slurp(dir_a / "sweep_summary.json") == slurp(dir_b / "sweep_summary.json"));

    const Json verify_config = {{"seed", 11},
                                {"family", "n3"},
                                {"params",
                                 {{"N", 3}, {"lambda", 1.0}, {"Lambda", 2.0}, {"c", 2.0},
                                  {"d", 1.0}, {"epsilon", 0.25}}}};
    const fs::path dir_c = fresh_dir("verify_c");
    const fs::path dir_d = fresh_dir("verify_d");
    CHECK(run_command("verify", verify_config, dir_c.string(), false).exit_code == 0);
    CHECK(run_command("verify", verify_config, dir_d.string(), false).exit_code == 0);
    CHECK(slurp(dir_c / "verify_report.json") == slurp(dir_d / "verify_report.json"));
    CHECK(slurp(dir_c / "instance.json") == slurp(dir_d / "instance.json"));
    for (const auto& d : {dir_a, dir_b, dir_c, dir_d}) fs::remove_all(d);
}

TEST_CASE("runner: bounds command exponent collapse") {
    const fs::path dir = fresh_dir("bounds");
    const Json config = {{"ball", {{"N", 3}, {"R", 1.0}}}, {"C1", 1.0}, {"p", 3.0}};
    const RunOutcome outcome = run_command("bounds", config, dir.string(), false);
    CHECK(outcome.exit_code == 0);
    const Json report = Json::parse(slurp(dir / "bounds.json"));
    CHECK(report.at("lower_N").get<double>() == 0.5);
    CHECK(report.at("lower_p").get<double>() == 0.5);
    fs::remove_all(dir);
}

TEST_CASE("runner: eigen command with trajectory export") {
    const fs::path dir = fresh_dir("eigen");
    const Json config = {{"N", 2}, {"lambda", 1.0}, {"Lambda", 1.0}, {"oracle_mode", true},
                         {"R", 1.0}};
    const RunOutcome outcome = run_command("eigen", config, dir.string(), true);
    CHECK(outcome.exit_code == 0);
    const Json report = Json::parse(slurp(dir / "eigen.json"));
    CHECK(std::fabs(report.at("mu1").get<double>() - 5.7832) <= 1e-3);
    CHECK(fs::exists(dir / "trajectory.csv"));
    fs::remove_all(dir);
}

TEST_CASE("runner: classify reports the reference-measure ratio") {
    const fs::path dir = fresh_dir("classify");
    const Json config = {{"family", "small"},
                         {"params", {{"N", 3}, {"lambda", 1.0}, {"Lambda", 2.0}, {"k", 10}}}};
    const RunOutcome outcome = run_command("classify", config, dir.string(), false);
    CHECK(outcome.exit_code == 0);
    const Json report = Json::parse(slurp(dir / "classification.json"));
    CHECK(report.at("class") == "neither");
    // shell-volume route carries the 1/N the reference display omits
    CHECK(std::fabs(report.at("g1_ratio_to_reference").get<double>() - 1.0 / 3.0) <= 1e-9);
    fs::remove_all(dir);
}

TEST_CASE("runner: config diagnostics and exit codes") {
    const fs::path dir = fresh_dir("bad");
    CHECK(run_command("verify", Json{{"family", "small"}}, dir.string(), false).exit_code == 2);
    CHECK(run_command("noop", Json::object(), dir.string(), false).exit_code == 2);
    const RunOutcome missing =
        run_command("verify", Json{{"seed", 1}, {"family", "small"}, {"params", Json::object()}},
                    dir.string(), false);
    CHECK(missing.exit_code == 2);
    CHECK(missing.message.find("lambda") != std::string::npos);

    // structurally fatal parameters: rejected with diagnostics, not a crash
    const Json fatal = {{"seed", 1},
                        {"family", "n3"},
                        {"params",
                         {{"N", 3}, {"lambda", 1.0}, {"Lambda", 2.0}, {"c", 2.0}, {"d", 1.0},
                          {"epsilon", 0.6}}}};
    CHECK(run_command("verify", fatal, dir.string(), false).exit_code == 2);
    fs::remove_all(dir);
}
