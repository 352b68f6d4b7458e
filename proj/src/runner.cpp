#include "puccilab/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "puccilab/norms.hpp"
#include "puccilab/shooting.hpp"

namespace puccilab {

namespace {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what) {}
};

double need_number(const Json& j, const std::string& field) {
    if (!j.contains(field) || !j.at(field).is_number())
        throw ConfigError(field, "required number missing");
    return j.at(field).get<double>();
}

int need_int(const Json& j, const std::string& field) {
    if (!j.contains(field) || !j.at(field).is_number_integer())
        throw ConfigError(field, "required integer missing");
    return j.at(field).get<int>();
}

std::string need_string(const Json& j, const std::string& field) {
    if (!j.contains(field) || !j.at(field).is_string())
        throw ConfigError(field, "required string missing");
    return j.at(field).get<std::string>();
}

std::uint64_t need_seed(const Json& j) {
    if (!j.contains("seed") || !j.at("seed").is_number_integer())
        throw ConfigError("seed", "required (outputs must be reproducible)");
    return j.at("seed").get<std::uint64_t>();
}

EllipticityPair parse_ellipticity(const Json& p) {
    const double lambda = need_number(p, "lambda");
    const double Lambda = need_number(p, "Lambda");
    const bool oracle = p.value("oracle_mode", false);
    try {
        return oracle ? EllipticityPair::oracle(lambda, Lambda)
                      : EllipticityPair::strict(lambda, Lambda);
    } catch (const std::invalid_argument& err) {
        throw ConfigError("params.lambda/Lambda", err.what());
    }
}

FamilyParams parse_params(Family family, const Json& p) {
    const EllipticityPair e = parse_ellipticity(p);
    switch (family) {
        case Family::N3:
            return ParamsN3{need_int(p, "N"), e, need_number(p, "c"), need_number(p, "d"),
                            need_number(p, "epsilon")};
        case Family::N2: {
            const double K = need_number(p, "K");
            if (p.contains("log_epsilon")) return ParamsN2{e, K, need_number(p, "log_epsilon")};
            return ParamsN2::from_epsilon(e, K, need_number(p, "epsilon"));
        }
        case Family::SmallNorm:
            return ParamsSmallNorm{need_int(p, "N"), e, need_int(p, "k")};
    }
    throw ConfigError("family", "bad family");
}

void write_text(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    files.push_back(path.string());
}

void write_json(const std::filesystem::path& path, const Json& j,
                std::vector<std::string>& files) {
    write_text(path, j.dump(2) + "\n", files);
}

Json interface_to_json(const InterfaceReport& report) {
    Json rows = Json::array();
    for (const auto& rec : report.records) {
        rows.push_back(Json{{"radius", rec.radius},
                            {"value_left", rec.value_left},
                            {"value_right", rec.value_right},
                            {"value_gap", rec.value_gap},
                            {"deriv_left", rec.deriv_left},
                            {"deriv_right", rec.deriv_right},
                            {"class", kink_name(rec.kink)}});
    }
    return rows;
}

Json residual_to_json(const ResidualReport& report) {
    return Json{{"max_normalized", report.max_normalized},
                {"argmax_radius", report.argmax_radius},
                {"per_piece_max", report.per_piece_max},
                {"boundary_value", report.boundary_value}};
}

Json validity_to_json(const ValidityReport& report) {
    Json findings = Json::array();
    for (const auto& f : report.findings) findings.push_back(Json{{"kind", f.kind}, {"detail", f.detail}});
    return Json{{"fatal", report.fatal},
                {"values", report.values},
                {"checks", report.checks},
                {"findings", findings}};
}

struct AssertedChecks {
    Json report = Json::object();
    bool all_pass = true;

    void add(const std::string& name, double value, double limit, bool pass) {
        report[name] = Json{{"value", value}, {"limit", limit}, {"pass", pass}};
        all_pass = all_pass && pass;
    }
};

RunOutcome do_verify(const Json& config, const std::filesystem::path& out) {
    RunOutcome outcome;
    const std::uint64_t seed = need_seed(config);
    const Family family = family_from_name(need_string(config, "family"));
    if (!config.contains("params")) throw ConfigError("params", "required object missing");
    const FamilyParams params = parse_params(family, config.at("params"));

    const ValidityReport validity = validate_family(family, params);
    if (validity.fatal) {
        std::vector<std::string> files;
        write_json(out / "verify_report.json",
                   Json{{"command", "verify"}, {"seed", seed}, {"family", family_name(family)},
                        {"validity", validity_to_json(validity)}, {"exit", 2}},
                   files);
        return {2, files, "parameters are structurally invalid (division by vanishing profile)"};
    }

    const ConstructionInstance inst = build_family(family, params);
    ResidualSampleSpec spec;
    spec.samples_per_piece = config.value("samples_per_piece", 200);
    spec.seed = seed;
    spec.jitter = config.value("jitter", true);

    const ResidualReport plus = residual_verify(inst, spec, OpSign::Plus, false);
    const ResidualReport minus_neg = residual_verify(inst, spec, OpSign::Minus, true);
    const ResidualReport minus_raw = residual_verify(inst, spec, OpSign::Minus, false);

    double worst_gap = 0.0;
    for (const auto& rec : plus.interfaces.records) {
        const double scale = 1.0 + std::max(std::fabs(rec.value_left), std::fabs(rec.value_right));
        worst_gap = std::max(worst_gap, rec.value_gap / scale);
    }

    AssertedChecks asserted;
    asserted.add("residual_max_plus", plus.max_normalized, 1e-9, plus.max_normalized <= 1e-9);
    asserted.add("residual_max_minus_negated", minus_neg.max_normalized, 1e-9,
                 minus_neg.max_normalized <= 1e-9);
    asserted.add("boundary_value", std::fabs(plus.boundary_value), 1e-12,
                 std::fabs(plus.boundary_value) <= 1e-12);
    asserted.add("continuity_gap_normalized", worst_gap, 1e-10, worst_gap <= 1e-10);

    Json findings = Json::array();
    for (const auto& rec : plus.interfaces.records) {
        if (rec.kink == KinkClass::C1) continue;
        findings.push_back(Json{{"kind", "kink"},
                                {"radius", rec.radius},
                                {"orientation", kink_name(rec.kink)},
                                {"deriv_left", rec.deriv_left},
                                {"deriv_right", rec.deriv_right}});
    }
    for (const auto& f : validity.findings)
        findings.push_back(Json{{"kind", f.kind}, {"detail", f.detail}});

    Json coefficient_pieces = Json::array();
    for (const auto& piece : inst.a.pieces) coefficient_pieces.push_back(describe_piece(piece));

    Json report{{"command", "verify"},
                {"seed", seed},
                {"family", family_name(family)},
                {"asserted", asserted.report},
                {"findings", findings},
                {"interfaces", interface_to_json(plus.interfaces)},
                {"residual",
                 Json{{"plus", residual_to_json(plus)},
                      {"minus_negated", residual_to_json(minus_neg)},
                      {"minus_unnegated_informational", residual_to_json(minus_raw)}}},
                {"coefficient_pieces", coefficient_pieces},
                {"validity", validity_to_json(validity)},
                {"exit", asserted.all_pass ? 0 : 1}};

    write_json(out / "instance.json", instance_to_json(inst), outcome.files_written);
    write_json(out / "verify_report.json", report, outcome.files_written);
    outcome.exit_code = asserted.all_pass ? 0 : 1;
    outcome.message = asserted.all_pass ? "verify: all asserted checks passed"
                                        : "verify: asserted check failed";
    return outcome;
}

RunOutcome do_sweep(const Json& config, const std::filesystem::path& out) {
    RunOutcome outcome;
    const std::uint64_t seed = need_seed(config);
    SweepSpec spec;
    spec.family = family_from_name(need_string(config, "family"));
    if (!config.contains("params")) throw ConfigError("params", "required object missing");
    spec.base = parse_params(spec.family, config.at("params"));
    spec.exponent = need_number(config, "exponent");
    if (!config.contains("sweep") || !config.at("sweep").contains("values"))
        throw ConfigError("sweep.values", "required array missing");
    spec.values = config.at("sweep").at("values").get<std::vector<double>>();
    if (spec.values.empty()) throw ConfigError("sweep.values", "must be nonempty");
    spec.n2_eps_tracks_K = config.value("n2_eps_tracks_K", true);

    const SweepTable table = run_sweep(spec);

    AssertedChecks asserted;
    double worst_rel = 0.0, worst_excess = 0.0;
    for (const auto& row : table.rows) {
        if (std::isfinite(row.closed_form) && std::isfinite(row.quadrature))
            worst_rel = std::max(worst_rel,
                                 std::fabs(row.quadrature - row.closed_form) / row.closed_form);
        if (std::isfinite(row.bound) && std::isfinite(row.quadrature))
            worst_excess = std::max(worst_excess, row.quadrature - row.bound);
    }
    asserted.add("closed_form_rel_gap", worst_rel, 1e-8, worst_rel <= 1e-8);
    const double excess_limit = spec.family == Family::N2 ? 1e-6 : 1e-9;
    asserted.add("quadrature_bound_excess", worst_excess, excess_limit,
                 worst_excess <= excess_limit);

    Json rows = Json::array();
    for (const auto& row : table.rows)
        rows.push_back(Json{{"param", row.param},
                            {"closed_form", row.closed_form},
                            {"quadrature", row.quadrature},
                            {"bound", row.bound},
                            {"valid", row.valid}});
    Json summary{{"command", "sweep"},
                 {"seed", seed},
                 {"family", family_name(spec.family)},
                 {"param_name", table.param_name},
                 {"exponent", spec.exponent},
                 {"rows", rows},
                 {"summary", table.summary},
                 {"asserted", asserted.report},
                 {"exit", asserted.all_pass ? 0 : 1}};

    write_text(out / "sweep.csv", sweep_csv(table), outcome.files_written);
    write_json(out / "sweep_summary.json", summary, outcome.files_written);
    outcome.exit_code = asserted.all_pass ? 0 : 1;
    outcome.message = "sweep: " + std::to_string(table.rows.size()) + " rows";
    return outcome;
}

RunOutcome do_bounds(const Json& config, const std::filesystem::path& out) {
    RunOutcome outcome;
    if (!config.contains("ball")) throw ConfigError("ball", "required object missing");
    const DomainBall ball(need_int(config.at("ball"), "N"), need_number(config.at("ball"), "R"));
    BoundConfig cfg{need_number(config, "C1"), need_number(config, "p")};
    const BoundReport report = lyapunov_bounds(ball, cfg);

    Json j{{"command", "bounds"},
           {"ball", Json{{"N", ball.dim}, {"R", ball.radius}, {"diameter", ball.diameter()},
                         {"volume", ball.volume()}}},
           {"C1", cfg.C1},
           {"p", cfg.p},
           {"lower_N", report.lower_N},
           {"tilde_lower", report.tilde_lower}};
    if (report.lower_p)
        j["lower_p"] = *report.lower_p;
    else
        j["lower_p_note"] = report.lower_p_note;
    write_json(out / "bounds.json", j, outcome.files_written);
    outcome.message = "bounds written";
    return outcome;
}

RunOutcome do_eigen(const Json& config, const std::filesystem::path& out, bool want_trajectory) {
    RunOutcome outcome;
    const EllipticityPair e = parse_ellipticity(config);
    const int dim = need_int(config, "N");
    const double radius = need_number(config, "R");
    const double tol = config.value("tol", 1e-9);
    const double p = config.value("p", static_cast<double>(dim));

    const EigenResult res = principal_eigenvalue(e, dim, radius, tol);
    const EmpiricalBoundReport bound = empirical_bound_report(res, dim, p);
    const double richardson = richardson_check(e, dim, res.mu1, 1.5 * radius, radius / 1e4);

    AssertedChecks asserted;
    asserted.add("achieved_tol", res.achieved_tol, 1e-8, res.achieved_tol <= 1e-8);
    asserted.add("richardson_deviation", richardson, 1e-7, richardson <= 1e-7);

    Json j{{"command", "eigen"},
           {"N", dim},
           {"lambda", e.lambda},
           {"Lambda", e.Lambda},
           {"R", radius},
           {"mu1", res.mu1},
           {"achieved_tol", res.achieved_tol},
           {"shots", res.shots},
           {"empirical_C1_floor", res.empirical_C1_floor},
           {"richardson_deviation", richardson},
           {"bound_report",
            Json{{"p", bound.p},
                 {"upper_bound", bound.upper_bound},
                 {"identity_residual", bound.identity_residual},
                 {"consistent", bound.consistent}}},
           {"asserted", asserted.report},
           {"exit", asserted.all_pass ? 0 : 1}};
    if (bound.lower_p_at_floor) j["bound_report"]["lower_p_at_floor"] = *bound.lower_p_at_floor;

    write_json(out / "eigen.json", j, outcome.files_written);
    if (want_trajectory) {
        const ShootingState state = shoot(e, dim, res.mu1, 1.05 * radius, radius / 1e4);
        write_text(out / "trajectory.csv", trajectory_csv(state), outcome.files_written);
    }
    outcome.exit_code = asserted.all_pass ? 0 : 1;
    outcome.message = "eigen: mu1 = " + format_17g(res.mu1);
    return outcome;
}

RunOutcome do_classify(const Json& config, const std::filesystem::path& out) {
    RunOutcome outcome;
    const Family family = family_from_name(need_string(config, "family"));
    if (!config.contains("params")) throw ConfigError("params", "required object missing");
    const FamilyParams params = parse_params(family, config.at("params"));
    const double tol = config.value("class_tol", 1e-9);

    const ConstructionInstance inst = build_family(family, params);
    const DomainBall ball(inst.dim, inst.domain_radius);
    const ClassificationReport report = classify_coefficient(inst.a, tol, ball);

    const double partition_gap =
        std::fabs(report.g1_measure + report.l1_measure - report.domain_measure) /
        report.domain_measure;
    AssertedChecks asserted;
    asserted.add("partition_rel_gap", partition_gap, 1e-8, partition_gap <= 1e-8);

    Json intervals = Json::array();
    for (const auto& [lo, hi] : report.above_intervals)
        intervals.push_back(Json{{"lo", lo}, {"hi", hi}});
    Json j{{"command", "classify"},
           {"family", family_name(family)},
           {"class", coefficient_class_name(report.cls)},
           {"g1_measure", report.g1_measure},
           {"l1_measure", report.l1_measure},
           {"domain_measure", report.domain_measure},
           {"crossing_radii", report.crossing_radii},
           {"above_intervals", intervals},
           {"method", report.method},
           {"sampling_warning", report.sampling_warning},
           {"asserted", asserted.report},
           {"exit", asserted.all_pass ? 0 : 1}};

    if (const auto* sp = std::get_if<ParamsSmallNorm>(&params)) {
        // Reference display for the level-one set measure, read with the
        // sphere surface measure; the shell-volume route carries an extra
        // 1/N, and the ratio is reported rather than adjudicated.
        const double k = static_cast<double>(sp->k);
        const double reference = std::pow(sp->rbar(), sp->dim) * unit_sphere_area(sp->dim) *
                                 (std::pow(k + sp->e.Lambda / k, -sp->dim) -
                                  std::pow(k + 1.0, -sp->dim));
        j["g1_reference_formula_value"] = std::fabs(reference);
        j["g1_ratio_to_reference"] = report.g1_measure / std::fabs(reference);
    }

    write_json(out / "classification.json", j, outcome.files_written);
    outcome.exit_code = asserted.all_pass ? 0 : 1;
    outcome.message = "classify: " + coefficient_class_name(report.cls);
    return outcome;
}

}  // namespace

int log_level() {
    const char* env = std::getenv("PUCCILAB_LOG");
    if (!env) env = std::getenv("TOOL_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
}

RunOutcome run_command(const std::string& command, const Json& config, const std::string& out_dir,
                       bool want_trajectory) {
    try {
        const std::filesystem::path out(out_dir);
        std::filesystem::create_directories(out);
        if (command == "verify") return do_verify(config, out);
        if (command == "sweep") return do_sweep(config, out);
        if (command == "bounds") return do_bounds(config, out);
        if (command == "eigen") return do_eigen(config, out, want_trajectory);
        if (command == "classify") return do_classify(config, out);
        return {2, {}, "unknown command '" + command + "'"};
    } catch (const ConfigError& err) {
        return {2, {}, err.what()};
    } catch (const std::invalid_argument& err) {
        return {2, {}, err.what()};
    } catch (const QuadratureError& err) {
        return {3, {}, std::string(err.what()) + " (radius " + format_17g(err.radius()) + ")"};
    } catch (const std::domain_error& err) {
        return {2, {}, err.what()};
    } catch (const std::exception& err) {
        return {3, {}, err.what()};
    }
}

}  // namespace puccilab
