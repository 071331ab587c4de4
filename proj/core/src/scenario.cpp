#include "nuwalk/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace nuwalk::scenario {

using nlohmann::json;

double ScenarioConfig::kappa() const {
    return 2.0 * std::numbers::pi * lattice.mode_index / lattice.n_sites;
}

double ScenarioConfig::momentum() const {
    return kappa() / coins.epsilon;
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace {

std::string join_path(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::string& prefix,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError(join_path(prefix, it.key()), "unknown key");
    }
}

const json& require_section(const json& obj, const std::string& prefix,
                            const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join_path(prefix, key), "missing required section");
    if (!it->is_object()) throw ConfigError(join_path(prefix, key), "must be an object");
    return *it;
}

double get_number(const json& obj, const std::string& prefix, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join_path(prefix, key), "missing required value");
    if (!it->is_number()) throw ConfigError(join_path(prefix, key), "must be a number");
    return it->get<double>();
}

long get_integer(const json& obj, const std::string& prefix, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join_path(prefix, key), "missing required value");
    if (!it->is_number_integer()) throw ConfigError(join_path(prefix, key), "must be an integer");
    return it->get<long>();
}

std::string get_string(const json& obj, const std::string& prefix, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join_path(prefix, key), "missing required value");
    if (!it->is_string()) throw ConfigError(join_path(prefix, key), "must be a string");
    return it->get<std::string>();
}

ScenarioKind parse_kind(const std::string& name) {
    if (name == "vacuum") return ScenarioKind::vacuum;
    if (name == "matter") return ScenarioKind::matter;
    if (name == "levels") return ScenarioKind::levels;
    if (name == "compare") return ScenarioKind::compare;
    if (name == "map-experiment") return ScenarioKind::map_experiment;
    throw ConfigError("scenario", "unknown scenario \"" + name +
                                      "\" (expected vacuum, matter, levels, compare or "
                                      "map-experiment)");
}

MixingAngles parse_angles(const json& obj) {
    check_keys(obj, "angles", {"phi_12", "phi_13", "phi_23"});
    const bool has13 = obj.contains("phi_13");
    const bool has23 = obj.contains("phi_23");
    const double phi12 = get_number(obj, "angles", "phi_12");
    if (!std::isfinite(phi12)) throw ConfigError("angles.phi_12", "must be finite");
    if (!has13 && !has23) return MixingAngles::two_flavor(phi12);
    if (!has13) throw ConfigError("angles.phi_13", "missing (three-flavor angles need all of "
                                                   "phi_12, phi_13, phi_23)");
    if (!has23) throw ConfigError("angles.phi_23", "missing (three-flavor angles need all of "
                                                   "phi_12, phi_13, phi_23)");
    const double phi13 = get_number(obj, "angles", "phi_13");
    const double phi23 = get_number(obj, "angles", "phi_23");
    if (!std::isfinite(phi13)) throw ConfigError("angles.phi_13", "must be finite");
    if (!std::isfinite(phi23)) throw ConfigError("angles.phi_23", "must be finite");
    return MixingAngles::three_flavor(phi12, phi13, phi23);
}

LatticeSpec parse_lattice(const json& obj, bool steps_required) {
    check_keys(obj, "lattice", {"n_sites", "mode_index", "steps", "kappa"});
    LatticeSpec spec;
    spec.n_sites = static_cast<int>(get_integer(obj, "lattice", "n_sites"));
    if (spec.n_sites < 2) throw ConfigError("lattice.n_sites", "must be >= 2");
    spec.mode_index = static_cast<int>(get_integer(obj, "lattice", "mode_index"));
    if (spec.mode_index < 0 || spec.mode_index >= spec.n_sites)
        throw ConfigError("lattice.mode_index", "must lie in [0, n_sites)");
    if (obj.contains("steps") || steps_required) {
        spec.steps = static_cast<int>(get_integer(obj, "lattice", "steps"));
        if (spec.steps < 1) throw ConfigError("lattice.steps", "must be >= 1");
    }
    return spec;
}

CoinParameters parse_coins(const json& obj, int n_flavors) {
    check_keys(obj, "coins", {"epsilon", "thetas"});
    CoinParameters coins;
    coins.epsilon = get_number(obj, "coins", "epsilon");
    auto it = obj.find("thetas");
    if (it == obj.end()) throw ConfigError("coins.thetas", "missing required value");
    if (!it->is_array()) throw ConfigError("coins.thetas", "must be an array of numbers");
    for (const auto& v : *it) {
        if (!v.is_number()) throw ConfigError("coins.thetas", "must be an array of numbers");
        coins.thetas.push_back(v.get<double>());
    }
    try {
        coins.validate(n_flavors);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("coins", e.what());
    }
    return coins;
}

MatterProfile parse_matter(const json& obj, int n_sites) {
    check_keys(obj, "matter", {"kind", "rho", "slope", "intercept", "values"});
    const std::string kind = get_string(obj, "matter", "kind");
    if (kind == "uniform") {
        check_keys(obj, "matter", {"kind", "rho"});
        return MatterProfile::uniform(get_number(obj, "matter", "rho"));
    }
    if (kind == "linear") {
        check_keys(obj, "matter", {"kind", "slope", "intercept"});
        return MatterProfile::linear(get_number(obj, "matter", "slope"),
                                     get_number(obj, "matter", "intercept"));
    }
    if (kind == "table") {
        check_keys(obj, "matter", {"kind", "values"});
        auto it = obj.find("values");
        if (it == obj.end()) throw ConfigError("matter.values", "missing required value");
        if (!it->is_array()) throw ConfigError("matter.values", "must be an array of numbers");
        std::vector<double> values;
        for (const auto& v : *it) {
            if (!v.is_number()) throw ConfigError("matter.values", "must be an array of numbers");
            values.push_back(v.get<double>());
        }
        if (static_cast<int>(values.size()) != n_sites)
            throw ConfigError("matter.values", "table must have exactly n_sites = " +
                                                   std::to_string(n_sites) + " entries");
        return MatterProfile::table(std::move(values));
    }
    throw ConfigError("matter.kind", "unknown kind \"" + kind +
                                         "\" (expected uniform, linear or table)");
}

InitialSpec parse_initial(const json& obj, int n_flavors) {
    check_keys(obj, "initial", {"flavor", "spin"});
    InitialSpec init;
    if (auto it = obj.find("flavor"); it != obj.end()) {
        if (it->is_string()) {
            const std::string name = it->get<std::string>();
            if (name == "e") init.flavor = 0;
            else if (name == "mu") init.flavor = 1;
            else if (name == "tau") init.flavor = 2;
            else throw ConfigError("initial.flavor", "unknown flavor \"" + name + "\"");
        } else if (it->is_number_integer()) {
            init.flavor = it->get<int>();
        } else {
            throw ConfigError("initial.flavor", "must be an integer or one of e, mu, tau");
        }
    }
    if (init.flavor < 0 || init.flavor >= n_flavors)
        throw ConfigError("initial.flavor", "out of range for " + std::to_string(n_flavors) +
                                                " flavors");
    if (auto it = obj.find("spin"); it != obj.end()) {
        const std::string name = it->is_string() ? it->get<std::string>() : std::string();
        if (name == "up") init.spin = Spin::up;
        else if (name == "down") init.spin = Spin::down;
        else throw ConfigError("initial.spin", "must be \"up\" or \"down\"");
    }
    return init;
}

OutputSpec parse_output(const json& obj) {
    check_keys(obj, "output", {"path", "format", "stride"});
    OutputSpec out;
    if (obj.contains("path")) out.path = get_string(obj, "output", "path");
    if (obj.contains("format")) {
        const std::string format = get_string(obj, "output", "format");
        if (format == "csv") out.format = OutputFormat::csv;
        else if (format == "json") out.format = OutputFormat::json;
        else throw ConfigError("output.format", "must be \"csv\" or \"json\"");
    }
    if (obj.contains("stride")) {
        out.stride = static_cast<int>(get_integer(obj, "output", "stride"));
        if (out.stride < 1) throw ConfigError("output.stride", "must be >= 1");
    }
    return out;
}

ExperimentInput parse_experiment(const json& obj, const MixingAngles& angles) {
    check_keys(obj, "experiment", {"dm2_ev2", "energy_gev", "baseline_km", "target_steps"});
    ExperimentInput input;
    input.spec.dm2_ev2 = get_number(obj, "experiment", "dm2_ev2");
    if (!(input.spec.dm2_ev2 > 0.0)) throw ConfigError("experiment.dm2_ev2", "must be > 0");
    input.spec.energy_gev = get_number(obj, "experiment", "energy_gev");
    if (!(input.spec.energy_gev > 0.0)) throw ConfigError("experiment.energy_gev", "must be > 0");
    input.spec.baseline_km = get_number(obj, "experiment", "baseline_km");
    if (input.spec.baseline_km < 0.0) throw ConfigError("experiment.baseline_km", "must be >= 0");
    input.spec.angles = angles;
    input.target_steps = get_integer(obj, "experiment", "target_steps");
    if (input.target_steps < 1) throw ConfigError("experiment.target_steps", "must be >= 1");
    return input;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("<document>", "top level must be a JSON object");

    check_keys(doc, "", {"scenario", "lattice", "coins", "angles", "matter", "initial",
                         "output", "experiment"});

    ScenarioConfig config;
    config.echo = doc;
    config.kind = parse_kind(get_string(doc, "", "scenario"));

    if (doc.contains("output")) config.output = parse_output(require_section(doc, "", "output"));

    if (config.kind == ScenarioKind::map_experiment) {
        for (const char* key : {"lattice", "coins", "matter", "initial"})
            if (doc.contains(key))
                throw ConfigError(key, "not used by the map-experiment scenario");
        if (doc.contains("angles")) config.angles = parse_angles(require_section(doc, "", "angles"));
        config.experiment = parse_experiment(require_section(doc, "", "experiment"), config.angles);
        return config;
    }

    if (doc.contains("experiment"))
        throw ConfigError("experiment", "only used by the map-experiment scenario");

    config.angles = parse_angles(require_section(doc, "", "angles"));
    const int n = config.angles.flavors;

    const bool steps_required = config.kind != ScenarioKind::levels;
    config.lattice = parse_lattice(require_section(doc, "", "lattice"), steps_required);
    config.coins = parse_coins(require_section(doc, "", "coins"), n);

    if (doc.contains("initial"))
        config.initial = parse_initial(require_section(doc, "", "initial"), n);

    if (doc.contains("matter"))
        config.matter = parse_matter(require_section(doc, "", "matter"), config.lattice.n_sites);

    switch (config.kind) {
        case ScenarioKind::vacuum:
            if (config.matter)
                throw ConfigError("matter", "not used by the vacuum scenario");
            break;
        case ScenarioKind::matter:
        case ScenarioKind::levels:
            if (n != 2)
                throw ConfigError("angles", std::string(config.kind == ScenarioKind::matter
                                                            ? "matter"
                                                            : "levels") +
                                                " scenario requires two flavors");
            if (!config.matter) throw ConfigError("matter", "missing required section");
            if (!(config.coins.thetas[1] > config.coins.thetas[0]))
                throw ConfigError("coins.thetas", "matter scenarios require theta_2 > theta_1");
            if (!(config.angles.phi_12 > 0.0) ||
                !(config.angles.phi_12 < std::numbers::pi / 2))
                throw ConfigError("angles.phi_12", "matter scenarios require phi_12 in (0, pi/2)");
            break;
        case ScenarioKind::compare:
            if (config.matter && config.matter->kind != MatterProfile::Kind::uniform)
                throw ConfigError("matter.kind",
                                  "compare requires uniform matter (the momentum oracle is "
                                  "invalid for non-uniform profiles)");
            break;
        case ScenarioKind::map_experiment:
            break;
    }

    const json& lattice_obj = doc.at("lattice");
    if (lattice_obj.contains("kappa")) {
        const double declared = get_number(lattice_obj, "lattice", "kappa");
        const double derived = config.kappa();
        if (std::abs(declared - derived) > 1e-12 * std::max(1.0, std::abs(derived)))
            throw ConfigError("lattice.kappa",
                              "does not match 2*pi*mode_index/n_sites = " +
                                  std::to_string(derived) +
                                  " (mismatched lattice and momentum runs)");
    }

    return config;
}

// ---------------------------------------------------------------------------
// runners
// ---------------------------------------------------------------------------

namespace {

ProbabilitySeries::Row make_row(long step, double time, const LatticeState& state) {
    ProbabilitySeries::Row row;
    row.step = step;
    row.time = time;
    row.probabilities = flavor_probabilities(state);
    row.norm = state.norm();
    return row;
}

// Density experienced j steps into a run: the profile is traversed along the
// incoming worldline x_j = (steps-1-j) * epsilon.
double worldline_density(const ScenarioConfig& config, long j) {
    const double eps = config.coins.epsilon;
    const double x = (config.lattice.steps - 1 - j) * eps;
    return config.matter->at_coordinate(x, eps);
}

OracleSummary matter_oracle_summary(const ScenarioConfig& config) {
    const double k = config.momentum();
    const double theta1 = config.coins.thetas[0];
    const double theta2 = config.coins.thetas[1];
    const double dm2 = theta2 * theta2 - theta1 * theta1;
    const double phi = config.angles.phi_12;
    const double eps = config.coins.epsilon;

    OracleSummary summary;
    const double rho_i = worldline_density(config, 0);
    const double rho_f = worldline_density(config, config.lattice.steps - 1);
    summary.Phi_i = oracle::matter_mixing_angle(phi, dm2, k, rho_i).Phi;
    summary.Phi_f = oracle::matter_mixing_angle(phi, dm2, k, rho_f).Phi;

    const double rho_res = oracle::resonance_density(phi, dm2, k);
    double slope = 0.0;
    switch (config.matter->kind) {
        case MatterProfile::Kind::uniform:
            slope = 0.0;
            break;
        case MatterProfile::Kind::linear:
            if ((rho_i - rho_res) * (rho_f - rho_res) <= 0.0)
                slope = std::abs(config.matter->slope);
            break;
        case MatterProfile::Kind::table: {
            // centered difference at the step where the worldline crosses the
            // resonance density
            for (long j = 1; j < config.lattice.steps; ++j) {
                const double prev = worldline_density(config, j - 1);
                const double here = worldline_density(config, j);
                if ((prev - rho_res) * (here - rho_res) <= 0.0) {
                    const double x = (config.lattice.steps - 1 - j) * eps;
                    slope = std::abs(config.matter->at_coordinate(x + eps, eps) -
                                     config.matter->at_coordinate(x - eps, eps)) /
                            (2.0 * eps);
                    break;
                }
            }
            break;
        }
    }

    summary.gamma_r = slope == 0.0 ? std::numeric_limits<double>::infinity()
                                   : oracle::adiabaticity(phi, dm2, k, rho_res, slope);
    summary.P_c = oracle::crossing_probability(summary.gamma_r, phi);
    summary.P_asymptotic =
        oracle::asymptotic_transition(summary.P_c, summary.Phi_i, summary.Phi_f);
    return summary;
}

ProbabilitySeries run_walk(const ScenarioConfig& config, bool with_matter) {
    const int n = config.n_flavors();
    StepOperatorSpec spec;
    spec.coins = config.coins;
    spec.mixer = make_mixer(config.angles);

    LatticeState state = plane_wave_state(config.lattice.n_sites, config.lattice.mode_index,
                                          n, config.initial.flavor, config.initial.spin);

    ProbabilitySeries series;
    series.n_flavors = n;
    series.meta = config.echo;
    series.rows.push_back(make_row(0, 0.0, state));

    const double eps = config.coins.epsilon;
    for (long j = 0; j < config.lattice.steps; ++j) {
        if (with_matter)
            spec.matter = MatterProfile::uniform(worldline_density(config, j));
        state = step(state, spec);
        const long done = j + 1;
        if (done % config.output.stride == 0)
            series.rows.push_back(make_row(done, done * eps, state));
    }
    return series;
}

}  // namespace

ProbabilitySeries run_vacuum(const ScenarioConfig& config) {
    if (config.kind != ScenarioKind::vacuum)
        throw ConfigError("scenario", "run_vacuum requires scenario = vacuum");
    return run_walk(config, false);
}

ProbabilitySeries run_matter(const ScenarioConfig& config) {
    if (config.kind != ScenarioKind::matter)
        throw ConfigError("scenario", "run_matter requires scenario = matter");
    ProbabilitySeries series = run_walk(config, true);
    series.oracle = matter_oracle_summary(config);
    return series;
}

LevelsTable run_levels(const ScenarioConfig& config) {
    if (config.kind != ScenarioKind::levels)
        throw ConfigError("scenario", "run_levels requires scenario = levels");
    const double eps = config.coins.epsilon;
    oracle::EffectiveHamiltonian h;
    h.k = config.momentum();
    h.masses = config.coins.thetas;
    h.mixer = rotation_2flavor(config.angles.phi_12);

    LevelsTable table;
    table.meta = config.echo;
    table.rows.reserve(config.lattice.n_sites);
    for (int p = 0; p < config.lattice.n_sites; ++p) {
        LevelsTable::Row row;
        row.x = p * eps;
        row.rho = config.matter->at_site(p, eps);
        h.rho = row.rho;
        const auto [e1, e2] = oracle::matter_eigenvalues(h);
        row.E1m = e1;
        row.E2m = e2;
        row.gap = e2 - e1;
        table.rows.push_back(row);
    }
    return table;
}

CompareReport run_compare(const ScenarioConfig& config) {
    if (config.kind != ScenarioKind::compare)
        throw ConfigError("scenario", "run_compare requires scenario = compare");

    const int n = config.n_flavors();
    StepOperatorSpec spec;
    spec.coins = config.coins;
    spec.mixer = make_mixer(config.angles);
    spec.matter = config.matter;

    std::optional<double> uniform_rho;
    if (config.matter) uniform_rho = config.matter->rho0;

    const Eigen::MatrixXcd u =
        oracle::momentum_step_matrix(config.kappa(), config.coins, spec.mixer, uniform_rho);

    LatticeState state = plane_wave_state(config.lattice.n_sites, config.lattice.mode_index,
                                          n, config.initial.flavor, config.initial.spin);
    Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(2 * n);
    chi[2 * config.initial.flavor + static_cast<int>(config.initial.spin)] = 1.0;

    CompareReport report;
    report.meta = config.echo;
    report.rows.resize(n);
    for (int h = 0; h < n; ++h) report.rows[h].flavor = h;

    for (long j = 0; j < config.lattice.steps; ++j) {
        state = step(state, spec);
        chi = u * chi;
        const std::vector<double> lattice_probs = flavor_probabilities(state);
        for (int h = 0; h < n; ++h) {
            const double momentum_prob = std::norm(chi[2 * h]) + std::norm(chi[2 * h + 1]);
            report.rows[h].max_abs_deviation = std::max(
                report.rows[h].max_abs_deviation, std::abs(lattice_probs[h] - momentum_prob));
        }
    }
    for (const auto& row : report.rows)
        report.max_deviation = std::max(report.max_deviation, row.max_abs_deviation);
    report.passed = report.max_deviation <= report.threshold;
    return report;
}

MappedExperiment map_experiment(const oracle::ExperimentSpec& spec, long target_steps) {
    if (target_steps < 1) throw ConfigError("experiment.target_steps", "must be >= 1");
    constexpr double kappa = 0.3;

    MappedExperiment mapped;
    mapped.kappa = kappa;
    mapped.target_phase = oracle::physical_phase(spec);

    if (mapped.target_phase == 0.0) {
        mapped.steps = 1;
        mapped.theta1 = 0.0;
        mapped.theta2 = 0.0;
        mapped.achieved_phase = 0.0;
        mapped.residual = 0.0;
        return mapped;
    }

    // theta2^2 * steps / (2 kappa) = phase with theta2 <= kappa/5 requires
    // steps >= 50 phase / kappa.
    const double minimal = std::ceil(50.0 * mapped.target_phase / kappa);
    const long steps = std::max(1L, static_cast<long>(minimal));
    if (steps > target_steps)
        throw ConfigError("experiment.target_steps",
                          "phase " + format_number(mapped.target_phase) +
                              " rad needs at least " + std::to_string(steps) +
                              " steps within the relativistic window (kappa = 0.3, "
                              "theta <= kappa/5)");
    mapped.steps = steps;
    mapped.theta1 = 0.0;
    mapped.theta2 = std::sqrt(2.0 * kappa * mapped.target_phase / static_cast<double>(steps));
    mapped.achieved_phase = oracle::continuum_phase(mapped.theta1, mapped.theta2, kappa,
                                                    static_cast<double>(steps));
    mapped.residual =
        std::abs(mapped.achieved_phase - mapped.target_phase) / mapped.target_phase;
    return mapped;
}

// ---------------------------------------------------------------------------
// writers
// ---------------------------------------------------------------------------

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

namespace {

const char* kFlavorNames[3] = {"P_e", "P_mu", "P_tau"};

std::string meta_line(const json& meta) {
    return "# config: " + meta.dump() + "\n";
}

std::string oracle_csv_line(const OracleSummary& oracle) {
    return "# oracle: gamma_r=" + format_number(oracle.gamma_r) +
           ",P_c=" + format_number(oracle.P_c) + ",Phi_i=" + format_number(oracle.Phi_i) +
           ",Phi_f=" + format_number(oracle.Phi_f) +
           ",P_asymptotic=" + format_number(oracle.P_asymptotic) + "\n";
}

// non-finite values (the constant-density gamma_r sentinel) become null
std::string json_number(double value) {
    return std::isfinite(value) ? format_number(value) : "null";
}

std::string oracle_json_object(const OracleSummary& oracle) {
    return "{\"gamma_r\": " + json_number(oracle.gamma_r) +
           ", \"P_c\": " + json_number(oracle.P_c) +
           ", \"Phi_i\": " + json_number(oracle.Phi_i) +
           ", \"Phi_f\": " + json_number(oracle.Phi_f) +
           ", \"P_asymptotic\": " + json_number(oracle.P_asymptotic) + "}";
}

}  // namespace

std::string to_csv(const ProbabilitySeries& series) {
    std::string out = meta_line(series.meta);
    out += "step,time";
    for (int h = 0; h < series.n_flavors; ++h) out += std::string(",") + kFlavorNames[h];
    out += ",norm\n";
    for (const auto& row : series.rows) {
        out += std::to_string(row.step) + "," + format_number(row.time);
        for (double p : row.probabilities) out += "," + format_number(p);
        out += "," + format_number(row.norm) + "\n";
    }
    if (series.oracle) out += oracle_csv_line(*series.oracle);
    return out;
}

std::string to_json(const ProbabilitySeries& series) {
    std::string out = "{\n\"meta\": " + series.meta.dump() + ",\n";
    if (series.oracle) out += "\"oracle\": " + oracle_json_object(*series.oracle) + ",\n";
    out += "\"columns\": [\"step\", \"time\"";
    for (int h = 0; h < series.n_flavors; ++h)
        out += std::string(", \"") + kFlavorNames[h] + "\"";
    out += ", \"norm\"],\n\"rows\": [\n";
    for (std::size_t i = 0; i < series.rows.size(); ++i) {
        const auto& row = series.rows[i];
        out += "[" + std::to_string(row.step) + ", " + format_number(row.time);
        for (double p : row.probabilities) out += ", " + format_number(p);
        out += ", " + format_number(row.norm) + "]";
        out += i + 1 < series.rows.size() ? ",\n" : "\n";
    }
    out += "]\n}\n";
    return out;
}

std::string to_csv(const LevelsTable& table) {
    std::string out = meta_line(table.meta);
    out += "x,rho,E1m,E2m,gap\n";
    for (const auto& row : table.rows)
        out += format_number(row.x) + "," + format_number(row.rho) + "," +
               format_number(row.E1m) + "," + format_number(row.E2m) + "," +
               format_number(row.gap) + "\n";
    return out;
}

std::string to_json(const LevelsTable& table) {
    std::string out = "{\n\"meta\": " + table.meta.dump() + ",\n";
    out += "\"columns\": [\"x\", \"rho\", \"E1m\", \"E2m\", \"gap\"],\n\"rows\": [\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out += "[" + format_number(row.x) + ", " + format_number(row.rho) + ", " +
               format_number(row.E1m) + ", " + format_number(row.E2m) + ", " +
               format_number(row.gap) + "]";
        out += i + 1 < table.rows.size() ? ",\n" : "\n";
    }
    out += "]\n}\n";
    return out;
}

std::string to_csv(const CompareReport& report) {
    std::string out = meta_line(report.meta);
    out += "flavor,max_abs_deviation\n";
    for (const auto& row : report.rows)
        out += std::to_string(row.flavor) + "," + format_number(row.max_abs_deviation) + "\n";
    out += "# max_deviation=" + format_number(report.max_deviation) +
           ",threshold=" + format_number(report.threshold) +
           ",passed=" + (report.passed ? "true" : "false") + "\n";
    return out;
}

std::string to_json(const CompareReport& report) {
    std::string out = "{\n\"meta\": " + report.meta.dump() + ",\n";
    out += "\"max_deviation\": " + format_number(report.max_deviation) + ",\n";
    out += "\"threshold\": " + format_number(report.threshold) + ",\n";
    out += std::string("\"passed\": ") + (report.passed ? "true" : "false") + ",\n";
    out += "\"per_flavor\": [\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        out += "{\"flavor\": " + std::to_string(report.rows[i].flavor) +
               ", \"max_abs_deviation\": " + format_number(report.rows[i].max_abs_deviation) +
               "}";
        out += i + 1 < report.rows.size() ? ",\n" : "\n";
    }
    out += "]\n}\n";
    return out;
}

std::string to_csv(const MappedExperiment& mapped) {
    std::string out = meta_line(mapped.meta);
    out += "theta1,theta2,kappa,steps,target_phase,achieved_phase,residual\n";
    out += format_number(mapped.theta1) + "," + format_number(mapped.theta2) + "," +
           format_number(mapped.kappa) + "," + std::to_string(mapped.steps) + "," +
           format_number(mapped.target_phase) + "," + format_number(mapped.achieved_phase) +
           "," + format_number(mapped.residual) + "\n";
    return out;
}

std::string to_json(const MappedExperiment& mapped) {
    std::string out = "{\n\"meta\": " + mapped.meta.dump() + ",\n";
    out += "\"theta1\": " + format_number(mapped.theta1) + ",\n";
    out += "\"theta2\": " + format_number(mapped.theta2) + ",\n";
    out += "\"kappa\": " + format_number(mapped.kappa) + ",\n";
    out += "\"steps\": " + std::to_string(mapped.steps) + ",\n";
    out += "\"target_phase\": " + format_number(mapped.target_phase) + ",\n";
    out += "\"achieved_phase\": " + format_number(mapped.achieved_phase) + ",\n";
    out += "\"residual\": " + format_number(mapped.residual) + "\n}\n";
    return out;
}

}  // namespace nuwalk::scenario
