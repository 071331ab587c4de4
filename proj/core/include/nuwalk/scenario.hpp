#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nuwalk/lattice.hpp"
#include "nuwalk/mixing.hpp"
#include "nuwalk/oracle.hpp"

namespace nuwalk::scenario {

enum class ScenarioKind { vacuum, matter, levels, compare, map_experiment };
enum class OutputFormat { csv, json };

/// Configuration or validation failure; `key` names the offending field.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error("config error at \"" + key + "\": " + message),
          key_(std::move(key)) {}
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

struct LatticeSpec {
    int n_sites = 0;
    int mode_index = 0;
    int steps = 0;
};

struct InitialSpec {
    int flavor = 0;
    Spin spin = Spin::up;
};

struct OutputSpec {
    std::string path;
    OutputFormat format = OutputFormat::csv;
    int stride = 1;
};

struct ExperimentInput {
    oracle::ExperimentSpec spec;
    long target_steps = 0;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::vacuum;
    LatticeSpec lattice;
    CoinParameters coins;
    MixingAngles angles;
    std::optional<MatterProfile> matter;
    InitialSpec initial;
    OutputSpec output;
    std::optional<ExperimentInput> experiment;
    nlohmann::json echo;

    int n_flavors() const { return angles.flavors; }
    double kappa() const;
    double momentum() const;  // k = kappa / epsilon
};

/// Parse and fully validate a JSON configuration document. Unknown keys are
/// rejected; every diagnostic names the offending key.
ScenarioConfig parse_config(std::string_view text);

/// Crossing data emitted alongside a matter run: the adiabaticity at
/// resonance, the crossing probability, the matter angles at the ends of
/// the traversed profile, and the asymptotic transition probability.
struct OracleSummary {
    double gamma_r = 0.0;
    double P_c = 0.0;
    double Phi_i = 0.0;
    double Phi_f = 0.0;
    double P_asymptotic = 0.0;
};

/// Per-timestep flavor probabilities, the simulator's principal output.
struct ProbabilitySeries {
    struct Row {
        long step = 0;
        double time = 0.0;
        std::vector<double> probabilities;
        double norm = 1.0;
    };
    int n_flavors = 2;
    std::vector<Row> rows;
    nlohmann::json meta;
    std::optional<OracleSummary> oracle;
};

ProbabilitySeries run_vacuum(const ScenarioConfig& config);

/// Vacuum run plus the matter phase. Non-uniform profiles are experienced
/// along the incoming worldline x_j = (steps-1-j) * epsilon (the state
/// traverses the profile toward x = 0 at one site per step), so each step
/// applies a spatially uniform phase; uniform profiles are static.
ProbabilitySeries run_matter(const ScenarioConfig& config);

struct LevelsTable {
    struct Row {
        double x = 0.0;
        double rho = 0.0;
        double E1m = 0.0;
        double E2m = 0.0;
        double gap = 0.0;
    };
    std::vector<Row> rows;
    nlohmann::json meta;
};

/// Sweep x = p * epsilon over the lattice and tabulate the in-matter
/// eigenvalues and their gap.
LevelsTable run_levels(const ScenarioConfig& config);

struct CompareReport {
    struct Row {
        int flavor = 0;
        double max_abs_deviation = 0.0;
    };
    std::vector<Row> rows;
    double max_deviation = 0.0;
    double threshold = 1e-8;
    bool passed = false;
    nlohmann::json meta;
};

/// Run the lattice walk and the momentum-space oracle side by side (vacuum
/// or uniform matter) and report the largest probability deviation.
CompareReport run_compare(const ScenarioConfig& config);

struct MappedExperiment {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double kappa = 0.0;
    long steps = 0;
    double target_phase = 0.0;
    double achieved_phase = 0.0;
    double residual = 0.0;
    nlohmann::json meta;
};

/// Lattice parameters (theta1, theta2, kappa, steps) in lattice units
/// (epsilon = 1) whose accumulated continuum phase equals the physical
/// oscillation phase, with kappa <= 0.3 and theta <= kappa/5 enforced.
/// Returns the minimal step count; throws ConfigError (key "target_steps",
/// naming the minimal feasible count) when it exceeds the budget.
MappedExperiment map_experiment(const oracle::ExperimentSpec& spec, long target_steps);

/// Fixed 12-significant-digit formatting used by every writer.
std::string format_number(double value);

std::string to_csv(const ProbabilitySeries& series);
std::string to_json(const ProbabilitySeries& series);
std::string to_csv(const LevelsTable& table);
std::string to_json(const LevelsTable& table);
std::string to_csv(const CompareReport& report);
std::string to_json(const CompareReport& report);
std::string to_csv(const MappedExperiment& mapped);
std::string to_json(const MappedExperiment& mapped);

}  // namespace nuwalk::scenario
