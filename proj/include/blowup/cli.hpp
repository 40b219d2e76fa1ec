#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/euler.hpp"
#include "blowup/initial_data.hpp"
#include "blowup/report.hpp"
#include "blowup/snapshot_io.hpp"
#include "json.hpp"

namespace blowup::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRefused = 2;
inline constexpr int kExitAbort = 3;
inline constexpr int kExitVerdictFail = 4;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A theorem's hypotheses do not hold for the datum.
class HypothesisRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    int dim = 1;
    std::array<int, 3> n{256, 256, 256};
    std::array<double, 3> lo{-8.0, -8.0, -8.0};
    std::array<double, 3> hi{8.0, 8.0, 8.0};
    bool periodic = false;
};

struct DataSpec {
    // constant | compressive_1d | expansive_linear | sideris_pulse |
    // example1 | example2 | example3 | file
    std::string kind = "constant";
    FamilyParams family;
    double R = 8.0;            // example scale
    int n = 6;                 // example 1 / 2 exponent
    double lambda = 0.0;       // example 2 outer radius; 0 picks 4R
    double density_amplitude = 1e-4;  // Gaussian density companion of the examples
    double density_width = 1.0;
    std::string path;          // snapshot for kind = file
};

struct TheoremSpec {
    std::string name;          // thm2.2 | prop2.3 | thm2.5 | prop2.7
    double tolerance = 1.25;   // factor on the blow-up time bound
    double slope_max = 0.05;   // weighted-energy log-log slope bound
    double s = 0.0;            // decay parameter in a = 1 + s + d/2
    double r = 1.0;            // probe distance for lambda_0
};

struct OutputSpec {
    std::filesystem::path dir = "out";
    SnapshotFormat format = SnapshotFormat::binary;
    bool snapshots = true;
};

struct ExperimentConfig {
    std::string command;  // gen-data | check | burgers | simulate | verify-theorem
    GridSpec grid;
    DataSpec data;
    SolverConfig solver;
    CriteriaConfig criteria;
    std::optional<double> criteria_rho_bar;  // explicit override of the datum's background
    std::optional<double> criteria_R;
    TheoremSpec theorem;
    OutputSpec output;
    double burgers_t = 0.0;  // burgers: also evaluate v(t) when > 0
};

// Reads an INI file (may be empty) and applies "section.key=value" overrides.
// Unknown sections or keys, malformed numbers and a theorem selection outside
// verify-theorem raise ConfigError.
ExperimentConfig load_config(const std::string& command, const std::optional<std::filesystem::path>& file,
                             const std::vector<std::string>& overrides);

nlohmann::json to_json(const ExperimentConfig& c);

Grid build_grid(const GridSpec& g);
InitialData build_data(const ExperimentConfig& c);

// Each command writes report.json and metadata.json under output.dir and
// returns an exit status; exceptions are translated by run_command.
int cmd_gen_data(const ExperimentConfig& c);
int cmd_check(const ExperimentConfig& c);
int cmd_burgers(const ExperimentConfig& c);
int cmd_simulate(const ExperimentConfig& c);
int cmd_verify_theorem(const ExperimentConfig& c);

int run_command(const ExperimentConfig& c);

}  // namespace blowup::cli
