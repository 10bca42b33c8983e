#ifndef SOLIPLASMON_COMMANDS_HPP
#define SOLIPLASMON_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "soliplasmon/analysis.hpp"
#include "soliplasmon/config.hpp"

namespace soliplasmon {

// CLI exit codes; the failure classes mirror the exception types.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumeric = 3,
    kExitIo = 4,
};

struct RunSummary {
    std::string config_digest;
    std::string software_version;
    double wall_clock_seconds = 0.0;
    double initial_norm_deficit = 0.0;
    double peak_zeta_ab = 0.0;
    double peak_zeta_ba = 0.0;
    std::vector<PeriodEstimate> periods_ab;
    std::vector<PeriodEstimate> periods_ba;
    std::filesystem::path csv_path;
    std::filesystem::path summary_path;
};

// Runs one simulation from a config file: writes the witness CSV
// (header `t,zeta_ab,zeta_ba,n_a,n_b,raw_trace`) and a JSON summary with
// the detected periods next to it. `out_override` replaces the config's
// output_path.
RunSummary cmd_simulate(const std::filesystem::path& config_path,
                        const std::optional<std::filesystem::path>& out_override = {});

struct SweepOutcome {
    SweepResult sweep;
    std::vector<double> kappas;
    std::filesystem::path csv_path;
    std::filesystem::path summary_path;
};

// Sweeps kappa over [kappa_min, kappa_max] on a geometric grid (linear on
// request) and writes the CSV `kappa,T_ba,T_ab`; absent periods stay empty.
SweepOutcome cmd_sweep(const std::filesystem::path& config_path, double kappa_min,
                       double kappa_max, int points, bool linear_grid = false,
                       const std::optional<std::filesystem::path>& out_override = {});

struct FitOutcome {
    FitCoefficients fit;
    int rows_used = 0;
    double mean_t_ba = 0.0;
    std::filesystem::path report_path;
};

// Fits the period law to a sweep CSV, prints the report, writes
// `<in>.fit.json`, and optionally a predicted curve `kappa,T_ba_pred`.
FitOutcome cmd_fit(const std::filesystem::path& sweep_csv_path,
                   const std::optional<std::filesystem::path>& predict_path = {});

// Row of a parsed sweep CSV (empty optionals were empty fields).
struct ParsedSweepRow {
    double kappa = 0.0;
    std::optional<double> t_ba;
    std::optional<double> t_ab;
};
std::vector<ParsedSweepRow> read_sweep_csv(const std::filesystem::path& path);

// Writes `text` to `path` atomically (temp file in the same directory,
// then rename).
void atomic_write_file(const std::filesystem::path& path, const std::string& text);

// Fixed-width decimal formatting used for every CSV number (15 significant
// digits, round-trippable).
std::string format_number(double value);

}  // namespace soliplasmon

#endif
