#ifndef SOLIPLASMON_ANALYSIS_HPP
#define SOLIPLASMON_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "soliplasmon/dynamics.hpp"
#include "soliplasmon/model.hpp"
#include "soliplasmon/witnesses.hpp"

namespace soliplasmon {

enum class WitnessId { ab, ba };

// A maximal witnessing excursion: the witness exceeds the detection
// threshold between two zero crossings. merged_lobes marks excursions that
// span two (or more) local maxima, where the doubled period convention
// applies.
struct PeriodEstimate {
    WitnessId witness = WitnessId::ba;
    double t_start = 0.0;
    double t_end = 0.0;
    double duration = 0.0;
    double peak_value = 0.0;
    double peak_time = 0.0;
    bool merged_lobes = false;
};

// Scans a uniformly sampled trace for intervals with zeta > threshold.
// Interval endpoints are refined by linear interpolation to the underlying
// zero crossing (the threshold only decides which excursions count);
// excursions whose peak stays below 10x threshold are dropped as noise.
std::vector<PeriodEstimate> detect_periods(const WitnessTrace& trace, WitnessId witness,
                                           double threshold = 1e-6);

struct SweepRow {
    double kappa = 0.0;
    std::optional<double> t_ba;
    std::optional<double> t_ab;
    std::string diagnostics;  // non-empty when something went wrong or a period is absent
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    int fock_n_a = 1;
    int fock_n_b = 0;
    int cutoff_a = 4;
    int cutoff_b = 4;
    double threshold = 1e-6;
    int workers = 0;  // 0 = SOLIPLASMON_WORKERS env var, else hardware concurrency
};

// Runs one simulation per kappa (g_ab = kappa g, g_ba = g) and records the
// first witnessing period of each witness. Each kappa runs inside a window
// min(cfg.t_max, max(100, 20/kappa)); cfg.t_max must cover the slowest
// kappa, i.e. cfg.t_max >= max(100, 20/min kappa). Individual failures are
// recorded per row and do not abort the sweep. Rows keep the input order;
// kappas must be strictly increasing and positive.
SweepResult sweep_kappa(const ModelParams& base, const std::vector<double>& kappas,
                        const EvolutionConfig& cfg, const SweepOptions& options = {});

struct FitCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double stderr_a = 0.0;
    double stderr_b = 0.0;
    double stderr_c = 0.0;
    double rms_residual = 0.0;
};

// Linear least squares of T_ba against the basis (1/k, 1/(3k^3), 1/(5k^5)),
// solved through column-scaled normal equations. Standard errors come from
// the residual variance and the Gram inverse. Requires at least six rows
// with a T_ba value; throws on a rank-deficient design.
FitCoefficients fit_period_law(const SweepResult& sweep);
FitCoefficients fit_period_law(const std::vector<double>& kappas,
                               const std::vector<double>& t_ba);

// Basis evaluation shared by the fit and by prediction output.
double period_law_value(const FitCoefficients& fit, double kappa);

}  // namespace soliplasmon

#endif
