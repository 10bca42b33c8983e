#include "soliplasmon/analysis.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "soliplasmon/errors.hpp"

namespace soliplasmon {

namespace {

double witness_value(const WitnessSample& s, WitnessId id) {
    return id == WitnessId::ab ? s.zeta_ab : s.zeta_ba;
}

// Linear interpolation of the zero crossing between samples k and k+1.
double zero_crossing(const WitnessTrace& trace, WitnessId id, std::size_t k) {
    const double z0 = witness_value(trace.samples[k], id);
    const double z1 = witness_value(trace.samples[k + 1], id);
    const double t0 = trace.samples[k].t;
    const double t1 = trace.samples[k + 1].t;
    if (z1 == z0) return t0;
    return t0 + (t1 - t0) * (0.0 - z0) / (z1 - z0);
}

}  // namespace

std::vector<PeriodEstimate> detect_periods(const WitnessTrace& trace, WitnessId witness,
                                           double threshold) {
    const auto& samples = trace.samples;
    if (samples.empty()) {
        throw std::invalid_argument("detect_periods: empty trace");
    }
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("detect_periods: threshold must be positive");
    }
    const std::size_t n = samples.size();
    if (n >= 2) {
        const double dt = samples[1].t - samples[0].t;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            const double spacing = samples[k + 1].t - samples[k].t;
            if (std::abs(spacing - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
                throw std::invalid_argument("detect_periods: sampling is not uniform");
            }
        }
    }

    std::vector<PeriodEstimate> periods;
    std::size_t prev_end = 0;  // last above-threshold index of the previous excursion
    bool have_prev = false;
    std::size_t k = 0;
    while (k < n) {
        if (!(witness_value(samples[k], witness) > threshold)) {
            ++k;
            continue;
        }
        const std::size_t first = k;
        while (k < n && witness_value(samples[k], witness) > threshold) ++k;
        const std::size_t last = k - 1;

        double peak = 0.0;
        double peak_time = samples[first].t;
        int maxima = 0;
        for (std::size_t j = first; j <= last; ++j) {
            const double z = witness_value(samples[j], witness);
            if (z > peak) {
                peak = z;
                peak_time = samples[j].t;
            }
            if (j > first && j < last) {
                const double prev = witness_value(samples[j - 1], witness);
                const double next = witness_value(samples[j + 1], witness);
                if (z > prev && z >= next) ++maxima;
            }
        }
        // A dip that stays above threshold keeps the excursion in one piece;
        // two maxima inside it mean two lobes merged across that dip.
        const bool merged = maxima >= 2;

        if (peak < 10.0 * threshold) continue;  // noise, discard

        // Start endpoint: walk back to the nearest non-positive sample and
        // interpolate the sign change; if the gap to the previous excursion
        // stays positive (a touching zero), split at its minimum.
        double t_start;
        {
            const std::size_t floor_idx = have_prev ? prev_end + 1 : 0;
            std::size_t j = first;
            while (j > floor_idx && witness_value(samples[j - 1], witness) > 0.0) --j;
            if (j == 0) {
                t_start = samples[0].t;
            } else if (witness_value(samples[j - 1], witness) <= 0.0) {
                t_start = zero_crossing(trace, witness, j - 1);
            } else {
                std::size_t arg = j;
                for (std::size_t i = j; i < first; ++i) {
                    if (witness_value(samples[i], witness) <
                        witness_value(samples[arg], witness)) {
                        arg = i;
                    }
                }
                t_start = samples[arg].t;
            }
        }

        // End endpoint, mirrored.
        double t_end;
        bool closed = false;
        {
            std::size_t next_first = n;  // first above-threshold index of the next excursion
            for (std::size_t i = last + 1; i < n; ++i) {
                if (witness_value(samples[i], witness) > threshold) {
                    next_first = i;
                    break;
                }
            }
            std::size_t j = last;
            while (j + 1 < next_first && witness_value(samples[j + 1], witness) > 0.0) ++j;
            if (j + 1 < n && witness_value(samples[j + 1], witness) <= 0.0) {
                t_end = zero_crossing(trace, witness, j);
                closed = true;
            } else if (j + 1 >= n) {
                t_end = samples[n - 1].t;  // ran off the window, not a closed excursion
            } else {
                std::size_t arg = last + 1;
                for (std::size_t i = last + 1; i < next_first; ++i) {
                    if (witness_value(samples[i], witness) <
                        witness_value(samples[arg], witness)) {
                        arg = i;
                    }
                }
                t_end = samples[arg].t;
                closed = true;
            }
        }
        prev_end = last;
        have_prev = true;
        if (!closed) continue;  // an excursion truncated by t_max is not a period

        PeriodEstimate p;
        p.witness = witness;
        p.t_start = t_start;
        p.t_end = t_end;
        p.duration = t_end - t_start;
        p.peak_value = peak;
        p.peak_time = peak_time;
        p.merged_lobes = merged;
        periods.push_back(p);
    }
    return periods;
}

namespace {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SOLIPLASMON_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

SweepResult sweep_kappa(const ModelParams& base, const std::vector<double>& kappas,
                        const EvolutionConfig& cfg, const SweepOptions& options) {
    if (kappas.empty()) {
        throw std::invalid_argument("sweep_kappa: empty kappa list");
    }
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        if (!(kappas[i] > 0.0)) {
            throw std::invalid_argument("sweep_kappa: kappas must be positive");
        }
        if (i > 0 && !(kappas[i] > kappas[i - 1])) {
            throw std::invalid_argument("sweep_kappa: kappas must be strictly increasing");
        }
    }
    const double kappa_min = kappas.front();
    const double required_window = std::max(100.0, 20.0 / kappa_min);
    if (cfg.t_max < required_window) {
        throw std::invalid_argument("sweep_kappa: cfg.t_max must be >= max(100, 20/min kappa) = " +
                                    std::to_string(required_window));
    }

    SweepResult result;
    result.rows.resize(kappas.size());

    std::atomic<std::size_t> next{0};
    const int n_workers = std::min<int>(resolve_workers(options.workers),
                                        static_cast<int>(kappas.size()));

    auto run_one = [&](std::size_t idx) {
        SweepRow row;
        row.kappa = kappas[idx];
        try {
            ModelParams params = base;
            params.kappa = kappas[idx];

            EvolutionConfig local = cfg;
            local.t_max = std::min(cfg.t_max, std::max(100.0, 20.0 / params.kappa));

            TwoModeSpace space(options.cutoff_a, options.cutoff_b);
            const SplitHamiltonian h = build_hamiltonian(params, space);
            const StateVector psi0 = fock_state(space, options.fock_n_a, options.fock_n_b);
            const WitnessTrace trace = witness_trace(psi0, h, local, params, "fock");

            const auto ba = detect_periods(trace, WitnessId::ba, options.threshold);
            const auto ab = detect_periods(trace, WitnessId::ab, options.threshold);
            if (!ba.empty()) {
                row.t_ba = ba.front().duration;
            } else {
                row.diagnostics += "no zeta_ba excursion closed within t_max=" +
                                   std::to_string(local.t_max) + "; ";
            }
            if (!ab.empty()) {
                row.t_ab = ab.front().duration;
            } else {
                row.diagnostics += "no zeta_ab excursion closed within t_max=" +
                                   std::to_string(local.t_max) + "; ";
            }
        } catch (const std::exception& e) {
            row.diagnostics += std::string("failed: ") + e.what();
        }
        result.rows[idx] = std::move(row);
    };

    if (n_workers <= 1) {
        for (std::size_t i = 0; i < kappas.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < kappas.size();
                     i = next.fetch_add(1)) {
                    run_one(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return result;
}

FitCoefficients fit_period_law(const SweepResult& sweep) {
    std::vector<double> kappas;
    std::vector<double> t_ba;
    for (const SweepRow& row : sweep.rows) {
        if (row.t_ba) {
            kappas.push_back(row.kappa);
            t_ba.push_back(*row.t_ba);
        }
    }
    return fit_period_law(kappas, t_ba);
}

FitCoefficients fit_period_law(const std::vector<double>& kappas,
                               const std::vector<double>& t_ba) {
    const std::size_t n = kappas.size();
    if (n != t_ba.size()) {
        throw std::invalid_argument("fit_period_law: kappa/period size mismatch");
    }
    if (n < 6) {
        throw std::invalid_argument("fit_period_law: insufficient data, need >= 6 rows with T_ba");
    }

    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = kappas[i];
        design(i, 0) = 1.0 / k;
        design(i, 1) = 1.0 / (3.0 * k * k * k);
        design(i, 2) = 1.0 / (5.0 * std::pow(k, 5));
        y(i) = t_ba[i];
    }

    // Column scaling keeps the normal equations well conditioned across the
    // wildly different magnitudes of the three basis functions.
    Eigen::Vector3d scale;
    for (int j = 0; j < 3; ++j) {
        scale(j) = design.col(j).norm();
        if (!(scale(j) > 0.0)) {
            throw NumericError("fit_period_law: degenerate basis column");
        }
    }
    Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
    Eigen::Matrix3d gram = scaled.transpose() * scaled;
    Eigen::Vector3d rhs = scaled.transpose() * y;

    Eigen::FullPivLU<Eigen::Matrix3d> lu(gram);
    if (!lu.isInvertible()) {
        throw NumericError("fit_period_law: rank-deficient design matrix");
    }
    const Eigen::Vector3d coef_scaled = lu.solve(rhs);
    const Eigen::Vector3d coef = coef_scaled.cwiseQuotient(scale);

    const Eigen::VectorXd residual = y - design * coef;
    const double ssr = residual.squaredNorm();
    const double dof = static_cast<double>(n) - 3.0;
    const double sigma2 = dof > 0.0 ? ssr / dof : 0.0;
    const Eigen::Matrix3d gram_inv = lu.inverse();
    Eigen::Vector3d se;
    for (int j = 0; j < 3; ++j) {
        se(j) = std::sqrt(std::max(0.0, sigma2 * gram_inv(j, j))) / scale(j);
    }

    FitCoefficients fit;
    fit.a = coef(0);
    fit.b = coef(1);
    fit.c = coef(2);
    fit.stderr_a = se(0);
    fit.stderr_b = se(1);
    fit.stderr_c = se(2);
    fit.rms_residual = std::sqrt(ssr / static_cast<double>(n));
    if (!std::isfinite(fit.a) || !std::isfinite(fit.b) || !std::isfinite(fit.c)) {
        throw NumericError("fit_period_law: non-finite coefficients");
    }
    return fit;
}

double period_law_value(const FitCoefficients& fit, double kappa) {
    return fit.a / kappa + fit.b / (3.0 * kappa * kappa * kappa) +
           fit.c / (5.0 * std::pow(kappa, 5));
}

}  // namespace soliplasmon
