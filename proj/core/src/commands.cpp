#include "soliplasmon/commands.hpp"

#include <json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "soliplasmon/errors.hpp"
#include "soliplasmon/version.hpp"

namespace soliplasmon {

namespace {

using nlohmann::json;

json period_to_json(const PeriodEstimate& p) {
    return json{{"t_start", p.t_start},   {"t_end", p.t_end},
                {"duration", p.duration}, {"peak_value", p.peak_value},
                {"peak_time", p.peak_time}, {"merged_lobes", p.merged_lobes}};
}

StateVector make_initial_state(const RunConfig& config, const TwoModeSpace& space) {
    if (config.initial_state.kind == InitialStateSpec::Kind::fock) {
        return fock_state(space, config.initial_state.n_a, config.initial_state.n_b);
    }
    const Complex alpha{config.initial_state.alpha_re, config.initial_state.alpha_im};
    // The config pins the cutoffs explicitly, so the guard is overridden
    // here; the recorded norm deficit keeps truncation honest.
    return coherent_state(space, alpha, config.initial_state.mode, true);
}

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // never print "-0"
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open for writing: " + tmp.string());
        }
        out << text;
        out.flush();
        if (!out) {
            throw IoError("failed writing: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("failed to move " + tmp.string() + " into place: " + ec.message());
    }
}

RunSummary cmd_simulate(const std::filesystem::path& config_path,
                        const std::optional<std::filesystem::path>& out_override) {
    const auto wall_start = std::chrono::steady_clock::now();

    const RunConfig config = load_run_config(config_path);
    std::filesystem::path csv_path = out_override
                                         ? *out_override
                                         : std::filesystem::path(config.output_path.empty()
                                                                     ? "witness.csv"
                                                                     : config.output_path);

    TwoModeSpace space(config.cutoff_a, config.cutoff_b);
    const SplitHamiltonian h = build_hamiltonian(config.model, space);
    const StateVector psi0 = make_initial_state(config, space);
    const WitnessTrace trace =
        witness_trace(psi0, h, config.evolution, config.model, config.initial_state.tag());

    std::string csv;
    csv.reserve(trace.samples.size() * 96 + 64);
    csv += "t,zeta_ab,zeta_ba,n_a,n_b,raw_trace\n";
    for (const WitnessSample& s : trace.samples) {
        csv += format_number(s.t);
        csv += ',';
        csv += format_number(s.zeta_ab);
        csv += ',';
        csv += format_number(s.zeta_ba);
        csv += ',';
        csv += format_number(s.n_a);
        csv += ',';
        csv += format_number(s.n_b);
        csv += ',';
        csv += format_number(s.raw_trace_magnitude);
        csv += '\n';
    }
    atomic_write_file(csv_path, csv);

    RunSummary summary;
    summary.config_digest = config_digest(config);
    summary.software_version = kVersion;
    summary.initial_norm_deficit = psi0.norm_deficit;
    summary.periods_ab = detect_periods(trace, WitnessId::ab, config.threshold);
    summary.periods_ba = detect_periods(trace, WitnessId::ba, config.threshold);
    summary.peak_zeta_ab = trace.samples.front().zeta_ab;
    summary.peak_zeta_ba = trace.samples.front().zeta_ba;
    for (const WitnessSample& s : trace.samples) {
        summary.peak_zeta_ab = std::max(summary.peak_zeta_ab, s.zeta_ab);
        summary.peak_zeta_ba = std::max(summary.peak_zeta_ba, s.zeta_ba);
    }
    summary.csv_path = csv_path;
    summary.summary_path = csv_path.string() + ".summary.json";
    summary.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

    json doc;
    doc["config"] = json::parse(canonical_config_json(config));
    doc["config_digest"] = summary.config_digest;
    doc["software_version"] = summary.software_version;
    doc["wall_clock_seconds"] = summary.wall_clock_seconds;
    doc["initial_state"] = {{"tag", config.initial_state.tag()},
                            {"norm_deficit", summary.initial_norm_deficit}};
    doc["peaks"] = {{"zeta_ab", summary.peak_zeta_ab}, {"zeta_ba", summary.peak_zeta_ba}};
    json ab = json::array();
    for (const auto& p : summary.periods_ab) ab.push_back(period_to_json(p));
    json ba = json::array();
    for (const auto& p : summary.periods_ba) ba.push_back(period_to_json(p));
    doc["periods"] = {{"ab", ab}, {"ba", ba}};
    atomic_write_file(summary.summary_path, doc.dump(2) + "\n");

    return summary;
}

SweepOutcome cmd_sweep(const std::filesystem::path& config_path, double kappa_min,
                       double kappa_max, int points, bool linear_grid,
                       const std::optional<std::filesystem::path>& out_override) {
    if (!(kappa_min > 0.0) || !(kappa_max > kappa_min)) {
        throw ConfigError("sweep: need 0 < kappa_min < kappa_max (a degenerate grid is not "
                          "a sweep)");
    }
    if (points < 2) {
        throw ConfigError("sweep: need at least 2 grid points");
    }

    const RunConfig config = load_run_config(config_path);
    if (config.initial_state.kind != InitialStateSpec::Kind::fock) {
        throw ConfigError("sweep: the kappa sweep is defined for Fock initial states");
    }

    std::vector<double> kappas(points);
    if (linear_grid) {
        const double step = (kappa_max - kappa_min) / (points - 1);
        for (int i = 0; i < points; ++i) kappas[i] = kappa_min + step * i;
    } else {
        const double ratio = std::log(kappa_max / kappa_min);
        for (int i = 0; i < points; ++i) {
            kappas[i] = kappa_min * std::exp(ratio * i / (points - 1));
        }
    }
    kappas.front() = kappa_min;
    kappas.back() = kappa_max;

    EvolutionConfig cfg = config.evolution;
    cfg.t_max = std::max({cfg.t_max, 100.0, 20.0 / kappa_min});

    SweepOptions options;
    options.fock_n_a = config.initial_state.n_a;
    options.fock_n_b = config.initial_state.n_b;
    options.cutoff_a = config.cutoff_a;
    options.cutoff_b = config.cutoff_b;
    options.threshold = config.threshold;

    SweepOutcome outcome;
    outcome.kappas = kappas;
    outcome.sweep = sweep_kappa(config.model, kappas, cfg, options);
    outcome.csv_path = out_override ? *out_override
                                    : std::filesystem::path(config.output_path.empty()
                                                                ? "sweep.csv"
                                                                : config.output_path);
    outcome.summary_path = outcome.csv_path.string() + ".summary.json";

    std::string csv = "kappa,T_ba,T_ab\n";
    for (const SweepRow& row : outcome.sweep.rows) {
        csv += format_number(row.kappa);
        csv += ',';
        if (row.t_ba) csv += format_number(*row.t_ba);
        csv += ',';
        if (row.t_ab) csv += format_number(*row.t_ab);
        csv += '\n';
    }
    atomic_write_file(outcome.csv_path, csv);

    json doc;
    doc["config"] = json::parse(canonical_config_json(config));
    doc["config_digest"] = config_digest(config);
    doc["software_version"] = kVersion;
    doc["grid"] = {{"kappa_min", kappa_min},
                   {"kappa_max", kappa_max},
                   {"points", points},
                   {"spacing", linear_grid ? "linear" : "geometric"},
                   {"t_max_effective", cfg.t_max}};
    json diagnostics = json::array();
    for (const SweepRow& row : outcome.sweep.rows) {
        if (!row.diagnostics.empty()) {
            diagnostics.push_back({{"kappa", row.kappa}, {"message", row.diagnostics}});
        }
    }
    doc["diagnostics"] = diagnostics;
    atomic_write_file(outcome.summary_path, doc.dump(2) + "\n");

    return outcome;
}

std::vector<ParsedSweepRow> read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open sweep CSV: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("sweep CSV is empty: " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "kappa,T_ba,T_ab") {
        throw ConfigError("sweep CSV header mismatch, expected 'kappa,T_ba,T_ab' in " +
                          path.string());
    }

    std::vector<ParsedSweepRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<std::string, 3> fields;
        std::size_t pos = 0;
        for (int f = 0; f < 3; ++f) {
            const std::size_t comma = line.find(',', pos);
            if (f < 2) {
                if (comma == std::string::npos) {
                    throw ConfigError("sweep CSV row " + std::to_string(line_no) +
                                      ": expected 3 comma-separated fields");
                }
                fields[f] = line.substr(pos, comma - pos);
                pos = comma + 1;
            } else {
                if (comma != std::string::npos) {
                    throw ConfigError("sweep CSV row " + std::to_string(line_no) +
                                      ": too many fields");
                }
                fields[f] = line.substr(pos);
            }
        }
        auto parse_field = [&](const std::string& text) -> std::optional<double> {
            if (text.empty()) return std::nullopt;
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(text, &used);
            } catch (const std::exception&) {
                throw ConfigError("sweep CSV row " + std::to_string(line_no) +
                                  ": malformed number '" + text + "'");
            }
            if (used != text.size()) {
                throw ConfigError("sweep CSV row " + std::to_string(line_no) +
                                  ": malformed number '" + text + "'");
            }
            return v;
        };
        ParsedSweepRow row;
        const auto kappa = parse_field(fields[0]);
        if (!kappa) {
            throw ConfigError("sweep CSV row " + std::to_string(line_no) + ": missing kappa");
        }
        row.kappa = *kappa;
        row.t_ba = parse_field(fields[1]);
        row.t_ab = parse_field(fields[2]);
        rows.push_back(row);
    }
    return rows;
}

FitOutcome cmd_fit(const std::filesystem::path& sweep_csv_path,
                   const std::optional<std::filesystem::path>& predict_path) {
    const std::vector<ParsedSweepRow> rows = read_sweep_csv(sweep_csv_path);

    std::vector<double> kappas;
    std::vector<double> t_ba;
    for (const ParsedSweepRow& row : rows) {
        if (row.t_ba) {
            kappas.push_back(row.kappa);
            t_ba.push_back(*row.t_ba);
        }
    }
    if (kappas.size() < 6) {
        throw ConfigError("fit: insufficient data, need >= 6 usable rows, got " +
                          std::to_string(kappas.size()));
    }

    FitOutcome outcome;
    outcome.fit = fit_period_law(kappas, t_ba);
    outcome.rows_used = static_cast<int>(kappas.size());
    double mean = 0.0;
    for (double v : t_ba) mean += v;
    outcome.mean_t_ba = mean / static_cast<double>(t_ba.size());
    outcome.report_path = sweep_csv_path.string() + ".fit.json";

    std::ostringstream report;
    report << "period-law fit over " << outcome.rows_used << " rows:\n"
           << "  a = " << format_number(outcome.fit.a) << " +- "
           << format_number(outcome.fit.stderr_a) << "\n"
           << "  b = " << format_number(outcome.fit.b) << " +- "
           << format_number(outcome.fit.stderr_b) << "\n"
           << "  c = " << format_number(outcome.fit.c) << " +- "
           << format_number(outcome.fit.stderr_c) << "\n"
           << "  rms residual = " << format_number(outcome.fit.rms_residual) << " ("
           << format_number(100.0 * outcome.fit.rms_residual / outcome.mean_t_ba)
           << "% of mean T_ba)\n";
    std::cout << report.str();

    json doc;
    doc["fit"] = {{"a", outcome.fit.a},
                  {"b", outcome.fit.b},
                  {"c", outcome.fit.c},
                  {"stderr_a", outcome.fit.stderr_a},
                  {"stderr_b", outcome.fit.stderr_b},
                  {"stderr_c", outcome.fit.stderr_c},
                  {"rms_residual", outcome.fit.rms_residual}};
    doc["rows_used"] = outcome.rows_used;
    doc["mean_T_ba"] = outcome.mean_t_ba;
    doc["input"] = sweep_csv_path.string();
    doc["software_version"] = kVersion;
    atomic_write_file(outcome.report_path, doc.dump(2) + "\n");

    if (predict_path) {
        std::string csv = "kappa,T_ba_pred\n";
        for (const ParsedSweepRow& row : rows) {
            csv += format_number(row.kappa);
            csv += ',';
            csv += format_number(period_law_value(outcome.fit, row.kappa));
            csv += '\n';
        }
        atomic_write_file(*predict_path, csv);
    }

    return outcome;
}

}  // namespace soliplasmon
