#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "soliplasmon/commands.hpp"
#include "soliplasmon/errors.hpp"
#include "soliplasmon/version.hpp"

namespace {

std::optional<std::filesystem::path> as_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode soliton-plasmon steering simulator"};
    app.set_version_flag("--version", soliplasmon::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    auto* simulate = app.add_subcommand("simulate", "run one trajectory and write the witness CSV");
    simulate->add_option("--config", config_path, "JSON config file")->required();
    simulate->add_option("--out", out_path, "output CSV path (overrides config output_path)");

    std::string sweep_config;
    std::string sweep_out;
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    int points = 0;
    bool linear = false;
    auto* sweep = app.add_subcommand("sweep", "sweep kappa and record witnessing periods");
    sweep->add_option("--config", sweep_config, "JSON config file")->required();
    sweep->add_option("--kappa-min", kappa_min, "lower kappa bound")->required();
    sweep->add_option("--kappa-max", kappa_max, "upper kappa bound")->required();
    sweep->add_option("--points", points, "number of grid points")->required();
    sweep->add_flag("--linear", linear, "use a linear grid instead of geometric");
    sweep->add_option("--out", sweep_out, "output CSV path (overrides config output_path)");

    std::string fit_in;
    std::string predict_out;
    auto* fit = app.add_subcommand("fit", "fit the period law to a sweep CSV");
    fit->add_option("--in", fit_in, "sweep CSV to fit")->required();
    fit->add_option("--predict", predict_out, "also write a predicted-curve CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or the parse message
        return e.get_exit_code() == 0 ? soliplasmon::kExitOk : soliplasmon::kExitConfig;
    }

    try {
        if (simulate->parsed()) {
            const auto summary = soliplasmon::cmd_simulate(config_path, as_path(out_path));
            std::cout << "wrote " << summary.csv_path.string() << " and "
                      << summary.summary_path.string() << "\n"
                      << "detected periods: zeta_ab x" << summary.periods_ab.size()
                      << ", zeta_ba x" << summary.periods_ba.size() << "\n";
        } else if (sweep->parsed()) {
            const auto outcome = soliplasmon::cmd_sweep(sweep_config, kappa_min, kappa_max,
                                                        points, linear, as_path(sweep_out));
            std::cout << "wrote " << outcome.csv_path.string() << " ("
                      << outcome.sweep.rows.size() << " rows) and "
                      << outcome.summary_path.string() << "\n";
        } else if (fit->parsed()) {
            const auto outcome = soliplasmon::cmd_fit(fit_in, as_path(predict_out));
            std::cout << "wrote " << outcome.report_path.string() << "\n";
        }
    } catch (const soliplasmon::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return soliplasmon::kExitConfig;
    } catch (const soliplasmon::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return soliplasmon::kExitNumeric;
    } catch (const soliplasmon::IoError& e) {
        std::cerr << "I/O failure: " << e.what() << "\n";
        return soliplasmon::kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return soliplasmon::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return soliplasmon::kExitNumeric;
    }
    return soliplasmon::kExitOk;
}
