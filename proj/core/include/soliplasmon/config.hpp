#ifndef SOLIPLASMON_CONFIG_HPP
#define SOLIPLASMON_CONFIG_HPP

#include <filesystem>
#include <string>

#include "soliplasmon/dynamics.hpp"
#include "soliplasmon/model.hpp"

namespace soliplasmon {

// Initial-state choice for a run. A Fock state needs (n_a, n_b); a coherent
// state needs the amplitude and which mode carries it.
struct InitialStateSpec {
    enum class Kind { fock, coherent };
    Kind kind = Kind::fock;
    int n_a = 1;
    int n_b = 0;
    double alpha_re = 1.0;
    double alpha_im = 0.0;
    Mode mode = Mode::a;

    std::string tag() const;
};

// Full description of one simulation run. Parsing is strict: any key the
// schema does not know is rejected, so a misspelled parameter fails loudly
// instead of silently running the defaults.
struct RunConfig {
    ModelParams model;
    InitialStateSpec initial_state;
    int cutoff_a = 4;
    int cutoff_b = 4;
    EvolutionConfig evolution;
    double threshold = 1e-6;
    std::string output_path;

    void validate() const;
};

// Reads and strictly parses a JSON config file. Missing keys fall back to
// the defaults above; cutoffs default to (4,4) for Fock and (16,16) for
// coherent initial states when absent.
RunConfig load_run_config(const std::filesystem::path& path);

// Same parser on in-memory text (exposed for tests).
RunConfig parse_run_config(const std::string& text);

// Canonical serialization (sorted keys, no whitespace); re-parsing and
// re-serializing a config reproduces this string byte for byte.
std::string canonical_config_json(const RunConfig& config);

// FNV-1a 64-bit digest of the canonical serialization.
std::string config_digest(const RunConfig& config);

}  // namespace soliplasmon

#endif
