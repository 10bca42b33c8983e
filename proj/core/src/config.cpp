#include "soliplasmon/config.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "soliplasmon/errors.hpp"

namespace soliplasmon {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError("config: '" + where + "' must be a JSON object");
    }
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : j.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
        }
    }
}

double get_number(const json& j, const std::string& key, double fallback,
                  const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw ConfigError("config: '" + where + "." + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, int fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) {
        throw ConfigError("config: '" + where + "." + key + "' must be an integer");
    }
    return j.at(key).get<int>();
}

bool get_bool(const json& j, const std::string& key, bool fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) {
        throw ConfigError("config: '" + where + "." + key + "' must be a boolean");
    }
    return j.at(key).get<bool>();
}

RunConfig from_json(const json& root) {
    require_object(root, "config");
    reject_unknown_keys(root,
                        {"model", "initial_state", "cutoffs", "evolution", "threshold",
                         "output_path"},
                        "config");

    RunConfig config;

    if (root.contains("model")) {
        const json& m = root.at("model");
        require_object(m, "model");
        reject_unknown_keys(m, {"omega", "kerr", "g", "kappa"}, "model");
        config.model.omega = get_number(m, "omega", config.model.omega, "model");
        config.model.kerr = get_number(m, "kerr", config.model.kerr, "model");
        config.model.g = get_number(m, "g", config.model.g, "model");
        config.model.kappa = get_number(m, "kappa", config.model.kappa, "model");
    }

    bool cutoffs_given = false;
    if (root.contains("cutoffs")) {
        const json& c = root.at("cutoffs");
        require_object(c, "cutoffs");
        reject_unknown_keys(c, {"a", "b"}, "cutoffs");
        config.cutoff_a = get_int(c, "a", config.cutoff_a, "cutoffs");
        config.cutoff_b = get_int(c, "b", config.cutoff_b, "cutoffs");
        cutoffs_given = true;
    }

    if (root.contains("initial_state")) {
        const json& s = root.at("initial_state");
        require_object(s, "initial_state");
        if (!s.contains("type") || !s.at("type").is_string()) {
            throw ConfigError("config: initial_state.type must be 'fock' or 'coherent'");
        }
        const std::string type = s.at("type").get<std::string>();
        if (type == "fock") {
            reject_unknown_keys(s, {"type", "n_a", "n_b"}, "initial_state");
            config.initial_state.kind = InitialStateSpec::Kind::fock;
            config.initial_state.n_a = get_int(s, "n_a", 1, "initial_state");
            config.initial_state.n_b = get_int(s, "n_b", 0, "initial_state");
        } else if (type == "coherent") {
            reject_unknown_keys(s, {"type", "alpha_re", "alpha_im", "mode"}, "initial_state");
            config.initial_state.kind = InitialStateSpec::Kind::coherent;
            config.initial_state.alpha_re = get_number(s, "alpha_re", 1.0, "initial_state");
            config.initial_state.alpha_im = get_number(s, "alpha_im", 0.0, "initial_state");
            std::string mode = "a";
            if (s.contains("mode")) {
                if (!s.at("mode").is_string()) {
                    throw ConfigError("config: initial_state.mode must be 'a' or 'b'");
                }
                mode = s.at("mode").get<std::string>();
            }
            if (mode == "a") {
                config.initial_state.mode = Mode::a;
            } else if (mode == "b") {
                config.initial_state.mode = Mode::b;
            } else {
                throw ConfigError("config: initial_state.mode must be 'a' or 'b'");
            }
            if (!cutoffs_given) {
                config.cutoff_a = 16;
                config.cutoff_b = 16;
            }
        } else {
            throw ConfigError("config: initial_state.type must be 'fock' or 'coherent'");
        }
    }

    if (root.contains("evolution")) {
        const json& e = root.at("evolution");
        require_object(e, "evolution");
        reject_unknown_keys(e, {"dt", "t_max", "sample_stride", "renormalize_each_step"},
                            "evolution");
        config.evolution.dt = get_number(e, "dt", config.evolution.dt, "evolution");
        config.evolution.t_max = get_number(e, "t_max", config.evolution.t_max, "evolution");
        config.evolution.sample_stride =
            get_int(e, "sample_stride", config.evolution.sample_stride, "evolution");
        config.evolution.renormalize_each_step = get_bool(
            e, "renormalize_each_step", config.evolution.renormalize_each_step, "evolution");
    }

    if (root.contains("threshold")) {
        if (!root.at("threshold").is_number()) {
            throw ConfigError("config: 'threshold' must be a number");
        }
        config.threshold = root.at("threshold").get<double>();
    }
    if (root.contains("output_path")) {
        if (!root.at("output_path").is_string()) {
            throw ConfigError("config: 'output_path' must be a string");
        }
        config.output_path = root.at("output_path").get<std::string>();
    }

    config.validate();
    return config;
}

json to_json(const RunConfig& config) {
    json root;
    root["model"] = {{"omega", config.model.omega},
                     {"kerr", config.model.kerr},
                     {"g", config.model.g},
                     {"kappa", config.model.kappa}};
    if (config.initial_state.kind == InitialStateSpec::Kind::fock) {
        root["initial_state"] = {{"type", "fock"},
                                 {"n_a", config.initial_state.n_a},
                                 {"n_b", config.initial_state.n_b}};
    } else {
        root["initial_state"] = {{"type", "coherent"},
                                 {"alpha_re", config.initial_state.alpha_re},
                                 {"alpha_im", config.initial_state.alpha_im},
                                 {"mode", config.initial_state.mode == Mode::a ? "a" : "b"}};
    }
    root["cutoffs"] = {{"a", config.cutoff_a}, {"b", config.cutoff_b}};
    root["evolution"] = {{"dt", config.evolution.dt},
                         {"t_max", config.evolution.t_max},
                         {"sample_stride", config.evolution.sample_stride},
                         {"renormalize_each_step", config.evolution.renormalize_each_step}};
    root["threshold"] = config.threshold;
    root["output_path"] = config.output_path;
    return root;
}

}  // namespace

std::string InitialStateSpec::tag() const {
    std::ostringstream out;
    if (kind == Kind::fock) {
        out << "fock(" << n_a << "," << n_b << ")";
    } else {
        out << "coherent(" << alpha_re << (alpha_im < 0 ? "" : "+") << alpha_im << "i,"
            << (mode == Mode::a ? "a" : "b") << ")";
    }
    return out.str();
}

void RunConfig::validate() const {
    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cutoff_a < 1 || cutoff_b < 1) {
        throw ConfigError("config: cutoffs must be >= 1");
    }
    if (initial_state.kind == InitialStateSpec::Kind::fock) {
        if (initial_state.n_a < 0 || initial_state.n_a >= cutoff_a ||
            initial_state.n_b < 0 || initial_state.n_b >= cutoff_b) {
            throw ConfigError("config: fock levels outside the truncation range");
        }
    }
    if (!(threshold > 0.0)) {
        throw ConfigError("config: threshold must be positive");
    }
    try {
        evolution.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading config file: " + path.string());
    }
    return parse_run_config(buffer.str());
}

RunConfig parse_run_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return from_json(root);
}

std::string canonical_config_json(const RunConfig& config) {
    return to_json(config).dump();
}

std::string config_digest(const RunConfig& config) {
    const std::string canonical = canonical_config_json(config);
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char ch : canonical) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace soliplasmon
