#include "covertrate/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

namespace covert::config {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError((path.empty() ? std::string("/") : path) + ": " + what);
}

// Walks one JSON object, remembering which keys were consumed.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
    }

    std::string child(const std::string& key) const { return path_ + "/" + key; }

    const json* get(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::optional<double> number(const std::string& key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number()) fail(child(key), "expected a number");
        const double x = v->get<double>();
        if (!std::isfinite(x)) fail(child(key), "expected a finite number");
        return x;
    }

    void number(const std::string& key, double& out) {
        if (auto x = number(key)) out = *x;
    }

    template <class Int>
    void integer(const std::string& key, Int& out) {
        const json* v = get(key);
        if (!v) return;
        if (!v->is_number_integer()) fail(child(key), "expected an integer");
        if (v->is_number_unsigned()) {
            const auto u = v->get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
                fail(child(key), "integer out of range");
            }
            out = static_cast<Int>(u);
            return;
        }
        const auto s = v->get<std::int64_t>();
        if constexpr (std::is_unsigned_v<Int>) {
            if (s < 0) fail(child(key), "expected a nonnegative integer");
        } else {
            if (s < std::numeric_limits<Int>::min() || s > std::numeric_limits<Int>::max()) {
                fail(child(key), "integer out of range");
            }
        }
        out = static_cast<Int>(s);
    }

    void boolean(const std::string& key, bool& out) {
        const json* v = get(key);
        if (!v) return;
        if (!v->is_boolean()) fail(child(key), "expected true or false");
        out = v->get<bool>();
    }

    std::optional<std::string> string(const std::string& key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) fail(child(key), "expected a string");
        return v->get<std::string>();
    }

    /// `key` in linear units or `key_db` in dB, not both.
    void power(const std::string& key, double& out) {
        const auto lin = number(key);
        const auto db = number(key + "_db");
        if (lin && db) fail(path_, "give either '" + key + "' or '" + key + "_db', not both");
        if (lin) out = *lin;
        if (db) out = model::db_to_linear(*db);
    }

    template <class T>
    std::vector<T> array(const std::string& key, const std::vector<T>& fallback) {
        const json* v = get(key);
        if (!v) return fallback;
        if (!v->is_array()) fail(child(key), "expected an array");
        std::vector<T> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            const json& e = (*v)[i];
            const std::string p = child(key) + "/" + std::to_string(i);
            if constexpr (std::is_integral_v<T>) {
                if (!e.is_number_integer()) fail(p, "expected an integer");
                const auto x = e.get<std::int64_t>();
                if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
                    fail(p, "integer out of range");
                }
                out.push_back(static_cast<T>(x));
            } else {
                if (!e.is_number()) fail(p, "expected a number");
                out.push_back(e.get<T>());
            }
        }
        return out;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) fail(child(it.key()), "unknown key");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

using Setter = std::function<void(ExperimentConfig&, double)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"d_ab", [](ExperimentConfig& c, double v) { c.geometry.d_ab = v; }},
        {"d_ac", [](ExperimentConfig& c, double v) { c.geometry.d_ac = v; }},
        {"d_au", [](ExperimentConfig& c, double v) { c.geometry.d_au = v; }},
        {"d_aw", [](ExperimentConfig& c, double v) { c.geometry.d_aw = v; }},
        {"alpha", [](ExperimentConfig& c, double v) { c.geometry.alpha = v; }},
        {"P", [](ExperimentConfig& c, double v) { c.total_power = v; }},
        {"P_db", [](ExperimentConfig& c, double v) { c.total_power = model::db_to_linear(v); }},
        {"sigma2_b", [](ExperimentConfig& c, double v) { c.noise.sigma2_b = v; }},
        {"sigma2_c", [](ExperimentConfig& c, double v) { c.noise.sigma2_c = v; }},
        {"sigma2_u", [](ExperimentConfig& c, double v) { c.noise.sigma2_u = v; }},
        {"sigma2_w", [](ExperimentConfig& c, double v) { c.noise.sigma2_w = v; }},
        {"sigma2_b_db", [](ExperimentConfig& c, double v) { c.noise.sigma2_b = model::db_to_linear(v); }},
        {"sigma2_c_db", [](ExperimentConfig& c, double v) { c.noise.sigma2_c = model::db_to_linear(v); }},
        {"sigma2_u_db", [](ExperimentConfig& c, double v) { c.noise.sigma2_u = model::db_to_linear(v); }},
        {"sigma2_w_db", [](ExperimentConfig& c, double v) { c.noise.sigma2_w = model::db_to_linear(v); }},
        {"p_r1", [](ExperimentConfig& c, double v) { c.p_r1 = v; }},
        {"r_sec_min", [](ExperimentConfig& c, double v) { c.qos.r_sec_min = v; }},
        {"r_cov_min", [](ExperimentConfig& c, double v) { c.qos.r_cov_min = v; }},
        {"epsilon", [](ExperimentConfig& c, double v) { c.qos.epsilon = v; }},
        {"eps_b", [](ExperimentConfig& c, double v) { c.budget.eps_b = v; }},
        {"eps_c", [](ExperimentConfig& c, double v) { c.budget.eps_c = v; }},
        {"eps_u", [](ExperimentConfig& c, double v) { c.budget.eps_u = v; }},
        {"eps_d", [](ExperimentConfig& c, double v) { c.budget.eps_d = v; }},
    };
    return table;
}

// Converts std::invalid_argument from the model validators into ConfigError.
template <class Fn>
void checked(const std::string& path, Fn&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

void validate_base(const ExperimentConfig& c, const std::string& prefix) {
    checked(prefix + "/geometry", [&] { c.geometry.validate(); });
    checked(prefix + "/noise", [&] { c.noise.validate(); });
    if (!(c.total_power > 0.0)) fail(prefix + "/P", "total power must be > 0");
    if (!(c.p_r1 >= 0.0 && c.p_r1 <= 1.0)) fail(prefix + "/p_r1", "must lie in [0,1]");
    checked(prefix + "/qos", [&] { c.qos.validate(); });
    checked(prefix + "/budget", [&] { c.budget.validate(); });
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string_view to_string(RunMode m) {
    switch (m) {
        case RunMode::Joint: return "joint";
        case RunMode::Sic: return "sic";
        case RunMode::AnAuto: return "an-auto";
        case RunMode::Robust: return "robust";
    }
    return "unknown";
}

std::optional<RunMode> parse_run_mode(std::string_view s) {
    for (RunMode m : {RunMode::Joint, RunMode::Sic, RunMode::AnAuto, RunMode::Robust}) {
        if (s == to_string(m)) return m;
    }
    return std::nullopt;
}

const std::vector<std::string>& sweep_variables() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [k, v] : setters()) out.push_back(k);
        return out;
    }();
    return names;
}

ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, std::string_view variable,
                                  double value) {
    const auto& table = setters();
    auto it = table.find(variable);
    if (it == table.end()) fail("/sweep/variable", "unknown sweep variable '" +
                                                       std::string(variable) + "'");
    ExperimentConfig out = cfg;
    it->second(out, value);
    return out;
}

void ExperimentConfig::validate() const {
    validate_base(*this, "");
    if (draws < 1) fail("/draws", "must be >= 1");
    if (sweep.values.empty()) fail("/sweep/values", "must not be empty");
    if (!setters().count(sweep.variable)) {
        fail("/sweep/variable", "unknown sweep variable '" + sweep.variable + "'");
    }
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
        const std::string p = "/sweep/values/" + std::to_string(i);
        if (!std::isfinite(sweep.values[i])) fail(p, "expected a finite number");
        validate_base(with_sweep_value(*this, sweep.variable, sweep.values[i]), p);
    }
    if (oracle_grid < 2) fail("/oracle_grid", "must be >= 2");
    checked("/solver", [&] { solver.validate(); });
    if (!(detection.rho_s >= 0.0 && detection.rho_s <= 1.0)) {
        fail("/detection/rho_s", "must lie in [0,1]");
    }
    if (detection.trials < 1) fail("/detection/trials", "must be >= 1");
    if (detection.n_values.empty()) fail("/detection/n_values", "must not be empty");
    for (std::size_t i = 0; i < detection.n_values.size(); ++i) {
        if (detection.n_values[i] < 1) {
            fail("/detection/n_values/" + std::to_string(i), "must be >= 1");
        }
    }
    if (detection.thresholds_psi1.empty()) {
        fail("/detection/thresholds_psi1", "must not be empty");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError("line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": malformed JSON (" + e.what() + ")");
    }

    ExperimentConfig cfg;
    ObjectReader top(root, "");

    if (const json* g = top.get("geometry")) {
        ObjectReader r(*g, "/geometry");
        r.number("d_ab", cfg.geometry.d_ab);
        r.number("d_ac", cfg.geometry.d_ac);
        r.number("d_au", cfg.geometry.d_au);
        r.number("d_aw", cfg.geometry.d_aw);
        r.number("alpha", cfg.geometry.alpha);
        r.finish();
    }
    if (const json* n = top.get("noise")) {
        ObjectReader r(*n, "/noise");
        r.power("sigma2_b", cfg.noise.sigma2_b);
        r.power("sigma2_c", cfg.noise.sigma2_c);
        r.power("sigma2_u", cfg.noise.sigma2_u);
        r.power("sigma2_w", cfg.noise.sigma2_w);
        r.finish();
    }
    top.power("P", cfg.total_power);
    top.number("p_r1", cfg.p_r1);
    if (const json* q = top.get("qos")) {
        ObjectReader r(*q, "/qos");
        r.number("r_sec_min", cfg.qos.r_sec_min);
        r.number("r_cov_min", cfg.qos.r_cov_min);
        r.number("epsilon", cfg.qos.epsilon);
        r.finish();
    }
    if (const json* b = top.get("budget")) {
        ObjectReader r(*b, "/budget");
        r.number("eps_b", cfg.budget.eps_b);
        r.number("eps_c", cfg.budget.eps_c);
        r.number("eps_u", cfg.budget.eps_u);
        r.number("eps_d", cfg.budget.eps_d);
        if (auto m = r.string("model")) {
            auto parsed = robust::parse_bound_model(*m);
            if (!parsed) fail("/budget/model", "expected \"additive\" or \"gain\"");
            cfg.bound_model = *parsed;
        }
        r.finish();
    }
    if (const json* s = top.get("sweep")) {
        ObjectReader r(*s, "/sweep");
        if (auto v = r.string("variable")) cfg.sweep.variable = *v;
        cfg.sweep.values = r.array<double>("values", cfg.sweep.values);
        r.finish();
    }
    top.integer("draws", cfg.draws);
    top.integer("seed", cfg.seed);
    if (auto m = top.string("mode")) {
        auto parsed = parse_run_mode(*m);
        if (!parsed) fail("/mode", "expected one of joint, sic, an-auto, robust");
        cfg.mode = *parsed;
    }
    top.boolean("oracle_compare", cfg.oracle_compare);
    top.integer("oracle_grid", cfg.oracle_grid);
    if (const json* s = top.get("solver")) {
        ObjectReader r(*s, "/solver");
        r.number("vartheta", cfg.solver.vartheta);
        r.integer("max_iters", cfg.solver.max_iters);
        r.number("init_rho_cs", cfg.solver.init_rho_cs);
        r.integer("oracle_grid", cfg.solver.oracle_grid);
        r.finish();
    }
    if (const json* d = top.get("detection")) {
        ObjectReader r(*d, "/detection");
        r.number("rho_s", cfg.detection.rho_s);
        cfg.detection.n_values = r.array<int>("n_values", cfg.detection.n_values);
        r.integer("trials", cfg.detection.trials);
        cfg.detection.thresholds_psi1 =
            r.array<double>("thresholds_psi1", cfg.detection.thresholds_psi1);
        r.finish();
    }
    top.finish();
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ":" + e.what());
    }
}

}  // namespace covert::config
