#include "censtail/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "censtail/error.hpp"
#include "json.hpp"

namespace censtail {

namespace {

using nlohmann::json;

void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
    }
}

const json& required(const json& obj, std::string_view where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(std::string(where) + ": missing field '" + key + "'");
    return *it;
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

std::size_t count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(where + ": expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::string text(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

Family family_of(const json& v, const std::string& where) {
    try {
        return parse_family(text(v, where));
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

HeavyTailModel parse_model(const json& obj, const std::string& where) {
    only_keys(obj, where, {"family", "tail_index", "eta"});
    HeavyTailModel m;
    m.family = family_of(required(obj, where, "family"), where + ".family");
    m.tail_index = number(required(obj, where, "tail_index"), where + ".tail_index");
    if (obj.contains("eta")) m.eta = number(obj["eta"], where + ".eta");
    try {
        m.validate();
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return m;
}

CensoringScenario parse_scenario(const json& obj) {
    const std::string where = "scenario";
    only_keys(obj, where, {"family", "gamma1", "p", "eta", "target", "censor"});
    try {
        if (obj.contains("target")) {
            if (obj.contains("family") || obj.contains("gamma1") || obj.contains("p") || obj.contains("eta")) {
                throw ConfigError(where + ": use either {target, censor} or {family, gamma1, p, eta}");
            }
            const auto target = parse_model(obj["target"], where + ".target");
            const json& censor = required(obj, where, "censor");
            if (censor.is_null()) return CensoringScenario::uncensored(target);
            return CensoringScenario(target, parse_model(censor, where + ".censor"));
        }
        const Family family = family_of(required(obj, where, "family"), where + ".family");
        const double gamma1 = number(required(obj, where, "gamma1"), where + ".gamma1");
        const double p = number(required(obj, where, "p"), where + ".p");
        const double eta = obj.contains("eta") ? number(obj["eta"], where + ".eta") : 1.0;
        return CensoringScenario::same_family(family, gamma1, p, eta);
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

std::vector<EstimatorSpec> parse_estimators(const json& arr) {
    if (!arr.is_array() || arr.empty()) throw ConfigError("estimators: expected a nonempty array");
    std::vector<EstimatorSpec> out;
    for (std::size_t j = 0; j < arr.size(); ++j) {
        const std::string where = "estimators[" + std::to_string(j) + "]";
        only_keys(arr[j], where, {"kind", "beta"});
        EstimatorSpec spec;
        try {
            spec.kind = parse_estimator_kind(text(required(arr[j], where, "kind"), where + ".kind"));
        } catch (const DomainError& e) {
            throw ConfigError(where + ": " + e.what());
        }
        if (arr[j].contains("beta")) {
            spec.beta = number(arr[j]["beta"], where + ".beta");
        } else if (spec.uses_beta()) {
            throw ConfigError(where + ": missing field 'beta'");
        }
        try {
            spec.validate();
        } catch (const DomainError& e) {
            throw ConfigError(where + ": " + e.what());
        }
        out.push_back(spec);
    }
    return out;
}

std::vector<std::size_t> parse_k_grid(const json& v, std::size_t n) {
    if (v.is_array()) {
        std::vector<std::size_t> grid;
        for (std::size_t j = 0; j < v.size(); ++j) grid.push_back(count(v[j], "k_grid[" + std::to_string(j) + "]"));
        return grid;
    }
    only_keys(v, "k_grid", {"min", "max", "stride"});
    const std::size_t lo = v.contains("min") ? count(v["min"], "k_grid.min") : 2;
    const std::size_t hi = v.contains("max") ? count(v["max"], "k_grid.max") : n - 1;
    const std::size_t stride = v.contains("stride") ? count(v["stride"], "k_grid.stride") : 1;
    if (hi > n - 1) throw ConfigError("k_grid.max: must be <= n-1");
    return make_k_grid(n, lo, hi, stride);
}

}  // namespace

McConfig parse_run_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    only_keys(doc, "config",
              {"schema_version", "scenario", "n", "replications", "seed", "estimators", "k_grid", "workers"});
    const auto version = required(doc, "config", "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kRunConfigSchemaVersion) {
        throw ConfigError("schema_version: expected " + std::to_string(kRunConfigSchemaVersion));
    }

    McConfig cfg;
    cfg.scenario = parse_scenario(required(doc, "config", "scenario"));
    cfg.n = count(required(doc, "config", "n"), "n");
    if (cfg.n < 3) throw ConfigError("n: must be >= 3");
    cfg.replications = count(required(doc, "config", "replications"), "replications");
    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
            throw ConfigError("seed: expected a nonnegative integer");
        }
        cfg.seed.master = s.get<std::uint64_t>();
    }
    cfg.estimators = parse_estimators(required(doc, "config", "estimators"));
    cfg.k_grid = doc.contains("k_grid") ? parse_k_grid(doc["k_grid"], cfg.n) : make_k_grid(cfg.n, 2, cfg.n - 1);
    if (doc.contains("workers")) cfg.workers = static_cast<unsigned>(count(doc["workers"], "workers"));
    cfg.validate();
    return cfg;
}

McConfig load_run_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config '" + file.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

}  // namespace censtail
