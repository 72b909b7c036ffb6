#include "wheatstone/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wheatstone/errors.hpp"

namespace wheatstone {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "omega1", "omega2", "omega3", "omega4", "j1",     "j2",     "j3",     "jx",     "j0",
        "kappa1", "kappa4", "t1",     "t4",     "n1",     "n4",     "kappa2", "kappa3", "gamma2",
        "gamma3", "alpha"};
    return keys;
}

double number(const json& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

double required(const json& doc, const std::string& key) {
    if (!doc.contains(key))
        throw ConfigError("config is missing required key '" + key + "'");
    return number(doc, key);
}

double optional_or(const json& doc, const std::string& key, double fallback) {
    return doc.contains(key) ? number(doc, key) : fallback;
}

}  // namespace

ConfigDocument parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a flat JSON object");
    for (const auto& item : doc.items()) {
        if (!known_keys().count(item.key()))
            throw ConfigError("unknown config key '" + item.key() + "'");
    }

    ConfigDocument out;
    auto& b = out.bridge;
    b.omega[1] = required(doc, "omega2");
    b.omega[2] = required(doc, "omega3");
    b.omega[0] = optional_or(doc, "omega1", b.omega[1]);
    b.omega[3] = optional_or(doc, "omega4", b.omega[2]);
    b.j1 = required(doc, "j1");
    b.j2 = required(doc, "j2");
    b.j3 = required(doc, "j3");
    b.jx = required(doc, "jx");
    b.j0 = optional_or(doc, "j0", 0.0);
    b.kappa1 = required(doc, "kappa1");
    b.kappa4 = required(doc, "kappa4");
    b.t1 = optional_or(doc, "t1", 0.0);
    b.t4 = optional_or(doc, "t4", 0.0);
    if (doc.contains("n1"))
        b.n1 = number(doc, "n1");
    if (doc.contains("n4"))
        b.n4 = number(doc, "n4");
    b.kappa2 = optional_or(doc, "kappa2", 0.0);
    b.kappa3 = optional_or(doc, "kappa3", 0.0);
    b.gamma2 = optional_or(doc, "gamma2", 0.0);
    b.gamma3 = optional_or(doc, "gamma3", 0.0);
    if (doc.contains("alpha"))
        out.alpha = number(doc, "alpha");

    try {
        b.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    // Occupations need positive end-mode frequencies unless given explicitly.
    try {
        (void)b.occupation1();
        (void)b.occupation4();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return out;
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string dump_config(const ConfigDocument& doc) {
    const auto& b = doc.bridge;
    json out = json::object();
    out["omega1"] = b.omega[0];
    out["omega2"] = b.omega[1];
    out["omega3"] = b.omega[2];
    out["omega4"] = b.omega[3];
    out["j1"] = b.j1;
    out["j2"] = b.j2;
    out["j3"] = b.j3;
    out["jx"] = b.jx;
    out["j0"] = b.j0;
    out["kappa1"] = b.kappa1;
    out["kappa4"] = b.kappa4;
    out["t1"] = b.t1;
    out["t4"] = b.t4;
    if (b.n1)
        out["n1"] = *b.n1;
    if (b.n4)
        out["n4"] = *b.n4;
    out["kappa2"] = b.kappa2;
    out["kappa3"] = b.kappa3;
    out["gamma2"] = b.gamma2;
    out["gamma3"] = b.gamma3;
    if (doc.alpha)
        out["alpha"] = *doc.alpha;
    return out.dump(2) + "\n";
}

void save_config(const ConfigDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write config file '" + path.string() + "'");
    out << dump_config(doc);
}

}  // namespace wheatstone
