#include "rank1/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rank1 {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "space", "sign", "n",      "c",     "m",     "k",       "eps",    "sigma",
        "seed",  "budget", "cases", "out",   "format", "r0",     "sweep",  "rmin",
        "rmax",  "count",  "vertices", "tend", "threads", "timing", "report", "stride"};
    return keys;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        cfg.kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return cfg;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    RunConfig cfg;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config JSON must be a flat object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_string())
            cfg.kv[it.key()] = it.value().get<std::string>();
        else
            cfg.kv[it.key()] = it.value().dump();
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return from_json_text(text);
    return from_text(text);
}

void RunConfig::merge_flag(const std::string& key, const std::string& value) { kv[key] = value; }

void RunConfig::validate(const std::string& subcommand) const {
    for (const auto& [key, value] : kv) {
        (void)value;
        if (!known_keys().count(key)) throw ConfigError("unknown config key: " + key);
    }
    if (!subcommand.empty() && kv.count("space")) space();  // validates the descriptor
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: " + it->second);
    }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    const int i = static_cast<int>(v);
    if (i != v) throw ConfigError("config key '" + key + "': not an integer");
    return i;
}

std::uint64_t RunConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t pos = 0;
        const auto v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an unsigned integer: " + it->second);
    }
}

SpaceSpec RunConfig::space() const {
    // space descriptor: FAM[,n[,c]] with FAM in {C,H,O,CP,CH,HP,HH,OP,OH}
    const std::string tok = get("space", "CP");
    std::string fam = tok;
    int n = get_int("n", 2);
    double c = get_double("c", 1.0);
    const auto comma = tok.find(',');
    if (comma != std::string::npos) {
        fam = tok.substr(0, comma);
        std::string rest = tok.substr(comma + 1);
        const auto comma2 = rest.find(',');
        std::string nstr = comma2 == std::string::npos ? rest : rest.substr(0, comma2);
        try {
            n = std::stoi(nstr);
            if (comma2 != std::string::npos) c = std::stod(rest.substr(comma2 + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad space descriptor: " + tok);
        }
    }
    int sign = 1;
    const std::string sgn = get("sign", "+");
    if (sgn == "+" || sgn == "+1" || sgn == "1")
        sign = 1;
    else if (sgn == "-" || sgn == "-1")
        sign = -1;
    else
        throw ConfigError("bad sign: " + sgn);
    try {
        return parse_space(fam, sign, n, c);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace rank1
