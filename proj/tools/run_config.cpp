#include "run_config.hpp"

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sl2avg/io.hpp"

namespace sl2avg::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = trim(t.substr(eq + 1));
    }
    return kv;
}

}  // namespace

RunConfig::RunConfig(std::map<std::string, std::string> defaults, const std::string& config_path,
                     const std::map<std::string, std::string>& cli_overrides)
    : values_(std::move(defaults)) {
    auto apply = [this](const std::map<std::string, std::string>& kv, const char* origin) {
        for (const auto& [k, v] : kv) {
            const auto it = values_.find(k);
            if (it == values_.end())
                throw ConfigError(std::string(origin) + ": unknown key '" + k + "'");
            it->second = v;
        }
    };
    if (!config_path.empty()) apply(parse_file(config_path), "config file");
    // the environment may override the run directory, nothing else
    if (const char* env = std::getenv("SL2AVG_OUT_DIR"); env && *env)
        values_["out_dir"] = env;
    apply(cli_overrides, "command line");
}

const std::string& RunConfig::str(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

double RunConfig::real(const std::string& key) const {
    const std::string& v = str(key);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse real from '" + v + "'");
    return x;
}

long long RunConfig::integer(const std::string& key) const {
    const std::string& v = str(key);
    char* end = nullptr;
    errno = 0;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse integer from '" + v + "'");
    return x;
}

std::vector<double> RunConfig::real_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        errno = 0;
        const double x = std::strtod(item.c_str(), &end);
        if (errno != 0 || end == item.c_str() || *end != '\0')
            throw ConfigError("key '" + key + "': cannot parse real from '" + item + "'");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::vector<int> RunConfig::int_list(const std::string& key) const {
    std::vector<int> out;
    for (double v : real_list(key)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError("key '" + key + "': expected integers");
        out.push_back(i);
    }
    return out;
}

std::string RunConfig::prepare_out_dir() const {
    const std::string dir = str("out_dir");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create out_dir '" + dir + "': " + ec.message());
    write_text_file(dir + "/resolved_config.txt", render_key_values(values_));
    return dir;
}

}  // namespace sl2avg::cli
