#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl2avg::cli {

// user-facing configuration problem: maps to exit code 2
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Flat key=value parameter bag. Resolution order, later wins:
// built-in defaults, config file, SL2AVG_OUT_DIR (out_dir only), command line.
class RunConfig {
  public:
    RunConfig(std::map<std::string, std::string> defaults, const std::string& config_path,
              const std::map<std::string, std::string>& cli_overrides);

    const std::string& str(const std::string& key) const;
    double real(const std::string& key) const;
    long long integer(const std::string& key) const;
    std::vector<double> real_list(const std::string& key) const;
    std::vector<int> int_list(const std::string& key) const;

    const std::map<std::string, std::string>& resolved() const { return values_; }

    // creates out_dir and writes resolved_config.txt into it
    std::string prepare_out_dir() const;

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace sl2avg::cli
