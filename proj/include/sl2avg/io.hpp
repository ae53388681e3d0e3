#pragma once

#include <map>
#include <string>
#include <vector>

namespace sl2avg {

// shortest round-trip decimal for a double (printf %.17g, trimmed)
std::string format_real(double v);

// CSV with leading '# key: value' comment lines; values written verbatim
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

// sorted key=value lines (the resolved-config format)
std::string render_key_values(const std::map<std::string, std::string>& kv);

}  // namespace sl2avg
