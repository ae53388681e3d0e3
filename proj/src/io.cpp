#include "sl2avg/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sl2avg {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary keeps output byte-identical
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
    out << content;
    if (!out) throw std::runtime_error("write_text_file: write failed for " + path);
}

std::string render_key_values(const std::map<std::string, std::string>& kv) {
    std::string s;
    for (const auto& [k, v] : kv) {
        s += k;
        s += '=';
        s += v;
        s += '\n';
    }
    return s;
}

}  // namespace sl2avg
