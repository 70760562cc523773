#include "qtsp/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace qtsp {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Report::add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}

void Report::add(const std::string& key, const char* value) {
    entries_.emplace_back(key, std::string(value));
}

void Report::add(const std::string& key, double value) {
    entries_.emplace_back(key, format_real(value));
}

void Report::add(const std::string& key, bool value) {
    entries_.emplace_back(key, value ? "true" : "false");
}

void Report::add_int(const std::string& key, std::int64_t value) {
    entries_.emplace_back(key, std::to_string(value));
}

void Report::add_uint(const std::string& key, std::uint64_t value) {
    entries_.emplace_back(key, std::to_string(value));
}

std::string Report::get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return v;
    }
    return {};
}

void Report::write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

void Report::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Report::write_file: cannot open " + path);
    write(out);
}

std::uint64_t peak_rss_kb() {
    std::ifstream status("/proc/self/status");
    if (!status) return 0;
    std::string token;
    while (status >> token) {
        if (token == "VmHWM:") {
            std::uint64_t kb = 0;
            status >> kb;
            return kb;
        }
    }
    return 0;
}

} // namespace qtsp
