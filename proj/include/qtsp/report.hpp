#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qtsp {

/// Formats a double with 17 significant digits — enough to round-trip — so
/// every emitted file is byte-identical across runs and platforms.
[[nodiscard]] std::string format_real(double x);

/// Ordered key=value report. Keys are dotted paths (config.n, quantum.f0, ...);
/// insertion order is preserved so reports diff cleanly.
class Report {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value);
    void add(const std::string& key, double value);
    void add(const std::string& key, bool value);
    void add_int(const std::string& key, std::int64_t value);
    void add_uint(const std::string& key, std::uint64_t value);

    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }
    /// Looks up a key; returns empty string when absent.
    [[nodiscard]] std::string get(const std::string& key) const;

    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Peak resident set size in kB (0 when the platform does not expose it).
[[nodiscard]] std::uint64_t peak_rss_kb();

} // namespace qtsp
