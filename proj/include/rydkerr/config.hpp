#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace rydkerr {

/// Key/value configuration with nested tables, stored under dotted paths.
/// The accepted text format is a TOML subset: '#' comments, [table] headers,
/// dotted keys, and scalar values (number, "string", true/false) plus flat
/// arrays of those. CLI overrides address entries by the same dotted paths.
class Config {
  public:
    using Value = std::variant<double, bool, std::string, std::vector<double>,
                               std::vector<std::string>>;

    static Config parse(const std::string& text, const std::string& source = "<config>");
    static Config load(const std::string& path);

    bool has(const std::string& path) const;

    double get_double(const std::string& path) const;
    double get_double(const std::string& path, double fallback) const;
    int get_int(const std::string& path, int fallback) const;
    bool get_bool(const std::string& path, bool fallback) const;
    std::string get_string(const std::string& path) const;
    std::string get_string(const std::string& path, const std::string& fallback) const;
    std::vector<double> get_doubles(const std::string& path) const;
    std::vector<std::string> get_strings(const std::string& path) const;

    void set(const std::string& path, Value v);
    /// Parses `raw` with the value grammar above and stores it at `path`.
    void set_from_string(const std::string& path, const std::string& raw);
    /// Applies a "path=value" override.
    void apply_override(const std::string& assignment);

    /// Canonical text dump (sorted by path); used for output-file headers.
    std::string dump() const;

    const std::map<std::string, Value>& entries() const { return entries_; }

  private:
    std::map<std::string, Value> entries_;
};

}  // namespace rydkerr
