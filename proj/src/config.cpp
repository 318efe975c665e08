#include "rydkerr/config.hpp"

#include <cctype>
#include <optional>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rydkerr/csv.hpp"
#include "rydkerr/errors.hpp"

namespace rydkerr {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    std::ostringstream os;
    os << source << ":" << line << ": " << msg;
    throw ValidationError(os.str());
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
            c != '.')
            return false;
    return !(k.front() == '.' || k.back() == '.');
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Config::Value parse_scalar(const std::string& raw, const std::string& source, int line) {
    const std::string v = trim(raw);
    if (v.empty()) fail(source, line, "empty value");
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            fail(source, line, "unterminated string value");
        return v.substr(1, v.size() - 2);
    }
    if (auto num = parse_number(v)) return *num;
    fail(source, line, "cannot parse value '" + v + "' (number, string, or bool)");
}

Config::Value parse_value(const std::string& raw, const std::string& source, int line) {
    const std::string v = trim(raw);
    if (v.empty()) fail(source, line, "empty value");
    if (v.front() != '[') return parse_scalar(v, source, line);
    if (v.back() != ']') fail(source, line, "unterminated array value");

    std::vector<std::string> items;
    std::string body = v.substr(1, v.size() - 2);
    std::string cur;
    bool in_string = false;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            items.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty() || !items.empty()) items.push_back(cur);
    if (in_string) fail(source, line, "unterminated string in array");

    std::vector<double> nums;
    std::vector<std::string> strs;
    bool numeric = true, stringy = true;
    for (const auto& item : items) {
        auto sv = parse_scalar(item, source, line);
        if (std::holds_alternative<double>(sv))
            nums.push_back(std::get<double>(sv));
        else
            numeric = false;
        if (std::holds_alternative<std::string>(sv))
            strs.push_back(std::get<std::string>(sv));
        else
            stringy = false;
    }
    if (items.empty()) return std::vector<double>{};
    if (numeric) return nums;
    if (stringy) return strs;
    fail(source, line, "arrays must be homogeneous (all numbers or all strings)");
}

std::string value_to_string(const Config::Value& v) {
    std::ostringstream os;
    if (std::holds_alternative<double>(v)) {
        os << csv::format_double(std::get<double>(v));
    } else if (std::holds_alternative<bool>(v)) {
        os << (std::get<bool>(v) ? "true" : "false");
    } else if (std::holds_alternative<std::string>(v)) {
        os << '"' << std::get<std::string>(v) << '"';
    } else if (std::holds_alternative<std::vector<double>>(v)) {
        os << '[';
        const auto& a = std::get<std::vector<double>>(v);
        for (size_t i = 0; i < a.size(); ++i)
            os << csv::format_double(a[i]) << (i + 1 < a.size() ? ", " : "");
        os << ']';
    } else {
        os << '[';
        const auto& a = std::get<std::vector<std::string>>(v);
        for (size_t i = 0; i < a.size(); ++i)
            os << '"' << a[i] << '"' << (i + 1 < a.size() ? ", " : "");
        os << ']';
    }
    return os.str();
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& source) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside strings
        std::string stripped;
        bool in_string = false;
        for (char c : line) {
            if (c == '"') in_string = !in_string;
            if (c == '#' && !in_string) break;
            stripped.push_back(c);
        }
        stripped = trim(stripped);
        if (stripped.empty()) continue;

        if (stripped.front() == '[') {
            if (stripped.back() != ']')
                fail(source, lineno, "unterminated table header");
            section = trim(stripped.substr(1, stripped.size() - 2));
            if (!valid_key(section)) fail(source, lineno, "invalid table name");
            continue;
        }

        const size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            fail(source, lineno, "expected 'key = value' or '[table]'");
        std::string key = trim(stripped.substr(0, eq));
        if (!valid_key(key)) fail(source, lineno, "invalid key '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        cfg.entries_[full] = parse_value(stripped.substr(eq + 1), source, lineno);
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str(), path);
}

bool Config::has(const std::string& path) const { return entries_.count(path) > 0; }

namespace {
[[noreturn]] void missing(const std::string& path) {
    throw ValidationError("missing required config key: " + path);
}
[[noreturn]] void wrong_type(const std::string& path, const char* want) {
    throw ValidationError("config key " + path + ": expected " + want);
}
}  // namespace

double Config::get_double(const std::string& path) const {
    auto it = entries_.find(path);
    if (it == entries_.end()) missing(path);
    if (!std::holds_alternative<double>(it->second)) wrong_type(path, "a number");
    return std::get<double>(it->second);
}

double Config::get_double(const std::string& path, double fallback) const {
    return has(path) ? get_double(path) : fallback;
}

int Config::get_int(const std::string& path, int fallback) const {
    if (!has(path)) return fallback;
    const double v = get_double(path);
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-9)
        throw ValidationError("config key " + path + ": expected an integer");
    return i;
}

bool Config::get_bool(const std::string& path, bool fallback) const {
    auto it = entries_.find(path);
    if (it == entries_.end()) return fallback;
    if (!std::holds_alternative<bool>(it->second)) wrong_type(path, "a bool");
    return std::get<bool>(it->second);
}

std::string Config::get_string(const std::string& path) const {
    auto it = entries_.find(path);
    if (it == entries_.end()) missing(path);
    if (!std::holds_alternative<std::string>(it->second)) wrong_type(path, "a string");
    return std::get<std::string>(it->second);
}

std::string Config::get_string(const std::string& path,
                               const std::string& fallback) const {
    return has(path) ? get_string(path) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& path) const {
    auto it = entries_.find(path);
    if (it == entries_.end()) missing(path);
    if (std::holds_alternative<double>(it->second))
        return {std::get<double>(it->second)};
    if (!std::holds_alternative<std::vector<double>>(it->second))
        wrong_type(path, "an array of numbers");
    return std::get<std::vector<double>>(it->second);
}

std::vector<std::string> Config::get_strings(const std::string& path) const {
    auto it = entries_.find(path);
    if (it == entries_.end()) missing(path);
    if (std::holds_alternative<std::string>(it->second))
        return {std::get<std::string>(it->second)};
    if (!std::holds_alternative<std::vector<std::string>>(it->second))
        wrong_type(path, "an array of strings");
    return std::get<std::vector<std::string>>(it->second);
}

void Config::set(const std::string& path, Value v) { entries_[path] = std::move(v); }

void Config::set_from_string(const std::string& path, const std::string& raw) {
    if (!valid_key(path)) throw ValidationError("invalid config path: " + path);
    entries_[path] = parse_value(raw, "<override>", 1);
}

void Config::apply_override(const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override must look like path.key=value: " + assignment);
    std::string key = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    // bare words that are not numbers/bools are treated as strings for
    // convenience on the command line
    if (!value.empty() && value.front() != '"' && value.front() != '[' &&
        value != "true" && value != "false" && !parse_number(value))
        value = '"' + value + '"';
    set_from_string(key, value);
}

std::string Config::dump() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) os << k << " = " << value_to_string(v) << "\n";
    return os.str();
}

}  // namespace rydkerr
