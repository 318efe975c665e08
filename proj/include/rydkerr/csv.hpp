#pragma once

#include <string>
#include <vector>

namespace rydkerr::csv {

/// Writer for plain comma-separated tables. Header lines are emitted as
/// '#'-prefixed comments so the payload stays machine-readable; numeric cells
/// are printed with enough digits to round-trip doubles.
class Writer {
  public:
    explicit Writer(const std::string& path);
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void comment(const std::string& line);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

  private:
    struct Impl;
    Impl* impl_;
};

std::string format_double(double v);

/// Reads exactly `ncols` numeric columns; '#' lines and blank lines are
/// skipped. Throws ValidationError with the offending line number otherwise.
std::vector<std::vector<double>> read_columns(const std::string& path, int ncols);

}  // namespace rydkerr::csv
