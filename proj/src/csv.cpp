#include "rydkerr/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rydkerr/errors.hpp"

namespace rydkerr::csv {

struct Writer::Impl {
    std::ofstream out;
};

Writer::Writer(const std::string& path) : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) throw ValidationError("cannot open for writing: " + path);
}

Writer::~Writer() { delete impl_; }

void Writer::comment(const std::string& line) { impl_->out << "# " << line << "\n"; }

void Writer::columns(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i)
        impl_->out << names[i] << (i + 1 < names.size() ? "," : "");
    impl_->out << "\n";
}

void Writer::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i)
        impl_->out << format_double(values[i]) << (i + 1 < values.size() ? "," : "");
    impl_->out << "\n";
}

void Writer::raw_row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
        impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "");
    impl_->out << "\n";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::vector<double>> read_columns(const std::string& path, int ncols) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open for reading: " + path);
    std::vector<std::vector<double>> cols(ncols);
    std::string line;
    int lineno = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        if (!seen_data) {
            // tolerate a single column-name header row
            seen_data = true;
            std::istringstream probe(line);
            std::string first;
            std::getline(probe, first, ',');
            try {
                size_t pos = 0;
                (void)std::stod(first, &pos);
            } catch (const std::exception&) {
                continue;
            }
        }
        std::istringstream ls(line);
        std::string cell;
        int col = 0;
        while (std::getline(ls, cell, ',')) {
            if (col >= ncols) break;
            try {
                size_t pos = 0;
                double v = std::stod(cell, &pos);
                while (pos < cell.size() &&
                       (cell[pos] == ' ' || cell[pos] == '\t' || cell[pos] == '\r'))
                    ++pos;
                if (pos != cell.size()) throw std::invalid_argument(cell);
                cols[col].push_back(v);
            } catch (const std::exception&) {
                std::ostringstream os;
                os << path << ":" << lineno << ": column " << (col + 1)
                   << " is not a number: '" << cell << "'";
                throw ValidationError(os.str());
            }
            ++col;
        }
        if (col != ncols) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected " << ncols << " columns, got "
               << col;
            throw ValidationError(os.str());
        }
    }
    if (cols[0].empty()) throw ValidationError(path + ": no data rows");
    return cols;
}

}  // namespace rydkerr::csv
