#include "logwave/csv.hpp"

#include "logwave/errors.hpp"

#include <cstdio>

namespace logwave::csv {

std::string format(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Writer::Writer(const std::string& path, const std::vector<std::string>& header)
    : out_(path), n_cols_(header.size()) {
    if (!out_) throw DomainError("csv::Writer: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void Writer::row(const std::vector<double>& values) {
    if (values.size() != n_cols_) throw DomainError("csv::Writer: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format(values[i]);
    }
    out_ << '\n';
}

void Writer::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_) throw DomainError("csv::Writer: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

} // namespace logwave::csv
