#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace logwave::csv {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format(double x);

/// Minimal CSV emitter with a fixed header and 17-significant-digit floats,
/// so repeated runs produce byte-identical payloads.
class Writer {
public:
    Writer(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

} // namespace logwave::csv
