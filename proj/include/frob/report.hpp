#pragma once

#include <string>
#include <vector>

namespace frob {

// Deterministic formatting: round-trip-exact reals, negative zero normalized,
// so byte-identical reruns are possible.
std::string format_real(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace frob
