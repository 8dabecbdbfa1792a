#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mmw::io {

// Shortest deterministic round-trip formatting (to_chars, precision 17).
std::string format_double(double v);

// CSV matrix with the two-line header "# axis units: m" and "# z = ...".
// Absent cells (mask false) are written as nan.
void write_matrix_csv(const std::filesystem::path& path, const double* data,
                      int rows, int cols, const std::string& z_line,
                      const std::vector<bool>* present = nullptr);

struct CsvMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  // absent cells read back as NaN
};

CsvMatrix read_matrix_csv(const std::filesystem::path& path);

// 8-bit binary PGM, linear gray mapping, max-normalized.
void write_pgm(const std::filesystem::path& path, const double* data, int rows, int cols);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

} // namespace mmw::io
