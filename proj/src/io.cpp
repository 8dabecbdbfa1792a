#include "mmw/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "mmw/error.hpp"

namespace mmw::io {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_matrix_csv(const std::filesystem::path& path, const double* data,
                      int rows, int cols, const std::string& z_line,
                      const std::vector<bool>* present) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_io("cannot open '" + path.string() + "' for writing");
    out << "# axis units: m\n";
    out << "# z = " << z_line << "\n";
    std::string line;
    for (int r = 0; r < rows; ++r) {
        line.clear();
        for (int c = 0; c < cols; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * cols + c;
            if (c) line += ',';
            if (present && !(*present)[i]) line += "nan";
            else line += format_double(data[i]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw_io("write failed for '" + path.string() + "'");
}

CsvMatrix read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open '" + path.string() + "' for reading");
    CsvMatrix m;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        int cols = 0;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string cell = line.substr(pos, comma - pos);
            double v = std::numeric_limits<double>::quiet_NaN();
            if (cell != "nan") {
                const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (res.ec != std::errc())
                    throw_io("bad numeric cell '" + cell + "' in " + path.string());
            }
            m.values.push_back(v);
            ++cols;
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (m.rows == 0) m.cols = cols;
        else if (cols != m.cols) throw_io("ragged csv in " + path.string());
        ++m.rows;
    }
    return m;
}

void write_pgm(const std::filesystem::path& path, const double* data, int rows, int cols) {
    double peak = 0;
    const std::size_t n = static_cast<std::size_t>(rows) * cols;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, data[i]);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_io("cannot open '" + path.string() + "' for writing");
    out << "P5\n" << cols << " " << rows << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double v = data[static_cast<std::size_t>(r) * cols + c];
            const double g = peak > 0 ? v / peak : 0.0;
            row[static_cast<std::size_t>(c)] =
                static_cast<unsigned char>(std::lround(255.0 * std::clamp(g, 0.0, 1.0)));
        }
        out.write(reinterpret_cast<const char*>(row.data()), cols);
    }
    if (!out) throw_io("write failed for '" + path.string() + "'");
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open '" + path.string() + "' for checksum");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

} // namespace mmw::io
