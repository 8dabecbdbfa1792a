#include "mmw/phases.hpp"

#include <numbers>

namespace mmw {

double sample_phase(std::uint64_t seed, std::uint64_t sample_index, int beam) {
    std::uint64_t x = detail::mix64(seed);
    x = detail::mix64(x ^ (sample_index * 0xd1342543de82ef95ULL));
    x = detail::mix64(x ^ (static_cast<std::uint64_t>(beam) * 0xaf251af3b0f025b5ULL));
    const double u = static_cast<double>(x >> 11) * 0x1.0p-53;  // [0, 1)
    return 2.0 * std::numbers::pi * u;
}

std::vector<double> sample_phases(std::uint64_t seed, std::uint64_t sample_index, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b)
        out[static_cast<std::size_t>(b)] = sample_phase(seed, sample_index, b);
    return out;
}

} // namespace mmw
