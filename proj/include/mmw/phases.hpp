#pragma once

#include <cstdint>
#include <vector>

namespace mmw {

// Counter-based phase sampler: phase(seed, sample, beam) is a pure function,
// so samples can be evaluated in any order (or in parallel) and still
// reproduce bit-identically.
namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

// Uniform phase on [0, 2 pi) for one (seed, sample, beam) triple.
double sample_phase(std::uint64_t seed, std::uint64_t sample_index, int beam);

// All n beam phases of one sample.
std::vector<double> sample_phases(std::uint64_t seed, std::uint64_t sample_index, int n);

} // namespace mmw
