#pragma once

#include <cstdint>
#include <string>

#include "mmw/beams.hpp"
#include "mmw/geometry.hpp"
#include "mmw/kernels.hpp"

namespace mmw {

enum class Method { Exact, Mc, Both };

// Fully resolved scenario description. Every field has a documented default;
// parsing rejects unknown sections and keys.
struct ScenarioConfig {
    std::string name = "scenario";

    // [geometry]
    double width = 0;
    double length = 0;
    double wavelength = 0;
    int modes = 128;
    PropagationLaw law = PropagationLaw::Paraxial;

    // [grid]
    int grid_samples = 1024;
    int correlation_samples = 0;  // 0: 256 for order 2, 128 for order 3

    // [input]
    StateKind state = StateKind::FockOnePerBeam;
    int symmetric_beams = 0;                 // used when no positions given
    std::vector<double> positions;           // absolute [m]
    std::vector<double> positions_relative;  // offsets from center, units of D
    double sigma = 0;                        // 0: derived from fwhm
    double fwhm = 5e-6;
    std::vector<double> beam_phases;
    std::vector<double> beam_amplitudes;

    // [computation]
    int order = 0;  // 0: beam count
    Method method = Method::Both;
    long samples = 10000;
    std::uint64_t seed = 12345;
    kern::Backend kernels = kern::Backend::Auto;

    // [scan]
    bool scan_enabled = false;
    double scan_zmax = 0;  // 0: z0
    int scan_steps = 96;

    // [outputs]
    std::string out_dir = "out";
    bool write_pgm = true;
    bool write_slices = false;
    bool carpet = false;
    double carpet_zmax = 0;  // 0: 2 zT
    int carpet_rows = 193;
    std::vector<double> snapshots;  // z planes for order-2 map snapshots
    bool normalized_maps = false;

    WaveguideGeometry geometry() const;
    InputConfig input() const;
    double effective_sigma() const;
    int effective_order() const;
    int effective_corr_samples() const;
};

// Lengths are meters with an optional SI suffix: m, cm, mm, um, nm, pm.
double parse_length(const std::string& text);

ScenarioConfig parse_config_file(const std::string& path);
void apply_config_text(ScenarioConfig& cfg, const std::string& text,
                       const std::string& origin);
// dotted_key is "section.key" as in the config file.
void apply_override(ScenarioConfig& cfg, const std::string& dotted_key,
                    const std::string& value);

struct PresetInfo {
    std::string name;
    std::string description;
};

std::vector<PresetInfo> presets();
ScenarioConfig expand_preset(const std::string& name);

} // namespace mmw
