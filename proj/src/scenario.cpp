#include "mmw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mmw/error.hpp"

namespace mmw {

WaveguideGeometry ScenarioConfig::geometry() const {
    WaveguideGeometry g;
    g.width = width;
    g.length = length;
    g.wavelength = wavelength;
    g.mode_count = modes;
    g.law = law;
    return g;
}

double ScenarioConfig::effective_sigma() const {
    return sigma > 0 ? sigma : sigma_from_fwhm(fwhm);
}

int ScenarioConfig::effective_order() const {
    if (order > 0) return order;
    const int n = !positions.empty() ? static_cast<int>(positions.size())
                 : !positions_relative.empty() ? static_cast<int>(positions_relative.size())
                 : symmetric_beams > 0 ? symmetric_beams
                                       : 1;
    return std::max(2, n);
}

int ScenarioConfig::effective_corr_samples() const {
    if (correlation_samples > 0) return correlation_samples;
    return effective_order() >= 3 ? 128 : 256;
}

InputConfig ScenarioConfig::input() const {
    std::vector<double> centers;
    if (!positions.empty()) {
        centers = positions;
    } else if (!positions_relative.empty()) {
        for (double r : positions_relative) centers.push_back(width * (0.5 + r));
    } else {
        const int n = symmetric_beams > 0 ? symmetric_beams : 1;
        centers = symmetric_positions(n, width);
    }
    std::sort(centers.begin(), centers.end());

    const std::size_t n = centers.size();
    if (!beam_phases.empty() && beam_phases.size() != n)
        throw_config("input.phases: expected " + std::to_string(n) + " values");
    if (!beam_amplitudes.empty() && beam_amplitudes.size() != n)
        throw_config("input.amplitudes: expected " + std::to_string(n) + " values");

    InputConfig in;
    in.state_kind = state;
    const double s = effective_sigma();
    for (std::size_t i = 0; i < n; ++i) {
        BeamSpec b;
        b.center = centers[i];
        b.sigma = s;
        b.relative_phase = beam_phases.empty() ? 0.0 : beam_phases[i];
        b.relative_amplitude = beam_amplitudes.empty() ? 1.0 : beam_amplitudes[i];
        in.beams.push_back(b);
    }
    return in;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double v = 0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw_config(what + ": cannot parse number '" + text + "'");
    return v;
}

long parse_long(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw_config(what + ": cannot parse integer '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw_config(what + ": cannot parse unsigned integer '" + text + "'");
    return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw_config(what + ": cannot parse boolean '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

double parse_length(const std::string& text) {
    const std::string t = trim(text);
    static const std::pair<const char*, double> suffixes[] = {
        {"pm", 1e-12}, {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0},
    };
    for (const auto& [suf, scale] : suffixes) {
        const std::size_t sl = std::char_traits<char>::length(suf);
        if (t.size() > sl && t.compare(t.size() - sl, sl, suf) == 0) {
            const std::string num = trim(t.substr(0, t.size() - sl));
            // reject e.g. "5n" + "m" mismatches by parsing strictly
            return parse_number(num, "length") * scale;
        }
    }
    return parse_number(t, "length");
}

namespace {

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"scenario.name", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.name = trim(v);
         }},
        {"geometry.width", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.width = parse_length(v);
             if (!(c.width > 0)) throw_config(k + ": must be positive");
         }},
        {"geometry.length", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.length = parse_length(v);
             if (!(c.length > 0)) throw_config(k + ": must be positive");
         }},
        {"geometry.wavelength", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.wavelength = parse_length(v);
             if (!(c.wavelength > 0)) throw_config(k + ": must be positive");
         }},
        {"geometry.modes", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.modes = static_cast<int>(parse_long(v, k));
         }},
        {"geometry.propagation", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             const std::string t = trim(v);
             if (t == "paraxial") c.law = PropagationLaw::Paraxial;
             else if (t == "exact") c.law = PropagationLaw::ExactBeta;
             else throw_config(k + ": expected 'paraxial' or 'exact', got '" + t + "'");
         }},
        {"grid.samples", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.grid_samples = static_cast<int>(parse_long(v, k));
         }},
        {"grid.correlation_samples", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.correlation_samples = static_cast<int>(parse_long(v, k));
         }},
        {"input.state", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             const std::string t = trim(v);
             if (t == "fock") c.state = StateKind::FockOnePerBeam;
             else if (t == "thermal") c.state = StateKind::Thermal;
             else if (t == "coherent") c.state = StateKind::FixedPhaseCoherent;
             else throw_config(k + ": expected fock|thermal|coherent, got '" + t + "'");
         }},
        {"input.symmetric_beams", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.symmetric_beams = static_cast<int>(parse_long(v, k));
         }},
        {"input.positions", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.positions.clear();
             for (const std::string& item : split_list(v)) c.positions.push_back(parse_length(item));
         }},
        {"input.positions_relative", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.positions_relative.clear();
             for (const std::string& item : split_list(v))
                 c.positions_relative.push_back(parse_number(item, k));
         }},
        {"input.sigma", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.sigma = parse_length(v);
         }},
        {"input.fwhm", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.fwhm = parse_length(v);
         }},
        {"input.phases", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.beam_phases.clear();
             for (const std::string& item : split_list(v))
                 c.beam_phases.push_back(parse_number(item, k));
         }},
        {"input.amplitudes", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.beam_amplitudes.clear();
             for (const std::string& item : split_list(v))
                 c.beam_amplitudes.push_back(parse_number(item, k));
         }},
        {"computation.order", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.order = static_cast<int>(parse_long(v, k));
         }},
        {"computation.method", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             const std::string t = trim(v);
             if (t == "exact") c.method = Method::Exact;
             else if (t == "mc") c.method = Method::Mc;
             else if (t == "both") c.method = Method::Both;
             else throw_config(k + ": expected exact|mc|both, got '" + t + "'");
         }},
        {"computation.samples", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.samples = parse_long(v, k);
         }},
        {"computation.seed", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.seed = parse_u64(v, k);
         }},
        {"computation.kernels", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             const std::string t = trim(v);
             if (t == "auto") c.kernels = kern::Backend::Auto;
             else if (t == "scalar") c.kernels = kern::Backend::Scalar;
             else if (t == "avx2") c.kernels = kern::Backend::Avx2;
             else throw_config(k + ": expected auto|scalar|avx2, got '" + t + "'");
         }},
        {"scan.enabled", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.scan_enabled = parse_bool(v, k);
         }},
        {"scan.zmax", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.scan_zmax = trim(v) == "auto" ? 0.0 : parse_length(v);
         }},
        {"scan.steps", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.scan_steps = static_cast<int>(parse_long(v, k));
         }},
        {"outputs.directory", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.out_dir = trim(v);
         }},
        {"outputs.pgm", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.write_pgm = parse_bool(v, k);
         }},
        {"outputs.slices", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.write_slices = parse_bool(v, k);
         }},
        {"outputs.carpet", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.carpet = parse_bool(v, k);
         }},
        {"outputs.carpet_zmax", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.carpet_zmax = trim(v) == "auto" ? 0.0 : parse_length(v);
         }},
        {"outputs.carpet_rows", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.carpet_rows = static_cast<int>(parse_long(v, k));
         }},
        {"outputs.snapshots", [](ScenarioConfig& c, const std::string& v, const std::string&) {
             c.snapshots.clear();
             for (const std::string& item : split_list(v)) c.snapshots.push_back(parse_length(item));
         }},
        {"outputs.normalized", [](ScenarioConfig& c, const std::string& v, const std::string& k) {
             c.normalized_maps = parse_bool(v, k);
         }},
    };
    return table;
}

} // namespace

void apply_override(ScenarioConfig& cfg, const std::string& dotted_key,
                    const std::string& value) {
    const auto it = setters().find(trim(dotted_key));
    if (it == setters().end()) throw_config("unknown configuration key '" + dotted_key + "'");
    it->second(cfg, value, dotted_key);
}

void apply_config_text(ScenarioConfig& cfg, const std::string& text,
                       const std::string& origin) {
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw_config(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw_config(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw_config(origin + ":" + std::to_string(lineno) + ": key outside any [section]");
        try {
            apply_override(cfg, section + "." + key, value);
        } catch (const error& e) {
            throw error(e.kind(),
                        origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_config("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    ScenarioConfig cfg;
    apply_config_text(cfg, ss.str(), path);
    return cfg;
}

namespace {

constexpr double kPresetLength = 4.85e-2;
constexpr double kPresetLambda = 532e-9;

ScenarioConfig preset_base() {
    ScenarioConfig c;
    c.length = kPresetLength;
    c.wavelength = kPresetLambda;
    c.modes = 128;
    c.grid_samples = 1024;
    c.state = StateKind::FockOnePerBeam;
    c.method = Method::Both;
    c.samples = 10000;
    c.seed = 12345;
    return c;
}

// Preset planes are fixed by exact width ratios against the imaging width
// D0 = sqrt(lambda L / 8); splitter quality is very sensitive to rounding
// the width, so the ratios are kept exact and the rounded value is derived.
double preset_width(double ratio_sq) {
    return imaging_width(kPresetLength, kPresetLambda) / std::sqrt(ratio_sq);
}

} // namespace

std::vector<PresetInfo> presets() {
    return {
        {"fig1", "two-beam Talbot carpet (D = D0, beams at +-D/3) with order-2 snapshots and a recurrence scan"},
        {"fig2a", "imaging plane, D = D0 (about 57 um): separated output, thermal ratio 1"},
        {"fig2b", "equal two-way splitter, D = D0/sqrt(3/4) (about 66 um): HOM null, thermal ratio 3"},
        {"fig2c", "unequal two-way splitter, D = D0/sqrt(5/8) (about 72 um), beams at +-D/4: thermal ratio 5/3"},
        {"fig4a", "equal three-way splitter, D = D0/sqrt(2/3) (about 70 um), three beams"},
        {"fig4b", "unequal three-way splitter, D = D0/sqrt(7/12) (about 74 um), three beams"},
    };
}

ScenarioConfig expand_preset(const std::string& name) {
    ScenarioConfig c = preset_base();
    c.name = name;
    if (name == "fig1") {
        c.width = preset_width(1.0);
        c.positions_relative = {-1.0 / 3.0, 1.0 / 3.0};
        c.method = Method::Exact;
        c.carpet = true;
        c.scan_enabled = true;
        const double zt = revival_distances(c.geometry()).talbot;
        c.snapshots = {0.0, 0.5 * zt, zt, 1.5 * zt, 2.0 * zt};
        return c;
    }
    if (name == "fig2a") {
        c.width = preset_width(1.0);
        c.symmetric_beams = 2;
        return c;
    }
    if (name == "fig2b") {
        c.width = preset_width(3.0 / 4.0);
        c.symmetric_beams = 2;
        return c;
    }
    if (name == "fig2c") {
        c.width = preset_width(5.0 / 8.0);
        c.symmetric_beams = 2;
        return c;
    }
    if (name == "fig4a") {
        c.width = preset_width(2.0 / 3.0);
        c.symmetric_beams = 3;
        return c;
    }
    if (name == "fig4b") {
        c.width = preset_width(7.0 / 12.0);
        c.symmetric_beams = 3;
        return c;
    }
    throw_config("unknown preset '" + name + "'");
}

} // namespace mmw
