#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mmw/scenario.hpp"

namespace mmw {

// Ordered key/value run record: resolved config echo, derived quantities,
// metrics, and a file manifest with checksums. The echo carries every
// default, so the report alone reproduces the run.
struct RunReport {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, long value);
    const std::string* find(const std::string& key) const;
    std::string to_text() const;
};

// Executes the scenario, writes all output files under cfg.out_dir, writes
// report.txt, and returns the report.
RunReport run_scenario(const ScenarioConfig& cfg);

} // namespace mmw
