#pragma once

#include "qtweezer/config.hpp"
#include "qtweezer/model.hpp"

#include <string>
#include <vector>

namespace qtweezer::testing {

inline std::string baseline_path() { return std::string(QTWEEZER_SOURCE_DIR) + "/configs/baseline.conf"; }

inline Config baseline(const std::vector<std::string>& overrides = {}) {
    return load_config_file(baseline_path(), overrides);
}

// Prepared once per test binary; the baseline basis and geometry take a few milliseconds.
inline const Setup& baseline_setup() {
    static const Setup s = prepare(baseline());
    return s;
}

inline double hz(const Setup& s, double hertz_x2pi) {
    return s.model.units.frequency_to_internal(2.0 * constants::pi * hertz_x2pi);
}

} // namespace qtweezer::testing
