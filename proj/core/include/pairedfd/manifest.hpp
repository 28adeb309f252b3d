#pragma once

// Experiment manifests: flat `key = value` lines, `#` starts a comment, and a
// comma-separated value lists several levels of that factor. The manifest
// expands to the cartesian product of all listed levels.
//
// Keys: n, S, rho, score_dist, K, delta, xi, ar_corr, ar_var, replicates,
// seed, preprocess, missing_frac, pve, bandwidth, method, alpha.

#include <iosfwd>
#include <string>
#include <vector>

#include "pairedfd/harness.hpp"
#include "pairedfd/simgen.hpp"

namespace pairedfd {

struct Manifest {
    std::vector<SimConfig> configs;  // one per cell, xi varying fastest
    std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    double alpha = 0.05;
};

/// Throws ManifestError naming the offending key.
Manifest parse_manifest(std::istream& in);
Manifest parse_manifest(const std::string& text);

/// Single-valued `key = value` document for one configuration.
std::string to_manifest(const SimConfig& config);

/// Parses a manifest that must expand to exactly one configuration.
SimConfig parse_sim_config(const std::string& text);

}  // namespace pairedfd
