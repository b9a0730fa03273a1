#pragma once

// Named verification suites run by `green-teich verify`. Each suite returns a
// list of check reports with a common shape
//
//   {check, samples, worst_case, details, pass}
//
// and is a pure function of its options and the run configuration, so a
// rerun with the same seed reproduces the payload byte for byte.

#include <optional>
#include <string>
#include <vector>

#include "green_teich/config.hpp"
#include "green_teich/text_io.hpp"

namespace gt {

struct SuiteOptions {
    /// Sample count override; each suite has its own default.
    std::optional<int> n;
    /// theorem2 only: "disc", "ball", or empty for both.
    std::string domain;
    /// corollary5 only: torus-constant, torus-alternating, disc-teichmuller,
    /// disc-angular4, or empty for all four.
    std::string case_name;
};

struct SuiteResult {
    std::string suite;
    Json checks = Json::array();
    bool pass = true;
    /// check name -> that check's worst case
    Json worst_case = Json::object();
};

const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite in order for "all". Throws ConfigError for
/// unknown suite, domain or case names.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts, const RunConfig& cfg);

/// The two halves of the lemma1 suite: disc-functional estimates against the
/// ball oracle, and exactness with geodesic witnesses on the disc.
SuiteResult run_lemma1_ball(int n, const RunConfig& cfg);
SuiteResult run_poletskii_disc(int n, const RunConfig& cfg);

/// Uniform random point of the Euclidean ball of radius r in C^n.
CVec random_ball_point(int n, double r, std::uint64_t seed, std::uint64_t stream);

} // namespace gt
