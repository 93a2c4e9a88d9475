// Property suite for the measure axioms: every property is checked exactly on
// seeded random instances, plus any polyhedra supplied by the caller.

#pragma once

#include "ratvol/io.hpp"
#include "ratvol/polyhedron.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ratvol::verify {

/// λ_0(P), ..., λ_n(P). The suite evaluates the measure only through this.
using LambdaVector = std::function<std::vector<Rat>(const Polyhedron&)>;

struct Options {
    std::uint64_t seed = 42;
    std::size_t trials = 200;
    /// Extra instances, checked by every single-polyhedron property and, in
    /// consecutive same-dimension pairs, by valuation.
    std::vector<Polyhedron> corpus;
    /// Farey-refinement chains per instance for triangulation independence.
    std::size_t chains = 3;
    /// Replacement λ for negative controls; empty means ratvol::lambda_vector.
    LambdaVector lambda;
    /// Property names to run; empty runs all. Unknown names throw std::invalid_argument.
    std::vector<std::string> only;
};

struct PropertyReport {
    std::string name;
    std::size_t executed = 0;
    std::size_t failed = 0;
    io::Json counterexample;  ///< first failure, null if none
    double seconds = 0;       ///< wall time; left out of to_json so reports stay reproducible
};

struct Report {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<PropertyReport> properties;

    /// True when no property executed a single instance.
    bool vacuous() const;
    bool passed() const;
    io::Json to_json() const;
};

/// invariance, valuation, conservativity, pyramid, normalization, lebesgue,
/// proportionality, triangulation_independence, dimensional_part.
const std::vector<std::string>& property_names();

/// Runs every property with `trials` random instances each. Each instance
/// draws from its own stream derived from (seed, property, index), so a report
/// does not depend on evaluation order.
Report run(const Options& options);

/// λ plus the first coordinate of the least vertex added to λ_0: translations
/// change it, so invariance fails. For negative controls.
LambdaVector corrupted_lambda();

}  // namespace ratvol::verify
