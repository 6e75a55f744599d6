#pragma once

// Forward-solve-backward-verify sweeps over reduction steps.

#include "hindman/coloring.hpp"
#include "hindman/principles.hpp"
#include "hindman/reductions.hpp"
#include "hindman/search.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hindman {

struct SolveConfig {
    SearchBudget budget;
    SearchOptions options;
    /// Per-side size for polarized principles.
    unsigned side_size = 2;
    /// Ground set for RT and exactly large Ramsey; default {2^0, ..., 2^max_exponent}.
    std::optional<FiniteSet> ground;
    /// Carriers for IPT (default {0..max_exponent} for every side) and IPHT
    /// (default default_carriers()).
    std::vector<FiniteSet> carriers;
};

/// Runs the search engine matching the principle. DomainError for
/// principles without an engine (PHT).
SearchOutcome solve(const PrincipleId& p, const Coloring& instance, const SolveConfig& config);

struct CertifyFailure {
    std::size_t index = 0;
    Coloring instance;
    std::optional<Solution> target_solution;
    std::optional<Solution> pulled_back;
    std::string reason;
};

struct CertifyReport {
    std::size_t instances = 0;
    std::size_t solved = 0;    ///< target searches that found a solution
    std::size_t passed = 0;    ///< pulled-back solutions verified valid
    std::size_t vacuous = 0;   ///< pulled-back solutions with nothing to check
    std::size_t failed = 0;
    std::size_t unsolved = 0;  ///< target searches exhausted or capped
    /// Found target solutions too short to pull back (ShortSolutionError,
    /// InterleaveError, ChunkError).
    std::size_t too_short = 0;
    std::optional<CertifyFailure> first_failure;

    bool ok() const noexcept { return failed == 0; }
    /// No pulled-back solution was actually checked.
    bool vacuous_run() const noexcept { return passed == 0 && failed == 0; }
};

CertifyReport certify(const ReductionStep& step, std::span<const Coloring> instances, const SolveConfig& config);

/// Deterministic list of catalog colorings: structured rules first, then
/// hash colorings with increasing seeds.
std::vector<Coloring> rule_catalog(Arity arity, unsigned k, std::size_t count);

}  // namespace hindman
