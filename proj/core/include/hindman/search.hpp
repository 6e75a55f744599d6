#pragma once

// Brute-force witness search.
//
// Every engine walks candidate members in increasing order with
// depth-first backtracking and returns the lexicographically least
// solution. The Hindman-type engines additionally deepen over the largest
// exponent: they return the least solution among those whose members all
// have greatest base-t exponent <= e, for the smallest e that admits one.
// Running the engine with several jobs splits the first-member candidates
// across threads and keeps the least result, so outcomes do not depend on
// scheduling as long as the node cap is not reached.

#include "hindman/coloring.hpp"
#include "hindman/numerics.hpp"
#include "hindman/principles.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>

namespace hindman {

struct SearchBudget {
    /// Highest base-t exponent a member (or block element) may use.
    unsigned max_exponent = 20;
    /// Cap on visited nodes, summed over all threads.
    u64 max_nodes = 50'000'000;
    /// Requested solution cardinality (number of blocks for block sequences).
    unsigned target_size = 4;
};

struct SearchOptions {
    /// Check colors on partial solutions; when false only complete
    /// candidates are checked, with the full verifier.
    bool prune = true;
    unsigned jobs = 1;
    /// Receives "warn ..." lines (overflow pruning), if set.
    std::ostream* log = nullptr;
};

struct SearchStats {
    u64 nodes = 0;
    u64 prunes = 0;
    u64 overflow_prunes = 0;
    unsigned max_depth = 0;
    /// Exponent bound at which the search stopped.
    unsigned bound = 0;
};

struct SearchOutcome {
    enum class Status { Found, Exhausted, CapHit };

    Status status = Status::Exhausted;
    std::optional<Solution> solution;
    SearchStats stats;

    bool found() const noexcept { return status == Status::Found; }
};

std::string to_string(SearchOutcome::Status s);

/// Structured statistics: one "stat key=value" record per line.
void emit_stats(std::ostream& os, const SearchOutcome& outcome);

/// Least t-apart H, |H| = target_size, with f constant on FS^{spec}(H).
/// Throws DomainError if max_exponent > 62 or t < 2.
SearchOutcome search_apart_homogeneous(const Coloring& f, const LengthSpec& spec, u64 t, const SearchBudget& budget,
                                       const SearchOptions& options = {});

/// Same without apartness; members are bounded by 2^(max_exponent + 1).
SearchOutcome search_plain_homogeneous(const Coloring& f, const LengthSpec& spec, const SearchBudget& budget,
                                       const SearchOptions& options = {});

/// Least block sequence of target_size blocks over {0..max_exponent} with c
/// constant on its admissible unions. Blocks are ordered by their binary
/// encoding (sum of 2^s).
SearchOutcome search_block_sequence(const Coloring& c, const LengthSpec& spec, const SearchBudget& budget,
                                    const SearchOptions& options = {});

/// Least subset of the ground set of the given size on which c is constant
/// over increasing n-tuples. Exhausted if target exceeds the ground set.
SearchOutcome search_tuple_homogeneous(const Coloring& c, unsigned n, const FiniteSet& ground, unsigned target,
                                       const SearchOptions& options = {}, u64 max_nodes = 50'000'000);

/// Least subset of the ground set of the given size whose exactly large
/// subsets all share a color (the set coloring c is applied to them).
SearchOutcome search_exactly_large_homogeneous(const Coloring& c, const FiniteSet& ground, unsigned target,
                                               const SearchOptions& options = {}, u64 max_nodes = 50'000'000);

/// Least (H_1, ..., H_n), H_i a subset of carriers[i] of the given size,
/// with c constant over increasing selections, at least one of which must
/// exist. Lexicographic in the concatenation H_1, H_2, ...
SearchOutcome search_increasing_polarized(const Coloring& c, unsigned n, const std::vector<FiniteSet>& carriers,
                                          unsigned size_per_side, const SearchOptions& options = {},
                                          u64 max_nodes = 50'000'000);

/// Number of canonical colorings of a domain of the given size with at most
/// k colors (restricted growth strings), saturating at UINT64_MAX.
u64 canonical_coloring_count(u64 domain_size, unsigned k);

/// Calls visit(colors) once per color-permutation orbit of maps from a
/// domain of the given size to k colors. The representative lists colors in
/// order of first appearance. BudgetError if the orbit count exceeds cap.
void for_each_canonical_assignment(std::size_t domain_size, unsigned k, u64 cap,
                                   const std::function<bool(std::span<const unsigned>)>& visit);

/// Canonical table colorings over a window (see Coloring::table_domain).
void for_each_canonical_coloring(Arity arity, unsigned k, u64 lo, u64 hi, u64 cap,
                                 const std::function<bool(const Coloring&)>& visit,
                                 const std::optional<Coloring>& fallback = std::nullopt);

struct WitnessBudget {
    u64 max_n = 64;
    /// Cap on canonical colorings examined per N.
    u64 max_colorings = 1'000'000;
};

/// Least N such that every k-coloring of [1..N] admits a t-apart H within
/// [1..N] of the requested size whose admissible sums stay <= N and are
/// monochromatic. BudgetError when max_n or the coloring cap is exceeded.
u64 witness_number(const LengthSpec& spec, unsigned k, unsigned target_size, u64 t, const WitnessBudget& budget = {});

}  // namespace hindman
