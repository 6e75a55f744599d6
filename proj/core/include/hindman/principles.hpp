#pragma once

// Principle descriptors, solution shapes and the validity verifiers.
//
// Verifiers stop at the first clash and always report the two objects
// whose colors disagree. A check with nothing to check (no admissible sum,
// no increasing selection) is reported as Vacuous, never as Valid.

#include "hindman/coloring.hpp"
#include "hindman/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hindman {

enum class Family {
    HT,            ///< finite sums of admissible lengths monochromatic
    FUT,           ///< finite unions of a block sequence monochromatic
    RT,            ///< increasing n-tuples monochromatic
    IPT,           ///< increasing polarized Ramsey
    IPHT,          ///< increasing polarized Hindman
    PHT,           ///< polarized Hindman (all selections)
    HTExistsPair,  ///< some a < b with sums of length a or b monochromatic
    RTLarge,       ///< exactly large subsets monochromatic
};

std::string to_string(Family f);
Family parse_family(std::string_view text);

struct PrincipleId {
    Family family = Family::HT;
    /// Admissible lengths (HT, FUT).
    LengthSpec lengths = LengthSpec::at_most(1);
    /// Dimension (RT, IPT, IPHT, PHT).
    unsigned dimension = 1;
    unsigned colors = 2;
    /// Base of the apartness condition on solutions, if imposed.
    std::optional<u64> apart;

    static PrincipleId ht(LengthSpec spec, unsigned k, std::optional<u64> apart = std::nullopt);
    static PrincipleId fut(LengthSpec spec, unsigned k);
    static PrincipleId rt(unsigned n, unsigned k);
    static PrincipleId ipt(unsigned n, unsigned k);
    static PrincipleId ipht(unsigned n, std::optional<u64> apart = std::nullopt);
    static PrincipleId pht(unsigned n);
    static PrincipleId ht_exists_pair(std::optional<u64> apart = std::nullopt);
    static PrincipleId rt_large(unsigned k);

    /// Arity of the colorings this principle takes as instances.
    Arity instance_arity() const;
    std::string to_string() const;

    friend bool operator==(const PrincipleId&, const PrincipleId&) = default;
};

struct Solution {
    enum class Shape { Plain, Apart, Blocks, Polarized };

    Shape shape = Shape::Plain;
    /// One set (Plain, Apart), the blocks (Blocks) or H_1..H_n (Polarized).
    std::vector<FiniteSet> parts;
    /// Base the Apart shape was produced for.
    std::optional<u64> base;
    /// Lengths chosen by an existential principle.
    std::optional<LengthSpec> lengths;
    std::optional<unsigned> claimed_color;

    static Solution plain(FiniteSet h);
    static Solution apart(const ApartSet& h);
    static Solution blocks(const BlockSequence& b);
    static Solution polarized(std::vector<FiniteSet> hs);

    /// The single set of a Plain or Apart solution; DomainError otherwise.
    const FiniteSet& set() const;
    BlockSequence block_sequence() const;

    friend bool operator==(const Solution&, const Solution&) = default;
};

std::string to_string(Solution::Shape s);
std::string render(const Solution& s);

/// The two objects whose colors disagree, or an apartness violation.
struct Clash {
    std::string kind;  ///< "sum", "union", "tuple", "selection", "apartness", "exactly-large set"
    std::vector<u64> first;
    std::vector<u64> second;
    std::optional<u64> first_value;  ///< the sum, for sum-like objects
    std::optional<u64> second_value;
    std::optional<unsigned> first_color;
    std::optional<unsigned> second_color;
};

struct VerificationReport {
    enum class Status { Valid, Invalid, Vacuous };

    Status status = Status::Vacuous;
    std::optional<unsigned> color;
    std::optional<Clash> witness;

    bool valid() const noexcept { return status == Status::Valid; }
    std::string to_string() const;
};

/// f constant on FS^{spec}(H), and H apart when a base is given.
VerificationReport verify_ht(const Coloring& f, const LengthSpec& spec, const FiniteSet& h,
                             std::optional<u64> apart_base = std::nullopt);

/// c constant on the admissible unions of the block sequence.
VerificationReport verify_fut(const Coloring& c, const LengthSpec& spec, const BlockSequence& blocks);

/// c constant on increasing n-tuples from H. DomainError if |H| < n.
VerificationReport verify_rt(const Coloring& c, unsigned n, const FiniteSet& h);

/// c constant on exactly large subsets of H.
VerificationReport verify_rt_large(const Coloring& c, const FiniteSet& h);

/// c constant on increasing selections x_1 < ... < x_n with x_i in H_i.
VerificationReport verify_ipt(const Coloring& c, unsigned n, const std::vector<FiniteSet>& hs);

/// f(x_1 + ... + x_n) constant on all (or all increasing) selections; with
/// an apartness base the sorted union must be apart (DomainError if the
/// sets overlap).
VerificationReport verify_polarized_ht(const Coloring& f, unsigned n, const std::vector<FiniteSet>& hs,
                                       bool increasing, std::optional<u64> apart_base = std::nullopt);

/// Dispatches on the principle family. DomainError when the coloring's
/// arity or the solution's shape does not fit the principle.
VerificationReport verify(const PrincipleId& p, const Coloring& instance, const Solution& solution);

}  // namespace hindman
