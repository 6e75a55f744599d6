#pragma once

// Base-t digit arithmetic, finite sets, length specifications and the
// finite-sums / finite-unions enumerators every other module builds on.
//
// All values are 64-bit unsigned. Arithmetic that would leave that range
// throws OverflowError instead of wrapping.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hindman {

using u64 = std::uint64_t;

u64 checked_add(u64 a, u64 b);
u64 checked_mul(u64 a, u64 b);
/// base^exponent, throwing OverflowError past 2^64-1.
u64 checked_pow(u64 base, unsigned exponent);

struct Digit {
    unsigned exponent;
    u64 coefficient;

    friend bool operator==(const Digit&, const Digit&) = default;
};

/// The base-t positional representation of a positive integer, listed by
/// increasing exponent with nonzero coefficients only.
class DigitProfile {
public:
    /// Throws DomainError if n == 0 or t < 2.
    DigitProfile(u64 n, u64 t);

    u64 value() const noexcept { return value_; }
    u64 base() const noexcept { return base_; }
    std::span<const Digit> digits() const noexcept { return digits_; }

    /// Least exponent (lambda_t).
    unsigned least_exponent() const noexcept { return digits_.front().exponent; }
    /// Greatest exponent (mu_t).
    unsigned greatest_exponent() const noexcept { return digits_.back().exponent; }
    /// Coefficient of the least term. Base 3 is the case the color-doubling
    /// reduction relies on; other bases are provided for completeness.
    u64 least_coefficient() const noexcept { return digits_.front().coefficient; }
    bool is_single_term() const noexcept { return digits_.size() == 1; }

private:
    u64 value_;
    u64 base_;
    std::vector<Digit> digits_;
};

// Fast accessors that skip building the full profile.
unsigned least_exponent(u64 n, u64 t = 2);
unsigned greatest_exponent(u64 n, u64 t = 2);
u64 least_coefficient(u64 n, u64 t);

/// Sorted, duplicate-free set of non-negative integers.
class FiniteSet {
public:
    FiniteSet() = default;
    FiniteSet(std::initializer_list<u64> values);
    /// Sorts and removes duplicates.
    explicit FiniteSet(std::vector<u64> values);
    /// Takes ownership of an already strictly increasing list; DomainError otherwise.
    static FiniteSet from_sorted(std::vector<u64> values);

    std::span<const u64> elements() const noexcept { return elements_; }
    const std::vector<u64>& vector() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    u64 min() const;
    u64 max() const;
    bool contains(u64 v) const;
    u64 operator[](std::size_t i) const { return elements_[i]; }

    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }

    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
    friend auto operator<=>(const FiniteSet&, const FiniteSet&) = default;

private:
    std::vector<u64> elements_;
};

std::ostream& operator<<(std::ostream& os, const FiniteSet& s);
std::string to_string(const FiniteSet& s);

/// Which lengths of sums (or unions) are admissible.
class LengthSpec {
public:
    enum class Kind { AtMost, Exactly, ExplicitSet, ExactlyLarge, AllUpTo };

    static LengthSpec at_most(unsigned n);
    static LengthSpec exactly(unsigned n);
    static LengthSpec explicit_set(std::vector<unsigned> lengths);
    static LengthSpec exactly_large();
    /// Every length 1..bound: the finite truncation of unrestricted sums.
    static LengthSpec all_up_to(unsigned bound);

    /// Text forms: "<=n", "=n", "{a,b,...}", "!w", "all:n".
    static LengthSpec parse(std::string_view text);
    std::string to_string() const;

    Kind kind() const noexcept { return kind_; }
    /// n for AtMost/Exactly, the bound for AllUpTo, 0 otherwise.
    unsigned parameter() const noexcept { return parameter_; }
    std::span<const unsigned> lengths() const noexcept { return lengths_; }

    /// Whether a selection of j terms counts. Always false for ExactlyLarge,
    /// whose admissibility depends on the terms themselves.
    bool admits(unsigned j) const noexcept;
    /// Largest admissible length; nullopt for ExactlyLarge.
    std::optional<unsigned> max_length() const noexcept;

    friend bool operator==(const LengthSpec&, const LengthSpec&) = default;

private:
    LengthSpec(Kind kind, unsigned parameter, std::vector<unsigned> lengths);

    Kind kind_;
    unsigned parameter_;
    std::vector<unsigned> lengths_;
};

/// Exponents of the base-t expansion of n.
FiniteSet support_set(u64 n, u64 t);
/// Sum of t^s over s in S. DomainError if S is empty, OverflowError past 64 bits.
u64 encode_set(const FiniteSet& s, u64 t);

bool is_exactly_large(const FiniteSet& s);
bool is_exactly_large(std::span<const u64> sorted);

/// Visitor receives the selected terms (increasing) and their sum and
/// returns false to stop the enumeration.
using SumVisitor = std::function<bool(std::span<const u64> terms, u64 sum)>;

/// Walks every admissible selection of distinct elements of `ground`
/// (which must be strictly increasing). Selections are produced in
/// lexicographic order of their index sequences. Throws OverflowError if a
/// sum leaves the 64-bit range. Returns false iff the visitor stopped early.
bool for_each_sum(std::span<const u64> ground, const LengthSpec& spec, const SumVisitor& visit);

/// Walks exactly large subsets of a strictly increasing ground list,
/// ordered by their least element and then lexicographically.
bool for_each_exactly_large_subset(std::span<const u64> ground,
                                   const std::function<bool(std::span<const u64>)>& visit);

/// FS^{spec}(B) as a set of values.
FiniteSet enumerate_sums(const FiniteSet& ground, const LengthSpec& spec);

/// Calls visit(indices) for each k-combination of {0..n-1} in lexicographic
/// order; stops early when visit returns false.
bool for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(std::span<const std::size_t>)>& visit);

struct ApartCheck {
    bool apart = true;
    /// First adjacent pair (x, x') with mu_t(x) >= lambda_t(x').
    std::optional<std::pair<u64, u64>> violation;

    explicit operator bool() const noexcept { return apart; }
};

/// DomainError if members are not strictly increasing positive integers.
ApartCheck check_apart(std::span<const u64> members, u64 t);

/// A t-apart strictly increasing set of positive integers.
class ApartSet {
public:
    /// Throws DomainError if the members are not t-apart.
    ApartSet(u64 base, FiniteSet members);

    u64 base() const noexcept { return base_; }
    const FiniteSet& members() const noexcept { return members_; }

    friend bool operator==(const ApartSet&, const ApartSet&) = default;

private:
    u64 base_;
    FiniteSet members_;
};

/// Non-empty finite sets with max(X_i) < min(X_{i+1}).
class BlockSequence {
public:
    BlockSequence() = default;
    /// Throws DomainError on an empty block or meshed neighbours.
    explicit BlockSequence(std::vector<FiniteSet> blocks);

    const std::vector<FiniteSet>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }

    friend bool operator==(const BlockSequence&, const BlockSequence&) = default;

private:
    std::vector<FiniteSet> blocks_;
};

/// Unions of j distinct blocks for each admissible j, grouped by j and
/// lexicographic in block indices. DomainError for ExactlyLarge.
std::vector<FiniteSet> enumerate_unions(const BlockSequence& blocks, const LengthSpec& spec);

}  // namespace hindman
