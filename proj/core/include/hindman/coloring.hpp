#pragma once

// Finite colorings of naturals, increasing tuples and finite sets.
//
// A Coloring is either a Rule from a closed catalog (total on the 64-bit
// range, possibly wrapping other colorings) or a Table over a finite window
// with an optional fallback rule. Colorings are immutable values that share
// their body, so copying is cheap and concurrent evaluation is safe.

#include "hindman/numerics.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hindman {

struct Arity {
    enum class Kind { Nat, Tuple, Set };

    Kind kind = Kind::Nat;
    /// Tuple length; 1 for Nat, 0 for Set.
    unsigned size = 1;

    static Arity nat() { return {Kind::Nat, 1}; }
    static Arity tuple(unsigned n);
    static Arity pair() { return tuple(2); }
    static Arity triple() { return tuple(3); }
    static Arity set() { return {Kind::Set, 0}; }

    /// "nat", "pair", "triple", "tuple:N", "set".
    static Arity parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const Arity&, const Arity&) = default;
};

/// An injective function on the positive integers drawn from a small
/// catalog, with a closed-form description of its range.
class Injection {
public:
    enum class Kind { Identity, Shift, Scale, Patch };

    static Injection identity();
    /// y -> y + c.
    static Injection shift(u64 c);
    /// y -> a * y, a >= 1.
    static Injection scale(u64 a);
    /// `base` except that `arg` maps to `value`. DomainError unless
    /// `value` is outside the range of `base` (or already base(arg)).
    static Injection patch(u64 arg, u64 value, Injection base);

    /// Text forms: "identity", "shift c", "scale a", "patch arg value <base>".
    static Injection parse(std::string_view text);
    std::string expression() const;

    Kind kind() const noexcept { return kind_; }

    /// f(y) for y >= 1. OverflowError past 64 bits.
    u64 operator()(u64 y) const;
    /// The unique y with f(y) = x, computed from the closed form.
    std::optional<u64> preimage(u64 x) const;
    /// Ground-truth membership of x in the range of f.
    bool in_range(u64 x) const { return preimage(x).has_value(); }
    /// Whether f(y) = x for some 1 <= y < bound, by direct evaluation.
    bool attains_below(u64 x, u64 bound) const;

    friend bool operator==(const Injection& a, const Injection& b) { return a.expression() == b.expression(); }

private:
    friend class InjectionParser;

    Kind kind_ = Kind::Identity;
    u64 p_ = 0;
    u64 q_ = 0;
    std::shared_ptr<const Injection> base_;
};

class ColoringNode;

/// Which base-t digit quantity a digit rule reads.
enum class DigitQuantity { Least, Greatest, LeastCoefficient };

class Coloring {
public:
    Arity arity() const noexcept { return arity_; }
    unsigned colors() const noexcept { return colors_; }

    /// Color in [0, colors()). WindowError for tables outside their window
    /// (without fallback), OverflowError if a rule's internal sum overflows.
    unsigned operator()(std::span<const u64> args) const;
    unsigned at(u64 n) const { return (*this)(std::span<const u64>(&n, 1)); }
    unsigned of(const FiniteSet& s) const { return (*this)(s.elements()); }

    /// Rule expression, with nested tables written as $0, $1, ... in the
    /// order returned by tables(). A top-level table is written as "$0".
    std::string expression() const;
    /// Tables reachable from this coloring in expression order.
    std::vector<Coloring> tables() const;
    bool is_table() const noexcept;

    // --- Rule catalog -----------------------------------------------------

    static Coloring constant(Arity arity, unsigned k, unsigned color);
    /// (sum of the arguments) mod map.size(), looked up in map.
    static Coloring sum_mod(Arity arity, unsigned k, std::vector<unsigned> map);
    /// Cardinality / least / greatest element mod map.size() (Set or Tuple).
    static Coloring size_mod(Arity arity, unsigned k, std::vector<unsigned> map);
    static Coloring min_mod(Arity arity, unsigned k, std::vector<unsigned> map);
    static Coloring max_mod(Arity arity, unsigned k, std::vector<unsigned> map);
    /// A base-t digit quantity of n, mod map.size(), looked up in map.
    static Coloring digit(unsigned k, u64 base, DigitQuantity which, std::vector<unsigned> map);
    /// Number of binary ones of n, mod map.size(), looked up in map.
    static Coloring popcount(unsigned k, std::vector<unsigned> map);
    /// Deterministic pseudo-random coloring keyed by seed.
    static Coloring hash(Arity arity, unsigned k, u64 seed);

    /// Parity of the number of important binary digits of n relative to f:
    /// with n = 2^{n_0} + ... + 2^{n_r} and n_{-1} = 0, index j is
    /// important when f(y) < n_0 for some y >= 1 in [n_{j-1}, n_j).
    static Coloring important_parity(Injection f);

    /// n -> inner(set of base-t exponents of n).
    static Coloring support_pullback(u64 t, Coloring inner);
    /// S -> inner(sum of t^s over s in S); the empty set gets color 0.
    static Coloring encode_pullback(u64 t, Coloring inner);
    /// Tuple or set -> inner(sum of its elements).
    static Coloring sum_pullback(Arity arity, Coloring inner);
    /// n -> inner(n) if the least base-3 coefficient of n is 1,
    /// k + inner(n) if it is 2; 2k colors.
    static Coloring doubling(Coloring inner);
    /// n -> 0 if n is a power of two, else inner(lambda_2(n), mu_2(n)).
    static Coloring lambda_mu(Coloring inner);
    /// (x1, x2, x3) -> 4 f(x1) + 2 f(x1 + x2) + f(x1 + x2 + x3); 8 colors.
    static Coloring prefix_sums(Coloring inner);

    // --- Tables -----------------------------------------------------------

    /// Domain points of a table window in canonical order: Nat values
    /// lo..hi; increasing tuples over [lo, hi] lexicographically; non-empty
    /// subsets of [lo, hi] by increasing bitmask.
    static std::vector<std::vector<u64>> table_domain(Arity arity, u64 lo, u64 hi);
    /// colors[i] is the color of table_domain(arity, lo, hi)[i].
    static Coloring table(Arity arity, unsigned k, u64 lo, u64 hi, std::span<const unsigned> colors,
                          std::optional<Coloring> fallback = std::nullopt);

    /// Structural equality via the serialized form.
    friend bool operator==(const Coloring& a, const Coloring& b);

    const ColoringNode& node() const noexcept { return *node_; }

private:
    Coloring(Arity arity, unsigned k, std::shared_ptr<const ColoringNode> node)
        : arity_(arity), colors_(k), node_(std::move(node)) {}

    Arity arity_;
    unsigned colors_ = 1;
    std::shared_ptr<const ColoringNode> node_;
};

/// Window of a table coloring, for serialization.
struct TableView {
    Arity arity;
    unsigned colors;
    u64 lo;
    u64 hi;
    std::vector<unsigned> entries;  ///< in table_domain order
    std::optional<Coloring> fallback;
};

/// Table contents; DomainError if the coloring is not a table.
TableView table_view(const Coloring& c);

/// Parses a rule expression for the given arity and color count. `$i`
/// resolves to tables[i].
Coloring parse_rule(std::string_view expression, Arity arity, unsigned k, std::span<const Coloring> tables = {});

}  // namespace hindman
