#include "hindman/numerics.hpp"

#include "hindman/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <ostream>
#include <sstream>

namespace hindman {

u64 checked_add(u64 a, u64 b) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("sum " + std::to_string(a) + " + " + std::to_string(b) + " exceeds 64 bits");
    }
    return r;
}

u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("product " + std::to_string(a) + " * " + std::to_string(b) + " exceeds 64 bits");
    }
    return r;
}

u64 checked_pow(u64 base, unsigned exponent) {
    u64 r = 1;
    for (unsigned i = 0; i < exponent; ++i) r = checked_mul(r, base);
    return r;
}

namespace {

void require_digit_domain(u64 n, u64 t) {
    if (n == 0) throw DomainError("base-t digits need a positive integer, got 0");
    if (t < 2) throw DomainError("base must be at least 2, got " + std::to_string(t));
}

}  // namespace

DigitProfile::DigitProfile(u64 n, u64 t) : value_(n), base_(t) {
    require_digit_domain(n, t);
    unsigned e = 0;
    while (n != 0) {
        if (const u64 c = n % t; c != 0) digits_.push_back({e, c});
        n /= t;
        ++e;
    }
}

unsigned least_exponent(u64 n, u64 t) {
    require_digit_domain(n, t);
    if (t == 2) return static_cast<unsigned>(std::countr_zero(n));
    unsigned e = 0;
    while (n % t == 0) {
        n /= t;
        ++e;
    }
    return e;
}

unsigned greatest_exponent(u64 n, u64 t) {
    require_digit_domain(n, t);
    if (t == 2) return static_cast<unsigned>(63 - std::countl_zero(n));
    unsigned e = 0;
    while (n >= t) {
        n /= t;
        ++e;
    }
    return e;
}

u64 least_coefficient(u64 n, u64 t) {
    require_digit_domain(n, t);
    while (n % t == 0) n /= t;
    return n % t;
}

// ---------------------------------------------------------------------------

FiniteSet::FiniteSet(std::initializer_list<u64> values) : FiniteSet(std::vector<u64>(values)) {}

FiniteSet::FiniteSet(std::vector<u64> values) : elements_(std::move(values)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

FiniteSet FiniteSet::from_sorted(std::vector<u64> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i - 1] >= values[i]) throw DomainError("set elements must be strictly increasing");
    }
    FiniteSet s;
    s.elements_ = std::move(values);
    return s;
}

u64 FiniteSet::min() const {
    if (elements_.empty()) throw DomainError("min of the empty set");
    return elements_.front();
}

u64 FiniteSet::max() const {
    if (elements_.empty()) throw DomainError("max of the empty set");
    return elements_.back();
}

bool FiniteSet::contains(u64 v) const { return std::binary_search(elements_.begin(), elements_.end(), v); }

std::ostream& operator<<(std::ostream& os, const FiniteSet& s) {
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s[i];
    }
    return os << '}';
}

std::string to_string(const FiniteSet& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

// ---------------------------------------------------------------------------

LengthSpec::LengthSpec(Kind kind, unsigned parameter, std::vector<unsigned> lengths)
    : kind_(kind), parameter_(parameter), lengths_(std::move(lengths)) {}

LengthSpec LengthSpec::at_most(unsigned n) {
    if (n < 1) throw DomainError("length bound must be at least 1");
    return {Kind::AtMost, n, {}};
}

LengthSpec LengthSpec::exactly(unsigned n) {
    if (n < 1) throw DomainError("exact length must be at least 1");
    return {Kind::Exactly, n, {}};
}

LengthSpec LengthSpec::explicit_set(std::vector<unsigned> lengths) {
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    if (lengths.empty()) throw DomainError("explicit length set is empty");
    if (lengths.front() < 1) throw DomainError("lengths must be at least 1");
    return {Kind::ExplicitSet, 0, std::move(lengths)};
}

LengthSpec LengthSpec::exactly_large() { return {Kind::ExactlyLarge, 0, {}}; }

LengthSpec LengthSpec::all_up_to(unsigned bound) {
    if (bound < 1) throw DomainError("length bound must be at least 1");
    return {Kind::AllUpTo, bound, {}};
}

namespace {

unsigned parse_unsigned(std::string_view text, std::string_view what) {
    unsigned v = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("bad " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

LengthSpec LengthSpec::parse(std::string_view text) {
    text = trim(text);
    try {
        if (text.starts_with("<=")) return at_most(parse_unsigned(text.substr(2), "length"));
        if (text.starts_with("=")) return exactly(parse_unsigned(text.substr(1), "length"));
        if (text == "!w") return exactly_large();
        if (text.starts_with("all:")) return all_up_to(parse_unsigned(text.substr(4), "length"));
        if (text.starts_with("{") && text.ends_with("}")) {
            std::string_view body = text.substr(1, text.size() - 2);
            std::vector<unsigned> lengths;
            while (!body.empty()) {
                const auto comma = body.find(',');
                lengths.push_back(parse_unsigned(trim(body.substr(0, comma)), "length"));
                if (comma == std::string_view::npos) break;
                body.remove_prefix(comma + 1);
            }
            return explicit_set(std::move(lengths));
        }
    } catch (const DomainError& e) {
        throw ParseError(std::string("bad length spec '") + std::string(text) + "': " + e.what());
    }
    throw ParseError("bad length spec '" + std::string(text) + "'");
}

std::string LengthSpec::to_string() const {
    switch (kind_) {
        case Kind::AtMost: return "<=" + std::to_string(parameter_);
        case Kind::Exactly: return "=" + std::to_string(parameter_);
        case Kind::ExactlyLarge: return "!w";
        case Kind::AllUpTo: return "all:" + std::to_string(parameter_);
        case Kind::ExplicitSet: {
            std::string s = "{";
            for (std::size_t i = 0; i < lengths_.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(lengths_[i]);
            }
            return s + "}";
        }
    }
    return {};
}

bool LengthSpec::admits(unsigned j) const noexcept {
    switch (kind_) {
        case Kind::AtMost:
        case Kind::AllUpTo: return j >= 1 && j <= parameter_;
        case Kind::Exactly: return j == parameter_;
        case Kind::ExplicitSet: return std::binary_search(lengths_.begin(), lengths_.end(), j);
        case Kind::ExactlyLarge: return false;
    }
    return false;
}

std::optional<unsigned> LengthSpec::max_length() const noexcept {
    switch (kind_) {
        case Kind::AtMost:
        case Kind::AllUpTo:
        case Kind::Exactly: return parameter_;
        case Kind::ExplicitSet: return lengths_.back();
        case Kind::ExactlyLarge: return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

FiniteSet support_set(u64 n, u64 t) {
    const DigitProfile profile(n, t);
    std::vector<u64> exps;
    exps.reserve(profile.digits().size());
    for (const auto& d : profile.digits()) exps.push_back(d.exponent);
    return FiniteSet::from_sorted(std::move(exps));
}

u64 encode_set(const FiniteSet& s, u64 t) {
    if (s.empty()) throw DomainError("cannot encode the empty set");
    if (t < 2) throw DomainError("base must be at least 2");
    u64 total = 0;
    for (u64 e : s) {
        if (e > 64) throw OverflowError("exponent " + std::to_string(e) + " exceeds 64 bits");
        total = checked_add(total, checked_pow(t, static_cast<unsigned>(e)));
    }
    return total;
}

bool is_exactly_large(std::span<const u64> sorted) {
    if (sorted.empty()) throw DomainError("exactly-largeness of the empty set");
    return sorted.front() < sorted.size() && sorted.size() == sorted.front() + 1;
}

bool is_exactly_large(const FiniteSet& s) { return is_exactly_large(s.elements()); }

namespace {

struct SumWalker {
    std::span<const u64> ground;
    const LengthSpec& spec;
    unsigned max_len;
    const SumVisitor& visit;
    std::vector<u64> terms;

    // Returns false when the visitor asked to stop.
    bool walk(std::size_t from, u64 sum) {
        for (std::size_t i = from; i < ground.size(); ++i) {
            const u64 next = checked_add(sum, ground[i]);
            terms.push_back(ground[i]);
            const auto len = static_cast<unsigned>(terms.size());
            if (spec.admits(len) && !visit(terms, next)) return false;
            if (len < max_len && !walk(i + 1, next)) return false;
            terms.pop_back();
        }
        return true;
    }
};

}  // namespace

bool for_each_exactly_large_subset(std::span<const u64> ground,
                                   const std::function<bool(std::span<const u64>)>& visit) {
    std::vector<u64> terms;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        const u64 m = ground[i];
        const std::size_t rest = ground.size() - i - 1;
        if (m > rest) continue;  // needs m further elements
        const bool keep_going = for_each_combination(rest, static_cast<std::size_t>(m), [&](auto idx) {
            terms.assign(1, m);
            for (auto j : idx) terms.push_back(ground[i + 1 + j]);
            return visit(terms);
        });
        if (!keep_going) return false;
    }
    return true;
}

bool for_each_sum(std::span<const u64> ground, const LengthSpec& spec, const SumVisitor& visit) {
    if (spec.kind() == LengthSpec::Kind::ExactlyLarge) {
        return for_each_exactly_large_subset(ground, [&](std::span<const u64> terms) {
            u64 sum = 0;
            for (u64 v : terms) sum = checked_add(sum, v);
            return visit(terms, sum);
        });
    }
    SumWalker walker{ground, spec, *spec.max_length(), visit, {}};
    return walker.walk(0, 0);
}

FiniteSet enumerate_sums(const FiniteSet& ground, const LengthSpec& spec) {
    if (ground.empty()) throw DomainError("finite sums of the empty set");
    std::vector<u64> sums;
    for_each_sum(ground.elements(), spec, [&](std::span<const u64>, u64 sum) {
        sums.push_back(sum);
        return true;
    });
    return FiniteSet(std::move(sums));
}

bool for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(std::span<const std::size_t>)>& visit) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!visit(idx)) return false;
        // Advance to the next combination.
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// ---------------------------------------------------------------------------

ApartCheck check_apart(std::span<const u64> members, u64 t) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] == 0) throw DomainError("apart sets contain positive integers only");
        if (i && members[i - 1] >= members[i]) throw DomainError("apart set members must be strictly increasing");
    }
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (greatest_exponent(members[i - 1], t) >= least_exponent(members[i], t)) {
            return {false, std::pair{members[i - 1], members[i]}};
        }
    }
    return {};
}

ApartSet::ApartSet(u64 base, FiniteSet members) : base_(base), members_(std::move(members)) {
    if (auto check = check_apart(members_.elements(), base_); !check) {
        throw DomainError("set is not " + std::to_string(base_) + "-apart at (" +
                          std::to_string(check.violation->first) + ", " +
                          std::to_string(check.violation->second) + ")");
    }
}

BlockSequence::BlockSequence(std::vector<FiniteSet> blocks) : blocks_(std::move(blocks)) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].empty()) throw DomainError("block sequences hold non-empty blocks");
        if (i && blocks_[i - 1].max() >= blocks_[i].min()) {
            throw DomainError("blocks " + to_string(blocks_[i - 1]) + " and " + to_string(blocks_[i]) +
                              " are meshed");
        }
    }
}

std::vector<FiniteSet> enumerate_unions(const BlockSequence& blocks, const LengthSpec& spec) {
    if (spec.kind() == LengthSpec::Kind::ExactlyLarge) {
        throw DomainError("finite unions take a bounded length spec");
    }
    std::vector<FiniteSet> out;
    const std::size_t n = blocks.size();
    const unsigned top = std::min<unsigned>(*spec.max_length(), static_cast<unsigned>(n));
    for (unsigned j = 1; j <= top; ++j) {
        if (!spec.admits(j)) continue;
        for_each_combination(n, j, [&](std::span<const std::size_t> idx) {
            std::vector<u64> elems;
            for (auto i : idx) {
                const auto& b = blocks.blocks()[i].vector();
                elems.insert(elems.end(), b.begin(), b.end());
            }
            // Blocks are unmeshed, so concatenation in index order is sorted.
            out.push_back(FiniteSet::from_sorted(std::move(elems)));
            return true;
        });
    }
    return out;
}

}  // namespace hindman
