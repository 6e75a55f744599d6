#include "hindman/coloring.hpp"

#include "hindman/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace hindman {

// ---------------------------------------------------------------------------
// Arity

Arity Arity::tuple(unsigned n) {
    if (n < 2) throw DomainError("tuple colorings need dimension >= 2 (use nat for 1)");
    return {Kind::Tuple, n};
}

Arity Arity::parse(std::string_view text) {
    if (text == "nat") return nat();
    if (text == "pair") return pair();
    if (text == "triple") return triple();
    if (text == "set") return set();
    if (text.starts_with("tuple:")) {
        unsigned n = 0;
        const auto body = text.substr(6);
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), n);
        if (ec == std::errc{} && ptr == body.data() + body.size() && n >= 2) return tuple(n);
    }
    throw ParseError("unknown arity '" + std::string(text) + "'");
}

std::string Arity::to_string() const {
    switch (kind) {
        case Kind::Nat: return "nat";
        case Kind::Set: return "set";
        case Kind::Tuple:
            if (size == 2) return "pair";
            if (size == 3) return "triple";
            return "tuple:" + std::to_string(size);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Token stream shared by the injection and rule parsers.

namespace {

class Tokens {
public:
    explicit Tokens(std::string_view text) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
            const std::size_t start = i;
            while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
            if (i > start) items_.emplace_back(text.substr(start, i - start));
        }
    }

    bool done() const { return pos_ == items_.size(); }

    std::string_view next(std::string_view what) {
        if (done()) throw ParseError("expression ended early, expected " + std::string(what));
        return items_[pos_++];
    }

    u64 number(std::string_view what) {
        const auto tok = next(what);
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw ParseError("expected " + std::string(what) + ", got '" + std::string(tok) + "'");
        }
        return v;
    }

    void expect_end() const {
        if (!done()) throw ParseError("trailing tokens after expression: '" + std::string(items_[pos_]) + "'");
    }

private:
    std::vector<std::string_view> items_;
    std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Injection

Injection Injection::identity() { return {}; }

Injection Injection::shift(u64 c) {
    Injection f;
    f.kind_ = Kind::Shift;
    f.p_ = c;
    return f;
}

Injection Injection::scale(u64 a) {
    if (a == 0) throw DomainError("scale factor must be positive");
    Injection f;
    f.kind_ = Kind::Scale;
    f.p_ = a;
    return f;
}

Injection Injection::patch(u64 arg, u64 value, Injection base) {
    if (arg == 0 || value == 0) throw DomainError("injections act on positive integers");
    if (auto pre = base.preimage(value); pre && *pre != arg) {
        throw DomainError("patch value " + std::to_string(value) + " is already attained at " + std::to_string(*pre));
    }
    Injection f;
    f.kind_ = Kind::Patch;
    f.p_ = arg;
    f.q_ = value;
    f.base_ = std::make_shared<const Injection>(std::move(base));
    return f;
}

u64 Injection::operator()(u64 y) const {
    if (y == 0) throw DomainError("injections act on positive integers");
    switch (kind_) {
        case Kind::Identity: return y;
        case Kind::Shift: return checked_add(y, p_);
        case Kind::Scale: return checked_mul(y, p_);
        case Kind::Patch: return y == p_ ? q_ : (*base_)(y);
    }
    return y;
}

std::optional<u64> Injection::preimage(u64 x) const {
    if (x == 0) return std::nullopt;
    switch (kind_) {
        case Kind::Identity: return x;
        case Kind::Shift:
            if (x > p_) return x - p_;
            return std::nullopt;
        case Kind::Scale:
            if (x % p_ == 0) return x / p_;
            return std::nullopt;
        case Kind::Patch: {
            if (x == q_) return p_;
            auto pre = base_->preimage(x);
            if (pre && *pre == p_) return std::nullopt;  // base(arg) is displaced
            return pre;
        }
    }
    return std::nullopt;
}

bool Injection::attains_below(u64 x, u64 bound) const {
    for (u64 y = 1; y < bound; ++y) {
        try {
            if ((*this)(y) == x) return true;
        } catch (const OverflowError&) {
            // values past 64 bits never equal x
        }
    }
    return false;
}

std::string Injection::expression() const {
    switch (kind_) {
        case Kind::Identity: return "identity";
        case Kind::Shift: return "shift " + std::to_string(p_);
        case Kind::Scale: return "scale " + std::to_string(p_);
        case Kind::Patch:
            return "patch " + std::to_string(p_) + " " + std::to_string(q_) + " " + base_->expression();
    }
    return {};
}

class InjectionParser {
public:
    static Injection parse(Tokens& toks) {
        const auto name = toks.next("injection name");
        if (name == "identity") return Injection::identity();
        if (name == "shift") return Injection::shift(toks.number("shift amount"));
        if (name == "scale") return Injection::scale(toks.number("scale factor"));
        if (name == "patch") {
            const u64 arg = toks.number("patched argument");
            const u64 value = toks.number("patched value");
            return Injection::patch(arg, value, parse(toks));
        }
        throw CatalogError("unknown injection '" + std::string(name) + "'");
    }
};

Injection Injection::parse(std::string_view text) {
    Tokens toks(text);
    auto f = InjectionParser::parse(toks);
    toks.expect_end();
    return f;
}

// ---------------------------------------------------------------------------
// Nodes

class ColoringNode {
public:
    virtual ~ColoringNode() = default;
    virtual unsigned eval(std::span<const u64> args) const = 0;
    virtual void write(std::string& out, std::vector<Coloring>& tables) const = 0;
};

namespace {

void write_expr(const Coloring& c, std::string& out, std::vector<Coloring>& tables) {
    if (c.is_table()) {
        out += "$" + std::to_string(tables.size());
        tables.push_back(c);
        return;
    }
    c.node().write(out, tables);
}

void write_map(std::string& out, const std::vector<unsigned>& map) {
    out += std::to_string(map.size());
    for (unsigned v : map) out += " " + std::to_string(v);
}

u64 sum_args(std::span<const u64> args) {
    u64 s = 0;
    for (u64 a : args) s = checked_add(s, a);
    return s;
}

u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class ConstantNode final : public ColoringNode {
public:
    explicit ConstantNode(unsigned color) : color_(color) {}
    unsigned eval(std::span<const u64>) const override { return color_; }
    void write(std::string& out, std::vector<Coloring>&) const override { out += "const " + std::to_string(color_); }

private:
    unsigned color_;
};

enum class Reduce { Sum, Size, Min, Max };

class ModNode final : public ColoringNode {
public:
    ModNode(Reduce reduce, std::vector<unsigned> map) : reduce_(reduce), map_(std::move(map)) {}

    unsigned eval(std::span<const u64> args) const override {
        u64 v = 0;
        switch (reduce_) {
            case Reduce::Sum: v = sum_args(args); break;
            case Reduce::Size: v = args.size(); break;
            case Reduce::Min: v = args.empty() ? 0 : args.front(); break;
            case Reduce::Max: v = args.empty() ? 0 : args.back(); break;
        }
        return map_[v % map_.size()];
    }

    void write(std::string& out, std::vector<Coloring>&) const override {
        static constexpr const char* names[] = {"summod ", "sizemod ", "minmod ", "maxmod "};
        out += names[static_cast<int>(reduce_)];
        write_map(out, map_);
    }

private:
    Reduce reduce_;
    std::vector<unsigned> map_;
};

class DigitNode final : public ColoringNode {
public:
    DigitNode(u64 base, DigitQuantity which, std::vector<unsigned> map)
        : base_(base), which_(which), map_(std::move(map)) {}

    unsigned eval(std::span<const u64> args) const override {
        const u64 n = args[0];
        u64 v = 0;
        switch (which_) {
            case DigitQuantity::Least: v = least_exponent(n, base_); break;
            case DigitQuantity::Greatest: v = greatest_exponent(n, base_); break;
            case DigitQuantity::LeastCoefficient: v = least_coefficient(n, base_); break;
        }
        return map_[v % map_.size()];
    }

    void write(std::string& out, std::vector<Coloring>&) const override {
        static constexpr const char* names[] = {"lambda", "mu", "coef"};
        out += "digit " + std::to_string(base_) + " " + names[static_cast<int>(which_)] + " ";
        write_map(out, map_);
    }

private:
    u64 base_;
    DigitQuantity which_;
    std::vector<unsigned> map_;
};

class PopcountNode final : public ColoringNode {
public:
    explicit PopcountNode(std::vector<unsigned> map) : map_(std::move(map)) {}
    unsigned eval(std::span<const u64> args) const override {
        return map_[static_cast<u64>(std::popcount(args[0])) % map_.size()];
    }
    void write(std::string& out, std::vector<Coloring>&) const override {
        out += "popcount ";
        write_map(out, map_);
    }

private:
    std::vector<unsigned> map_;
};

class HashNode final : public ColoringNode {
public:
    HashNode(u64 seed, unsigned k) : seed_(seed), k_(k) {}
    unsigned eval(std::span<const u64> args) const override {
        u64 h = splitmix64(seed_ ^ (args.size() * 0x100000001B3ull));
        for (u64 a : args) h = splitmix64(h ^ a);
        return static_cast<unsigned>(h % k_);
    }
    void write(std::string& out, std::vector<Coloring>&) const override { out += "hash " + std::to_string(seed_); }

private:
    u64 seed_;
    unsigned k_;
};

class ImportantParityNode final : public ColoringNode {
public:
    explicit ImportantParityNode(Injection f) : f_(std::move(f)) {}

    unsigned eval(std::span<const u64> args) const override {
        const u64 n = args[0];
        if (n == 0) throw DomainError("important digits of 0");
        const unsigned least = static_cast<unsigned>(std::countr_zero(n));
        unsigned important = 0;
        unsigned lo = 0;
        for (u64 bits = n; bits != 0; bits &= bits - 1) {
            const unsigned e = static_cast<unsigned>(std::countr_zero(bits));
            for (u64 y = std::max(lo, 1u); y < e; ++y) {
                if (value_below(y, least)) {
                    ++important;
                    break;
                }
            }
            lo = e;
        }
        return important % 2;
    }

    void write(std::string& out, std::vector<Coloring>&) const override { out += "important " + f_.expression(); }

private:
    bool value_below(u64 y, u64 bound) const {
        try {
            return f_(y) < bound;
        } catch (const OverflowError&) {
            return false;
        }
    }

    Injection f_;
};

class SupportPullbackNode final : public ColoringNode {
public:
    SupportPullbackNode(u64 t, Coloring inner) : t_(t), inner_(std::move(inner)) {}
    unsigned eval(std::span<const u64> args) const override { return inner_.of(support_set(args[0], t_)); }
    void write(std::string& out, std::vector<Coloring>& tables) const override {
        out += "support " + std::to_string(t_) + " ";
        write_expr(inner_, out, tables);
    }

private:
    u64 t_;
    Coloring inner_;
};

class EncodePullbackNode final : public ColoringNode {
public:
    EncodePullbackNode(u64 t, Coloring inner) : t_(t), inner_(std::move(inner)) {}
    unsigned eval(std::span<const u64> args) const override {
        if (args.empty()) return 0;
        u64 total = 0;
        for (u64 e : args) {
            if (e > 64) throw OverflowError("exponent " + std::to_string(e) + " exceeds 64 bits");
            total = checked_add(total, checked_pow(t_, static_cast<unsigned>(e)));
        }
        return inner_.at(total);
    }
    void write(std::string& out, std::vector<Coloring>& tables) const override {
        out += "encode " + std::to_string(t_) + " ";
        write_expr(inner_, out, tables);
    }

private:
    u64 t_;
    Coloring inner_;
};

class SumPullbackNode final : public ColoringNode {
public:
    explicit SumPullbackNode(Coloring inner) : inner_(std::move(inner)) {}
    unsigned eval(std::span<const u64> args) const override {
        // Sets over N_0 can sum to 0; that sum gets color 0.
        const u64 s = sum_args(args);
        return s == 0 ? 0 : inner_.at(s);
    }
    void write(std::string& out, std::vector<Coloring>& tables) const override {
        out += "sumpull ";
        write_expr(inner_, out, tables);
    }

private:
    Coloring inner_;
};

class DoublingNode final : public ColoringNode {
public:
    explicit DoublingNode(Coloring inner) : inner_(std::move(inner)) {}
    unsigned eval(std::span<const u64> args) const override {
        const unsigned base = inner_.at(args[0]);
        return least_coefficient(args[0], 3) == 1 ? base : inner_.colors() + base;
    }
    void write(std::string& out, std::vector<Coloring>& tables) const override {
        out += "double ";
        write_expr(inner_, out, tables);
    }

private:
    Coloring inner_;
};

class LambdaMuNode final : public ColoringNode {
public:
    explicit LambdaMuNode(Coloring inner) : inner_(std::move(inner)) {}
    unsigned eval(std::span<const u64> args) const override {
        const u64 n = args[0];
        if (n == 0) throw DomainError("lambda/mu of 0");
        if ((n & (n - 1)) == 0) return 0;
        const u64 pair[2] = {least_exponent(n, 2), greatest_exponent(n, 2)};
        return inner_(pair);
    }
    void write(std::string& out, std::vector<Coloring>& tables) const override {
        out += "lambdamu ";
        write_expr(inner_, out, tables);
    }

private:
    Coloring inner_;
};

class PrefixSumsNode final : public ColoringNode {
public:
    explicit PrefixSumsNode(Coloring inner) : inner_(std::move(inner)) {}
    unsigned eval(std::span<const u64> args) const override {
        const u64 s1 = args[0];
        const u64 s2 = checked_add(s1, args[1]);
        const u64 s3 = checked_add(s2, args[2]);
        return 4 * inner_.at(s1) + 2 * inner_.at(s2) + inner_.at(s3);
    }
    void write(std::string& out, std::vector<Coloring>& tables) const override {
        out += "prefix ";
        write_expr(inner_, out, tables);
    }

private:
    Coloring inner_;
};

}  // namespace

class TableNode final : public ColoringNode {
public:
    TableNode(Arity arity, unsigned k, u64 lo, u64 hi, std::vector<unsigned> entries, std::optional<Coloring> fallback)
        : arity_(arity), k_(k), lo_(lo), hi_(hi), entries_(std::move(entries)), fallback_(std::move(fallback)) {
        const u64 width = hi_ - lo_ + 1;
        const auto domain = Coloring::table_domain(arity_, lo_, hi_);
        switch (arity_.kind) {
            case Arity::Kind::Nat:
            case Arity::Kind::Set: dense_.assign(entries_.begin(), entries_.end()); break;
            case Arity::Kind::Tuple: {
                u64 cells = 1;
                for (unsigned i = 0; i < arity_.size; ++i) cells *= width;
                dense_.assign(cells, kMissing);
                for (std::size_t i = 0; i < domain.size(); ++i) dense_[tuple_index(domain[i])] = entries_[i];
                break;
            }
        }
    }

    unsigned eval(std::span<const u64> args) const override {
        switch (arity_.kind) {
            case Arity::Kind::Nat:
                if (args[0] >= lo_ && args[0] <= hi_) return dense_[args[0] - lo_];
                break;
            case Arity::Kind::Tuple: {
                const bool inside = std::all_of(args.begin(), args.end(), [&](u64 a) { return a >= lo_ && a <= hi_; });
                if (inside) {
                    const unsigned c = dense_[tuple_index(args)];
                    if (c == kMissing) throw DomainError("tuple colorings take strictly increasing tuples");
                    return c;
                }
                break;
            }
            case Arity::Kind::Set: {
                if (args.empty()) return 0;
                const bool inside = std::all_of(args.begin(), args.end(), [&](u64 a) { return a >= lo_ && a <= hi_; });
                if (inside) {
                    u64 mask = 0;
                    for (u64 a : args) mask |= u64{1} << (a - lo_);
                    return dense_[mask - 1];
                }
                break;
            }
        }
        if (fallback_) return (*fallback_)(args);
        std::ostringstream os;
        os << "table window [" << lo_ << ", " << hi_ << "] does not cover (";
        for (std::size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i];
        os << ")";
        throw WindowError(os.str());
    }

    void write(std::string&, std::vector<Coloring>&) const override {
        // Tables are always emitted through write_expr as $i references.
    }

    TableView view() const { return {arity_, k_, lo_, hi_, entries_, fallback_}; }

private:
    static constexpr unsigned kMissing = ~0u;

    std::size_t tuple_index(std::span<const u64> args) const {
        const u64 width = hi_ - lo_ + 1;
        std::size_t idx = 0;
        for (u64 a : args) idx = idx * width + (a - lo_);
        return idx;
    }

    Arity arity_;
    unsigned k_;
    u64 lo_;
    u64 hi_;
    std::vector<unsigned> entries_;
    std::vector<unsigned> dense_;
    std::optional<Coloring> fallback_;
};

// ---------------------------------------------------------------------------
// Coloring

namespace {

void require_colors(unsigned k) {
    if (k < 1) throw DomainError("a coloring needs at least one color");
}

void require_map(const std::vector<unsigned>& map, unsigned k) {
    if (map.empty()) throw DomainError("color map must be non-empty");
    for (unsigned c : map) {
        if (c >= k) throw DomainError("color " + std::to_string(c) + " out of range for " + std::to_string(k) + " colors");
    }
}

void require_arity(const Coloring& c, Arity want, std::string_view role) {
    if (!(c.arity() == want)) {
        throw DomainError(std::string(role) + " needs a " + want.to_string() + " coloring, got " + c.arity().to_string());
    }
}

}  // namespace

unsigned Coloring::operator()(std::span<const u64> args) const {
    switch (arity_.kind) {
        case Arity::Kind::Nat:
            if (args.size() != 1) throw DomainError("nat colorings take one argument");
            if (args[0] == 0) throw DomainError("nat colorings are defined on positive integers");
            break;
        case Arity::Kind::Tuple:
            if (args.size() != arity_.size) {
                throw DomainError("expected a " + std::to_string(arity_.size) + "-tuple");
            }
            [[fallthrough]];
        case Arity::Kind::Set:
            for (std::size_t i = 1; i < args.size(); ++i) {
                if (!(args[i - 1] < args[i])) throw DomainError("arguments must be strictly increasing");
            }
            break;
    }
    return node_->eval(args);
}

bool Coloring::is_table() const noexcept { return dynamic_cast<const TableNode*>(node_.get()) != nullptr; }

std::string Coloring::expression() const {
    std::string out;
    std::vector<Coloring> tables;
    write_expr(*this, out, tables);
    return out;
}

std::vector<Coloring> Coloring::tables() const {
    std::string out;
    std::vector<Coloring> tables;
    write_expr(*this, out, tables);
    return tables;
}

bool operator==(const Coloring& a, const Coloring& b) {
    if (!(a.arity_ == b.arity_) || a.colors_ != b.colors_) return false;
    if (a.expression() != b.expression()) return false;
    const auto ta = a.tables();
    const auto tb = b.tables();
    if (ta.size() != tb.size()) return false;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        const auto va = table_view(ta[i]);
        const auto vb = table_view(tb[i]);
        if (!(va.arity == vb.arity) || va.colors != vb.colors || va.lo != vb.lo || va.hi != vb.hi ||
            va.entries != vb.entries || va.fallback.has_value() != vb.fallback.has_value()) {
            return false;
        }
        if (va.fallback && !(*va.fallback == *vb.fallback)) return false;
    }
    return true;
}

Coloring Coloring::constant(Arity arity, unsigned k, unsigned color) {
    require_colors(k);
    if (color >= k) throw DomainError("constant color out of range");
    return {arity, k, std::make_shared<ConstantNode>(color)};
}

Coloring Coloring::sum_mod(Arity arity, unsigned k, std::vector<unsigned> map) {
    require_colors(k);
    require_map(map, k);
    return {arity, k, std::make_shared<ModNode>(Reduce::Sum, std::move(map))};
}

Coloring Coloring::size_mod(Arity arity, unsigned k, std::vector<unsigned> map) {
    if (arity.kind == Arity::Kind::Nat) throw DomainError("sizemod applies to sets and tuples");
    require_colors(k);
    require_map(map, k);
    return {arity, k, std::make_shared<ModNode>(Reduce::Size, std::move(map))};
}

Coloring Coloring::min_mod(Arity arity, unsigned k, std::vector<unsigned> map) {
    if (arity.kind == Arity::Kind::Nat) throw DomainError("minmod applies to sets and tuples");
    require_colors(k);
    require_map(map, k);
    return {arity, k, std::make_shared<ModNode>(Reduce::Min, std::move(map))};
}

Coloring Coloring::max_mod(Arity arity, unsigned k, std::vector<unsigned> map) {
    if (arity.kind == Arity::Kind::Nat) throw DomainError("maxmod applies to sets and tuples");
    require_colors(k);
    require_map(map, k);
    return {arity, k, std::make_shared<ModNode>(Reduce::Max, std::move(map))};
}

Coloring Coloring::digit(unsigned k, u64 base, DigitQuantity which, std::vector<unsigned> map) {
    if (base < 2) throw DomainError("digit rules need base >= 2");
    require_colors(k);
    require_map(map, k);
    return {Arity::nat(), k, std::make_shared<DigitNode>(base, which, std::move(map))};
}

Coloring Coloring::popcount(unsigned k, std::vector<unsigned> map) {
    require_colors(k);
    require_map(map, k);
    return {Arity::nat(), k, std::make_shared<PopcountNode>(std::move(map))};
}

Coloring Coloring::hash(Arity arity, unsigned k, u64 seed) {
    require_colors(k);
    return {arity, k, std::make_shared<HashNode>(seed, k)};
}

Coloring Coloring::important_parity(Injection f) {
    return {Arity::nat(), 2, std::make_shared<ImportantParityNode>(std::move(f))};
}

Coloring Coloring::support_pullback(u64 t, Coloring inner) {
    if (t < 2) throw DomainError("base must be at least 2");
    require_arity(inner, Arity::set(), "support pullback");
    const unsigned k = inner.colors();
    return {Arity::nat(), k, std::make_shared<SupportPullbackNode>(t, std::move(inner))};
}

Coloring Coloring::encode_pullback(u64 t, Coloring inner) {
    if (t < 2) throw DomainError("base must be at least 2");
    require_arity(inner, Arity::nat(), "encode pullback");
    const unsigned k = inner.colors();
    return {Arity::set(), k, std::make_shared<EncodePullbackNode>(t, std::move(inner))};
}

Coloring Coloring::sum_pullback(Arity arity, Coloring inner) {
    if (arity.kind == Arity::Kind::Nat) throw DomainError("sum pullback targets tuples or sets");
    require_arity(inner, Arity::nat(), "sum pullback");
    const unsigned k = inner.colors();
    return {arity, k, std::make_shared<SumPullbackNode>(std::move(inner))};
}

Coloring Coloring::doubling(Coloring inner) {
    require_arity(inner, Arity::nat(), "color doubling");
    const unsigned k = inner.colors();
    return {Arity::nat(), 2 * k, std::make_shared<DoublingNode>(std::move(inner))};
}

Coloring Coloring::lambda_mu(Coloring inner) {
    require_arity(inner, Arity::pair(), "lambda/mu pullback");
    const unsigned k = inner.colors();
    return {Arity::nat(), k, std::make_shared<LambdaMuNode>(std::move(inner))};
}

Coloring Coloring::prefix_sums(Coloring inner) {
    require_arity(inner, Arity::nat(), "prefix-sum coloring");
    if (inner.colors() != 2) throw DomainError("prefix-sum coloring needs a 2-coloring");
    return {Arity::triple(), 8, std::make_shared<PrefixSumsNode>(std::move(inner))};
}

std::vector<std::vector<u64>> Coloring::table_domain(Arity arity, u64 lo, u64 hi) {
    if (lo > hi) throw DomainError("empty table window");
    const u64 width = hi - lo + 1;
    std::vector<std::vector<u64>> out;
    switch (arity.kind) {
        case Arity::Kind::Nat:
            if (lo == 0) throw DomainError("nat tables start at 1");
            if (width > (u64{1} << 22)) throw BudgetError("table window too wide");
            for (u64 v = lo; v <= hi; ++v) out.push_back({v});
            break;
        case Arity::Kind::Tuple: {
            u64 cells = 1;
            for (unsigned i = 0; i < arity.size; ++i) {
                cells *= width;
                if (cells > (u64{1} << 22)) throw BudgetError("table window too wide");
            }
            for_each_combination(width, arity.size, [&](std::span<const std::size_t> idx) {
                std::vector<u64> t;
                for (auto i : idx) t.push_back(lo + i);
                out.push_back(std::move(t));
                return true;
            });
            break;
        }
        case Arity::Kind::Set:
            if (width > 20) throw BudgetError("set table windows hold at most 20 elements");
            for (u64 mask = 1; mask < (u64{1} << width); ++mask) {
                std::vector<u64> s;
                for (u64 i = 0; i < width; ++i) {
                    if (mask >> i & 1) s.push_back(lo + i);
                }
                out.push_back(std::move(s));
            }
            break;
    }
    return out;
}

Coloring Coloring::table(Arity arity, unsigned k, u64 lo, u64 hi, std::span<const unsigned> colors,
                         std::optional<Coloring> fallback) {
    require_colors(k);
    const auto domain = table_domain(arity, lo, hi);
    if (colors.size() != domain.size()) {
        throw DomainError("table needs " + std::to_string(domain.size()) + " entries, got " +
                          std::to_string(colors.size()));
    }
    for (unsigned c : colors) {
        if (c >= k) throw DomainError("table color out of range");
    }
    if (fallback) {
        if (!(fallback->arity() == arity) || fallback->colors() != k) {
            throw DomainError("table fallback must match the table's arity and color count");
        }
    }
    std::vector<unsigned> entries(colors.begin(), colors.end());
    return {arity, k, std::make_shared<TableNode>(arity, k, lo, hi, std::move(entries), std::move(fallback))};
}

TableView table_view(const Coloring& c) {
    const auto* t = dynamic_cast<const TableNode*>(&c.node());
    if (!t) throw DomainError("coloring is not a table");
    return t->view();
}

// ---------------------------------------------------------------------------
// Rule parser

namespace {

class RuleParser {
public:
    RuleParser(Tokens& toks, std::span<const Coloring> tables) : toks_(toks), tables_(tables) {}

    Coloring parse(Arity arity, unsigned k) {
        const auto name = toks_.next("rule name");
        if (name.starts_with("$")) {
            unsigned idx = 0;
            auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            if (ec != std::errc{} || ptr != name.data() + name.size() || idx >= tables_.size()) {
                throw ParseError("bad table reference '" + std::string(name) + "'");
            }
            const Coloring& t = tables_[idx];
            if (!(t.arity() == arity) || t.colors() != k) {
                throw ParseError("table " + std::string(name) + " does not have arity " + arity.to_string() + " and " +
                                 std::to_string(k) + " colors");
            }
            return t;
        }
        if (name == "const") return Coloring::constant(arity, k, color(k));
        if (name == "summod") return Coloring::sum_mod(arity, k, map(k));
        if (name == "sizemod") return Coloring::size_mod(arity, k, map(k));
        if (name == "minmod") return Coloring::min_mod(arity, k, map(k));
        if (name == "maxmod") return Coloring::max_mod(arity, k, map(k));
        if (name == "hash") return Coloring::hash(arity, k, toks_.number("hash seed"));
        if (name == "digit") {
            want(arity, Arity::nat(), name);
            const u64 base = toks_.number("digit base");
            const auto which_tok = toks_.next("digit quantity");
            DigitQuantity which;
            if (which_tok == "lambda") which = DigitQuantity::Least;
            else if (which_tok == "mu") which = DigitQuantity::Greatest;
            else if (which_tok == "coef") which = DigitQuantity::LeastCoefficient;
            else throw ParseError("unknown digit quantity '" + std::string(which_tok) + "'");
            return Coloring::digit(k, base, which, map(k));
        }
        if (name == "popcount") {
            want(arity, Arity::nat(), name);
            return Coloring::popcount(k, map(k));
        }
        if (name == "important") {
            want(arity, Arity::nat(), name);
            if (k != 2) throw ParseError("important-digit parity is a 2-coloring");
            return Coloring::important_parity(InjectionParser::parse(toks_));
        }
        if (name == "support") {
            want(arity, Arity::nat(), name);
            const u64 t = toks_.number("base");
            return Coloring::support_pullback(t, parse(Arity::set(), k));
        }
        if (name == "encode") {
            want(arity, Arity::set(), name);
            const u64 t = toks_.number("base");
            return Coloring::encode_pullback(t, parse(Arity::nat(), k));
        }
        if (name == "sumpull") {
            if (arity.kind == Arity::Kind::Nat) throw ParseError("sumpull yields tuple or set colorings");
            return Coloring::sum_pullback(arity, parse(Arity::nat(), k));
        }
        if (name == "double") {
            want(arity, Arity::nat(), name);
            if (k % 2 != 0) throw ParseError("doubled colorings have an even number of colors");
            return Coloring::doubling(parse(Arity::nat(), k / 2));
        }
        if (name == "lambdamu") {
            want(arity, Arity::nat(), name);
            return Coloring::lambda_mu(parse(Arity::pair(), k));
        }
        if (name == "prefix") {
            want(arity, Arity::triple(), name);
            if (k != 8) throw ParseError("prefix-sum colorings have 8 colors");
            return Coloring::prefix_sums(parse(Arity::nat(), 2));
        }
        throw CatalogError("unknown rule '" + std::string(name) + "'");
    }

private:
    static void want(Arity have, Arity need, std::string_view rule) {
        if (!(have == need)) {
            throw ParseError("rule '" + std::string(rule) + "' yields " + need.to_string() + " colorings, not " +
                             have.to_string());
        }
    }

    unsigned color(unsigned k) {
        const u64 c = toks_.number("color");
        if (c >= k) throw ParseError("color " + std::to_string(c) + " out of range");
        return static_cast<unsigned>(c);
    }

    std::vector<unsigned> map(unsigned k) {
        const u64 m = toks_.number("map size");
        if (m == 0 || m > 4096) throw ParseError("map size out of range");
        std::vector<unsigned> out;
        for (u64 i = 0; i < m; ++i) out.push_back(color(k));
        return out;
    }

    Tokens& toks_;
    std::span<const Coloring> tables_;
};

}  // namespace

Coloring parse_rule(std::string_view expression, Arity arity, unsigned k, std::span<const Coloring> tables) {
    Tokens toks(expression);
    try {
        RuleParser parser(toks, tables);
        auto c = parser.parse(arity, k);
        toks.expect_end();
        return c;
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid rule '") + std::string(expression) + "': " + e.what());
    }
}

}  // namespace hindman
