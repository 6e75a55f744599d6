#include "hindman/principles.hpp"

#include "hindman/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hindman {

std::string to_string(Family f) {
    switch (f) {
        case Family::HT: return "HT";
        case Family::FUT: return "FUT";
        case Family::RT: return "RT";
        case Family::IPT: return "IPT";
        case Family::IPHT: return "IPHT";
        case Family::PHT: return "PHT";
        case Family::HTExistsPair: return "HTE";
        case Family::RTLarge: return "RTL";
    }
    return {};
}

Family parse_family(std::string_view text) {
    for (Family f : {Family::HT, Family::FUT, Family::RT, Family::IPT, Family::IPHT, Family::PHT, Family::HTExistsPair,
                     Family::RTLarge}) {
        if (to_string(f) == text) return f;
    }
    throw ParseError("unknown principle '" + std::string(text) + "'");
}

PrincipleId PrincipleId::ht(LengthSpec spec, unsigned k, std::optional<u64> apart) {
    return {Family::HT, std::move(spec), 1, k, apart};
}

PrincipleId PrincipleId::fut(LengthSpec spec, unsigned k) {
    if (spec.kind() == LengthSpec::Kind::ExactlyLarge) throw DomainError("FUT takes a bounded length spec");
    return {Family::FUT, std::move(spec), 1, k, std::nullopt};
}

PrincipleId PrincipleId::rt(unsigned n, unsigned k) { return {Family::RT, LengthSpec::at_most(1), n, k, std::nullopt}; }

PrincipleId PrincipleId::ipt(unsigned n, unsigned k) { return {Family::IPT, LengthSpec::at_most(1), n, k, std::nullopt}; }

PrincipleId PrincipleId::ipht(unsigned n, std::optional<u64> apart) {
    return {Family::IPHT, LengthSpec::at_most(1), n, 2, apart};
}

PrincipleId PrincipleId::pht(unsigned n) { return {Family::PHT, LengthSpec::at_most(1), n, 2, std::nullopt}; }

PrincipleId PrincipleId::ht_exists_pair(std::optional<u64> apart) {
    return {Family::HTExistsPair, LengthSpec::at_most(1), 1, 2, apart};
}

PrincipleId PrincipleId::rt_large(unsigned k) {
    return {Family::RTLarge, LengthSpec::exactly_large(), 1, k, std::nullopt};
}

Arity PrincipleId::instance_arity() const {
    switch (family) {
        case Family::HT:
        case Family::HTExistsPair:
        case Family::IPHT:
        case Family::PHT: return Arity::nat();
        case Family::FUT:
        case Family::RTLarge: return Arity::set();
        case Family::RT:
        case Family::IPT: return dimension == 1 ? Arity::nat() : Arity::tuple(dimension);
    }
    return Arity::nat();
}

std::string PrincipleId::to_string() const {
    std::string s = hindman::to_string(family);
    switch (family) {
        case Family::HT:
        case Family::FUT: s += "^{" + lengths.to_string() + "}"; break;
        case Family::RT:
        case Family::IPT:
        case Family::IPHT:
        case Family::PHT: s += "^" + std::to_string(dimension); break;
        case Family::HTExistsPair: s += "^{a<b}"; break;
        case Family::RTLarge: s += "^{!w}"; break;
    }
    s += "_" + std::to_string(colors);
    if (apart) s += " [" + std::to_string(*apart) + "-apart]";
    return s;
}

// ---------------------------------------------------------------------------

Solution Solution::plain(FiniteSet h) { return {Shape::Plain, {std::move(h)}, std::nullopt, std::nullopt, std::nullopt}; }

Solution Solution::apart(const ApartSet& h) {
    return {Shape::Apart, {h.members()}, h.base(), std::nullopt, std::nullopt};
}

Solution Solution::blocks(const BlockSequence& b) {
    return {Shape::Blocks, b.blocks(), std::nullopt, std::nullopt, std::nullopt};
}

Solution Solution::polarized(std::vector<FiniteSet> hs) {
    return {Shape::Polarized, std::move(hs), std::nullopt, std::nullopt, std::nullopt};
}

const FiniteSet& Solution::set() const {
    if ((shape != Shape::Plain && shape != Shape::Apart) || parts.size() != 1) {
        throw DomainError("expected a single-set solution, got " + hindman::to_string(shape));
    }
    return parts.front();
}

BlockSequence Solution::block_sequence() const {
    if (shape != Shape::Blocks) throw DomainError("expected a block sequence, got " + hindman::to_string(shape));
    return BlockSequence(parts);
}

std::string to_string(Solution::Shape s) {
    switch (s) {
        case Solution::Shape::Plain: return "plain";
        case Solution::Shape::Apart: return "apart";
        case Solution::Shape::Blocks: return "blocks";
        case Solution::Shape::Polarized: return "polarized";
    }
    return {};
}

std::string render(const Solution& s) {
    std::ostringstream os;
    os << to_string(s.shape);
    if (s.base) os << "(" << *s.base << ")";
    for (const auto& p : s.parts) os << ' ' << p;
    if (s.lengths) os << " lengths " << s.lengths->to_string();
    if (s.claimed_color) os << " color " << *s.claimed_color;
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::string join(const std::vector<u64>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

/// Folds colors of checked objects and keeps the first clash.
class Homogeneity {
public:
    explicit Homogeneity(std::string kind) : kind_(std::move(kind)) {}

    bool see(std::span<const u64> object, std::optional<u64> value, unsigned color) {
        if (!color_) {
            color_ = color;
            first_.assign(object.begin(), object.end());
            first_value_ = value;
            return true;
        }
        if (color == *color_) return true;
        clash_ = Clash{kind_, first_, {object.begin(), object.end()}, first_value_, value, *color_, color};
        return false;
    }

    VerificationReport report() const {
        VerificationReport r;
        if (clash_) {
            r.status = VerificationReport::Status::Invalid;
            r.witness = clash_;
        } else if (color_) {
            r.status = VerificationReport::Status::Valid;
            r.color = color_;
        } else {
            r.status = VerificationReport::Status::Vacuous;
        }
        return r;
    }

private:
    std::string kind_;
    std::optional<unsigned> color_;
    std::vector<u64> first_;
    std::optional<u64> first_value_;
    std::optional<Clash> clash_;
};

std::optional<VerificationReport> apartness_failure(std::span<const u64> members, u64 base) {
    const auto check = check_apart(members, base);
    if (check) return std::nullopt;
    VerificationReport r;
    r.status = VerificationReport::Status::Invalid;
    r.witness = Clash{"apartness", {check.violation->first}, {check.violation->second}, {}, {}, {}, {}};
    return r;
}

}  // namespace

std::string VerificationReport::to_string() const {
    std::ostringstream os;
    switch (status) {
        case Status::Valid: os << "valid color " << *color; break;
        case Status::Vacuous: os << "vacuous"; break;
        case Status::Invalid: {
            const Clash& w = *witness;
            os << "invalid " << w.kind << " (" << join(w.first, ' ') << ")";
            if (w.first_value) os << "=" << *w.first_value;
            if (w.first_color) os << " color " << *w.first_color;
            os << " vs (" << join(w.second, ' ') << ")";
            if (w.second_value) os << "=" << *w.second_value;
            if (w.second_color) os << " color " << *w.second_color;
            break;
        }
    }
    return os.str();
}

VerificationReport verify_ht(const Coloring& f, const LengthSpec& spec, const FiniteSet& h,
                             std::optional<u64> apart_base) {
    if (apart_base) {
        if (auto fail = apartness_failure(h.elements(), *apart_base)) return *fail;
    }
    Homogeneity hom(spec.kind() == LengthSpec::Kind::ExactlyLarge ? "exactly-large sum" : "sum");
    for_each_sum(h.elements(), spec, [&](std::span<const u64> terms, u64 sum) { return hom.see(terms, sum, f.at(sum)); });
    return hom.report();
}

VerificationReport verify_fut(const Coloring& c, const LengthSpec& spec, const BlockSequence& blocks) {
    Homogeneity hom("union");
    for (const auto& u : enumerate_unions(blocks, spec)) {
        if (!hom.see(u.elements(), std::nullopt, c.of(u))) break;
    }
    return hom.report();
}

VerificationReport verify_rt(const Coloring& c, unsigned n, const FiniteSet& h) {
    if (h.size() < n) throw DomainError("RT needs at least n elements");
    Homogeneity hom("tuple");
    std::vector<u64> tuple(n);
    for_each_combination(h.size(), n, [&](std::span<const std::size_t> idx) {
        for (unsigned i = 0; i < n; ++i) tuple[i] = h[idx[i]];
        return hom.see(tuple, std::nullopt, c(tuple));
    });
    return hom.report();
}

VerificationReport verify_rt_large(const Coloring& c, const FiniteSet& h) {
    Homogeneity hom("exactly-large set");
    for_each_exactly_large_subset(h.elements(), [&](std::span<const u64> s) { return hom.see(s, std::nullopt, c(s)); });
    return hom.report();
}

namespace {

/// Walks selections x_i in H_i (increasing if asked); visit returns false to stop.
bool for_each_selection(const std::vector<FiniteSet>& hs, bool increasing,
                        const std::function<bool(std::span<const u64>)>& visit) {
    std::vector<u64> sel;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == hs.size()) return visit(sel);
        for (u64 x : hs[i]) {
            if (increasing && i > 0 && x <= sel.back()) continue;
            sel.push_back(x);
            const bool go_on = rec(i + 1);
            sel.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    return rec(0);
}

}  // namespace

VerificationReport verify_ipt(const Coloring& c, unsigned n, const std::vector<FiniteSet>& hs) {
    if (hs.size() != n) throw DomainError("IPT needs exactly n sets");
    for (const auto& h : hs) {
        if (h.empty()) throw DomainError("IPT sets must be non-empty");
    }
    Homogeneity hom("selection");
    for_each_selection(hs, true, [&](std::span<const u64> sel) { return hom.see(sel, std::nullopt, c(sel)); });
    return hom.report();
}

VerificationReport verify_polarized_ht(const Coloring& f, unsigned n, const std::vector<FiniteSet>& hs,
                                       bool increasing, std::optional<u64> apart_base) {
    if (hs.size() != n) throw DomainError("polarized Hindman needs exactly n sets");
    if (apart_base) {
        std::vector<u64> all;
        for (const auto& h : hs) all.insert(all.end(), h.begin(), h.end());
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
            throw DomainError("apartness of a union needs disjoint sets");
        }
        if (auto fail = apartness_failure(all, *apart_base)) return *fail;
    }
    Homogeneity hom("selection");
    for_each_selection(hs, increasing, [&](std::span<const u64> sel) {
        u64 sum = 0;
        for (u64 x : sel) sum = checked_add(sum, x);
        return hom.see(sel, sum, f.at(sum));
    });
    return hom.report();
}

VerificationReport verify(const PrincipleId& p, const Coloring& instance, const Solution& solution) {
    if (!(instance.arity() == p.instance_arity())) {
        throw DomainError(p.to_string() + " takes " + p.instance_arity().to_string() + " colorings, got " +
                          instance.arity().to_string());
    }
    if (instance.colors() != p.colors) {
        throw DomainError(p.to_string() + " takes " + std::to_string(p.colors) + "-colorings, got " +
                          std::to_string(instance.colors()));
    }
    auto need_shape = [&](std::initializer_list<Solution::Shape> shapes) {
        if (std::find(shapes.begin(), shapes.end(), solution.shape) == shapes.end()) {
            throw DomainError(p.to_string() + " cannot be solved by a " + to_string(solution.shape) + " solution");
        }
    };

    VerificationReport r;
    switch (p.family) {
        case Family::HT:
            need_shape({Solution::Shape::Plain, Solution::Shape::Apart});
            r = verify_ht(instance, p.lengths, solution.set(), p.apart);
            break;
        case Family::HTExistsPair: {
            need_shape({Solution::Shape::Plain, Solution::Shape::Apart});
            const auto& l = solution.lengths;
            if (!l || l->kind() != LengthSpec::Kind::ExplicitSet || l->lengths().size() != 2) {
                throw DomainError("an existential pair solution carries its lengths {a,b}");
            }
            r = verify_ht(instance, *l, solution.set(), p.apart);
            break;
        }
        case Family::FUT:
            need_shape({Solution::Shape::Blocks});
            r = verify_fut(instance, p.lengths, solution.block_sequence());
            break;
        case Family::RT:
            need_shape({Solution::Shape::Plain, Solution::Shape::Apart});
            r = verify_rt(instance, p.dimension, solution.set());
            break;
        case Family::RTLarge:
            need_shape({Solution::Shape::Plain, Solution::Shape::Apart});
            r = verify_rt_large(instance, solution.set());
            break;
        case Family::IPT:
            need_shape({Solution::Shape::Polarized});
            r = verify_ipt(instance, p.dimension, solution.parts);
            break;
        case Family::IPHT:
        case Family::PHT:
            need_shape({Solution::Shape::Polarized});
            r = verify_polarized_ht(instance, p.dimension, solution.parts, p.family == Family::IPHT, p.apart);
            break;
    }
    if (r.valid() && solution.claimed_color && *solution.claimed_color != *r.color) {
        r.status = VerificationReport::Status::Invalid;
        r.witness = Clash{"claimed color", {}, {}, {}, {}, solution.claimed_color, r.color};
        r.color.reset();
    }
    return r;
}

}  // namespace hindman
