#include "hindman/reductions.hpp"

#include "hindman/errors.hpp"

#include <algorithm>

namespace hindman {

Coloring ReductionStep::apply_forward(const Coloring& instance) const {
    if (!(instance.arity() == source.instance_arity()) || instance.colors() != source.colors) {
        throw DomainError(id + ": instance is a " + std::to_string(instance.colors()) + "-coloring of " +
                          instance.arity().to_string() + ", expected " + source.to_string());
    }
    return forward(instance);
}

Solution ReductionStep::apply_backward(const Solution& target_solution, const Coloring& instance) const {
    return backward(target_solution, instance);
}

ReductionStep identity_step(const PrincipleId& p) {
    return {"identity",
            p,
            p,
            [](const Coloring& c) { return c; },
            [](const Solution& s, const Coloring&) { return s; },
            {"identity"},
            p.to_string() + " reduces to itself"};
}

ReductionStep compose(const ReductionStep& a, const ReductionStep& b) {
    if (!(a.target == b.source)) {
        throw CompositionError("cannot compose " + a.id + " (target " + a.target.to_string() + ") with " + b.id +
                               " (source " + b.source.to_string() + ")");
    }
    ReductionStep r;
    r.id = a.id + "+" + b.id;
    r.source = a.source;
    r.target = b.target;
    auto af = a.forward;
    auto bf = b.forward;
    auto ab = a.backward;
    auto bb = b.backward;
    r.forward = [af, bf](const Coloring& c) { return bf(af(c)); };
    r.backward = [af, ab, bb](const Solution& s, const Coloring& c) { return ab(bb(s, af(c)), c); };
    r.provenance = a.provenance;
    r.provenance.insert(r.provenance.end(), b.provenance.begin(), b.provenance.end());
    r.anchor = a.anchor + "; " + b.anchor;
    return r;
}

ReductionStep compose(const std::vector<ReductionStep>& chain) {
    if (chain.empty()) throw CompositionError("empty composition");
    ReductionStep r = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) r = compose(r, chain[i]);
    return r;
}

namespace {

void require_bounded(const LengthSpec& spec) {
    const auto kind = spec.kind();
    if (kind != LengthSpec::Kind::AtMost && kind != LengthSpec::Kind::Exactly) {
        throw DomainError("length spec must be <=n or =n");
    }
}

Solution apart_solution(u64 t, const FiniteSet& h, const Solution& from) {
    Solution s = Solution::apart(ApartSet(t, h));
    s.claimed_color = from.claimed_color;
    return s;
}

}  // namespace

ReductionStep fut_from_ht(const LengthSpec& spec, unsigned k, u64 t) {
    require_bounded(spec);
    if (t < 2) throw DomainError("apartness base must be at least 2");
    ReductionStep r;
    r.id = "futFromHt";
    r.source = PrincipleId::fut(spec, k);
    r.target = PrincipleId::ht(spec, k, t);
    r.forward = [t](const Coloring& c) { return Coloring::support_pullback(t, c); };
    r.backward = [t](const Solution& s, const Coloring&) {
        std::vector<FiniteSet> blocks;
        const ApartSet h(t, s.set());
        for (u64 x : h.members()) blocks.push_back(support_set(x, t));
        Solution out = Solution::blocks(BlockSequence(std::move(blocks)));
        out.claimed_color = s.claimed_color;
        return out;
    };
    r.provenance = {r.id};
    r.anchor = "FUT^{" + spec.to_string() + "} reduces to HT^{" + spec.to_string() + "} with " + std::to_string(t) +
               "-apartness via exponent sets";
    return r;
}

ReductionStep ht_from_fut(const LengthSpec& spec, unsigned k, u64 t) {
    require_bounded(spec);
    if (t < 2) throw DomainError("apartness base must be at least 2");
    ReductionStep r;
    r.id = "htFromFut";
    r.source = PrincipleId::ht(spec, k, t);
    r.target = PrincipleId::fut(spec, k);
    r.forward = [t](const Coloring& d) { return Coloring::encode_pullback(t, d); };
    r.backward = [t](const Solution& s, const Coloring&) {
        std::vector<u64> h;
        const auto blocks = s.block_sequence();
        for (const auto& b : blocks.blocks()) h.push_back(encode_set(b, t));
        return apart_solution(t, FiniteSet::from_sorted(std::move(h)), s);
    };
    r.provenance = {r.id};
    r.anchor = "HT^{" + spec.to_string() + "} with " + std::to_string(t) + "-apartness reduces to FUT^{" +
               spec.to_string() + "} via base-" + std::to_string(t) + " encodings";
    return r;
}

ReductionStep apartness_base_convert(const LengthSpec& spec, unsigned k, u64 t, u64 s) {
    ReductionStep r = compose(ht_from_fut(spec, k, s), fut_from_ht(spec, k, t));
    r.id = "apartnessBaseConvert";
    r.anchor = "HT^{" + spec.to_string() + "} with " + std::to_string(s) + "-apartness reduces to the " +
               std::to_string(t) + "-apart version";
    return r;
}

ReductionStep length_weakening(unsigned n, unsigned k, std::optional<u64> apart) {
    ReductionStep r;
    r.id = "lengthWeakening";
    r.source = PrincipleId::ht(LengthSpec::exactly(n), k, apart);
    r.target = PrincipleId::ht(LengthSpec::at_most(n), k, apart);
    r.forward = [](const Coloring& c) { return c; };
    r.backward = [](const Solution& s, const Coloring&) { return s; };
    r.provenance = {r.id};
    r.anchor = "sums of exactly " + std::to_string(n) + " terms are sums of at most " + std::to_string(n);
    return r;
}

FiniteSet thin_by_least_exponent(const FiniteSet& h, u64 t) {
    std::vector<u64> kept;
    std::vector<unsigned> seen;
    for (u64 x : h) {
        const unsigned l = least_exponent(x, t);
        if (std::find(seen.begin(), seen.end(), l) != seen.end()) continue;
        seen.push_back(l);
        kept.push_back(x);
    }
    return FiniteSet::from_sorted(std::move(kept));
}

ReductionStep color_doubling(unsigned n, unsigned k) {
    if (n < 2 || k < 1) throw DomainError("color doubling needs n >= 2 and k >= 1");
    ReductionStep r;
    r.id = "colorDoubling";
    r.source = PrincipleId::ht(LengthSpec::at_most(n), k, 3);
    r.target = PrincipleId::ht(LengthSpec::at_most(n), 2 * k);
    r.forward = [](const Coloring& f) { return Coloring::doubling(f); };
    r.backward = [](const Solution& s, const Coloring&) {
        const FiniteSet& h = s.set();
        std::vector<std::pair<unsigned, u64>> by_lambda;
        for (u64 x : h) by_lambda.emplace_back(least_exponent(x, 3), x);
        std::sort(by_lambda.begin(), by_lambda.end());
        for (std::size_t i = 1; i < by_lambda.size(); ++i) {
            if (by_lambda[i].first == by_lambda[i - 1].first) {
                throw ThinningError("members " + std::to_string(by_lambda[i - 1].second) + " and " +
                                    std::to_string(by_lambda[i].second) + " share base-3 least exponent " +
                                    std::to_string(by_lambda[i].first));
            }
        }
        std::vector<u64> kept;
        for (u64 x : thin_by_least_exponent(h, 3)) {
            if (kept.empty() || greatest_exponent(kept.back(), 3) < least_exponent(x, 3)) kept.push_back(x);
        }
        Solution out = Solution::apart(ApartSet(3, FiniteSet::from_sorted(std::move(kept))));
        return out;
    };
    r.provenance = {r.id};
    r.anchor = "HT^{<=" + std::to_string(n) + "}_" + std::to_string(k) + " with apartness reduces to HT^{<=" +
               std::to_string(n) + "}_" + std::to_string(2 * k);
    return r;
}

ReductionStep ht_exact_from_rt(unsigned n, unsigned k, u64 t) {
    if (n == 0) throw DomainError("tuple length must be positive");
    ReductionStep r;
    r.id = "htExactFromRt";
    r.source = PrincipleId::ht(LengthSpec::exactly(n), k, t);
    r.target = PrincipleId::rt(n, k);
    r.forward = [n](const Coloring& f) { return n == 1 ? f : Coloring::sum_pullback(Arity::tuple(n), f); };
    r.backward = [t](const Solution& s, const Coloring&) { return apart_solution(t, s.set(), s); };
    r.provenance = {r.id};
    r.anchor = "HT^{=" + std::to_string(n) + "} with apartness reduces to RT^" + std::to_string(n) +
               " over an apart ground set";
    return r;
}

namespace {

Solution extract_lambda_mu(const std::vector<u64>& chain, std::optional<unsigned> claimed) {
    std::vector<u64> h1;
    std::vector<u64> h2;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i % 2 == 0) {
            h1.push_back(least_exponent(chain[i]));
        } else {
            h2.push_back(greatest_exponent(chain[i]));
        }
    }
    Solution out = Solution::polarized({FiniteSet(h1), FiniteSet(h2)});
    out.claimed_color = claimed;
    return out;
}

std::vector<u64> drop_zero_lambda(const FiniteSet& h) {
    std::vector<u64> v = h.vector();
    std::size_t i = 0;
    while (i < v.size() && least_exponent(v[i]) == 0) ++i;
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
    return v;
}

}  // namespace

ReductionStep ipt_from_ht_eq2() {
    ReductionStep r;
    r.id = "iptFromHtEq2";
    r.source = PrincipleId::ipt(2, 2);
    r.target = PrincipleId::ht(LengthSpec::exactly(2), 2, 2);
    r.forward = [](const Coloring& c) { return Coloring::lambda_mu(c); };
    r.backward = [](const Solution& s, const Coloring&) {
        const FiniteSet& h = s.set();
        if (!check_apart(h.elements(), 2)) throw DomainError("solution is not 2-apart");
        const auto v = drop_zero_lambda(h);
        if (v.size() < 4) throw ShortSolutionError("need at least 4 members with positive least exponent");
        return extract_lambda_mu(v, s.claimed_color);
    };
    r.provenance = {r.id};
    r.anchor = "IPT^2_2 reduces to HT^{=2}_2 with apartness";
    return r;
}

ReductionStep divide_sum(unsigned n, unsigned m, unsigned k, std::optional<u64> apart) {
    if (n < 2 || m < 2 || m % n != 0) throw DomainError("divide-sum needs n, m >= 2 with n | m");
    const unsigned d = m / n;
    ReductionStep r;
    r.id = "divideSum";
    r.source = PrincipleId::ht(LengthSpec::exactly(n), k, apart);
    r.target = PrincipleId::ht(LengthSpec::exactly(m), k, apart);
    r.forward = [](const Coloring& f) { return f; };
    r.backward = [n, d, apart](const Solution& s, const Coloring&) {
        const auto& h = s.set().elements();
        if (h.size() < static_cast<std::size_t>(d) * n) {
            throw ShortSolutionError("need at least " + std::to_string(d * n) + " members, got " + std::to_string(h.size()));
        }
        std::vector<u64> plus;
        for (std::size_t i = 0; i + d <= h.size(); i += d) {
            u64 sum = 0;
            for (std::size_t j = i; j < i + d; ++j) sum = checked_add(sum, h[j]);
            plus.push_back(sum);
        }
        FiniteSet hp = FiniteSet::from_sorted(std::move(plus));
        if (apart) return apart_solution(*apart, hp, s);
        Solution out = Solution::plain(std::move(hp));
        out.claimed_color = s.claimed_color;
        return out;
    };
    r.provenance = {r.id};
    r.anchor = "HT^{=" + std::to_string(n) + "} reduces to HT^{=" + std::to_string(m) + "} by summing blocks of " +
               std::to_string(d) + " consecutive terms";
    return r;
}

ReductionStep ipht_from_ipt(const FiniteSet& s1, const FiniteSet& s2) {
    std::vector<u64> all = s1.vector();
    all.insert(all.end(), s2.begin(), s2.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw DomainError("carriers must be disjoint");
    if (!check_apart(all, 2)) throw DomainError("carrier union must be 2-apart");
    ReductionStep r;
    r.id = "iphtFromIpt";
    r.source = PrincipleId::ipht(2, 2);
    r.target = PrincipleId::ipt(2, 2);
    r.forward = [](const Coloring& f) { return Coloring::sum_pullback(Arity::pair(), f); };
    r.backward = [s1, s2](const Solution& s, const Coloring&) {
        if (s.shape != Solution::Shape::Polarized || s.parts.size() != 2) {
            throw DomainError("expected a polarized pair");
        }
        for (u64 x : s.parts[0]) {
            if (!s1.contains(x)) throw DomainError(std::to_string(x) + " is outside the first carrier");
        }
        for (u64 x : s.parts[1]) {
            if (!s2.contains(x)) throw DomainError(std::to_string(x) + " is outside the second carrier");
        }
        std::vector<u64> u = s.parts[0].vector();
        u.insert(u.end(), s.parts[1].begin(), s.parts[1].end());
        std::sort(u.begin(), u.end());
        if (!check_apart(u, 2)) throw DomainError("union of the solution sets is not 2-apart");
        return s;
    };
    r.provenance = {r.id};
    r.anchor = "IPHT^2_2 with apartness reduces to IPT^2_2 relative to apart carriers";
    return r;
}

std::vector<u64> interleave(const FiniteSet& h1, const FiniteSet& h2) {
    std::vector<u64> chain;
    auto it1 = std::find_if(h1.begin(), h1.end(), [](u64 x) { return least_exponent(x) > 0; });
    if (it1 == h1.end()) return chain;
    chain.push_back(*it1);
    for (bool from_second = true;; from_second = !from_second) {
        const FiniteSet& src = from_second ? h2 : h1;
        const auto it = std::upper_bound(src.begin(), src.end(), chain.back());
        if (it == src.end()) break;
        chain.push_back(*it);
    }
    return chain;
}

ReductionStep ipt_from_ipht() {
    ReductionStep r;
    r.id = "iptFromIpht";
    r.source = PrincipleId::ipt(2, 2);
    r.target = PrincipleId::ipht(2, 2);
    r.forward = [](const Coloring& c) { return Coloring::lambda_mu(c); };
    r.backward = [](const Solution& s, const Coloring&) {
        if (s.shape != Solution::Shape::Polarized || s.parts.size() != 2) {
            throw DomainError("expected a polarized pair");
        }
        const auto chain = interleave(s.parts[0], s.parts[1]);
        if (chain.size() < 4) {
            throw InterleaveError("alternating chain has " + std::to_string(chain.size()) + " members, need 4");
        }
        return extract_lambda_mu(chain, s.claimed_color);
    };
    r.provenance = {r.id};
    r.anchor = "IPT^2_2 reduces to IPHT^2_2 with apartness";
    return r;
}

std::vector<Chunk> chunk_exactly_large(const FiniteSet& h) {
    std::vector<Chunk> chunks;
    const auto& v = h.elements();
    std::size_t i = 0;
    while (i < v.size()) {
        const u64 m = v[i];
        if (m == 0 || m > v.size() - i - 1) break;
        const std::size_t end = i + static_cast<std::size_t>(m) + 1;
        Chunk c;
        c.members = FiniteSet::from_sorted({v.begin() + static_cast<std::ptrdiff_t>(i),
                                            v.begin() + static_cast<std::ptrdiff_t>(end)});
        for (u64 x : c.members) c.sum = checked_add(c.sum, x);
        c.without_max = c.sum - c.members.max();
        chunks.push_back(std::move(c));
        i = end;
    }
    return chunks;
}

ReductionStep ipht_from_ht_large() {
    ReductionStep r;
    r.id = "iphtFromHtLarge";
    r.source = PrincipleId::ipht(2, 2);
    r.target = PrincipleId::ht(LengthSpec::exactly_large(), 2, 2);
    r.forward = [](const Coloring& f) { return f; };
    r.backward = [](const Solution& s, const Coloring&) {
        const auto chunks = chunk_exactly_large(s.set());
        if (chunks.size() < 2) {
            throw ChunkError("only " + std::to_string(chunks.size()) + " exactly large chunks fit, need 2");
        }
        std::vector<u64> h1;
        std::vector<u64> h2;
        for (const auto& c : chunks) {
            h1.push_back(c.without_max);
            h2.push_back(c.sum - c.without_max);
        }
        Solution out = Solution::polarized({FiniteSet(h1), FiniteSet(h2)});
        out.claimed_color = s.claimed_color;
        return out;
    };
    r.provenance = {r.id};
    r.anchor = "IPHT^2_2 with apartness reduces to HT^{!w}_2 with apartness by exactly large chunks";
    return r;
}

std::pair<unsigned, unsigned> pigeonhole_pair(unsigned color) {
    if (color > 7) throw DomainError("bit-triple colors are 0..7");
    const unsigned c[4] = {0, (color >> 2) & 1U, (color >> 1) & 1U, color & 1U};
    for (auto [a, b] : {std::pair{1U, 2U}, std::pair{1U, 3U}, std::pair{2U, 3U}}) {
        if (c[a] == c[b]) return {a, b};
    }
    throw std::logic_error("pigeonhole failed");
}

ReductionStep exists_pair_from_rt3() {
    ReductionStep r;
    r.id = "existsPairFromRt3";
    r.source = PrincipleId::ht_exists_pair(2);
    r.target = PrincipleId::rt(3, 8);
    r.forward = [](const Coloring& f) { return Coloring::prefix_sums(f); };
    r.backward = [](const Solution& s, const Coloring& f) {
        const auto& h = s.set().elements();
        if (h.size() < 3) throw ShortSolutionError("need at least 3 members");
        const unsigned color = Coloring::prefix_sums(f)(std::span<const u64>(h.data(), 3));
        const auto [a, b] = pigeonhole_pair(color);
        // A sum of a members is a prefix sum of a homogeneous triple only
        // when 3 - a further members lie above it; drop the top 3 - a.
        const std::size_t keep = h.size() - (3 - a);
        Solution out = Solution::apart(ApartSet(2, FiniteSet::from_sorted({h.begin(), h.begin() + keep})));
        out.lengths = LengthSpec::explicit_set({a, b});
        out.claimed_color = (color >> (3 - a)) & 1U;
        return out;
    };
    r.provenance = {r.id};
    r.anchor = "HT^{a<b}_2 with apartness reduces to RT^3_8 via prefix-sum bit-triples";
    return r;
}

ReductionStep ht_large_from_rt_large() {
    ReductionStep r;
    r.id = "htLargeFromRtLarge";
    r.source = PrincipleId::ht(LengthSpec::exactly_large(), 2, 2);
    r.target = PrincipleId::rt_large(2);
    r.forward = [](const Coloring& f) { return Coloring::sum_pullback(Arity::set(), f); };
    r.backward = [](const Solution& s, const Coloring&) { return apart_solution(2, s.set(), s); };
    r.provenance = {r.id};
    r.anchor = "HT^{!w}_2 with apartness reduces to Ramsey for exactly large sets";
    return r;
}

std::vector<FiniteSet> default_carriers(unsigned count) {
    std::vector<u64> a;
    std::vector<u64> b;
    for (unsigned i = 0; i < count && 3 + 4 * i < 64; ++i) {
        a.push_back(u64{1} << (1 + 4 * i));
        b.push_back(u64{1} << (3 + 4 * i));
    }
    return {FiniteSet(a), FiniteSet(b)};
}

ReductionStep corrupted_fixture() {
    ReductionStep r = ipt_from_ht_eq2();
    r.id = "corruptedFixture";
    r.backward = [](const Solution& s, const Coloring&) {
        const auto v = drop_zero_lambda(s.set());
        if (v.size() < 4) throw ShortSolutionError("need at least 4 members with positive least exponent");
        std::vector<u64> h1;
        std::vector<u64> h2;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i % 2 == 0) {
                h1.push_back(greatest_exponent(v[i]));
            } else {
                h2.push_back(least_exponent(v[i]));
            }
        }
        return Solution::polarized({FiniteSet(h1), FiniteSet(h2)});
    };
    r.provenance = {r.id};
    r.anchor = "negative control";
    return r;
}

const std::vector<CatalogEntry>& reduction_catalog() {
    static const std::vector<CatalogEntry> catalog = {
        {"futFromHt", "FUT^{spec}_k to HT^{spec}_k with t-apartness",
         [](const StepParams& p) { return fut_from_ht(p.spec, p.k, p.t); }},
        {"htFromFut", "HT^{spec}_k with t-apartness to FUT^{spec}_k",
         [](const StepParams& p) { return ht_from_fut(p.spec, p.k, p.t); }},
        {"apartnessBaseConvert", "HT^{spec}_k with s-apartness to HT^{spec}_k with t-apartness",
         [](const StepParams& p) { return apartness_base_convert(p.spec, p.k, p.t, p.s); }},
        {"lengthWeakening", "HT^{=n}_k to HT^{<=n}_k",
         [](const StepParams& p) { return length_weakening(p.n, p.k, p.t); }},
        {"colorDoubling", "HT^{<=n}_k with 3-apartness to HT^{<=n}_{2k}",
         [](const StepParams& p) { return color_doubling(p.n, p.k); }},
        {"htExactFromRt", "HT^{=n}_k with t-apartness to RT^n_k",
         [](const StepParams& p) { return ht_exact_from_rt(p.n, p.k, p.t); }},
        {"iptFromHtEq2", "IPT^2_2 to HT^{=2}_2 with 2-apartness", [](const StepParams&) { return ipt_from_ht_eq2(); }},
        {"divideSum", "HT^{=n}_k to HT^{=m}_k for n | m",
         [](const StepParams& p) { return divide_sum(p.n, p.m, p.k, p.t); }},
        {"iphtFromIpt", "IPHT^2_2 with 2-apartness to IPT^2_2 over carriers",
         [](const StepParams& p) {
             const auto cs = p.carriers.size() == 2 ? p.carriers : default_carriers();
             return ipht_from_ipt(cs[0], cs[1]);
         }},
        {"iptFromIpht", "IPT^2_2 to IPHT^2_2 with 2-apartness", [](const StepParams&) { return ipt_from_ipht(); }},
        {"iphtFromHtLarge", "IPHT^2_2 with 2-apartness to HT^{!w}_2 with 2-apartness",
         [](const StepParams&) { return ipht_from_ht_large(); }},
        {"existsPairFromRt3", "HT^{a<b}_2 with 2-apartness to RT^3_8",
         [](const StepParams&) { return exists_pair_from_rt3(); }},
        {"htLargeFromRtLarge", "HT^{!w}_2 with 2-apartness to exactly large Ramsey",
         [](const StepParams&) { return ht_large_from_rt_large(); }},
        {"iptToHtLe2",
         "IPT^2_2 to HT^{<=2}_4: iptFromHtEq2, lengthWeakening, apartnessBaseConvert, colorDoubling",
         [](const StepParams&) {
             auto r = compose({ipt_from_ht_eq2(), length_weakening(2, 2, 2),
                               apartness_base_convert(LengthSpec::at_most(2), 2, 3, 2), color_doubling(2, 2)});
             r.id = "iptToHtLe2";
             return r;
         }},
    };
    return catalog;
}

ReductionStep build_reduction(std::string_view id, const StepParams& params) {
    for (const auto& e : reduction_catalog()) {
        if (e.id == id) return e.build(params);
    }
    if (id == "corruptedFixture") return corrupted_fixture();
    throw CatalogError("unknown reduction '" + std::string(id) + "'");
}

// --- range decoders ---------------------------------------------------------------

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::InRange: return "in-range";
        case Verdict::NotInRange: return "not-in-range";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

RangeDecoder make_range_decoder(const Injection& f, const LengthSpec& spec, const FiniteSet& h) {
    Coloring g = Coloring::important_parity(f);
    const auto report = verify_ht(g, spec, h, 2);
    if (!report.valid()) throw DomainError("H is not a monochromatic 2-apart set for g: " + report.to_string());
    return {f, g, spec, h, *report.color};
}

namespace {

DecodeResult answer(const RangeDecoder& d, u64 x, u64 n, std::optional<u64> k, u64 bound) {
    DecodeResult r;
    r.n = n;
    r.k = k;
    r.bound = bound;
    r.verdict = d.f.attains_below(x, bound) ? Verdict::InRange : Verdict::NotInRange;
    return r;
}

std::optional<std::size_t> first_above(const FiniteSet& h, u64 x) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (x < least_exponent(h[i])) return i;
    }
    return std::nullopt;
}

// Prefix of `terms` members from index i, then the first later k with
// g(n + k) equal to the decoder color.
DecodeResult prefix_and_partner(const RangeDecoder& d, u64 x, std::size_t i, u64 terms) {
    const auto& h = d.h.elements();
    if (terms == 0 || terms > h.size() - i) return {};
    u64 n = 0;
    for (std::size_t j = i; j < i + terms; ++j) n = checked_add(n, h[j]);
    for (std::size_t j = i + terms; j < h.size(); ++j) {
        if (d.g.at(checked_add(n, h[j])) == d.color) return answer(d, x, n, h[j], greatest_exponent(h[j]));
    }
    return {};
}

}  // namespace

DecodeResult decode_le2(const RangeDecoder& d, u64 x) {
    if (!(d.spec == LengthSpec::at_most(2))) throw DomainError("decode_le2 needs the spec <=2");
    const auto i = first_above(d.h, x);
    if (!i) return {};
    const u64 n = d.h[*i];
    return answer(d, x, n, std::nullopt, greatest_exponent(n));
}

DecodeResult decode_eq(const RangeDecoder& d, u64 x) {
    if (d.spec.kind() != LengthSpec::Kind::Exactly || d.spec.parameter() < 3) {
        throw DomainError("decode_eq needs the spec =a with a >= 3");
    }
    const auto i = first_above(d.h, x);
    if (!i) return {};
    return prefix_and_partner(d, x, *i, d.spec.parameter() - 2);
}

DecodeResult decode_large(const RangeDecoder& d, u64 x) {
    if (d.spec.kind() != LengthSpec::Kind::ExactlyLarge) throw DomainError("decode_large needs the spec !w");
    const auto i = first_above(d.h, x);
    if (!i) return {};
    const u64 m = d.h[*i];
    return prefix_and_partner(d, x, *i, m - 1);
}

}  // namespace hindman
