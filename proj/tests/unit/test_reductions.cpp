#include "doctest.h"

#include "../oracles.hpp"
#include "hindman/errors.hpp"
#include "hindman/reductions.hpp"
#include "hindman/search.hpp"

#include <random>

using namespace hindman;

namespace {

Coloring nat(const std::string& e, unsigned k = 2) { return parse_rule(e, Arity::nat(), k); }
Coloring pair(const std::string& e, unsigned k = 2) { return parse_rule(e, Arity::pair(), k); }
Coloring sets(const std::string& e, unsigned k = 2) { return parse_rule(e, Arity::set(), k); }

Solution apart(u64 t, FiniteSet h) { return Solution::apart(ApartSet(t, std::move(h))); }

std::vector<Injection> injections() {
    return {Injection::identity(), Injection::shift(3), Injection::shift(10), Injection::scale(2),
            Injection::patch(5, 2, Injection::shift(10))};
}

FiniteSet decoder_set(const Injection& f, const LengthSpec& spec, unsigned size) {
    SearchBudget b;
    b.target_size = size;
    b.max_exponent = 40;
    const auto out = search_apart_homogeneous(Coloring::important_parity(f), spec, 2, b);
    REQUIRE(out.found());
    return out.solution->set();
}

}  // namespace

TEST_SUITE("reductions") {

TEST_CASE("finite unions and apart sums") {
    const auto c = sets("sizemod 2 0 1");
    const auto fwd = fut_from_ht(LengthSpec::at_most(2), 2, 2);
    CHECK(fwd.source == PrincipleId::fut(LengthSpec::at_most(2), 2));
    CHECK(fwd.target == PrincipleId::ht(LengthSpec::at_most(2), 2, 2));
    const auto d = fwd.apply_forward(c);
    CHECK(d.at(12) == 0);
    const auto blocks = fwd.apply_backward(apart(2, {2, 12}), c);
    CHECK(blocks.shape == Solution::Shape::Blocks);
    CHECK(blocks.parts == std::vector<FiniteSet>{{1}, {2, 3}});

    const auto back = ht_from_fut(LengthSpec::at_most(2), 2, 2);
    const auto nd = nat("summod 2 0 1");
    const auto cs = back.apply_forward(nd);
    CHECK(cs.of(FiniteSet{0, 3}) == 1);
    const auto h = back.apply_backward(Solution::blocks(BlockSequence({FiniteSet{1}, FiniteSet{2, 3}})), nd);
    CHECK(h.set() == FiniteSet{2, 12});
}

TEST_CASE("transport round trip on coefficient-one apart sets") {
    std::mt19937_64 rng(11);
    for (u64 t : {2, 3, 5}) {
        const auto a = fut_from_ht(LengthSpec::at_most(2), 2, t);
        const auto b = ht_from_fut(LengthSpec::at_most(2), 2, t);
        for (int i = 0; i < 50; ++i) {
            std::vector<u64> members;
            unsigned e = static_cast<unsigned>(rng() % 3);
            for (int j = 0; j < 4; ++j) {
                std::vector<u64> block;
                const unsigned len = 1 + static_cast<unsigned>(rng() % 3);
                for (unsigned q = 0; q < len; ++q) block.push_back(e++);
                members.push_back(encode_set(FiniteSet(block), t));
                e += static_cast<unsigned>(rng() % 2);
            }
            const auto h = apart(t, FiniteSet(members));
            const auto c = sets("const 0");
            const auto nd = nat("const 0");
            CHECK(b.apply_backward(a.apply_backward(h, c), nd).set() == h.set());
        }
    }
}

TEST_CASE("apartness base conversion") {
    const auto step = apartness_base_convert(LengthSpec::at_most(2), 2, 3, 2);
    const auto f = nat("const 0");
    const auto out = step.apply_backward(apart(3, {1, 9}), f);
    CHECK(out.set() == FiniteSet{1, 4});
    CHECK(check_apart(out.set().elements(), 2));
    CHECK(step.provenance == std::vector<std::string>{"htFromFut", "futFromHt"});
}

TEST_CASE("color doubling") {
    const auto step = color_doubling(2, 1);
    const auto g = step.apply_forward(nat("const 0", 1));
    CHECK(g.colors() == 2);
    CHECK(g.at(5) == 1);
    CHECK(g.at(4) == 0);
    CHECK(thin_by_least_exponent(FiniteSet{4, 13}) == FiniteSet{4});
    CHECK_THROWS_AS(step.apply_backward(Solution::plain({4, 13}), nat("const 0", 1)), ThinningError);

    // Every homogeneous set for the doubled coloring thins to a valid 3-apart set.
    for (const auto& f : {nat("summod 2 0 1"), nat("hash 4"), nat("popcount 2 0 1"), nat("digit 3 lambda 2 0 1")}) {
        const auto s = color_doubling(2, 2);
        SearchBudget b;
        b.target_size = 4;
        b.max_exponent = 40;
        const auto out = search_plain_homogeneous(s.apply_forward(f), LengthSpec::at_most(2), b);
        REQUIRE(out.found());
        const auto h = s.apply_backward(*out.solution, f);
        CHECK(verify_ht(f, LengthSpec::at_most(2), h.set(), 3).valid());
    }
}

TEST_CASE("exact sums from tuples") {
    const auto step = ht_exact_from_rt(2, 2);
    const auto c = step.apply_forward(nat("summod 2 0 1"));
    CHECK(c(std::vector<u64>{1, 4}) == 1);
    CHECK(step.apply_backward(Solution::plain({1, 4, 16}), nat("summod 2 0 1")).set() == FiniteSet{1, 4, 16});
    CHECK_THROWS_AS(step.apply_backward(Solution::plain({1, 3}), nat("summod 2 0 1")), DomainError);
}

TEST_CASE("pairs from exact sums") {
    const auto step = ipt_from_ht_eq2();
    const auto c = pair("summod 2 0 1");
    const auto f = step.apply_forward(c);
    CHECK(f.at(12) == 1);
    CHECK(f.at(8) == 0);
    const auto out = step.apply_backward(apart(2, {2, 12, 48, 320}), c);
    CHECK(out.parts == std::vector<FiniteSet>{{1, 4}, {3, 8}});
    CHECK(step.apply_backward(apart(2, {1, 2, 12, 48, 320}), c).parts == out.parts);
    CHECK_THROWS_AS(step.apply_backward(apart(2, {1, 2, 12, 48}), c), ShortSolutionError);
}

TEST_CASE("dividing sums") {
    const auto step = divide_sum(2, 4, 2);
    const auto f = nat("summod 2 0 1");
    CHECK(step.apply_backward(Solution::plain({1, 2, 4, 8, 16, 32}), f).set() == FiniteSet{3, 12, 48});
    CHECK(step.apply_backward(Solution::plain({1, 2, 4, 8, 16, 32, 64}), f).set() == FiniteSet{3, 12, 48});
    CHECK_THROWS_AS(step.apply_backward(Solution::plain({1, 2, 4}), f), ShortSolutionError);
    CHECK_THROWS_AS(divide_sum(2, 5, 2), DomainError);
}

TEST_CASE("polarized sums over carriers") {
    const FiniteSet s1{2, 32, 512};
    const FiniteSet s2{8, 128, 2048};
    const auto step = ipht_from_ipt(s1, s2);
    const auto c = step.apply_forward(nat("summod 2 0 1"));
    CHECK(c(std::vector<u64>{2, 8}) == 0);
    const auto sol = Solution::polarized({{2, 32}, {8, 128}});
    CHECK(step.apply_backward(sol, nat("summod 2 0 1")) == sol);
    CHECK_THROWS_AS(step.apply_backward(Solution::polarized({{4, 32}, {8, 128}}), nat("summod 2 0 1")), DomainError);
    CHECK_THROWS_AS(ipht_from_ipt(FiniteSet{2, 8}, FiniteSet{8, 32}), DomainError);
    for (const auto& cs : {default_carriers(), default_carriers(3)}) {
        std::vector<u64> all(cs[0].begin(), cs[0].end());
        all.insert(all.end(), cs[1].begin(), cs[1].end());
        std::sort(all.begin(), all.end());
        CHECK(check_apart(all, 2));
    }
}

TEST_CASE("interleaving") {
    CHECK(interleave(FiniteSet{2, 48}, FiniteSet{12, 320}) == std::vector<u64>{2, 12, 48, 320});
    CHECK(interleave(FiniteSet{1, 2, 48}, FiniteSet{12, 320}) == std::vector<u64>{2, 12, 48, 320});
    const auto step = ipt_from_ipht();
    const auto c = pair("summod 2 0 1");
    CHECK(step.apply_backward(Solution::polarized({{2, 48}, {12, 320}}), c).parts ==
          std::vector<FiniteSet>{{1, 4}, {3, 8}});
    CHECK_THROWS_AS(step.apply_backward(Solution::polarized({{48}, {12, 320}}), c), InterleaveError);
}

TEST_CASE("exactly large chunks") {
    const auto chunks = chunk_exactly_large(FiniteSet{2, 8, 32, 128});
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].sum == 42);
    CHECK(chunks[0].without_max == 10);
    const FiniteSet h{1, 2, 4, 8, 16, 32, 64, 128};
    const auto two = chunk_exactly_large(h);
    REQUIRE(two.size() == 2);
    CHECK(two[0].members == FiniteSet{1, 2});
    CHECK(two[1].members == FiniteSet{4, 8, 16, 32, 64});
    const auto step = ipht_from_ht_large();
    const auto f = nat("const 0");
    const auto out = step.apply_backward(apart(2, h), f);
    CHECK(out.parts == std::vector<FiniteSet>{{1, 60}, {2, 64}});
    CHECK(verify_polarized_ht(f, 2, out.parts, true, 2).valid());
    CHECK_THROWS_AS(step.apply_backward(apart(2, {2, 8, 32, 128}), f), ChunkError);
}

TEST_CASE("pigeonhole pairs") {
    CHECK(pigeonhole_pair(0b010) == std::pair{1u, 3u});
    for (unsigned color = 0; color < 8; ++color) {
        const auto [a, b] = pigeonhole_pair(color);
        CHECK(a < b);
        CHECK(b <= 3);
        CHECK(((color >> (3 - a)) & 1U) == ((color >> (3 - b)) & 1U));
    }
    CHECK_THROWS_AS(pigeonhole_pair(8), DomainError);

    const auto step = exists_pair_from_rt3();
    CHECK(step.apply_forward(nat("summod 2 0 1"))(std::vector<u64>{1, 4, 16}) == 7);
    // Popcount parity is homogeneous on powers of two with bits (1, 0, 1).
    const auto f = nat("popcount 2 0 1");
    const auto c = step.apply_forward(f);
    CHECK(c.colors() == 8);
    CHECK(c(std::vector<u64>{1, 4, 16}) == 5);
    Solution h = apart(2, {1, 4, 16, 64, 256});
    CHECK(verify_rt(c, 3, h.set()).valid());
    const auto out = step.apply_backward(h, f);
    REQUIRE(out.lengths.has_value());
    CHECK(*out.lengths == LengthSpec::explicit_set({1, 3}));
    CHECK(out.set() == FiniteSet{1, 4, 16});
    CHECK(verify(step.source, f, out).valid());
}

TEST_CASE("exactly large Ramsey pullback") {
    const auto step = ht_large_from_rt_large();
    const auto c = step.apply_forward(nat("summod 2 0 1"));
    CHECK(c.of(FiniteSet{1, 2}) == 1);
    CHECK(step.apply_backward(Solution::plain({1, 2, 4}), nat("summod 2 0 1")).set() == FiniteSet{1, 2, 4});
}

TEST_CASE("composition") {
    const auto a = fut_from_ht(LengthSpec::at_most(2), 2, 2);
    const auto id = identity_step(a.source);
    const auto c = sets("minmod 3 0 1 1", 2);
    const auto left = compose(id, a);
    const auto right = compose(a, identity_step(a.target));
    for (u64 n = 1; n < 64; ++n) {
        CHECK(left.apply_forward(c).at(n) == a.apply_forward(c).at(n));
        CHECK(right.apply_forward(c).at(n) == a.apply_forward(c).at(n));
    }
    CHECK_THROWS_AS(compose(a, a), CompositionError);
    CHECK_THROWS_AS(compose(std::vector<ReductionStep>{}), CompositionError);

    const auto b = ht_from_fut(LengthSpec::at_most(2), 2, 2);
    const auto x = fut_from_ht(LengthSpec::at_most(2), 2, 3);
    const auto one = compose(compose(a, b), x);
    const auto two = compose(a, compose(b, x));
    CHECK(one.id == two.id);
    CHECK(one.provenance == two.provenance);
    const Solution blocks = Solution::apart(ApartSet(3, {1, 9, 81}));
    CHECK(one.apply_backward(blocks, c) == two.apply_backward(blocks, c));
    for (u64 n = 1; n < 200; ++n) CHECK(one.apply_forward(c).at(n) == two.apply_forward(c).at(n));

    const auto chain = build_reduction("iptToHtLe2");
    CHECK(chain.source == PrincipleId::ipt(2, 2));
    CHECK(chain.target == PrincipleId::ht(LengthSpec::at_most(2), 4));
    CHECK(chain.provenance.size() == 5);
}

TEST_CASE("catalog") {
    for (const auto& e : reduction_catalog()) {
        const auto step = build_reduction(e.id);
        CHECK(step.id == e.id);
        CHECK_FALSE(step.anchor.empty());
    }
    CHECK_THROWS_AS(build_reduction("nope"), CatalogError);
    const auto bad = build_reduction("corruptedFixture");
    CHECK(bad.source == PrincipleId::ipt(2, 2));
}

TEST_CASE("apply_forward checks the instance") {
    const auto step = ipt_from_ht_eq2();
    CHECK_THROWS_AS(step.apply_forward(nat("const 0")), DomainError);
    CHECK_THROWS_AS(step.apply_forward(pair("const 0", 3)), DomainError);
}

TEST_CASE("range decoder at most two") {
    const auto f = Injection::shift(10);
    const auto h = decoder_set(f, LengthSpec::at_most(2), 8);
    const auto d = make_range_decoder(f, LengthSpec::at_most(2), h);
    CHECK(decode_le2(d, 3).verdict != Verdict::InRange);
    CHECK(decode_le2(d, least_exponent(h.max())).verdict == Verdict::Inconclusive);
    CHECK_THROWS_AS(decode_eq(d, 3), DomainError);
    CHECK_THROWS_AS(make_range_decoder(f, LengthSpec::at_most(2), FiniteSet{1, 3}), DomainError);
}

TEST_CASE("decoders agree with the range where they decide") {
    int decided_le2 = 0;
    int decided_eq3 = 0;
    for (const auto& f : injections()) {
        const auto d2 = make_range_decoder(f, LengthSpec::at_most(2), decoder_set(f, LengthSpec::at_most(2), 8));
        const auto d3 = make_range_decoder(f, LengthSpec::exactly(3), decoder_set(f, LengthSpec::exactly(3), 8));
        for (u64 x = 1; x <= 8; ++x) {
            CAPTURE(f.expression());
            CAPTURE(x);
            for (const auto& [r, counter] : {std::pair{decode_le2(d2, x), &decided_le2},
                                             std::pair{decode_eq(d3, x), &decided_eq3}}) {
                if (r.verdict == Verdict::Inconclusive) continue;
                ++*counter;
                CHECK((r.verdict == Verdict::InRange) == f.in_range(x));
            }
        }
    }
    CHECK(decided_le2 >= 10);
    CHECK(decided_eq3 >= 10);
}

TEST_CASE("decided verdicts answer the bounded question") {
    // Short sets can be monochromatic by accident; the verdict is still the
    // exact answer for arguments below the reported bound.
    for (const auto& f : injections()) {
        for (unsigned size : {5u, 6u}) {
            const auto d = make_range_decoder(f, LengthSpec::at_most(2), decoder_set(f, LengthSpec::at_most(2), size));
            for (u64 x = 1; x <= 8; ++x) {
                const auto r = decode_le2(d, x);
                if (r.verdict == Verdict::Inconclusive) continue;
                CHECK(x < least_exponent(*r.n));
                bool hit = false;
                for (u64 y = 1; y < *r.bound; ++y) hit = hit || f(y) == x;
                CHECK((r.verdict == Verdict::InRange) == hit);
            }
        }
    }
}

TEST_CASE("exactly large decoder") {
    const auto f = Injection::shift(10);
    const auto h = decoder_set(f, LengthSpec::exactly_large(), 8);
    const auto d = make_range_decoder(f, LengthSpec::exactly_large(), h);
    for (u64 x = 1; x <= 8; ++x) CHECK(decode_large(d, x).verdict != Verdict::InRange);
}

}  // TEST_SUITE
