#include "doctest.h"

#include "../oracles.hpp"
#include "hindman/errors.hpp"
#include "hindman/numerics.hpp"

#include <random>

using namespace hindman;

TEST_SUITE("numerics") {

TEST_CASE("digit profiles") {
    DigitProfile p12(12, 2);
    REQUIRE(p12.digits().size() == 2);
    CHECK(p12.digits()[0] == Digit{2, 1});
    CHECK(p12.digits()[1] == Digit{3, 1});
    CHECK(p12.least_exponent() == 2);
    CHECK(p12.greatest_exponent() == 3);

    DigitProfile p5(5, 3);
    CHECK(p5.digits()[0] == Digit{0, 2});
    CHECK(p5.digits()[1] == Digit{1, 1});
    CHECK(p5.least_coefficient() == 2);

    DigitProfile p8(8, 2);
    CHECK(p8.is_single_term());
    CHECK(p8.least_exponent() == 3);
    CHECK(p8.greatest_exponent() == 3);

    CHECK_THROWS_AS(DigitProfile(0, 2), DomainError);
    CHECK_THROWS_AS(DigitProfile(5, 1), DomainError);
    CHECK_THROWS_AS(least_exponent(0), DomainError);
}

TEST_CASE("digit profiles agree with repeated division") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const u64 n = rng() >> (rng() % 63) | 1U;
        const u64 t = 2 + rng() % 9;
        DigitProfile p(n, t);
        const auto d = oracle::digits(n, t);
        REQUIRE(p.digits().size() == d.exponents.size());
        u64 back = 0;
        for (std::size_t j = 0; j < d.exponents.size(); ++j) {
            CHECK(p.digits()[j].exponent == d.exponents[j]);
            CHECK(p.digits()[j].coefficient == d.coefficients[j]);
            back += d.coefficients[j] * checked_pow(t, d.exponents[j]);
        }
        CHECK(back == n);
        CHECK(least_exponent(n, t) == d.exponents.front());
        CHECK(greatest_exponent(n, t) == d.exponents.back());
        CHECK(least_coefficient(n, t) == d.coefficients.front());
    }
    CHECK(greatest_exponent(~u64{0}) == 63);
    CHECK(least_exponent(u64{1} << 63) == 63);
}

TEST_CASE("checked arithmetic") {
    CHECK(checked_add(1, 2) == 3);
    CHECK_THROWS_AS(checked_add(~u64{0}, 1), OverflowError);
    CHECK_THROWS_AS(checked_mul(u64{1} << 40, u64{1} << 30), OverflowError);
    CHECK(checked_pow(3, 40) == 12157665459056928801ULL);
    CHECK_THROWS_AS(checked_pow(3, 41), OverflowError);
    CHECK(checked_pow(7, 0) == 1);
}

TEST_CASE("support and encoding") {
    CHECK(support_set(12, 2) == FiniteSet{2, 3});
    CHECK(support_set(9, 3) == FiniteSet{2});
    CHECK(support_set(1, 2) == FiniteSet{0});
    CHECK(encode_set({0, 3}, 2) == 9);
    CHECK(encode_set({2}, 3) == 9);
    CHECK(encode_set({1, 2, 4}, 2) == 22);
    CHECK_THROWS_AS(encode_set({}, 2), DomainError);
    CHECK_THROWS_AS(encode_set({64}, 2), OverflowError);
    CHECK_THROWS_AS(encode_set({41}, 3), OverflowError);
    CHECK_THROWS_AS(support_set(0, 2), DomainError);
}

TEST_CASE("support of an encoding is the identity") {
    std::mt19937_64 rng(11);
    for (u64 t : {2, 3, 5, 10}) {
        for (int i = 0; i < 300; ++i) {
            std::vector<u64> v;
            const unsigned cap = t == 2 ? 63 : t == 3 ? 40 : t == 5 ? 27 : 19;
            for (int j = 0; j < 1 + static_cast<int>(rng() % 8); ++j) v.push_back(rng() % cap);
            FiniteSet s(v);
            CHECK(support_set(encode_set(s, t), t) == s);
        }
    }
}

TEST_CASE("finite sets") {
    FiniteSet s{5, 1, 3, 3};
    CHECK(s.vector() == std::vector<u64>{1, 3, 5});
    CHECK(s.min() == 1);
    CHECK(s.max() == 5);
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(4));
    CHECK(to_string(s) == "{1,3,5}");
    CHECK_THROWS_AS(FiniteSet{}.min(), DomainError);
    CHECK_THROWS_AS(FiniteSet::from_sorted({2, 2}), DomainError);
    CHECK(FiniteSet{1, 2} < FiniteSet{1, 3});
}

TEST_CASE("length specs parse and print") {
    for (const char* text : {"<=2", "=3", "{1,3}", "!w", "all:5"}) {
        CHECK(LengthSpec::parse(text).to_string() == text);
    }
    CHECK(LengthSpec::parse("<=2") == LengthSpec::at_most(2));
    CHECK(LengthSpec::at_most(3).admits(1));
    CHECK_FALSE(LengthSpec::exactly(3).admits(2));
    CHECK(LengthSpec::explicit_set({3, 1}).admits(3));
    CHECK_FALSE(LengthSpec::exactly_large().admits(2));
    CHECK(LengthSpec::all_up_to(4).max_length() == 4u);
    CHECK_FALSE(LengthSpec::exactly_large().max_length().has_value());
    for (const char* bad : {"", "<=0", "=x", "{}", "{0}", "<=", "all:", "?"}) {
        CHECK_THROWS_AS(LengthSpec::parse(bad), ParseError);
    }
    CHECK_THROWS_AS(LengthSpec::at_most(0), DomainError);
}

TEST_CASE("finite sums") {
    CHECK(enumerate_sums({1, 4, 16}, LengthSpec::at_most(2)) == FiniteSet{1, 4, 5, 16, 17, 20});
    CHECK(enumerate_sums({1, 2, 4}, LengthSpec::exactly(2)) == FiniteSet{3, 5, 6});
    // Exactly large subsets of {1,2,8}: {1,2} and {1,8}; {1,2,8} has minimum 1 but three elements.
    CHECK(enumerate_sums({1, 2, 8}, LengthSpec::exactly_large()) == FiniteSet{3, 9});
    CHECK_THROWS_AS(enumerate_sums({}, LengthSpec::at_most(1)), DomainError);
    CHECK_THROWS_AS(enumerate_sums({~u64{0}, 5}, LengthSpec::exactly(2)), OverflowError);
}

TEST_CASE("finite sums agree with the subset oracle") {
    std::mt19937_64 rng(3);
    const std::vector<LengthSpec> specs = {LengthSpec::at_most(1), LengthSpec::at_most(3), LengthSpec::exactly(2),
                                           LengthSpec::exactly(4), LengthSpec::explicit_set({1, 3}),
                                           LengthSpec::exactly_large(), LengthSpec::all_up_to(10)};
    for (int i = 0; i < 200; ++i) {
        std::vector<u64> v;
        const int n = 1 + static_cast<int>(rng() % 10);
        for (int j = 0; j < n; ++j) v.push_back(1 + rng() % (i % 2 ? 12 : 1000));
        FiniteSet b(v);
        for (const auto& spec : specs) {
            const auto want = oracle::sums(b.vector(), spec);
            const auto got = enumerate_sums(b, spec);
            CHECK(std::vector<u64>(want.begin(), want.end()) == got.vector());
        }
    }
}

TEST_CASE("exactly large sets") {
    CHECK(is_exactly_large(FiniteSet{1, 2}));
    CHECK(is_exactly_large(FiniteSet{2, 5, 9}));
    CHECK_FALSE(is_exactly_large(FiniteSet{3, 4}));
    CHECK_THROWS_AS(is_exactly_large(FiniteSet{}), DomainError);
    int count = 0;
    const std::vector<u64> ground{1, 2, 3, 4, 5};
    for_each_exactly_large_subset(ground, [&](std::span<const u64> s) {
        CHECK(s.size() == s.front() + 1);
        ++count;
        return true;
    });
    // min 1: C(4,1) = 4; min 2: C(3,2) = 3; min 3: C(2,3) = 0.
    CHECK(count == 7);
}

TEST_CASE("combinations are lexicographic") {
    std::vector<std::vector<std::size_t>> seen;
    for_each_combination(4, 2, [&](std::span<const std::size_t> c) {
        seen.emplace_back(c.begin(), c.end());
        return true;
    });
    CHECK(seen.size() == 6);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(for_each_combination(3, 0, [](auto) { return true; }));
}

TEST_CASE("apartness") {
    const std::vector<u64> good{1, 4, 48};
    CHECK(check_apart(good, 2).apart);
    const std::vector<u64> bad{2, 3};
    const auto r = check_apart(bad, 2);
    CHECK_FALSE(r.apart);
    REQUIRE(r.violation.has_value());
    CHECK(r.violation->first == 2);
    CHECK(r.violation->second == 3);
    const std::vector<u64> three{1, 9};
    CHECK(check_apart(three, 3).apart);
    const std::vector<u64> unsorted{4, 1};
    CHECK_THROWS_AS(check_apart(unsorted, 2), DomainError);
    const std::vector<u64> zero{0, 4};
    CHECK_THROWS_AS(check_apart(zero, 2), DomainError);
    CHECK_THROWS_AS(ApartSet(2, FiniteSet{2, 3}), DomainError);
}

TEST_CASE("apartness agrees with the digit oracle") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 3000; ++i) {
        std::vector<u64> v;
        for (int j = 0; j < 2 + static_cast<int>(rng() % 3); ++j) v.push_back(1 + rng() % 300);
        FiniteSet s(v);
        for (u64 t : {2, 3}) CHECK(check_apart(s.elements(), t).apart == oracle::apart(s.vector(), t));
    }
}

TEST_CASE("block sequences and unions") {
    CHECK_THROWS_AS(BlockSequence({FiniteSet{1, 5}, FiniteSet{3}}), DomainError);
    CHECK_THROWS_AS(BlockSequence({FiniteSet{}}), DomainError);
    using V = std::vector<FiniteSet>;
    CHECK(enumerate_unions(BlockSequence({{1}, {3, 4}}), LengthSpec::exactly(2)) == V{{1, 3, 4}});
    CHECK(enumerate_unions(BlockSequence({{1}, {3}}), LengthSpec::at_most(2)) == V{{1}, {3}, {1, 3}});
    CHECK(enumerate_unions(BlockSequence({{0, 1}, {5}, {7, 9}}), LengthSpec::exactly(2)) ==
          V{{0, 1, 5}, {0, 1, 7, 9}, {5, 7, 9}});
    CHECK_THROWS_AS(enumerate_unions(BlockSequence(std::vector<FiniteSet>{FiniteSet{1}}), LengthSpec::exactly_large()), DomainError);
}

}  // TEST_SUITE
