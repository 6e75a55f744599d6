#include "doctest.h"

#include "hindman/certify.hpp"
#include "hindman/errors.hpp"

using namespace hindman;

namespace {

SolveConfig config(unsigned size, unsigned max_exp) {
    SolveConfig cfg;
    cfg.budget.target_size = size;
    cfg.budget.max_exponent = max_exp;
    cfg.budget.max_nodes = 2'000'000;
    return cfg;
}

void check_clean(const ReductionStep& step, std::size_t count, const SolveConfig& cfg) {
    const auto instances = rule_catalog(step.source.instance_arity(), step.source.colors, count);
    const auto report = certify(step, instances, cfg);
    CAPTURE(step.id);
    CAPTURE(report.first_failure ? report.first_failure->reason : std::string());
    CHECK(report.instances == count);
    CHECK(report.ok());
    CHECK_FALSE(report.vacuous_run());
    CHECK(report.passed + report.vacuous + report.failed + report.unsolved + report.too_short == report.instances);
    CHECK(report.too_short < report.passed);
}

}  // namespace

TEST_SUITE("certify") {

TEST_CASE("rule catalog") {
    const auto a = rule_catalog(Arity::nat(), 2, 30);
    const auto b = rule_catalog(Arity::nat(), 2, 30);
    CHECK(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i].colors() == 2);
    }
    for (const auto& c : rule_catalog(Arity::set(), 3, 20)) CHECK(c.arity() == Arity::set());
    CHECK(rule_catalog(Arity::pair(), 2, 5).size() == 5);
}

TEST_CASE("solve dispatch") {
    const auto cfg = config(3, 10);
    const auto f = parse_rule("summod 2 0 1", Arity::nat(), 2);
    const auto ht = solve(PrincipleId::ht(LengthSpec::at_most(2), 2, 2), f, cfg);
    REQUIRE(ht.found());
    CHECK(verify(PrincipleId::ht(LengthSpec::at_most(2), 2, 2), f, *ht.solution).valid());
    const auto hte = solve(PrincipleId::ht_exists_pair(2), f, cfg);
    REQUIRE(hte.found());
    CHECK(verify(PrincipleId::ht_exists_pair(2), f, *hte.solution).valid());
    const auto c = parse_rule("summod 2 0 1", Arity::pair(), 2);
    const auto ipt = solve(PrincipleId::ipt(2, 2), c, cfg);
    REQUIRE(ipt.found());
    CHECK(verify(PrincipleId::ipt(2, 2), c, *ipt.solution).valid());
    CHECK_THROWS_AS(solve(PrincipleId::pht(2), f, cfg), DomainError);
}

TEST_CASE("transport steps certify") {
    check_clean(fut_from_ht(LengthSpec::at_most(2), 2, 2), 20, config(3, 12));
    check_clean(ht_from_fut(LengthSpec::at_most(2), 2, 3), 20, config(3, 10));
    check_clean(apartness_base_convert(LengthSpec::at_most(2), 2, 3, 2), 20, config(3, 8));
    check_clean(length_weakening(2, 2, 2), 20, config(3, 12));
}

TEST_CASE("sum steps certify") {
    check_clean(color_doubling(2, 2), 20, config(4, 40));
    check_clean(ht_exact_from_rt(2, 2), 20, config(4, 14));
    check_clean(divide_sum(2, 4, 2, 2), 12, config(8, 14));
    check_clean(exists_pair_from_rt3(), 12, config(5, 12));
    check_clean(ht_large_from_rt_large(), 12, config(5, 12));
}

TEST_CASE("polarized steps certify") {
    check_clean(ipt_from_ht_eq2(), 20, config(5, 14));
    auto over = config(2, 12);
    over.carriers = default_carriers();
    check_clean(ipht_from_ipt(over.carriers[0], over.carriers[1]), 12, over);
    auto cfg = config(2, 12);
    cfg.side_size = 3;
    check_clean(ipt_from_ipht(), 12, cfg);
}

TEST_CASE("corrupted fixture fails with a counterexample") {
    const auto bad = corrupted_fixture();
    const auto instances = rule_catalog(Arity::pair(), 2, 20);
    const auto report = certify(bad, instances, config(5, 14));
    CHECK_FALSE(report.ok());
    REQUIRE(report.first_failure.has_value());
    CHECK_FALSE(report.first_failure->reason.empty());
    CHECK(report.first_failure->target_solution.has_value());
}

TEST_CASE("exhausted searches are not passes") {
    const auto step = fut_from_ht(LengthSpec::at_most(2), 2, 2);
    const auto report = certify(step, rule_catalog(Arity::set(), 2, 5), config(6, 1));
    CHECK(report.unsolved == 5);
    CHECK(report.vacuous_run());
    CHECK(report.ok());
}

}  // TEST_SUITE
