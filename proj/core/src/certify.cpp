#include "hindman/certify.hpp"

#include "hindman/errors.hpp"

namespace hindman {

namespace {

FiniteSet powers_of_two(unsigned max_exponent) {
    std::vector<u64> v;
    for (unsigned e = 0; e <= std::min(max_exponent, 63u); ++e) v.push_back(u64{1} << e);
    return FiniteSet::from_sorted(std::move(v));
}

FiniteSet range_set(unsigned hi) {
    std::vector<u64> v;
    for (unsigned i = 0; i <= hi; ++i) v.push_back(i);
    return FiniteSet::from_sorted(std::move(v));
}

}  // namespace

SearchOutcome solve(const PrincipleId& p, const Coloring& instance, const SolveConfig& config) {
    const SearchBudget& b = config.budget;
    const SearchOptions& o = config.options;
    const FiniteSet ground = config.ground ? *config.ground : powers_of_two(b.max_exponent);
    switch (p.family) {
        case Family::HT:
            if (p.apart) return search_apart_homogeneous(instance, p.lengths, *p.apart, b, o);
            return search_plain_homogeneous(instance, p.lengths, b, o);
        case Family::FUT:
            return search_block_sequence(instance, p.lengths, b, o);
        case Family::RT:
            return search_tuple_homogeneous(instance, p.dimension, ground, b.target_size, o, b.max_nodes);
        case Family::RTLarge:
            return search_exactly_large_homogeneous(instance, ground, b.target_size, o, b.max_nodes);
        case Family::IPT: {
            auto carriers = config.carriers;
            if (carriers.empty()) carriers.assign(p.dimension, range_set(b.max_exponent));
            return search_increasing_polarized(instance, p.dimension, carriers, config.side_size, o, b.max_nodes);
        }
        case Family::IPHT: {
            auto carriers = config.carriers;
            if (carriers.empty()) {
                if (p.dimension != 2) throw DomainError("IPHT above dimension 2 needs explicit carriers");
                carriers = default_carriers();
            }
            const Coloring pulled = Coloring::sum_pullback(Arity::tuple(p.dimension), instance);
            auto out = search_increasing_polarized(pulled, p.dimension, carriers, config.side_size, o, b.max_nodes);
            if (out.solution && !verify(p, instance, *out.solution).valid()) {
                throw std::logic_error("polarized solution fails the IPHT verifier");
            }
            return out;
        }
        case Family::HTExistsPair: {
            SearchOutcome last;
            for (auto [a, c] : {std::pair{1U, 2U}, std::pair{1U, 3U}, std::pair{2U, 3U}}) {
                const auto spec = LengthSpec::explicit_set({a, c});
                last = p.apart ? search_apart_homogeneous(instance, spec, *p.apart, b, o)
                               : search_plain_homogeneous(instance, spec, b, o);
                if (last.found()) {
                    last.solution->lengths = spec;
                    return last;
                }
            }
            return last;
        }
        case Family::PHT:
            break;
    }
    throw DomainError("no search engine for " + p.to_string());
}

CertifyReport certify(const ReductionStep& step, std::span<const Coloring> instances, const SolveConfig& config) {
    CertifyReport report;
    auto fail = [&](std::size_t i, const Coloring& c, std::optional<Solution> ts, std::optional<Solution> pb,
                    std::string why) {
        ++report.failed;
        if (!report.first_failure) report.first_failure = CertifyFailure{i, c, std::move(ts), std::move(pb), std::move(why)};
    };
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const Coloring& inst = instances[i];
        ++report.instances;
        const Coloring fwd = step.apply_forward(inst);
        const auto outcome = solve(step.target, fwd, config);
        if (!outcome.found()) {
            ++report.unsolved;
            continue;
        }
        ++report.solved;
        Solution pulled;
        try {
            pulled = step.apply_backward(*outcome.solution, inst);
        } catch (const ShortSolutionError&) {
            ++report.too_short;
            continue;
        } catch (const InterleaveError&) {
            ++report.too_short;
            continue;
        } catch (const ChunkError&) {
            ++report.too_short;
            continue;
        } catch (const Error& e) {
            fail(i, inst, outcome.solution, std::nullopt, std::string("backward map failed: ") + e.what());
            continue;
        }
        VerificationReport vr;
        try {
            vr = verify(step.source, inst, pulled);
        } catch (const Error& e) {
            fail(i, inst, outcome.solution, pulled, std::string("verification error: ") + e.what());
            continue;
        }
        switch (vr.status) {
            case VerificationReport::Status::Valid: ++report.passed; break;
            case VerificationReport::Status::Vacuous: ++report.vacuous; break;
            case VerificationReport::Status::Invalid: fail(i, inst, outcome.solution, pulled, vr.to_string()); break;
        }
    }
    return report;
}

std::vector<Coloring> rule_catalog(Arity arity, unsigned k, std::size_t count) {
    std::vector<std::string> exprs;
    auto mod = [&](const std::string& name, unsigned m, unsigned shift) {
        std::string e = name + " " + std::to_string(m);
        for (unsigned i = 0; i < m; ++i) e += " " + std::to_string((i + shift) % k);
        exprs.push_back(e);
    };
    exprs.push_back("const 0");
    for (unsigned m = 2; m <= 5; ++m) mod("summod", m, 0);
    for (unsigned m = 2; m <= 4; ++m) mod("summod", m, 1);
    switch (arity.kind) {
        case Arity::Kind::Nat:
            for (unsigned m = 2; m <= 4; ++m) {
                mod("popcount", m, 0);
                mod("digit 2 lambda", m, 0);
                mod("digit 2 mu", m, 0);
                mod("digit 3 coef", m, 0);
                mod("digit 3 lambda", m, 1);
            }
            break;
        case Arity::Kind::Tuple:
        case Arity::Kind::Set:
            for (unsigned m = 2; m <= 4; ++m) {
                mod("minmod", m, 0);
                mod("maxmod", m, 0);
                mod("sizemod", m, 1);
            }
            mod("sumpull popcount", 2, 0);
            mod("sumpull digit 2 mu", 3, 0);
            break;
    }
    std::vector<Coloring> out;
    for (const auto& e : exprs) {
        if (out.size() == count) break;
        out.push_back(parse_rule(e, arity, k));
    }
    for (u64 seed = 1; out.size() < count; ++seed) out.push_back(Coloring::hash(arity, k, seed));
    return out;
}

}  // namespace hindman
