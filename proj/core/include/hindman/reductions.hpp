#pragma once

// Strong computable reductions as (instance-forward, solution-backward)
// pairs, and the range decoders that read the range of an injection off a
// monochromatic apart set.

#include "hindman/coloring.hpp"
#include "hindman/numerics.hpp"
#include "hindman/principles.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hindman {

/// Solves `source` instances by solving `target` instances. backward takes
/// a target solution together with the original source instance.
struct ReductionStep {
    std::string id;
    PrincipleId source;
    PrincipleId target;
    std::function<Coloring(const Coloring&)> forward;
    std::function<Solution(const Solution&, const Coloring&)> backward;
    /// Ids of the primitive steps, in application order of forward.
    std::vector<std::string> provenance;
    /// Short statement of the result the step realizes.
    std::string anchor;

    /// forward, after checking that the instance fits the source principle.
    Coloring apply_forward(const Coloring& instance) const;
    Solution apply_backward(const Solution& target_solution, const Coloring& instance) const;
};

/// P reduces to itself.
ReductionStep identity_step(const PrincipleId& p);

/// forward = b.forward after a.forward, backward = a.backward after
/// b.backward. CompositionError unless a.target == b.source.
ReductionStep compose(const ReductionStep& a, const ReductionStep& b);
ReductionStep compose(const std::vector<ReductionStep>& chain);

/// FUT^{spec}_k to HT^{spec}_k with t-apartness: d = c(supp_t(.)),
/// H -> (supp_t(h)).
ReductionStep fut_from_ht(const LengthSpec& spec, unsigned k, u64 t);
/// HT^{spec}_k with t-apartness to FUT^{spec}_k: c(S) = d(enc_t S),
/// (S_i) -> {enc_t S_i}.
ReductionStep ht_from_fut(const LengthSpec& spec, unsigned k, u64 t);
/// HT^{spec}_k with s-apartness to HT^{spec}_k with t-apartness.
ReductionStep apartness_base_convert(const LengthSpec& spec, unsigned k, u64 t, u64 s);
/// HT^{=n}_k to HT^{<=n}_k under the same apartness; both maps are identities.
ReductionStep length_weakening(unsigned n, unsigned k, std::optional<u64> apart);

/// HT^{<=n}_k with 3-apartness to HT^{<=n}_{2k} (no apartness). backward
/// asserts that no two members share a base-3 least exponent (ThinningError
/// otherwise) and keeps a 3-apart subsequence chosen greedily from the least
/// member.
ReductionStep color_doubling(unsigned n, unsigned k);

/// Keeps the least member of each base-t least-exponent class.
FiniteSet thin_by_least_exponent(const FiniteSet& h, u64 t = 3);

/// HT^{=n}_k with t-apartness to RT^n_k: c(a_1..a_n) = f(a_1 + ... + a_n).
/// The target search must run over a t-apart ground set; backward rechecks
/// apartness (DomainError).
ReductionStep ht_exact_from_rt(unsigned n, unsigned k, u64 t = 2);

/// IPT^2_2 to HT^{=2}_2 with 2-apartness.
ReductionStep ipt_from_ht_eq2();

/// HT^{=n}_k to HT^{=m}_k for n | m: sums of consecutive disjoint blocks of
/// d = m/n members. DomainError if |H| < d n.
ReductionStep divide_sum(unsigned n, unsigned m, unsigned k, std::optional<u64> apart = std::nullopt);

/// IPHT^2_2 with 2-apartness to IPT^2_2, relativized to the disjoint apart
/// carriers: c(x, y) = f(x + y). backward checks containment in the
/// carriers (DomainError) and the apartness of the union.
ReductionStep ipht_from_ipt(const FiniteSet& s1, const FiniteSet& s2);

/// IPT^2_2 to IPHT^2_2 with 2-apartness. backward interleaves an
/// alternating chain (InterleaveError if shorter than four) and extracts
/// least and greatest exponents.
ReductionStep ipt_from_ipht();

/// IPHT^2_2 with 2-apartness to HT^{!w}_2 with 2-apartness. backward chunks
/// H into consecutive exactly large sets (ChunkError if fewer than two).
ReductionStep ipht_from_ht_large();

/// HT^{exists {a<b}}_2 with 2-apartness to RT^3_8 over an apart ground set.
ReductionStep exists_pair_from_rt3();

/// HT^{!w}_2 with 2-apartness to the exactly large set Ramsey principle
/// over an apart ground set: c(S) = f(sum S).
ReductionStep ht_large_from_rt_large();

/// Pair returned by the pigeonhole backward map for a color bit-triple.
std::pair<unsigned, unsigned> pigeonhole_pair(unsigned color);

/// Alternating chain h_1 < h_2 < ... with odd positions from H_1 and even
/// positions from H_2, greedy from the least element of H_1 with a
/// positive least exponent.
std::vector<u64> interleave(const FiniteSet& h1, const FiniteSet& h2);

struct Chunk {
    FiniteSet members;
    u64 sum = 0;            ///< s_i
    u64 without_max = 0;    ///< t_i = s_i - max(S_i)
};

/// Greedy decomposition of H into consecutive exactly large chunks; the
/// trailing remainder is dropped.
std::vector<Chunk> chunk_exactly_large(const FiniteSet& h);

// --- catalog -------------------------------------------------------------------

struct StepParams {
    LengthSpec spec = LengthSpec::at_most(2);
    unsigned k = 2;
    unsigned n = 2;
    unsigned m = 4;
    u64 t = 2;
    u64 s = 3;
    /// Carriers for ipht-from-ipt.
    std::vector<FiniteSet> carriers;
};

struct CatalogEntry {
    std::string id;
    std::string description;
    std::function<ReductionStep(const StepParams&)> build;
};

const std::vector<CatalogEntry>& reduction_catalog();

/// CatalogError for unknown ids.
ReductionStep build_reduction(std::string_view id, const StepParams& params = {});

/// Default disjoint apart carriers {2^(1+4i)} and {2^(3+4i)}, i < count.
std::vector<FiniteSet> default_carriers(unsigned count = 6);

/// ipt-from-ht-eq2 with the roles of least and greatest exponents swapped
/// in backward. Used as a negative control.
ReductionStep corrupted_fixture();

// --- range decoders --------------------------------------------------------------

enum class Verdict { InRange, NotInRange, Inconclusive };
std::string to_string(Verdict v);

/// An injection, its important-parity coloring g, and a 2-apart H on which
/// g is monochromatic for the length spec.
struct RangeDecoder {
    Injection f;
    Coloring g;
    LengthSpec spec;
    FiniteSet h;
    unsigned color = 0;
};

/// DomainError unless H is 2-apart and g-monochromatic for spec.
RangeDecoder make_range_decoder(const Injection& f, const LengthSpec& spec, const FiniteSet& h);

struct DecodeResult {
    Verdict verdict = Verdict::Inconclusive;
    /// The prefix sum n and, for the sum decoders, the partner k.
    std::optional<u64> n;
    std::optional<u64> k;
    /// The answer is whether x = f(y) for some 1 <= y < bound.
    std::optional<u64> bound;
};

/// Spec AtMost(2). Smallest n in H with x < lambda(n); bound mu(n).
DecodeResult decode_le2(const RangeDecoder& d, u64 x);
/// Spec Exactly(a), a >= 3. n is the sum of a - 2 consecutive members
/// starting at the first h with x < lambda(h); k is the first later member
/// with g(n + k) = color; bound mu(k).
DecodeResult decode_eq(const RangeDecoder& d, u64 x);
/// Spec ExactlyLarge. As decode_eq with the prefix h plus the next h - 2
/// members.
DecodeResult decode_large(const RangeDecoder& d, u64 x);

}  // namespace hindman
