#pragma once

// Brute-force reference implementations. These deliberately avoid the
// library's enumerators and incremental bookkeeping: everything is
// recomputed from definitions by repeated division and full subset scans.

#include "hindman/coloring.hpp"
#include "hindman/numerics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using hindman::u64;

struct Digits {
    std::vector<unsigned> exponents;
    std::vector<u64> coefficients;
};

inline Digits digits(u64 n, u64 t) {
    Digits d;
    for (unsigned e = 0; n > 0; ++e, n /= t) {
        if (n % t != 0) {
            d.exponents.push_back(e);
            d.coefficients.push_back(n % t);
        }
    }
    return d;
}

inline unsigned lambda(u64 n, u64 t = 2) { return digits(n, t).exponents.front(); }
inline unsigned mu(u64 n, u64 t = 2) { return digits(n, t).exponents.back(); }

inline bool apart(const std::vector<u64>& h, u64 t) {
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (!(h[i - 1] < h[i]) || !(mu(h[i - 1], t) < lambda(h[i], t))) return false;
    }
    return true;
}

inline bool exactly_large(const std::vector<u64>& s) { return !s.empty() && s.size() == s.front() + 1; }

/// Every subset of b (|b| <= 20) with its sum, in bitmask order.
inline void subsets(const std::vector<u64>& b, const std::function<void(const std::vector<u64>&, u64)>& visit) {
    const std::size_t n = b.size();
    for (u64 mask = 1; mask < (u64{1} << n); ++mask) {
        std::vector<u64> s;
        u64 sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1U) {
                s.push_back(b[i]);
                sum += b[i];
            }
        }
        visit(s, sum);
    }
}

inline bool admits(const hindman::LengthSpec& spec, const std::vector<u64>& s) {
    if (spec.kind() == hindman::LengthSpec::Kind::ExactlyLarge) return exactly_large(s);
    return spec.admits(static_cast<unsigned>(s.size()));
}

inline std::set<u64> sums(const std::vector<u64>& b, const hindman::LengthSpec& spec) {
    std::set<u64> out;
    subsets(b, [&](const std::vector<u64>& s, u64 sum) {
        if (admits(spec, s)) out.insert(sum);
    });
    return out;
}

/// Whether f is constant on the admissible sums of h (false if none).
inline bool homogeneous(const hindman::Coloring& f, const hindman::LengthSpec& spec, const std::vector<u64>& h) {
    std::set<unsigned> colors;
    for (u64 s : sums(h, spec)) colors.insert(f.at(s));
    return colors.size() == 1;
}

/// Important-digit parity straight from the definition.
inline unsigned important_parity(const std::function<u64(u64)>& f, u64 n) {
    const auto ex = digits(n, 2).exponents;
    unsigned count = 0;
    u64 prev = 0;
    for (unsigned nj : ex) {
        bool important = false;
        for (u64 y = std::max<u64>(prev, 1); y < nj; ++y) {
            if (f(y) < ex.front()) important = true;
        }
        if (important) ++count;
        prev = nj;
    }
    return count % 2;
}

/// All t-apart sets of the given size with members below limit.
inline void apart_sets(u64 t, u64 limit, std::size_t size, const std::function<void(const std::vector<u64>&)>& visit) {
    std::vector<u64> cur;
    std::function<void(u64)> rec = [&](u64 from) {
        if (cur.size() == size) {
            visit(cur);
            return;
        }
        for (u64 x = from; x < limit; ++x) {
            if (!cur.empty() && !(mu(cur.back(), t) < lambda(x, t))) continue;
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

/// Least homogeneous t-apart set: smallest greatest exponent of the largest
/// member first, then lexicographic.
inline std::optional<std::vector<u64>> least_apart_homogeneous(const hindman::Coloring& f,
                                                               const hindman::LengthSpec& spec, u64 t,
                                                               std::size_t size, unsigned max_exponent) {
    u64 limit = 1;
    for (unsigned i = 0; i <= max_exponent; ++i) limit *= t;
    std::optional<std::vector<u64>> best;
    std::optional<unsigned> best_level;
    apart_sets(t, limit, size, [&](const std::vector<u64>& h) {
        if (!homogeneous(f, spec, h)) return;
        const unsigned level = mu(h.back(), t);
        if (!best || level < *best_level || (level == *best_level && h < *best)) {
            best = h;
            best_level = level;
        }
    });
    return best;
}

/// Number of distinct maps [0, d) -> [0, k) up to color permutation.
inline u64 orbit_count(std::size_t d, unsigned k) {
    std::set<std::vector<unsigned>> reps;
    std::vector<unsigned> a(d, 0);
    for (;;) {
        std::map<unsigned, unsigned> relabel;
        std::vector<unsigned> canon;
        for (unsigned c : a) {
            auto [it, _] = relabel.emplace(c, static_cast<unsigned>(relabel.size()));
            canon.push_back(it->second);
        }
        reps.insert(canon);
        std::size_t i = 0;
        while (i < d && ++a[i] == k) a[i++] = 0;
        if (i == d) break;
    }
    return reps.size();
}

}  // namespace oracle
