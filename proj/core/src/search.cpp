#include "hindman/search.hpp"

#include "hindman/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace hindman {

std::string to_string(SearchOutcome::Status s) {
    switch (s) {
        case SearchOutcome::Status::Found: return "found";
        case SearchOutcome::Status::Exhausted: return "exhausted";
        case SearchOutcome::Status::CapHit: return "cap-hit";
    }
    return "?";
}

void emit_stats(std::ostream& os, const SearchOutcome& outcome) {
    os << "stat status=" << to_string(outcome.status) << '\n'
       << "stat nodes=" << outcome.stats.nodes << '\n'
       << "stat prunes=" << outcome.stats.prunes << '\n'
       << "stat overflow_prunes=" << outcome.stats.overflow_prunes << '\n'
       << "stat max_depth=" << outcome.stats.max_depth << '\n'
       << "stat bound=" << outcome.stats.bound << '\n';
}

namespace {

constexpr u64 kNone = std::numeric_limits<u64>::max();

struct LocalStats {
    u64 prunes = 0;
    u64 overflow_prunes = 0;
    unsigned max_depth = 0;
};

// One partial solution under construction. Candidates for the next member
// are produced in increasing order; push() reports whether the extended
// partial solution is still consistent and must be undone with pop()
// either way.
class Worker {
public:
    virtual ~Worker() = default;
    virtual std::optional<u64> first_candidate() const = 0;
    virtual std::optional<u64> next_candidate(u64 c) const = 0;
    virtual bool push(u64 c, LocalStats& st) = 0;
    virtual void pop() = 0;
    virtual std::size_t size() const = 0;
    virtual bool feasible() const { return true; }
    /// Final check on a complete candidate.
    virtual bool accept() = 0;
    virtual Solution solution() const = 0;
};

using WorkerFactory = std::function<std::unique_ptr<Worker>()>;

struct Shared {
    unsigned target = 0;
    u64 max_nodes = 0;
    std::atomic<u64> nodes{0};
    std::atomic<bool> cap{false};
    std::atomic<u64> best_top{kNone};
    std::atomic<u64> min_interrupted{kNone};
    std::mutex mutex;
    std::exception_ptr error;
    std::optional<Solution> best;
    LocalStats stats;
};

enum class Dfs { Found, Done, Interrupted };

bool take_node(Shared& sh) {
    if (sh.cap.load(std::memory_order_relaxed)) return false;
    if (sh.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > sh.max_nodes) {
        sh.cap.store(true);
        return false;
    }
    return true;
}

Dfs dfs(Worker& w, Shared& sh, u64 top, LocalStats& st) {
    if (w.size() == sh.target) return w.accept() ? Dfs::Found : Dfs::Done;
    if (!w.feasible()) return Dfs::Done;
    for (auto c = w.first_candidate(); c; c = w.next_candidate(*c)) {
        if (sh.best_top.load(std::memory_order_relaxed) < top) return Dfs::Done;
        if (!take_node(sh)) return Dfs::Interrupted;
        const bool ok = w.push(*c, st);
        st.max_depth = std::max<unsigned>(st.max_depth, static_cast<unsigned>(w.size()));
        if (!ok) {
            ++st.prunes;
            w.pop();
            continue;
        }
        const Dfs r = dfs(w, sh, top, st);
        if (r == Dfs::Found) return r;
        w.pop();
        if (r == Dfs::Interrupted) return r;
    }
    return Dfs::Done;
}

void atomic_min(std::atomic<u64>& a, u64 v) {
    u64 cur = a.load();
    while (v < cur && !a.compare_exchange_weak(cur, v)) {
    }
}

// Explores the first-member candidates in increasing order, optionally on
// several threads.
void run_pass(const WorkerFactory& factory, Shared& sh, unsigned jobs) {
    auto gen = factory();
    if (!gen->feasible()) return;
    std::mutex gen_mutex;
    std::optional<u64> next = gen->first_candidate();

    auto guarded = [&] {
        auto w = factory();
        LocalStats st;
        for (;;) {
            std::optional<u64> c;
            {
                std::lock_guard lock(gen_mutex);
                c = next;
                if (c) next = gen->next_candidate(*c);
            }
            if (!c || *c > sh.best_top.load()) break;
            if (!take_node(sh)) {
                atomic_min(sh.min_interrupted, *c);
                break;
            }
            const bool ok = w->push(*c, st);
            st.max_depth = std::max<unsigned>(st.max_depth, static_cast<unsigned>(w->size()));
            Dfs r = Dfs::Done;
            if (ok) {
                r = dfs(*w, sh, *c, st);
            } else {
                ++st.prunes;
            }
            if (r == Dfs::Found) {
                std::lock_guard lock(sh.mutex);
                if (*c < sh.best_top.load()) {
                    sh.best = w->solution();
                    sh.best_top.store(*c);
                }
            } else if (r == Dfs::Interrupted) {
                atomic_min(sh.min_interrupted, *c);
            }
            w->pop();
            if (r == Dfs::Interrupted) break;
        }
        std::lock_guard lock(sh.mutex);
        sh.stats.prunes += st.prunes;
        sh.stats.overflow_prunes += st.overflow_prunes;
        sh.stats.max_depth = std::max(sh.stats.max_depth, st.max_depth);
    };
    // Colorings may throw (a table evaluated outside its window); the first
    // error stops every thread and is rethrown to the caller.
    auto body = [&] {
        try {
            guarded();
        } catch (...) {
            std::lock_guard lock(sh.mutex);
            if (!sh.error) sh.error = std::current_exception();
            sh.cap.store(true);
        }
    };

    if (jobs <= 1) {
        body();
    } else {
        std::vector<std::jthread> threads;
        for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(body);
    }
    if (sh.error) std::rethrow_exception(sh.error);
}

// Runs passes for bounds lo..hi until one finds a solution or the cap hits.
SearchOutcome deepen(const std::function<WorkerFactory(unsigned)>& level, unsigned lo, unsigned hi, unsigned target,
                     u64 max_nodes, const SearchOptions& options) {
    Shared sh;
    sh.target = target;
    sh.max_nodes = max_nodes;
    SearchOutcome out;
    for (unsigned e = lo; e <= hi; ++e) {
        sh.best_top.store(kNone);
        sh.min_interrupted.store(kNone);
        sh.best.reset();
        out.stats.bound = e;
        if (target == 0) {
            sh.best_top.store(0);
        } else {
            run_pass(level(e), sh, std::max(1u, options.jobs));
        }
        const bool found = sh.best.has_value() && sh.min_interrupted.load() > sh.best_top.load();
        if (found) {
            out.status = SearchOutcome::Status::Found;
            out.solution = sh.best;
            break;
        }
        if (sh.cap.load()) {
            out.status = SearchOutcome::Status::CapHit;
            break;
        }
        if (target == 0) break;
    }
    if (target == 0 && !out.solution) {
        out.status = SearchOutcome::Status::Found;
        out.solution = Solution::plain(FiniteSet{});
    }
    out.stats.nodes = std::min(sh.nodes.load(), max_nodes);
    out.stats.prunes = sh.stats.prunes;
    out.stats.overflow_prunes = sh.stats.overflow_prunes;
    out.stats.max_depth = sh.stats.max_depth;
    if (options.log && out.stats.overflow_prunes > 0) {
        *options.log << "warn pruned " << out.stats.overflow_prunes << " branches whose sums leave the 64-bit range\n";
    }
    return out;
}

// --- finite sums ------------------------------------------------------------

using SumColor = std::function<std::optional<unsigned>(u64)>;

// Sets (or block encodings) whose admissible sums must share a color.
// Sums of j members are kept for j below the largest admissible length so
// that each push only forms the sums containing the new member.
class SumWorker final : public Worker {
public:
    struct Config {
        SumColor color;
        LengthSpec spec = LengthSpec::at_most(1);
        std::optional<u64> base;  // apart members when set
        u64 limit = 0;            // members are < limit
        unsigned bound = 0;       // largest usable exponent (apart mode)
        unsigned target = 0;
        bool prune = true;
        std::function<bool(const std::vector<u64>&)> leaf;
        std::function<Solution(const std::vector<u64>&)> make;
    };

    explicit SumWorker(const Config& cfg) : cfg_(cfg) {
        large_ = cfg_.spec.kind() == LengthSpec::Kind::ExactlyLarge;
        if (!large_) {
            len_ = *cfg_.spec.max_length();
            sums_.assign(len_, {});
            sums_[0].push_back(0);
        }
    }

    std::optional<u64> first_candidate() const override {
        if (members_.empty()) return 1 < cfg_.limit ? std::optional<u64>(1) : std::nullopt;
        const u64 s = step();
        if (s == 0) return std::nullopt;
        const u64 c = cfg_.base ? s : members_.back() + 1;
        if (c < cfg_.limit && c > members_.back()) return c;
        return std::nullopt;
    }

    std::optional<u64> next_candidate(u64 c) const override {
        const u64 s = members_.empty() ? 1 : step();
        if (s == 0 || c >= cfg_.limit || s >= cfg_.limit - c) return std::nullopt;
        return c + s;
    }

    bool push(u64 x, LocalStats& st) override {
        Frame fr;
        fr.sizes.reserve(sums_.size());
        for (const auto& v : sums_) fr.sizes.push_back(v.size());
        fr.mu = cfg_.base ? greatest_exponent(x, *cfg_.base) : 0;
        frames_.push_back(std::move(fr));
        members_.push_back(x);
        try {
            return large_ ? push_large(x) : push_finite(x);
        } catch (const OverflowError&) {
            ++st.overflow_prunes;
            return false;
        }
    }

    void pop() override {
        const Frame& fr = frames_.back();
        for (std::size_t j = 0; j < sums_.size(); ++j) sums_[j].resize(fr.sizes[j]);
        if (fr.set_color) color_.reset();
        frames_.pop_back();
        members_.pop_back();
    }

    std::size_t size() const override { return members_.size(); }

    bool feasible() const override {
        const u64 r = cfg_.target - members_.size();
        if (r == 0) return true;
        if (cfg_.base) {
            const u64 avail = members_.empty() ? u64{cfg_.bound} + 1 : u64{cfg_.bound} - frames_.back().mu;
            return r <= avail;
        }
        const u64 last = members_.empty() ? 0 : members_.back();
        return cfg_.limit > last && cfg_.limit - 1 - last >= r;
    }

    bool accept() override {
        if (cfg_.prune) return color_.has_value();
        try {
            return cfg_.leaf(members_);
        } catch (const OverflowError&) {
            return false;
        } catch (const DomainError&) {
            return false;
        }
    }

    Solution solution() const override { return cfg_.make(members_); }

private:
    struct Frame {
        std::vector<std::size_t> sizes;
        unsigned mu = 0;
        bool set_color = false;
    };

    u64 step() const {
        if (!cfg_.base) return 1;
        try {
            return checked_pow(*cfg_.base, frames_.back().mu + 1);
        } catch (const OverflowError&) {
            return 0;
        }
    }

    bool note(u64 sum) {
        if (!cfg_.prune) return true;
        const auto c = cfg_.color(sum);
        if (!c) return false;
        if (!color_) {
            color_ = *c;
            frames_.back().set_color = true;
            return true;
        }
        return *c == *color_;
    }

    bool push_finite(u64 x) {
        const auto& old = frames_.back().sizes;
        for (unsigned j = 0; j < len_; ++j) {
            for (std::size_t i = 0; i < old[j]; ++i) {
                const u64 s = checked_add(sums_[j][i], x);
                const unsigned len = j + 1;
                if (cfg_.spec.admits(len) && !note(s)) return false;
                if (len < len_) sums_[len].push_back(s);
            }
        }
        return true;
    }

    // Exactly large subsets whose greatest element is x.
    bool push_large(u64 x) {
        if (!cfg_.prune) return true;
        const std::size_t before = members_.size() - 1;
        for (std::size_t i = 0; i < before; ++i) {
            const u64 m = members_[i];
            const std::size_t rest = before - i - 1;
            if (m - 1 > rest) continue;
            const u64 base = checked_add(m, x);
            bool ok = true;
            for_each_combination(rest, m - 1, [&](std::span<const std::size_t> idx) {
                u64 s = base;
                for (std::size_t k : idx) s = checked_add(s, members_[i + 1 + k]);
                ok = note(s);
                return ok;
            });
            if (!ok) return false;
        }
        return true;
    }

    Config cfg_;
    bool large_ = false;
    unsigned len_ = 0;
    std::vector<u64> members_;
    std::vector<std::vector<u64>> sums_;
    std::vector<Frame> frames_;
    std::optional<unsigned> color_;
};

void check_spec(const LengthSpec& spec) {
    if (spec.kind() != LengthSpec::Kind::ExactlyLarge && (!spec.max_length() || *spec.max_length() == 0)) {
        throw DomainError("length specification admits no length");
    }
}

SearchOutcome sum_search(SumWorker::Config base_cfg, u64 t, bool apart, const SearchBudget& budget,
                         const SearchOptions& options) {
    if (budget.max_exponent > 62) throw DomainError("max exponent above 62");
    base_cfg.target = budget.target_size;
    base_cfg.prune = options.prune;
    auto level = [&](unsigned e) -> WorkerFactory {
        SumWorker::Config cfg = base_cfg;
        cfg.bound = e;
        if (apart) {
            cfg.base = t;
            try {
                cfg.limit = checked_pow(t, e + 1);
            } catch (const OverflowError&) {
                cfg.limit = kNone;
            }
        } else {
            cfg.limit = u64{1} << (e + 1);
        }
        return [cfg] { return std::make_unique<SumWorker>(cfg); };
    };
    return deepen(level, 0, budget.max_exponent, budget.target_size, budget.max_nodes, options);
}

void assert_sound(const SearchOutcome& out, const std::function<VerificationReport(const Solution&)>& check) {
    if (out.solution && !check(*out.solution).valid()) {
        throw std::logic_error("search produced a solution its verifier rejects");
    }
}

}  // namespace

SearchOutcome search_apart_homogeneous(const Coloring& f, const LengthSpec& spec, u64 t, const SearchBudget& budget,
                                       const SearchOptions& options) {
    if (t < 2) throw DomainError("apartness base must be at least 2");
    if (f.arity() != Arity::nat()) throw DomainError("finite-sum search needs a coloring of naturals");
    check_spec(spec);
    SumWorker::Config cfg;
    cfg.color = [f](u64 s) -> std::optional<unsigned> { return f.at(s); };
    cfg.spec = spec;
    cfg.leaf = [f, spec, t](const std::vector<u64>& m) {
        return verify_ht(f, spec, FiniteSet::from_sorted(m), t).valid();
    };
    cfg.make = [t](const std::vector<u64>& m) { return Solution::apart(ApartSet(t, FiniteSet::from_sorted(m))); };
    auto out = sum_search(cfg, t, true, budget, options);
    assert_sound(out, [&](const Solution& s) { return verify_ht(f, spec, s.set(), t); });
    return out;
}

SearchOutcome search_plain_homogeneous(const Coloring& f, const LengthSpec& spec, const SearchBudget& budget,
                                       const SearchOptions& options) {
    if (f.arity() != Arity::nat()) throw DomainError("finite-sum search needs a coloring of naturals");
    check_spec(spec);
    SumWorker::Config cfg;
    cfg.color = [f](u64 s) -> std::optional<unsigned> { return f.at(s); };
    cfg.spec = spec;
    cfg.leaf = [f, spec](const std::vector<u64>& m) { return verify_ht(f, spec, FiniteSet::from_sorted(m)).valid(); };
    cfg.make = [](const std::vector<u64>& m) { return Solution::plain(FiniteSet::from_sorted(m)); };
    auto out = sum_search(cfg, 2, false, budget, options);
    assert_sound(out, [&](const Solution& s) { return verify_ht(f, spec, s.set()); });
    return out;
}

namespace {

BlockSequence blocks_of(const std::vector<u64>& masks) {
    std::vector<FiniteSet> blocks;
    blocks.reserve(masks.size());
    for (u64 m : masks) blocks.push_back(support_set(m, 2));
    return BlockSequence(std::move(blocks));
}

}  // namespace

SearchOutcome search_block_sequence(const Coloring& c, const LengthSpec& spec, const SearchBudget& budget,
                                    const SearchOptions& options) {
    if (c.arity() != Arity::set()) throw DomainError("block search needs a coloring of finite sets");
    if (spec.kind() == LengthSpec::Kind::ExactlyLarge) throw DomainError("block search needs finite lengths");
    check_spec(spec);
    SumWorker::Config cfg;
    cfg.color = [c](u64 mask) -> std::optional<unsigned> { return c.of(support_set(mask, 2)); };
    cfg.spec = spec;
    cfg.leaf = [c, spec](const std::vector<u64>& m) { return verify_fut(c, spec, blocks_of(m)).valid(); };
    cfg.make = [](const std::vector<u64>& m) { return Solution::blocks(blocks_of(m)); };
    auto out = sum_search(cfg, 2, true, budget, options);
    assert_sound(out, [&](const Solution& s) { return verify_fut(c, spec, s.block_sequence()); });
    return out;
}

namespace {

// Candidates drawn from a fixed increasing ground list.
class GroundWorker : public Worker {
public:
    GroundWorker(const Coloring& c, std::vector<u64> ground, unsigned target, bool prune)
        : c_(c), ground_(std::move(ground)), target_(target), prune_(prune) {}

    std::optional<u64> first_candidate() const override {
        return members_.empty() ? first_in(ground_) : after(ground_, members_.back());
    }
    std::optional<u64> next_candidate(u64 c) const override { return after(ground_, c); }

    void pop() override {
        if (set_color_.back()) color_.reset();
        set_color_.pop_back();
        members_.pop_back();
    }

    std::size_t size() const override { return members_.size(); }

    bool feasible() const override {
        const std::size_t r = target_ - members_.size();
        const auto it = members_.empty() ? ground_.begin()
                                         : std::upper_bound(ground_.begin(), ground_.end(), members_.back());
        return static_cast<std::size_t>(ground_.end() - it) >= r;
    }

    Solution solution() const override { return Solution::plain(FiniteSet::from_sorted(members_)); }

protected:
    static std::optional<u64> first_in(const std::vector<u64>& g) {
        return g.empty() ? std::nullopt : std::optional<u64>(g.front());
    }
    static std::optional<u64> after(const std::vector<u64>& g, u64 x) {
        const auto it = std::upper_bound(g.begin(), g.end(), x);
        return it == g.end() ? std::nullopt : std::optional<u64>(*it);
    }

    void begin_push(u64 x) {
        members_.push_back(x);
        set_color_.push_back(false);
    }

    bool note(std::span<const u64> args) {
        const unsigned c = c_(args);
        if (!color_) {
            color_ = c;
            set_color_.back() = true;
            return true;
        }
        return c == *color_;
    }

    Coloring c_;
    std::vector<u64> ground_;
    unsigned target_;
    bool prune_;
    std::vector<u64> members_;
    std::vector<bool> set_color_;
    std::optional<unsigned> color_;
};

class TupleWorker final : public GroundWorker {
public:
    TupleWorker(const Coloring& c, unsigned n, std::vector<u64> ground, unsigned target, bool prune)
        : GroundWorker(c, std::move(ground), target, prune), n_(n) {}

    bool push(u64 x, LocalStats&) override {
        begin_push(x);
        if (!prune_) return true;
        const std::size_t before = members_.size() - 1;
        if (before + 1 < n_) return true;
        std::vector<u64> args(n_);
        bool ok = true;
        for_each_combination(before, n_ - 1, [&](std::span<const std::size_t> idx) {
            for (std::size_t k = 0; k < idx.size(); ++k) args[k] = members_[idx[k]];
            args[n_ - 1] = x;
            ok = note(args);
            return ok;
        });
        return ok;
    }

    bool accept() override {
        if (prune_) return color_.has_value();
        return verify_rt(c_, n_, FiniteSet::from_sorted(members_)).valid();
    }

private:
    unsigned n_;
};

class LargeWorker final : public GroundWorker {
public:
    using GroundWorker::GroundWorker;

    bool push(u64 x, LocalStats&) override {
        begin_push(x);
        if (!prune_) return true;
        const std::size_t before = members_.size() - 1;
        std::vector<u64> s;
        for (std::size_t i = 0; i < before; ++i) {
            const u64 m = members_[i];
            const std::size_t rest = before - i - 1;
            if (m - 1 > rest) continue;
            bool ok = true;
            for_each_combination(rest, m - 1, [&](std::span<const std::size_t> idx) {
                s.clear();
                s.push_back(m);
                for (std::size_t k : idx) s.push_back(members_[i + 1 + k]);
                s.push_back(x);
                ok = note(s);
                return ok;
            });
            if (!ok) return false;
        }
        return true;
    }

    bool accept() override {
        if (prune_) return color_.has_value();
        return verify_rt_large(c_, FiniteSet::from_sorted(members_)).valid();
    }
};

// Fills H_1, then H_2, ...; selections are only complete while filling H_n.
class PolarizedWorker final : public Worker {
public:
    PolarizedWorker(const Coloring& c, unsigned n, std::vector<std::vector<u64>> carriers, unsigned per_side,
                    bool prune)
        : c_(c), n_(n), carriers_(std::move(carriers)), per_(per_side), prune_(prune) {}

    std::optional<u64> first_candidate() const override {
        const std::size_t side = members_.size() / per_;
        const auto& g = carriers_[side];
        if (members_.size() % per_ == 0) return g.empty() ? std::nullopt : std::optional<u64>(g.front());
        return next_candidate(members_.back());
    }

    std::optional<u64> next_candidate(u64 c) const override {
        const auto& g = carriers_[members_.size() / per_];
        const auto it = std::upper_bound(g.begin(), g.end(), c);
        return it == g.end() ? std::nullopt : std::optional<u64>(*it);
    }

    bool push(u64 x, LocalStats&) override {
        const std::size_t side = members_.size() / per_;
        members_.push_back(x);
        set_color_.push_back(false);
        if (!prune_ || side + 1 != n_) return true;
        std::vector<u64> args(n_);
        args[n_ - 1] = x;
        return select(0, 0, x, args);
    }

    void pop() override {
        if (set_color_.back()) color_.reset();
        set_color_.pop_back();
        members_.pop_back();
    }

    std::size_t size() const override { return members_.size(); }

    bool feasible() const override {
        const std::size_t side = members_.size() / per_;
        if (side >= n_) return true;
        const std::size_t in_side = members_.size() % per_;
        const auto& g = carriers_[side];
        auto it = in_side == 0 ? g.begin() : std::upper_bound(g.begin(), g.end(), members_.back());
        return static_cast<std::size_t>(g.end() - it) >= per_ - in_side;
    }

    bool accept() override {
        if (prune_) return color_.has_value();
        return verify_ipt(c_, n_, parts()).valid();
    }

    Solution solution() const override { return Solution::polarized(parts()); }

private:
    std::vector<FiniteSet> parts() const {
        std::vector<FiniteSet> hs;
        for (unsigned i = 0; i < n_; ++i) {
            hs.push_back(FiniteSet::from_sorted({members_.begin() + i * per_, members_.begin() + (i + 1) * per_}));
        }
        return hs;
    }

    // Increasing selections from H_1..H_{n-1} below x.
    bool select(unsigned side, u64 floor, u64 x, std::vector<u64>& args) {
        if (side + 1 == n_) {
            const unsigned c = c_(args);
            if (!color_) {
                color_ = c;
                set_color_.back() = true;
                return true;
            }
            return c == *color_;
        }
        for (std::size_t i = side * per_; i < (side + 1) * per_; ++i) {
            const u64 v = members_[i];
            if ((side > 0 && v <= floor) || v >= x) continue;
            args[side] = v;
            if (!select(side + 1, v, x, args)) return false;
        }
        return true;
    }

    Coloring c_;
    unsigned n_;
    std::vector<std::vector<u64>> carriers_;
    unsigned per_;
    bool prune_;
    std::vector<u64> members_;
    std::vector<bool> set_color_;
    std::optional<unsigned> color_;
};

SearchOutcome single_pass(const WorkerFactory& factory, unsigned target, u64 max_nodes, const SearchOptions& options) {
    return deepen([&](unsigned) { return factory; }, 0, 0, target, max_nodes, options);
}

}  // namespace

SearchOutcome search_tuple_homogeneous(const Coloring& c, unsigned n, const FiniteSet& ground, unsigned target,
                                       const SearchOptions& options, u64 max_nodes) {
    if (n == 0) throw DomainError("tuple length must be positive");
    const Arity want = n == 1 ? Arity::nat() : Arity::tuple(n);
    if (c.arity() != want) throw DomainError("coloring arity does not match tuple length");
    if (target < n) throw DomainError("target size below tuple length");
    const std::vector<u64> g = ground.vector();
    const bool prune = options.prune;
    auto out = single_pass([&] { return std::make_unique<TupleWorker>(c, n, g, target, prune); }, target, max_nodes,
                           options);
    assert_sound(out, [&](const Solution& s) { return verify_rt(c, n, s.set()); });
    return out;
}

SearchOutcome search_exactly_large_homogeneous(const Coloring& c, const FiniteSet& ground, unsigned target,
                                               const SearchOptions& options, u64 max_nodes) {
    if (c.arity() != Arity::set()) throw DomainError("exactly large search needs a coloring of finite sets");
    const std::vector<u64> g = ground.vector();
    const bool prune = options.prune;
    auto out = single_pass([&] { return std::make_unique<LargeWorker>(c, g, target, prune); }, target, max_nodes,
                           options);
    assert_sound(out, [&](const Solution& s) { return verify_rt_large(c, s.set()); });
    return out;
}

SearchOutcome search_increasing_polarized(const Coloring& c, unsigned n, const std::vector<FiniteSet>& carriers,
                                          unsigned size_per_side, const SearchOptions& options, u64 max_nodes) {
    if (n < 2) throw DomainError("polarized search needs dimension at least 2");
    if (c.arity() != Arity::tuple(n)) throw DomainError("coloring arity does not match dimension");
    if (carriers.size() != n) throw DomainError("one carrier per coordinate required");
    if (size_per_side == 0) throw DomainError("sides must be non-empty");
    std::vector<std::vector<u64>> cs;
    for (const auto& s : carriers) cs.push_back(s.vector());
    const bool prune = options.prune;
    auto out = single_pass([&] { return std::make_unique<PolarizedWorker>(c, n, cs, size_per_side, prune); },
                           n * size_per_side, max_nodes, options);
    assert_sound(out, [&](const Solution& s) { return verify_ipt(c, n, s.parts); });
    return out;
}

// --- canonical colorings ------------------------------------------------------

u64 canonical_coloring_count(u64 domain_size, unsigned k) {
    if (domain_size == 0) return 1;
    if (k == 0) return 0;
    // Stirling numbers of the second kind, row by row, saturating.
    std::vector<u64> row(k + 1, 0);
    row[0] = 1;
    auto sat_add = [](u64 a, u64 b) { return a > kNone - b ? kNone : a + b; };
    auto sat_mul = [](u64 a, u64 b) { return b != 0 && a > kNone / b ? kNone : a * b; };
    for (u64 d = 1; d <= domain_size; ++d) {
        for (unsigned j = std::min<u64>(k, d); j >= 1; --j) row[j] = sat_add(sat_mul(j, row[j]), row[j - 1]);
        row[0] = 0;
        bool all_sat = false;
        for (unsigned j = 1; j <= k; ++j) all_sat = all_sat || row[j] == kNone;
        if (all_sat) return kNone;
    }
    u64 total = 0;
    for (unsigned j = 1; j <= k; ++j) total = sat_add(total, row[j]);
    return total;
}

void for_each_canonical_assignment(std::size_t domain_size, unsigned k, u64 cap,
                                   const std::function<bool(std::span<const unsigned>)>& visit) {
    const u64 count = canonical_coloring_count(domain_size, k);
    if (count > cap) {
        throw BudgetError("canonical coloring count " + (count == kNone ? std::string("overflows") : std::to_string(count)) +
                          " exceeds cap " + std::to_string(cap));
    }
    if (domain_size == 0) {
        visit({});
        return;
    }
    if (k == 0) return;
    std::vector<unsigned> a(domain_size, 0);
    std::vector<unsigned> top(domain_size, 0);  // max color among a[0..i]
    // Odometer over restricted growth strings.
    for (;;) {
        if (!visit(a)) return;
        std::size_t i = domain_size - 1;
        for (;;) {
            const unsigned limit = std::min(k - 1, (i == 0 ? 0u : top[i - 1]) + 1);
            if (i > 0 && a[i] < limit) break;
            if (i == 0) return;
            --i;
        }
        ++a[i];
        top[i] = std::max(top[i - 1], a[i]);
        for (std::size_t j = i + 1; j < domain_size; ++j) {
            a[j] = 0;
            top[j] = top[i];
        }
    }
}

void for_each_canonical_coloring(Arity arity, unsigned k, u64 lo, u64 hi, u64 cap,
                                 const std::function<bool(const Coloring&)>& visit,
                                 const std::optional<Coloring>& fallback) {
    const std::size_t d = Coloring::table_domain(arity, lo, hi).size();
    for_each_canonical_assignment(d, k, cap, [&](std::span<const unsigned> colors) {
        return visit(Coloring::table(arity, k, lo, hi, colors, fallback));
    });
}

u64 witness_number(const LengthSpec& spec, unsigned k, unsigned target_size, u64 t, const WitnessBudget& budget) {
    if (t < 2) throw DomainError("apartness base must be at least 2");
    if (k == 0) throw DomainError("at least one color required");
    check_spec(spec);
    for (u64 n = 1; n <= budget.max_n; ++n) {
        bool all = true;
        for_each_canonical_assignment(n, k, budget.max_colorings, [&](std::span<const unsigned> colors) {
            SumWorker::Config cfg;
            cfg.color = [colors](u64 s) -> std::optional<unsigned> {
                if (s == 0 || s > colors.size()) return std::nullopt;
                return colors[s - 1];
            };
            cfg.spec = spec;
            cfg.base = t;
            cfg.limit = n + 1;
            cfg.bound = greatest_exponent(n, t);
            cfg.target = target_size;
            cfg.prune = true;
            cfg.make = [t](const std::vector<u64>& m) { return Solution::plain(FiniteSet::from_sorted(m)); };
            SearchOptions opts;
            const auto out = single_pass([&] { return std::make_unique<SumWorker>(cfg); }, target_size, kNone, opts);
            all = out.found();
            return all;
        });
        if (all) return n;
    }
    throw BudgetError("no witness number up to " + std::to_string(budget.max_n));
}

}  // namespace hindman
