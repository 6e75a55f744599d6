// hindman: command-line front end for the solvers, verifiers, reductions,
// certification sweeps, range decoders and witness numbers.
//
// Reports go to stdout as "key value" lines and are byte-identical across
// runs with the same flags. Timing and search statistics go to stderr.
// Exit codes: 0 success, 1 negative outcome, 2 usage or input error.

#include "hindman/certify.hpp"
#include "hindman/errors.hpp"
#include "hindman/io.hpp"
#include "hindman/reductions.hpp"
#include "hindman/search.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace hindman;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string principle = "HT";
    std::string len = "<=2";
    unsigned colors = 2;
    unsigned dim = 2;
    u64 apart = 2;
    bool plain = false;
    std::string rule;
    std::string in;
    std::string out;
    std::string solution;
    unsigned size = 4;
    unsigned max_exp = 20;
    u64 max_nodes = 50'000'000;
    unsigned jobs = 1;
    bool no_prune = false;
    unsigned side = 2;

    // reductions
    std::string id;
    unsigned n = 2;
    unsigned m = 4;
    u64 t = 2;
    u64 s = 3;
    std::size_t count = 20;
    std::optional<unsigned> window;
    std::string fallback;
    u64 max_colorings = 1'000'000;

    // decode and number
    std::string mode = "le2";
    unsigned a = 3;
    std::string injection = "identity";
    u64 x = 1;
    u64 max_n = 64;
};

class Report {
public:
    void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
    void add(const std::string& key, u64 value) { add(key, std::to_string(value)); }
    void print(std::ostream& os) const {
        for (const auto& [k, v] : lines_) os << k << (v.empty() ? "" : " ") << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

class Timer {
public:
    ~Timer() {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        std::cerr << "stat elapsed_ms=" << static_cast<u64>(ms) << '\n';
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string echo(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += ' ';
        const std::string a = argv[i];
        s += a.find_first_of(" \t\"'<>{}!|&;$*?()") == std::string::npos && !a.empty() ? a : '"' + a + '"';
    }
    return s;
}

std::optional<u64> apart_base(const Flags& f) {
    if (f.plain) return std::nullopt;
    return f.apart;
}

PrincipleId principle_from(const Flags& f) {
    switch (parse_family(f.principle)) {
        case Family::HT: return PrincipleId::ht(LengthSpec::parse(f.len), f.colors, apart_base(f));
        case Family::FUT: return PrincipleId::fut(LengthSpec::parse(f.len), f.colors);
        case Family::RT: return PrincipleId::rt(f.dim, f.colors);
        case Family::IPT: return PrincipleId::ipt(f.dim, f.colors);
        case Family::IPHT: return PrincipleId::ipht(f.dim, apart_base(f));
        case Family::PHT: return PrincipleId::pht(f.dim);
        case Family::HTExistsPair: return PrincipleId::ht_exists_pair(apart_base(f));
        case Family::RTLarge: return PrincipleId::rt_large(f.colors);
    }
    throw UsageError("unknown principle");
}

Coloring load_instance(const Flags& f, Arity arity, unsigned k) {
    if (!f.rule.empty() && !f.in.empty()) throw UsageError("give either --rule or --in, not both");
    if (!f.in.empty()) {
        Coloring c = read_coloring(read_file(f.in));
        if (c.arity() != arity || c.colors() != k) {
            throw DomainError("instance is a " + c.arity().to_string() + " coloring with " +
                              std::to_string(c.colors()) + " colors, expected " + arity.to_string() + " with " +
                              std::to_string(k));
        }
        return c;
    }
    if (f.rule.empty()) throw UsageError("an instance is required (--rule or --in)");
    return parse_rule(f.rule, arity, k);
}

void emit(const Flags& f, const std::string& text) {
    if (!f.out.empty()) write_file(f.out, text);
}

SolveConfig solve_config(const Flags& f) {
    SolveConfig cfg;
    cfg.budget.target_size = f.size;
    cfg.budget.max_exponent = f.max_exp;
    cfg.budget.max_nodes = f.max_nodes;
    cfg.options.jobs = f.jobs;
    cfg.options.prune = !f.no_prune;
    cfg.options.log = &std::cerr;
    cfg.side_size = f.side;
    return cfg;
}

std::string budget_line(const Flags& f) {
    std::ostringstream os;
    os << "size=" << f.size << " max_exp=" << f.max_exp << " max_nodes=" << f.max_nodes << " jobs=" << f.jobs
       << " prune=" << (f.no_prune ? 0 : 1);
    return os.str();
}

StepParams step_params(const Flags& f) {
    StepParams p;
    p.spec = LengthSpec::parse(f.len);
    p.k = f.colors;
    p.n = f.n;
    p.m = f.m;
    p.t = f.t;
    p.s = f.s;
    return p;
}

// --- commands ------------------------------------------------------------------

int cmd_solve(const Flags& f, Report& r) {
    const PrincipleId p = principle_from(f);
    const Coloring inst = load_instance(f, p.instance_arity(), p.colors);
    r.add("principle", p.to_string());
    r.add("instance", inst.expression());
    r.add("budget", budget_line(f));
    const auto outcome = solve(p, inst, solve_config(f));
    emit_stats(std::cerr, outcome);
    r.add("status", to_string(outcome.status));
    if (!outcome.found()) return 1;
    r.add("solution", render(*outcome.solution));
    emit(f, write_solution(*outcome.solution));
    return 0;
}

int cmd_verify(const Flags& f, Report& r) {
    const PrincipleId p = principle_from(f);
    const Coloring inst = load_instance(f, p.instance_arity(), p.colors);
    if (f.solution.empty()) throw UsageError("--solution is required");
    const Solution sol = read_solution(read_file(f.solution));
    r.add("principle", p.to_string());
    r.add("instance", inst.expression());
    r.add("solution", render(sol));
    const auto report = verify(p, inst, sol);
    r.add("verdict", report.to_string());
    return report.valid() ? 0 : 1;
}

int cmd_catalog(const Flags&, Report& r) {
    for (const auto& e : reduction_catalog()) {
        const auto step = e.build({});
        r.add("reduction", e.id + "\t" + step.source.to_string() + "\t" + step.target.to_string() + "\t" + step.anchor);
    }
    return 0;
}

int cmd_reduce(const Flags& f, Report& r) {
    const auto step = build_reduction(f.id, step_params(f));
    const Coloring inst = load_instance(f, step.source.instance_arity(), step.source.colors);
    const Coloring fwd = step.apply_forward(inst);
    r.add("reduction", step.id);
    r.add("anchor", step.anchor);
    r.add("source", step.source.to_string());
    r.add("target", step.target.to_string());
    r.add("instance", inst.expression());
    r.add("forward", fwd.expression());
    emit(f, write_coloring(fwd));
    return 0;
}

int cmd_pullback(const Flags& f, Report& r) {
    const auto step = build_reduction(f.id, step_params(f));
    const Coloring inst = load_instance(f, step.source.instance_arity(), step.source.colors);
    if (f.solution.empty()) throw UsageError("--solution is required");
    const Solution target = read_solution(read_file(f.solution));
    r.add("reduction", step.id);
    r.add("anchor", step.anchor);
    r.add("instance", inst.expression());
    r.add("target_solution", render(target));
    const auto target_report = verify(step.target, step.apply_forward(inst), target);
    r.add("target_verify", target_report.to_string());
    if (target_report.status == VerificationReport::Status::Invalid) return 1;
    Solution back;
    try {
        back = step.apply_backward(target, inst);
    } catch (const Error& e) {
        r.add("backward", std::string("failed: ") + e.what());
        return 1;
    }
    r.add("solution", render(back));
    const auto report = verify(step.source, inst, back);
    r.add("verify", report.to_string());
    emit(f, write_solution(back));
    return report.status == VerificationReport::Status::Invalid ? 1 : 0;
}

unsigned default_certify_size(const ReductionStep& step, const StepParams& p) {
    if (step.id == "iptFromHtEq2" || step.id == "corruptedFixture" || step.id == "existsPairFromRt3") return 5;
    if (step.id == "iptToHtLe2") return 5;
    if (step.id == "iphtFromHtLarge") return 7;
    if (step.id == "divideSum") return std::max(4u, p.m);
    return 4;
}

int cmd_certify(const Flags& f, Report& r, const CLI::App& sub) {
    const StepParams params = step_params(f);
    const auto step = build_reduction(f.id, params);
    Flags g = f;
    if (sub.count("--size") == 0) g.size = default_certify_size(step, params);
    if (sub.count("--max-exp") == 0 && step.id == "iptToHtLe2") g.max_exp = 40;
    SolveConfig cfg = solve_config(g);
    if (step.source.family == Family::IPHT && step.target.family == Family::IPT) cfg.carriers = default_carriers();

    const Arity arity = step.source.instance_arity();
    const unsigned k = step.source.colors;
    std::vector<Coloring> instances;
    if (f.window) {
        const u64 lo = arity.kind == Arity::Kind::Nat ? 1 : 0;
        if (*f.window > 0) {
            std::optional<Coloring> fallback;
            const std::string fb = !f.fallback.empty() ? f.fallback : (k >= 2 ? "summod 2 0 1" : "const 0");
            fallback = parse_rule(fb, arity, k);
            for_each_canonical_coloring(arity, k, lo, lo + *f.window - 1, f.max_colorings,
                                        [&](const Coloring& c) {
                                            instances.push_back(c);
                                            return true;
                                        },
                                        fallback);
        }
    }
    const std::size_t count = f.window && sub.count("--count") == 0 ? 0 : f.count;
    for (auto& c : rule_catalog(arity, k, count)) instances.push_back(std::move(c));

    r.add("reduction", step.id);
    r.add("anchor", step.anchor);
    r.add("source", step.source.to_string());
    r.add("target", step.target.to_string());
    r.add("budget", budget_line(g));
    const auto rep = certify(step, instances, cfg);
    r.add("instances", rep.instances);
    r.add("solved", rep.solved);
    r.add("passed", rep.passed);
    r.add("vacuous", rep.vacuous);
    r.add("too_short", rep.too_short);
    r.add("unsolved", rep.unsolved);
    r.add("failed", rep.failed);
    r.add("vacuous_run", rep.vacuous_run() ? "yes" : "no");
    if (rep.first_failure) {
        const auto& ff = *rep.first_failure;
        r.add("counterexample.index", ff.index);
        r.add("counterexample.instance", ff.instance.expression());
        if (ff.target_solution) r.add("counterexample.target_solution", render(*ff.target_solution));
        if (ff.pulled_back) r.add("counterexample.pulled_back", render(*ff.pulled_back));
        r.add("counterexample.reason", ff.reason);
    }
    r.add("result", rep.ok() ? "pass" : "fail");
    return rep.ok() ? 0 : 1;
}

int cmd_decode(const Flags& f, Report& r) {
    const Injection inj = Injection::parse(f.injection);
    LengthSpec spec = LengthSpec::at_most(2);
    if (f.mode == "eq") {
        if (f.a < 3) throw UsageError("--a must be at least 3");
        spec = LengthSpec::exactly(f.a);
    } else if (f.mode == "large") {
        spec = LengthSpec::exactly_large();
    } else if (f.mode != "le2") {
        throw UsageError("--mode must be le2, eq or large");
    }
    if (f.x == 0) throw UsageError("--x must be positive");
    r.add("mode", f.mode);
    r.add("injection", inj.expression());
    r.add("spec", spec.to_string());
    r.add("x", f.x);
    r.add("budget", budget_line(f));
    const bool truth = inj.in_range(f.x);
    r.add("truth", truth ? "in-range" : "not-in-range");

    SearchBudget b;
    b.target_size = f.size;
    b.max_exponent = f.max_exp;
    b.max_nodes = f.max_nodes;
    SearchOptions opts;
    opts.jobs = f.jobs;
    opts.prune = !f.no_prune;
    opts.log = &std::cerr;
    const auto out = search_apart_homogeneous(Coloring::important_parity(inj), spec, 2, b, opts);
    emit_stats(std::cerr, out);
    if (!out.found()) {
        r.add("h", "none (" + to_string(out.status) + ")");
        r.add("verdict", to_string(Verdict::Inconclusive));
        r.add("agreement", "n/a");
        return 0;
    }
    const auto d = make_range_decoder(inj, spec, out.solution->set());
    r.add("h", to_string(d.h));
    r.add("color", d.color);
    const DecodeResult res = f.mode == "le2" ? decode_le2(d, f.x) : f.mode == "eq" ? decode_eq(d, f.x) : decode_large(d, f.x);
    if (res.n) r.add("n", *res.n);
    if (res.k) r.add("k", *res.k);
    if (res.bound) r.add("bound", *res.bound);
    r.add("verdict", to_string(res.verdict));
    if (res.verdict == Verdict::Inconclusive) {
        r.add("agreement", "n/a");
        return 0;
    }
    const bool agree = (res.verdict == Verdict::InRange) == truth;
    r.add("agreement", agree ? "yes" : "no");
    return agree ? 0 : 1;
}

int cmd_number(const Flags& f, Report& r) {
    const LengthSpec spec = LengthSpec::parse(f.len);
    WitnessBudget b;
    b.max_n = f.max_n;
    b.max_colorings = f.max_colorings;
    r.add("spec", spec.to_string());
    r.add("colors", f.colors);
    r.add("size", f.size);
    r.add("apart", f.apart);
    r.add("witness", witness_number(spec, f.colors, f.size, f.apart, b));
    return 0;
}

void principle_flags(CLI::App* c, Flags& f) {
    c->add_option("--principle", f.principle, "HT, FUT, RT, IPT, IPHT, PHT, HTE or RTL")->capture_default_str();
    c->add_option("--len", f.len, "length spec: <=n, =n, {a,b,..} or !w")->capture_default_str();
    c->add_option("--colors", f.colors, "number of colors")->capture_default_str();
    c->add_option("--dim", f.dim, "dimension for RT, IPT, IPHT, PHT")->capture_default_str();
    c->add_option("--apart", f.apart, "apartness base")->capture_default_str();
    c->add_flag("--plain", f.plain, "drop the apartness condition");
}

void instance_flags(CLI::App* c, Flags& f) {
    c->add_option("--rule", f.rule, "instance as a rule expression");
    c->add_option("--in", f.in, "instance file");
}

void budget_flags(CLI::App* c, Flags& f) {
    c->add_option("--size", f.size, "target solution size")->capture_default_str();
    c->add_option("--max-exp", f.max_exp, "largest exponent searched")->capture_default_str();
    c->add_option("--max-nodes", f.max_nodes, "node cap")->capture_default_str();
    c->add_option("--jobs", f.jobs, "search threads")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_flag("--no-prune", f.no_prune, "check complete candidates only");
    c->add_option("--side", f.side, "per-side size for polarized principles")->capture_default_str();
}

void step_flags(CLI::App* c, Flags& f) {
    c->add_option("--id", f.id, "reduction id (see catalog)")->required();
    c->add_option("--len", f.len, "length spec parameter")->capture_default_str();
    c->add_option("--colors", f.colors, "color parameter k")->capture_default_str();
    c->add_option("--n", f.n, "length parameter n")->capture_default_str();
    c->add_option("--m", f.m, "length parameter m")->capture_default_str();
    c->add_option("--t", f.t, "apartness base t")->capture_default_str();
    c->add_option("--s", f.s, "second apartness base s")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hindman-type principles: search, verification, reductions and certification"};
    app.require_subcommand(1);
    Flags f;
    const std::string first = argc > 1 ? argv[1] : "";
    if (first == "decode") {
        f.size = 8;
        f.max_exp = 40;
    } else if (first == "certify") {
        f.max_exp = 14;
        f.max_nodes = 2'000'000;
    } else if (first == "number") {
        f.size = 2;
    }

    auto* solve_cmd = app.add_subcommand("solve", "search a solution of an instance");
    principle_flags(solve_cmd, f);
    instance_flags(solve_cmd, f);
    budget_flags(solve_cmd, f);
    solve_cmd->add_option("--out", f.out, "write the solution file");

    auto* verify_cmd = app.add_subcommand("verify", "check a solution file against an instance");
    principle_flags(verify_cmd, f);
    instance_flags(verify_cmd, f);
    verify_cmd->add_option("--solution", f.solution, "solution file");

    auto* reduce_cmd = app.add_subcommand("reduce", "apply a reduction's forward map");
    step_flags(reduce_cmd, f);
    instance_flags(reduce_cmd, f);
    reduce_cmd->add_option("--out", f.out, "write the forward instance file");

    auto* pullback_cmd = app.add_subcommand("pullback", "apply a reduction's backward map and verify");
    step_flags(pullback_cmd, f);
    instance_flags(pullback_cmd, f);
    pullback_cmd->add_option("--solution", f.solution, "target solution file");
    pullback_cmd->add_option("--out", f.out, "write the pulled-back solution file");

    auto* certify_cmd = app.add_subcommand("certify", "forward-solve-backward-verify sweep");
    step_flags(certify_cmd, f);
    budget_flags(certify_cmd, f);
    certify_cmd->add_option("--count", f.count, "catalog instances")->capture_default_str();
    certify_cmd->add_option("--window", f.window, "also sweep canonical table colorings over a window of this size");
    certify_cmd->add_option("--fallback", f.fallback, "rule used outside the window");
    certify_cmd->add_option("--max-colorings", f.max_colorings, "cap on enumerated colorings")->capture_default_str();

    auto* decode_cmd = app.add_subcommand("decode", "decide range membership from a monochromatic apart set");
    decode_cmd->add_option("--mode", f.mode, "le2, eq or large")->capture_default_str();
    decode_cmd->add_option("--a", f.a, "sum length for eq mode")->capture_default_str();
    decode_cmd->add_option("--injection", f.injection, "injection rule")->capture_default_str();
    decode_cmd->add_option("--x", f.x, "query value")->capture_default_str();
    budget_flags(decode_cmd, f);

    auto* catalog_cmd = app.add_subcommand("catalog", "list the reductions");

    auto* number_cmd = app.add_subcommand("number", "witness number for a length spec");
    number_cmd->add_option("--len", f.len, "length spec")->capture_default_str();
    number_cmd->add_option("--colors", f.colors, "number of colors")->capture_default_str();
    number_cmd->add_option("--size", f.size, "apart set size")->capture_default_str();
    number_cmd->add_option("--apart", f.apart, "apartness base")->capture_default_str();
    number_cmd->add_option("--max-n", f.max_n, "largest N tried")->capture_default_str();
    number_cmd->add_option("--max-colorings", f.max_colorings, "cap on colorings per N")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report report;
    report.add("command", echo(argc, argv));
    int code = 2;
    try {
        Timer timer;
        if (*solve_cmd) code = cmd_solve(f, report);
        else if (*verify_cmd) code = cmd_verify(f, report);
        else if (*reduce_cmd) code = cmd_reduce(f, report);
        else if (*pullback_cmd) code = cmd_pullback(f, report);
        else if (*certify_cmd) code = cmd_certify(f, report, *certify_cmd);
        else if (*decode_cmd) code = cmd_decode(f, report);
        else if (*catalog_cmd) code = cmd_catalog(f, report);
        else if (*number_cmd) code = cmd_number(f, report);
    } catch (const std::exception& e) {
        report.print(std::cout);
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    report.print(std::cout);
    return code;
}
