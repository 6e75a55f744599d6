#include "hindman/io.hpp"

#include "hindman/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hindman {

namespace {

constexpr std::string_view kColoringHeader = "hindman-coloring 1";
constexpr std::string_view kSolutionHeader = "hindman-solution 1";

struct Line {
    std::size_t number = 0;
    std::string keyword;
    std::string rest;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Splits into non-empty, non-comment lines; the first must be the header.
std::vector<Line> lines_of(std::string_view text, std::string_view header) {
    std::vector<Line> out;
    std::size_t number = 0;
    bool seen_header = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++number;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!seen_header) {
            if (line != header) throw ParseError("line " + std::to_string(number) + ": expected '" + std::string(header) + "'");
            seen_header = true;
            continue;
        }
        const auto sp = line.find(' ');
        Line l;
        l.number = number;
        l.keyword = std::string(line.substr(0, sp));
        l.rest = sp == std::string_view::npos ? std::string{} : std::string(trim(line.substr(sp + 1)));
        out.push_back(std::move(l));
    }
    if (!seen_header) throw ParseError("missing header '" + std::string(header) + "'");
    return out;
}

[[noreturn]] void fail(const Line& l, const std::string& what) {
    throw ParseError("line " + std::to_string(l.number) + ": " + what);
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

u64 number(const Line& l, std::string_view w) {
    u64 v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc{} || ptr != w.data() + w.size()) fail(l, "expected a number, got '" + std::string(w) + "'");
    return v;
}

std::vector<u64> numbers(const Line& l) {
    std::vector<u64> out;
    for (const auto& w : words(l.rest)) out.push_back(number(l, w));
    return out;
}

template <class F>
auto guarded(const Line& l, F&& f) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(l, e.what());
    }
}

}  // namespace

std::string write_coloring(const Coloring& c) {
    std::ostringstream out;
    out << kColoringHeader << '\n';
    out << "rule " << c.arity().to_string() << ' ' << c.colors() << ' ' << c.expression() << '\n';
    for (const auto& t : c.tables()) {
        const auto v = table_view(t);
        out << "table " << v.arity.to_string() << ' ' << v.colors << ' ' << v.lo << ' ' << v.hi << '\n';
        out << "colors";
        for (unsigned e : v.entries) out << ' ' << e;
        out << '\n';
        if (v.fallback) {
            if (!v.fallback->tables().empty()) throw DomainError("table fallbacks must be rules");
            out << "default " << v.fallback->expression() << '\n';
        }
    }
    return out.str();
}

Coloring read_coloring(std::string_view text) {
    const auto lines = lines_of(text, kColoringHeader);
    if (lines.empty() || lines[0].keyword != "rule") throw ParseError("expected a 'rule' line after the header");
    const Line& rule = lines[0];
    const auto rw = words(rule.rest);
    if (rw.size() < 3) fail(rule, "expected 'rule <arity> <k> <expression>'");
    const Arity arity = guarded(rule, [&] { return Arity::parse(rw[0]); });
    const auto k = static_cast<unsigned>(number(rule, rw[1]));
    std::string expr;
    for (std::size_t i = 2; i < rw.size(); ++i) expr += (i > 2 ? " " : "") + rw[i];

    std::vector<Coloring> tables;
    for (std::size_t i = 1; i < lines.size();) {
        const Line& head = lines[i];
        if (head.keyword != "table") fail(head, "expected 'table', got '" + head.keyword + "'");
        const auto tw = words(head.rest);
        if (tw.size() != 4) fail(head, "expected 'table <arity> <k> <lo> <hi>'");
        const Arity ta = guarded(head, [&] { return Arity::parse(tw[0]); });
        const auto tk = static_cast<unsigned>(number(head, tw[1]));
        const u64 lo = number(head, tw[2]);
        const u64 hi = number(head, tw[3]);
        if (i + 1 >= lines.size() || lines[i + 1].keyword != "colors") fail(head, "table without a 'colors' line");
        const Line& cl = lines[i + 1];
        std::vector<unsigned> colors;
        for (u64 v : numbers(cl)) colors.push_back(static_cast<unsigned>(v));
        i += 2;
        std::optional<Coloring> fallback;
        if (i < lines.size() && lines[i].keyword == "default") {
            const Line& dl = lines[i];
            fallback = guarded(dl, [&] { return parse_rule(dl.rest, ta, tk); });
            ++i;
        }
        tables.push_back(guarded(cl, [&] { return Coloring::table(ta, tk, lo, hi, colors, fallback); }));
    }
    return guarded(rule, [&] { return parse_rule(expr, arity, k, tables); });
}

std::string write_solution(const Solution& s) {
    std::ostringstream out;
    out << kSolutionHeader << '\n';
    out << "shape " << to_string(s.shape);
    if (s.shape == Solution::Shape::Apart && s.base) out << ' ' << *s.base;
    out << '\n';
    for (const auto& p : s.parts) {
        out << "set";
        for (u64 x : p) out << ' ' << x;
        out << '\n';
    }
    if (s.lengths) out << "lengths " << s.lengths->to_string() << '\n';
    if (s.claimed_color) out << "color " << *s.claimed_color << '\n';
    return out.str();
}

Solution read_solution(std::string_view text) {
    const auto lines = lines_of(text, kSolutionHeader);
    if (lines.empty() || lines[0].keyword != "shape") throw ParseError("expected a 'shape' line after the header");
    Solution s;
    const Line& sl = lines[0];
    const auto sw = words(sl.rest);
    if (sw.empty()) fail(sl, "missing shape");
    std::optional<u64> base;
    if (sw[0] == "plain") {
        s.shape = Solution::Shape::Plain;
    } else if (sw[0] == "apart") {
        s.shape = Solution::Shape::Apart;
        if (sw.size() != 2) fail(sl, "expected 'shape apart <t>'");
        base = number(sl, sw[1]);
    } else if (sw[0] == "blocks") {
        s.shape = Solution::Shape::Blocks;
    } else if (sw[0] == "polarized") {
        s.shape = Solution::Shape::Polarized;
    } else {
        fail(sl, "unknown shape '" + sw[0] + "'");
    }
    if (sw.size() > 1 && s.shape != Solution::Shape::Apart) fail(sl, "unexpected arguments after shape");

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.keyword == "set") {
            auto v = numbers(l);
            s.parts.push_back(guarded(l, [&] { return FiniteSet::from_sorted(std::move(v)); }));
        } else if (l.keyword == "lengths") {
            s.lengths = guarded(l, [&] { return LengthSpec::parse(l.rest); });
        } else if (l.keyword == "color") {
            s.claimed_color = static_cast<unsigned>(number(l, l.rest));
        } else {
            fail(l, "unknown keyword '" + l.keyword + "'");
        }
    }

    const Line& last = lines.back();
    switch (s.shape) {
        case Solution::Shape::Plain:
        case Solution::Shape::Apart:
            if (s.parts.size() != 1) fail(last, "plain and apart solutions have exactly one set");
            break;
        case Solution::Shape::Blocks:
            guarded(last, [&] { return BlockSequence(s.parts).size(); });
            break;
        case Solution::Shape::Polarized:
            if (s.parts.empty()) fail(last, "polarized solutions need at least one set");
            break;
    }
    if (base) {
        ApartSet a = guarded(sl, [&] { return ApartSet(*base, s.parts[0]); });
        Solution r = Solution::apart(a);
        r.lengths = s.lengths;
        r.claimed_color = s.claimed_color;
        return r;
    }
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace hindman
