#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hindman/io.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

using namespace hindman;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HINDMAN_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), p) != nullptr) r.out += buf.data();
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool has(const Run& r, const std::string& needle) { return r.out.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "hindman-cli-test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("solve exit codes") {
    const auto found = run("solve --principle HT --len '<=2' --rule 'summod 2 0 1' --size 4");
    CHECK(found.code == 0);
    CHECK(has(found, "status found"));
    CHECK(has(found, "solution apart(2) {2,4,8,16}"));
    const auto constant = run("solve --principle HT --rule 'const 0' --size 4");
    CHECK(constant.code == 0);
    CHECK(has(constant, "solution apart(2) {1,2,4,8}"));
    CHECK(run("solve --principle HT --rule 'const 0' --size 6 --max-exp 3").code == 1);
    CHECK(run("solve --principle HT --rule 'hash 3' --len '<=3' --size 6 --max-nodes 50").code == 1);
    CHECK(run("solve --principle HT --len '<=x' --rule 'const 0'").code == 2);
    CHECK(run("solve --principle XX --rule 'const 0'").code == 2);
    CHECK(run("solve --principle HT").code == 2);
    CHECK(run("solve --bogus").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("reports are deterministic") {
    const std::string args = "solve --principle HT --len '=2' --rule 'hash 9' --size 4 --jobs 3";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    const auto c = run("certify --id futFromHt --count 8");
    CHECK(c.out == run("certify --id futFromHt --count 8").out);
}

TEST_CASE("verify exit codes") {
    const auto sol = scratch("s.txt");
    CHECK(run("solve --principle HT --rule 'summod 2 0 1' --size 4 --out " + sol.string()).code == 0);
    CHECK(write_solution(read_solution(read_file(sol))) == read_file(sol));
    CHECK(run("verify --principle HT --rule 'summod 2 0 1' --solution " + sol.string()).code == 0);

    const auto bad = scratch("bad.txt");
    write_file(bad, "hindman-solution 1\nshape apart 2\nset 1 4 16\n");
    const auto clash = run("verify --principle HT --len '=2' --rule 'summod 2 0 1' --solution " + bad.string());
    CHECK(clash.code == 1);
    CHECK(has(clash, "=5 color 1"));
    CHECK(has(clash, "=20 color 0"));

    const auto pol = scratch("pol.txt");
    write_file(pol, "hindman-solution 1\nshape polarized\nset 1\nset 2\n");
    CHECK(run("verify --principle HT --rule 'summod 2 0 1' --solution " + pol.string()).code == 2);
    CHECK(run("verify --principle HT --rule 'summod 2 0 1' --solution /nonexistent").code == 2);
}

TEST_CASE("reduce and pullback") {
    const auto fwd = scratch("fwd.txt");
    const auto r = run("reduce --id iptFromHtEq2 --rule 'summod 2 0 1' --out " + fwd.string());
    CHECK(r.code == 0);
    CHECK(has(r, "anchor "));
    const auto inst = read_coloring(read_file(fwd));
    CHECK(inst.arity() == Arity::nat());
    CHECK(write_coloring(inst) == read_file(fwd));

    const auto h = scratch("h.txt");
    CHECK(run("solve --principle HT --len '=2' --in " + fwd.string() + " --size 5 --out " + h.string()).code == 0);
    const auto back = scratch("back.txt");
    const auto p = run("pullback --id iptFromHtEq2 --rule 'summod 2 0 1' --solution " + h.string() + " --out " +
                       back.string());
    CHECK(p.code == 0);
    CHECK(has(p, "verify valid"));
    CHECK(read_solution(read_file(back)).shape == Solution::Shape::Polarized);

    const auto wrong = scratch("wrong.txt");
    write_file(wrong, "hindman-solution 1\nshape apart 2\nset 2 12 48 320\n");
    CHECK(run("pullback --id iptFromHtEq2 --rule 'summod 2 0 1' --solution " + wrong.string()).code == 1);
    CHECK(run("reduce --id nope --rule 'const 0'").code == 2);
}

TEST_CASE("catalog lists every reduction") {
    const auto r = run("catalog");
    CHECK(r.code == 0);
    for (const char* id : {"futFromHt", "htFromFut", "apartnessBaseConvert", "colorDoubling", "htExactFromRt",
                           "iptFromHtEq2", "divideSum", "iphtFromIpt", "iptFromIpht", "iphtFromHtLarge",
                           "existsPairFromRt3", "htLargeFromRtLarge", "iptToHtLe2"}) {
        CHECK(has(r, std::string("reduction ") + id + "\t"));
    }
}

TEST_CASE("certify") {
    const auto ok = run("certify --id iptFromHtEq2");
    CHECK(ok.code == 0);
    CHECK(has(ok, "failed 0"));
    CHECK(has(ok, "vacuous_run no"));
    const auto bad = run("certify --id corruptedFixture");
    CHECK(bad.code == 1);
    CHECK(has(bad, "counterexample.instance"));
    CHECK(has(bad, "counterexample.reason"));
    const auto empty = run("certify --id iptFromHtEq2 --window 0");
    CHECK(empty.code == 0);
    CHECK(has(empty, "instances 0"));
    CHECK(has(empty, "vacuous_run yes"));
    const auto window = run("certify --id iptFromHtEq2 --window 4");
    CHECK(window.code == 0);
    CHECK(has(window, "instances 32"));
    CHECK(run("certify --id iptFromHtEq2 --window 12 --max-colorings 10").code == 2);
}

TEST_CASE("decode") {
    const auto le2 = run("decode --mode le2 --injection 'shift 10' --x 3");
    CHECK(le2.code == 0);
    CHECK(has(le2, "verdict not-in-range"));
    CHECK(has(le2, "agreement yes"));
    const auto eq = run("decode --mode eq --a 3 --injection 'shift 10' --x 3");
    CHECK(eq.code == 0);
    CHECK(has(eq, "agreement yes"));
    const auto big = run("decode --mode le2 --injection identity --x 60");
    CHECK(big.code == 0);
    CHECK(has(big, "verdict inconclusive"));
    CHECK(run("decode --mode eq --a 3 --injection identity --x 2").code == 0);
    CHECK(run("decode --mode sideways --x 2").code == 2);
}

TEST_CASE("number") {
    const auto r = run("number --len '<=1' --size 2");
    CHECK(r.code == 0);
    CHECK(has(r, "witness 4"));
    CHECK(run("number --len '<=2' --size 3 --max-n 5").code == 2);
}
