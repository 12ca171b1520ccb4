#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stabloc/bell.hpp"
#include "stabloc/cli.hpp"
#include "stabloc/graph.hpp"
#include "stabloc/tableau.hpp"

using namespace stabloc;

namespace {

struct CliResult {
    int rc = 0;
    std::string out;
};

// Runs the CLI in-process with stdout captured; stderr is left alone so
// genuine failures stay visible in the test log.
CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("stabloc");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    int rc = run_command(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    return {rc, captured.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("stabloc_cli_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

StabGraph sample_graph() {
    StabGraph g(4);
    g.hollow.set(0, true);
    g.loop.set(0, true);
    g.sign.set(1, true);
    g.set_edge(0, 1, true);
    g.set_edge(1, 2, true);
    g.set_edge(2, 3, true);
    return g;
}

std::string chsh_csv() {
    CorrelationVector C({2, 2});
    const Rational r = rational_approx(1.0 / std::sqrt(2.0));
    C.set({1, 1}, r);
    C.set({1, 2}, r);
    C.set({2, 1}, r);
    C.set({2, 2}, -r);
    return C.to_csv();
}

}  // namespace

TEST_CASE("cli: pauli parse and mul") {
    CHECK(run_cli({"pauli", "parse", "+XYZ"}).out == "+XYZ\n");
    // Operators with a leading '-' need the end-of-options separator.
    CHECK(run_cli({"pauli", "parse", "--", "-iZZ"}).out == "-iZZ\n");
    CHECK(run_cli({"pauli", "mul", "+XY", "+ZZ"}).out == "+YX\n");
    CHECK(run_cli({"pauli", "parse", "+AB"}).rc == 1);
}

TEST_CASE("cli: usage errors exit 2, domain errors exit 1") {
    CHECK(run_cli({"no-such-command"}).rc == 2);
    CHECK(run_cli({"graph", "reduce"}).rc == 2);  // missing --in
    CHECK(run_cli({"graph", "reduce", "--in", "/no/such/file.json"}).rc == 1);
    CHECK(run_cli({"comm", "verify", "--case", "teapot"}).rc == 2);
    CHECK(run_cli({"--help"}).rc == 0);
}

TEST_CASE("cli: graph reduce round-trips and is deterministic") {
    auto in = temp_path("g.json");
    auto out1 = temp_path("g_red1.json");
    auto out2 = temp_path("g_red2.json");
    write_text(in, sample_graph().to_json());

    CHECK(run_cli({"graph", "reduce", "--in", in.string(), "--out",
                   out1.string()})
              .rc == 0);
    CHECK(run_cli({"graph", "reduce", "--in", in.string(), "--out",
                   out2.string()})
              .rc == 0);
    CHECK(read_text(out1) == read_text(out2));

    StabGraph reduced = StabGraph::from_json(read_text(out1));
    CHECK(reduced.is_reduced());
    CHECK(equivalent(reduced, sample_graph()));

    auto again = run_cli({"graph", "reduce", "--in", out1.string()});
    CHECK(again.rc == 0);  // artifact re-parses under --in
    CHECK(run_cli({"graph", "equiv", "--in", in.string(), "--with",
                   out1.string()})
              .out == "EQUIVALENT\n");
}

TEST_CASE("cli: graph/tableau conversions agree") {
    auto g_path = temp_path("conv_g.json");
    auto t_path = temp_path("conv_t.json");
    auto back_path = temp_path("conv_back.json");
    write_text(g_path, sample_graph().to_json());

    CHECK(run_cli({"graph", "to-tableau", "--in", g_path.string(), "--out",
                   t_path.string()})
              .rc == 0);
    CHECK(run_cli({"tableau", "validate", "--in", t_path.string()}).out ==
          "VALID\n");
    CHECK(run_cli({"graph", "from-tableau", "--in", t_path.string(), "--out",
                   back_path.string()})
              .rc == 0);
    CHECK(equivalent(StabGraph::from_json(read_text(back_path)),
                     sample_graph()));
    CHECK(run_cli({"oracle", "check", "--in", g_path.string()}).rc == 0);
}

TEST_CASE("cli: seeded measurement is reproducible and --forced is honored") {
    auto g_path = temp_path("meas_g.json");
    write_text(g_path, sample_graph().to_json());

    auto a = run_cli({"graph", "measure", "--in", g_path.string(), "--op",
                      "+ZZZZ", "--seed", "11"});
    auto b = run_cli({"graph", "measure", "--in", g_path.string(), "--op",
                      "+ZZZZ", "--seed", "11"});
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);

    auto forced = run_cli({"graph", "measure", "--in", g_path.string(), "--op",
                           "+ZZZZ", "--forced", "-1"});
    CHECK(forced.out.find("\"outcome\":-1") != std::string::npos);
}

TEST_CASE("cli: CHSH pipeline prints INFEASIBLE with bound 2") {
    auto csv_path = temp_path("chsh.csv");
    auto ineq_path = temp_path("chsh_ineq.json");
    write_text(csv_path, chsh_csv());

    auto res = run_cli({"bell", "lp-test", "--in", csv_path.string(), "--out",
                        ineq_path.string()});
    CHECK(res.rc == 0);
    CHECK(res.out.rfind("INFEASIBLE\n", 0) == 0);
    auto ineq = BellInequality::from_json(read_text(ineq_path));
    CHECK(ineq.bound == 2);

    // The PR vector violates the extracted inequality at 4.
    CorrelationVector pr({2, 2});
    pr.set({1, 1}, 1);
    pr.set({1, 2}, 1);
    pr.set({2, 1}, 1);
    pr.set({2, 2}, -1);
    auto pr_path = temp_path("pr.csv");
    write_text(pr_path, pr.to_csv());
    auto eval = run_cli({"bell", "eval", "--in", pr_path.string(), "--ineq",
                         ineq_path.string()});
    CHECK(eval.out.find("lhs = 4") != std::string::npos);
    CHECK(eval.out.find("VIOLATED") != std::string::npos);

    // A deterministic vertex is feasible.
    CorrelationVector det({2, 2});
    det.set({1, 1}, 1);
    det.set({1, 2}, 1);
    det.set({2, 1}, 1);
    det.set({2, 2}, 1);
    auto det_path = temp_path("det.csv");
    write_text(det_path, det.to_csv());
    CHECK(run_cli({"bell", "lp-test", "--in", det_path.string()}).out ==
          "FEASIBLE\n");
}

TEST_CASE("cli: comm verify prints the documented contradiction lines") {
    CHECK(run_cli({"comm", "verify", "--case", "chain11"}).out ==
          "CONTRADICTION: 16 constraints, product = -1\n");
    CHECK(run_cli({"comm", "verify", "--case", "ghz"}).out ==
          "CONTRADICTION: 4 constraints, product = -1\n");
    CHECK(run_cli({"comm", "verify", "--case", "cluster2x3"}).out ==
          "CONTRADICTION: 2 symmetric pairs, product = -1\n");
    CHECK(run_cli({"comm", "verify", "--case", "ring", "--f", "1"}).out ==
          "CONTRADICTION: 5 constraints, product = -1\n");
}

TEST_CASE("cli: comm model runs are seed-deterministic") {
    auto a_path = temp_path("assign.json");
    write_text(a_path,
               R"({"graph":["010","101","010"],"measurement":"XZX","mask":[1,1,1]})");
    auto r1 = run_cli({"comm", "nn", "--in", a_path.string(), "--seed", "5"});
    auto r2 = run_cli({"comm", "nn", "--in", a_path.string(), "--seed", "5"});
    CHECK(r1.rc == 0);
    CHECK(r1.out == r2.out);
    CHECK(run_cli({"comm", "chain", "--in", a_path.string(), "--r", "101"}).rc ==
          0);
    CHECK(run_cli({"comm", "universal", "--in", a_path.string(), "--seed", "3"})
              .rc == 0);
}

TEST_CASE("cli: comm class output is independent of --jobs") {
    auto seq = run_cli({"comm", "class", "--family", "complete_bipartite",
                        "--n", "5", "--jobs", "1"});
    auto par = run_cli({"comm", "class", "--family", "complete_bipartite",
                        "--n", "5", "--jobs", "4"});
    CHECK(seq.rc == 0);
    CHECK(seq.out == par.out);
    CHECK(seq.out.find("violations 0") != std::string::npos);
    // The control family reports violations and exits 1.
    CHECK(run_cli({"comm", "class", "--family", "cluster2x3", "--n", "6"}).rc ==
          1);
}

TEST_CASE("cli: code build/basis/encode round-trip") {
    auto in_path = temp_path("code_in.json");
    auto code_path = temp_path("code.json");
    write_text(in_path,
               R"({"stabilizers":["+XZZXI","+IXZZX","+XIXZZ","+ZXIXZ"],)"
               R"("logical_zs":["+ZZZZZ"]})");
    CHECK(run_cli({"code", "build", "--in", in_path.string(), "--out",
                   code_path.string()})
              .rc == 0);
    CHECK(run_cli({"code", "basis", "--in", code_path.string(), "--c", "1"})
              .rc == 0);
    auto enc1 = run_cli({"code", "encode", "--in", code_path.string(),
                         "--amps", "1,0", "--seed", "9"});
    auto enc2 = run_cli({"code", "encode", "--in", code_path.string(),
                         "--amps", "1,0", "--seed", "9"});
    CHECK(enc1.rc == 0);
    CHECK(enc1.out == enc2.out);
}

TEST_CASE("cli: lhv value, count, and range") {
    auto t_path = temp_path("lhv_t.json");
    write_text(t_path, R"({"n":2,"rows":["+XZ","+ZX"]})");
    CHECK(run_cli({"lhv", "value", "--in", t_path.string(), "--v", "10", "--c",
                   "00", "--op", "-XZ"})
              .out == "-1\n");
    CHECK(run_cli({"lhv", "count", "--in", t_path.string()}).out == "8\n");
    CHECK(run_cli({"lhv", "range", "--means", "0.5,-0.25"}).out ==
          "{\"empty\":false,\"hi\":0.25,\"lo\":-0.75}\n");
    CHECK(run_cli({"lhv", "range", "--means", "2.0"}).rc == 1);
}
