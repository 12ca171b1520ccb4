#include "stabloc/cli.hpp"

// Subcommand grammar:
//   pauli {parse,mul}
//   tableau {validate,canon,measure}
//   graph {reduce,equiv,gate,cz,measure,to-dot,to-tableau,from-tableau}
//   code {build,basis,encode}
//   lhv {value,count,range}
//   bell {lp-test,rv,eval,gpt}
//   comm {nn,chain,universal,verify,class}
//   oracle {check}
// Common flags: --in, --out, --seed, --forced +1|-1, --format json|dot|csv,
// --jobs. All randomness flows from --seed; equal (command, inputs, seed)
// produce byte-identical output.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabloc/bell.hpp"
#include "stabloc/codes.hpp"
#include "stabloc/comm.hpp"
#include "stabloc/graph.hpp"
#include "stabloc/lhv.hpp"
#include "stabloc/oracle.hpp"
#include "stabloc/pauli.hpp"
#include "stabloc/rng.hpp"
#include "stabloc/tableau.hpp"

namespace stabloc {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

// Prints to stdout (newline-terminated) and, when a path is given, writes
// the artifact file verbatim instead.
void emit(const std::string& text, const std::string& out_path) {
    if (!out_path.empty()) {
        write_file(out_path, text);
    } else {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    }
}

BitVec parse_bits(const std::string& text) {
    BitVec v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1')
            v.set(i, true);
        else if (text[i] != '0')
            throw std::invalid_argument("bit strings use only 0 and 1: " + text);
    }
    return v;
}

// --forced +1|-1 mapped to the outcome exponent bit.
std::optional<int> forced_bit(const std::string& forced) {
    if (forced.empty()) return std::nullopt;
    return forced == "+1" ? 0 : 1;
}

std::vector<std::size_t> sorted_vector(const std::set<std::size_t>& s) {
    return std::vector<std::size_t>(s.begin(), s.end());
}

json measure_sets_json(const MeasuredSets& sets) {
    json j;
    j["M"] = sorted_vector(sets.M_set);
    j["M_S"] = sorted_vector(sets.M_S);
    j["M_H"] = sorted_vector(sets.M_H);
    j["M_SE"] = sorted_vector(sets.M_SE);
    j["b"] = sets.b;
    return j;
}

json model_run_json(const MeasurementAssignment& a, const ModelRun& run) {
    json j;
    j["measurement"] = a.letters;
    j["mask"] = a.mask.to_string();
    j["outputs"] = run.outputs;
    j["product"] = run.product();
    j["masked_product"] = run.product(a.mask);
    j["broadcast"] = run.b.to_string();
    j["tallies"] = run.t;
    j["bits_communicated"] = run.bits_communicated;
    return j;
}

std::string statevector_json(const StateVector& psi) {
    json j;
    j["n"] = psi.num_qubits();
    json amps = json::array();
    for (std::size_t i = 0; i < psi.dim(); ++i)
        amps.push_back({psi.amp(i).real(), psi.amp(i).imag()});
    j["amplitudes"] = amps;
    return j.dump(2);
}

std::vector<std::complex<double>> parse_amplitudes(const std::string& text) {
    std::string wrapped = text;
    if (wrapped.empty() || wrapped.front() != '[') wrapped = "[" + wrapped + "]";
    json j = json::parse(wrapped);
    std::vector<std::complex<double>> amps;
    for (const auto& item : j) {
        if (item.is_array()) {
            if (item.size() != 2)
                throw std::invalid_argument("complex amplitude needs [re, im]");
            amps.emplace_back(item[0].get<double>(), item[1].get<double>());
        } else {
            amps.emplace_back(item.get<double>(), 0.0);
        }
    }
    return amps;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    return values;
}

std::string rational_string(const Rational& r) {
    std::ostringstream out;
    out << r.numerator();
    if (r.denominator() != 1) out << "/" << r.denominator();
    return out.str();
}

json gpt_state_json(const GptState& s) {
    json j;
    j["M"] = s.M;
    j["bipartite"] = s.bipartite;
    j["a"] = s.a;
    j["b"] = s.b;
    if (s.bipartite) {
        json c = json::array();
        json corr = json::array();
        for (std::size_t row = 0; row < s.M; ++row) {
            json c_line = json::array();
            json corr_line = json::array();
            for (std::size_t col = 0; col < s.M; ++col) {
                c_line.push_back(s.c_at(row, col));
                corr_line.push_back(gpt_correlation(s, row, col));
            }
            c.push_back(c_line);
            corr.push_back(corr_line);
        }
        j["c"] = c;
        j["correlations"] = corr;
    }
    return j;
}

std::string graph_text(const StabGraph& g, const std::string& format) {
    if (format == "dot") return g.to_dot();
    if (format == "json") return g.to_json();
    throw std::invalid_argument("graphs serialize as json or dot");
}

// Every option variable lives here so that it outlives subcommand setup and
// is still addressable when CLI11 runs the callbacks during parse().
struct CliState {
    std::string in, in2, out, forced, format, op;
    std::string bits_v, bits_c, bits_r, bits_record, bits_mask;
    std::string gate, amps, means, preset, case_name, family, ineq_path;
    std::size_t node = 0, node2 = 0, gpt_m = 2, ring_f = 1, n_max = 8;
    std::size_t jobs = 1;
    std::uint64_t seed = 0;
    bool reduced = false;
    bool variant = false;
    int domain_rc = 0;  // set when the command's answer is a failed check
};

void add_out(CLI::App* cmd, CliState& st) {
    cmd->add_option("--out", st.out, "output file (default: stdout)");
}

void add_forced(CLI::App* cmd, CliState& st) {
    cmd->add_option("--forced", st.forced, "force a random outcome to +1 or -1")
        ->check(CLI::IsMember({"+1", "-1"}));
}

void add_format(CLI::App* cmd, CliState& st, const std::string& def) {
    st.format = def;
    cmd->add_option("--format", st.format, "output format")->capture_default_str()
        ->check(CLI::IsMember({"json", "dot", "csv"}));
}

}  // namespace

int run_command(int argc, const char* const* argv) {
    CLI::App app{"stabilizer graphs, local-hidden-variable tables, Bell "
                 "inequalities, and communication-assisted models"};
    app.require_subcommand(1);
    CliState st;

    // ---- pauli ----------------------------------------------------------
    auto* pauli = app.add_subcommand("pauli", "Pauli group elements");
    pauli->require_subcommand(1);

    auto* pauli_parse =
        pauli->add_subcommand("parse", "normalize an operator string");
    pauli_parse->add_option("op", st.op, "operator, e.g. +XYZ or -iZZ")
        ->required();
    add_out(pauli_parse, st);
    pauli_parse->callback(
        [&st] { emit(PauliOperator::parse(st.op).to_string(), st.out); });

    auto* pauli_mul = pauli->add_subcommand("mul", "multiply two operators");
    pauli_mul->add_option("a", st.in, "left operand")->required();
    pauli_mul->add_option("b", st.in2, "right operand")->required();
    add_out(pauli_mul, st);
    pauli_mul->callback([&st] {
        emit((PauliOperator::parse(st.in) * PauliOperator::parse(st.in2))
                 .to_string(),
             st.out);
    });

    // ---- tableau --------------------------------------------------------
    auto* tab = app.add_subcommand("tableau", "stabilizer tableaus");
    tab->require_subcommand(1);

    auto* tab_validate =
        tab->add_subcommand("validate", "check generator validity");
    tab_validate->add_option("--in", st.in, "tableau JSON")->required();
    tab_validate->callback([&st] {
        auto report = validate(StabilizerTableau::from_json(read_file(st.in)));
        if (report.ok) {
            std::cout << "VALID\n";
        } else {
            std::cout << "INVALID: " << report.message << "\n";
            st.domain_rc = 1;
        }
    });

    auto* tab_canon = tab->add_subcommand("canon", "canonical graph form");
    tab_canon->add_option("--in", st.in, "tableau JSON")->required();
    add_out(tab_canon, st);
    tab_canon->callback([&st] {
        auto t = StabilizerTableau::from_json(read_file(st.in));
        emit(to_graph_form(t).tableau.to_json(), st.out);
    });

    auto* tab_measure = tab->add_subcommand("measure", "measure a Pauli product");
    tab_measure->add_option("--in", st.in, "tableau JSON")->required();
    tab_measure->add_option("--op", st.op, "Hermitian +1-sign Pauli product")
        ->required();
    add_forced(tab_measure, st);
    tab_measure->add_option("--seed", st.seed, "random seed")->capture_default_str();
    add_out(tab_measure, st);
    tab_measure->callback([&st] {
        auto t = StabilizerTableau::from_json(read_file(st.in));
        CounterRng rng(st.seed);
        auto res =
            measure(t, PauliOperator::parse(st.op), forced_bit(st.forced), rng);
        json j;
        j["outcome"] = res.outcome_bit == 0 ? 1 : -1;
        j["probability"] = res.probability;
        std::cout << j.dump() << "\n";
        if (!st.out.empty()) write_file(st.out, res.post.to_json());
    });

    // ---- graph ----------------------------------------------------------
    auto* gr = app.add_subcommand("graph", "stabilizer-state graphs");
    gr->require_subcommand(1);

    auto* gr_reduce = gr->add_subcommand("reduce", "state-preserving reduction");
    gr_reduce->add_option("--in", st.in, "graph JSON")->required();
    add_out(gr_reduce, st);
    add_format(gr_reduce, st, "json");
    gr_reduce->callback([&st] {
        auto g = StabGraph::from_json(read_file(st.in));
        emit(graph_text(reduce(g), st.format), st.out);
    });

    auto* gr_equiv = gr->add_subcommand("equiv", "same-state test");
    gr_equiv->add_option("--in", st.in, "first graph JSON")->required();
    gr_equiv->add_option("--with", st.in2, "second graph JSON")->required();
    gr_equiv->callback([&st] {
        auto g1 = StabGraph::from_json(read_file(st.in));
        auto g2 = StabGraph::from_json(read_file(st.in2));
        std::cout << (equivalent(g1, g2) ? "EQUIVALENT" : "INEQUIVALENT") << "\n";
    });

    auto* gr_gate = gr->add_subcommand("gate", "apply a local Clifford gate");
    gr_gate->add_option("--in", st.in, "graph JSON")->required();
    gr_gate->add_option("--gate", st.gate, "H, S, or Z")
        ->required()
        ->check(CLI::IsMember({"H", "S", "Z"}));
    gr_gate->add_option("--node", st.node, "target node")->required();
    add_out(gr_gate, st);
    add_format(gr_gate, st, "json");
    gr_gate->callback([&st] {
        auto g = StabGraph::from_json(read_file(st.in));
        LocalGate gate = st.gate == "H"   ? LocalGate::H
                         : st.gate == "S" ? LocalGate::S
                                          : LocalGate::Z;
        emit(graph_text(apply_local_gate(g, gate, st.node), st.format), st.out);
    });

    auto* gr_cz = gr->add_subcommand("cz", "apply a CZ gate");
    gr_cz->add_option("--in", st.in, "graph JSON")->required();
    gr_cz->add_option("--node", st.node, "first node")->required();
    gr_cz->add_option("--node2", st.node2, "second node")->required();
    add_out(gr_cz, st);
    add_format(gr_cz, st, "json");
    gr_cz->callback([&st] {
        auto g = StabGraph::from_json(read_file(st.in));
        emit(graph_text(apply_cz(g, st.node, st.node2), st.format), st.out);
    });

    auto* gr_measure = gr->add_subcommand("measure", "measure a Pauli product");
    gr_measure->add_option("--in", st.in, "graph JSON")->required();
    gr_measure->add_option("--op", st.op, "Hermitian +1-sign Pauli product")
        ->required();
    add_forced(gr_measure, st);
    gr_measure->add_option("--seed", st.seed, "random seed")->capture_default_str();
    add_out(gr_measure, st);
    gr_measure->callback([&st] {
        auto g = StabGraph::from_json(read_file(st.in));
        CounterRng rng(st.seed);
        auto res = measure_product(g, PauliOperator::parse(st.op),
                                   forced_bit(st.forced), rng);
        json j;
        j["outcome"] = res.outcome_bit == 0 ? 1 : -1;
        j["probability"] = res.probability;
        j["sets"] = measure_sets_json(res.sets);
        std::cout << j.dump() << "\n";
        if (!st.out.empty()) write_file(st.out, res.post.to_json());
    });

    auto* gr_dot = gr->add_subcommand("to-dot", "Graphviz rendering");
    gr_dot->add_option("--in", st.in, "graph JSON")->required();
    add_out(gr_dot, st);
    gr_dot->callback([&st] {
        emit(StabGraph::from_json(read_file(st.in)).to_dot(), st.out);
    });

    auto* gr_to_tab = gr->add_subcommand("to-tableau", "generators of the state");
    gr_to_tab->add_option("--in", st.in, "graph JSON")->required();
    add_out(gr_to_tab, st);
    gr_to_tab->callback([&st] {
        emit(to_tableau(StabGraph::from_json(read_file(st.in))).to_json(),
             st.out);
    });

    auto* gr_from_tab = gr->add_subcommand("from-tableau", "graph of a tableau");
    gr_from_tab->add_option("--in", st.in, "tableau JSON")->required();
    add_out(gr_from_tab, st);
    add_format(gr_from_tab, st, "json");
    gr_from_tab->callback([&st] {
        auto t = StabilizerTableau::from_json(read_file(st.in));
        emit(graph_text(from_tableau(t), st.format), st.out);
    });

    // ---- code -----------------------------------------------------------
    auto* code = app.add_subcommand("code", "graphical stabilizer codes");
    code->require_subcommand(1);

    auto* code_build = code->add_subcommand(
        "build", "code graph from stabilizers and logical Z's");
    code_build
        ->add_option("--in", st.in,
                     "JSON {\"stabilizers\": [...], \"logical_zs\": [...]}")
        ->required();
    add_out(code_build, st);
    code_build->callback([&st] {
        json j = json::parse(read_file(st.in));
        std::vector<PauliOperator> gens, zs;
        for (const auto& s : j.at("stabilizers"))
            gens.push_back(PauliOperator::parse(s.get<std::string>()));
        for (const auto& s : j.at("logical_zs"))
            zs.push_back(PauliOperator::parse(s.get<std::string>()));
        emit(build_code_graph(gens, zs).to_json(), st.out);
    });

    auto* code_basis = code->add_subcommand("basis", "generators of |c...c>");
    code_basis->add_option("--in", st.in, "code graph JSON")->required();
    code_basis->add_option("--c", st.bits_c, "logical bit string")->required();
    add_out(code_basis, st);
    code_basis->callback([&st] {
        auto cg = CodeGraph::from_json(read_file(st.in));
        emit(basis_generators(cg, parse_bits(st.bits_c)).to_json(), st.out);
    });

    auto* code_encode =
        code->add_subcommand("encode", "encode logical amplitudes");
    code_encode->add_option("--in", st.in, "code graph JSON")->required();
    code_encode
        ->add_option("--amps", st.amps,
                     "2^k amplitudes, e.g. \"1,0\" or \"[[0.6,0],[0,0.8]]\"")
        ->required();
    code_encode->add_option("--record", st.bits_record,
                            "pin the X-measurement record");
    code_encode->add_option("--seed", st.seed, "random seed")->capture_default_str();
    add_out(code_encode, st);
    code_encode->callback([&st] {
        auto cg = CodeGraph::from_json(read_file(st.in));
        std::optional<BitVec> record;
        if (!st.bits_record.empty()) record = parse_bits(st.bits_record);
        auto psi = encode_state(cg, parse_amplitudes(st.amps), st.seed, record);
        emit(statevector_json(psi), st.out);
    });

    // ---- lhv ------------------------------------------------------------
    auto* lhv = app.add_subcommand("lhv", "local-hidden-variable tables");
    lhv->require_subcommand(1);

    auto* lhv_value = lhv->add_subcommand(
        "value", "closed-form value of a definite measurement");
    lhv_value->add_option("--in", st.in, "graph-form tableau JSON")->required();
    lhv_value->add_option("--v", st.bits_v, "generator value bits")->required();
    lhv_value->add_option("--c", st.bits_c, "per-site correlation bits")
        ->required();
    lhv_value->add_option("--op", st.op, "stabilizer element")->required();
    lhv_value->callback([&st] {
        auto t = StabilizerTableau::from_json(read_file(st.in));
        LhvTableSpec spec(t.n, parse_bits(st.bits_v), parse_bits(st.bits_c));
        int value = definite_value(spec, t, PauliOperator::parse(st.op));
        std::cout << (value > 0 ? "+1" : "-1") << "\n";
    });

    auto* lhv_count =
        lhv->add_subcommand("count", "distinct definite-value tables");
    lhv_count->add_option("--in", st.in, "graph-form tableau JSON")->required();
    lhv_count->callback([&st] {
        auto t = StabilizerTableau::from_json(read_file(st.in));
        std::cout << count_distinct_tables(t) << "\n";
    });

    auto* lhv_range = lhv->add_subcommand(
        "range", "achievable correlation of a product of +-1 variables");
    lhv_range
        ->add_option("--means", st.means, "comma-separated means in [-1,1]")
        ->required();
    add_out(lhv_range, st);
    lhv_range->callback([&st] {
        Interval iv = correlation_range(parse_doubles(st.means));
        json j;
        j["empty"] = iv.empty;
        if (!iv.empty) {
            j["lo"] = iv.lo;
            j["hi"] = iv.hi;
        }
        emit(j.dump(), st.out);
    });

    // ---- bell -----------------------------------------------------------
    auto* bell = app.add_subcommand("bell", "Bell inequalities");
    bell->require_subcommand(1);

    auto* bell_lp = bell->add_subcommand(
        "lp-test", "local-polytope membership of a correlation vector");
    bell_lp->add_option("--in", st.in, "correlation CSV")->required();
    add_out(bell_lp, st);
    bell_lp->callback([&st] {
        auto C = CorrelationVector::from_csv(read_file(st.in));
        auto res = lp_feasible(C);
        if (res.feasible) {
            std::cout << "FEASIBLE\n";
        } else {
            std::cout << "INFEASIBLE\n";
            const std::string text = res.inequality->to_json();
            std::cout << text << "\n";
            if (!st.out.empty()) write_file(st.out, text);
        }
    });

    auto* bell_rv = bell->add_subcommand(
        "rv", "product inequalities from an even observable family");
    bell_rv
        ->add_option("--in", st.in,
                     "JSON {\"settings\": [...], \"observables\": [[...]]}")
        ->required();
    add_out(bell_rv, st);
    bell_rv->callback([&st] {
        json j = json::parse(read_file(st.in));
        auto settings = j.at("settings").get<std::vector<std::size_t>>();
        auto observables =
            j.at("observables").get<std::vector<std::vector<std::size_t>>>();
        json out = json::array();
        for (const auto& ineq : rv_inequalities(settings, observables)) {
            json item;
            item["settings"] = ineq.settings;
            item["observables"] = ineq.observables;
            item["bound"] = ineq.bound;
            out.push_back(item);
        }
        emit(out.dump(2), st.out);
    });

    auto* bell_eval = bell->add_subcommand(
        "eval", "evaluate an inequality on a correlation vector");
    bell_eval->add_option("--in", st.in, "correlation CSV")->required();
    bell_eval->add_option("--ineq", st.ineq_path, "inequality JSON file")
        ->required();
    bell_eval->callback([&st] {
        auto ineq = BellInequality::from_json(read_file(st.ineq_path));
        auto C = CorrelationVector::from_csv(read_file(st.in));
        auto [lhs, satisfied] = evaluate_inequality(ineq, C);
        std::cout << "lhs = " << rational_string(lhs)
                  << ", bound = " << ineq.bound << "\n"
                  << (satisfied ? "SATISFIED" : "VIOLATED") << "\n";
    });

    auto* bell_gpt = bell->add_subcommand(
        "gpt", "no-signaling box presets and their correlations");
    st.preset = "pr";
    bell_gpt->add_option("--preset", st.preset, "pr or bell")->capture_default_str()
        ->check(CLI::IsMember({"pr", "bell"}));
    bell_gpt->add_option("--M", st.gpt_m, "fiducial measurements per system")->capture_default_str();
    bell_gpt->add_flag("--reduce", st.reduced,
                       "print the reduced single system");
    add_out(bell_gpt, st);
    bell_gpt->callback([&st] {
        GptState s =
            st.preset == "pr" ? gpt_pr_preset(st.gpt_m) : gpt_bell_preset(st.gpt_m);
        emit(gpt_state_json(st.reduced ? gpt_reduce(s) : s).dump(2), st.out);
    });

    // ---- comm -----------------------------------------------------------
    auto* comm = app.add_subcommand("comm", "communication-assisted models");
    comm->require_subcommand(1);

    auto add_model = [&st, comm](const std::string& name,
                                 const std::string& help, bool with_variant) {
        auto* cmd = comm->add_subcommand(name, help);
        cmd->add_option("--in", st.in, "assignment JSON (graph + measurement)")
            ->required();
        cmd->add_option("--r", st.bits_r, "pin the hidden bits");
        cmd->add_option("--seed", st.seed, "random seed")->capture_default_str();
        if (with_variant)
            cmd->add_flag("--variant", st.variant, "alternative flip sets");
        add_out(cmd, st);
        cmd->callback([&st, name] {
            auto [gamma, a] = assignment_from_json(read_file(st.in));
            std::optional<BitVec> r;
            if (!st.bits_r.empty()) r = parse_bits(st.bits_r);
            ModelRun run;
            if (name == "nn")
                run = nn_run(gamma, a, r, st.seed, st.variant);
            else if (name == "chain")
                run = chain_run(gamma, a, r, st.seed);
            else
                run = universal_run(gamma, a, r, st.seed);
            emit(model_run_json(a, run).dump(), st.out);
        });
    };
    add_model("nn", "site-invariant nearest-neighbor model", true);
    add_model("chain", "site-invariant model for linear chains", false);
    add_model("universal", "special-party model, exact on all graphs", false);

    auto* comm_verify = comm->add_subcommand(
        "verify", "impossibility arguments for bounded communication");
    comm_verify
        ->add_option("--case", st.case_name, "ghz, cluster2x3, chain11, or ring")
        ->required()
        ->check(CLI::IsMember({"ghz", "cluster2x3", "chain11", "ring"}));
    comm_verify->add_option("--f", st.ring_f, "ring size parameter (n = 12f)")->capture_default_str();
    add_out(comm_verify, st);
    comm_verify->callback([&st] {
        CounterexampleReport report =
            st.case_name == "ring" ? verify_counterexample_ring(st.ring_f)
                                   : verify_counterexample(st.case_name);
        std::cout << (report.contradiction ? "CONTRADICTION: " : "CONSISTENT: ")
                  << report.details << "\n";
        if (!st.out.empty()) write_file(st.out, report.to_json());
    });

    auto* comm_class = comm->add_subcommand(
        "class", "exhaustive check of the nearest-neighbor model");
    comm_class
        ->add_option("--family", st.family,
                     "complete_bipartite, symmetric_difference, cluster2x3")
        ->required();
    comm_class->add_option("--n", st.n_max, "largest node count")->capture_default_str();
    comm_class->add_option("--jobs", st.jobs, "worker threads")->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_out(comm_class, st);
    comm_class->callback([&st] {
        auto reports = verify_class(st.family, st.n_max, st.jobs);
        std::size_t checked = 0, violations = 0;
        json out = json::array();
        for (const auto& rep : reports) {
            checked += rep.checked;
            violations += rep.violations.size();
            std::cout << rep.family << ": checked " << rep.checked
                      << ", violations " << rep.violations.size() << "\n";
            out.push_back(json::parse(rep.to_json()));
        }
        std::cout << "total: checked " << checked << ", violations "
                  << violations << "\n";
        if (!st.out.empty()) write_file(st.out, out.dump(2));
        if (violations > 0) st.domain_rc = 1;
    });

    // ---- oracle ---------------------------------------------------------
    auto* orc = app.add_subcommand("oracle", "brute-force statevector checks");
    orc->require_subcommand(1);

    auto* orc_check = orc->add_subcommand(
        "check", "verify a graph against the statevector oracle");
    orc_check->add_option("--in", st.in, "graph JSON")->required();
    orc_check->add_option("--op", st.op,
                          "report <psi|g|psi> for this operator instead");
    orc_check->callback([&st] {
        auto g = StabGraph::from_json(read_file(st.in));
        StateVector psi = run_circuit(to_circuit(g));
        if (!st.op.empty()) {
            json j;
            j["expectation"] = pauli_expectation(psi, PauliOperator::parse(st.op));
            std::cout << j.dump() << "\n";
            return;
        }
        auto t = to_tableau(g);
        bool ok = true;
        for (std::size_t j = 0; j < t.n; ++j) {
            double value = pauli_expectation(psi, t.rows[j]);
            if (std::abs(value - 1.0) > 1e-9) {
                std::cout << "MISMATCH: generator " << j << " expectation "
                          << value << "\n";
                ok = false;
            }
        }
        if (ok) {
            std::cout << "OK: " << t.n
                      << " generators stabilize the oracle state\n";
        } else {
            st.domain_rc = 1;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return st.domain_rc;
}

}  // namespace stabloc
