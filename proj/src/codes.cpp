#include "stabloc/codes.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "stabloc/rng.hpp"

namespace stabloc {

CodeGraph build_code_graph(const std::vector<PauliOperator>& gens,
                           const std::vector<PauliOperator>& logical_zs) {
    if (gens.empty() && logical_zs.empty())
        throw std::invalid_argument("build_code_graph: no operators given");
    const std::size_t n = gens.empty() ? logical_zs[0].n : gens[0].n;
    const std::size_t k = logical_zs.size();
    if (gens.size() + k != n)
        throw std::invalid_argument(
            "build_code_graph: expected " + std::to_string(n) +
            " operators total, got " + std::to_string(gens.size() + k));

    // Stack the stabilizer generators and the logical Zs; the combined system
    // stabilizes the encoded |0…0⟩. to_graph_form validates commutation,
    // independence, and hermiticity.
    std::vector<PauliOperator> rows = gens;
    rows.insert(rows.end(), logical_zs.begin(), logical_zs.end());
    GraphFormResult gf = to_graph_form(StabilizerTableau(std::move(rows)));

    CodeGraph cg;
    cg.k = k;
    cg.logical_zs = logical_zs;
    cg.stabilizers = gens;

    // Decorated graph of the encoded |0…0⟩: adjacency and signs from the
    // graph form, fill/loop decorations from the rebuild operations.
    cg.base = StabGraph(n);
    cg.base.adj = gf.tableau.graph_adjacency();
    cg.base.sign = gf.tableau.sign_bits();
    for (const LocalOp& op : gf.local_ops) {
        if (op.gate == CliffordGate::H)
            cg.base.hollow.set(op.qubit, true);
        else
            cg.base.loop.set(op.qubit, true);
    }

    // b_l(j): canonical generator j consumed logical row n−k+l.
    cg.input_edges = BitMatrix(k, n);
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t j = 0; j < n; ++j)
            cg.input_edges.set(l, j, gf.row_coeffs.get(j, n - k + l));
    return cg;
}

StabilizerTableau basis_generators(const CodeGraph& cg, const BitVec& c) {
    if (c.size() != cg.k)
        throw std::invalid_argument("basis_generators: expected " +
                                    std::to_string(cg.k) + " logical bits, got " +
                                    std::to_string(c.size()));
    StabilizerTableau t = to_tableau(cg.base);
    for (std::size_t j = 0; j < cg.n(); ++j) {
        bool flip = false;
        for (std::size_t l = 0; l < cg.k; ++l)
            flip ^= cg.input_edges.get(l, j) && c.get(l);
        if (flip) t.rows[j].phase = (t.rows[j].phase + 2) % 4;
    }
    return t;
}

StateVector encode_state(const CodeGraph& cg,
                         const std::vector<std::complex<double>>& amplitudes,
                         std::uint64_t seed,
                         const std::optional<BitVec>& forced_record) {
    const std::size_t n = cg.n();
    const std::size_t k = cg.k;
    if (n + k > StateVector::kMaxQubits)
        throw std::invalid_argument("encode_state: " + std::to_string(n + k) +
                                    " qubits exceed the statevector limit");
    if (amplitudes.size() != (std::size_t(1) << k))
        throw std::invalid_argument("encode_state: expected " +
                                    std::to_string(std::size_t(1) << k) +
                                    " amplitudes");
    double norm2 = 0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("encode_state: amplitudes not normalized");
    if (forced_record && forced_record->size() != k)
        throw std::invalid_argument("encode_state: record length mismatch");

    // Undecorated signed graph state on the code block, tensored with the
    // logical amplitudes on the input register (inputs are the low bits).
    GraphCircuit prep(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (cg.base.has_edge(a, b)) prep.cz_edges.push_back({a, b});
    prep.z_flags = cg.base.sign;
    StateVector code = run_circuit(prep);

    StateVector psi(n + k);
    for (std::size_t g = 0; g < code.dim(); ++g)
        for (std::size_t c = 0; c < amplitudes.size(); ++c)
            psi.amp((g << k) | c) = code.amp(g) * amplitudes[c];

    // CZ-couple input l to the graph nodes its logical bit feeds.
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t j = 0; j < n; ++j)
            if (cg.input_edges.get(l, j)) psi.apply_cz(j, n + l);

    // X-basis measurement of the inputs (Hadamard, then computational).
    CounterRng rng(seed);
    BitVec record(k);
    for (std::size_t l = 0; l < k; ++l) {
        psi.apply_h(n + l);
        PauliOperator zl(n + k);
        zl.z.set(n + l, true);
        ProjectResult plus = project(psi, zl, +1);
        int x;
        if (plus.prob > 1.0 - 1e-9)
            x = 0;
        else if (plus.prob < 1e-9)
            x = 1;
        else
            x = forced_record ? int(forced_record->get(l)) : int(rng.next_bit());
        record.set(l, x);
        ProjectResult res = x == 0 ? plus : project(psi, zl, -1);
        psi = *res.post;
    }

    // Corrections: the logical Zs, rotated into the undecorated-graph frame
    // (peel the final per-qubit S/H decorations off), applied per record bit.
    for (std::size_t l = 0; l < k; ++l) {
        if (!record.get(l)) continue;
        PauliOperator zbar = cg.logical_zs[l];
        for (std::size_t q = 0; q < n; ++q) {
            if (cg.base.hollow.get(q)) conjugate_pauli(zbar, CliffordGate::H, q);
            if (cg.base.loop.get(q)) conjugate_pauli(zbar, CliffordGate::Sdg, q);
        }
        PauliOperator wide(n + k);
        wide.phase = zbar.phase;
        for (std::size_t q = 0; q < n; ++q) {
            wide.x.set(q, zbar.x.get(q));
            wide.z.set(q, zbar.z.get(q));
        }
        psi.apply_pauli(wide);
    }

    // Re-apply the decorations (loop = S, hollow = H, in that order).
    for (std::size_t q = 0; q < n; ++q) {
        if (cg.base.loop.get(q)) psi.apply_s(q);
        if (cg.base.hollow.get(q)) psi.apply_h(q);
    }

    // The inputs now sit in the definite computational state |record⟩;
    // slice them off.
    StateVector out(n);
    std::size_t rec = 0;
    for (std::size_t l = 0; l < k; ++l) rec = (rec << 1) | record.get(l);
    for (std::size_t g = 0; g < out.dim(); ++g) out.amp(g) = psi.amp((g << k) | rec);
    out.normalize();
    return out;
}

std::string CodeGraph::to_json() const {
    nlohmann::json j;
    j["n"] = n();
    j["k"] = k;
    j["stabilizers"] = nlohmann::json::array();
    for (const auto& g : stabilizers) j["stabilizers"].push_back(g.to_string());
    j["logical_zs"] = nlohmann::json::array();
    for (const auto& g : logical_zs) j["logical_zs"].push_back(g.to_string());
    return j.dump(2);
}

CodeGraph CodeGraph::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<PauliOperator> gens, zs;
    for (const auto& s : j.at("stabilizers"))
        gens.push_back(PauliOperator::parse(s.get<std::string>()));
    for (const auto& s : j.at("logical_zs"))
        zs.push_back(PauliOperator::parse(s.get<std::string>()));
    CodeGraph cg = build_code_graph(gens, zs);
    if (j.at("n").get<std::size_t>() != cg.n() || j.at("k").get<std::size_t>() != cg.k)
        throw std::invalid_argument("code json: n/k inconsistent with operators");
    return cg;
}

}  // namespace stabloc
