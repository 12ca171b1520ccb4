#include "stabloc/graph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include <json.hpp>

namespace stabloc {

void StabGraph::toggle_edge(std::size_t j, std::size_t k) {
    assert(j != k);
    adj.flip(j, k);
    adj.flip(k, j);
}

void StabGraph::set_edge(std::size_t j, std::size_t k, bool present) {
    assert(j != k);
    adj.set(j, k, present);
    adj.set(k, j, present);
}

std::vector<std::size_t> StabGraph::neighbors(std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n; ++k)
        if (adj.get(j, k)) out.push_back(k);
    return out;
}

bool StabGraph::is_reduced() const {
    for (std::size_t j = 0; j < n; ++j) {
        if (!hollow.get(j)) continue;
        if (loop.get(j)) return false;
        for (std::size_t k = 0; k < n; ++k)
            if (adj.get(j, k) && hollow.get(k)) return false;
    }
    return true;
}

namespace {

void check_index(const StabGraph& g, std::size_t j) {
    if (j >= g.n) throw std::out_of_range("graph: node index out of range");
}

// Advance a loop: add one where absent; where present, remove it and flip
// the sign (S² = Z).
void advance_loop(StabGraph& g, std::size_t j) {
    if (g.loop.get(j)) {
        g.loop.set(j, false);
        g.sign.flip(j);
    } else {
        g.loop.set(j, true);
    }
}

void lc_in_place(StabGraph& g, std::size_t node) {
    auto nb = g.neighbors(node);
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b) g.toggle_edge(nb[a], nb[b]);
}

}  // namespace

StabGraph local_complement(const StabGraph& g, std::size_t node) {
    check_index(g, node);
    StabGraph out = g;
    lc_in_place(out, node);
    return out;
}

StabGraph local_complement_edge(const StabGraph& g, std::size_t j, std::size_t k) {
    check_index(g, j);
    check_index(g, k);
    if (j == k) throw std::invalid_argument("local_complement_edge: nodes must differ");
    StabGraph out = g;
    lc_in_place(out, j);
    lc_in_place(out, k);
    lc_in_place(out, j);
    return out;
}

StabGraph apply_local_gate(const StabGraph& g, LocalGate gate, std::size_t node) {
    check_index(g, node);
    StabGraph out = g;
    switch (gate) {
        case LocalGate::Z:
            // Solid: only the node's own generator contains X there. Hollow:
            // the trailing H turns the neighbors' Z legs into X legs, so their
            // signs flip instead; a loop keeps an X component on the node too.
            if (!g.hollow.get(node)) {
                out.sign.flip(node);
            } else {
                for (std::size_t k : g.neighbors(node)) out.sign.flip(k);
                if (g.loop.get(node)) out.sign.flip(node);
            }
            break;
        case LocalGate::H:  // T1
            out.hollow.flip(node);
            break;
        case LocalGate::S:
            if (!g.hollow.get(node)) {  // T2
                advance_loop(out, node);
            } else if (!g.loop.get(node)) {  // T3
                auto nb = out.neighbors(node);
                lc_in_place(out, node);
                for (std::size_t k : nb) advance_loop(out, k);
                if (out.sign.get(node))
                    for (std::size_t k : nb) out.sign.flip(k);
            } else {  // T4
                auto nb = out.neighbors(node);
                out.hollow.set(node, false);
                out.loop.set(node, false);
                lc_in_place(out, node);
                for (std::size_t k : nb) advance_loop(out, k);
                if (!out.sign.get(node))
                    for (std::size_t k : nb) out.sign.flip(k);
            }
            break;
    }
    return out;
}

StabGraph apply_equiv_e1(const StabGraph& g, std::size_t node) {
    check_index(g, node);
    if (!g.loop.get(node))
        throw std::invalid_argument("E1: node " + std::to_string(node) + " has no loop");
    StabGraph out = g;
    auto nb = out.neighbors(node);
    out.hollow.flip(node);
    lc_in_place(out, node);
    for (std::size_t k : nb) advance_loop(out, k);
    out.sign.flip(node);
    if (out.sign.get(node))
        for (std::size_t k : nb) out.sign.flip(k);
    return out;
}

StabGraph apply_equiv_e2(const StabGraph& g, std::size_t j, std::size_t k) {
    check_index(g, j);
    check_index(g, k);
    if (!g.has_edge(j, k))
        throw std::invalid_argument("E2: nodes " + std::to_string(j) + "," +
                                    std::to_string(k) + " are not connected");
    if (g.loop.get(j) || g.loop.get(k))
        throw std::invalid_argument("E2: nodes must be loopless");
    StabGraph out = g;
    bool sj = g.sign.get(j), sk = g.sign.get(k);
    out.hollow.flip(j);
    out.hollow.flip(k);
    lc_in_place(out, j);
    lc_in_place(out, k);
    lc_in_place(out, j);
    // Nodes connected to both original nodes flip their signs.
    for (std::size_t c = 0; c < g.n; ++c)
        if (c != j && c != k && g.has_edge(c, j) && g.has_edge(c, k)) out.sign.flip(c);
    // For each original node carrying a sign: flip it and its current neighbors.
    if (sj) {
        out.sign.flip(j);
        for (std::size_t c : out.neighbors(j)) out.sign.flip(c);
    }
    if (sk) {
        out.sign.flip(k);
        for (std::size_t c : out.neighbors(k)) out.sign.flip(c);
    }
    return out;
}

StabGraph reduce(const StabGraph& g) {
    StabGraph out = g;
    // Phase 1: no hollow node keeps a loop.
    for (;;) {
        std::size_t pick = out.n;
        for (std::size_t j = 0; j < out.n; ++j)
            if (out.hollow.get(j) && out.loop.get(j)) {
                pick = j;
                break;
            }
        if (pick == out.n) break;
        out = apply_equiv_e1(out, pick);
    }
    // Phase 2: no hollow–hollow edges.
    for (;;) {
        std::size_t a = out.n, b = out.n;
        for (std::size_t j = 0; j < out.n && a == out.n; ++j) {
            if (!out.hollow.get(j)) continue;
            for (std::size_t k = 0; k < out.n; ++k)
                if (k != j && out.adj.get(j, k) && out.hollow.get(k)) {
                    a = j;
                    b = k;
                    break;
                }
        }
        if (a == out.n) break;
        out = apply_equiv_e2(out, a, b);
    }
    return out;
}

StabGraph apply_cz(const StabGraph& g_in, std::size_t j, std::size_t k) {
    check_index(g_in, j);
    check_index(g_in, k);
    if (j == k) throw std::invalid_argument("apply_cz: nodes must differ");
    StabGraph g = g_in.is_reduced() ? g_in : reduce(g_in);

    bool hj = g.hollow.get(j), hk = g.hollow.get(k);
    if (!hj && !hk) {  // T(viii)
        g.toggle_edge(j, k);
        return g;
    }
    if (hj != hk) {  // T(ix)
        std::size_t h = hj ? j : k;
        std::size_t s = hj ? k : j;
        bool connected = g.has_edge(h, s);
        bool hsign = g.sign.get(h);
        auto nh = g.neighbors(h);
        for (std::size_t w : nh)
            if (w != s) g.toggle_edge(s, w);
        if ((connected && !hsign) || (!connected && hsign)) g.sign.flip(s);
        return g;
    }
    // T(x): both application nodes hollow (not adjacent in a reduced graph).
    auto na = g.neighbors(j);
    auto nb = g.neighbors(k);
    BitVec in_na(g.n), in_nb(g.n);
    for (std::size_t u : na) in_na.set(u, true);
    for (std::size_t u : nb) in_nb.set(u, true);
    StabGraph out = g;
    for (std::size_t u = 0; u < g.n; ++u)
        for (std::size_t w = u + 1; w < g.n; ++w) {
            bool hit = (in_na.get(u) && in_nb.get(w)) != (in_nb.get(u) && in_na.get(w));
            if (hit) out.toggle_edge(u, w);
        }
    for (std::size_t u = 0; u < g.n; ++u)
        if (in_na.get(u) && in_nb.get(u)) out.sign.flip(u);
    if (g.sign.get(j))
        for (std::size_t u : nb) out.sign.flip(u);
    if (g.sign.get(k))
        for (std::size_t u : na) out.sign.flip(u);
    return out;
}

namespace {

// Reduced equivalence rule E(i): hollow node `h` connected to solid node `s`
// carrying a loop — E1 on the solid node, then E1 on the hollow node, which
// acquired a loop from the first application.
StabGraph apply_equiv_ei(const StabGraph& g, std::size_t h, std::size_t s) {
    StabGraph out = apply_equiv_e1(g, s);
    return apply_equiv_e1(out, h);
}

}  // namespace

bool equivalent(const StabGraph& g1_in, const StabGraph& g2_in) {
    if (g1_in.n != g2_in.n) throw std::invalid_argument("equivalent: size mismatch");
    StabGraph a = reduce(g1_in);
    StabGraph b = reduce(g2_in);

    // Align unpaired hollow nodes: pick (p,q) with p hollow only in one graph,
    // q hollow only in the other, connected in either graph; apply E(i)/E(ii)
    // to the graph containing the edge. Pairs are processed in ascending order.
    for (;;) {
        bool acted = false;
        for (std::size_t p = 0; p < a.n && !acted; ++p) {
            if (a.hollow.get(p) == b.hollow.get(p)) continue;
            for (std::size_t q = 0; q < a.n && !acted; ++q) {
                if (q == p || a.hollow.get(q) == b.hollow.get(q)) continue;
                if (a.hollow.get(p) == a.hollow.get(q)) continue;  // same side
                for (StabGraph* gp : {&a, &b}) {
                    if (!gp->has_edge(p, q)) continue;
                    std::size_t h = gp->hollow.get(p) ? p : q;
                    std::size_t s = gp->hollow.get(p) ? q : p;
                    *gp = gp->loop.get(s) ? apply_equiv_ei(*gp, h, s)
                                          : apply_equiv_e2(*gp, h, s);
                    acted = true;
                    break;
                }
            }
        }
        if (!acted) break;
    }
    return a == b;
}

namespace {

struct RotationPlan {
    // Gate sequences per measured node: applied before (basis change to Z)
    // and after (back-rotation) the Z-type measurement.
    std::vector<std::pair<std::size_t, char>> pre;   // (node, gate) in order
    std::vector<std::pair<std::size_t, char>> post;
};

LocalGate to_local(char c) {
    switch (c) {
        case 'H': return LocalGate::H;
        case 'S': return LocalGate::S;
        case 'Z': return LocalGate::Z;
    }
    throw std::logic_error("bad gate letter");
}

}  // namespace

GraphMeasureResult measure_product(const StabGraph& g_in, const PauliOperator& M,
                                   std::optional<int> forced, CounterRng& rng) {
    if (M.n != g_in.n) throw std::invalid_argument("measure_product: size mismatch");
    if (!M.is_hermitian() || M.sign() != +1)
        throw std::invalid_argument("measure_product: operator must be Hermitian, sign +1");

    StabGraph g = g_in;
    std::vector<std::size_t> measured;
    RotationPlan plan;
    for (std::size_t j = 0; j < M.n; ++j) {
        char c = M.letter(j);
        if (c == 'I') continue;
        measured.push_back(j);
        if (c == 'X') {
            // X = H Z H: rotate with H, back-rotate with H.
            plan.pre.push_back({j, 'H'});
            plan.post.push_back({j, 'H'});
        } else if (c == 'Y') {
            // Y = (SH) Z (SH)†: rotate with (SH)† = Z·S then H, back-rotate
            // with H then S.
            plan.pre.push_back({j, 'Z'});
            plan.pre.push_back({j, 'S'});
            plan.pre.push_back({j, 'H'});
            plan.post.push_back({j, 'H'});
            plan.post.push_back({j, 'S'});
        }
    }
    for (auto [node, gate] : plan.pre) g = apply_local_gate(g, to_local(gate), node);

    // Reduce, then disconnect measured hollow nodes from unmeasured nodes.
    g = reduce(g);
    BitVec is_measured(g.n);
    for (std::size_t j : measured) is_measured.set(j, true);
    for (;;) {
        std::size_t h = g.n, u = g.n;
        for (std::size_t j = 0; j < g.n && h == g.n; ++j) {
            if (!is_measured.get(j) || !g.hollow.get(j)) continue;
            for (std::size_t k = 0; k < g.n; ++k)
                if (g.adj.get(j, k) && !is_measured.get(k)) {
                    h = j;
                    u = k;
                    break;
                }
        }
        if (h == g.n) break;
        if (!g.loop.get(u)) {
            g = apply_equiv_e2(g, h, u);  // measured node turns solid
        } else {
            g = apply_equiv_e1(g, u);  // gives the measured hollow node a loop
            g = apply_equiv_e1(g, h);  // then fills it
        }
        g = reduce(g);  // keep measured hollow nodes loopless/unconnected
    }

    GraphMeasureResult res;
    MeasuredSets& sets = res.sets;
    for (std::size_t j : measured) {
        sets.M_set.insert(j);
        if (g.hollow.get(j))
            sets.M_H.insert(j);
        else
            sets.M_S.insert(j);
    }
    for (std::size_t j : sets.M_S) {
        std::size_t cnt = 0;
        for (std::size_t k : sets.M_H)
            if (g.adj.get(j, k)) ++cnt;
        if (cnt % 2 == 0) sets.M_SE.insert(j);
    }
    for (std::size_t j : sets.M_H)
        if (g.sign.get(j)) ++sets.b;

    if (sets.M_SE.empty()) {
        res.outcome_bit = static_cast<int>(sets.b % 2);
        res.probability = 1.0;
    } else {
        res.probability = 0.5;
        res.outcome_bit = forced ? (*forced & 1) : (rng.next_bit() ? 1 : 0);
        const std::size_t m = static_cast<std::size_t>(res.outcome_bit);
        const std::size_t p = *sets.M_SE.begin();  // chosen node: lowest index
        const auto np = g.neighbors(p);            // snapshot
        const bool p_signed = g.sign.get(p);
        const bool mb_differ = (m % 2) != (sets.b % 2);

        // Step 1: for each neighbor of the chosen node, complement its edges
        // to unchosen nodes in M_SE.
        for (std::size_t v : np)
            for (std::size_t w : sets.M_SE)
                if (w != p && w != v) g.toggle_edge(v, w);

        // Step 2: sign bookkeeping.
        if (!p_signed) {
            for (std::size_t v : np)
                if (sets.M_SE.count(v)) g.sign.flip(v);
        } else {
            g.sign.set(p, false);
            for (std::size_t w : sets.M_SE)
                if (w != p && !g.adj.get(p, w)) g.sign.flip(w);
        }
        if (mb_differ) {
            g.sign.flip(p);
            for (std::size_t v : g.neighbors(p)) g.sign.flip(v);
        }

        // Step 3: rewire the chosen node to the other M_SE nodes; make it hollow.
        for (std::size_t k = 0; k < g.n; ++k)
            if (k != p) g.set_edge(p, k, false);
        for (std::size_t w : sets.M_SE)
            if (w != p) g.set_edge(p, w, true);
        g.hollow.set(p, true);

        // Step 4: clear a chosen-node loop.
        if (g.loop.get(p)) {
            g.loop.set(p, false);
            auto nb = g.neighbors(p);
            lc_in_place(g, p);
            for (std::size_t v : nb) advance_loop(g, v);
            if (mb_differ)
                for (std::size_t w : sets.M_SE)
                    if (w != p) g.sign.flip(w);
        }
    }

    for (auto [node, gate] : plan.post) g = apply_local_gate(g, to_local(gate), node);
    res.post = std::move(g);
    return res;
}

namespace {

// Z measurement on a solid node: always random. Disconnect the node; a -1
// outcome flips the former neighbors' signs; the node ends hollow with the
// outcome as its sign.
void measure_z_on_solid(StabGraph& g, std::size_t node, int m) {
    auto nb = g.neighbors(node);
    for (std::size_t k : nb) g.set_edge(node, k, false);
    if (m == 1)
        for (std::size_t k : nb) g.sign.flip(k);
    g.hollow.set(node, true);
    g.loop.set(node, false);
    g.sign.set(node, m == 1);
}

GraphMeasureResult measure_single_z(const StabGraph& g_in, std::size_t node,
                                    std::optional<int> forced, CounterRng& rng) {
    StabGraph g = g_in;
    GraphMeasureResult res;
    if (g.hollow.get(node)) {
        if (!g.loop.get(node)) {
            auto nb = g.neighbors(node);
            if (nb.empty()) {
                // Isolated hollow node: the outcome is its sign, definitely.
                res.outcome_bit = g.sign.get(node) ? 1 : 0;
                res.probability = 1.0;
                res.post = std::move(g);
                return res;
            }
            std::size_t loopless = g.n;
            for (std::size_t k : nb)
                if (!g.loop.get(k)) {
                    loopless = k;
                    break;
                }
            if (loopless != g.n) {
                g = apply_equiv_e2(g, node, loopless);  // node turns solid
            } else {
                g = apply_equiv_e1(g, nb.front());  // node acquires a loop
                g = apply_equiv_e1(g, node);        // then turns solid
            }
        } else {
            g = apply_equiv_e1(g, node);  // hollow+loop → solid
        }
    }
    res.probability = 0.5;
    res.outcome_bit = forced ? (*forced & 1) : (rng.next_bit() ? 1 : 0);
    measure_z_on_solid(g, node, res.outcome_bit);
    res.post = std::move(g);
    return res;
}

}  // namespace

GraphMeasureResult measure_single(const StabGraph& g, std::size_t node, char basis,
                                  std::optional<int> forced, CounterRng& rng) {
    check_index(g, node);
    switch (basis) {
        case 'Z':
            return measure_single_z(g, node, forced, rng);
        case 'X': {
            // X = H Z H: toggle the fill, Z-measure, toggle back.
            StabGraph h = apply_local_gate(g, LocalGate::H, node);
            GraphMeasureResult res = measure_single_z(h, node, forced, rng);
            res.post = apply_local_gate(res.post, LocalGate::H, node);
            return res;
        }
        case 'Y': {
            // Y = S X S†: apply S† = Z·S, X-measure, apply S to the result.
            StabGraph r = apply_local_gate(g, LocalGate::Z, node);
            r = apply_local_gate(r, LocalGate::S, node);
            GraphMeasureResult res = measure_single(r, node, 'X', forced, rng);
            res.post = apply_local_gate(res.post, LocalGate::S, node);
            return res;
        }
    }
    throw std::invalid_argument("measure_single: basis must be X, Y, or Z");
}

GraphCircuit to_circuit(const StabGraph& g) {
    GraphCircuit c(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t k = j + 1; k < g.n; ++k)
            if (g.adj.get(j, k)) c.cz_edges.push_back({j, k});
    c.z_flags = g.sign;
    c.s_flags = g.loop;
    c.h_flags = g.hollow;
    return c;
}

StabGraph from_circuit(const GraphCircuit& c) {
    StabGraph g(c.n);
    for (auto [a, b] : c.cz_edges) g.set_edge(a, b, true);
    g.sign = c.z_flags;
    g.loop = c.s_flags;
    g.hollow = c.h_flags;
    return g;
}

StabilizerTableau to_tableau(const StabGraph& g) {
    std::vector<PauliOperator> rows;
    rows.reserve(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        PauliOperator row(g.n);
        row.x.set(j, true);
        for (std::size_t k = 0; k < g.n; ++k)
            if (g.adj.get(j, k)) row.z.set(k, true);
        rows.push_back(std::move(row));
    }
    for (std::size_t q = 0; q < g.n; ++q) {
        if (g.sign.get(q))
            for (auto& row : rows) conjugate_pauli(row, CliffordGate::Z, q);
        if (g.loop.get(q))
            for (auto& row : rows) conjugate_pauli(row, CliffordGate::S, q);
        if (g.hollow.get(q))
            for (auto& row : rows) conjugate_pauli(row, CliffordGate::H, q);
    }
    return StabilizerTableau(std::move(rows));
}

StabGraph from_tableau(const StabilizerTableau& t) {
    GraphFormResult gf = to_graph_form(t);
    StabGraph g(t.n);
    g.adj = gf.tableau.graph_adjacency();
    g.sign = gf.tableau.sign_bits();
    for (const LocalOp& op : gf.local_ops) {
        if (op.gate == CliffordGate::H)
            g.hollow.set(op.qubit, true);
        else
            g.loop.set(op.qubit, true);
    }
    return g;
}

std::string StabGraph::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i)
        j["nodes"].push_back({{"id", i},
                              {"fill", hollow.get(i) ? "hollow" : "solid"},
                              {"loop", loop.get(i)},
                              {"sign", sign.get(i)}});
    j["edges"] = nlohmann::json::array();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (adj.get(a, b)) j["edges"].push_back({a, b});
    return j.dump(2);
}

StabGraph StabGraph::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    StabGraph g(j.at("n").get<std::size_t>());
    for (const auto& node : j.at("nodes")) {
        std::size_t id = node.at("id").get<std::size_t>();
        if (id >= g.n) throw std::invalid_argument("graph JSON: node id out of range");
        std::string fill = node.at("fill").get<std::string>();
        if (fill != "solid" && fill != "hollow")
            throw std::invalid_argument("graph JSON: fill must be solid or hollow");
        g.hollow.set(id, fill == "hollow");
        g.loop.set(id, node.value("loop", false));
        g.sign.set(id, node.value("sign", false));
    }
    for (const auto& e : j.at("edges")) {
        std::size_t a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>();
        if (a >= g.n || b >= g.n || a == b)
            throw std::invalid_argument("graph JSON: bad edge");
        g.set_edge(a, b, true);
    }
    return g;
}

std::string StabGraph::to_dot() const {
    std::string out = "graph stabilizer {\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += "  n" + std::to_string(i) + " [label=\"" + std::to_string(i) +
               (sign.get(i) ? "\\n-" : "") + "\", shape=circle, style=" +
               (hollow.get(i) ? "solid" : "filled") + "];\n";
        if (loop.get(i))
            out += "  n" + std::to_string(i) + " -- n" + std::to_string(i) + ";\n";
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (adj.get(a, b))
                out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace stabloc
