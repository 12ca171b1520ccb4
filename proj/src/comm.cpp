#include "stabloc/comm.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "stabloc/tableau.hpp"

namespace stabloc {
namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

void require_match(const BitMatrix& gamma, const MeasurementAssignment& a) {
    require_adjacency(gamma);
    if (a.n != gamma.rows()) {
        throw std::invalid_argument("assignment size does not match the graph");
    }
}

// Hidden bits for one model run: the given z, or a seeded draw.
BitVec hidden_bits(std::size_t n, const std::optional<BitVec>& r,
                   std::uint64_t seed) {
    if (r) {
        if (r->size() != n) {
            throw std::invalid_argument("hidden-bit vector has the wrong length");
        }
        return *r;
    }
    CounterRng rng(seed);
    BitVec z(n);
    for (std::size_t j = 0; j < n; ++j) z.set(j, rng.next_bit());
    return z;
}

// Table entry exponent for one site under the v = 0, c = 0 table:
// z_j for Z, x_j = sum of neighboring z's for X, and x_j + z_j for Y.
bool table_exponent(char letter, std::size_t j, const BitVec& z,
                    const BitMatrix& gamma) {
    if (letter == 'I') return false;
    bool x = gamma.row(j).dot(z);
    if (letter == 'X') return x;
    if (letter == 'Y') return x ^ z.get(j);
    return z.get(j);
}

// Integer tallies t_j = sum_k Gamma_jk b_k.
std::vector<int> tallies(const BitMatrix& gamma, const BitVec& b) {
    std::vector<int> t(gamma.rows(), 0);
    for (std::size_t j = 0; j < gamma.rows(); ++j) {
        t[j] = int(gamma.row(j).dot_int(b));
    }
    return t;
}

std::size_t edge_count(const BitMatrix& gamma) {
    std::size_t twice = 0;
    for (std::size_t j = 0; j < gamma.rows(); ++j) {
        twice += gamma.row(j).popcount();
    }
    return twice / 2;
}

// One parity constraint on formal +/-1 model variables.
struct Constraint {
    std::vector<std::string> vars;
    int rhs = 1;
};

CounterexampleReport multiply_constraints(const std::vector<Constraint>& cs) {
    std::map<std::string, int> parity;
    int prod = 1;
    for (const Constraint& c : cs) {
        for (const std::string& v : c.vars) parity[v] ^= 1;
        prod *= c.rhs;
    }
    bool cancelled = true;
    for (const auto& entry : parity) {
        if (entry.second) cancelled = false;
    }
    CounterexampleReport rep;
    rep.constraints = cs.size();
    rep.product = prod;
    rep.contradiction = cancelled && prod == -1;
    rep.details = std::to_string(cs.size()) + " constraints, product = " +
                  (prod == -1 ? "-1" : "1");
    if (!cancelled) rep.details += " (variables did not cancel)";
    return rep;
}

}  // namespace

MeasurementAssignment::MeasurementAssignment(std::string measurement)
    : MeasurementAssignment(std::move(measurement), BitVec()) {
    mask = BitVec(n);
    for (std::size_t j = 0; j < n; ++j) mask.set(j, true);
}

MeasurementAssignment::MeasurementAssignment(std::string measurement,
                                             BitVec mask_bits)
    : n(measurement.size()), letters(std::move(measurement)),
      mask(std::move(mask_bits)) {
    for (char c : letters) {
        if (!valid_letter(c)) {
            throw std::invalid_argument(std::string("invalid Pauli letter '") +
                                        c + "'");
        }
    }
    if (mask.size() != 0 && mask.size() != n) {
        throw std::invalid_argument("mask length does not match the measurement");
    }
}

BitVec MeasurementAssignment::r1() const {
    BitVec v(n);
    for (std::size_t j = 0; j < n; ++j) {
        v.set(j, letters[j] == 'X' || letters[j] == 'Y');
    }
    return v;
}

BitVec MeasurementAssignment::r2() const {
    BitVec v(n);
    for (std::size_t j = 0; j < n; ++j) {
        v.set(j, letters[j] == 'Y' || letters[j] == 'Z');
    }
    return v;
}

std::string MeasurementAssignment::to_json() const {
    nlohmann::json j;
    j["measurement"] = letters;
    j["mask"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) j["mask"].push_back(mask.get(i) ? 1 : 0);
    return j.dump();
}

MeasurementAssignment MeasurementAssignment::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string letters = j.at("measurement").get<std::string>();
    if (!j.contains("mask")) return MeasurementAssignment(letters);
    BitVec mask(letters.size());
    auto bits = j.at("mask");
    if (bits.size() != letters.size()) {
        throw std::invalid_argument("mask length does not match the measurement");
    }
    for (std::size_t i = 0; i < letters.size(); ++i) {
        mask.set(i, bits[i].get<int>() != 0);
    }
    return MeasurementAssignment(letters, mask);
}

std::string assignment_to_json(const BitMatrix& gamma,
                               const MeasurementAssignment& a) {
    require_match(gamma, a);
    nlohmann::json j = nlohmann::json::parse(a.to_json());
    j["graph"] = nlohmann::json::array();
    for (std::size_t r = 0; r < gamma.rows(); ++r) {
        j["graph"].push_back(gamma.row(r).to_string());
    }
    return j.dump();
}

std::pair<BitMatrix, MeasurementAssignment> assignment_from_json(
    const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto rows = j.at("graph");
    std::size_t n = rows.size();
    BitMatrix gamma(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        std::string line = rows[r].get<std::string>();
        if (line.size() != n) {
            throw std::invalid_argument("adjacency matrix is not square");
        }
        for (std::size_t c = 0; c < n; ++c) gamma.set(r, c, line[c] == '1');
    }
    MeasurementAssignment a = MeasurementAssignment::from_json(text);
    require_match(gamma, a);
    return {gamma, a};
}

int ModelRun::product() const {
    int p = 1;
    for (int m : outputs) p *= m;
    return p;
}

int ModelRun::product(const BitVec& mask) const {
    if (mask.size() != outputs.size()) {
        throw std::invalid_argument("mask length does not match the run");
    }
    int p = 1;
    for (std::size_t j = 0; j < outputs.size(); ++j) {
        if (mask.get(j)) p *= outputs[j];
    }
    return p;
}

void require_adjacency(const BitMatrix& gamma) {
    if (gamma.rows() != gamma.cols()) {
        throw std::invalid_argument("adjacency matrix is not square");
    }
    for (std::size_t j = 0; j < gamma.rows(); ++j) {
        if (gamma.get(j, j)) {
            throw std::invalid_argument("adjacency matrix has a nonzero diagonal");
        }
        for (std::size_t k = j + 1; k < gamma.cols(); ++k) {
            if (gamma.get(j, k) != gamma.get(k, j)) {
                throw std::invalid_argument("adjacency matrix is not symmetric");
            }
        }
    }
}

SubMeasurementKind classify_submeasurement(const BitMatrix& gamma,
                                           const MeasurementAssignment& a) {
    require_match(gamma, a);
    BitVec b = a.r1();
    BitVec r2 = a.r2();
    for (std::size_t j = 0; j < a.n; ++j) {
        bool lhs = r2.get(j) && a.mask.get(j);
        bool rhs = false;
        for (std::size_t k = 0; k < a.n; ++k) {
            if (gamma.get(j, k) && b.get(k) && a.mask.get(k)) rhs = !rhs;
        }
        if (lhs != rhs) return SubMeasurementKind::random;
    }
    return SubMeasurementKind::definite;
}

int qm_sub_sign(const BitMatrix& gamma, const MeasurementAssignment& a) {
    if (classify_submeasurement(gamma, a) != SubMeasurementKind::definite) {
        throw std::invalid_argument("submeasurement is random, not definite");
    }
    BitVec b = a.r1();
    int exponent = 0;
    for (std::size_t j = 0; j < a.n; ++j) {
        if (!b.get(j) || !a.mask.get(j)) continue;
        int t = 0;
        for (std::size_t k = 0; k < a.n; ++k) {
            if (gamma.get(j, k) && b.get(k) && a.mask.get(k)) ++t;
        }
        exponent += t / 2;  // (t - t mod 2) / 2 halves of i^2
    }
    return exponent % 2 == 0 ? 1 : -1;
}

ModelRun nn_run(const BitMatrix& gamma, const MeasurementAssignment& a,
                std::optional<BitVec> r, std::uint64_t seed, bool variant) {
    require_match(gamma, a);
    BitVec z = hidden_bits(a.n, r, seed);
    ModelRun run;
    run.b = a.r1();
    run.t = tallies(gamma, run.b);
    run.outputs.resize(a.n, 1);
    run.bits_communicated = 2 * edge_count(gamma);
    for (std::size_t j = 0; j < a.n; ++j) {
        char letter = a.letters[j];
        int value = table_exponent(letter, j, z, gamma) ? -1 : 1;
        int tm = run.t[j] % 4;
        bool flip = false;
        if (letter == 'X') flip = variant ? (tm == 1 || tm == 2) : (tm == 2 || tm == 3);
        if (letter == 'Y') flip = variant ? (tm == 0 || tm == 3) : (tm == 2 || tm == 3);
        run.outputs[j] = flip ? -value : value;
    }
    return run;
}

int nn_sub_prediction(const BitMatrix& gamma, const MeasurementAssignment& a) {
    if (classify_submeasurement(gamma, a) != SubMeasurementKind::definite) {
        throw std::invalid_argument("submeasurement is random, not definite");
    }
    BitVec b = a.r1();
    std::vector<int> t = tallies(gamma, b);  // everyone broadcasts regardless of the mask
    int exponent = 0;
    for (std::size_t j = 0; j < a.n; ++j) {
        if (b.get(j) && a.mask.get(j)) exponent += t[j] / 2;
    }
    return exponent % 2 == 0 ? 1 : -1;
}

BitMatrix chain_graph(std::size_t n) {
    BitMatrix g(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        g.set(j, j + 1, true);
        g.set(j + 1, j, true);
    }
    return g;
}

BitMatrix ring_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("a ring needs at least 3 nodes");
    BitMatrix g = chain_graph(n);
    g.set(0, n - 1, true);
    g.set(n - 1, 0, true);
    return g;
}

BitMatrix grid_graph(std::size_t rows, std::size_t cols) {
    std::size_t n = rows * cols;
    BitMatrix g(n, n);
    auto id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                g.set(id(r, c), id(r, c + 1), true);
                g.set(id(r, c + 1), id(r, c), true);
            }
            if (r + 1 < rows) {
                g.set(id(r, c), id(r + 1, c), true);
                g.set(id(r + 1, c), id(r, c), true);
            }
        }
    }
    return g;
}

BitMatrix complete_bipartite_graph(std::size_t p, std::size_t q) {
    BitMatrix g(p + q, p + q);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = p; k < p + q; ++k) {
            g.set(j, k, true);
            g.set(k, j, true);
        }
    }
    return g;
}

BitMatrix symmetric_difference_graph(std::size_t n, std::size_t b_size) {
    if (b_size > n) {
        throw std::invalid_argument("removed clique is larger than the graph");
    }
    BitMatrix g(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            bool both_in_b = j >= n - b_size && k >= n - b_size;
            if (!both_in_b) {
                g.set(j, k, true);
                g.set(k, j, true);
            }
        }
    }
    return g;
}

std::string ClassReport::to_json() const {
    nlohmann::json j;
    j["family"] = family;
    j["n"] = n;
    j["checked"] = checked;
    j["violations"] = nlohmann::json::array();
    for (const ClassViolation& v : violations) {
        nlohmann::json item;
        item["measurement"] = v.measurement;
        item["mask"] = nlohmann::json::array();
        for (std::size_t i = 0; i < v.mask.size(); ++i) {
            item["mask"].push_back(v.mask.get(i) ? 1 : 0);
        }
        item["model"] = v.model;
        item["qm"] = v.qm;
        j["violations"].push_back(item);
    }
    return j.dump();
}

// The matrix whose mod-2 nullspace consists of exactly the masks of
// definite submeasurements of the given global measurement.
static BitMatrix definite_mask_matrix(const BitMatrix& gamma,
                                      const MeasurementAssignment& a) {
    BitVec b = a.r1();
    BitVec r2 = a.r2();
    BitMatrix gt(a.n, a.n);
    for (std::size_t j = 0; j < a.n; ++j) {
        for (std::size_t k = 0; k < a.n; ++k) {
            gt.set(j, k, gamma.get(j, k) && b.get(k));
        }
        if (r2.get(j)) gt.flip(j, j);
    }
    return gt;
}

ClassReport verify_graph(const BitMatrix& gamma, std::string family_label) {
    require_adjacency(gamma);
    std::size_t n = gamma.rows();
    if (n > 8) throw std::invalid_argument("exhaustive check limited to 8 nodes");
    ClassReport report;
    report.family = std::move(family_label);
    report.n = n;

    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= 4;
    std::string letters(n, 'I');
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t j = 0; j < n; ++j) {
            letters[j] = kLetters[c % 4];
            c /= 4;
        }
        MeasurementAssignment global(letters);
        std::vector<BitVec> basis =
            nullspace_basis(definite_mask_matrix(gamma, global));
        std::size_t combos = std::size_t(1) << basis.size();
        for (std::size_t sel = 0; sel < combos; ++sel) {
            BitVec e(n);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if ((sel >> i) & 1u) e ^= basis[i];
            }
            MeasurementAssignment sub(letters, e);
            int model = nn_sub_prediction(gamma, sub);
            int qm = qm_sub_sign(gamma, sub);
            ++report.checked;
            if (model != qm) {
                report.violations.push_back({letters, e, model, qm});
            }
        }
    }
    return report;
}

std::vector<ClassReport> verify_class(const std::string& family,
                                      std::size_t n_max, std::size_t jobs) {
    if (n_max > 8) throw std::invalid_argument("exhaustive check limited to 8 nodes");
    if (jobs == 0) throw std::invalid_argument("jobs must be positive");
    std::vector<std::pair<BitMatrix, std::string>> members;
    if (family == "complete_bipartite") {
        for (std::size_t p = 1; p <= n_max / 2; ++p) {
            for (std::size_t q = p; p + q <= n_max; ++q) {
                std::string label = "complete_bipartite(" + std::to_string(p) +
                                    "," + std::to_string(q) + ")";
                members.emplace_back(complete_bipartite_graph(p, q), label);
            }
        }
    } else if (family == "symmetric_difference") {
        for (std::size_t n = 2; n <= n_max; ++n) {
            for (std::size_t b = 0; b < n; ++b) {
                std::string label = "symmetric_difference(" + std::to_string(n) +
                                    "," + std::to_string(b) + ")";
                members.emplace_back(symmetric_difference_graph(n, b), label);
            }
        }
    } else if (family == "cluster2x3") {
        members.emplace_back(grid_graph(2, 3), "cluster2x3");
    } else {
        throw std::invalid_argument("unknown graph family: " + family);
    }

    std::vector<ClassReport> reports(members.size());
    auto run_member = [&](std::size_t i) {
        reports[i] = verify_graph(members[i].first, members[i].second);
    };
    if (jobs <= 1 || members.size() <= 1) {
        for (std::size_t i = 0; i < members.size(); ++i) run_member(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < members.size(); i = next++)
                run_member(i);
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(jobs, members.size()); ++w)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return reports;
}

namespace {

// Sentence grammar for linear chains, parsed over the global letters. A
// sentence is a stabilizer element: words (X, YY, or Y X^k Y) separated by
// singleton I's and bracketed by Z's, with virtual Z's beyond both chain
// ends. A site can always be dropped to I by the submeasurement, but word
// letters and bracketing Z's must match the global letters exactly.
bool word_right(const std::string& L, std::ptrdiff_t q);

// Position p must close the sentence (a Z bracket, possibly virtual) or be
// a separator I followed immediately by another word.
bool boundary_right(const std::string& L, std::ptrdiff_t p) {
    if (p >= std::ptrdiff_t(L.size())) return true;  // virtual Z
    if (L[p] == 'Z') return true;
    return word_right(L, p + 1);  // p dropped to a singleton I
}

bool word_right(const std::string& L, std::ptrdiff_t q) {
    std::ptrdiff_t n = L.size();
    if (q >= n) return false;
    if (L[q] == 'X') return boundary_right(L, q + 1);
    if (L[q] != 'Y') return false;
    if (q + 1 < n && L[q + 1] == 'Y') return boundary_right(L, q + 2);
    std::ptrdiff_t k = q + 1;
    while (k < n && L[k] == 'X') ++k;
    if (k > q + 1 && k < n && L[k] == 'Y') return boundary_right(L, k + 1);
    return false;
}

bool word_left(const std::string& L, std::ptrdiff_t q);

bool boundary_left(const std::string& L, std::ptrdiff_t p) {
    if (p < 0) return true;  // virtual Z
    if (L[p] == 'Z') return true;
    return word_left(L, p - 1);
}

bool word_left(const std::string& L, std::ptrdiff_t q) {
    if (q < 0) return false;
    if (L[q] == 'X') return boundary_left(L, q - 1);
    if (L[q] != 'Y') return false;
    if (q - 1 >= 0 && L[q - 1] == 'Y') return boundary_left(L, q - 2);
    std::ptrdiff_t k = q - 1;
    while (k >= 0 && L[k] == 'X') --k;
    if (k < q - 1 && k >= 0 && L[k] == 'Y') return boundary_left(L, k - 1);
    return false;
}

}  // namespace

ModelRun chain_run(const BitMatrix& gamma, const MeasurementAssignment& a,
                   std::optional<BitVec> r, std::uint64_t seed) {
    require_match(gamma, a);
    if (gamma != chain_graph(a.n)) {
        throw std::invalid_argument("chain model requires a linear-chain graph");
    }
    BitVec z = hidden_bits(a.n, r, seed);
    ModelRun run;
    run.b = BitVec(a.n);
    run.t.resize(a.n, 0);
    run.outputs.resize(a.n, 1);
    std::size_t broadcasters = 0;
    for (std::size_t j = 0; j < a.n; ++j) {
        if (a.letters[j] == 'X' || a.letters[j] == 'Z') {
            run.b.set(j, true);
            ++broadcasters;
        }
    }
    run.bits_communicated = broadcasters * (a.n > 0 ? a.n - 1 : 0);
    for (std::size_t j = 0; j < a.n; ++j) {
        char letter = a.letters[j];
        int value = table_exponent(letter, j, z, gamma) ? -1 : 1;
        if (letter == 'X') {
            // Middle of an odd X-run flanked by Y's on both sides?
            std::size_t lo = j, hi = j;
            while (lo > 0 && a.letters[lo - 1] == 'X') --lo;
            while (hi + 1 < a.n && a.letters[hi + 1] == 'X') ++hi;
            bool odd_middle = (hi - lo) % 2 == 0 && j == (lo + hi) / 2;
            bool flanked = lo > 0 && a.letters[lo - 1] == 'Y' && hi + 1 < a.n &&
                           a.letters[hi + 1] == 'Y';
            // The word must sit inside a sentence realizable from the
            // global letters, or no definite submeasurement contains it.
            bool in_sentence =
                flanked &&
                boundary_left(a.letters, std::ptrdiff_t(lo) - 2) &&
                boundary_right(a.letters, std::ptrdiff_t(hi) + 2);
            if (odd_middle && in_sentence) {
                value = -value;
                run.t[j] = 1;
            }
        }
        run.outputs[j] = value;
    }
    return run;
}

ModelRun universal_run(const BitMatrix& gamma, const MeasurementAssignment& a,
                       std::optional<BitVec> r, std::uint64_t seed) {
    require_match(gamma, a);
    BitVec z = hidden_bits(a.n, r, seed);
    ModelRun run;
    run.b = a.r1();
    run.t.resize(a.n, 0);
    run.outputs.resize(a.n, 1);
    for (std::size_t j = 0; j < a.n; ++j) {
        run.outputs[j] = table_exponent(a.letters[j], j, z, gamma) ? -1 : 1;
    }
    std::vector<BitVec> basis =
        nullspace_basis(definite_mask_matrix(gamma, a));
    std::size_t corrections = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        // Coordinate owned by this basis vector alone.
        std::size_t owner = a.n;
        for (std::size_t c = 0; c < a.n && owner == a.n; ++c) {
            if (!basis[i].get(c)) continue;
            bool unique = true;
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if (k != i && basis[k].get(c)) unique = false;
            }
            if (unique) owner = c;
        }
        if (owner == a.n) {
            throw std::logic_error("echelon nullspace basis lacks an owned coordinate");
        }
        if (qm_sub_sign(gamma, MeasurementAssignment(a.letters, basis[i])) == -1) {
            run.outputs[owner] = -run.outputs[owner];
            run.t[owner] = 1;
            ++corrections;
        }
    }
    run.bits_communicated = 2 * a.n + corrections;
    return run;
}

std::string CounterexampleReport::to_json() const {
    nlohmann::json j;
    j["contradiction"] = contradiction;
    j["constraints"] = constraints;
    j["product"] = product;
    j["details"] = details;
    return j.dump();
}

namespace {

CounterexampleReport verify_ghz() {
    // GHZ stabilizer <XXX, ZZI, IZZ>; the four local-realism constraints come
    // from the elements with patterns XXX, XYY, YXY, YYX and their exact signs.
    StabilizerTableau t({PauliOperator::parse("+XXX"), PauliOperator::parse("+ZZI"),
                         PauliOperator::parse("+IZZ")});
    struct Element {
        std::string pattern;
        BitVec a;
    };
    std::vector<Element> elements{{"XXX", BitVec(3, {1, 0, 0})},
                                  {"XYY", BitVec(3, {1, 0, 1})},
                                  {"YXY", BitVec(3, {1, 1, 1})},
                                  {"YYX", BitVec(3, {1, 1, 0})}};
    std::vector<Constraint> cs;
    for (const Element& el : elements) {
        Constraint c;
        for (std::size_t j = 0; j < 3; ++j) {
            c.vars.push_back(std::string(1, char(std::tolower(el.pattern[j]))) +
                             std::to_string(j + 1));
        }
        c.rhs = element_sign(t, el.a);
        cs.push_back(c);
    }
    return multiply_constraints(cs);
}

CounterexampleReport verify_cluster2x3() {
    // 2x3 grid, nodes 1 2 3 / 4 5 6. The submeasurement Y1 Y2 Y3 Y5 of the
    // global measurement Y^6 is definite with quantum sign -1, while the
    // v = c = 0 table alone yields +1, so the site flip decisions d_j must
    // have odd parity over {1,2,3,5}. Site invariance under the grid's two
    // reflections forces d_1 = d_3 and d_2 = d_5, an even parity.
    BitMatrix gamma = grid_graph(2, 3);
    MeasurementAssignment sub("YYYYYY", BitVec(6, {1, 1, 1, 0, 1, 0}));
    int qm = qm_sub_sign(gamma, sub);

    // Confirm the two reflections are automorphisms fixing the measurement.
    auto check_perm = [&gamma](const std::vector<std::size_t>& perm) {
        for (std::size_t j = 0; j < 6; ++j) {
            for (std::size_t k = 0; k < 6; ++k) {
                if (gamma.get(j, k) != gamma.get(perm[j], perm[k])) {
                    throw std::logic_error("permutation is not a graph automorphism");
                }
            }
        }
    };
    check_perm({2, 1, 0, 5, 4, 3});  // horizontal flip: 1<->3, 4<->6
    check_perm({3, 4, 5, 0, 1, 2});  // vertical flip: 1<->4, 2<->5, 3<->6

    std::vector<Constraint> cs;
    cs.push_back({{"d1", "d3"}, 1});          // symmetric pair under the h-flip
    cs.push_back({{"d2", "d5"}, 1});          // symmetric pair under the v-flip
    cs.push_back({{"d1", "d2", "d3", "d5"}, qm});
    CounterexampleReport rep = multiply_constraints(cs);
    rep.details = "2 symmetric pairs, product = " +
                  std::string(rep.product == -1 ? "-1" : "1");
    return rep;
}

// Variable for a nearest-neighbor model on a chain: lowercase letter, site
// (1-based), and the letters measured by the neighboring sites.
std::string chain_variable(const std::string& letters, std::size_t j) {
    std::string alpha;
    if (j > 0) alpha += letters[j - 1];
    if (j + 1 < letters.size()) alpha += letters[j + 1];
    return std::string(1, char(std::tolower(letters[j]))) +
           std::to_string(j + 1) + "^" + alpha;
}

CounterexampleReport verify_chain11() {
    // Sixteen definite submeasurements of an 11-qubit chain. Each entry is
    // the global measurement (1-based site: letter) and the sites excluded
    // from the submeasurement (context only).
    struct Row {
        std::string global;  // letters for sites 1..11
        std::vector<std::size_t> excluded;
    };
    std::vector<Row> rows{
        {"ZXYXXXZIIII", {3, 5}},  {"ZXYXYXZIIII", {3, 5}},
        {"IZYXXXYZIII", {}},      {"IZXXXXXZIII", {4, 6}},
        {"IZYXYXYXYZI", {6}},     {"IZXXYXYZIII", {4}},
        {"IIZXXXYXZII", {5, 7}},  {"IIZXXXZIIII", {5}},
        {"IIZXYXYXZII", {5, 7}},  {"IIZXYXZIIII", {5}},
        {"IIIZXXYXYZI", {6}},     {"IIIZXXXZIII", {6}},
        {"IIIIZXYXYXZ", {7, 9}},  {"IIIIZXYXZII", {7}},
        {"IIIIZXYXYXZ", {7, 9}},  {"IIIIZXYXZII", {7}},
    };
    BitMatrix gamma = chain_graph(11);
    std::vector<Constraint> cs;
    for (const Row& row : rows) {
        BitVec mask(11);
        for (std::size_t j = 0; j < 11; ++j) {
            mask.set(j, row.global[j] != 'I');
        }
        for (std::size_t site : row.excluded) mask.set(site - 1, false);
        MeasurementAssignment a(row.global, mask);
        Constraint c;
        for (std::size_t j = 0; j < 11; ++j) {
            if (mask.get(j)) c.vars.push_back(chain_variable(row.global, j));
        }
        c.rhs = qm_sub_sign(gamma, a);
        cs.push_back(c);
    }
    return multiply_constraints(cs);
}

}  // namespace

CounterexampleReport verify_counterexample_ring(std::size_t f) {
    if (f == 0 || f % 2 == 0) {
        throw std::invalid_argument("ring construction requires odd positive f");
    }
    std::size_t n = 12 * f;
    BitMatrix gamma = ring_graph(n);

    // 1-based site sets: triangle vertices, leg midpoints, the Y sites, and
    // the left/right X sites, plus the six open segments between boundaries.
    auto is_vertex = [f](std::size_t j) { return j % (4 * f) == 0; };
    auto is_midpoint = [f](std::size_t j) {
        return j % (2 * f) == 0 && j % (4 * f) != 0;
    };
    auto in_l = [&](std::size_t j) {
        return !is_vertex(j) && !is_midpoint(j) && j % 4 == 2;
    };
    auto in_r = [&](std::size_t j) {
        return !is_vertex(j) && !is_midpoint(j) && j % 4 == 0;
    };
    auto segment = [f](std::size_t j) {  // 1..6, or 0 for boundaries
        if (j % (2 * f) == 0) return std::size_t(0);
        return (j - 1) / (2 * f) + 1;
    };
    // The vertex visible from each segment at distance <= 2f - 1.
    auto segment_vertex = [f, n](std::size_t seg) {
        switch (seg) {
            case 1: return n;          // 12f
            case 2: case 3: return 4 * f;
            case 4: case 5: return 8 * f;
            default: return n;         // segment 6 -> 12f
        }
    };

    // One constraint per global measurement: the vertex letters, and the
    // 1-based sites included in the definite submeasurement.
    struct Spec {
        char v4, v8, v12;
        std::vector<std::size_t> included;
    };
    auto in_segments = [&](std::size_t j, std::size_t s1, std::size_t s2) {
        return segment(j) == s1 || segment(j) == s2;
    };
    std::vector<Spec> specs(5);
    specs[0] = {'X', 'X', 'X', {}};
    specs[1] = {'Y', 'Y', 'Y', {}};
    specs[2] = {'Y', 'X', 'Y', {}};
    specs[3] = {'Y', 'Y', 'X', {}};
    specs[4] = {'X', 'Y', 'Y', {}};
    for (std::size_t j = 1; j <= n; ++j) {
        bool odd = j % 2 == 1;
        // XXX: both boundary rings and all of L and R.
        if (j % (2 * f) == 0 || in_l(j) || in_r(j)) specs[0].included.push_back(j);
        // YYY: the midpoints, every Y site, and L.
        if (is_midpoint(j) || odd || in_l(j)) specs[1].included.push_back(j);
        // YXY: vertices, midpoints 6f and 10f, Y in segments 1-2,
        // X-context sites in segments 4-5, Y-context L in 3,6 and R elsewhere.
        if (is_vertex(j) || j == 6 * f || j == 10 * f ||
            (odd && in_segments(j, 1, 2)) ||
            ((in_l(j) || in_r(j)) && in_segments(j, 4, 5)) ||
            (in_l(j) && in_segments(j, 3, 6)) ||
            (in_r(j) && !in_segments(j, 4, 5))) {
            specs[2].included.push_back(j);
        }
        // YYX: cyclic shift of the previous case.
        if (is_vertex(j) || j == 2 * f || j == 10 * f ||
            (odd && in_segments(j, 3, 4)) ||
            ((in_l(j) || in_r(j)) && in_segments(j, 6, 1)) ||
            (in_l(j) && in_segments(j, 5, 2)) ||
            (in_r(j) && !in_segments(j, 6, 1))) {
            specs[3].included.push_back(j);
        }
        // XYY: the other cyclic shift.
        if (is_vertex(j) || j == 2 * f || j == 6 * f ||
            (odd && in_segments(j, 5, 6)) ||
            ((in_l(j) || in_r(j)) && in_segments(j, 2, 3)) ||
            (in_l(j) && in_segments(j, 1, 4)) ||
            (in_r(j) && !in_segments(j, 2, 3))) {
            specs[4].included.push_back(j);
        }
    }

    std::vector<Constraint> cs;
    for (const Spec& spec : specs) {
        std::string letters(n, 'X');
        for (std::size_t j = 1; j <= n; ++j) {
            if (j % 2 == 1) letters[j - 1] = 'Y';
        }
        letters[4 * f - 1] = spec.v4;
        letters[8 * f - 1] = spec.v8;
        letters[n - 1] = spec.v12;
        BitVec mask(n);
        for (std::size_t j : spec.included) mask.set(j - 1, true);
        MeasurementAssignment a(letters, mask);
        Constraint c;
        for (std::size_t j : spec.included) {
            std::string var(1, char(std::tolower(letters[j - 1])));
            var += std::to_string(j);
            if (!is_vertex(j) && !is_midpoint(j)) {
                var += "^";
                var += letters[segment_vertex(segment(j)) - 1];
            }
            c.vars.push_back(var);
        }
        c.rhs = qm_sub_sign(gamma, a);
        cs.push_back(c);
    }
    return multiply_constraints(cs);
}

CounterexampleReport verify_counterexample(const std::string& name) {
    if (name == "ghz") return verify_ghz();
    if (name == "cluster2x3") return verify_cluster2x3();
    if (name == "chain11") return verify_chain11();
    if (name == "ring") return verify_counterexample_ring(1);
    throw std::invalid_argument("unknown counterexample case: " + name);
}

}  // namespace stabloc
