#include "stabloc/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace stabloc {

namespace {

constexpr double kTol = 1e-9;

BitMatrix require_graph_form(const StabilizerTableau& t) {
    if (!t.is_graph_form()) {
        throw std::invalid_argument("tableau is not in graph form");
    }
    return t.graph_adjacency();
}

void require_spec_match(const LhvTableSpec& spec, const StabilizerTableau& t) {
    if (spec.n != t.n) {
        throw std::invalid_argument("spec size does not match tableau size");
    }
}

bool connected(const BitMatrix& gamma) {
    std::size_t n = gamma.rows();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        std::size_t j = stack.back();
        stack.pop_back();
        for (std::size_t k = 0; k < n; ++k) {
            if (gamma.get(j, k) && !seen[k]) {
                seen[k] = 1;
                stack.push_back(k);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; });
}

// v_g exponent for the element a under (v, c) on adjacency Γ:
// a·v + Σ_{j,k} a_j c_j Γ_jk a_k (mod 2).
int value_exponent(const BitVec& v, const BitVec& c, const BitMatrix& gamma,
                   const BitVec& a) {
    std::size_t n = v.size();
    int e = a.dot_int(v);
    for (std::size_t j = 0; j < n; ++j) {
        if (!a.get(j) || !c.get(j)) continue;
        for (std::size_t k = 0; k < n; ++k) {
            if (a.get(k) && gamma.get(j, k)) e ^= 1;
        }
    }
    return e & 1;
}

}  // namespace

LhvTableSpec::LhvTableSpec(std::size_t n_, BitVec v_, BitVec c_)
    : n(n_), v(std::move(v_)), c(std::move(c_)) {
    if (v.size() != n || c.size() != n) {
        throw std::invalid_argument("spec bit vectors must have length n");
    }
}

std::string LhvTableSpec::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    auto bits = [](const BitVec& b) {
        std::vector<int> out(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) out[i] = b.get(i);
        return out;
    };
    j["v"] = bits(v);
    j["c"] = bits(c);
    return j.dump();
}

LhvTableSpec LhvTableSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::size_t n = j.at("n").get<std::size_t>();
    auto vec = [n](const nlohmann::json& arr) {
        if (arr.size() != n) {
            throw std::invalid_argument("spec bit vector has wrong length");
        }
        BitVec b(n);
        for (std::size_t i = 0; i < n; ++i) {
            b.set(i, arr.at(i).get<int>() & 1);
        }
        return b;
    };
    return LhvTableSpec(n, vec(j.at("v")), vec(j.at("c")));
}

LhvInstance build_instance(const LhvTableSpec& spec, const StabilizerTableau& t,
                           const BitVec& r) {
    require_spec_match(spec, t);
    BitMatrix gamma = require_graph_form(t);
    if (r.size() != spec.n) {
        throw std::invalid_argument("dual vector has wrong length");
    }
    LhvInstance inst;
    inst.z = r;
    inst.x = r * gamma;
    inst.x ^= spec.v;
    inst.c = spec.c;
    return inst;
}

int instance_value(const LhvInstance& inst, const PauliOperator& g) {
    if (g.n != inst.x.size()) {
        throw std::invalid_argument("operator size does not match instance");
    }
    if (!g.is_hermitian()) {
        throw std::invalid_argument("instance values require a Hermitian product");
    }
    int e = inst.x.dot_int(g.x) + inst.z.dot_int(g.z);
    for (std::size_t k = 0; k < g.n; ++k) {
        if (g.x.get(k) && g.z.get(k) && inst.c.get(k)) ++e;
    }
    return (e & 1) ? -1 : +1;
}

int definite_value(const LhvTableSpec& spec, const StabilizerTableau& t,
                   const PauliOperator& g) {
    require_spec_match(spec, t);
    BitMatrix gamma = require_graph_form(t);
    std::optional<BitVec> a = decompose_element(t, g);
    if (!a) {
        throw std::invalid_argument("operator is not a stabilizer element");
    }
    return value_exponent(spec.v, spec.c, gamma, *a) ? -1 : +1;
}

PreservationReport check_instances(const StabilizerTableau& t,
                                   const std::vector<LhvInstance>& instances) {
    std::size_t n = t.n;
    if (n > 6) {
        throw std::invalid_argument(
            "probability-preservation check is limited to n <= 6");
    }
    require_graph_form(t);
    if (instances.empty()) {
        throw std::invalid_argument("no instances supplied");
    }
    for (std::uint64_t code = 0; code < (1ull << (2 * n)); ++code) {
        PauliOperator g = PauliOperator::identity(n);
        for (std::size_t q = 0; q < n; ++q) {
            g.x.set(q, (code >> (2 * q)) & 1);
            g.z.set(q, (code >> (2 * q + 1)) & 1);
        }
        std::size_t minus = 0;
        for (const LhvInstance& inst : instances) {
            if (instance_value(inst, g) < 0) ++minus;
        }
        if (decompose_element(t, g)) {
            if (minus != 0 && minus != instances.size()) {
                return {false, g};
            }
        } else if (2 * minus != instances.size()) {
            return {false, g};
        }
    }
    return {true, std::nullopt};
}

PreservationReport is_probability_preserving(const LhvTableSpec& spec,
                                             const StabilizerTableau& t) {
    require_spec_match(spec, t);
    if (spec.n > 6) {
        throw std::invalid_argument(
            "probability-preservation check is limited to n <= 6");
    }
    std::vector<LhvInstance> instances;
    instances.reserve(1u << spec.n);
    for (std::uint64_t rc = 0; rc < (1ull << spec.n); ++rc) {
        BitVec r(spec.n);
        for (std::size_t j = 0; j < spec.n; ++j) r.set(j, (rc >> j) & 1);
        instances.push_back(build_instance(spec, t, r));
    }
    return check_instances(t, instances);
}

std::uint64_t count_distinct_tables(const StabilizerTableau& t) {
    BitMatrix gamma = require_graph_form(t);
    std::size_t n = t.n;
    if (n == 0 || n > 5) {
        throw std::invalid_argument("table counting is limited to 1 <= n <= 5");
    }
    if (!connected(gamma)) {
        throw std::invalid_argument("table counting requires a connected graph");
    }
    // Key: the value bit of every stabilizer element, in counting order of a.
    std::map<std::uint64_t, char> seen;
    for (std::uint64_t vc = 0; vc < (1ull << n); ++vc) {
        BitVec v(n);
        for (std::size_t j = 0; j < n; ++j) v.set(j, (vc >> j) & 1);
        for (std::uint64_t cc = 0; cc < (1ull << n); ++cc) {
            BitVec c(n);
            for (std::size_t j = 0; j < n; ++j) c.set(j, (cc >> j) & 1);
            std::uint64_t key = 0;
            for (std::uint64_t ac = 0; ac < (1ull << n); ++ac) {
                BitVec a(n);
                for (std::size_t j = 0; j < n; ++j) a.set(j, (ac >> j) & 1);
                key |= std::uint64_t(value_exponent(v, c, gamma, a)) << ac;
            }
            seen[key] = 1;
        }
    }
    return seen.size();
}

Interval correlation_range(std::vector<double> a) {
    std::size_t n = a.size();
    if (n == 0) {
        throw std::invalid_argument("correlation_range needs at least one mean");
    }
    int sign = 1;
    double sum = 0.0;
    for (double& aj : a) {
        if (std::abs(aj) > 1.0 + kTol) {
            throw std::invalid_argument("means must lie in [-1, 1]");
        }
        if (aj < 0) sign = -sign;
        aj = std::min(std::abs(aj), 1.0);
        sum += aj;
    }
    std::sort(a.begin(), a.end(), std::greater<double>());
    // Bounds on s·p with the magnitudes sorted descending.
    double lo = sum - double(n - 1);
    double hi = double(n - 1) - (sum - a.back()) + a.back();
    if (sign < 0) {
        double t = lo;
        lo = -hi;
        hi = -t;
    }
    lo = std::max(lo, -1.0);
    hi = std::min(hi, 1.0);
    Interval out;
    out.empty = lo > hi + kTol;
    if (!out.empty) {
        out.lo = lo;
        out.hi = std::max(hi, lo);
    }
    return out;
}

bool nonpauli_check(double theta, double phi) {
    const double pi = std::acos(-1.0);
    bool corner = std::abs(theta) <= kTol && std::abs(phi) <= kTol;
    if (!corner) {
        double theta_phi = std::atan2(1.0, std::sin(phi));
        bool in_domain = phi >= -kTol && phi <= pi / 4 + kTol &&
                         theta >= theta_phi - kTol && theta <= pi / 2 + kTol;
        if (!in_domain) {
            throw std::invalid_argument("angles outside the allowed domain");
        }
    }
    Interval range = correlation_range(
        {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi)});
    return range.contains(0.0, kTol);
}

}  // namespace stabloc
