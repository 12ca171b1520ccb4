#include "stabloc/bell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace stabloc {

namespace {

constexpr std::size_t kStrategyCap = 1u << 20;

BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string tuple_key(const std::vector<std::size_t>& tuple) {
    std::string key;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) key += ':';
        key += std::to_string(tuple[i]);
    }
    return key;
}

std::vector<std::size_t> parse_tuple_key(const std::string& key) {
    std::vector<std::size_t> tuple;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ':')) {
        tuple.push_back(std::size_t(std::stoull(part)));
    }
    return tuple;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(BigInt(text.substr(0, slash)),
                        BigInt(text.substr(slash + 1)));
    }
    return rational_approx(std::stod(text));
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

}  // namespace

Rational rational_approx(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("correlation value is not finite");
    }
    const BigInt den = BigInt(1) << 62;
    double scaled = std::round(x * std::pow(2.0, 62));
    // Exact conversion of the rounded scaled value via its binary expansion.
    BigInt num = 0;
    bool negative = scaled < 0;
    scaled = std::abs(scaled);
    int exp = 0;
    double mant = std::frexp(scaled, &exp);
    for (int i = 0; i < 64 && mant != 0.0; ++i) {
        mant *= 2;
        int bit = int(mant);
        mant -= bit;
        num = (num << 1) + bit;
        --exp;
    }
    if (exp > 0) num <<= exp;
    while (exp < 0) {
        num >>= 1;
        ++exp;
    }
    if (negative) num = -num;
    return Rational(num, den);
}

double to_double(const Rational& r) {
    return boost::multiprecision::cpp_rational(r.numerator(), r.denominator())
        .convert_to<double>();
}

CorrelationVector::CorrelationVector(std::vector<std::size_t> settings_)
    : settings(std::move(settings_)) {
    values.assign(index_count(), Rational(0));
    values[0] = Rational(1);
}

std::size_t CorrelationVector::index_count() const {
    std::size_t count = 1;
    for (std::size_t m : settings) count *= m + 1;
    return count;
}

std::size_t CorrelationVector::index_of(
    const std::vector<std::size_t>& tuple) const {
    if (tuple.size() != settings.size()) {
        throw std::invalid_argument("setting tuple has wrong arity");
    }
    std::size_t index = 0;
    for (std::size_t p = 0; p < settings.size(); ++p) {
        if (tuple[p] > settings[p]) {
            throw std::invalid_argument("setting index out of range");
        }
        index = index * (settings[p] + 1) + tuple[p];
    }
    return index;
}

std::vector<std::size_t> CorrelationVector::tuple_of(std::size_t index) const {
    std::vector<std::size_t> tuple(settings.size());
    for (std::size_t p = settings.size(); p-- > 0;) {
        tuple[p] = index % (settings[p] + 1);
        index /= settings[p] + 1;
    }
    return tuple;
}

void CorrelationVector::set(const std::vector<std::size_t>& tuple,
                            const Rational& value) {
    values[index_of(tuple)] = value;
}

const Rational& CorrelationVector::at(
    const std::vector<std::size_t>& tuple) const {
    return values[index_of(tuple)];
}

void CorrelationVector::validate() const {
    if (settings.empty() || values.size() != index_count()) {
        throw std::invalid_argument("malformed correlation vector");
    }
    if (values[0] != Rational(1)) {
        throw std::invalid_argument("identity correlation entry must be 1");
    }
    for (const Rational& v : values) {
        if (v < Rational(-1) || v > Rational(1)) {
            throw std::invalid_argument("correlations must lie in [-1, 1]");
        }
    }
}

std::string CorrelationVector::to_csv() const {
    std::string out = "tuple,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += tuple_key(tuple_of(i)) + "," + format_rational(values[i]) + "\n";
    }
    return out;
}

CorrelationVector CorrelationVector::from_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) || line.rfind("tuple,", 0) != 0) {
        throw std::invalid_argument("correlation CSV must start with a header");
    }
    std::vector<std::pair<std::vector<std::size_t>, Rational>> entries;
    std::vector<std::size_t> settings;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("malformed correlation CSV row");
        }
        auto tuple = parse_tuple_key(line.substr(0, comma));
        if (settings.empty()) settings.assign(tuple.size(), 0);
        if (tuple.size() != settings.size()) {
            throw std::invalid_argument("inconsistent tuple arity in CSV");
        }
        for (std::size_t p = 0; p < tuple.size(); ++p) {
            settings[p] = std::max(settings[p], tuple[p]);
        }
        entries.emplace_back(std::move(tuple),
                             parse_rational(line.substr(comma + 1)));
    }
    CorrelationVector C(settings);
    for (const auto& [tuple, value] : entries) C.set(tuple, value);
    C.validate();
    return C;
}

int StrategyMatrix::entry(std::size_t row, std::size_t col) const {
    std::size_t index = row;
    int value = 1;
    std::size_t bit_base = 0;
    // Decode the tuple most-significant-party-first, consuming from the end.
    std::vector<std::size_t> tuple(settings.size());
    for (std::size_t p = settings.size(); p-- > 0;) {
        tuple[p] = index % (settings[p] + 1);
        index /= settings[p] + 1;
    }
    for (std::size_t p = 0; p < settings.size(); ++p) {
        if (tuple[p] != 0) {
            std::size_t bit = bit_base + tuple[p] - 1;
            if ((col >> bit) & 1) value = -value;
        }
        bit_base += settings[p];
    }
    return value;
}

StrategyMatrix strategy_matrix(const std::vector<std::size_t>& settings) {
    if (settings.empty()) {
        throw std::invalid_argument("at least one party required");
    }
    std::size_t bits = 0;
    for (std::size_t m : settings) bits += m;
    if (bits >= 21) {
        throw std::invalid_argument("deterministic strategy count exceeds 2^20");
    }
    StrategyMatrix M;
    M.settings = settings;
    M.cols = std::size_t(1) << bits;
    M.rows = 1;
    for (std::size_t m : settings) M.rows *= m + 1;
    if (M.cols > kStrategyCap) {
        throw std::invalid_argument("deterministic strategy count exceeds 2^20");
    }
    return M;
}

std::string BellInequality::to_json() const {
    nlohmann::json j;
    j["settings"] = settings;
    nlohmann::json coeff_map = nlohmann::json::object();
    CorrelationVector shape(settings);
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            coeff_map[tuple_key(shape.tuple_of(i))] = coeffs[i].str();
        }
    }
    j["coeffs"] = coeff_map;
    j["bound"] = bound.str();
    return j.dump();
}

BellInequality BellInequality::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BellInequality out;
    out.settings = j.at("settings").get<std::vector<std::size_t>>();
    CorrelationVector shape(out.settings);
    out.coeffs.assign(shape.index_count(), BigInt(0));
    for (const auto& [key, value] : j.at("coeffs").items()) {
        out.coeffs[shape.index_of(parse_tuple_key(key))] =
            BigInt(value.get<std::string>());
    }
    out.bound = BigInt(j.at("bound").get<std::string>());
    return out;
}

LpResult lp_feasible(const CorrelationVector& C) {
    C.validate();
    StrategyMatrix M = strategy_matrix(C.settings);
    std::size_t m = M.rows;
    std::size_t n_cols = M.cols;

    // Phase-1 simplex: minimize the sum of artificials in
    // A·P + I·a = b with b = ±C flipped nonnegative.
    std::vector<int> row_sign(m, 1);
    std::vector<Rational> b(m);
    for (std::size_t i = 0; i < m; ++i) {
        b[i] = C.values[i];
        if (b[i] < Rational(0)) {
            row_sign[i] = -1;
            b[i] = -b[i];
        }
    }
    std::size_t total = n_cols + m;
    auto column = [&](std::size_t j, std::size_t i) -> Rational {
        if (j < n_cols) {
            return Rational(row_sign[i] * M.entry(i, j));
        }
        return Rational(j - n_cols == i ? 1 : 0);
    };

    // Dense tableau rows plus a reduced-cost row, all exact rationals.
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(total + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < total; ++j) T[i][j] = column(j, i);
        T[i][total] = b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n_cols + i;
    // Reduced costs r_j = c_j − Σ_i T[i][j] (artificial costs are 1).
    std::vector<Rational> reduced(total + 1, Rational(0));
    for (std::size_t j = 0; j <= total; ++j) {
        Rational sum(0);
        for (std::size_t i = 0; i < m; ++i) sum += T[i][j];
        reduced[j] = (j < n_cols ? Rational(0) : Rational(j < total ? 1 : 0)) - sum;
    }

    while (true) {
        std::size_t enter = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (reduced[j] < Rational(0)) {
                enter = j;
                break;  // Bland: lowest index
            }
        }
        if (enter == total) break;
        std::size_t leave = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= Rational(0)) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            Rational cur = T[i][total] / T[i][enter];
            Rational best = T[leave][total] / T[leave][enter];
            if (cur < best || (cur == best && basis[i] < basis[leave])) {
                leave = i;
            }
        }
        if (leave == m) {
            throw std::logic_error("phase-1 program cannot be unbounded");
        }
        Rational pivot = T[leave][enter];
        for (std::size_t j = 0; j <= total; ++j) T[leave][j] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == Rational(0)) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j <= total; ++j) {
                T[i][j] -= f * T[leave][j];
            }
        }
        Rational f = reduced[enter];
        for (std::size_t j = 0; j <= total; ++j) reduced[j] -= f * T[leave][j];
        basis[leave] = enter;
    }

    Rational objective = -reduced[total];
    LpResult result;
    if (objective == Rational(0)) {
        result.feasible = true;
        result.weights.assign(n_cols, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n_cols) result.weights[basis[i]] = T[i][total];
        }
        return result;
    }

    // Farkas certificate: y_i = 1 − (reduced cost of artificial i), restored
    // to the original row orientation.
    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        y[i] = (Rational(1) - reduced[n_cols + i]) * Rational(row_sign[i]);
    }
    // Drop the normalization row and clear denominators / common factors.
    BigInt lcm = 1;
    for (std::size_t i = 1; i < m; ++i) {
        BigInt den = y[i].denominator();
        lcm = lcm / big_gcd(lcm, den) * den;
    }
    BellInequality ineq;
    ineq.settings = C.settings;
    ineq.coeffs.assign(m, BigInt(0));
    BigInt gcd = 0;
    for (std::size_t i = 1; i < m; ++i) {
        ineq.coeffs[i] = y[i].numerator() * (lcm / y[i].denominator());
        gcd = big_gcd(gcd, ineq.coeffs[i]);
    }
    if (gcd > 1) {
        for (BigInt& coeff : ineq.coeffs) coeff /= gcd;
    }
    bool first = true;
    for (std::size_t s = 0; s < n_cols; ++s) {
        BigInt value = 0;
        for (std::size_t i = 1; i < m; ++i) {
            value += ineq.coeffs[i] * M.entry(i, s);
        }
        if (first || value > ineq.bound) ineq.bound = value;
        first = false;
    }
    auto [lhs, satisfied] = evaluate_inequality(ineq, C);
    if (satisfied) {
        throw std::logic_error("infeasibility certificate failed to verify");
    }
    if (to_double(lhs) <= to_double(Rational(ineq.bound)) + 1e-9) {
        throw std::logic_error("certificate violation below floating margin");
    }
    result.feasible = false;
    result.inequality = std::move(ineq);
    return result;
}

std::vector<RvInequality> rv_inequalities(
    const std::vector<std::size_t>& settings,
    const std::vector<std::vector<std::size_t>>& observables) {
    if (observables.empty()) {
        throw std::invalid_argument("at least one observable required");
    }
    CorrelationVector shape(settings);
    std::vector<std::vector<std::size_t>> counts(settings.size());
    for (std::size_t p = 0; p < settings.size(); ++p) {
        counts[p].assign(settings[p] + 1, 0);
    }
    for (const auto& tuple : observables) {
        shape.index_of(tuple);  // validates arity and range
        for (std::size_t p = 0; p < tuple.size(); ++p) {
            if (tuple[p] != 0) ++counts[p][tuple[p]];
        }
    }
    for (std::size_t p = 0; p < counts.size(); ++p) {
        for (std::size_t i = 1; i < counts[p].size(); ++i) {
            if (counts[p][i] % 2 != 0) {
                throw std::invalid_argument(
                    "setting " + std::to_string(i) + " of party " +
                    std::to_string(p) + " occurs an odd number of times");
            }
        }
    }
    std::vector<RvInequality> out;
    for (std::size_t d = 0; d < observables.size(); ++d) {
        RvInequality ineq;
        ineq.settings = settings;
        for (std::size_t j = 0; j < observables.size(); ++j) {
            if (j != d) ineq.observables.push_back(observables[j]);
        }
        ineq.observables.push_back(observables[d]);
        ineq.bound = int(observables.size()) - 2;
        out.push_back(std::move(ineq));
    }
    return out;
}

std::pair<Rational, bool> evaluate_inequality(const BellInequality& ineq,
                                              const CorrelationVector& C) {
    if (ineq.settings != C.settings) {
        throw std::invalid_argument("inequality and correlations do not match");
    }
    Rational lhs(0);
    for (std::size_t i = 1; i < ineq.coeffs.size(); ++i) {
        lhs += Rational(ineq.coeffs[i]) * C.values[i];
    }
    return {lhs, lhs <= Rational(ineq.bound)};
}

std::pair<double, bool> evaluate_inequality(const RvInequality& ineq,
                                            const CorrelationVector& C) {
    if (ineq.settings != C.settings) {
        throw std::invalid_argument("inequality and correlations do not match");
    }
    double lhs = 0.0;
    double sign = 1.0;
    double last = 0.0;
    for (std::size_t j = 0; j < ineq.observables.size(); ++j) {
        double v = to_double(C.at(ineq.observables[j]));
        if (v < 0) sign = -sign;
        if (j + 1 < ineq.observables.size()) {
            lhs += std::abs(v);
        } else {
            last = std::abs(v);
        }
    }
    lhs -= sign * last;
    return {lhs, lhs <= double(ineq.bound) + 1e-12};
}

std::vector<double> GptState::probability_vector() const {
    if (!bipartite) {
        throw std::invalid_argument("probability vector requires a bipartite state");
    }
    // Basis entry order: (j, ±), (k, ±) with n = (1,1), m = (1,−1) blocks.
    std::vector<double> P(4 * M * M, 0.0);
    for (std::size_t j = 0; j < M; ++j) {
        for (int sj = 0; sj < 2; ++sj) {
            for (std::size_t k = 0; k < M; ++k) {
                for (int sk = 0; sk < 2; ++sk) {
                    double mj = sj ? -1.0 : 1.0;
                    double mk = sk ? -1.0 : 1.0;
                    P[((j * 2 + sj) * M + k) * 2 + sk] =
                        0.25 * (1.0 + a[j] * mj + b[k] * mk + c_at(j, k) * mj * mk);
                }
            }
        }
    }
    return P;
}

GptState gpt_single(std::vector<double> b) {
    GptState s;
    s.M = b.size();
    s.bipartite = false;
    for (double bj : b) {
        if (std::abs(bj) > 1.0 + 1e-12) {
            throw std::invalid_argument("coefficients must lie in [-1, 1]");
        }
    }
    s.b = std::move(b);
    return s;
}

GptState gpt_make_bipartite(std::size_t M, std::vector<double> a,
                            std::vector<double> b, std::vector<double> c) {
    if (a.size() != M || b.size() != M || c.size() != M * M) {
        throw std::invalid_argument("coefficient blocks have wrong sizes");
    }
    for (double v : a) {
        if (std::abs(v) > 1.0 + 1e-12) {
            throw std::invalid_argument("marginals must lie in [-1, 1]");
        }
    }
    for (double v : b) {
        if (std::abs(v) > 1.0 + 1e-12) {
            throw std::invalid_argument("marginals must lie in [-1, 1]");
        }
    }
    for (std::size_t j = 0; j < M; ++j) {
        for (std::size_t k = 0; k < M; ++k) {
            double cjk = c[j * M + k];
            double lo = std::abs(a[j] + b[k]) - 1.0;
            double hi = 1.0 - std::abs(a[j] - b[k]);
            if (cjk < lo - 1e-12 || cjk > hi + 1e-12) {
                throw std::invalid_argument(
                    "correlation c(" + std::to_string(j) + "," +
                    std::to_string(k) + ") outside the allowed range");
            }
        }
    }
    GptState s;
    s.M = M;
    s.bipartite = true;
    s.a = std::move(a);
    s.b = std::move(b);
    s.c = std::move(c);
    return s;
}

namespace {
GptState chsh_preset(std::size_t M, double scale) {
    if (M < 2) {
        throw std::invalid_argument("preset needs at least two measurements");
    }
    std::vector<double> c(M * M, 0.0);
    c[0 * M + 0] = scale;
    c[0 * M + 1] = scale;
    c[1 * M + 0] = scale;
    c[1 * M + 1] = -scale;
    return gpt_make_bipartite(M, std::vector<double>(M, 0.0),
                              std::vector<double>(M, 0.0), std::move(c));
}
}  // namespace

GptState gpt_pr_preset(std::size_t M) { return chsh_preset(M, 1.0); }

GptState gpt_bell_preset(std::size_t M) {
    return chsh_preset(M, 1.0 / std::sqrt(2.0));
}

GptState gpt_reduce(const GptState& state) {
    if (!state.bipartite) {
        throw std::invalid_argument("reduction requires a bipartite state");
    }
    std::vector<double> P = state.probability_vector();
    std::vector<double> reduced;
    for (std::size_t k = 0; k < state.M; ++k) {
        // (I ⊗ n_k)ᵀ P: sum over Bob's outcomes of measurement k.
        std::vector<double> r(2 * state.M);
        for (std::size_t j = 0; j < state.M; ++j) {
            for (int sj = 0; sj < 2; ++sj) {
                r[j * 2 + sj] = P[((j * 2 + sj) * state.M + k) * 2 + 0] +
                                P[((j * 2 + sj) * state.M + k) * 2 + 1];
            }
        }
        if (k == 0) {
            reduced = r;
        } else {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (std::abs(r[i] - reduced[i]) > 1e-9) {
                    throw std::logic_error("reduced state depends on Bob's setting");
                }
            }
        }
    }
    std::vector<double> b(state.M);
    for (std::size_t j = 0; j < state.M; ++j) {
        b[j] = reduced[j * 2 + 0] - reduced[j * 2 + 1];
    }
    return gpt_single(std::move(b));
}

double gpt_correlation(const GptState& state, std::size_t j, std::size_t k) {
    if (!state.bipartite) {
        throw std::invalid_argument("correlation requires a bipartite state");
    }
    if (j >= state.M || k >= state.M) {
        throw std::invalid_argument("measurement index out of range");
    }
    std::vector<double> P = state.probability_vector();
    double value = 0.0;
    for (int sj = 0; sj < 2; ++sj) {
        for (int sk = 0; sk < 2; ++sk) {
            double mj = sj ? -1.0 : 1.0;
            double mk = sk ? -1.0 : 1.0;
            value += mj * mk * P[((j * 2 + sj) * state.M + k) * 2 + sk];
        }
    }
    return value;
}

}  // namespace stabloc
