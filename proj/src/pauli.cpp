#include "stabloc/pauli.hpp"

#include <cassert>
#include <stdexcept>

namespace stabloc {

char PauliOperator::letter(std::size_t j) const {
    bool xb = x.get(j), zb = z.get(j);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

void PauliOperator::set_letter(std::size_t j, char letter) {
    switch (letter) {
        case 'I': x.set(j, false); z.set(j, false); break;
        case 'X': x.set(j, true);  z.set(j, false); break;
        case 'Y': x.set(j, true);  z.set(j, true);  break;
        case 'Z': x.set(j, false); z.set(j, true);  break;
        default: throw std::invalid_argument("invalid Pauli letter");
    }
}

BitVec PauliOperator::r() const {
    BitVec out(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        if (x.get(j)) out.set(j, true);
        if (z.get(j)) out.set(n + j, true);
    }
    return out;
}

PauliOperator PauliOperator::from_r(const BitVec& r, int phase) {
    assert(r.size() % 2 == 0);
    PauliOperator g(r.size() / 2);
    for (std::size_t j = 0; j < g.n; ++j) {
        g.x.set(j, r.get(j));
        g.z.set(j, r.get(g.n + j));
    }
    g.phase = ((phase % 4) + 4) % 4;
    return g;
}

bool PauliOperator::commutes(const PauliOperator& other) const {
    assert(n == other.n);
    return (x.dot_int(other.z) + z.dot_int(other.x)) % 2 == 0;
}

PauliOperator PauliOperator::operator*(const PauliOperator& other) const {
    assert(n == other.n);
    PauliOperator out(n);
    out.x = x ^ other.x;
    out.z = z ^ other.z;
    // Moving Z^{z} past X^{x'} costs (-1)^{z·x'}; re-normalizing each factor
    // and the product to the i^{x·zᵀ} convention gives the phase below.
    long s = phase + other.phase;
    s += static_cast<long>(x.dot_int(z)) + static_cast<long>(other.x.dot_int(other.z));
    s += 2 * static_cast<long>(z.dot_int(other.x));
    s -= static_cast<long>(out.x.dot_int(out.z));
    out.phase = static_cast<int>(((s % 4) + 4) % 4);
    return out;
}

std::string PauliOperator::to_string() const {
    std::string s;
    switch (((phase % 4) + 4) % 4) {
        case 0: s = "+"; break;
        case 1: s = "+i"; break;
        case 2: s = "-"; break;
        case 3: s = "-i"; break;
    }
    for (std::size_t j = 0; j < n; ++j) s += letter(j);
    return s;
}

PauliOperator PauliOperator::parse(const std::string& text) {
    std::size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') phase = 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        ++pos;
    }
    if (pos >= text.size())
        throw std::invalid_argument("empty Pauli string at index " + std::to_string(pos));
    PauliOperator g(text.size() - pos);
    for (std::size_t j = 0; j < g.n; ++j) {
        char c = text[pos + j];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw std::invalid_argument("invalid Pauli letter '" + std::string(1, c) +
                                        "' at index " + std::to_string(pos + j));
        g.set_letter(j, c);
    }
    g.phase = phase;
    return g;
}

}  // namespace stabloc
