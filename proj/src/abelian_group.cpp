#include "toral/abelian_group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "toral/errors.hpp"

namespace toral {

namespace {

int element_order(int g, const std::function<int(int, int)>& mul) {
    int k = 1;
    for (int x = g; x != 0; x = mul(x, g)) ++k;
    return k;
}

int power(int g, int e, const std::function<int(int, int)>& mul) {
    int x = 0;
    for (int i = 0; i < e; ++i) x = mul(x, g);
    return x;
}

} // namespace

GroupStructure decompose_abelian_group(int h, const std::function<int(int, int)>& multiply) {
    if (h < 1) throw DomainError("group order must be positive");
    GroupStructure gs;
    if (h == 1) {
        gs.cyclic_orders = {1};
        gs.coords = {{0}};
        return gs;
    }
    std::vector<int> gens;
    std::vector<int> orders;
    std::vector<char> in_sub(h, 0);
    std::vector<int> sub{0};
    in_sub[0] = 1;
    while (static_cast<int>(sub.size()) < h) {
        // order of each element in the quotient by the current subgroup
        int best = -1, best_ord = 0;
        for (int g = 1; g < h; ++g) {
            if (in_sub[g]) continue;
            int k = 1;
            for (int x = g; !in_sub[x]; x = multiply(x, g)) ++k;
            if (k > best_ord) {
                best_ord = k;
                best = g;
            }
        }
        // lift: some y in best*sub has true order best_ord
        int lifted = -1;
        for (int t : sub) {
            const int y = multiply(best, t);
            if (element_order(y, multiply) == best_ord) {
                lifted = y;
                break;
            }
        }
        if (lifted < 0) throw DomainError("decompose_abelian_group: no complement lift (not abelian?)");
        gens.push_back(lifted);
        orders.push_back(best_ord);
        std::vector<int> grown;
        for (int t : sub) {
            int x = t;
            for (int e = 0; e < best_ord; ++e) {
                grown.push_back(x);
                x = multiply(x, lifted);
            }
        }
        sub = grown;
        std::fill(in_sub.begin(), in_sub.end(), 0);
        for (int x : sub) {
            if (in_sub[x]) throw DomainError("decompose_abelian_group: lift is not a direct complement");
            in_sub[x] = 1;
        }
    }
    gs.cyclic_orders = orders;
    gs.coords.assign(h, {});
    const CharacterTable shape(orders);
    for (const auto& c : shape.all_elements()) {
        int x = 0;
        for (std::size_t i = 0; i < c.size(); ++i) x = multiply(x, power(gens[i], c[i], multiply));
        gs.coords[x] = c;
    }
    return gs;
}

CharacterTable::CharacterTable(std::vector<int> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    if (orders_.empty()) throw DomainError("CharacterTable: empty structure");
    for (int m : orders_) {
        if (m < 1) throw DomainError("CharacterTable: cyclic orders must be positive");
        size_ *= m;
    }
}

std::vector<int> CharacterTable::exponents(int index) const {
    if (index < 0 || index >= size_) throw DomainError("character index out of range");
    std::vector<int> e(orders_.size());
    for (int i = static_cast<int>(orders_.size()) - 1; i >= 0; --i) {
        e[i] = index % orders_[i];
        index /= orders_[i];
    }
    return e;
}

std::complex<double> CharacterTable::operator()(int index, std::span<const int> coords) const {
    if (coords.size() != orders_.size()) throw DomainError("character: coordinate length mismatch");
    const std::vector<int> e = exponents(index);
    // exponent products reduced mod m_i before dividing, so phases stay small
    double phase = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const long long num = (static_cast<long long>(e[i]) * coords[i]) % orders_[i];
        phase += static_cast<double>(num) / orders_[i];
    }
    phase -= std::floor(phase);
    return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

double CharacterTable::orthogonality_residual() const {
    const auto elems = all_elements();
    std::vector<std::vector<std::complex<double>>> table(size_, std::vector<std::complex<double>>(size_));
    for (int i = 0; i < size_; ++i)
        for (int c = 0; c < size_; ++c) table[i][c] = (*this)(i, elems[c]);
    double worst = 0.0;
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j) {
            std::complex<double> acc = 0.0;
            for (int c = 0; c < size_; ++c) acc += table[i][c] * std::conj(table[j][c]);
            acc /= static_cast<double>(size_);
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

std::vector<std::vector<int>> CharacterTable::all_elements() const {
    std::vector<std::vector<int>> out;
    out.reserve(size_);
    for (int k = 0; k < size_; ++k) out.push_back(exponents(k));
    return out;
}

} // namespace toral
