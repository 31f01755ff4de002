#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace toral {

/// Decomposition of a finite abelian group into cyclic factors.
struct GroupStructure {
    std::vector<int> cyclic_orders;          ///< [1] for the trivial group
    std::vector<std::vector<int>> coords;    ///< coordinate vector of each element
};

/// Elements are 0..h-1, element 0 is the identity, multiply(i, j) the group
/// law. Picks an element of maximal order, then repeatedly an element of
/// maximal order in the quotient, lifted to a complement by search.
GroupStructure decompose_abelian_group(int h, const std::function<int(int, int)>& multiply);

/// Characters of Z/m_1 x ... x Z/m_k, indexed in mixed radix (last factor
/// fastest): chi_k(c) = exp(2 pi i sum k_j c_j / m_j).
class CharacterTable {
public:
    explicit CharacterTable(std::vector<int> cyclic_orders);

    const std::vector<int>& cyclic_orders() const noexcept { return orders_; }
    int size() const noexcept { return size_; }

    std::vector<int> exponents(int index) const;
    std::complex<double> operator()(int index, std::span<const int> coords) const;

    /// max over i, j of |(1/h) sum_c chi_i(c) conj chi_j(c) - delta_ij|
    double orthogonality_residual() const;

    /// Every group element's coordinates, in the same mixed-radix order.
    std::vector<std::vector<int>> all_elements() const;

private:
    std::vector<int> orders_;
    int size_ = 1;
};

} // namespace toral
