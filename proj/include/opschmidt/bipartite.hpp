#pragma once

#include "opschmidt/matrix.hpp"

#include <cstddef>
#include <utility>

namespace opschmidt {

/// Dimensions (n1, n2) of a bipartite space C^{n1} (x) C^{n2}. The product
/// space is flattened to C^{n1*n2} by the positional index map s = k*n2 + l,
/// and every index convention in the toolkit derives from that map.
class BipartiteDims {
public:
    /// Both factors must be at least 2.
    BipartiteDims(std::size_t n1, std::size_t n2);

    std::size_t n1() const noexcept { return n1_; }
    std::size_t n2() const noexcept { return n2_; }
    std::size_t n() const noexcept { return n1_ * n2_; }

    /// (k, l) -> k*n2 + l for k < n1, l < n2.
    std::size_t flatten(std::size_t k, std::size_t l) const;

    /// s -> (s / n2, s % n2) for s < n.
    std::pair<std::size_t, std::size_t> split(std::size_t s) const;

    BipartiteDims swapped() const { return {n2_, n1_}; }

    friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

private:
    std::size_t n1_;
    std::size_t n2_;
};

/// Permutation matrix R with R|k*n2 + l> = |l*n1 + k>: exchanges the two
/// digits of the flattened index. Unitary, and in general it does not
/// commute with the Fourier matrix of the same size.
ComplexMatrix digit_swap_matrix(const BipartiteDims& dims);

} // namespace opschmidt
