#include "opschmidt/bipartite.hpp"

#include <stdexcept>
#include <string>

namespace opschmidt {

BipartiteDims::BipartiteDims(std::size_t n1, std::size_t n2) : n1_(n1), n2_(n2) {
    if (n1 < 2 || n2 < 2) {
        throw std::invalid_argument("BipartiteDims: both factors must be at least 2, got (" +
                                    std::to_string(n1) + ", " + std::to_string(n2) + ")");
    }
}

std::size_t BipartiteDims::flatten(std::size_t k, std::size_t l) const {
    if (k >= n1_ || l >= n2_) {
        throw std::out_of_range("flatten: (" + std::to_string(k) + ", " + std::to_string(l) +
                                ") outside " + std::to_string(n1_) + "x" + std::to_string(n2_));
    }
    return k * n2_ + l;
}

std::pair<std::size_t, std::size_t> BipartiteDims::split(std::size_t s) const {
    if (s >= n()) {
        throw std::out_of_range("split: index " + std::to_string(s) + " outside [0, " +
                                std::to_string(n()) + ")");
    }
    return {s / n2_, s % n2_};
}

ComplexMatrix digit_swap_matrix(const BipartiteDims& dims) {
    ComplexMatrix r(dims.n(), dims.n());
    for (std::size_t k = 0; k < dims.n1(); ++k) {
        for (std::size_t l = 0; l < dims.n2(); ++l) {
            r(l * dims.n1() + k, k * dims.n2() + l) = 1.0;
        }
    }
    return r;
}

} // namespace opschmidt
