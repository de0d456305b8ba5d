#pragma once

#include "opschmidt/bipartite.hpp"
#include "opschmidt/matrix.hpp"
#include "opschmidt/schmidt.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace opschmidt {

/// n x n Fourier matrix, entry [t, s] = exp(2*pi*i*t*s/n)/sqrt(n). Unitary.
ComplexMatrix qft_matrix(std::size_t n);

/// One class of Z_{n2} x Z_{n2} under translation by multiples of n1 in both
/// coordinates (ordinary integer translation, not modular). Two pairs are
/// equivalent exactly when their coordinates agree mod n1.
///
/// The canonical representative is the unique member with both coordinates
/// below min(n1, n2): reduce both coordinates mod n1 when n1 <= n2; when
/// n1 > n2 every pair is its own singleton class.
struct EquivalenceClass {
    std::pair<std::size_t, std::size_t> rep;
    std::vector<std::pair<std::size_t, std::size_t>> members;  // sorted lexicographically

    std::size_t size() const noexcept { return members.size(); }
    bool contains(std::pair<std::size_t, std::size_t> p) const;
};

/// All min(n1, n2)^2 classes, ordered lexicographically by representative.
/// Their member sets partition Z_{n2} x Z_{n2}.
std::vector<EquivalenceClass> enumerate_classes(const BipartiteDims& dims);

/// Left factor attached to a class:
///   A(k1, k2) = (1/n1) * exp[(2*pi*i/n1) * (n2*k1*k2 + k1*c2 + k2*c1)]
/// where (c1, c2) is any member of the class; the value does not depend on
/// which member is used. Unit Hilbert-Schmidt norm.
ComplexMatrix a_matrix(const EquivalenceClass& c, const BipartiteDims& dims);

/// Same formula evaluated at an explicit representative. Bit-identical for
/// every member of one class, because the phase integer is reduced mod n1
/// before any floating-point work.
ComplexMatrix a_matrix_for_rep(std::pair<std::size_t, std::size_t> rep,
                               const BipartiteDims& dims);

/// Right factor attached to a class: supported exactly on the class members,
///   B(l1, l2) = (1/sqrt(|C|)) * exp[(2*pi*i/n) * l1*l2]   for (l1, l2) in C.
/// Unit Hilbert-Schmidt norm; distinct classes have disjoint supports.
ComplexMatrix b_matrix(const EquivalenceClass& c, const BipartiteDims& dims);

/// Exact Schmidt decomposition of the Fourier matrix on C^{n1} (x) C^{n2}:
/// one term per class with coefficient sqrt((n1/n2) * |C|), left factor
/// a_matrix and right factor b_matrix. Terms sorted by coefficient
/// descending, ties by representative.
SchmidtDecomposition closed_form_decomposition(const BipartiteDims& dims);

enum class SpectrumCase {
    divides,   // n1 divides n2 (includes n1 == n2)
    n1_ge_n2,  // n1 >= n2 without divisibility
    general,   // n1 < n2, n1 does not divide n2
};

std::string to_string(SpectrumCase c);

struct SpectrumEntry {
    double coefficient;
    std::size_t multiplicity;
};

/// Schmidt coefficients of the Fourier matrix with multiplicities, predicted
/// without any numerics. Multiplicities sum to min(n1^2, n2^2) and
/// sum of multiplicity * coefficient^2 equals n1*n2.
struct SpectrumTable {
    SpectrumCase case_label;
    std::vector<SpectrumEntry> entries;  // coefficient descending

    /// One value per term, descending.
    std::vector<double> expand() const;
};

SpectrumTable spectrum_by_cases(const BipartiteDims& dims);

/// Closed form of reduced_density(qft_matrix(n), dims):
///   rho[l, m] = (n1/n2) * exp[(2*pi*i/n) * (l1*l2 - m1*m2)]
/// when both coordinates of l - m are divisible by n1 (ordinary subtraction),
/// and 0 otherwise. Size n2^2 x n2^2.
ComplexMatrix rho_closed_form(const BipartiteDims& dims);

/// Exhaustively checks, over all pairs in (Z_{n2}^2)^2, that the indicator of
/// "componentwise difference divisible by n1" equals
/// sum_C chi_C(l) * chi_C(m) over the enumerated classes.
bool chi_identity_check(const BipartiteDims& dims);

} // namespace opschmidt
