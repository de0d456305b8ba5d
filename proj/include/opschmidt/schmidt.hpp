#pragma once

#include "opschmidt/bipartite.hpp"
#include "opschmidt/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace opschmidt {

/// Thin singular value decomposition m = U * diag(s) * V^dagger.
struct SvdResult {
    std::vector<double> singular_values;  // descending, >= 0
    ComplexMatrix left_vectors;           // m.rows x r, orthonormal columns (U)
    ComplexMatrix right_vectors;          // m.cols x r, orthonormal columns (V)
};

/// Numerically stable SVD; throws std::runtime_error if the backend fails to
/// converge (never silently returns garbage).
SvdResult svd(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Column k of eigenvectors pairs with eigenvalues[k].
struct EigenSystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

/// Shape of one tensor factor of a bipartite operator, as a map
/// C^cols -> C^rows. Square factors have rows == cols.
struct FactorShape {
    std::size_t rows;
    std::size_t cols;
};

/// Rearranges a (left.rows*right.rows) x (left.cols*right.cols) operator into
/// the (left.rows*left.cols) x (right.rows*right.cols) matrix whose singular
/// value decomposition yields the operator's Schmidt decomposition:
///
///   out[(ra*left.cols + ca), (rb*right.cols + cb)] = f[(ra*right.rows + rb), (ca*right.cols + cb)]
///
/// A pure index rearrangement: bijective and Frobenius-norm preserving.
ComplexMatrix realign(const ComplexMatrix& f, FactorShape left, FactorShape right);

/// Square-factor case: f is n x n with n = n1*n2, the result is n1^2 x n2^2.
ComplexMatrix realign(const ComplexMatrix& f, const BipartiteDims& dims);

/// Inverse rearrangement; recovers the original operator exactly.
ComplexMatrix realign_inverse(const ComplexMatrix& m, FactorShape left, FactorShape right);
ComplexMatrix realign_inverse(const ComplexMatrix& m, const BipartiteDims& dims);

struct SchmidtTerm {
    double lambda;        // > 0
    ComplexMatrix left;
    ComplexMatrix right;
};

/// Sum of lambda_k * left_k (x) right_k over the given terms.
ComplexMatrix reconstruct_terms(std::span<const SchmidtTerm> terms);

/// Operator-Schmidt decomposition f = sum_k lambda_k A_k (x) B_k with
/// lambda_k > 0 descending and {A_k}, {B_k} each orthonormal in the
/// Hilbert-Schmidt inner product.
struct SchmidtDecomposition {
    BipartiteDims dims;
    std::vector<SchmidtTerm> terms;

    std::size_t schmidt_number() const noexcept { return terms.size(); }
    std::vector<double> coefficients() const;
    ComplexMatrix reconstruct() const;
};

/// Realign + SVD, keeping singular values above rel_tol * sigma_max.
/// Rectangular-factor form; the terms' left factors are left.rows x left.cols
/// and the right factors right.rows x right.cols.
///
/// Each left singular vector is rescaled so its largest-magnitude entry is
/// real positive (the compensating phase goes into the right vector), which
/// makes the output deterministic whenever the spectrum is nondegenerate.
/// The right factors are the entrywise complex conjugates of the right
/// singular vectors; that conjugation is what makes
/// sum_k lambda_k A_k (x) B_k reproduce f.
std::vector<SchmidtTerm> schmidt_decompose(const ComplexMatrix& f, FactorShape left,
                                           FactorShape right, double rel_tol = 1e-9);

SchmidtDecomposition schmidt_decompose(const ComplexMatrix& f, const BipartiteDims& dims,
                                       double rel_tol = 1e-9);

/// Reduced density matrix of the operator viewed as a vector in the product
/// of the two operator spaces, traced over the left factor space:
///
///   rho[(l1*n2 + l2), (m1*n2 + m2)] = sum_{j1,j2} f[(j1*n2 + l1), (j2*n2 + l2)]
///                                               * conj(f[(j1*n2 + m1), (j2*n2 + m2)])
///
/// Hermitian, positive semidefinite; its nonzero eigenvalues are the squared
/// Schmidt coefficients of f. In terms of M = realign(f, dims) this is the
/// transpose of M^dagger * M, not M^dagger * M itself; the entry formula
/// above is the convention that matches the closed-form results.
ComplexMatrix reduced_density(const ComplexMatrix& f, const BipartiteDims& dims);

/// Given HS-orthonormal right factors B_l that are eigenvectors of
/// reduced_density(f) with eigenvalues mus > 0, recovers left factors A_l
/// with f = sum_l sqrt(mus[l]) A_l (x) B_l:
///
///   A_l(j1, j2) = (1/sqrt(mus[l])) * sum_{l1,l2} f[(j1*n2 + l1), (j2*n2 + l2)] * conj(B_l(l1, l2))
///
/// The inputs are contract-checked: non-positive eigenvalues, non-orthonormal
/// rights, or a non-orthonormal result are reported as std::invalid_argument.
std::vector<ComplexMatrix> left_factors_from_right(const ComplexMatrix& f,
                                                   const BipartiteDims& dims,
                                                   std::span<const ComplexMatrix> rights,
                                                   std::span<const double> mus);

/// True when the decomposition has the maximal number of terms
/// min(n1^2, n2^2) and all coefficients are equal within tol.
bool completely_degenerate(const SchmidtDecomposition& d, double tol = 1e-9);

} // namespace opschmidt
