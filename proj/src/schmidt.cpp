#include "opschmidt/schmidt.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace opschmidt {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix unflatten(std::span<const Complex> v, std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols, std::vector<Complex>(v.begin(), v.end()));
}

void require_shape(const char* op, const ComplexMatrix& f, std::size_t rows, std::size_t cols) {
    if (f.rows() != rows || f.cols() != cols) {
        throw std::invalid_argument(std::string(op) + ": expected a " + std::to_string(rows) +
                                    "x" + std::to_string(cols) + " operator, got " +
                                    std::to_string(f.rows()) + "x" + std::to_string(f.cols()));
    }
}

} // namespace

SvdResult svd(const ComplexMatrix& m) {
    if (m.size() == 0) throw std::invalid_argument("svd: empty matrix");
    const Eigen::MatrixXcd em = to_eigen(m);

    Eigen::VectorXd sigma;
    Eigen::MatrixXcd u, v;
    // Jacobi is the most accurate option and fast enough at these sizes;
    // divide-and-conquer takes over for the rare larger inputs.
    if (std::min(m.rows(), m.cols()) <= 128) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> solver(em, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("svd: Jacobi iteration did not converge");
        }
        sigma = solver.singularValues();
        u = solver.matrixU();
        v = solver.matrixV();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> solver(em, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("svd: divide-and-conquer iteration did not converge");
        }
        sigma = solver.singularValues();
        u = solver.matrixU();
        v = solver.matrixV();
    }

    SvdResult out;
    out.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    out.left_vectors = from_eigen(u);
    out.right_vectors = from_eigen(v);
    return out;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (!m.is_square() || m.size() == 0) {
        throw std::invalid_argument("hermitian_eigensystem: matrix must be square and nonempty");
    }
    const double scale = frobenius_norm(m);
    if (max_abs_diff(m, dagger(m)) > 1e-8 * std::max(scale, 1.0)) {
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
    }
    Eigen::MatrixXcd em = to_eigen(m);
    em = 0.5 * (em + em.adjoint().eval());  // clean up roundoff asymmetry
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigensystem: eigensolver did not converge");
    }

    // Eigen returns ascending eigenvalues; flip to descending.
    const Eigen::Index n = em.rows();
    EigenSystem out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    Eigen::MatrixXcd vectors(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
        vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    out.eigenvectors = from_eigen(vectors);
    return out;
}

ComplexMatrix realign(const ComplexMatrix& f, FactorShape left, FactorShape right) {
    require_shape("realign", f, left.rows * right.rows, left.cols * right.cols);
    ComplexMatrix out(left.rows * left.cols, right.rows * right.cols);
    for (std::size_t ra = 0; ra < left.rows; ++ra) {
        for (std::size_t ca = 0; ca < left.cols; ++ca) {
            for (std::size_t rb = 0; rb < right.rows; ++rb) {
                for (std::size_t cb = 0; cb < right.cols; ++cb) {
                    out(ra * left.cols + ca, rb * right.cols + cb) =
                        f(ra * right.rows + rb, ca * right.cols + cb);
                }
            }
        }
    }
    return out;
}

ComplexMatrix realign(const ComplexMatrix& f, const BipartiteDims& dims) {
    return realign(f, FactorShape{dims.n1(), dims.n1()}, FactorShape{dims.n2(), dims.n2()});
}

ComplexMatrix realign_inverse(const ComplexMatrix& m, FactorShape left, FactorShape right) {
    require_shape("realign_inverse", m, left.rows * left.cols, right.rows * right.cols);
    ComplexMatrix out(left.rows * right.rows, left.cols * right.cols);
    for (std::size_t ra = 0; ra < left.rows; ++ra) {
        for (std::size_t ca = 0; ca < left.cols; ++ca) {
            for (std::size_t rb = 0; rb < right.rows; ++rb) {
                for (std::size_t cb = 0; cb < right.cols; ++cb) {
                    out(ra * right.rows + rb, ca * right.cols + cb) =
                        m(ra * left.cols + ca, rb * right.cols + cb);
                }
            }
        }
    }
    return out;
}

ComplexMatrix realign_inverse(const ComplexMatrix& m, const BipartiteDims& dims) {
    return realign_inverse(m, FactorShape{dims.n1(), dims.n1()}, FactorShape{dims.n2(), dims.n2()});
}

ComplexMatrix reconstruct_terms(std::span<const SchmidtTerm> terms) {
    if (terms.empty()) throw std::invalid_argument("reconstruct_terms: no terms");
    ComplexMatrix sum = tensor_product(terms[0].left, terms[0].right);
    sum *= Complex(terms[0].lambda);
    for (std::size_t k = 1; k < terms.size(); ++k) {
        ComplexMatrix t = tensor_product(terms[k].left, terms[k].right);
        t *= Complex(terms[k].lambda);
        sum += t;
    }
    return sum;
}

std::vector<double> SchmidtDecomposition::coefficients() const {
    std::vector<double> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(t.lambda);
    return out;
}

ComplexMatrix SchmidtDecomposition::reconstruct() const { return reconstruct_terms(terms); }

std::vector<SchmidtTerm> schmidt_decompose(const ComplexMatrix& f, FactorShape left,
                                           FactorShape right, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw std::invalid_argument("schmidt_decompose: rel_tol must lie in (0, 1)");
    }
    if (frobenius_norm(f) == 0.0) {
        throw std::invalid_argument("schmidt_decompose: zero operator");
    }

    const SvdResult s = svd(realign(f, left, right));
    const double cutoff = rel_tol * s.singular_values.front();

    std::vector<SchmidtTerm> terms;
    for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
        const double sigma = s.singular_values[k];
        if (!(sigma > cutoff)) break;  // descending order

        std::vector<Complex> u(s.left_vectors.rows());
        std::vector<Complex> v(s.right_vectors.rows());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = s.left_vectors(i, k);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.right_vectors(i, k);

        // Rotate the pair so the dominant entry of u is real positive.
        std::size_t imax = 0;
        for (std::size_t i = 1; i < u.size(); ++i) {
            if (std::abs(u[i]) > std::abs(u[imax])) imax = i;
        }
        const Complex phase = std::conj(u[imax]) / std::abs(u[imax]);
        for (auto& x : u) x *= phase;
        for (auto& x : v) x *= phase;

        // Conjugating the right singular vector is what makes
        // sum sigma_k A_k (x) B_k reproduce f entrywise.
        for (auto& x : v) x = std::conj(x);

        terms.push_back({sigma, unflatten(u, left.rows, left.cols),
                         unflatten(v, right.rows, right.cols)});
    }
    return terms;
}

SchmidtDecomposition schmidt_decompose(const ComplexMatrix& f, const BipartiteDims& dims,
                                       double rel_tol) {
    require_shape("schmidt_decompose", f, dims.n(), dims.n());
    return SchmidtDecomposition{
        dims, schmidt_decompose(f, FactorShape{dims.n1(), dims.n1()},
                                FactorShape{dims.n2(), dims.n2()}, rel_tol)};
}

ComplexMatrix reduced_density(const ComplexMatrix& f, const BipartiteDims& dims) {
    require_shape("reduced_density", f, dims.n(), dims.n());
    const ComplexMatrix m = realign(f, dims);
    const std::size_t d = dims.n2() * dims.n2();

    ComplexMatrix rho(d, d);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t mm = 0; mm < d; ++mm) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < m.rows(); ++j) {
                acc += m(j, l) * std::conj(m(j, mm));
            }
            rho(l, mm) = acc;
        }
    }
    return rho;
}

std::vector<ComplexMatrix> left_factors_from_right(const ComplexMatrix& f,
                                                   const BipartiteDims& dims,
                                                   std::span<const ComplexMatrix> rights,
                                                   std::span<const double> mus) {
    require_shape("left_factors_from_right", f, dims.n(), dims.n());
    if (rights.size() != mus.size()) {
        throw std::invalid_argument("left_factors_from_right: rights and mus differ in length");
    }
    const std::size_t n1 = dims.n1();
    const std::size_t n2 = dims.n2();

    constexpr double kContractTol = 1e-8;
    for (std::size_t i = 0; i < rights.size(); ++i) {
        if (!(mus[i] > 0.0)) {
            throw std::invalid_argument("left_factors_from_right: eigenvalue " +
                                        std::to_string(i) + " is not positive");
        }
        require_shape("left_factors_from_right (right factor)", rights[i], n2, n2);
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex g = hs_inner(rights[i], rights[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > kContractTol) {
                throw std::invalid_argument(
                    "left_factors_from_right: right factors are not orthonormal");
            }
        }
    }

    std::vector<ComplexMatrix> lefts;
    lefts.reserve(rights.size());
    for (std::size_t k = 0; k < rights.size(); ++k) {
        const double inv = 1.0 / std::sqrt(mus[k]);
        ComplexMatrix a(n1, n1);
        for (std::size_t j1 = 0; j1 < n1; ++j1) {
            for (std::size_t j2 = 0; j2 < n1; ++j2) {
                Complex acc = 0.0;
                for (std::size_t l1 = 0; l1 < n2; ++l1) {
                    for (std::size_t l2 = 0; l2 < n2; ++l2) {
                        acc += f(j1 * n2 + l1, j2 * n2 + l2) * std::conj(rights[k](l1, l2));
                    }
                }
                a(j1, j2) = inv * acc;
            }
        }
        lefts.push_back(std::move(a));
    }

    // Post-check: genuine eigenpairs make these orthonormal. A failure here
    // means the supplied rights/mus did not belong to this operator.
    for (std::size_t i = 0; i < lefts.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex g = hs_inner(lefts[i], lefts[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > kContractTol) {
                throw std::invalid_argument(
                    "left_factors_from_right: recovered left factors are not orthonormal; "
                    "the rights/mus are not an eigensystem of this operator");
            }
        }
    }
    return lefts;
}

bool completely_degenerate(const SchmidtDecomposition& d, double tol) {
    const std::size_t n1 = d.dims.n1();
    const std::size_t n2 = d.dims.n2();
    if (d.terms.size() != std::min(n1 * n1, n2 * n2)) return false;
    double lo = d.terms.front().lambda;
    double hi = lo;
    for (const auto& t : d.terms) {
        lo = std::min(lo, t.lambda);
        hi = std::max(hi, t.lambda);
    }
    return hi - lo <= tol * hi;
}

} // namespace opschmidt
