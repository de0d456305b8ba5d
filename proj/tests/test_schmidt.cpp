#include "opschmidt/qft.hpp"
#include "opschmidt/schmidt.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "test_util.hpp"

using namespace opschmidt;
using testutil::random_matrix;
using testutil::random_unitary;

namespace {

ComplexMatrix diag_matrix(const std::vector<double>& values) {
    ComplexMatrix d(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) d(i, i) = values[i];
    return d;
}

ComplexMatrix svd_reconstruct(const SvdResult& s) {
    return s.left_vectors * diag_matrix(s.singular_values) * dagger(s.right_vectors);
}

ComplexMatrix column_as_matrix(const ComplexMatrix& columns, std::size_t k, std::size_t rows,
                               std::size_t cols) {
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) out(i / cols, i % cols) = columns(i, k);
    return out;
}

void check_orthonormal_columns(const ComplexMatrix& m, double tol) {
    const ComplexMatrix g = dagger(m) * m;
    CHECK(max_abs_diff(g, ComplexMatrix::identity(m.cols())) <= tol);
}

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

} // namespace

TEST_CASE("realign of a product operator has rank one") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_matrix(2, 2, rng);
        const ComplexMatrix b = random_matrix(2, 2, rng);
        const SvdResult s = svd(realign(tensor_product(a, b), BipartiteDims(2, 2)));
        CHECK(s.singular_values[0] ==
              doctest::Approx(frobenius_norm(a) * frobenius_norm(b)).epsilon(1e-12));
        for (std::size_t k = 1; k < s.singular_values.size(); ++k) {
            CHECK(s.singular_values[k] < 1e-12 * s.singular_values[0]);
        }
    }
}

TEST_CASE("realign of the identity on two qubits") {
    const SvdResult s = svd(realign(ComplexMatrix::identity(4), BipartiteDims(2, 2)));
    REQUIRE(s.singular_values.size() == 4);
    CHECK(s.singular_values[0] == doctest::Approx(2.0).epsilon(1e-13));
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(s.singular_values[k]) < 1e-13);
}

TEST_CASE("realign is a norm-preserving bijective rearrangement") {
    std::mt19937 rng(22);
    const BipartiteDims dims(2, 3);
    const ComplexMatrix f = random_matrix(6, 6, rng);
    const ComplexMatrix m = realign(f, dims);
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 9);

    // the entry multiset is exactly preserved
    auto entries_of = [](const ComplexMatrix& x) {
        std::vector<std::pair<double, double>> v;
        for (const auto& z : x.data()) v.push_back({z.real(), z.imag()});
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(entries_of(m) == entries_of(f));
    CHECK(frobenius_norm(m) == doctest::Approx(frobenius_norm(f)).epsilon(1e-15));

    // inverse rearrangement recovers the operator bit-for-bit
    CHECK(realign_inverse(m, dims) == f);

    CHECK_THROWS_AS(realign(ComplexMatrix(5, 5), dims), std::invalid_argument);
    CHECK_THROWS_AS(realign_inverse(ComplexMatrix(5, 5), dims), std::invalid_argument);
}

TEST_CASE("realign entry convention") {
    // out[(j1*n1 + j2), (l1*n2 + l2)] == f[(j1*n2 + l1), (j2*n2 + l2)]
    std::mt19937 rng(23);
    const BipartiteDims dims(3, 2);
    const ComplexMatrix f = random_matrix(6, 6, rng);
    const ComplexMatrix m = realign(f, dims);
    for (std::size_t j1 = 0; j1 < 3; ++j1)
        for (std::size_t j2 = 0; j2 < 3; ++j2)
            for (std::size_t l1 = 0; l1 < 2; ++l1)
                for (std::size_t l2 = 0; l2 < 2; ++l2)
                    CHECK(m(j1 * 3 + j2, l1 * 2 + l2) == f(j1 * 2 + l1, j2 * 2 + l2));
}

TEST_CASE("svd of simple matrices") {
    const SvdResult si = svd(ComplexMatrix::identity(3));
    REQUIRE(si.singular_values.size() == 3);
    for (double s : si.singular_values) CHECK(s == doctest::Approx(1.0).epsilon(1e-14));

    const SvdResult sd = svd(diag_matrix({3.0, 0.0}));
    REQUIRE(sd.singular_values.size() == 2);
    CHECK(sd.singular_values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(sd.singular_values[1]) < 1e-14);

    CHECK_THROWS_AS(svd(ComplexMatrix()), std::invalid_argument);
}

TEST_CASE("svd reconstruction oracle on random matrices") {
    std::mt19937 rng(24);
    std::uniform_int_distribution<std::size_t> dim(1, 16);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m = random_matrix(dim(rng), dim(rng), rng);
        const SvdResult s = svd(m);
        CHECK(std::is_sorted(s.singular_values.begin(), s.singular_values.end(),
                             std::greater<>()));
        check_orthonormal_columns(s.left_vectors, 1e-12);
        check_orthonormal_columns(s.right_vectors, 1e-12);
        CHECK(frobenius_norm(svd_reconstruct(s) - m) <= 1e-12 * frobenius_norm(m));
    }
}

TEST_CASE("svd handles sizes beyond the Jacobi cutoff") {
    std::mt19937 rng(25);
    const ComplexMatrix m = random_matrix(150, 140, rng);
    const SvdResult s = svd(m);
    CHECK(frobenius_norm(svd_reconstruct(s) - m) <= 1e-12 * frobenius_norm(m));
    check_orthonormal_columns(s.left_vectors, 1e-12);
    check_orthonormal_columns(s.right_vectors, 1e-12);
}

TEST_CASE("hermitian_eigensystem") {
    const EigenSystem e = hermitian_eigensystem(diag_matrix({1.0, 3.0, 2.0}));
    CHECK(e.eigenvalues == std::vector<double>{3.0, 2.0, 1.0});

    std::mt19937 rng(26);
    const ComplexMatrix g = random_matrix(5, 5, rng);
    const ComplexMatrix h = g + dagger(g);
    const EigenSystem eh = hermitian_eigensystem(h);
    check_orthonormal_columns(eh.eigenvectors, 1e-12);
    ComplexMatrix sum(5, 5);
    for (std::size_t k = 0; k < 5; ++k) {
        const ComplexMatrix v = column_as_matrix(eh.eigenvectors, k, 5, 1);
        sum += Complex(eh.eigenvalues[k]) * (v * dagger(v));
    }
    CHECK(max_abs_diff(sum, h) < 1e-12 * frobenius_norm(h));

    CHECK_THROWS_AS(hermitian_eigensystem(g), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("schmidt_decompose of a product operator") {
    std::mt19937 rng(27);
    const ComplexMatrix a = random_matrix(2, 2, rng);
    const ComplexMatrix b = random_matrix(3, 3, rng);
    const ComplexMatrix f = tensor_product(a, b);
    const SchmidtDecomposition d = schmidt_decompose(f, BipartiteDims(2, 3));
    REQUIRE(d.schmidt_number() == 1);
    CHECK(d.terms[0].lambda ==
          doctest::Approx(frobenius_norm(a) * frobenius_norm(b)).epsilon(1e-12));
    CHECK(max_abs_diff(d.reconstruct(), f) < 1e-12);
}

TEST_CASE("schmidt_decompose of the Fourier matrix on 2x2") {
    const SchmidtDecomposition d = schmidt_decompose(qft_matrix(4), BipartiteDims(2, 2));
    REQUIRE(d.schmidt_number() == 4);
    for (const auto& t : d.terms) CHECK(t.lambda == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schmidt_decompose of the Fourier matrix on 2x3") {
    const SchmidtDecomposition d = schmidt_decompose(qft_matrix(6), BipartiteDims(2, 3));
    REQUIRE(d.schmidt_number() == 4);
    const std::vector<double> expected{std::sqrt(8.0 / 3.0), std::sqrt(4.0 / 3.0),
                                       std::sqrt(4.0 / 3.0), std::sqrt(2.0 / 3.0)};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(d.terms[k].lambda - expected[k]) < 1e-12);
    }
}

TEST_CASE("schmidt_decompose contracts") {
    const BipartiteDims dims(2, 3);
    CHECK_THROWS_AS(schmidt_decompose(ComplexMatrix(6, 6), dims), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_decompose(qft_matrix(6), dims, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_decompose(qft_matrix(6), dims, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_decompose(qft_matrix(4), dims), std::invalid_argument);

    // deterministic output: identical runs produce identical factors
    const SchmidtDecomposition d1 = schmidt_decompose(qft_matrix(6), dims);
    const SchmidtDecomposition d2 = schmidt_decompose(qft_matrix(6), dims);
    REQUIRE(d1.terms.size() == d2.terms.size());
    for (std::size_t k = 0; k < d1.terms.size(); ++k) {
        CHECK(d1.terms[k].lambda == d2.terms[k].lambda);
        CHECK(d1.terms[k].left == d2.terms[k].left);
        CHECK(d1.terms[k].right == d2.terms[k].right);
    }
}

TEST_CASE("rank cutoff keeps singular values above rel_tol * sigma_max") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ComplexMatrix a(2, 2, {inv_sqrt2, 0.0, 0.0, inv_sqrt2});
    const ComplexMatrix c(2, 2, {0.0, inv_sqrt2, inv_sqrt2, 0.0});
    const ComplexMatrix b = a;
    const ComplexMatrix d(2, 2, {inv_sqrt2, 0.0, 0.0, -inv_sqrt2});

    ComplexMatrix f = tensor_product(a, b);
    f += Complex(1e-12) * tensor_product(c, d);

    CHECK(schmidt_decompose(f, BipartiteDims(2, 2)).schmidt_number() == 1);
    CHECK(schmidt_decompose(f, BipartiteDims(2, 2), 1e-14).schmidt_number() == 2);
}

TEST_CASE("schmidt decompositions satisfy their invariants") {
    std::mt19937 rng(28);
    std::vector<std::pair<ComplexMatrix, BipartiteDims>> inputs;
    inputs.push_back({qft_matrix(6), BipartiteDims(2, 3)});
    inputs.push_back({qft_matrix(6), BipartiteDims(3, 2)});
    inputs.push_back({qft_matrix(8), BipartiteDims(2, 4)});
    inputs.push_back({random_matrix(6, 6, rng), BipartiteDims(2, 3)});
    inputs.push_back({random_unitary(9, rng), BipartiteDims(3, 3)});

    for (const auto& [f, dims] : inputs) {
        const SchmidtDecomposition d = schmidt_decompose(f, dims);

        CHECK(d.schmidt_number() <=
              std::min(dims.n1() * dims.n1(), dims.n2() * dims.n2()));

        double sum_sq = 0.0;
        for (const auto& t : d.terms) {
            CHECK(t.lambda > 0.0);
            sum_sq += t.lambda * t.lambda;
        }
        const double norm_sq = frobenius_norm(f) * frobenius_norm(f);
        CHECK(std::abs(sum_sq - norm_sq) <= 1e-9 * norm_sq);

        for (std::size_t i = 0; i < d.terms.size(); ++i) {
            if (i + 1 < d.terms.size()) CHECK(d.terms[i].lambda >= d.terms[i + 1].lambda);
            for (std::size_t j = 0; j <= i; ++j) {
                const double expected = (i == j) ? 1.0 : 0.0;
                CHECK(std::abs(hs_inner(d.terms[i].left, d.terms[j].left) - expected) <= 1e-10);
                CHECK(std::abs(hs_inner(d.terms[i].right, d.terms[j].right) - expected) <= 1e-10);
            }
        }

        CHECK(frobenius_norm(d.reconstruct() - f) <= 1e-10 * frobenius_norm(f));
    }
}

TEST_CASE("reduced_density of a product operator is rank one") {
    std::mt19937 rng(29);
    ComplexMatrix a = random_matrix(2, 2, rng);
    a *= Complex(1.0 / frobenius_norm(a));  // HS-normalized left factor
    const ComplexMatrix b = random_matrix(3, 3, rng);
    const ComplexMatrix rho = reduced_density(tensor_product(a, b), BipartiteDims(2, 3));

    for (std::size_t l = 0; l < 9; ++l) {
        for (std::size_t m = 0; m < 9; ++m) {
            const Complex expected =
                b(l / 3, l % 3) * std::conj(b(m / 3, m % 3));
            CHECK(std::abs(rho(l, m) - expected) < 1e-12);
        }
    }
}

TEST_CASE("reduced_density eigenvalues are squared Schmidt coefficients") {
    const EigenSystem e22 =
        hermitian_eigensystem(reduced_density(qft_matrix(4), BipartiteDims(2, 2)));
    REQUIRE(e22.eigenvalues.size() == 4);
    for (double mu : e22.eigenvalues) CHECK(mu == doctest::Approx(1.0).epsilon(1e-12));

    const EigenSystem e23 =
        hermitian_eigensystem(reduced_density(qft_matrix(6), BipartiteDims(2, 3)));
    REQUIRE(e23.eigenvalues.size() == 9);
    const std::vector<double> expected{8.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 2.0 / 3.0};
    for (std::size_t k = 0; k < expected.size(); ++k) {
        CHECK(std::abs(e23.eigenvalues[k] - expected[k]) < 1e-12);
    }
    for (std::size_t k = expected.size(); k < 9; ++k) {
        CHECK(std::abs(e23.eigenvalues[k]) < 1e-12);
    }
}

TEST_CASE("realignment singular values equal reduced-density eigenvalue roots") {
    std::mt19937 rng(30);
    std::vector<std::pair<ComplexMatrix, BipartiteDims>> inputs;
    inputs.push_back({random_matrix(6, 6, rng), BipartiteDims(2, 3)});
    inputs.push_back({random_unitary(6, rng), BipartiteDims(3, 2)});
    inputs.push_back({qft_matrix(8), BipartiteDims(2, 4)});
    inputs.push_back({qft_matrix(12), BipartiteDims(4, 3)});

    for (const auto& [f, dims] : inputs) {
        const std::vector<double> sigma = svd(realign(f, dims)).singular_values;
        std::vector<double> roots;
        for (double mu : hermitian_eigensystem(reduced_density(f, dims)).eigenvalues) {
            roots.push_back(std::sqrt(std::max(mu, 0.0)));
        }
        const auto s = sorted_desc(sigma);
        const auto r = sorted_desc(roots);
        for (std::size_t k = 0; k < std::min(s.size(), r.size()); ++k) {
            CHECK(std::abs(s[k] - r[k]) <= 1e-9);
        }
    }
}

TEST_CASE("left_factors_from_right on a product operator") {
    std::mt19937 rng(31);
    const ComplexMatrix a = random_matrix(2, 2, rng);
    ComplexMatrix b = random_matrix(3, 3, rng);
    const double na = frobenius_norm(a);
    const double nb = frobenius_norm(b);
    const ComplexMatrix f = tensor_product(a, b);

    ComplexMatrix b_unit = b;
    b_unit *= Complex(1.0 / nb);
    const std::vector<ComplexMatrix> rights{b_unit};
    const std::vector<double> mus{na * na * nb * nb};
    const auto lefts = left_factors_from_right(f, BipartiteDims(2, 3), rights, mus);

    REQUIRE(lefts.size() == 1);
    ComplexMatrix a_unit = a;
    a_unit *= Complex(1.0 / na);
    CHECK(max_abs_diff(lefts[0], a_unit) < 1e-12);
}

TEST_CASE("left_factors_from_right recovers the closed-form left family") {
    const BipartiteDims dims(2, 3);
    const SchmidtDecomposition closed = closed_form_decomposition(dims);
    std::vector<ComplexMatrix> rights;
    std::vector<double> mus;
    for (const auto& t : closed.terms) {
        rights.push_back(t.right);
        mus.push_back(t.lambda * t.lambda);
    }
    const auto lefts = left_factors_from_right(qft_matrix(6), dims, rights, mus);
    REQUIRE(lefts.size() == closed.terms.size());
    for (std::size_t k = 0; k < lefts.size(); ++k) {
        CHECK(max_abs_diff(lefts[k], closed.terms[k].left) < 1e-12);
    }
}

TEST_CASE("left_factors_from_right reconstructs random unitaries") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const BipartiteDims dims = (trial % 2 == 0) ? BipartiteDims(2, 3) : BipartiteDims(3, 2);
        const ComplexMatrix u = random_unitary(6, rng);
        const EigenSystem e = hermitian_eigensystem(reduced_density(u, dims));

        std::vector<ComplexMatrix> rights;
        std::vector<double> mus;
        for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
            if (e.eigenvalues[k] <= 1e-9 * e.eigenvalues.front()) continue;
            rights.push_back(
                column_as_matrix(e.eigenvectors, k, dims.n2(), dims.n2()));
            mus.push_back(e.eigenvalues[k]);
        }
        const auto lefts = left_factors_from_right(u, dims, rights, mus);

        std::vector<SchmidtTerm> terms;
        for (std::size_t k = 0; k < lefts.size(); ++k) {
            terms.push_back({std::sqrt(mus[k]), lefts[k], rights[k]});
        }
        CHECK(frobenius_norm(reconstruct_terms(terms) - u) < 1e-10);
    }
}

TEST_CASE("left_factors_from_right rejects bad contracts") {
    const BipartiteDims dims(2, 3);
    const ComplexMatrix f = qft_matrix(6);
    const SchmidtDecomposition closed = closed_form_decomposition(dims);

    std::vector<ComplexMatrix> rights{closed.terms[0].right};
    CHECK_THROWS_AS(
        left_factors_from_right(f, dims, rights, std::vector<double>{-1.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(left_factors_from_right(f, dims, rights, std::vector<double>{}),
                    std::invalid_argument);

    // non-orthonormal rights: same factor twice
    std::vector<ComplexMatrix> dup{closed.terms[0].right, closed.terms[0].right};
    const std::vector<double> mus{1.0, 1.0};
    CHECK_THROWS_AS(left_factors_from_right(f, dims, dup, mus), std::invalid_argument);

    // scaled rights violate the orthonormality pre-check
    ComplexMatrix scaled = closed.terms[0].right;
    scaled *= Complex(2.0);
    std::vector<ComplexMatrix> bad{scaled};
    CHECK_THROWS_AS(
        left_factors_from_right(f, dims, bad, std::vector<double>{1.0}),
        std::invalid_argument);

    // orthonormal rights with eigenvalues that belong to nothing: the
    // recovered lefts come out non-orthonormal and the post-check reports it
    std::vector<ComplexMatrix> rights2{closed.terms[0].right, closed.terms[1].right};
    const std::vector<double> wrong_mus{1.0, 1.0};
    CHECK_THROWS_AS(left_factors_from_right(f, dims, rights2, wrong_mus),
                    std::invalid_argument);
}

TEST_CASE("completely_degenerate predicate") {
    CHECK(completely_degenerate(closed_form_decomposition(BipartiteDims(2, 2))));
    CHECK(completely_degenerate(closed_form_decomposition(BipartiteDims(3, 2))));
    CHECK(completely_degenerate(closed_form_decomposition(BipartiteDims(2, 4))));
    CHECK(!completely_degenerate(closed_form_decomposition(BipartiteDims(2, 3))));

    // right count, unequal coefficients
    SchmidtDecomposition d = closed_form_decomposition(BipartiteDims(2, 2));
    d.terms[0].lambda = 2.0;
    CHECK(!completely_degenerate(d));
}
