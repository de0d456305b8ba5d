#include "opschmidt/strength.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace opschmidt {

double hartley_strength(const SchmidtDecomposition& d) {
    if (d.terms.empty()) {
        throw std::invalid_argument("hartley_strength: empty decomposition");
    }
    return std::log2(static_cast<double>(d.terms.size()));
}

double schmidt_strength(const SchmidtDecomposition& d) {
    if (d.terms.empty()) {
        throw std::invalid_argument("schmidt_strength: empty decomposition");
    }
    const double dim = static_cast<double>(d.dims.n());
    double sum = 0.0;
    for (const auto& t : d.terms) sum += t.lambda * t.lambda;
    const double deficit = std::abs(sum - dim);
    if (deficit > 1e-6 * dim) {
        throw std::invalid_argument(
            "schmidt_strength: source operator is not unitary; sum of squared coefficients " +
            std::to_string(sum) + " differs from dimension " + std::to_string(d.dims.n()) +
            " by " + std::to_string(deficit));
    }
    double entropy = 0.0;
    for (const auto& t : d.terms) {
        const double p = t.lambda * t.lambda / dim;
        if (p > 0.0) entropy -= p * std::log2(p);
    }
    return entropy;
}

StrengthReport strength_report(const SchmidtDecomposition& d) {
    StrengthReport r;
    r.schmidt_number = d.terms.size();
    r.hartley = hartley_strength(d);
    r.schmidt_strength = schmidt_strength(d);
    r.q0_lower = r.hartley;
    r.q0_lower_original = r.hartley / 2.0;

    const std::size_t n1 = d.dims.n1();
    const std::size_t n2 = d.dims.n2();
    if (std::has_single_bit(n1) && std::has_single_bit(n2)) {
        const auto qubits = std::min(std::countr_zero(n1), std::countr_zero(n2));
        r.q0_upper = 2.0 * static_cast<double>(qubits);
    }
    return r;
}

QuditSchedule::QuditSchedule(
    std::initializer_list<std::pair<std::size_t, std::size_t>> dimension_counts) {
    for (const auto& [dimension, count] : dimension_counts) add(dimension, count);
}

void QuditSchedule::add(std::size_t dimension, std::size_t count) {
    if (dimension < 2) {
        throw std::invalid_argument("QuditSchedule: qudit dimension must be at least 2, got " +
                                    std::to_string(dimension));
    }
    counts_[dimension] += count;
}

double QuditSchedule::total_bits() const {
    double bits = 0.0;
    for (const auto& [dimension, count] : counts_) {
        bits += static_cast<double>(count) * std::log2(static_cast<double>(dimension));
    }
    return bits;
}

bool schedule_satisfies_bound(const QuditSchedule& s, const SchmidtDecomposition& d) {
    return s.total_bits() >= hartley_strength(d) - 1e-12;
}

namespace {

void require_triple(std::size_t n1, std::size_t n2, std::size_t n3) {
    if (n1 < 2 || n2 < 2 || n3 < 2) {
        throw std::invalid_argument("communication operator: all three dimensions must be >= 2");
    }
}

} // namespace

ComplexMatrix communication_operator(std::size_t n1, std::size_t n2, std::size_t n3) {
    require_triple(n1, n2, n3);
    // (i*n2 + j)*n3 + l == i*(n2*n3) + (j*n3 + l): both groupings flatten to
    // the same index, so re-association is the identity matrix.
    return ComplexMatrix::identity(n1 * n2 * n3);
}

std::vector<SchmidtTerm> communication_operator_decomposition(std::size_t n1, std::size_t n2,
                                                              std::size_t n3) {
    require_triple(n1, n2, n3);
    const double lambda = std::sqrt(static_cast<double>(n1 * n3));
    const double a_entry = 1.0 / std::sqrt(static_cast<double>(n1));
    const double b_entry = 1.0 / std::sqrt(static_cast<double>(n3));

    std::vector<SchmidtTerm> terms;
    terms.reserve(n2);
    for (std::size_t k = 0; k < n2; ++k) {
        ComplexMatrix a(n1, n1 * n2);
        for (std::size_t i = 0; i < n1; ++i) a(i, i * n2 + k) = a_entry;
        ComplexMatrix b(n2 * n3, n3);
        for (std::size_t i = 0; i < n3; ++i) b(k * n3 + i, i) = b_entry;
        terms.push_back({lambda, std::move(a), std::move(b)});
    }
    return terms;
}

} // namespace opschmidt
