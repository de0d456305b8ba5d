#pragma once

#include "opschmidt/matrix.hpp"
#include "opschmidt/schmidt.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <vector>

namespace opschmidt {

/// Nonlocality strength figures of a unitary, all in bits.
struct StrengthReport {
    std::size_t schmidt_number;
    double hartley;           // log2(schmidt_number)
    double schmidt_strength;  // Shannon entropy of {lambda_k^2 / (n1*n2)}
    double q0_lower;          // sharpened communication lower bound: equals hartley
    double q0_lower_original; // hartley / 2, the earlier printed bound
    /// 2*min(log2 n1, log2 n2); defined only when both local dimensions are
    /// powers of two (qubit registers), absent otherwise.
    std::optional<double> q0_upper;
};

/// log2 of the number of terms.
double hartley_strength(const SchmidtDecomposition& d);

/// Shannon entropy (base 2) of lambda_k^2 / (n1*n2). Requires the source
/// operator to be unitary, i.e. sum lambda_k^2 = n1*n2 within 1e-6 relative;
/// anything else is refused rather than renormalized.
double schmidt_strength(const SchmidtDecomposition& d);

StrengthReport strength_report(const SchmidtDecomposition& d);

/// How many qudits of each dimension a protocol communicates.
class QuditSchedule {
public:
    QuditSchedule() = default;
    QuditSchedule(std::initializer_list<std::pair<std::size_t, std::size_t>> dimension_counts);

    /// Dimension must be >= 2.
    void add(std::size_t dimension, std::size_t count);

    const std::map<std::size_t, std::size_t>& counts() const noexcept { return counts_; }

    /// sum over dimensions of count * log2(dimension).
    double total_bits() const;

private:
    std::map<std::size_t, std::size_t> counts_;
};

/// True when the schedule carries at least hartley_strength(d) bits.
bool schedule_satisfies_bound(const QuditSchedule& s, const SchmidtDecomposition& d);

/// Re-association map (C^{n1} (x) C^{n2}) (x) C^{n3} -> C^{n1} (x) (C^{n2} (x) C^{n3}).
/// On flattened indices both groupings agree, so the matrix is the identity
/// of size n1*n2*n3; what is interesting is its Schmidt decomposition across
/// the split (C^{n1*n2} | C^{n3}) -> (C^{n1} | C^{n2*n3}).
ComplexMatrix communication_operator(std::size_t n1, std::size_t n2, std::size_t n3);

/// The explicit n2-term decomposition across that split: every coefficient is
/// sqrt(n1*n3), with
///   A_k(i, i*n2 + k) = 1/sqrt(n1)   (an n1 x n1*n2 matrix),
///   B_k(k*n3 + i, i) = 1/sqrt(n3)   (an n2*n3 x n3 matrix).
std::vector<SchmidtTerm> communication_operator_decomposition(std::size_t n1, std::size_t n2,
                                                              std::size_t n3);

} // namespace opschmidt
