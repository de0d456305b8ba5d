#pragma once

#include "opschmidt/bipartite.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace opschmidt {

/// Result of cross-checking the closed-form decomposition of the Fourier
/// matrix against the realignment + SVD path for one dimension pair.
struct VerifyOutcome {
    BipartiteDims dims;
    std::string case_label;
    double max_coeff_deviation;       // across closed form, SVD, and case table
    double max_reconstruction_error;  // Frobenius, worse of the two paths
    double max_rho_deviation;         // closed-form vs computed reduced density
    bool schmidt_number_match;        // both paths give min(n1^2, n2^2) terms
    bool multiplicities_match;        // SVD degeneracy clusters match the case table
    bool chi_identity_ok;

    bool passed(double tol) const;
};

/// Runs every cross-check for one pair. tol sets the clustering width used
/// when reading multiplicities off the numerical spectrum. When inject_fault
/// is set, one phase of the closed-form decomposition is corrupted first;
/// the checks are then expected to fail.
VerifyOutcome verify_pair(const BipartiteDims& dims, double tol = 1e-9,
                          bool inject_fault = false);

/// verify_pair over all 2 <= n1 <= n1_max, 2 <= n2 <= n2_max, in
/// lexicographic order. Pairs are checked concurrently; the returned order
/// is deterministic regardless of scheduling. fault_dims, when present,
/// injects a fault at exactly that pair.
std::vector<VerifyOutcome> verify_sweep(std::size_t n1_max, std::size_t n2_max,
                                        double tol = 1e-9,
                                        std::optional<BipartiteDims> fault_dims = std::nullopt);

} // namespace opschmidt
