#include "opschmidt/verify.hpp"

#include "opschmidt/qft.hpp"
#include "opschmidt/schmidt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace opschmidt {

namespace {

// Multiplicity pattern read off a descending coefficient list: a new cluster
// starts wherever consecutive values differ by more than tol.
std::vector<std::pair<double, std::size_t>> cluster_descending(const std::vector<double>& values,
                                                               double tol) {
    std::vector<std::pair<double, std::size_t>> clusters;
    for (double v : values) {
        if (clusters.empty() || clusters.back().first - v > tol) {
            clusters.push_back({v, 1});
        } else {
            ++clusters.back().second;
        }
    }
    return clusters;
}

double max_elementwise_gap(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

bool VerifyOutcome::passed(double tol) const {
    return schmidt_number_match && multiplicities_match && chi_identity_ok &&
           max_coeff_deviation <= tol && max_reconstruction_error <= tol &&
           max_rho_deviation <= tol;
}

VerifyOutcome verify_pair(const BipartiteDims& dims, double tol, bool inject_fault) {
    const ComplexMatrix f = qft_matrix(dims.n());

    SchmidtDecomposition closed = closed_form_decomposition(dims);
    if (inject_fault) {
        // One wrong phase in one left factor; reconstruction must catch it.
        closed.terms.front().left(0, 0) *= unit_phase(1, 7);
    }
    const SchmidtDecomposition numeric = schmidt_decompose(f, dims, tol);
    const SpectrumTable table = spectrum_by_cases(dims);

    const std::vector<double> closed_coeffs = closed.coefficients();   // descending
    const std::vector<double> numeric_coeffs = numeric.coefficients(); // descending
    const std::vector<double> predicted = table.expand();

    VerifyOutcome out{dims,  to_string(table.case_label), 0.0, 0.0, 0.0,
                      false, false,                       false};

    out.max_coeff_deviation = std::max(max_elementwise_gap(closed_coeffs, numeric_coeffs),
                                       max_elementwise_gap(predicted, numeric_coeffs));

    out.max_reconstruction_error = std::max(frobenius_norm(closed.reconstruct() - f),
                                            frobenius_norm(numeric.reconstruct() - f));

    out.max_rho_deviation = max_abs_diff(rho_closed_form(dims), reduced_density(f, dims));

    const std::size_t expected = std::min(dims.n1() * dims.n1(), dims.n2() * dims.n2());
    out.schmidt_number_match =
        closed.schmidt_number() == expected && numeric.schmidt_number() == expected;

    const auto clusters = cluster_descending(numeric_coeffs, tol);
    out.multiplicities_match = clusters.size() == table.entries.size();
    if (out.multiplicities_match) {
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (clusters[i].second != table.entries[i].multiplicity ||
                std::abs(clusters[i].first - table.entries[i].coefficient) > tol) {
                out.multiplicities_match = false;
                break;
            }
        }
    }

    out.chi_identity_ok = chi_identity_check(dims);
    return out;
}

std::vector<VerifyOutcome> verify_sweep(std::size_t n1_max, std::size_t n2_max, double tol,
                                        std::optional<BipartiteDims> fault_dims) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw std::invalid_argument("verify_sweep: tol must lie in (0, 1)");
    }
    std::vector<BipartiteDims> pairs;
    for (std::size_t n1 = 2; n1 <= n1_max; ++n1) {
        for (std::size_t n2 = 2; n2 <= n2_max; ++n2) {
            pairs.emplace_back(n1, n2);
        }
    }

    std::vector<std::optional<VerifyOutcome>> slots(pairs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= pairs.size()) return;
                const bool fault = fault_dims.has_value() && *fault_dims == pairs[i];
                slots[i] = verify_pair(pairs[i], tol, fault);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t nthreads = std::min(hw, pairs.size());
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<VerifyOutcome> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace opschmidt
