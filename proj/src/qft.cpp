#include "opschmidt/qft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace opschmidt {

namespace {

using IndexPair = std::pair<std::size_t, std::size_t>;

std::int64_t to_i64(std::size_t v) { return static_cast<std::int64_t>(v); }

// Coefficient of a class of the given size; written so that identical
// integer inputs give identical doubles everywhere it is used.
double class_coefficient(std::size_t n1, std::size_t n2, std::size_t class_size) {
    return std::sqrt(static_cast<double>(n1 * class_size) / static_cast<double>(n2));
}

} // namespace

ComplexMatrix qft_matrix(std::size_t n) {
    if (n < 2) throw std::invalid_argument("qft_matrix: size must be at least 2");
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix f(n, n);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t s = 0; s < n; ++s) {
            f(t, s) = norm * unit_phase(to_i64(t) * to_i64(s), to_i64(n));
        }
    }
    return f;
}

bool EquivalenceClass::contains(IndexPair p) const {
    return std::binary_search(members.begin(), members.end(), p);
}

std::vector<EquivalenceClass> enumerate_classes(const BipartiteDims& dims) {
    const std::size_t n1 = dims.n1();
    const std::size_t n2 = dims.n2();

    // Elements are equivalent iff both coordinates agree mod n1; reducing a
    // member mod n1 lands on the canonical representative.
    std::map<IndexPair, std::vector<IndexPair>> buckets;
    for (std::size_t l1 = 0; l1 < n2; ++l1) {
        for (std::size_t l2 = 0; l2 < n2; ++l2) {
            buckets[{l1 % n1, l2 % n1}].push_back({l1, l2});
        }
    }

    std::vector<EquivalenceClass> classes;
    classes.reserve(buckets.size());
    for (auto& [rep, members] : buckets) {
        // Map iteration is rep-lexicographic; row-major fill keeps members sorted.
        classes.push_back({rep, std::move(members)});
    }
    return classes;
}

ComplexMatrix a_matrix_for_rep(IndexPair rep, const BipartiteDims& dims) {
    const std::size_t n1 = dims.n1();
    const std::size_t n2 = dims.n2();
    const double norm = 1.0 / static_cast<double>(n1);
    ComplexMatrix a(n1, n1);
    for (std::size_t k1 = 0; k1 < n1; ++k1) {
        for (std::size_t k2 = 0; k2 < n1; ++k2) {
            const std::int64_t arg = to_i64(n2) * to_i64(k1) * to_i64(k2) +
                                     to_i64(k1) * to_i64(rep.second) +
                                     to_i64(k2) * to_i64(rep.first);
            a(k1, k2) = norm * unit_phase(arg, to_i64(n1));
        }
    }
    return a;
}

ComplexMatrix a_matrix(const EquivalenceClass& c, const BipartiteDims& dims) {
    return a_matrix_for_rep(c.rep, dims);
}

ComplexMatrix b_matrix(const EquivalenceClass& c, const BipartiteDims& dims) {
    const std::size_t n2 = dims.n2();
    const double norm = 1.0 / std::sqrt(static_cast<double>(c.size()));
    ComplexMatrix b(n2, n2);
    for (const auto& [l1, l2] : c.members) {
        b(l1, l2) = norm * unit_phase(to_i64(l1) * to_i64(l2), to_i64(dims.n()));
    }
    return b;
}

SchmidtDecomposition closed_form_decomposition(const BipartiteDims& dims) {
    std::vector<SchmidtTerm> terms;
    for (const auto& c : enumerate_classes(dims)) {
        terms.push_back({class_coefficient(dims.n1(), dims.n2(), c.size()), a_matrix(c, dims),
                         b_matrix(c, dims)});
    }
    // Coefficient descending; stable sort keeps representative order within ties.
    std::stable_sort(terms.begin(), terms.end(),
                     [](const SchmidtTerm& x, const SchmidtTerm& y) { return x.lambda > y.lambda; });
    return {dims, std::move(terms)};
}

std::string to_string(SpectrumCase c) {
    switch (c) {
        case SpectrumCase::divides: return "divides";
        case SpectrumCase::n1_ge_n2: return "n1_ge_n2";
        case SpectrumCase::general: return "general";
    }
    throw std::logic_error("to_string: unknown spectrum case");
}

std::vector<double> SpectrumTable::expand() const {
    std::vector<double> out;
    for (const auto& e : entries) {
        out.insert(out.end(), e.multiplicity, e.coefficient);
    }
    return out;
}

SpectrumTable spectrum_by_cases(const BipartiteDims& dims) {
    const std::size_t n1 = dims.n1();
    const std::size_t n2 = dims.n2();

    // Degenerate cases first; the three-coefficient formulas below are only
    // meaningful when n1 < n2 with a nonzero remainder.
    if (n2 % n1 == 0) {
        const std::size_t q = n2 / n1;
        return {SpectrumCase::divides, {{class_coefficient(n1, n2, q * q), n1 * n1}}};
    }
    if (n1 >= n2) {
        return {SpectrumCase::n1_ge_n2, {{class_coefficient(n1, n2, 1), n2 * n2}}};
    }

    const std::size_t q = n2 / n1;  // floor
    const std::size_t r = n2 % n1;  // nonzero here
    const std::size_t s = n1 - r;   // (-n2) mod n1
    return {SpectrumCase::general,
            {{class_coefficient(n1, n2, (q + 1) * (q + 1)), r * r},
             {class_coefficient(n1, n2, (q + 1) * q), 2 * r * s},
             {class_coefficient(n1, n2, q * q), s * s}}};
}

ComplexMatrix rho_closed_form(const BipartiteDims& dims) {
    const std::size_t n1 = dims.n1();
    const std::size_t n2 = dims.n2();
    const std::size_t d = n2 * n2;
    const double scale = static_cast<double>(n1) / static_cast<double>(n2);

    ComplexMatrix rho(d, d);
    for (std::size_t l1 = 0; l1 < n2; ++l1) {
        for (std::size_t l2 = 0; l2 < n2; ++l2) {
            for (std::size_t m1 = 0; m1 < n2; ++m1) {
                for (std::size_t m2 = 0; m2 < n2; ++m2) {
                    const std::int64_t d1 = to_i64(l1) - to_i64(m1);
                    const std::int64_t d2 = to_i64(l2) - to_i64(m2);
                    if (d1 % to_i64(n1) != 0 || d2 % to_i64(n1) != 0) continue;
                    const std::int64_t arg = to_i64(l1) * to_i64(l2) - to_i64(m1) * to_i64(m2);
                    rho(l1 * n2 + l2, m1 * n2 + m2) =
                        scale * unit_phase(arg, to_i64(dims.n()));
                }
            }
        }
    }
    return rho;
}

bool chi_identity_check(const BipartiteDims& dims) {
    const std::size_t n1 = dims.n1();
    const std::size_t n2 = dims.n2();
    const auto classes = enumerate_classes(dims);

    // Membership count per element; the identity needs each element in
    // exactly one class, so anything else fails immediately.
    std::vector<int> class_of(n2 * n2, -1);
    for (std::size_t l1 = 0; l1 < n2; ++l1) {
        for (std::size_t l2 = 0; l2 < n2; ++l2) {
            int hits = 0;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                if (classes[c].contains({l1, l2})) {
                    ++hits;
                    class_of[l1 * n2 + l2] = static_cast<int>(c);
                }
            }
            if (hits != 1) return false;
        }
    }

    for (std::size_t l = 0; l < n2 * n2; ++l) {
        const auto [l1, l2] = std::pair{l / n2, l % n2};
        for (std::size_t m = 0; m < n2 * n2; ++m) {
            const auto [m1, m2] = std::pair{m / n2, m % n2};
            const bool same_class = class_of[l] == class_of[m];
            const bool lattice_shift = (to_i64(l1) - to_i64(m1)) % to_i64(n1) == 0 &&
                                       (to_i64(l2) - to_i64(m2)) % to_i64(n1) == 0;
            if (same_class != lattice_shift) return false;
        }
    }
    return true;
}

} // namespace opschmidt
