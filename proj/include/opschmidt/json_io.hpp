#pragma once

#include "opschmidt/matrix.hpp"
#include "opschmidt/qft.hpp"
#include "opschmidt/schmidt.hpp"
#include "opschmidt/strength.hpp"
#include "opschmidt/verify.hpp"

#include <json.hpp>

#include <span>
#include <utility>
#include <vector>

namespace opschmidt {

// Key order is part of the output contract, hence ordered_json everywhere.
using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} with row-major data.
Json matrix_to_json(const ComplexMatrix& m);

/// Parses the matrix schema; malformed documents raise std::invalid_argument.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// {"dims": {"n1": ..., "n2": ...}, "terms": [{"lambda": ..., "A": ..., "B": ...}, ...]}
Json decomposition_to_json(const SchmidtDecomposition& d);
SchmidtDecomposition decomposition_from_json(const nlohmann::json& j);

/// {"n1": ..., "n2": ..., "classes": [{"rep": [c1, c2], "members": [[l1, l2], ...]}, ...]}
Json classes_to_json(const BipartiteDims& dims, std::span<const EquivalenceClass> classes);
std::pair<BipartiteDims, std::vector<EquivalenceClass>> classes_from_json(const nlohmann::json& j);

/// {"case": ..., "entries": [{"coefficient": ..., "multiplicity": ...}, ...]}
Json spectrum_to_json(const SpectrumTable& t);

/// {"schmidt_number": ..., "hartley": ..., "schmidt_strength": ...,
///  "q0_lower": ..., "q0_lower_original": ..., "q0_upper": real|null}
Json strength_to_json(const StrengthReport& r);

Json verify_outcome_to_json(const VerifyOutcome& v, double tol);

} // namespace opschmidt
