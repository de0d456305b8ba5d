#include "opschmidt/json_io.hpp"

#include <stdexcept>
#include <string>

namespace opschmidt {

namespace {

[[noreturn]] void bad_document(const std::string& what) {
    throw std::invalid_argument("json: " + what);
}

std::size_t get_positive_size(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_unsigned() || j.at(key).get<std::size_t>() == 0) {
        bad_document(std::string("\"") + key + "\" must be a positive integer");
    }
    return j.at(key).get<std::size_t>();
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        bad_document("complex entries must be [re, im] number pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

Json matrix_to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (const auto& z : m.data()) data.push_back(complex_to_json(z));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) bad_document("matrix document must be an object");
    const std::size_t rows = get_positive_size(j, "rows");
    const std::size_t cols = get_positive_size(j, "cols");
    if (!j.contains("data") || !j.at("data").is_array()) {
        bad_document("\"data\" must be an array of [re, im] pairs");
    }
    const auto& data = j.at("data");
    if (data.size() != rows * cols) {
        bad_document("\"data\" has " + std::to_string(data.size()) + " entries, expected " +
                     std::to_string(rows * cols));
    }
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const auto& e : data) entries.push_back(complex_from_json(e));
    return ComplexMatrix(rows, cols, std::move(entries));
}

Json decomposition_to_json(const SchmidtDecomposition& d) {
    Json terms = Json::array();
    for (const auto& t : d.terms) {
        terms.push_back(Json{{"lambda", t.lambda},
                             {"A", matrix_to_json(t.left)},
                             {"B", matrix_to_json(t.right)}});
    }
    return Json{{"dims", Json{{"n1", d.dims.n1()}, {"n2", d.dims.n2()}}},
                {"terms", std::move(terms)}};
}

SchmidtDecomposition decomposition_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("terms")) {
        bad_document("decomposition document must hold \"dims\" and \"terms\"");
    }
    const auto& jd = j.at("dims");
    BipartiteDims dims(get_positive_size(jd, "n1"), get_positive_size(jd, "n2"));
    if (!j.at("terms").is_array() || j.at("terms").empty()) {
        bad_document("\"terms\" must be a nonempty array");
    }
    std::vector<SchmidtTerm> terms;
    for (const auto& jt : j.at("terms")) {
        if (!jt.contains("lambda") || !jt.at("lambda").is_number()) {
            bad_document("every term needs a numeric \"lambda\"");
        }
        const double lambda = jt.at("lambda").get<double>();
        if (!(lambda > 0.0)) bad_document("term coefficients must be positive");
        ComplexMatrix a = matrix_from_json(jt.at("A"));
        ComplexMatrix b = matrix_from_json(jt.at("B"));
        if (a.rows() != dims.n1() || a.cols() != dims.n1() || b.rows() != dims.n2() ||
            b.cols() != dims.n2()) {
            bad_document("term factor shapes do not match the declared dims");
        }
        terms.push_back({lambda, std::move(a), std::move(b)});
    }
    return {dims, std::move(terms)};
}

Json classes_to_json(const BipartiteDims& dims, std::span<const EquivalenceClass> classes) {
    Json list = Json::array();
    for (const auto& c : classes) {
        Json members = Json::array();
        for (const auto& [l1, l2] : c.members) members.push_back(Json::array({l1, l2}));
        list.push_back(Json{{"rep", Json::array({c.rep.first, c.rep.second})},
                            {"members", std::move(members)}});
    }
    return Json{{"n1", dims.n1()}, {"n2", dims.n2()}, {"classes", std::move(list)}};
}

std::pair<BipartiteDims, std::vector<EquivalenceClass>> classes_from_json(
    const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("classes") || !j.at("classes").is_array()) {
        bad_document("class partition document must hold a \"classes\" array");
    }
    BipartiteDims dims(get_positive_size(j, "n1"), get_positive_size(j, "n2"));
    std::vector<EquivalenceClass> classes;
    for (const auto& jc : j.at("classes")) {
        EquivalenceClass c;
        if (!jc.contains("rep") || !jc.at("rep").is_array() || jc.at("rep").size() != 2) {
            bad_document("every class needs a two-element \"rep\"");
        }
        c.rep = {jc.at("rep")[0].get<std::size_t>(), jc.at("rep")[1].get<std::size_t>()};
        for (const auto& jm : jc.at("members")) {
            if (!jm.is_array() || jm.size() != 2) bad_document("members must be index pairs");
            c.members.push_back({jm[0].get<std::size_t>(), jm[1].get<std::size_t>()});
        }
        classes.push_back(std::move(c));
    }
    return {dims, std::move(classes)};
}

Json spectrum_to_json(const SpectrumTable& t) {
    Json entries = Json::array();
    for (const auto& e : t.entries) {
        entries.push_back(Json{{"coefficient", e.coefficient}, {"multiplicity", e.multiplicity}});
    }
    return Json{{"case", to_string(t.case_label)}, {"entries", std::move(entries)}};
}

Json strength_to_json(const StrengthReport& r) {
    Json j{{"schmidt_number", r.schmidt_number},
           {"hartley", r.hartley},
           {"schmidt_strength", r.schmidt_strength},
           {"q0_lower", r.q0_lower},
           {"q0_lower_original", r.q0_lower_original}};
    j["q0_upper"] = r.q0_upper.has_value() ? Json(*r.q0_upper) : Json(nullptr);
    return j;
}

Json verify_outcome_to_json(const VerifyOutcome& v, double tol) {
    return Json{{"n1", v.dims.n1()},
                {"n2", v.dims.n2()},
                {"case", v.case_label},
                {"max_coeff_deviation", v.max_coeff_deviation},
                {"max_reconstruction_error", v.max_reconstruction_error},
                {"max_rho_deviation", v.max_rho_deviation},
                {"schmidt_number_match", v.schmidt_number_match},
                {"multiplicities_match", v.multiplicities_match},
                {"chi_identity", v.chi_identity_ok},
                {"passed", v.passed(tol)}};
}

} // namespace opschmidt
