#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "etk/groups.hpp"
#include "etk/parallelism.hpp"
#include "etk/rational.hpp"
#include "etk/tensor.hpp"

namespace etk {

using Json = nlohmann::json;

inline constexpr const char* kCoordinateConvention = "row-major, last-fastest";

/// Integers that fit a JSON number are emitted as numbers; everything else as
/// an exact "p/q" string in lowest terms. Float numbers are never produced and
/// never accepted.
inline Json rational_to_json(const Rational& q) {
    if (is_integer(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(to_string(q));
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_float())
        throw std::invalid_argument("rational_from_json: floating-point numbers are not exact");
    throw std::invalid_argument("rational_from_json: expected an integer or a \"p/q\" string");
}

inline Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(rational_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument("matrix_from_json: expected an array of rows");
    RatMatrix m(j.size(), j[0].size());
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (!j[r].is_array() || j[r].size() != m.cols)
            throw std::invalid_argument("matrix_from_json: ragged rows");
        for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rational_from_json(j[r][c]);
    }
    return m;
}

inline Json spec_to_json(const TensorSpec& spec) {
    return Json{{"n", spec.n},
                {"valence", to_string(spec.valence)},
                {"skew12", spec.skew12},
                {"skew34", spec.skew34},
                {"bianchi", spec.bianchi}};
}

inline TensorSpec spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("valence"))
        throw std::invalid_argument("spec_from_json: expected {n, valence, ...}");
    return TensorSpec(j.at("n").get<std::size_t>(),
                      valence_from_string(j.at("valence").get<std::string>()),
                      j.value("skew12", false), j.value("skew34", false),
                      j.value("bianchi", false));
}

inline Json element_to_json(const TensorElement& t) {
    Json coords = Json::array();
    for (const auto& c : t.coords) coords.push_back(rational_to_json(c));
    return Json{{"spec", spec_to_json(t.spec)},
                {"coords", std::move(coords)},
                {"convention", kCoordinateConvention}};
}

inline TensorElement element_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("spec") || !j.contains("coords"))
        throw std::invalid_argument("element_from_json: expected {spec, coords}");
    if (j.contains("convention") && j.at("convention").get<std::string>() != kCoordinateConvention)
        throw std::invalid_argument("element_from_json: unknown coordinate convention");
    TensorSpec spec = spec_from_json(j.at("spec"));
    const Json& cj = j.at("coords");
    if (!cj.is_array()) throw std::invalid_argument("element_from_json: coords must be an array");
    std::vector<Rational> coords;
    coords.reserve(cj.size());
    for (const auto& c : cj) coords.push_back(rational_from_json(c));
    return TensorElement(spec, std::move(coords));
}

inline Json group_file_to_json(const GroupSpec& g) {
    Json algebra = Json::array();
    for (const auto& m : g.algebra) algebra.push_back(matrix_to_json(m));
    Json reps = Json::array();
    for (const auto& m : g.reps) reps.push_back(matrix_to_json(m));
    return Json{{"name", g.name},
                {"n", g.n},
                {"lie_algebra", std::move(algebra)},
                {"component_reps", std::move(reps)}};
}

inline GroupSpec group_from_file_json(const Json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("n"))
        throw std::invalid_argument("group_from_file_json: expected {name, n, lie_algebra, component_reps}");
    GroupSpec g;
    g.name = j.at("name").get<std::string>();
    g.family = "file";
    g.n = j.at("n").get<std::size_t>();
    if (j.contains("lie_algebra"))
        for (const auto& m : j.at("lie_algebra")) g.algebra.push_back(matrix_from_json(m));
    if (j.contains("component_reps"))
        for (const auto& m : j.at("component_reps")) g.reps.push_back(matrix_from_json(m));
    return g;
}

namespace detail {

/// Parses a 1-based three-digit coefficient key like "123".
inline std::array<std::size_t, 3> parse_ijk(const std::string& key, std::size_t n) {
    if (key.size() != 3) throw std::invalid_argument("model coefficients use three-digit keys like \"123\"");
    std::array<std::size_t, 3> out{};
    for (std::size_t t = 0; t < 3; ++t) {
        if (key[t] < '1' || key[t] > '9')
            throw std::invalid_argument("model coefficient key '" + key + "' has a non-digit index");
        out[t] = std::size_t(key[t] - '1');
        if (out[t] >= n)
            throw std::invalid_argument("model coefficient key '" + key + "' exceeds the dimension");
    }
    return out;
}

}  // namespace detail

/// Model input: sparse 1-based "ijk" keys; the skew partner of each lambda
/// entry is filled in automatically and checked for consistency if given.
inline ParallelismData parallelism_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n"))
        throw std::invalid_argument("parallelism_from_json: expected {n, lambda, gamma}");
    const std::size_t n = j.at("n").get<std::size_t>();
    if (n == 0 || n > 9)
        throw std::invalid_argument("parallelism_from_json: n must be between 1 and 9");
    std::vector<Rational> lambda(n * n * n), gamma(n * n * n);
    std::vector<bool> given(n * n * n, false);
    if (j.contains("lambda")) {
        for (const auto& [key, value] : j.at("lambda").items()) {
            auto [i, jj, k] = detail::parse_ijk(key, n);
            Rational v = rational_from_json(value);
            if (i == jj && v != 0)
                throw std::invalid_argument("lambda_" + key + " must vanish by skewness");
            lambda[(i * n + jj) * n + k] = v;
            given[(i * n + jj) * n + k] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = 0; jj < n; ++jj)
                for (std::size_t k = 0; k < n; ++k) {
                    const std::size_t f = (i * n + jj) * n + k;
                    const std::size_t mirror = (jj * n + i) * n + k;
                    if (!given[f]) continue;
                    if (given[mirror]) {
                        if (lambda[f] + lambda[mirror] != 0)
                            throw std::invalid_argument(
                                "parallelism_from_json: lambda entries are not skew-consistent");
                    } else {
                        lambda[mirror] = -lambda[f];
                    }
                }
    }
    if (j.contains("gamma")) {
        for (const auto& [key, value] : j.at("gamma").items()) {
            auto [i, jj, k] = detail::parse_ijk(key, n);
            gamma[(i * n + jj) * n + k] = rational_from_json(value);
        }
    }
    return ParallelismData(n, std::move(lambda), std::move(gamma));
}

}  // namespace etk
