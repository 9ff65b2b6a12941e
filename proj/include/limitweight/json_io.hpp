#pragma once

// JSON wire formats for matrices.
//
// Plain matrix:  { "dim": k, "entries": [["p/q", ...], ...] }
// Eps matrix:    same shape, but each entry is an object mapping eps-degree
//                strings to fraction strings, e.g. { "-1": "1/2", "0": "1" }.
//
// Fractions are emitted reduced; unreduced input is accepted and normalized.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "laurent.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace limitweight {

inline nlohmann::json matrix_to_json(const Matrix<Rational>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return nlohmann::json{{"dim", m.dim()}, {"entries", rows}};
}

namespace detail {

inline void require_matrix_shape(const nlohmann::json& j, std::size_t& dim) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw FixtureError("bad matrix literal: expected { dim, entries }");
    if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer())
        throw FixtureError("bad matrix literal: dim must be an integer");
    long d = j["dim"].get<long>();
    if (d <= 0) throw FixtureError("bad matrix literal: dim must be positive");
    dim = static_cast<std::size_t>(d);
    if (!j["entries"].is_array() || j["entries"].size() != dim)
        throw FixtureError("bad matrix literal: entries must be a dim x dim array");
    for (const auto& row : j["entries"])
        if (!row.is_array() || row.size() != dim)
            throw FixtureError("bad matrix literal: entries must be a dim x dim array");
}

}  // namespace detail

inline Matrix<Rational> matrix_from_json(const nlohmann::json& j) {
    std::size_t dim = 0;
    detail::require_matrix_shape(j, dim);
    Matrix<Rational> m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const auto& cell = j["entries"][i][k];
            if (!cell.is_string()) throw FixtureError("bad matrix literal: entries must be fraction strings");
            m(i, k) = parse_rational(cell.get<std::string>());
        }
    return m;
}

inline nlohmann::json eps_matrix_to_json(const Matrix<LaurentSeries<Rational>>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            nlohmann::json cell = nlohmann::json::object();
            for (const auto& [d, v] : m(i, j).terms()) cell[std::to_string(d)] = to_string(v);
            row.push_back(cell);
        }
        rows.push_back(row);
    }
    return nlohmann::json{{"dim", m.dim()}, {"entries", rows}};
}

inline Matrix<LaurentSeries<Rational>> eps_matrix_from_json(const nlohmann::json& j) {
    std::size_t dim = 0;
    detail::require_matrix_shape(j, dim);
    Matrix<LaurentSeries<Rational>> m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const auto& cell = j["entries"][i][k];
            if (!cell.is_object())
                throw FixtureError("bad matrix literal: eps entries must map degrees to fractions");
            LaurentSeries<Rational> s;
            for (const auto& [deg, val] : cell.items()) {
                int d = 0;
                try {
                    d = std::stoi(deg);
                } catch (const std::exception&) {
                    throw FixtureError("bad matrix literal: eps degree \"" + deg + "\"");
                }
                if (!val.is_string())
                    throw FixtureError("bad matrix literal: eps entries must map degrees to fractions");
                s = s + LaurentSeries<Rational>::term(parse_rational(val.get<std::string>()), d);
            }
            m(i, k) = s;
        }
    return m;
}

// Witness rendering for symbolic matrices: entries become polynomial strings.
inline nlohmann::json poly_matrix_to_json(const Matrix<Polynomial>& m,
                                          const std::vector<std::string>& names = {}) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j).to_string(names));
        rows.push_back(row);
    }
    return nlohmann::json{{"dim", m.dim()}, {"entries", rows}};
}

}  // namespace limitweight
