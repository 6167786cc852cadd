#pragma once

#include <cmath>
#include <istream>
#include <string>

#include <json.hpp>

#include "valuedom/economy.hpp"

namespace valuedom {

namespace detail {

inline Matrix matrix_from_json(const nlohmann::json& j, std::size_t n, const char* name) {
    if (!j.is_array() || j.size() != n)
        fail(Errc::shape_mismatch, std::string(name) + " must be an array of " +
                                       std::to_string(n) + " rows");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j.at(i);
        if (!row.is_array() || row.size() != n)
            fail(Errc::shape_mismatch, std::string(name) + " row " + std::to_string(i + 1) +
                                           " must have " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) {
            if (!row.at(k).is_number())
                fail(Errc::shape_mismatch, std::string(name) + " has a non-numeric entry");
            const double v = row.at(k).get<double>();
            if (!std::isfinite(v))
                fail(Errc::domain_error, std::string(name) + " has a non-finite entry");
            m(i, k) = v;
        }
    }
    return m;
}

inline Vector vector_from_json(const nlohmann::json& j, std::size_t n, const char* name) {
    if (!j.is_array() || j.size() != n)
        fail(Errc::shape_mismatch,
             std::string(name) + " must be an array of length " + std::to_string(n));
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j.at(i).is_number())
            fail(Errc::shape_mismatch, std::string(name) + " has a non-numeric entry");
        v[i] = j.at(i).get<double>();
        if (!std::isfinite(v[i]))
            fail(Errc::domain_error, std::string(name) + " has a non-finite entry");
    }
    return v;
}

} // namespace detail

/**
 * @brief Parse an economy document.
 *
 * Expected schema (row-major matrices, all lengths equal to |sectors|):
 *   {"sectors": [...], "A": [[...]], "K": [[...]], "delta": [...],
 *    "labor": [...], "B": [[...]], "x": [...]}
 *
 * Malformed JSON raises ParseError; wrong shapes raise ShapeMismatch before
 * any numeric check; out-of-domain values raise DomainError.
 */
inline EconomySpec parse_economy(const nlohmann::json& doc) {
    if (!doc.is_object()) fail(Errc::shape_mismatch, "economy document must be a JSON object");
    for (const char* key : {"sectors", "A", "K", "delta", "labor", "B", "x"})
        if (!doc.contains(key))
            fail(Errc::shape_mismatch, std::string("missing field \"") + key + "\"");

    const auto& sectors = doc.at("sectors");
    if (!sectors.is_array() || sectors.empty())
        fail(Errc::shape_mismatch, "\"sectors\" must be a nonempty array of names");

    EconomySpec e;
    e.names.reserve(sectors.size());
    for (const auto& s : sectors) {
        if (!s.is_string()) fail(Errc::shape_mismatch, "sector names must be strings");
        e.names.push_back(s.get<std::string>());
    }
    const std::size_t n = e.names.size();
    e.a = detail::matrix_from_json(doc.at("A"), n, "A");
    e.k = detail::matrix_from_json(doc.at("K"), n, "K");
    e.b = detail::matrix_from_json(doc.at("B"), n, "B");
    e.delta = detail::vector_from_json(doc.at("delta"), n, "delta");
    e.labor = detail::vector_from_json(doc.at("labor"), n, "labor");
    e.x = detail::vector_from_json(doc.at("x"), n, "x");

    check_structure(e);
    return e;
}

inline EconomySpec load_economy(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        fail(Errc::parse_error, ex.what());
    }
    return parse_economy(doc);
}

inline EconomySpec load_economy(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        fail(Errc::parse_error, ex.what());
    }
    return parse_economy(doc);
}

} // namespace valuedom
