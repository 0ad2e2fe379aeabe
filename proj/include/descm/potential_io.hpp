#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "descm/errors.hpp"
#include "descm/laurent_potential.hpp"

namespace descm {

/// Potential document: {"terms": [[exponent, coefficient], ...]} in any order.
inline LaurentPotential potential_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("potential document must be an object with a \"terms\" array");
    std::vector<Term> terms;
    for (const auto& entry : doc["terms"]) {
        if (!entry.is_array() || entry.size() != 2)
            throw ParseError("each term must be a two-element array [exponent, coefficient]");
        if (!entry[0].is_number_integer())
            throw ParseError("term exponent must be an integer, got " + entry[0].dump());
        if (!entry[1].is_number())
            throw ParseError("term coefficient must be a number, got " + entry[1].dump());
        const auto e = entry[0].get<long long>();
        if (e < -100000 || e > 100000) throw ParseError("term exponent out of range: " + entry[0].dump());
        terms.push_back({static_cast<int>(e), entry[1].get<double>()});
    }
    return LaurentPotential::validate(std::move(terms));
}

inline nlohmann::json potential_to_json(const LaurentPotential& pot) {
    auto terms = nlohmann::json::array();
    for (const auto& t : pot.terms()) terms.push_back({t.exponent, t.coefficient});
    return nlohmann::json{{"terms", std::move(terms)}};
}

inline LaurentPotential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open potential file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    return potential_from_json(doc);
}

inline std::string dump_potential(const LaurentPotential& pot) {
    return potential_to_json(pot).dump(2) + "\n";
}

}  // namespace descm
