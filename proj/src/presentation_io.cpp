#include "poisenv/presentation_io.hpp"

#include "poisenv/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace poisenv {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Polynomial parse_field(const json& value, const RingPtr& ring, const std::string& where) {
    if (!value.is_string()) throw DomainError(where + " must be an expression string");
    try {
        return parse_polynomial(value.get<std::string>(), ring);
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what(), e.position());
    }
}

}  // namespace

PoissonPresentation presentation_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw DomainError("presentation must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "vars" && it.key() != "relations" && it.key() != "bracket" && it.key() != "flags")
            throw DomainError("unknown presentation field '" + it.key() + "'");
    if (!doc.contains("vars") || !doc["vars"].is_array()) throw DomainError("presentation needs a \"vars\" array");
    std::vector<std::string> names;
    for (const auto& v : doc["vars"]) {
        if (!v.is_string()) throw DomainError("variable names must be strings");
        names.push_back(v.get<std::string>());
    }
    RingPtr ring = PolyRing::make(names);

    std::vector<Polynomial> rels;
    if (doc.contains("relations")) {
        if (!doc["relations"].is_array()) throw DomainError("\"relations\" must be an array");
        std::size_t k = 0;
        for (const auto& r : doc["relations"]) rels.push_back(parse_field(r, ring, "relation " + std::to_string(k++)));
    }

    BracketTable table(ring);
    if (doc.contains("bracket")) {
        if (!doc["bracket"].is_array()) throw DomainError("\"bracket\" must be an array");
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& entry : doc["bracket"]) {
            if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") || !entry.contains("value"))
                throw DomainError("bracket entries need \"i\", \"j\" and \"value\"");
            if (!entry["i"].is_string() || !entry["j"].is_string())
                throw DomainError("bracket entry indices must be variable names");
            auto i = ring->index_of(entry["i"].get<std::string>());
            auto j = ring->index_of(entry["j"].get<std::string>());
            if (!i || !j) throw DomainError("bracket entry names an unknown variable");
            std::string where = "bracket {" + names[*i] + ", " + names[*j] + "}";
            Polynomial value = parse_field(entry["value"], ring, where);
            if (*i == *j) {
                if (!value.is_zero()) throw DomainError(where + " must be zero");
                continue;
            }
            auto key = std::minmax(*i, *j);
            if (!seen.insert(key).second) throw DomainError(where + " is listed twice");
            table.set(*i, *j, value);
        }
    }

    PresentationFlags flags;
    if (doc.contains("flags")) {
        const json& f = doc["flags"];
        if (!f.is_object()) throw DomainError("\"flags\" must be an object");
        for (auto it = f.begin(); it != f.end(); ++it) {
            const std::string& key = it.key();
            const json& v = it.value();
            if (key == "prime_ideal" || key == "cohen_macaulay" || key == "poisson_simple") {
                if (!v.is_boolean()) throw DomainError("flag " + key + " must be a boolean");
                bool b = v.get<bool>();
                if (key == "prime_ideal") flags.prime_ideal = b;
                else if (key == "cohen_macaulay") flags.cohen_macaulay = b;
                else flags.poisson_simple = b;
            } else if (key == "serre_s_m") {
                if (v.is_null()) continue;
                if (!v.is_number_integer() || v.get<int>() < 0)
                    throw DomainError("flag serre_s_m must be a non-negative integer or null");
                flags.serre_s_m = v.get<int>();
            } else {
                throw DomainError("unknown flag '" + key + "'");
            }
        }
    }
    return PoissonPresentation(ring, std::move(rels), table, flags);
}

PoissonPresentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open presentation file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return presentation_from_json(buf.str());
}

std::string presentation_to_json(const PoissonPresentation& p) {
    ordered_json doc;
    doc["vars"] = p.vars();
    doc["relations"] = ordered_json::array();
    for (const auto& r : p.relations()) doc["relations"].push_back(r.to_string());
    doc["bracket"] = ordered_json::array();
    for (std::size_t i = 0; i < p.num_vars(); ++i)
        for (std::size_t j = i + 1; j < p.num_vars(); ++j) {
            Polynomial c = p.structure_constant(i, j);
            if (c.is_zero()) continue;
            ordered_json e;
            e["i"] = p.vars()[i];
            e["j"] = p.vars()[j];
            e["value"] = c.to_string();
            doc["bracket"].push_back(e);
        }
    ordered_json flags;
    flags["prime_ideal"] = p.flags().prime_ideal;
    flags["cohen_macaulay"] = p.flags().cohen_macaulay;
    flags["serre_s_m"] = p.flags().serre_s_m ? ordered_json(*p.flags().serre_s_m) : ordered_json(nullptr);
    if (p.flags().poisson_simple) flags["poisson_simple"] = true;
    doc["flags"] = flags;
    return doc.dump(2);
}

}  // namespace poisenv
