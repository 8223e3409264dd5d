#pragma once
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mal/simplicial_complex.hpp"

namespace mal {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// complex files
//
// Text format: '#' comments, first payload line "m <int>", then one facet per
// line as space-separated labels. The canonical writer round-trips every
// canonical complex byte-identically.
//
// JSON format: {"schema": 1, "m": ..., "facets": [[...], ...]} with optional
// "name" and "metadata"; unknown fields are rejected.
// ---------------------------------------------------------------------------

struct ComplexFile {
    SimplicialComplex complex;
    std::string name;                 // optional
    nlohmann::ordered_json metadata;  // optional, JSON format only
};

inline std::string write_complex_text(const SimplicialComplex& K) {
    return K.canonical_text();
}

inline ComplexFile parse_complex_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int m = -1;
    std::vector<std::vector<int>> facets;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (m < 0) {
            if (tokens.size() != 2 || tokens[0] != "m")
                throw ParseError("line " + std::to_string(lineno) + ": expected 'm <count>'");
            try {
                m = std::stoi(tokens[1]);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad vertex count");
            }
            if (m < 0 || m > VertexSet::max_label)
                throw ParseError("line " + std::to_string(lineno) + ": vertex count out of range");
            continue;
        }
        std::vector<int> facet;
        for (const std::string& t : tokens) {
            try {
                facet.push_back(std::stoi(t));
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad vertex label '" + t +
                                 "'");
            }
        }
        facets.push_back(std::move(facet));
    }
    if (m < 0) throw ParseError("missing 'm <count>' header");
    ComplexFile out;
    try {
        out.complex = SimplicialComplex::from_facets(m, facets);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return out;
}

inline std::string write_complex_json(const SimplicialComplex& K, const std::string& name = "",
                                      const nlohmann::ordered_json& metadata = {}) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["m"] = K.vertex_count();
    auto fac = nlohmann::ordered_json::array();
    for (const Simplex& f : K.facets()) fac.push_back(f.labels());
    doc["facets"] = fac;
    if (!name.empty()) doc["name"] = name;
    if (!metadata.is_null() && !metadata.empty()) doc["metadata"] = metadata;
    return doc.dump(2) + "\n";
}

inline ComplexFile parse_complex_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");
    for (const auto& [key, value] : doc.items())
        if (key != "schema" && key != "m" && key != "facets" && key != "name" &&
            key != "metadata")
            throw ParseError("unknown field '" + key + "'");
    if (!doc.contains("schema") || doc["schema"] != 1)
        throw ParseError("missing or unsupported schema version");
    if (!doc.contains("m") || !doc.contains("facets"))
        throw ParseError("missing 'm' or 'facets'");
    ComplexFile out;
    try {
        int m = doc["m"].get<int>();
        std::vector<std::vector<int>> facets;
        for (const auto& f : doc["facets"]) facets.push_back(f.get<std::vector<int>>());
        out.complex = SimplicialComplex::from_facets(m, facets);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed complex: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (doc.contains("name")) out.name = doc["name"].get<std::string>();
    if (doc.contains("metadata")) out.metadata = doc["metadata"];
    return out;
}

// sniffs JSON vs text by the first non-space byte
inline ComplexFile parse_complex(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_complex_json(text) : parse_complex_text(text);
    }
    throw ParseError("empty input");
}

inline ComplexFile load_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_complex(buf.str());
}

// ---------------------------------------------------------------------------
// built-in corpus
// ---------------------------------------------------------------------------

namespace builtin {

inline SimplicialComplex polygon(int p) {
    if (p < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
    std::vector<std::vector<int>> f;
    for (int i = 1; i <= p; ++i) f.push_back({i, i % p + 1});
    return SimplicialComplex::from_facets(p, f);
}

inline SimplicialComplex cross_polytope(int n) {
    if (n < 1) throw std::invalid_argument("cross_polytope: need n >= 1");
    auto K = SimplicialComplex::from_facets(2, {{1}, {2}});
    for (int i = 1; i < n; ++i)
        K = join(K, SimplicialComplex::from_facets(2, {{1}, {2}}));
    return K;
}

// the 6-vertex stacked 2-sphere (tetrahedron with facets {1,2,3}, {1,2,4} cut)
inline SimplicialComplex stacked_six() {
    auto K = stellar_subdivide_facet(boundary_of_simplex(3), VertexSet::of({1, 2, 3}));
    return stellar_subdivide_facet(K, VertexSet::of({1, 2, 4}));
}

inline SimplicialComplex rp2_minimal() {
    return SimplicialComplex::from_facets(
        6, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
            {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}});
}

inline SimplicialComplex torus7() {
    std::vector<std::vector<int>> f;
    for (int i = 0; i < 7; ++i) {
        f.push_back({i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
        f.push_back({i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1});
    }
    return SimplicialComplex::from_facets(7, f);
}

// Barnette's 8-vertex non-polytopal 3-sphere (19 facets)
inline SimplicialComplex barnette() {
    return SimplicialComplex::from_facets(
        8, {{1, 2, 4, 5}, {2, 3, 5, 6}, {1, 3, 4, 6}, {1, 2, 3, 7}, {4, 5, 6, 7},
            {1, 2, 5, 7}, {2, 5, 6, 7}, {2, 3, 6, 7}, {3, 4, 6, 7}, {1, 3, 4, 7},
            {1, 4, 5, 7}, {1, 2, 3, 8}, {4, 5, 6, 8}, {1, 2, 4, 8}, {2, 4, 5, 8},
            {2, 3, 5, 8}, {3, 5, 6, 8}, {1, 3, 6, 8}, {1, 4, 6, 8}});
}

}  // namespace builtin

// Named builtin lookup; "simplex-boundary-<k>" is parsed by suffix.
inline std::optional<SimplicialComplex> builtin_complex(const std::string& name) {
    if (name == "octahedron") return builtin::cross_polytope(3);
    if (name == "stacked-6") return builtin::stacked_six();
    if (name == "c4-join-triangle") return join(builtin::polygon(4), boundary_of_simplex(2));
    if (name == "c5-join-triangle") return join(builtin::polygon(5), boundary_of_simplex(2));
    if (name == "rp2-minimal") return builtin::rp2_minimal();
    if (name == "torus-7") return builtin::torus7();
    if (name == "barnette") return builtin::barnette();
    const std::string prefix = "simplex-boundary-";
    if (name.rfind(prefix, 0) == 0) {
        try {
            int k = std::stoi(name.substr(prefix.size()));
            if (k >= 1 && k <= 16) return boundary_of_simplex(k);
        } catch (const std::exception&) {
        }
        return std::nullopt;
    }
    return std::nullopt;
}

inline std::vector<std::string> builtin_names() {
    return {"simplex-boundary-<k>", "octahedron", "stacked-6",  "c4-join-triangle",
            "c5-join-triangle",     "rp2-minimal", "torus-7",   "barnette"};
}

}  // namespace mal
