#ifndef MOLY_JSON_IO_HPP
#define MOLY_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "bridge.hpp"
#include "diagram.hpp"
#include "localcoh.hpp"
#include "monomial.hpp"

namespace moly {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Parsing (schema errors throw std::invalid_argument with a field name).
// ---------------------------------------------------------------------------

inline SqfIdeal parse_ideal(const Json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("ideal: missing integer field 'n'");
    if (!j.contains("gens") || !j["gens"].is_array())
        throw std::invalid_argument("ideal: missing array field 'gens'");
    const int n = j["n"].get<int>();
    std::vector<std::vector<int>> supports;
    for (const auto& g : j["gens"]) {
        if (!g.is_array()) throw std::invalid_argument("ideal: generator must be an index array");
        supports.push_back(g.get<std::vector<int>>());
    }
    return SqfIdeal::from_supports(n, supports);
}

inline SqfIdeal parse_ideal_field(const Json& j, const std::string& field, int n) {
    if (!j.contains(field) || !j[field].is_array())
        throw std::invalid_argument("missing ideal array field '" + field + "'");
    std::vector<std::vector<int>> supports;
    for (const auto& g : j[field]) supports.push_back(g.get<std::vector<int>>());
    return SqfIdeal::from_supports(n, supports);
}

inline RatMatrix parse_matrix(const Json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument("matrix: wrong row count");
    RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            throw std::invalid_argument("matrix: wrong column count");
        for (int c = 0; c < cols; ++c)
            m.at(r, c) = rat_from_string(j[r][c].get<std::string>());
    }
    return m;
}

inline Representation parse_representation(const Json& j) {
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::invalid_argument("diagram: missing array field 'vertices'");
    std::vector<std::string> names;
    std::map<std::string, int> dims;
    for (const auto& v : j["vertices"]) {
        const std::string id = v.at("id").get<std::string>();
        names.push_back(id);
        dims[id] = v.at("dim").get<int>();
        if (dims[id] < 0) throw std::invalid_argument("diagram: negative vertex dimension");
    }
    std::vector<Diagram::Edge> edges;
    std::vector<Json> edge_payloads;
    if (j.contains("edges"))
        for (const auto& e : j["edges"]) {
            edges.push_back({e.at("id").get<std::string>(), e.at("src").get<std::string>(),
                             e.at("dst").get<std::string>()});
            edge_payloads.push_back(e.at("matrix"));
        }
    Diagram d(names, edges);
    std::vector<int> vdim;
    for (const auto& name : d.vertices()) vdim.push_back(dims.at(name));
    // Edge matrices follow the diagram's sorted edge order.
    std::vector<RatMatrix> emat(d.edges().size());
    for (size_t raw = 0; raw < edges.size(); ++raw) {
        const auto& id = edges[raw].id;
        for (size_t pos = 0; pos < d.edges().size(); ++pos)
            if (d.edges()[pos].id == id) {
                const int r = dims.at(edges[raw].dst), c = dims.at(edges[raw].src);
                emat[pos] = parse_matrix(edge_payloads[raw], r, c);
            }
    }
    Representation rep{std::move(d), std::move(vdim), std::move(emat)};
    rep.validate();
    return rep;
}

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

inline Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(rat_to_string(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json ideal_to_json(const SqfIdeal& i) {
    Json gens = Json::array();
    for (Mask g : i.gens()) {
        Json sup = Json::array();
        for (int v = 0; v < i.n(); ++v)
            if (g & (Mask(1) << v)) sup.push_back(v + 1);
        gens.push_back(std::move(sup));
    }
    return Json{{"n", i.n()}, {"gens", std::move(gens)}};
}

/// Straight-module component report keyed by bitmask strings; the leftmost
/// character is x₁.  Zero components are omitted.
inline Json straight_dims_json(const StraightModule& m) {
    Json out = Json::object();
    for (Mask s = 0; s < (Mask(1) << m.n); ++s)
        if (m.comp[s] != 0) out[mask_to_bits(s, m.n)] = m.comp[s];
    return out;
}

inline Json dims_vector_json(const std::vector<int>& dims, int n) {
    Json out = Json::object();
    for (Mask s = 0; s < static_cast<Mask>(dims.size()); ++s)
        if (dims[s] != 0) out[mask_to_bits(s, n)] = dims[s];
    return out;
}

inline Json lyubeznik_json(const LyubeznikTable& t) {
    Json rows = Json::array();
    for (const auto& row : t.lambda) rows.push_back(row);
    return Json{{"d", t.d}, {"lambda", std::move(rows)}};
}

inline std::string lyubeznik_tsv(const LyubeznikTable& t) {
    std::string out = "d\t" + std::to_string(t.d) + "\n";
    for (const auto& row : t.lambda) {
        for (size_t i = 0; i < row.size(); ++i) {
            out += std::to_string(row[i]);
            out += (i + 1 < row.size()) ? '\t' : '\n';
        }
    }
    return out;
}

inline Json motive_json(const MotiveEntry& e) {
    return Json{{"r", e.r},
                {"i", e.idx},
                {"lambda", e.lambda},
                {"motivic_length", e.motivic_length},
                {"certified", e.certified}};
}

inline Json algebra_to_json(const FDAlgebra& a) {
    Json basis = Json::array();
    for (const auto& tuple : a.basis()) {
        Json slots = Json::array();
        for (const auto& m : tuple) slots.push_back(matrix_to_json(m));
        basis.push_back(std::move(slots));
    }
    Json ambient = Json::array();
    for (int d : a.ambient()) ambient.push_back(d);
    return Json{{"dim", a.dim()}, {"ambient", std::move(ambient)}, {"basis", std::move(basis)}};
}

} // namespace moly

#endif
