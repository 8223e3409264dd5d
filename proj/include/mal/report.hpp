#pragma once
#include <cstdio>
#include <string>

#include <json.hpp>

#include "mal/bigraded.hpp"
#include "mal/classify.hpp"
#include "mal/version.hpp"

namespace mal {

// JSON report documents. Field order is fixed (ordered_json + sorted tables)
// so identical inputs and flags produce byte-identical reports; timing is the
// only nondeterministic field and is omitted under --no-timing.
namespace report {

using Json = nlohmann::ordered_json;

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline Json header(const std::string& command, const SimplicialComplex& K,
                   const std::string& input_name) {
    Json doc;
    doc["schema"] = kReportSchema;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    doc["command"] = command;
    Json in;
    if (!input_name.empty()) in["name"] = input_name;
    in["m"] = K.vertex_count();
    in["dim"] = K.dim();
    in["facets"] = K.facets().size();
    in["hash"] = hex64(K.hash());
    doc["input"] = in;
    return doc;
}

inline Json betti_json(const std::map<int, long>& betti) {
    Json out;
    for (const auto& [deg, rank] : betti) out[std::to_string(deg)] = rank;
    return out;
}

inline Json torsion_json(const std::map<int, std::vector<Int>>& torsion) {
    Json out;
    for (const auto& [deg, factors] : torsion) {
        Json arr = Json::array();
        for (const Int& d : factors) arr.push_back(d.str());
        out[std::to_string(deg)] = arr;
    }
    return out;
}

inline Json bigraded_json(const BigradedTable& t) {
    Json arr = Json::array();
    for (const auto& [l, J] : t.nonzero_entries()) {
        Json e;
        e["l"] = l;
        e["J"] = J.labels();
        const GroupSummary g = t.entry(l, J);
        e["rank"] = g.rank;
        Json tor = Json::array();
        for (const Int& d : g.torsion) tor.push_back(d.str());
        e["torsion"] = tor;
        e["degree"] = l + J.size() + 1;
        arr.push_back(e);
    }
    return arr;
}

inline Json certificate_json(const SphereCertificate& c) {
    Json out;
    out["dim"] = c.dim;
    out["verdict"] = c.verdict == SphereVerdict::Certified          ? "Certified"
                     : c.verdict == SphereVerdict::CertifiedHomology ? "CertifiedHomology"
                                                                     : "Failed";
    out["pure"] = c.pure;
    out["pseudomanifold"] = c.pseudomanifold;
    out["strongly_connected"] = c.strongly_connected;
    out["links_ok"] = c.links_ok;
    out["homology_ok"] = c.homology_ok;
    if (!c.reason.empty()) out["reason"] = c.reason;
    return out;
}

inline Json chordality_json(const ChordalityResult& c) {
    Json out;
    out["chordal"] = c.chordal;
    if (c.order) out["elimination_order"] = c.order->order;
    if (c.witness) out["chordless_cycle"] = *c.witness;
    return out;
}

inline Json missing_edges_json(const MissingEdgeReport& r) {
    Json out;
    Json edges = Json::array();
    for (const auto& e : r.missing_edges) edges.push_back(e.labels());
    out["missing_edges"] = edges;
    out["count"] = r.missing_edges.size();
    out["pairwise_disjoint"] = r.pairwise_disjoint;
    out["all_pairs_chordless_4cycles"] = r.all_pairs_chordless_4cycles;
    out["join_condition"] = r.join_condition;
    return out;
}

inline Json decomposition_json(const SphereDecomposition& d) {
    Json out;
    out["total_dim"] = d.total;
    Json arr = Json::array();
    for (const auto& [dims, count] : d.summands) {
        Json s;
        s["spheres"] = dims;
        s["count"] = count;
        arr.push_back(s);
    }
    out["summands"] = arr;
    out["display"] = d.to_string();
    return out;
}

inline Json presentation_json(const RingPresentation& p) {
    Json out;
    out["total_degree"] = p.total_degree;
    Json arr = Json::array();
    for (const auto& s : p.summands) arr.push_back(s);
    out["summands"] = arr;
    out["graded_ranks"] = betti_json(p.graded_ranks());
    return out;
}

inline Json verification_json(const VerificationReport& v) {
    Json out;
    out["rank_match"] = v.rank_match;
    out["torsion_free"] = v.torsion_free;
    out["pairings_unimodular"] = v.pairings_unimodular;
    out["zero_products_ok"] = v.zero_products_ok;
    out["special_products_ok"] = v.special_products_ok;
    out["pass"] = v.pass();
    if (!v.notes.empty()) out["notes"] = v.notes;
    return out;
}

inline Json classification_json(const ClassificationReport& r) {
    Json out;
    out["case"] = to_string(r.case_label);
    out["verified"] = r.verified();
    out["certificate"] = certificate_json(r.certificate);
    out["chordality"] = chordality_json(r.chordality);
    out["missing_edges"] = missing_edges_json(r.missing_edges);
    if (r.decomposition) out["decomposition"] = decomposition_json(*r.decomposition);
    if (r.presentation) out["presentation"] = presentation_json(*r.presentation);
    if (r.verification) out["verification"] = verification_json(*r.verification);
    if (r.dual_stacked_sequence) out["dual_stacked_deletions"] = *r.dual_stacked_sequence;
    if (r.weak_min_non_golod_flag) out["weak_min_non_golod"] = *r.weak_min_non_golod_flag;
    if (!r.notes.empty()) out["notes"] = r.notes;
    return out;
}

}  // namespace report
}  // namespace mal
