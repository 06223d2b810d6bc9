#include "tautchern/serialize.hpp"

#include <algorithm>
#include <stdexcept>

namespace tautchern {

Json bipartition_to_json(const Bipartition& b) {
    Json j;
    j["h"] = b.h;
    j["S"] = b.side;
    return j;
}

Bipartition bipartition_from_json(const Json& j) {
    Bipartition b;
    b.h = j.at("h").get<int>();
    for (const auto& s : j.at("S")) b.side.push_back(s.get<std::string>());
    std::sort(b.side.begin(), b.side.end());
    if (!b.contains(MarkedSpace::kAnchor))
        throw std::invalid_argument(
            "bipartition: S must contain the distinguished marking \"1\" (sets are normalized to "
            "the anchor side, never complemented)");
    return b;
}

Json divisor_to_json(const DivisorSpec& d) {
    Json j;
    j["g"] = d.space.genus;
    j["markings"] = d.space.markings;
    j["ell"] = d.ell;
    Json dd = Json::object();
    for (const auto& label : d.space.markings) dd[label] = d.d_of(label);
    j["d"] = dd;
    Json aa = Json::array();
    for (const auto& [part, value] : d.a) {
        Json entry = bipartition_to_json(part);
        entry["value"] = value;
        aa.push_back(entry);
    }
    j["a"] = aa;
    return j;
}

DivisorSpec divisor_from_json(const MarkedSpace& space, const Json& j) {
    long long ell = j.value("ell", 0ll);
    std::map<std::string, long long> d;
    if (j.contains("d"))
        for (const auto& [label, value] : j.at("d").items()) d[label] = value.get<long long>();
    std::map<Bipartition, long long> a;
    if (j.contains("a"))
        for (const auto& entry : j.at("a")) {
            Bipartition b = bipartition_from_json(entry);
            long long value = entry.at("value").get<long long>();
            if (value != 0) a[b] = value;
        }
    return DivisorSpec::make(space, ell, std::move(d), std::move(a));
}

Json phi_to_json(const OneNodePolarisation& phi) {
    Json j;
    j["d"] = phi.total_degree;
    Json list = Json::array();
    for (const auto& [part, value] : phi.phi) {
        Json entry = bipartition_to_json(part);
        entry["value"] = value.str();
        list.push_back(entry);
    }
    j["phi"] = list;
    return j;
}

OneNodePolarisation phi_from_json(const MarkedSpace& space, const Json& j) {
    OneNodePolarisation out;
    out.space = space;
    out.total_degree = j.at("d").get<long long>();
    for (const auto& entry : j.at("phi")) {
        Bipartition b = bipartition_from_json(entry);
        if (!bipartition_valid(space, b))
            throw std::invalid_argument("phi: invalid bipartition " + b.str());
        out.phi[b] = Rational::from_string(entry.at("value").get<std::string>());
    }
    return out;
}

Json graph_to_json(const MarkedSpace& space, const DecoratedGraph& g) {
    Json j;
    Json vertices = Json::array();
    for (const auto& v : g.vertices) {
        Json jv;
        jv["g"] = v.genus;
        Json legs = Json::array();
        for (int leg : v.legs) legs.push_back(space.markings[leg]);
        jv["legs"] = legs;
        jv["kappa"] = v.kappa;
        vertices.push_back(jv);
    }
    j["vertices"] = vertices;
    Json edges = Json::array();
    for (const auto& e : g.edges) {
        Json ends = Json::array();
        for (const auto& h : e.end) {
            Json he;
            he["v"] = h.vertex;
            he["psi"] = h.psi;
            ends.push_back(he);
        }
        edges.push_back(ends);
    }
    j["edges"] = edges;
    Json leg_psi = Json::object();
    for (std::size_t i = 0; i < g.leg_psi.size(); ++i)
        if (g.leg_psi[i] > 0) leg_psi[space.markings[i]] = g.leg_psi[i];
    j["legPsi"] = leg_psi;
    return j;
}

Json taut_class_to_json(const TautClass& c) {
    Json terms = Json::array();
    for (const auto& [key, term] : c.terms()) {
        Json jt;
        jt["graph"] = graph_to_json(c.space(), term.graph);
        jt["autOrder"] = term.aut_order;
        jt["coeff"] = term.coeff.str();
        jt["text"] = render_generator(c.space(), term.graph);
        terms.push_back(jt);
    }
    return terms;
}

Json graded_to_json(const std::map<int, TautClass>& by_degree) {
    Json out = Json::array();
    for (const auto& [degree, cls] : by_degree) {
        Json j;
        j["degree"] = degree;
        j["terms"] = taut_class_to_json(cls);
        out.push_back(j);
    }
    return out;
}

}  // namespace tautchern
