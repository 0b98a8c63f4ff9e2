#include "dtc/serialize.hpp"

namespace dtc {

namespace {

std::string big(const BigInt& v) { return v.str(); }

Json simplices(const std::vector<Simplex>& list) {
    Json out = Json::array();
    for (const auto& s : list) out.push_back(s);
    return out;
}

}  // namespace

Json to_json(const FiniteMeasure& mu) {
    Json atoms = Json::array();
    for (const auto& a : mu.atoms()) atoms.push_back({{"point", a.point}, {"weight", a.weight}});
    return {{"ambient", mu.ambient().tag()}, {"atoms", std::move(atoms)}};
}

FiniteMeasure measure_from_json(const Json& j) {
    const Ambient ambient = Ambient::from_tag(j.at("ambient").get<std::string>());
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at("point").get<Point>(), a.at("weight").get<double>()});
    return FiniteMeasure::normalize(std::move(atoms), ambient);
}

Json to_json(const SimplicialComplex& k) {
    return {{"vertices", k.vertices()}, {"facets", simplices(k.facets())}, {"f_vector", k.f_vector()}};
}

SimplicialComplex complex_from_json(const Json& j) {
    std::vector<Simplex> facets;
    for (const auto& f : j.at("facets")) facets.push_back(f.get<Simplex>());
    SimplicialComplex k = SimplicialComplex::from_facets(facets);
    if (j.contains("vertices"))
        for (int v : j.at("vertices").get<std::vector<int>>()) k.add_simplex({v});
    return k;
}

Json to_json(const MultiPath& m, int time_samples) {
    Json entries = Json::array();
    for (const auto& e : m.entries())
        entries.push_back({{"weight", e.weight},
                           {"start", e.path.u},
                           {"direction", e.path.v},
                           {"angle", e.path.angle}});
    Json samples = Json::array();
    for (int i = 0; i < time_samples; ++i) {
        const double t = time_samples == 1 ? 0.0 : static_cast<double>(i) / (time_samples - 1);
        samples.push_back({{"t", t}, {"measure", to_json(m.evaluate(t))}});
    }
    return {{"p", m.action().order()},
            {"n", m.action().complex_dim()},
            {"kind", m.kind() == MultiPathKind::OddSphere ? "sphere" : "line"},
            {"projected", m.projected()},
            {"total_weight", m.total_weight()},
            {"entries", std::move(entries)},
            {"samples", std::move(samples)}};
}

Json to_json(const VerificationReport& r) {
    Json continuity = Json::array();
    for (const auto& c : r.continuity)
        continuity.push_back({{"perturbation", c.perturbation}, {"pairs", c.pairs}, {"max_ratio", c.max_ratio}});
    Json probe = Json::array();
    for (const auto& q : r.degeneracy_probe) probe.push_back({{"offset", q.offset}, {"max_ratio", q.max_ratio}});
    return {{"p", r.p},
            {"n", r.n},
            {"samples", r.samples},
            {"seed", r.seed},
            {"margin", r.margin},
            {"support_bound", r.support_bound},
            {"max_endpoint_error", r.max_endpoint_error},
            {"max_mass_error", r.max_mass_error},
            {"max_support", r.max_support},
            {"max_independence_error", r.max_independence_error},
            {"max_equivariance_error", r.max_equivariance_error},
            {"continuity", std::move(continuity)},
            {"degeneracy_probe", std::move(probe)},
            {"passed", r.passed()}};
}

Json to_json(const std::vector<HomologyGroup>& h) {
    Json out = Json::array();
    for (std::size_t d = 0; d < h.size(); ++d) {
        Json torsion = Json::array();
        for (const auto& t : h[d].torsion) torsion.push_back(big(t));
        out.push_back({{"degree", d}, {"rank", h[d].rank}, {"torsion", std::move(torsion)}});
    }
    return out;
}

Json to_json(const FixedSet& f) {
    return {{"empty", f.empty},
            {"invariant_simplices", simplices(f.invariant_simplices)},
            {"fixed_vertices", f.fixed_vertices},
            {"subdivision", to_json(f.subdivision)}};
}

Json to_json(const CoincidenceCertificate& c) {
    Json out{{"empty", c.empty}};
    std::size_t feasible = 0;
    for (bool b : c.feasible) feasible += b ? 1 : 0;
    out["facets"] = c.feasible.size();
    out["facets_with_coincidence"] = feasible;
    if (c.witness)
        out["witness"] = {{"simplex", c.witness->simplex},
                          {"barycentric", c.witness->barycentric},
                          {"value", c.witness->value}};
    else
        out["witness"] = nullptr;
    return out;
}

Json to_json(const SearchResult& r) {
    Json restarts = Json::array();
    for (const auto& s : r.restarts) restarts.push_back({{"spread", s.spread}, {"certified", s.certified}});
    return {{"certified_restarts", r.certified_restarts},
            {"best_spread", r.best_spread},
            {"best", r.best.values},
            {"certified", r.certified ? Json(r.certified->values) : Json(nullptr)},
            {"restarts", std::move(restarts)}};
}

Json to_json(const SectionData& s) {
    Json fibers = Json::array();
    for (const auto& f : s.fibers) {
        Json points = Json::array();
        for (const auto& mp : f.fiber)
            points.push_back({{"carrier", mp.carrier}, {"barycentric", mp.barycentric}, {"coords", mp.coords}});
        fibers.push_back({{"points", std::move(points)}, {"weights", f.weights}});
    }
    Json edges = Json::array();
    for (const auto& e : s.edges) edges.push_back({e.a, e.ga, e.b, e.gb});
    return {{"group_order", s.group_order},
            {"mesh_level", s.mesh_level},
            {"fibers", std::move(fibers)},
            {"edges", std::move(edges)}};
}

SectionData section_from_json(const Json& j) {
    SectionData s;
    s.group_order = j.at("group_order").get<int>();
    s.mesh_level = j.at("mesh_level").get<int>();
    for (const auto& f : j.at("fibers")) {
        SectionFiber fiber;
        for (const auto& mp : f.at("points"))
            fiber.fiber.push_back({mp.at("carrier").get<Simplex>(), mp.at("barycentric").get<std::vector<double>>(),
                                   mp.at("coords").get<Point>()});
        fiber.weights = f.at("weights").get<std::vector<double>>();
        s.fibers.push_back(std::move(fiber));
    }
    for (const auto& e : j.at("edges"))
        s.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<int>(), e.at(2).get<std::size_t>(), e.at(3).get<int>()});
    return s;
}

Json to_json(const SectionCheck& c) {
    return {{"max_support", c.max_support},
            {"max_mass_error", c.max_mass_error},
            {"max_pushforward_error", c.max_pushforward_error},
            {"max_pushforward_support", c.max_pushforward_support},
            {"max_continuity_ratio", c.max_continuity_ratio},
            {"max_jump", c.max_jump}};
}

Json to_json(const FunctionFromSection& f) {
    return {{"anchor_points", f.anchor_points},
            {"min_fiber_spread", f.min_fiber_spread},
            {"mesh_coincidence_free", f.mesh_coincidence_free},
            {"interpolant", f.interpolant.values}};
}

Json to_json(const BoundsEntry& e) {
    return {{"space", e.space},
            {"invariant", e.invariant},
            {"lower", e.lower ? Json(*e.lower) : Json(nullptr)},
            {"upper", e.upper ? Json(*e.upper) : Json(nullptr)},
            {"status", to_string(e.status)},
            {"citation", e.citation},
            {"statement", citation_statement(e.citation)},
            {"note", e.note}};
}

}  // namespace dtc
