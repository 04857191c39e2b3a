#include "regsing/jsonio.hpp"

namespace regsing {

Json json_scalars(const std::vector<Scalar>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(to_string(s));
    return a;
}

Json json_mi(const MultiIndex& g) {
    Json a = Json::array();
    for (int e : g) a.push_back(e);
    return a;
}

Json json_polys(const std::vector<MPoly>& v, const std::string& stem) {
    Json a = Json::array();
    for (const auto& p : v) a.push_back(to_string(p, stem));
    return a;
}

Json json_sigma_matrix(const std::vector<std::vector<SigmaStarOp>>& s) {
    if (s.size() == 1 && s[0].size() == 1) return to_string(s[0][0]);
    Json rows = Json::array();
    for (const auto& row : s) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(to_string(e));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json json_solution(const LogSeriesSolution& u) {
    Json j;
    j["lambda"] = json_scalars(u.lambda);
    j["log_degree"] = u.log_degree;
    j["components"] = u.m;
    Json coeffs = Json::array();
    for (const auto& [key, vec] : u.coeffs) {
        for (int c = 0; c < u.m; ++c) {
            if (vec[c].is_zero()) continue;
            Json e;
            e["alpha"] = json_mi(key.first);
            e["kappa"] = json_mi(key.second);
            if (u.m > 1) e["component"] = c;
            e["value"] = to_string(vec[c], "x");
            coeffs.push_back(std::move(e));
        }
    }
    j["coefficients"] = std::move(coeffs);
    return j;
}

Json json_residual(const ResidualReport& r) {
    Json j;
    j["pass"] = r.pass();
    Json bad = Json::array();
    for (const auto& e : r.interior) {
        Json k;
        k["alpha"] = json_mi(e.alpha);
        k["kappa"] = json_mi(e.kappa);
        k["component"] = e.component;
        k["value"] = to_string(e.value, "x");
        bad.push_back(std::move(k));
    }
    j["interior"] = std::move(bad);
    j["boundary_terms"] = static_cast<int>(r.boundary.size());
    return j;
}

Json json_resonance(const ResonanceReport& r) {
    Json j;
    j["lambda"] = json_scalars(r.lambda);
    Json hits = Json::array();
    for (const auto& h : r.hits) {
        Json k;
        k["gamma"] = json_mi(h.gamma);
        k["z_vanishing_order"] = h.z_vanishing_order;
        k["identically_zero"] = h.identically_zero;
        hits.push_back(std::move(k));
    }
    j["hits"] = std::move(hits);
    j["search_bound"] = r.search_bound;
    j["certified_complete"] = r.certified_complete;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json json_module(const ModuleDimension& d) {
    Json j;
    j["dimension"] = d.dimension;
    Json freqs = Json::array();
    for (const auto& f : d.frequencies) {
        Json k;
        k["lambda"] = json_scalars(f.lambda);
        k["multiplicity"] = f.multiplicity;
        k["basis_degrees"] = f.basis_degrees;
        freqs.push_back(std::move(k));
    }
    j["frequencies"] = std::move(freqs);
    return j;
}

Json json_family(const SolutionFamily& f) {
    Json j;
    j["pole_profile"] = f.pole_profile;
    Json members = Json::array();
    for (const auto& u : f.members) members.push_back(json_scalars(u.lambda));
    j["member_exponents"] = std::move(members);
    Json combos = Json::array();
    for (const auto& c : f.combinations) {
        Json k;
        k["base"] = c.base;
        k["coeff"] = json_scalars(c.coeff);
        k["steps"] = c.steps;
        k["limit"] = json_solution(c.limit);
        combos.push_back(std::move(k));
    }
    j["combinations"] = std::move(combos);
    return j;
}

Json json_integrability(const IntegrabilityReport& r) {
    Json j;
    j["pairs"] = r.pairs;
    Json defects = Json::array();
    for (const auto& d : r.defects) {
        Json k;
        k["i"] = d.i;
        k["j"] = d.j;
        k["residual"] = to_string(d.residual);
        defects.push_back(std::move(k));
    }
    j["residuals"] = std::move(defects);
    j["pass"] = r.pass();
    return j;
}

Json json_split_directions(const SplitDirections& d) {
    Json j;
    Json dirs = Json::array();
    for (const auto& v : d.directions) {
        Json k;
        k["a"] = to_string(v.a);
        k["b"] = to_string(v.b);
        k["multiplicity"] = v.multiplicity;
        dirs.push_back(std::move(k));
    }
    j["directions"] = std::move(dirs);
    j["rotated"] = json_scalars(d.rotated);
    j["unresolved_degree"] = d.unresolved_degree;
    j["complete"] = d.complete();
    return j;
}

Json json_split_report(const SplitReport& r) {
    Json j;
    j["pass"] = r.pass;
    Json parts = Json::array();
    for (const auto& p : r.parts) {
        Json k;
        k["row"] = p.row;
        k["col"] = p.col;
        k["direction"] = p.direction;
        k["power"] = p.power;
        k["coeffs"] = json_scalars(p.coeffs);
        parts.push_back(std::move(k));
    }
    j["parts"] = std::move(parts);
    Json obs = Json::array();
    for (const auto& o : r.obstructions) {
        Json k;
        k["row"] = o.row;
        k["col"] = o.col;
        k["degree"] = o.degree;
        k["functional"] = json_scalars(o.functional);
        k["pairing"] = to_string(o.pairing);
        obs.push_back(std::move(k));
    }
    j["obstructions"] = std::move(obs);
    return j;
}

std::string dump_json(const Json& j, bool compact) {
    return (compact ? j.dump() : j.dump(2)) + "\n";
}

}  // namespace regsing
