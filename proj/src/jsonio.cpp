#include "drinlab/jsonio.hpp"

#include <json.hpp>

namespace drinlab {

std::string torsion_record_json(const std::string& module_spec, const APoly& place,
                                const TorsionModule& tors, int splitting_deg) {
    nlohmann::ordered_json j;
    j["module"] = module_spec;
    j["ideal"] = to_symbolic(tors.a);
    j["place"] = to_symbolic(place);
    j["splitting_degree"] = splitting_deg;
    j["base_field_degree"] = tors.E->degree();
    j["fq_dim"] = tors.fq_dim;
    auto& factors = j["invariant_factors"] = nlohmann::ordered_json::array();
    for (const auto& f : tors.invariant_factors) factors.push_back(to_symbolic(f));
    auto& basis = j["basis_points"] = nlohmann::ordered_json::array();
    for (const auto& u : tors.module_basis) basis.push_back(tors.E->elem_text(u));
    return j.dump(2) + "\n";
}

std::string frob_record_json(const FrobMatrix& frob) {
    nlohmann::ordered_json j;
    j["module"] = frob.module_spec;
    j["P"] = to_symbolic(frob.P);
    j["place"] = to_symbolic(frob.ell);
    j["splitting_degree"] = frob.splitting_deg;
    j["base_field_degree"] = frob.field_degree;
    auto& rows = j["matrix"] = nlohmann::ordered_json::array();
    for (int i = 0; i < frob.mat.size(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (int k = 0; k < frob.mat.size(); ++k)
            row.push_back(to_symbolic(frob.mat.m.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["invertible"] = frob.mat.invertible;
    return j.dump(2) + "\n";
}

} // namespace drinlab
