#pragma once

// Canonical JSON for every result type. Keys keep insertion order so output
// bytes are stable for fixed inputs.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobtoric/bundles.hpp"
#include "frobtoric/catalog.hpp"
#include "frobtoric/cech.hpp"
#include "frobtoric/cohomology.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/ext.hpp"
#include "frobtoric/fan.hpp"
#include "frobtoric/frobenius.hpp"

namespace frobtoric::report {

using Json = nlohmann::ordered_json;

inline Json classes(const ClassMultiset& m) {
    Json arr = Json::array();
    // descending lexicographic: O first, then more negative classes
    for (auto it = m.rbegin(); it != m.rend(); ++it) arr.push_back(Json{{"class", it->first.coords}, {"mult", it->second}});
    return arr;
}

inline Json fan(const Fan& f) {
    return Json{{"name", f.name()}, {"rays", f.rays()}, {"max_cones", f.max_cones()}};
}

/// Parse {"name"?, "rays", "max_cones"} and validate it.
inline Fan fan_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rays") || !j.contains("max_cones"))
        throw Error(ErrorCode::InvalidInput, "fan JSON needs \"rays\" and \"max_cones\"");
    try {
        auto rays = j.at("rays").get<std::vector<IntVec>>();
        auto cones = j.at("max_cones").get<std::vector<std::vector<int>>>();
        std::string name = j.contains("name") ? j.at("name").get<std::string>() : std::string{};
        return build_fan(std::move(rays), std::move(cones), std::move(name));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed fan JSON: ") + e.what());
    }
}

inline Json fan_summary(const Fan& f) {
    return Json{{"name", f.name()},           {"dim", f.dim()},          {"rays", f.num_rays()},
                {"max_cones", f.max_cones().size()}, {"pic_rank", f.pic_rank()}, {"fano", is_fano(f)}};
}

inline Json decomposition(const Fan& f, const Decomposition& d) {
    return Json{{"q", d.q}, {"summands", classes(d.entries)}, {"det", det_class(f, d).coords}, {"certified", d.certified}};
}

inline Json cohomology(const CohomologyVector& h) { return Json{{"dims", h.dims}}; }

inline Json ext(const ExtReport& r) {
    return Json{{"dims", r.dims}, {"vanishing_above_zero", r.vanishing_above_zero}};
}

inline Json tilting(const TiltingVerdict& v) {
    return Json{{"dims", v.ext.dims},
                {"strong_exceptional", v.strong_exceptional},
                {"contains_collection", v.contains_collection},
                {"quiver", v.quiver}};
}

inline Json catalog_summary(const CatalogSummary& s) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
        Json row{{"name", r.name}};
        if (r.verdict) {
            row["dims"] = r.verdict->ext.dims;
            row["strong_exceptional"] = r.verdict->strong_exceptional;
            row["contains_collection"] = r.verdict->contains_collection;
        } else {
            row["error"] = r.error;
        }
        rows.push_back(row);
    }
    return Json{{"entries", rows}, {"vanishing", s.vanishing}, {"failing", s.failing}, {"errors", s.errors}};
}

inline Json catalog_list(const std::vector<CatalogEntry>& entries) {
    Json arr = Json::array();
    for (const auto& e : entries) {
        Json j = fan_summary(e.fan);
        j["name"] = e.name;
        j["fano_threefold"] = e.fano_threefold;
        j["collection"] = Json::array();
        for (const auto& c : e.collection) j["collection"].push_back(c.coords);
        arr.push_back(j);
    }
    return arr;
}

inline Json blowup(std::int64_t p, const BlowupReport& r) {
    return Json{{"p", p},
                {"corank", r.corank},
                {"corank_oracle", corank_oracle(p)},
                {"det_discrepancy", r.det_discrepancy.coords},
                {"exceptional_multiple", r.exceptional_multiple},
                {"is_multiple", r.is_multiple},
                {"rank_ok", r.rank_ok}};
}

inline Json jets(const JetCheckReport& r) {
    Json j{{"q", r.q},
           {"p1", r.p1},
           {"p2", r.p2},
           {"multiplicities_match", r.multiplicities_match},
           {"dim_h0", r.dim_h0},
           {"dim_h0_summands", r.dim_h0_summands},
           {"jet_conditions", r.jet_conditions}};
    if (r.surjective_rank) {
        j["surjective_rank"] = *r.surjective_rank;
        j["rank_deficient"] = r.rank_deficient;
    }
    j["passed"] = r.passed;
    return j;
}

inline Json bundle_check(const BundleCheckResult& r) {
    return Json{{"predicted", classes(r.predicted)}, {"direct", classes(r.direct)}, {"passed", r.passed}};
}

inline Json cech_validation(const std::vector<CechValidation>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) {
        Json j{{"space", v.space}, {"checked", v.checked}, {"mismatches", v.mismatches}};
        if (v.first_mismatch) j["first_mismatch"] = *v.first_mismatch;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace frobtoric::report
