// JSON shapes for the CLI and report outputs (nlohmann/json).

#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "elastica/conjugate.hpp"
#include "elastica/elastica_arc.hpp"
#include "elastica/oracle.hpp"
#include "elastica/strata.hpp"

namespace elastica {

inline nlohmann::ordered_json covector_json(const Covector& lam) {
    return nlohmann::ordered_json{
        {"stratum", to_string(lam.stratum)},
        {"k", lam.k},
        {"phase", lam.phase},
        {"r", lam.r},
    };
}

/// {stratum, k, phase, r, t1conj|null, bracket, rule, morse_index?}
inline nlohmann::ordered_json conjugate_result_json(const Covector& lam,
                                                    const ConjugateResult& res,
                                                    std::optional<int> morse = std::nullopt) {
    nlohmann::ordered_json j = covector_json(lam);
    if (res.first_time)
        j["t1conj"] = *res.first_time;
    else
        j["t1conj"] = nullptr;
    if (res.bracket)
        j["bracket"] = {(*res.bracket)[0], (*res.bracket)[1]};
    else
        j["bracket"] = nullptr;
    j["rule"] = to_string(res.rule);
    if (res.tangential_warning) j["tangential_warning"] = true;
    if (res.count_up_to)
        j["count_up_to"] = {{"horizon", res.count_up_to->first},
                            {"count", res.count_up_to->second}};
    if (morse) j["morse_index"] = *morse;
    return j;
}

inline nlohmann::ordered_json crosscheck_report_json(const CrosscheckReport& rep,
                                                     double tolerance) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const CrosscheckPair& p : rep.pairs) {
        nlohmann::ordered_json jp;
        jp["t_closed_form"] = p.t_closed_form ? nlohmann::ordered_json(*p.t_closed_form)
                                              : nlohmann::ordered_json(nullptr);
        jp["t_determinant"] = p.t_determinant ? nlohmann::ordered_json(*p.t_determinant)
                                              : nlohmann::ordered_json(nullptr);
        if (p.t_closed_form && p.t_determinant) jp["mismatch"] = p.mismatch();
        pairs.push_back(jp);
    }
    nlohmann::ordered_json j = covector_json(rep.lam);
    j["t_max"] = rep.t_max;
    j["pairs"] = pairs;
    j["unpaired"] = rep.unpaired;
    j["max_mismatch"] = rep.max_mismatch;
    j["tolerance"] = tolerance;
    j["clean"] = rep.clean(tolerance);
    return j;
}

inline nlohmann::ordered_json verdict_json(const Covector& lam, double t,
                                           const StabilityVerdict& v,
                                           const InflectionCount& infl) {
    nlohmann::ordered_json j = covector_json(lam);
    j["t"] = t;
    j["status"] = to_string(v.status);
    j["rule"] = to_string(v.rule);
    if (v.certificate)
        j["certificate"] = *v.certificate;
    else
        j["certificate"] = nullptr;
    j["inflections_interior"] = infl.interior;
    j["inflections_boundary"] = infl.boundary;
    return j;
}

} // namespace elastica
