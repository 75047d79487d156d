// json_io.hpp — JSON views of the serializable domain objects, used by the
// CLI trace and report outputs.
#pragma once

#include <json.hpp>

#include "coal/forests.hpp"
#include "coal/mosaic.hpp"
#include "coal/oracle.hpp"
#include "coal/stats.hpp"
#include "coal/surplus.hpp"
#include "coal/walks.hpp"

namespace coal::walks {

inline void to_json(nlohmann::json& out, const Excursion& e) {
    out = {{"start", e.start},       {"end", e.end},           {"length", e.length},
           {"first_rank", e.first_rank}, {"last_rank", e.last_rank}};
}

inline void to_json(nlohmann::json& out, const Interval& g) {
    out = {{"start", g.start}, {"end", g.end}};
}

inline void to_json(nlohmann::json& out, const ExcursionDecomposition& d) {
    out = {{"q", d.q}, {"excursions", d.excursions}, {"gaps", d.gaps}};
}

inline void to_json(nlohmann::json& out, const WalkPath& w) {
    nlohmann::json jumps = nlohmann::json::array();
    for (int l = 0; l < w.jump_count(); ++l) {
        jumps.push_back({{"s", w.jump_time(l)},
                         {"size", w.jump_size(l)},
                         {"z_before", w.value_before_jump(l)},
                         {"b_before", w.reflected_before_jump(l)}});
    }
    out = {{"q", w.q()}, {"jumps", jumps}, {"domain_end", w.domain_end()}};
}

inline void to_json(nlohmann::json& out, const MergeEvent& e) {
    out = {{"q_star", e.q_star},     {"left_root", e.left_root}, {"left_lo", e.left_lo},
           {"left_hi", e.left_hi},   {"right_lo", e.right_lo},   {"right_hi", e.right_hi},
           {"left_mass", e.left_mass}};
}

inline void to_json(nlohmann::json& out, const MergeSchedule& s) {
    out = {{"n", s.n}, {"events", s.events}};
}

} // namespace coal::walks

namespace coal::forests {

inline void to_json(nlohmann::json& out, const ForestEdge& e) {
    out = {{"child", e.child}, {"parent", e.parent}, {"q", e.arrival_q}};
}

inline void to_json(nlohmann::json& out, const ForestState& f) {
    out = {{"n", f.n}, {"edges", f.edges}};
}

} // namespace coal::forests

namespace coal::surplus {

inline const char* kind_name(SurplusKind kind) {
    switch (kind) {
    case SurplusKind::simple_surplus: return "surplus";
    case SurplusKind::multi_surplus: return "multi-surplus";
    case SurplusKind::self_loop: return "self-loop";
    }
    return "unknown";
}

inline void to_json(nlohmann::json& out, const SurplusEvent& e) {
    out = {{"q", e.q},   {"src", e.source}, {"dst", e.target},
           {"kind", kind_name(e.kind)}, {"j", e.j},        {"k", e.k}};
}

inline void to_json(nlohmann::json& out, const SurplusEventLog& log) {
    out = {{"events", log.events}};
}

} // namespace coal::surplus

namespace coal::mosaic {

inline void to_json(nlohmann::json& out, const RateIdentityReport& r) {
    out = {{"q", r.q},
           {"max_discrepancy", r.max_discrepancy},
           {"worst_process", r.worst_process},
           {"processes_checked", r.processes_checked}};
}

} // namespace coal::mosaic

namespace coal::oracle {

inline void to_json(nlohmann::json& out, const ExactLaw& law) {
    out = law.probabilities;
}

} // namespace coal::oracle

namespace coal::stats {

inline void to_json(nlohmann::json& out, const GofResult& r) {
    out = {{"statistic", r.statistic}, {"dof", r.dof}, {"p", r.p_value}};
}

inline void to_json(nlohmann::json& out, const KsResult& r) {
    out = {{"D", r.d}, {"p", r.p_approx}};
}

} // namespace coal::stats
