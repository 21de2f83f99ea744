#ifndef GENTREE_JSON_IO_HPP
#define GENTREE_JSON_IO_HPP

#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "gentree/patstats.hpp"
#include "gentree/walk.hpp"

namespace gentree {

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits round-trips doubles exactly and keeps output stable.
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hash_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
    return buf;
}

inline nlohmann::json meta_block(const std::string& canonical_config, const nlohmann::json& cfg) {
    return {{"tool", "gentree"},
            {"version", kToolVersion},
            {"config_hash", hash_hex(canonical_config)},
            {"config", cfg}};
}

// WalkParams serialization; masses truncated at cumulative tail < 1e-12 with
// the truncation recorded.
inline nlohmann::json to_json(const WalkParams& W) {
    nlohmann::json alpha = nlohmann::json::array();
    nlohmann::json colors = nlohmann::json::array();
    double cum = 0;
    int last_y = 1;
    for (std::size_t i = 0; i < W.mass.size(); ++i) {
        int y = W.y_of_index(i);
        if (W.mass[i] > 0) {
            alpha.push_back({y, W.mass[i]});
            colors.push_back({y, W.color_count(y)});
            cum += W.mass[i];
            last_y = y;
        }
        if (1.0 - cum < 1e-12) break;
    }
    return {{"family", W.spec().name},
            {"beta", W.beta},
            {"t", W.t},
            {"p", W.p},
            {"q", W.q},
            {"alpha", alpha},
            {"colors", colors},
            {"variance", W.variance},
            {"span", W.span},
            {"truncation", {{"min_y", last_y}, {"tail_bound", 1e-12}}}};
}

inline nlohmann::json to_json(const Interval& iv) {
    return {{"lo", iv.lo}, {"hi", iv.hi}};
}

inline nlohmann::json to_json(const PatternStats& st, const std::string& family_name) {
    return {{"family", family_name},
            {"pi", st.pi.str()},
            {"truncation_depth", st.M},
            {"mu", to_json(st.mu)},
            {"sigma2_step", st.sigma2_step},
            {"rho", to_json(st.rho)},
            {"nu", to_json(st.nu)},
            {"beta2", to_json(st.beta2)},
            {"gamma2", to_json(st.gamma2)},
            {"method", st.method},
            {"truncation_bound", st.truncation_bound}};
}

inline nlohmann::json to_json(const CltReport& r) {
    return {{"mu_hat", r.mu_hat},
            {"gamma2_hat", r.gamma2_hat},
            {"reps", r.values.size()},
            {"sample_mean", r.sample_mean},
            {"sample_variance", r.sample_variance},
            {"ks_distance", r.ks_distance},
            {"se_mean_bootstrap", r.se_mean_boot},
            {"se_variance_bootstrap", r.se_variance_boot}};
}

} // namespace gentree

#endif
