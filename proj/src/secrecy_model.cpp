#include "uavsec/secrecy_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavsec {

std::vector<SlotLink> make_links(const Trajectory& traj, const ScenarioConfig& cfg) {
    std::vector<SlotLink> links;
    links.reserve(traj.waypoints.size());
    for (const Vec2 w : traj.waypoints)
        links.push_back({channel_gain(w, cfg.bob_xy, cfg), channel_gain(w, cfg.eve_xy, cfg)});
    return links;
}

double sinr_bob(double p_a, double p_b, double alpha, double h_ab) {
    const double num = alpha * p_a * h_ab * (p_b * h_ab + 1.0);
    const double den = (p_b + (1.0 - alpha) * p_a) * h_ab + 1.0;
    return num / den;
}

double sinr_eve(double p_a, double alpha, double h_ae) {
    const double num = alpha * p_a * h_ae;
    const double den = (1.0 - alpha) * p_a * h_ae + 1.0;
    return num / den;
}

double slot_secrecy_rate(double p_a, double p_b, double alpha, const SlotLink& link) {
    const double gb = sinr_bob(p_a, p_b, alpha, link.h_ab);
    const double ge = sinr_eve(p_a, alpha, link.h_ae);
    const double diff = std::log2(1.0 + gb) - std::log2(1.0 + ge);
    return 0.5 * std::max(0.0, diff);
}

double average_secrecy_rate(const Trajectory& traj, const PowerAllocation& alloc,
                            const ScenarioConfig& cfg) {
    const auto n = traj.waypoints.size();
    if (alloc.p_a.size() != n || alloc.p_b.size() != n || alloc.alpha.size() != n)
        throw std::invalid_argument("allocation length does not match the trajectory");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const SlotLink link{channel_gain(traj.waypoints[i], cfg.bob_xy, cfg),
                            channel_gain(traj.waypoints[i], cfg.eve_xy, cfg)};
        sum += slot_secrecy_rate(alloc.p_a[i], alloc.p_b[i], alloc.alpha[i], link);
    }
    return sum / static_cast<double>(n);
}

} // namespace uavsec
