#include "uavsec/trajectory_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavsec {

namespace {
constexpr double kDomainGuard = 1e-6; // minimum of (c3 + v)/c3 during line search
constexpr int kMaxInnerIters = 10000;
constexpr int kMaxBacktracks = 48;
constexpr int kMaxDualIters = 60;
} // namespace

P5Coeffs p5_coefficients(double alpha, double p_a, double p_b,
                         const ScenarioConfig& cfg) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("alpha outside [0,1]");
    const double clamp = cfg.solver.alpha_clamp;
    const double al = std::clamp(alpha, clamp, 1.0 - clamp);
    P5Coeffs c;
    if (!(al * p_a > 0.0)) {
        c.degenerate = true;
        return c;
    }
    const double mix = p_b + p_a * (1.0 - al);
    c.c0 = al * p_a / mix;
    c.c1 = al * p_a * p_b * cfg.gamma0 / mix;
    c.c2 = al * p_a * cfg.gamma0;
    c.c3 = (1.0 - al) * p_a * cfg.gamma0;
    return c;
}

double bob_term_linear_coeff(double s_prev, double c0, double c1) {
    return -c1 / (s_prev * (c0 * s_prev + c1));
}

AffineForm2 eve_distance_linearization(Vec2 w_prev, Vec2 eve_xy,
                                       const ScenarioConfig& cfg) {
    AffineForm2 f;
    f.grad = 2.0 * (w_prev - eve_xy);
    f.offset = -norm_sq(w_prev) + norm_sq(eve_xy) + cfg.altitude_m * cfg.altitude_m;
    return f;
}

std::vector<TrajSlotCoeffs> make_traj_coeffs(const ScenarioConfig& cfg,
                                             const Trajectory& prev,
                                             std::span<const double> alpha,
                                             std::span<const double> p_a,
                                             std::span<const double> p_b) {
    const auto n = prev.waypoints.size();
    if (alpha.size() != n || p_a.size() != n || p_b.size() != n)
        throw std::invalid_argument("allocation length does not match the trajectory");
    const double h2 = cfg.altitude_m * cfg.altitude_m;
    std::vector<TrajSlotCoeffs> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) {
        TrajSlotCoeffs& k = coeffs[i];
        k.bob_xy = cfg.bob_xy;
        k.h_sq = h2;
        const P5Coeffs p5 = p5_coefficients(alpha[i], p_a[i], p_b[i], cfg);
        k.c0 = p5.c0;
        k.c1 = p5.c1;
        k.c2 = p5.c2;
        k.c3 = p5.c3;
        k.degenerate = p5.degenerate;
        if (k.degenerate) continue;
        const double s_prev = distance_sq(prev.waypoints[i], cfg.bob_xy) + h2;
        k.eve_lin = eve_distance_linearization(prev.waypoints[i], cfg.eve_xy, cfg);
        if (k.c1 > 0.0) {
            k.b_lin = bob_term_linear_coeff(s_prev, k.c0, k.c1);
            k.offset = std::log(k.c0 + k.c1 / s_prev) - k.b_lin * s_prev;
        } else {
            // Without receiver AN the distance-dropped approximation loses the
            // whole receiver term (it becomes the constant ln c0). The exact
            // term is ln(1 + c2/(c3 + s)), convex in s, so bound it directly.
            k.b_lin = -k.c2 / ((k.c3 + s_prev) * (k.c3 + k.c2 + s_prev));
            k.offset = std::log1p(k.c2 / (k.c3 + s_prev)) - k.b_lin * s_prev;
        }
    }
    return coeffs;
}

std::optional<double> surrogate_objective(const Trajectory& traj,
                                          std::span<const TrajSlotCoeffs> coeffs) {
    if (traj.waypoints.size() != coeffs.size())
        throw std::invalid_argument("coefficient length does not match the trajectory");
    double sum = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const TrajSlotCoeffs& k = coeffs[i];
        if (k.degenerate) continue;
        const Vec2 w = traj.waypoints[i];
        const double v = k.eve_lin(w);
        if (k.c3 + v <= kDomainGuard * k.c3) return std::nullopt;
        const double s = distance_sq(w, k.bob_xy) + k.h_sq;
        sum += k.b_lin * s - std::log1p(k.c2 / (k.c3 + v));
    }
    return sum;
}

namespace {

// Gradient of the surrogate in one waypoint; the terminal slot is pinned and
// contributes nothing.
Vec2 slot_gradient(Vec2 w, const TrajSlotCoeffs& k) {
    if (k.degenerate) return {0.0, 0.0};
    const double v = k.eve_lin(w);
    const double eve_scale = k.c2 / ((k.c3 + v) * (k.c3 + v + k.c2));
    return 2.0 * k.b_lin * (w - k.bob_xy) + eve_scale * k.eve_lin.grad;
}

Vec2 clip_to_ball(Vec2 z, double radius) {
    const double z_sq = norm_sq(z);
    if (z_sq <= radius * radius) return z;
    return (radius / std::sqrt(z_sq)) * z;
}

// Exact Euclidean projection of the hop vectors y onto
// {||u_i|| <= dbar for all i} intersected with {sum_i u_i = c}. The optimality
// system is u_i = clip(y_i + nu) with a two-dimensional multiplier nu fixed by
// the sum constraint; nu is found by damped semismooth Newton on the concave
// dual. Returns false when the dual stalls, which happens only when the
// feasible set degenerates toward a single point.
bool project_hops(std::vector<Vec2>& y, Vec2 c, double dbar) {
    const std::size_t n = y.size();
    const double scale = std::max(1.0, norm(c));
    const double budget = static_cast<double>(n) * dbar;
    if (norm(c) > budget) return false;
    if (norm(c) >= budget * (1.0 - 1e-12)) {
        // taut chain: the set collapses to equal hops along c
        const Vec2 hop = (1.0 / static_cast<double>(n)) * c;
        for (auto& u : y) u = hop;
        return true;
    }

    // dual value and residual r = c - sum_i clip(y_i + nu)
    auto dual = [&](Vec2 nu, Vec2& r, double& jxx, double& jxy, double& jyy) {
        double value = dot(c, nu);
        Vec2 sum{0.0, 0.0};
        jxx = jxy = jyy = 0.0;
        for (const Vec2& yi : y) {
            const Vec2 z = yi + nu;
            const double z_sq = norm_sq(z);
            if (z_sq <= dbar * dbar) {
                sum += z;
                value -= 0.5 * z_sq;
                jxx += 1.0;
                jyy += 1.0;
            } else {
                const double nz = std::sqrt(z_sq);
                const double s = dbar / nz;
                sum += s * z;
                value -= dbar * nz - 0.5 * dbar * dbar;
                jxx += s * (1.0 - z.x * z.x / z_sq);
                jyy += s * (1.0 - z.y * z.y / z_sq);
                jxy -= s * z.x * z.y / z_sq;
            }
        }
        r = c - sum;
        return value;
    };

    Vec2 nu{0.0, 0.0};
    Vec2 r;
    double jxx, jxy, jyy;
    double value = dual(nu, r, jxx, jxy, jyy);
    for (int it = 0; it < kMaxDualIters; ++it) {
        if (norm(r) <= 1e-13 * scale) {
            for (auto& u : y) u = clip_to_ball(u + nu, dbar);
            return true;
        }
        const double ridge = 1e-12 * (jxx + jyy) + 1e-300;
        const double a = jxx + ridge, b = jxy, d = jyy + ridge;
        const double det = a * d - b * b;
        if (!(det > 0.0)) return false;
        Vec2 dir{(d * r.x - b * r.y) / det, (a * r.y - b * r.x) / det};
        const double dn = norm(dir);
        const double cap = 64.0 * (dbar + scale);
        if (dn > cap) dir = (cap / dn) * dir;
        // backtrack on the concave dual value
        double t = 1.0;
        for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
            Vec2 r2;
            double j2xx, j2xy, j2yy;
            const double v2 = dual(nu + t * dir, r2, j2xx, j2xy, j2yy);
            if (v2 > value || (t == 1.0 && norm(r2) < 0.9 * norm(r))) {
                nu += t * dir;
                value = v2;
                r = r2;
                jxx = j2xx;
                jxy = j2xy;
                jyy = j2yy;
                break;
            }
            if (ls == 39) return false;
        }
    }
    if (norm(r) <= 1e-13 * scale) {
        for (auto& u : y) u = clip_to_ball(u + nu, dbar);
        return true;
    }
    return false;
}

} // namespace

TrajSolveResult solve_trajectory(const ScenarioConfig& cfg, const Trajectory& prev,
                                 std::span<const double> alpha,
                                 std::span<const double> p_a,
                                 std::span<const double> p_b) {
    if (!validate_trajectory(prev, cfg).empty())
        throw std::invalid_argument("previous trajectory violates C1-C3");
    const auto coeffs = make_traj_coeffs(cfg, prev, alpha, p_a, p_b);
    const double dbar = max_displacement(cfg);
    const std::size_t n = prev.waypoints.size();

    TrajSolveResult res;
    res.trajectory = prev;
    res.trajectory.waypoints.back() = cfg.end_xy; // pinned terminal (within C3 slack)
    if (!validate_trajectory(res.trajectory, cfg).empty())
        res.trajectory = prev; // hop to the pinned terminal too long; keep the input

    const auto f_prev = surrogate_objective(prev, coeffs);
    const auto current = surrogate_objective(res.trajectory, coeffs);
    if (!current || !f_prev) { // domain guard at the expansion point: keep the input
        res.trajectory = prev;
        res.null_step = true;
    } else {
        // The iteration runs over hop vectors u_i = w_i - w_{i-1}, where the
        // mobility set becomes decoupled balls plus one sum constraint with an
        // exact projection.
        const Vec2 hop_target = cfg.end_xy - cfg.start_xy;
        auto reconstruct = [&](const std::vector<Vec2>& u, std::vector<Vec2>& w) {
            Vec2 acc = cfg.start_xy;
            for (std::size_t i = 0; i < n; ++i) {
                acc += u[i];
                w[i] = acc;
            }
            w[n - 1] = cfg.end_xy;
        };

        double f = *current;
        double step = 0.0;
        std::vector<Vec2> hops(n), grad_w(n), grad_u(n), trial_u(n);
        Trajectory trial;
        trial.waypoints.resize(n);
        {
            Vec2 prev_pt = cfg.start_xy;
            for (std::size_t i = 0; i < n; ++i) {
                hops[i] = res.trajectory.waypoints[i] - prev_pt;
                prev_pt = res.trajectory.waypoints[i];
            }
        }
        bool moved = false;
        for (int iter = 0; iter < kMaxInnerIters; ++iter) {
            res.inner_iters = iter + 1;
            for (std::size_t i = 0; i + 1 < n; ++i)
                grad_w[i] = slot_gradient(res.trajectory.waypoints[i], coeffs[i]);
            grad_w[n - 1] = {0.0, 0.0};
            Vec2 suffix{0.0, 0.0};
            double gmax = 0.0;
            for (std::size_t i = n; i-- > 0;) {
                suffix += grad_w[i];
                grad_u[i] = suffix;
                gmax = std::max(gmax, norm(suffix));
            }
            if (gmax <= 0.0) break;
            if (step <= 0.0) step = dbar / gmax; // first trial stretches one hop at most

            bool accepted = false;
            double t = step;
            for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= 0.5) {
                for (std::size_t i = 0; i < n; ++i) trial_u[i] = hops[i] + t * grad_u[i];
                if (!project_hops(trial_u, hop_target, dbar)) continue;
                reconstruct(trial_u, trial.waypoints);
                const auto fz = surrogate_objective(trial, coeffs);
                if (!fz || !(*fz > f + 1e-14 * (1.0 + std::abs(f)))) continue;
                double moved_sq = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    moved_sq += distance_sq(trial_u[i], hops[i]);
                res.residual = std::sqrt(moved_sq) / t;
                hops.swap(trial_u);
                res.trajectory.waypoints = trial.waypoints;
                f = *fz;
                step = 2.0 * t;
                accepted = true;
                moved = true;
                break;
            }
            if (!accepted || res.residual <= cfg.solver.inner_tol) break;
        }
        if (!moved || f < *f_prev) { // ascent is measured against the input
            res.trajectory = prev;   // bit-identical null step
            res.null_step = true;
            res.residual = 0.0;
        }
    }

    const double h2 = cfg.altitude_m * cfg.altitude_m;
    res.s.resize(n);
    res.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        res.s[i] = distance_sq(res.trajectory.waypoints[i], cfg.bob_xy) + h2;
        res.v[i] = coeffs[i].degenerate
                       ? distance_sq(res.trajectory.waypoints[i], cfg.eve_xy) + h2
                       : coeffs[i].eve_lin(res.trajectory.waypoints[i]);
    }
    return res;
}

} // namespace uavsec
