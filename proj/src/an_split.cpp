#include "uavsec/an_split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavsec {

double psi(double x, const GammaTriple& g) {
    const double num = ((1.0 - x) * g.g3 + 1.0) * ((x * g.g2 + 1.0) * g.g1 + g.g2 + 1.0);
    const double den = (g.g3 + 1.0) * ((1.0 - x) * g.g1 + g.g2 + 1.0);
    return num / den;
}

std::optional<double> alpha_closed_form(const GammaTriple& g) {
    if (!(g.g1 > 0.0 && g.g2 > 0.0 && g.g3 > 0.0)) return std::nullopt;
    if (g.g2 * g.g3 - g.g1 <= 0.0) return std::nullopt;
    // Stationary point of psi. The applicability condition above guarantees a
    // positive radicand: g3 (1 + g2) > g2 g3 > g1.
    const double rad = (g.g2 * g.g3 + g.g3 - g.g1) * (1.0 + g.g2) *
                       (1.0 + g.g1 + g.g2) * g.g2 * g.g3;
    const double alpha = (1.0 + g.g1 + g.g2) / g.g1 -
                         std::sqrt(rad) / (g.g1 * g.g2 * g.g3);
    return std::clamp(alpha, 0.0, 1.0);
}

double alpha_high_snr(double p_a, double p_b) {
    if (!(p_a > 0.0)) throw std::invalid_argument("alpha_high_snr needs p_a > 0");
    const double r = p_b / p_a;
    return std::clamp(1.0 - (std::sqrt(r * (1.0 + r)) - r), 0.0, 1.0);
}

namespace {

// Coarse scan plus golden-section refinement; the scan guards the regimes
// where the unimodality argument needs gamma_i >= 1.
double maximize_psi(const GammaTriple& g, double tol) {
    constexpr int kScan = 64;
    int best = 0;
    double best_val = psi(0.0, g);
    for (int i = 1; i <= kScan; ++i) {
        const double v = psi(static_cast<double>(i) / kScan, g);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = std::max(0.0, (best - 1.0) / kScan);
    double hi = std::min(1.0, (best + 1.0) / kScan);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = psi(x1, g);
    double f2 = psi(x2, g);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = psi(x2, g);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = psi(x1, g);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> solve_alpha(std::span<const GammaTriple> gammas,
                                std::span<const double> alpha_prev,
                                const SolverTolerances& tol) {
    if (gammas.size() != alpha_prev.size())
        throw std::invalid_argument("gamma/alpha length mismatch");
    std::vector<double> out(gammas.size());
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        const GammaTriple& g = gammas[i];
        double alpha;
        if (!(g.g1 > 0.0)) {
            alpha = alpha_prev[i]; // zero transmit power: any split is optimal
        } else if (auto cf = alpha_closed_form(g)) {
            alpha = *cf;
        } else {
            alpha = maximize_psi(g, tol.inner_tol);
        }
        out[i] = std::clamp(alpha, tol.alpha_clamp, 1.0 - tol.alpha_clamp);
    }
    return out;
}

} // namespace uavsec
