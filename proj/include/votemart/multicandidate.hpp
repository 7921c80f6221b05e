#pragma once

// Joint simulation of a full candidate field.  Shares are built by a nested
// residual construction: candidate 0's share follows the bounded share
// diffusion directly, each later candidate's fraction of the mass left over
// by its predecessors follows an independent copy, and the last candidate
// absorbs the residual.  Every path therefore stays in the simplex: shares
// lie in [0, 1] and sum to one.  Each coordinate's marginal expectation is
// preserved because the fractions are independent martingales.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "process.hpp"

namespace votemart {

struct ShareVector {
    std::vector<double> shares;
    std::vector<std::string> candidate_ids;  // optional labels, same length when set

    void validate() const {
        if (shares.size() < 2)
            throw std::invalid_argument("need at least two candidates");
        if (!candidate_ids.empty() && candidate_ids.size() != shares.size())
            throw std::invalid_argument("candidate_ids length mismatch");
        double total = 0.0;
        for (double v : shares) {
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("share outside [0, 1]");
            total += v;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("shares must sum to one");
    }
};

struct ShareEnsemble {
    std::size_t n_paths = 0;
    std::size_t n_candidates = 0;
    std::vector<double> terminal;  // path-major: [path * n_candidates + candidate]
    double dt = 0.0;
    SeedSpec seed;

    double share(std::size_t path, std::size_t candidate) const {
        return terminal[path * n_candidates + candidate];
    }
};

// Terminal field simulation.  Fraction process c on path p draws from stream
// seed.stream_id + c * n_paths + p, so candidate 0 reproduces the scalar
// simulator bit for bit under the same seed, paths, and step size.
inline ShareEnsemble simulate_shares(const ShareVector& initial, double sigma,
                                     double horizon, double dt,
                                     std::size_t n_paths, const SeedSpec& seed,
                                     unsigned n_threads = 0) {
    initial.validate();
    detail::check_nonneg(sigma, "sigma");
    if (!std::isfinite(horizon) || horizon <= 0.0)
        throw std::domain_error("horizon must be finite and > 0");
    if (!std::isfinite(dt) || dt <= 0.0)
        throw std::domain_error("dt must be finite and > 0");
    if (n_paths == 0) throw std::domain_error("n_paths must be positive");

    const std::size_t n = initial.shares.size();
    // Starting fraction of the remaining mass for every non-terminal
    // candidate, clamped into the open interval the diffusion lives on.
    std::vector<double> f0(n - 1);
    double remaining = 1.0;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        f0[c] = clamp_share(remaining > 0.0 ? initial.shares[c] / remaining : 0.0);
        remaining -= initial.shares[c];
    }

    const auto n_steps = static_cast<std::uint64_t>(
        std::llround(std::max(1.0, horizon / dt)));
    const double step = horizon / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(step);

    ShareEnsemble ens;
    ens.n_paths = n_paths;
    ens.n_candidates = n;
    ens.terminal.resize(n_paths * n);
    ens.dt = step;
    ens.seed = seed;

    parallel_for(n_paths, [&](std::size_t p) {
        double prod = 1.0;
        for (std::size_t c = 0; c + 1 < n; ++c) {
            GaussianStream g({seed.master_seed, seed.stream_id + c * n_paths + p});
            const double f =
                detail::euler_share_path(f0[c], sigma, n_steps, sqrt_dt, g);
            ens.terminal[p * n + c] = f * prod;
            prod *= 1.0 - f;
        }
        ens.terminal[p * n + (n - 1)] = prod;
    }, n_threads);
    return ens;
}

struct WinRule {
    enum class Kind { plurality, majority_threshold };
    Kind kind = Kind::plurality;
    double threshold = 0.5;

    static WinRule plurality() { return {Kind::plurality, 0.0}; }
    static WinRule majority(double t = 0.5) {
        return {Kind::majority_threshold, t};
    }
};

// Per-candidate win frequency over the ensemble.  Under plurality an exact
// k-way tie splits the path's weight equally, so the estimates sum to one;
// under a majority threshold no candidate may clear the bar, so they may
// sum to less.
inline std::vector<double> win_probabilities(const ShareEnsemble& ensemble,
                                             const WinRule& rule = WinRule::plurality()) {
    if (ensemble.n_paths == 0 || ensemble.n_candidates == 0)
        throw std::invalid_argument("empty ensemble");
    if (ensemble.terminal.size() != ensemble.n_paths * ensemble.n_candidates)
        throw std::invalid_argument("ensemble shape mismatch");
    if (rule.kind == WinRule::Kind::majority_threshold)
        detail::check_unit_open(rule.threshold, "threshold");

    const std::size_t n = ensemble.n_candidates;
    std::vector<double> wins(n, 0.0);
    for (std::size_t p = 0; p < ensemble.n_paths; ++p) {
        const double* row = ensemble.terminal.data() + p * n;
        if (rule.kind == WinRule::Kind::plurality) {
            double best = row[0];
            for (std::size_t c = 1; c < n; ++c) best = std::max(best, row[c]);
            std::size_t ties = 0;
            for (std::size_t c = 0; c < n; ++c)
                if (row[c] == best) ++ties;
            const double w = 1.0 / double(ties);
            for (std::size_t c = 0; c < n; ++c)
                if (row[c] == best) wins[c] += w;
        } else {
            for (std::size_t c = 0; c < n; ++c)
                if (row[c] > rule.threshold) wins[c] += 1.0;
        }
    }
    for (double& w : wins) w /= double(ensemble.n_paths);
    return wins;
}

} // namespace votemart
