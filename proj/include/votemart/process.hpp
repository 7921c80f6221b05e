#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <votemart/parallel.hpp>
#include <votemart/pricing.hpp>
#include <votemart/rng.hpp>
#include <votemart/special_functions.hpp>

namespace votemart {

// Two bounded maps from the unbounded shadow coordinate to a vote share.
// erf_based is the one the pricing closed form inverts; logistic exists for
// the drift duality checks.
enum class SigmoidVariant { erf_based, logistic };

// Which side of the (X, Y) pair is required to be driftless.
enum class MartingaleSide { x_is_martingale, y_is_martingale };

inline double sigmoid_map(double x, SigmoidVariant v = SigmoidVariant::erf_based) {
    if (!std::isfinite(x)) throw std::domain_error("sigmoid_map: x must be finite");
    double y;
    if (v == SigmoidVariant::erf_based) {
        // erfc form: no cancellation in either tail, so tiny shares come
        // out with full relative precision.
        y = x <= 0.0 ? 0.5 * std::erfc(-x) : 1.0 - 0.5 * std::erfc(x);
    } else {
        y = 1.0 / (1.0 + std::exp(-x));
    }
    // Keep the range open at double resolution.
    if (y >= 1.0) y = std::nextafter(1.0, 0.0);
    if (y <= 0.0) y = std::nextafter(0.0, 1.0);
    return y;
}

inline double sigmoid_inverse(double y, SigmoidVariant v = SigmoidVariant::erf_based) {
    if (!std::isfinite(y) || y <= 0.0 || y >= 1.0)
        throw std::domain_error("sigmoid_inverse: y must lie in (0, 1)");
    if (v == SigmoidVariant::erf_based) return detail::share_probit(y);
    return std::log(y / (1.0 - y));
}

// Diffusion scale of the share under the erf-based map: s(y) = dS/dx * sigma
// evaluated at x = S^{-1}(y).  Continuous extension by 0 at the endpoints.
inline double instantaneous_vol(double y, double sigma) {
    if (!std::isfinite(y) || y < 0.0 || y > 1.0)
        throw std::domain_error("instantaneous_vol: y must lie in [0, 1]");
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw std::domain_error("instantaneous_vol: sigma must be finite and >= 0");
    if (y == 0.0 || y == 1.0) return 0.0;
    const double x = detail::share_probit(y);
    constexpr double inv_sqrt_pi = 0.5641895835477563;
    return sigma * inv_sqrt_pi * std::exp(-x * x);
}

// Drift that one coordinate must carry for the other to be driftless, per
// sigmoid variant.  value is x on the y_is_martingale side and y on the
// x_is_martingale side.
inline double dual_drift(SigmoidVariant v, MartingaleSide side, double value,
                         double sigma) {
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw std::domain_error("dual_drift: sigma must be finite and >= 0");
    const double s2 = sigma * sigma;
    if (side == MartingaleSide::y_is_martingale) {
        if (!std::isfinite(value))
            throw std::domain_error("dual_drift: x must be finite");
        if (v == SigmoidVariant::erf_based) return s2 * value;
        return 0.5 * s2 * std::tanh(0.5 * value);
    }
    if (!std::isfinite(value) || value <= 0.0 || value >= 1.0)
        throw std::domain_error("dual_drift: y must lie in (0, 1)");
    if (v == SigmoidVariant::erf_based) {
        // Ito correction of y = S(x) under driftless x: the share drifts
        // toward one half (Jensen pulls the bounded image back to center).
        const double x = detail::share_probit(value);
        constexpr double inv_sqrt_pi = 0.5641895835477563;
        return -s2 * x * std::exp(-x * x) * inv_sqrt_pi;
    }
    return 0.5 * s2 * value * (value - 1.0) * (2.0 * value - 1.0);
}

// Exact draw of the terminal shadow coordinate.  Under the mean-repelling
// dynamics dX = sigma^2 X dt + sigma dW the terminal value is Gaussian with
// mean x0 e^{a} and variance (e^{2a} - 1)/2, a = sigma^2 tau.  One stream
// per sample: sample i uses stream seed.stream_id + i.
inline std::vector<double> x_transition_sample(double x0, double sigma,
                                               double horizon,
                                               std::size_t n_samples,
                                               const SeedSpec& seed,
                                               unsigned n_threads = 0) {
    if (!std::isfinite(x0)) throw std::domain_error("x0 must be finite");
    detail::check_nonneg(sigma, "sigma");
    detail::check_nonneg(horizon, "horizon");
    const double a = sigma * sigma * horizon;
    const double mean = x0 * std::exp(a);
    const double sd = std::sqrt(0.5 * std::expm1(2.0 * a));
    std::vector<double> out(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        GaussianStream g({seed.master_seed, seed.stream_id + i});
        out[i] = mean + sd * g.next();
    }, n_threads);
    return out;
}

enum class PathScheme { euler_share, exact_x_mapped };

// Terminal vote shares of a simulated ensemble, with enough metadata to
// reproduce it exactly.
struct PathEnsemble {
    std::vector<double> terminal_values;
    double dt = 0.0;
    SeedSpec seed;
    PathScheme scheme = PathScheme::euler_share;

    std::size_t n_paths() const { return terminal_values.size(); }

    double mean() const {
        double s = 0.0;
        for (double v : terminal_values) s += v;
        return s / static_cast<double>(terminal_values.size());
    }

    double variance() const {
        const double m = mean();
        double s = 0.0;
        for (double v : terminal_values) s += (v - m) * (v - m);
        return s / static_cast<double>(terminal_values.size());
    }

    double fraction_above(double threshold) const {
        std::size_t c = 0;
        for (double v : terminal_values)
            if (v > threshold) ++c;
        return static_cast<double>(c) / static_cast<double>(terminal_values.size());
    }
};

namespace detail {

// Single Euler path of the driftless share SDE, reflected into
// [kShareEpsilon, 1 - kShareEpsilon].  Shared by the scalar and
// multi-candidate simulators so equal streams give bit-equal terminals.
inline double euler_share_path(double y0, double sigma, std::uint64_t n_steps,
                               double sqrt_dt, GaussianStream& g) {
    constexpr double lo = kShareEpsilon;
    constexpr double hi = 1.0 - kShareEpsilon;
    constexpr double inv_sqrt_pi = 0.5641895835477563;
    double y = y0;
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        const double x = share_probit(y);
        const double vol = sigma * inv_sqrt_pi * std::exp(-x * x);
        y += vol * sqrt_dt * g.next();
        if (y > hi) y = 2.0 * hi - y;
        if (y < lo) y = 2.0 * lo - y;
        if (y > hi) y = hi;
    }
    return y;
}

} // namespace detail

// Euler scheme for the driftless share SDE dY = s(Y) dW.  Path p draws from
// stream seed.stream_id + p, which fixes the ensemble for any thread count.
// The requested dt is rounded so steps tile the horizon exactly.
inline PathEnsemble simulate_y_paths(double y0, double sigma, double horizon,
                                     double dt, std::size_t n_paths,
                                     const SeedSpec& seed,
                                     unsigned n_threads = 0) {
    detail::check_unit_open(y0, "y0");
    detail::check_nonneg(sigma, "sigma");
    if (!std::isfinite(horizon) || horizon <= 0.0)
        throw std::domain_error("horizon must be finite and > 0");
    if (!std::isfinite(dt) || dt <= 0.0)
        throw std::domain_error("dt must be finite and > 0");
    if (n_paths == 0) throw std::domain_error("n_paths must be positive");

    const auto n_steps = static_cast<std::uint64_t>(
        std::llround(std::max(1.0, horizon / dt)));
    const double step = horizon / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(step);

    PathEnsemble ens;
    ens.terminal_values.resize(n_paths);
    ens.dt = step;
    ens.seed = seed;
    ens.scheme = PathScheme::euler_share;

    parallel_for(n_paths, [&](std::size_t p) {
        GaussianStream g({seed.master_seed, seed.stream_id + p});
        ens.terminal_values[p] =
            detail::euler_share_path(y0, sigma, n_steps, sqrt_dt, g);
    }, n_threads);
    return ens;
}

// Terminal shares obtained by drawing the shadow coordinate exactly and
// mapping through the sigmoid; no discretization error.
inline PathEnsemble simulate_y_terminal_exact(double y0, double sigma,
                                              double horizon,
                                              std::size_t n_paths,
                                              const SeedSpec& seed,
                                              unsigned n_threads = 0) {
    detail::check_unit_open(y0, "y0");
    const double x0 = detail::share_probit(clamp_share(y0));
    auto xs = x_transition_sample(x0, sigma, horizon, n_paths, seed, n_threads);
    PathEnsemble ens;
    ens.terminal_values.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        ens.terminal_values[i] = sigmoid_map(xs[i]);
    ens.dt = horizon;
    ens.seed = seed;
    ens.scheme = PathScheme::exact_x_mapped;
    return ens;
}

// Euler scheme for the shadow SDE itself (dX = sigma^2 X dt + sigma dW).
// The exact transition above supersedes it for sampling; this stepped
// version stays available so drift checks can exercise the dynamics.
inline std::vector<double> simulate_x_paths_euler(double x0, double sigma,
                                                  double horizon, double dt,
                                                  std::size_t n_paths,
                                                  const SeedSpec& seed,
                                                  unsigned n_threads = 0) {
    if (!std::isfinite(x0)) throw std::domain_error("x0 must be finite");
    detail::check_nonneg(sigma, "sigma");
    if (!std::isfinite(horizon) || horizon <= 0.0)
        throw std::domain_error("horizon must be finite and > 0");
    if (!std::isfinite(dt) || dt <= 0.0)
        throw std::domain_error("dt must be finite and > 0");

    const auto n_steps = static_cast<std::uint64_t>(
        std::llround(std::max(1.0, horizon / dt)));
    const double step = horizon / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(step);
    const double s2 = sigma * sigma;

    std::vector<double> out(n_paths);
    parallel_for(n_paths, [&](std::size_t p) {
        GaussianStream g({seed.master_seed, seed.stream_id + p});
        double x = x0;
        for (std::uint64_t k = 0; k < n_steps; ++k)
            x += s2 * x * step + sigma * sqrt_dt * g.next();
        out[p] = x;
    }, n_threads);
    return out;
}

} // namespace votemart
