#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <votemart/special_functions.hpp>

namespace votemart {

// Vote shares live in the open unit interval; inputs at or beyond the
// endpoints are pulled to this floor before the probit-style map, so the
// transform stays finite for degenerate published values.
inline constexpr double kShareEpsilon = 1e-12;

inline double clamp_share(double y) {
    if (y < kShareEpsilon) return kShareEpsilon;
    if (y > 1.0 - kShareEpsilon) return 1.0 - kShareEpsilon;
    return y;
}

namespace detail {

inline void check_unit_open(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0 || v >= 1.0)
        throw std::domain_error(std::string(name) + " must lie in (0, 1)");
}

inline void check_nonneg(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0)
        throw std::domain_error(std::string(name) + " must be finite and >= 0");
}

// x with S(x) = y for the erf-based share map.  The tails route through
// erfcinv on the doubled share (exact in floating point), so precision
// survives all the way to the representable edge of (0, 1); the affine
// 2y - 1 in the middle band is exact by Sterbenz.
inline double share_probit(double y) {
    if (y < 0.25) return -erfcinv(2.0 * y);
    if (y > 0.75) return erfcinv(2.0 * (1.0 - y));
    return erfinv(2.0 * y - 1.0);
}

// Shared closed form in x-coordinates.  a = sigma^2 * tau.
// P(X_T > x_l) for X_T ~ N(x0 e^a, (e^{2a} - 1)/2), written to avoid
// cancellation: numerator (x_l - x0) - x0*expm1(a), denominator
// sqrt(expm1(2a)).
inline double price_core(double x0, double xl, double a) {
    if (a == 0.0) {
        if (x0 > xl) return 1.0;
        if (x0 < xl) return 0.0;
        return 0.5;
    }
    // Past this point e^{2a} overflows; the distribution of the terminal
    // share is already indistinguishable from its limit, where the price
    // equals P(Z > -x0*sqrt(2)) reached below via the a -> inf argument.
    if (a > 350.0) return 0.5 * erfc(-x0);
    const double num = (xl - x0) - x0 * std::expm1(a);
    const double den = std::sqrt(std::expm1(2.0 * a));
    return 0.5 * erfc(num / den);
}

} // namespace detail

// Price of the binary that pays 1 when the terminal vote share exceeds
// threshold.  y0 is the current share estimate, sigma the shadow
// (x-coordinate) volatility, horizon the remaining time.  The price is the
// expected payoff under the bounded martingale dynamics, so it always lands
// in [0, 1] and collapses to a step function at horizon 0.
inline double price_binary(double y0, double sigma, double horizon,
                           double threshold = 0.5) {
    detail::check_unit_open(y0, "y0");
    detail::check_unit_open(threshold, "threshold");
    detail::check_nonneg(sigma, "sigma");
    detail::check_nonneg(horizon, "horizon");

    const double a = sigma * sigma * horizon;
    if (a == 0.0) {
        if (y0 > threshold) return 1.0;
        if (y0 < threshold) return 0.0;
        return 0.5;
    }
    const double x0 = detail::share_probit(clamp_share(y0));
    const double xl = detail::share_probit(clamp_share(threshold));
    return detail::price_core(x0, xl, a);
}

// Same payoff expressed directly in the shadow coordinate: pays 1 when the
// terminal X exceeds x_threshold.
inline double price_binary_xspace(double x0, double sigma, double horizon,
                                  double x_threshold) {
    if (!std::isfinite(x0) || !std::isfinite(x_threshold))
        throw std::domain_error("x0 and x_threshold must be finite");
    detail::check_nonneg(sigma, "sigma");
    detail::check_nonneg(horizon, "horizon");
    return detail::price_core(x0, x_threshold, sigma * sigma * horizon);
}

// Converts an observable vote-share volatility s (standard deviation of the
// terminal share seen from now) into the shadow volatility sigma, at the
// current estimate y0 over the remaining horizon.
inline double sigma_from_s(double s, double y0, double horizon) {
    detail::check_nonneg(s, "s");
    detail::check_unit_open(y0, "y0");
    if (!std::isfinite(horizon) || horizon <= 0.0)
        throw std::domain_error("horizon must be finite and > 0");
    const double x0 = detail::share_probit(clamp_share(y0));
    const double g = 2.0 * M_PI * s * s * std::exp(2.0 * x0 * x0);
    return std::sqrt(std::log1p(g)) / (std::sqrt(2.0) * std::sqrt(horizon));
}

// Exact algebraic inverse of sigma_from_s.
inline double s_from_sigma(double sigma, double y0, double horizon) {
    detail::check_nonneg(sigma, "sigma");
    detail::check_unit_open(y0, "y0");
    if (!std::isfinite(horizon) || horizon <= 0.0)
        throw std::domain_error("horizon must be finite and > 0");
    const double x0 = detail::share_probit(clamp_share(y0));
    const double a = sigma * sigma * horizon;
    return std::sqrt(std::exp(-2.0 * x0 * x0) * std::expm1(2.0 * a) /
                     (2.0 * M_PI));
}

// User-facing entry quoted in observable volatility.  Equals
// price_binary(y0, sigma_from_s(s, y0, horizon), horizon, threshold); the
// horizon cancels out of that composition algebraically, so it is computed
// through the product sigma^2*tau directly and horizon 0 is admissible.
inline double price_binary_from_s(double y0, double s, double horizon,
                                  double threshold = 0.5) {
    detail::check_nonneg(s, "s");
    detail::check_unit_open(y0, "y0");
    detail::check_unit_open(threshold, "threshold");
    detail::check_nonneg(horizon, "horizon");
    const double x0 = detail::share_probit(clamp_share(y0));
    const double xl = detail::share_probit(clamp_share(threshold));
    const double a = 0.5 * std::log1p(2.0 * M_PI * s * s * std::exp(2.0 * x0 * x0));
    if (a == 0.0) {
        if (y0 > threshold) return 1.0;
        if (y0 < threshold) return 0.0;
        return 0.5;
    }
    return detail::price_core(x0, xl, a);
}

// Volatility quote: either the observable share volatility s or the shadow
// volatility sigma.
struct VolSpec {
    enum class Kind { vote_vol, shadow_vol };
    Kind kind = Kind::vote_vol;
    double value = 0.0;

    static VolSpec vote(double s) { return {Kind::vote_vol, s}; }
    static VolSpec shadow(double sigma) { return {Kind::shadow_vol, sigma}; }
};

struct PricingInputs {
    double y0 = 0.5;
    double horizon = 0.0;
    double threshold = 0.5;
    VolSpec vol;
};

inline double price(const PricingInputs& in) {
    if (in.vol.kind == VolSpec::Kind::shadow_vol)
        return price_binary(in.y0, in.vol.value, in.horizon, in.threshold);
    return price_binary_from_s(in.y0, in.vol.value, in.horizon, in.threshold);
}

struct CurvePoint {
    double y0 = 0.0;
    double price = 0.0;
};

// Price as a function of the current estimate, at fixed observable
// volatility.  The grid spans (0, 1) exclusive.
inline std::vector<CurvePoint> price_curve(double s, double horizon,
                                           double threshold,
                                           std::size_t grid_points) {
    if (grid_points < 2)
        throw std::domain_error("grid_points must be at least 2");
    std::vector<CurvePoint> out;
    out.reserve(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double y0 =
            (static_cast<double>(i) + 1.0) / (static_cast<double>(grid_points) + 1.0);
        out.push_back({y0, price_binary_from_s(y0, s, horizon, threshold)});
    }
    return out;
}

} // namespace votemart
