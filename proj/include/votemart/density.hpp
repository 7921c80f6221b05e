#pragma once

#include <cmath>
#include <stdexcept>

#include <votemart/pricing.hpp>
#include <votemart/quadrature.hpp>

namespace votemart {

// Law of the share at one future instant, seen from the current estimate.
struct TimeSliceParams {
    double y0 = 0.5;    // current share estimate, in (0, 1)
    double sigma = 1.0; // shadow volatility, > 0
    double tau = 1.0;   // elapsed time to the slice, > 0
};

namespace detail {

inline void check_slice(const TimeSliceParams& p) {
    check_unit_open(p.y0, "y0");
    if (!std::isfinite(p.sigma) || p.sigma <= 0.0)
        throw std::domain_error("sigma must be finite and > 0");
    if (!std::isfinite(p.tau) || p.tau <= 0.0)
        throw std::domain_error("tau must be finite and > 0");
}

// Above this value of a = sigma^2 * tau the slice mass piles onto the
// endpoints (the density diverges there once a > log(2)/2) and share-space
// quadrature starts losing boundary mass to double rounding, so the moment
// integrals change variables back to the Gaussian shadow coordinate.
inline constexpr double kXSpaceSwitch = 0.25;

} // namespace detail

// Density of the share at the slice.  Closed form in share coordinates:
//   phi(y) = exp(x_y^2 - (coth(a) - 1)/2 * (x_y - x0 e^a)^2) / sqrt(e^{2a}-1)
// with x_y = S^{-1}(y); (coth(a) - 1)/2 is computed as 1/(e^{2a} - 1), the
// same quantity without the large-a cancellation.  Defined as 0 at the
// endpoints (the pointwise limit whenever the density does not diverge).
inline double timeslice_density(double y, const TimeSliceParams& p) {
    detail::check_slice(p);
    if (!std::isfinite(y) || y < 0.0 || y > 1.0)
        throw std::domain_error("y must lie in [0, 1]");
    if (y == 0.0 || y == 1.0) return 0.0;
    const double a = p.sigma * p.sigma * p.tau;
    const double em = std::expm1(2.0 * a);
    const double xy = detail::share_probit(y);
    const double x0 = detail::share_probit(p.y0);
    const double d = xy - x0 * std::exp(a);
    return std::exp(xy * xy - d * d / em) / std::sqrt(em);
}

namespace detail {

// Moment of f(Y) at the slice.  Small a integrates the density in share
// coordinates; larger a substitutes y = S(x) and integrates against the
// Gaussian transition in the shadow coordinate, where the integrand stays
// bounded and the truncation at 10 standard deviations is beyond tolerance.
template <class F>
double slice_moment(const TimeSliceParams& p, F&& f) {
    const double a = p.sigma * p.sigma * p.tau;
    if (a <= kXSpaceSwitch) {
        auto g = [&](double y) { return f(y) * timeslice_density(y, p); };
        return integrate(g, kShareEpsilon, 1.0 - kShareEpsilon, 1e-10).value;
    }
    const double m = share_probit(p.y0) * std::exp(a);
    const double sd = std::sqrt(0.5 * std::expm1(2.0 * a));
    auto g = [&](double x) {
        const double z = (x - m) / sd;
        const double y = x <= 0.0 ? 0.5 * std::erfc(-x) : 1.0 - 0.5 * std::erfc(x);
        return f(y) * std::exp(-0.5 * z * z) /
               (sd * std::sqrt(2.0 * M_PI));
    };
    return integrate(g, m - 10.0 * sd, m + 10.0 * sd, 1e-10).value;
}

} // namespace detail

// First moment of the slice; the martingale property makes it equal y0 up
// to quadrature tolerance.
inline double density_mean(const TimeSliceParams& p) {
    detail::check_slice(p);
    return detail::slice_moment(p, [](double y) { return y; });
}

// Spread of the slice about the current estimate, E[(Y - y0)^2].
inline double density_variance(const TimeSliceParams& p) {
    detail::check_slice(p);
    const double y0 = p.y0;
    return detail::slice_moment(p, [y0](double y) {
        const double d = y - y0;
        return d * d;
    });
}

// P(Y > threshold) by integrating the slice law; agrees with the closed
// form price_binary to quadrature tolerance and exists to check it.
inline double price_by_quadrature(const TimeSliceParams& p,
                                  double threshold = 0.5) {
    detail::check_slice(p);
    detail::check_unit_open(threshold, "threshold");
    const double a = p.sigma * p.sigma * p.tau;
    if (a <= detail::kXSpaceSwitch) {
        auto g = [&](double y) { return timeslice_density(y, p); };
        const double lo = std::max(threshold, kShareEpsilon);
        if (lo >= 1.0 - kShareEpsilon) return 0.0;
        return integrate(g, lo, 1.0 - kShareEpsilon, 1e-10).value;
    }
    const double m = detail::share_probit(p.y0) * std::exp(a);
    const double sd = std::sqrt(0.5 * std::expm1(2.0 * a));
    const double xl = detail::share_probit(clamp_share(threshold));
    const double hi = m + 10.0 * sd;
    if (xl >= hi) return 0.0;
    auto g = [&](double x) {
        const double z = (x - m) / sd;
        return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
    };
    return integrate(g, std::max(xl, m - 10.0 * sd), hi, 1e-10).value;
}

} // namespace votemart
