#pragma once

// Audit of a published binary forecast series against its arbitrage-free
// repricing.  A forecast stream is treated as a quoted price process for the
// event payout; each quote is compared with the closed-form value implied by
// the forecaster's own vote-share estimate and a share volatility.  The module
// also scores the stream against the realized outcome and runs a mechanical
// trading ledger that monetizes any divergence.
//
// Convention: the share volatility `s` passed around here is ANNUALIZED.  At
// each point the total remaining-horizon volatility is s * sqrt(tau) with tau
// the year fraction to the election, which is what the pricing layer expects.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pricing.hpp"

namespace votemart {

inline constexpr double kDaysPerYear = 365.25;

namespace detail {

inline int parse_int_field(std::string_view s, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("malformed date ") + what);
    return value;
}

} // namespace detail

// Parses an ISO-8601 calendar date (YYYY-MM-DD).  Rejects impossible dates.
inline std::chrono::sys_days parse_date(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw std::invalid_argument("date must be YYYY-MM-DD");
    const int y = detail::parse_int_field(iso.substr(0, 4), "year");
    const int m = detail::parse_int_field(iso.substr(5, 2), "month");
    const int d = detail::parse_int_field(iso.substr(8, 2), "day");
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) throw std::invalid_argument("no such calendar date");
    return std::chrono::sys_days{ymd};
}

inline std::string format_date(std::chrono::sys_days day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

inline double year_fraction(std::chrono::sys_days from, std::chrono::sys_days to) {
    return double((to - from).count()) / kDaysPerYear;
}

// One published observation.  The share estimate is optional because many
// published streams quote only the probability.
struct ForecastPoint {
    std::chrono::sys_days date;
    double published_prob = 0.0;
    std::optional<double> vote_share_est;
};

struct ForecastSeries {
    std::vector<ForecastPoint> points;
    std::chrono::sys_days election_date;
    std::optional<bool> outcome;  // set once the event resolves

    // Throws std::invalid_argument unless dates strictly increase, none lies
    // past the election, and every quoted value is a probability.
    void validate() const {
        if (points.empty())
            throw std::invalid_argument("forecast series is empty");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& pt = points[i];
            if (i > 0 && !(points[i - 1].date < pt.date))
                throw std::invalid_argument("dates must strictly increase");
            if (pt.date > election_date)
                throw std::invalid_argument("forecast dated after the election");
            if (!(pt.published_prob >= 0.0 && pt.published_prob <= 1.0))
                throw std::invalid_argument("published_prob outside [0, 1]");
            if (pt.vote_share_est &&
                !(*pt.vote_share_est >= 0.0 && *pt.vote_share_est <= 1.0))
                throw std::invalid_argument("vote_share_est outside [0, 1]");
        }
    }
};

// Reprices every point from its share estimate: total remaining volatility
// s * sqrt(tau).  Points without a share estimate yield an empty slot.  On the
// election date itself tau is zero and the value degenerates to the indicator.
inline std::vector<std::optional<double>>
fair_value_series(const ForecastSeries& series, double s, double threshold = 0.5) {
    series.validate();
    detail::check_nonneg(s, "s");
    std::vector<std::optional<double>> fair;
    fair.reserve(series.points.size());
    for (const auto& pt : series.points) {
        if (!pt.vote_share_est) {
            fair.emplace_back();
            continue;
        }
        const double tau = year_fraction(pt.date, series.election_date);
        fair.emplace_back(price_binary_from_s(clamp_share(*pt.vote_share_est),
                                              s * std::sqrt(tau), tau, threshold));
    }
    return fair;
}

// Mean squared probability error against the realized outcome.
inline double brier_score(const ForecastSeries& series) {
    series.validate();
    if (!series.outcome)
        throw std::invalid_argument("brier_score needs a resolved outcome");
    const double target = *series.outcome ? 1.0 : 0.0;
    double acc = 0.0;
    for (const auto& pt : series.points) {
        const double e = pt.published_prob - target;
        acc += e * e;
    }
    return acc / double(series.points.size());
}

inline double l1_score(const ForecastSeries& series) {
    series.validate();
    if (!series.outcome)
        throw std::invalid_argument("l1_score needs a resolved outcome");
    const double target = *series.outcome ? 1.0 : 0.0;
    double acc = 0.0;
    for (const auto& pt : series.points)
        acc += std::abs(pt.published_prob - target);
    return acc / double(series.points.size());
}

namespace detail {

// Annualized quadratic-variation estimate of an irregularly sampled series:
// sqrt of the mean of squared increments scaled by their own time step.
inline double realized_vol(const std::vector<std::chrono::sys_days>& dates,
                           const std::vector<double>& values) {
    if (values.size() < 2)
        throw std::invalid_argument("realized vol needs at least two points");
    double acc = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double dt = year_fraction(dates[i - 1], dates[i]);
        if (!(dt > 0.0))
            throw std::invalid_argument("realized vol needs increasing dates");
        const double db = values[i] - values[i - 1];
        acc += db * db / dt;
    }
    return std::sqrt(acc / double(values.size() - 1));
}

} // namespace detail

// Realized volatility of the published probability stream itself.
inline double realized_forecast_vol(const ForecastSeries& series) {
    series.validate();
    std::vector<std::chrono::sys_days> dates;
    std::vector<double> probs;
    dates.reserve(series.points.size());
    probs.reserve(series.points.size());
    for (const auto& pt : series.points) {
        dates.push_back(pt.date);
        probs.push_back(pt.published_prob);
    }
    return detail::realized_vol(dates, probs);
}

// Annualized share volatility estimated from the forecaster's own share
// estimates, taken pairwise over consecutive points that carry one.
inline double estimate_share_vol(const ForecastSeries& series) {
    series.validate();
    std::vector<std::chrono::sys_days> dates;
    std::vector<double> shares;
    for (const auto& pt : series.points) {
        if (!pt.vote_share_est) continue;
        dates.push_back(pt.date);
        shares.push_back(*pt.vote_share_est);
    }
    if (shares.size() < 2)
        throw std::invalid_argument(
            "estimate_share_vol needs at least two share estimates");
    return detail::realized_vol(dates, shares);
}

// Mechanical ledger that trades one unit against every divergence: long the
// contract at the published price when the repriced value is higher, short
// when lower.  Each position is closed at the next published price; the final
// one settles at the realized payout.  A stream that equals its repricing
// yields exactly zero.
inline double dutch_book_pnl(const std::vector<double>& published,
                             const std::vector<double>& fair, bool outcome) {
    if (published.empty() || published.size() != fair.size())
        throw std::invalid_argument("dutch_book_pnl needs matching nonempty series");
    double pnl = 0.0;
    for (std::size_t i = 0; i < published.size(); ++i) {
        double pos = 0.0;
        if (fair[i] > published[i]) pos = 1.0;
        else if (fair[i] < published[i]) pos = -1.0;
        const double close =
            (i + 1 < published.size()) ? published[i + 1] : (outcome ? 1.0 : 0.0);
        pnl += pos * (close - published[i]);
    }
    return pnl;
}

inline double dutch_book_pnl(const ForecastSeries& series, double s,
                             double threshold = 0.5) {
    if (!series.outcome)
        throw std::invalid_argument("dutch_book_pnl needs a resolved outcome");
    const auto fair = fair_value_series(series, s, threshold);
    std::vector<double> published, repriced;
    for (std::size_t i = 0; i < fair.size(); ++i) {
        published.push_back(series.points[i].published_prob);
        // No repricing signal means no position at that date.
        repriced.push_back(fair[i] ? *fair[i] : series.points[i].published_prob);
    }
    return dutch_book_pnl(published, repriced, *series.outcome);
}

struct AuditPointReport {
    std::chrono::sys_days date;
    double published_prob = 0.0;
    std::optional<double> fair_value;
    std::optional<double> divergence;  // published minus fair
    bool violation = false;            // |divergence| > tolerance
    std::string note;
};

struct AuditReport {
    std::vector<AuditPointReport> points;
    double s_used = 0.0;
    double threshold = 0.5;
    double tolerance = 0.0;
    std::size_t violation_count = 0;
    std::optional<double> realized_forecast_vol;  // needs two or more points
    std::optional<double> max_admissible_vol;     // realized vol of the repricing
    bool vol_violation = false;
    std::optional<double> dutch_book;  // set when the outcome is known
    std::optional<double> brier;
    std::optional<double> l1;
};

// Full audit pass: repricing, pointwise divergence flags, volatility
// comparison, trading ledger, and outcome scores where available.  The same
// slack parameter bounds the pointwise divergence absolutely and the realized
// volatility excess relatively.
inline AuditReport martingale_audit(const ForecastSeries& series, double s,
                                    double threshold = 0.5,
                                    double tolerance = 0.05) {
    detail::check_nonneg(tolerance, "tolerance");
    const auto fair = fair_value_series(series, s, threshold);
    AuditReport report;
    report.s_used = s;
    report.threshold = threshold;
    report.tolerance = tolerance;
    report.points.reserve(series.points.size());
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        AuditPointReport pr;
        pr.date = series.points[i].date;
        pr.published_prob = series.points[i].published_prob;
        if (fair[i]) {
            pr.fair_value = fair[i];
            pr.divergence = pr.published_prob - *fair[i];
            pr.violation = std::abs(*pr.divergence) > tolerance;
            if (pr.violation) {
                pr.note = *pr.divergence > 0.0 ? "overpriced" : "underpriced";
                ++report.violation_count;
            }
        } else {
            pr.note = "no share estimate";
        }
        report.points.push_back(std::move(pr));
    }

    if (series.points.size() >= 2)
        report.realized_forecast_vol = realized_forecast_vol(series);
    std::vector<std::chrono::sys_days> fair_dates;
    std::vector<double> fair_values;
    for (std::size_t i = 0; i < fair.size(); ++i) {
        if (!fair[i]) continue;
        fair_dates.push_back(series.points[i].date);
        fair_values.push_back(*fair[i]);
    }
    if (fair_values.size() >= 2)
        report.max_admissible_vol = detail::realized_vol(fair_dates, fair_values);
    if (report.realized_forecast_vol && report.max_admissible_vol)
        report.vol_violation = *report.realized_forecast_vol >
                               *report.max_admissible_vol * (1.0 + tolerance);

    if (series.outcome) {
        report.dutch_book = dutch_book_pnl(series, s, threshold);
        report.brier = brier_score(series);
        report.l1 = l1_score(series);
    }
    return report;
}

} // namespace votemart
