#pragma once

// Reference values frozen from a 50-digit arbitrary-precision computation,
// rounded to nearest double.  Tests assert against these constants; the
// series oracles in oracles.hpp re-derive a subset at runtime as a guard
// against transcription errors.

namespace frozen {

// erf / erfc / erfinv
inline constexpr double erf_01   = 0.1124629160182849;   // erf(0.1)
inline constexpr double erf_05   = 0.5204998778130465;   // erf(0.5)
inline constexpr double erf_1    = 0.8427007929497149;   // erf(1)
inline constexpr double erf_2    = 0.9953222650189527;   // erf(2)
inline constexpr double erf_3    = 0.9999779095030014;   // erf(3)
inline constexpr double erf_4    = 0.9999999845827421;   // erf(4)
inline constexpr double erfc_1   = 0.15729920705028513;  // erfc(1)
inline constexpr double erfc_2   = 0.004677734981047266; // erfc(2)
inline constexpr double erfc_m2  = 1.9953222650189528;   // erfc(-2)
inline constexpr double erfc_5   = 1.537459794428035e-12;
inline constexpr double erfc_10  = 2.088487583762545e-45;
inline constexpr double erfc_15  = 7.212994172451207e-100;
inline constexpr double erfc_20  = 5.395865611607901e-176;
inline constexpr double erfc_26  = 5.663192408856143e-296;
inline constexpr double erfinv_05 = 0.4769362762044699;  // erfinv(0.5)
inline constexpr double erfinv_09 = 1.163087153676674;   // erfinv(0.9)
inline constexpr double inv_sqrt_pi = 0.5641895835477563;

// Pricing
// price in x-coordinates at x0 = 1, sigma = 1, tau = 1, threshold x_l = 0:
// 0.5*erfc((0 - e)/sqrt(e^2 - 1)); cross-checked as the Gaussian survival
// P(N(e, (e^2-1)/2) > 0).
inline constexpr double price_x_1_1_1_0 = 0.9358533443581682;
// price_binary(0.6, sigma, tau) with sigma^2*tau = 1/12
inline constexpr double price_y06_a112 = 0.7410546680607581;
// price_binary(0.55, sigma, tau) with sigma^2*tau = 5
inline constexpr double price_y055_a5 = 0.5500011290748886;
// sigma_from_s(0.1, 0.5, 1.0)
inline constexpr double sigma_from_s_01_05_1 = 0.17455214887494455;
// s_from_sigma(1.0, 0.5, 1.0) = sqrt((e^2 - 1)/(2*pi))
inline constexpr double s_from_sigma_1_05_1 = 1.0083897360823515;

// Process / mapping
inline constexpr double S_erf_1 = 0.9213503964748574;    // 0.5 + 0.5*erf(1)
// E[S(X_T)] for X_T ~ N(1, (e^2-1)/2), i.e. driftless X at sigma^2*tau = 1:
// 0.5 + 0.5*erf(m / sqrt(1 + 2V)) with m = 1, V = (e^2-1)/2, confirmed by
// direct quadrature of S against the Gaussian density.
inline constexpr double mean_S_driftless_x1_a1 = 0.69855884749078858;
// dual drift, X-martingale side, logistic variant, y = 0.25, sigma = 1
inline constexpr double drift_xmart_logistic_y025 = 0.046875;

// Audit
// sqrt(365.25) * 0.1: annualized vol of daily increments with rms 0.1
inline constexpr double annualized_daily_01 = 1.9111514853616391;

// Curve slopes dB/dy0 at y0 = 0.5, threshold 0.5, for s in
// {0.01, 0.05, 0.1, 0.2} under the total-remaining-vol transform chain.
inline constexpr double curve_slope_s001 = 39.906759146796865;
inline constexpr double curve_slope_s005 = 8.041267140677304;
inline constexpr double curve_slope_s010 = 4.112845038233957;
inline constexpr double curve_slope_s020 = 2.231338965112852;

// chi-square 0.999 quantiles by degrees of freedom (histogram tests)
inline constexpr double chi2_999[] = {
    20.515005652432873,  // df 5
    22.457744484825323,  // df 6
    24.321886347856854,  // df 7
    26.12448155837614,   // df 8
    27.877164871256568,  // df 9
    29.58829844507442,   // df 10
    31.264133620239985,  // df 11
    32.90949040736021,   // df 12
    34.52817897487089,   // df 13
    36.12327368039813,   // df 14
    37.69729821835383,   // df 15
    39.252354790768464,  // df 16
    40.79021670690253,   // df 17
    42.31239633167996,   // df 18
    43.82019596451753,   // df 19
    45.31474661812586,   // df 20
    46.797038041561315,  // df 21
    48.26794229083518,   // df 22
    49.7282324664315,    // df 23
    51.17859777737739,   // df 24
    52.619655776172834,  // df 25
};
inline constexpr int chi2_999_min_df = 5;
inline constexpr int chi2_999_max_df = 25;

inline double chi2_crit_999(int df) {
    if (df < chi2_999_min_df) df = chi2_999_min_df;
    if (df > chi2_999_max_df) df = chi2_999_max_df;
    return chi2_999[df - chi2_999_min_df];
}

// E[S(N(1, 1))] for the erf sigmoid: 1/2 + erf(1/sqrt(3))/2.  Mean of a
// drift-free unit Brownian start mapped through S; differs visibly from
// S(1) = 0.92135..., which only the mean-repelling drift restores.
inline constexpr double mean_S_brownian_x1_t1 = 0.79289191087873744;

// Central slopes of the fixed-s price curve read off the 201-point CSV grid
// (central difference with h = 1/202 around y0 = 0.5).
inline constexpr double csv_slope_s001 = 38.332192439643431;
inline constexpr double csv_slope_s005 = 8.0275414600940287;
inline constexpr double csv_slope_s010 = 4.110868124593798;
inline constexpr double csv_slope_s020 = 2.2309738852242011;

} // namespace frozen
