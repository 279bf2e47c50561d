#include "censtail/asymptotics.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "censtail/error.hpp"

namespace censtail {

void AsymptoticParams::validate() const {
    if (!(gamma1 > 0.0)) throw DomainError("gamma1 must be > 0");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
    if (!(tau1 <= 0.0)) throw DomainError("tau1 must be <= 0");
    if (!std::isfinite(beta) || !std::isfinite(lambda)) throw DomainError("beta and lambda must be finite");
}

double sigma2_beta(const AsymptoticParams& params) {
    params.validate();
    if (!(params.beta > 0.5)) throw DomainError("sigma2_beta: beta must be > 1/2");
    const double g = params.gamma1;
    return g * g * params.beta * params.beta / (params.p * (2.0 * params.beta - 1.0));
}

double mu_beta(const AsymptoticParams& params) {
    params.validate();
    const double denom = params.beta - params.p * params.tau1;
    if (denom == 0.0) throw DomainError("mu_beta: beta - p*tau1 vanishes");
    return params.lambda * params.beta / denom;
}

double variance_gap_mns(const AsymptoticParams& params) {
    params.validate();
    const double p = params.p;
    const double b = params.beta;
    if (!(p > 0.5 && p < 1.0)) throw DomainError("variance_gap_mns: requires 1/2 < p < 1");
    if (!(b > 0.5)) throw DomainError("variance_gap_mns: beta must be > 1/2");
    const double g = params.gamma1;
    return (b - p) * (2.0 * p * b - p - b) * g * g / (p * (2.0 * p - 1.0) * (2.0 * b - 1.0));
}

namespace {

void check_bw_domain(const AsymptoticParams& params) {
    params.validate();
    if (!(params.p > 0.5 && params.p < 1.0)) throw DomainError("BW variance comparison requires 1/2 < p < 1");
    const double bg = params.beta * params.gamma1;
    if (!(bg > -1.0)) throw DomainError("BW variance requires gamma1*beta > -1");
    if (2.0 * params.p * (1.0 + bg) - 1.0 <= 0.0) throw DomainError("BW variance requires 2p(1+beta*gamma1) > 1");
}

}  // namespace

double bw_variance(const AsymptoticParams& params) {
    check_bw_domain(params);
    const double g = params.gamma1;
    const double a = 1.0 + params.beta * g;
    return g * g * params.p * a * a / (2.0 * params.p * a - 1.0);
}

double worms_variance(const AsymptoticParams& params) {
    params.validate();
    if (!(params.p > 0.5)) throw DomainError("worms_variance: requires p > 1/2");
    return params.gamma1 * params.gamma1 * params.p / (2.0 * params.p - 1.0);
}

double variance_gap_bw(const AsymptoticParams& params) {
    check_bw_domain(params);
    const double p = params.p;
    const double g = params.gamma1;
    const double bg = params.beta * g;
    return g * g * (p * bg / (2.0 * p - 1.0)) * ((2.0 * p - 1.0) * bg - 2.0 * (1.0 - p)) /
           (2.0 * p * (1.0 + bg) - 1.0);
}

double normal_quantile(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw DomainError("normal_quantile: probability must lie in (0, 1)");

    // Acklam's rational approximation (relative error ~1.15e-9) ...
    constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                      6.680131188771972e+01,  -1.328068155288572e+01};
    constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                      3.754408661907416e+00};
    constexpr double low = 0.02425;

    double x = 0.0;
    if (prob < low) {
        const double q = std::sqrt(-2.0 * std::log(prob));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (prob <= 1.0 - low) {
        const double q = prob - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-prob));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // ... polished by one Halley step against erfc.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - prob;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

CiResult confidence_interval(double estimate, std::size_t k, double p_hat, double beta, double level) {
    if (!(level >= 0.0 && level < 1.0)) throw DomainError("confidence level must lie in [0, 1)");
    if (k < 1) throw DomainError("confidence interval: k must be >= 1");
    if (!(p_hat > 0.0 && p_hat <= 1.0)) throw DomainError("confidence interval: p_hat must lie in (0, 1]");
    if (!(beta > 0.5)) throw DomainError("confidence interval: beta must be > 1/2");
    if (!std::isfinite(estimate)) throw DomainError("confidence interval: non-finite estimate");

    CiResult ci;
    ci.point = estimate;
    ci.level = level;
    ci.se = std::abs(estimate) * beta / std::sqrt(static_cast<double>(k) * p_hat * (2.0 * beta - 1.0));
    const double z = level == 0.0 ? 0.0 : normal_quantile(0.5 * (1.0 + level));
    ci.lower = estimate - z * ci.se;
    ci.upper = estimate + z * ci.se;
    return ci;
}

}  // namespace censtail
