#pragma once

// Limiting bias and variance of the weighted estimators and the plug-in
// normal confidence interval built from them.

#include <cstddef>

namespace censtail {

struct AsymptoticParams {
    double gamma1 = 1.0;  // tail index, > 0
    double p = 0.5;       // uncensored tail proportion, in (0, 1]
    double beta = 1.0;    // tuning parameter
    double tau1 = 0.0;    // second-order parameter, <= 0
    double lambda = 0.0;  // limit of sqrt(k) A1(h)

    void validate() const;
};

/// γ₁²β² / (p(2β - 1)); requires β > 1/2.
double sigma2_beta(const AsymptoticParams& params);

/// λβ / (β - pτ₁).
double mu_beta(const AsymptoticParams& params);

/// σ²_β - σ²_p, the variance change relative to the unweighted Nelson-Aalen
/// estimator (β = p).  Weak censoring only (p > 1/2).
double variance_gap_mns(const AsymptoticParams& params);

/// Asymptotic variance of the Box-Cox weighted KM estimator:
/// γ₁² p (1+βγ₁)² / (2p(1+βγ₁) - 1).
double bw_variance(const AsymptoticParams& params);

/// Asymptotic variance of the Worms KM estimator: γ₁² p / (2p - 1).
double worms_variance(const AsymptoticParams& params);

/// bw_variance - worms_variance in closed form,
///   γ₁² · pβγ₁/(2p-1) · ((2p-1)βγ₁ - 2(1-p)) / (2p(1+βγ₁) - 1).
double variance_gap_bw(const AsymptoticParams& params);

/// Standard normal quantile Φ⁻¹(prob), prob in (0, 1).
double normal_quantile(double prob);

struct CiResult {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
    double se = 0.0;
};

/// point ± z_{(1+level)/2} · γ̂β / sqrt(k p̂ (2β-1)).  Asymptotic bias is
/// ignored (λ unknown).  level in [0, 1); level 0 gives a degenerate
/// interval.
CiResult confidence_interval(double estimate, std::size_t k, double p_hat, double beta, double level);

}  // namespace censtail
