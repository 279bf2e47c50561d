#pragma once

// Kaplan-Meier and Nelson-Aalen survival curves for right-censored samples.
//
// Conventions used throughout the library:
//   * "lower" ranks i = 1..n index the ascending order statistics Z_{i:n};
//   * "upper" ranks i = 1..n index from the top, i.e. Z_{n-i+1:n}.
// Curves keep cumulative log-survival sums so that ratios of survival values
// are differences of sums and never divisions of small numbers.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace censtail {

/// Raw observations (z_j, delta_j), z = min(X, C), delta = 1{X <= C}.
struct CensoredSample {
    std::vector<double> z;
    std::vector<std::uint8_t> delta;

    std::size_t size() const noexcept { return z.size(); }
    std::size_t censored_count() const noexcept;

    /// Throws DomainError on mismatched lengths, z <= 0, non-finite z or
    /// delta outside {0,1}.
    void validate() const;
};

/// Ascending order statistics with their concomitant censoring indicators.
struct RankedSample {
    std::vector<double> z;
    std::vector<std::uint8_t> delta;

    std::size_t size() const noexcept { return z.size(); }

    /// Z_{n-i+1:n} for upper rank i in [1, n].
    double upper_z(std::size_t i) const { return z[z.size() - i]; }
    /// delta_[n-i+1:n] for upper rank i in [1, n].
    std::uint8_t upper_delta(std::size_t i) const { return delta[delta.size() - i]; }
};

/// Stable sort by z; ties keep their original relative order.  Throws
/// DomainError for an empty or invalid sample.
RankedSample rank(const CensoredSample& sample);

enum class CurveKind { KaplanMeier, NelsonAalen };

/// Step-function estimate of the survival function at the order statistics.
class SurvivalCurve {
public:
    SurvivalCurve(CurveKind kind, std::vector<double> support, std::vector<double> log_survival);

    CurveKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return support_.size(); }
    std::span<const double> support() const noexcept { return support_; }

    /// log F̄ₙ(Z_{i:n}) for lower rank i in [0, n]; i = 0 gives 0 (F̄ = 1
    /// left of the sample).  May be -inf for KM at i = n.
    double log_value(std::size_t i) const;
    /// F̄ₙ(Z_{i:n}) for lower rank i in [1, n].
    double value(std::size_t i) const;

    /// All cumulative log sums, index 0..n (index 0 is the empty sum).
    std::span<const double> log_values() const noexcept { return log_survival_; }

private:
    CurveKind kind_;
    std::vector<double> support_;
    std::vector<double> log_survival_;
};

SurvivalCurve km_curve(const RankedSample& ranked);
SurvivalCurve na_curve(const RankedSample& ranked);

/// Product-identity tail ratio for upper ranks 1 <= i <= k <= n-1:
///   NA: prod_{j=i+1}^{k} exp(-delta_[n-j+1:n]/j)
///   KM: prod_{j=i+1}^{k} (1 - delta_[n-j+1:n]/j)
/// This equals F̄ₙ(Z_{n-i:n}) / F̄ₙ(Z_{n-k:n}), the survival ratio taken just
/// below Z_{n-i+1:n}.  Returns 1 when i == k.
double tail_ratio(const SurvivalCurve& curve, std::size_t i, std::size_t k);

/// log of tail_ratio, a difference of cumulative sums.
double log_tail_ratio(const SurvivalCurve& curve, std::size_t i, std::size_t k);

/// sup over lower ranks i < n of |F̄^KM(Z_{i:n}) / F̄^NA(Z_{i:n}) - 1|.
double km_na_divergence(const RankedSample& ranked);

}  // namespace censtail
