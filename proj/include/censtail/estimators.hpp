#pragma once

// Tail-index estimators for right-censored Pareto-type data.
//
// All estimators are functions of the top k+1 order statistics
// Z_{n-k:n} <= ... <= Z_{n:n} and their concomitant indicators.  Index i
// below is always an upper rank (i = 1 is the sample maximum).
//
//   hill         (1/k) Σ log(Z_{n-i+1:n}/Z_{n-k:n})
//   p_hat        (1/k) Σ δ_[n-i+1:n]
//   efg          hill / p_hat
//   worms_km     Σ (δ_i/i) R^KM(i,k) log(Z_{n-i+1:n}/Z_{n-k:n})
//   mns_na       Σ (δ_i/i) R^NA(i,k) log(Z_{n-i+1:n}/Z_{n-k:n})
//   weighted_*   (β/p̂ₖ)² Σ (δ_i/i) R(i,k)^{β/p̂ₖ} log(Z_{n-i+1:n}/Z_{n-k:n})
//   bw           T/(1 - βT),  T = Σ_{i=2}^{k} R^KM(i,k) [κ(u_i) - κ(u_{i+1})]
//
// where R(i,k) is the product-identity tail ratio of survival.hpp and
// u_i = Z_{n-i+1:n}/Z_{n-k:n}.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "censtail/error.hpp"
#include "censtail/survival.hpp"

namespace censtail {

enum class EstimatorKind { Hill, PHat, EFG, WormsKM, MnsNA, WeightedNA, WeightedKM, BW };

std::string_view to_string(EstimatorKind kind) noexcept;
/// Accepts the CLI names: hill, p-hat, efg, worms-km, mns-na, weighted-na,
/// weighted-km, bw.
EstimatorKind parse_estimator_kind(std::string_view name);

struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::Hill;
    double beta = 0.0;  // used by WeightedNA, WeightedKM, BW

    bool uses_beta() const noexcept;
    /// Hard validation; throws DomainError (β <= 0 for the weighted pair).
    void validate() const;
    /// Soft diagnostics, e.g. β <= 1 on a weighted estimator.
    std::vector<std::string> warnings() const;
    /// "hill", "weighted-na(1.01)", ...
    std::string label() const;

    /// Largest admissible k for a sample of size n (n for p-hat, n-1 otherwise).
    std::size_t max_k(std::size_t n) const noexcept;
    /// Smallest admissible k (2 for bw, 1 otherwise).
    std::size_t min_k() const noexcept;

    friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

/// Parses "name" or "name:beta".
EstimatorSpec parse_estimator_spec(std::string_view text);

struct EstimateResult {
    double value = 0.0;
    Reason reason = Reason::Ok;

    bool ok() const noexcept { return reason == Reason::Ok; }
};

/// Shared precomputation over one ranked sample: KM and NA curves, upper
/// log-spacings and the prefix sums that make Hill, p̂, EFG, Worms and MNS
/// O(1) per k.  The weighted estimators and BW cost O(k) per k because
/// their exponent β/p̂ₖ (or the Box-Cox base point) changes with k.
class TailContext {
public:
    explicit TailContext(const RankedSample& ranked);

    std::size_t size() const noexcept { return n_; }
    const RankedSample& ranked() const noexcept { return ranked_; }
    const SurvivalCurve& km() const noexcept { return km_; }
    const SurvivalCurve& na() const noexcept { return na_; }

    /// Non-throwing evaluation; errors become reason codes.
    EstimateResult evaluate(const EstimatorSpec& spec, std::size_t k) const;

    double hill(std::size_t k) const;
    double p_hat(std::size_t k) const;
    double efg(std::size_t k) const;
    double worms_km(std::size_t k) const;
    double mns_na(std::size_t k) const;
    double weighted_na(std::size_t k, double beta) const;
    double weighted_km(std::size_t k, double beta) const;
    double bw(std::size_t k, double beta) const;

    /// log(Z_{n-i+1:n} / Z_{n-k:n}) for 1 <= i <= k+1.
    double log_excess(std::size_t i, std::size_t k) const;

private:
    void check_k(std::size_t k, std::size_t lo, std::size_t hi) const;
    double weighted(const SurvivalCurve& curve, std::size_t k, double beta) const;
    double upper_log_survival(const SurvivalCurve& curve, std::size_t i) const;

    RankedSample ranked_;
    std::size_t n_;
    SurvivalCurve km_;
    SurvivalCurve na_;
    // Upper-indexed arrays, entry 0 unused unless noted.
    std::vector<double> spacing_;        // s_j = log(Z_{n-j+1:n}/Z_{n-j:n}), j = 1..n-1
    std::vector<double> spacing_sum_;    // P_m = Σ_{j<=m} s_j, m = 0..n-1
    std::vector<double> hill_sum_;       // Σ_{j<=m} j s_j
    std::vector<std::size_t> uncensored_;  // Σ_{j<=m} δ_j, m = 0..n
    std::vector<double> worms_sum_;      // Σ_{j<=m} s_j W^KM_j
    std::vector<double> mns_sum_;        // Σ_{j<=m} s_j W^NA_j
};

double hill(const RankedSample& ranked, std::size_t k);
double p_hat(const RankedSample& ranked, std::size_t k);
double efg(const RankedSample& ranked, std::size_t k);
double weighted_na(const RankedSample& ranked, std::size_t k, double beta);
double weighted_km(const RankedSample& ranked, std::size_t k, double beta);
double mns_na(const RankedSample& ranked, std::size_t k);
double worms_km(const RankedSample& ranked, std::size_t k);
double bw(const RankedSample& ranked, std::size_t k, double beta);

/// κ_{-β}(u) = ∫₁ᵘ t^{-β-1} dt = (1 - u^{-β})/β, log u at β = 0.
double box_cox(double u, double beta);

struct PathFailure {
    std::size_t k = 0;
    Reason reason = Reason::Ok;
};

/// Estimates over a contiguous k range.  Failed k's are listed in
/// `failures` rather than dropped silently.
struct EstimatePath {
    EstimatorSpec estimator;
    std::vector<std::size_t> k_values;
    std::vector<double> estimates;
    std::vector<PathFailure> failures;
    std::vector<std::string> warnings;

    /// Estimate at k, or nullopt when k failed or is outside the path.
    std::optional<double> at(std::size_t k) const;
};

EstimatePath path(const TailContext& context, const EstimatorSpec& spec, std::size_t k_min, std::size_t k_max);
EstimatePath path(const RankedSample& ranked, const EstimatorSpec& spec, std::size_t k_min, std::size_t k_max);

}  // namespace censtail
