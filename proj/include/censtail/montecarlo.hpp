#pragma once

// Replication engine: per-(estimator, k) bias and MSE over R independent
// censored samples of one scenario.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "censtail/estimators.hpp"
#include "censtail/sampling.hpp"

namespace censtail {

struct McConfig {
    CensoringScenario scenario = CensoringScenario::uncensored(HeavyTailModel::pareto(1.0));
    std::size_t n = 1000;
    std::size_t replications = 1;
    std::vector<EstimatorSpec> estimators;
    std::vector<std::size_t> k_grid;  // strictly increasing, within [1, n-1]
    Seed seed;
    unsigned workers = 1;

    void validate() const;
};

/// Every k in [k_min, min(k_max, n-1)] with the given stride.
std::vector<std::size_t> make_k_grid(std::size_t n, std::size_t k_min, std::size_t k_max, std::size_t stride = 1);

struct McCell {
    double mean_estimate = 0.0;
    double abs_bias = 0.0;  // |mean - γ₁|
    double mse = 0.0;       // mean (γ̂ - γ₁)²
    double variance = 0.0;  // population variance of γ̂ over successful replications
    std::size_t successes = 0;
    std::size_t failures = 0;
};

struct McSummary {
    double gamma1 = 0.0;
    std::size_t replications = 0;
    std::vector<EstimatorSpec> estimators;
    std::vector<std::size_t> k_grid;
    std::vector<std::vector<McCell>> cells;  // [estimator][k index]

    const McCell& cell(std::size_t estimator, std::size_t k) const;
};

/// Deterministic given config.seed, whatever the worker count: replication
/// r always uses config.seed.child(r) and results are merged in r order.
McSummary run(const McConfig& config);

struct FigureRow {
    std::size_t k = 0;
    std::string estimator_id;
    std::optional<double> beta;
    double abs_bias = 0.0;
    double mse = 0.0;
    std::size_t failures = 0;

    friend bool operator==(const FigureRow&, const FigureRow&) = default;
};

/// One row per (estimator, k), sorted by (estimator_id, beta, k).
std::vector<FigureRow> figure_table(const McSummary& summary);

}  // namespace censtail
