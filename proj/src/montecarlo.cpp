#include "censtail/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <tuple>

#include "censtail/error.hpp"

namespace censtail {

void McConfig::validate() const {
    if (n < 2) throw ConfigError("montecarlo: n must be >= 2");
    if (replications < 1) throw ConfigError("montecarlo: replications must be >= 1");
    if (estimators.empty()) throw ConfigError("montecarlo: at least one estimator required");
    if (k_grid.empty()) throw ConfigError("montecarlo: k_grid must be nonempty");
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
        if (k_grid[j] < 1 || k_grid[j] > n - 1) {
            throw ConfigError("montecarlo: k=" + std::to_string(k_grid[j]) + " outside [1, n-1]");
        }
        if (j > 0 && k_grid[j] <= k_grid[j - 1]) throw ConfigError("montecarlo: k_grid must be strictly increasing");
    }
    for (const auto& e : estimators) {
        try {
            e.validate();
        } catch (const DomainError& err) {
            throw ConfigError(std::string("montecarlo: ") + err.what());
        }
    }
}

std::vector<std::size_t> make_k_grid(std::size_t n, std::size_t k_min, std::size_t k_max, std::size_t stride) {
    if (stride == 0) throw ConfigError("k grid: stride must be >= 1");
    std::vector<std::size_t> grid;
    if (n < 2) return grid;
    const std::size_t hi = std::min(k_max, n - 1);
    for (std::size_t k = std::max<std::size_t>(k_min, 1); k <= hi; k += stride) grid.push_back(k);
    return grid;
}

const McCell& McSummary::cell(std::size_t estimator, std::size_t k) const {
    const auto it = std::lower_bound(k_grid.begin(), k_grid.end(), k);
    if (it == k_grid.end() || *it != k) throw DomainError("McSummary: k not on grid");
    return cells.at(estimator)[static_cast<std::size_t>(it - k_grid.begin())];
}

namespace {

// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct CellAccumulator {
    std::size_t count = 0;
    std::size_t failures = 0;
    double mean = 0.0;  // Welford running mean / M2 of the estimate
    double m2 = 0.0;
    CompensatedSum error_sum;
    CompensatedSum squared_error_sum;

    void add(double estimate, double truth) noexcept {
        ++count;
        const double delta = estimate - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (estimate - mean);
        const double e = estimate - truth;
        error_sum.add(e);
        squared_error_sum.add(e * e);
    }

    McCell finish() const noexcept {
        McCell c;
        c.successes = count;
        c.failures = failures;
        if (count == 0) {
            c.mean_estimate = c.abs_bias = c.mse = c.variance = std::nan("");
            return c;
        }
        const double m = static_cast<double>(count);
        c.mean_estimate = mean;
        c.abs_bias = std::abs(error_sum.value() / m);
        c.mse = squared_error_sum.value() / m;
        c.variance = m2 / m;
        return c;
    }
};

}  // namespace

McSummary run(const McConfig& config) {
    config.validate();
    const std::size_t n_est = config.estimators.size();
    const std::size_t n_k = config.k_grid.size();
    const std::size_t cells_per_rep = n_est * n_k;
    const unsigned workers = std::max(1u, config.workers);
    const std::size_t block = std::max<std::size_t>(64, 8 * static_cast<std::size_t>(workers));
    const double truth = config.scenario.gamma1();

    std::vector<CellAccumulator> acc(cells_per_rep);
    std::vector<EstimateResult> buffer(block * cells_per_rep);

    auto simulate_one = [&](std::size_t r, EstimateResult* out) {
        const auto sample = generate(config.scenario, config.n, config.seed.child(r));
        const TailContext context(rank(sample));
        for (std::size_t e = 0; e < n_est; ++e) {
            for (std::size_t j = 0; j < n_k; ++j) {
                out[e * n_k + j] = context.evaluate(config.estimators[e], config.k_grid[j]);
            }
        }
    };

    for (std::size_t start = 0; start < config.replications; start += block) {
        const std::size_t stop = std::min(config.replications, start + block);
        std::atomic<std::size_t> next{start};
        auto work = [&] {
            for (std::size_t r = next++; r < stop; r = next++) {
                simulate_one(r, buffer.data() + (r - start) * cells_per_rep);
            }
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        }
        // Merge strictly in replication order.
        for (std::size_t r = start; r < stop; ++r) {
            const EstimateResult* results = buffer.data() + (r - start) * cells_per_rep;
            for (std::size_t c = 0; c < cells_per_rep; ++c) {
                if (results[c].ok()) {
                    acc[c].add(results[c].value, truth);
                } else {
                    ++acc[c].failures;
                }
            }
        }
    }

    McSummary summary;
    summary.gamma1 = truth;
    summary.replications = config.replications;
    summary.estimators = config.estimators;
    summary.k_grid = config.k_grid;
    summary.cells.assign(n_est, std::vector<McCell>(n_k));
    for (std::size_t e = 0; e < n_est; ++e) {
        for (std::size_t j = 0; j < n_k; ++j) summary.cells[e][j] = acc[e * n_k + j].finish();
    }
    return summary;
}

std::vector<FigureRow> figure_table(const McSummary& summary) {
    if (summary.estimators.empty() || summary.k_grid.empty()) throw DomainError("figure_table: empty summary");
    std::vector<FigureRow> rows;
    rows.reserve(summary.estimators.size() * summary.k_grid.size());
    for (std::size_t e = 0; e < summary.estimators.size(); ++e) {
        const auto& spec = summary.estimators[e];
        for (std::size_t j = 0; j < summary.k_grid.size(); ++j) {
            const auto& c = summary.cells[e][j];
            FigureRow row;
            row.k = summary.k_grid[j];
            row.estimator_id = std::string(to_string(spec.kind));
            if (spec.uses_beta()) row.beta = spec.beta;
            row.abs_bias = c.abs_bias;
            row.mse = c.mse;
            row.failures = c.failures;
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const FigureRow& a, const FigureRow& b) {
        const double ba = a.beta.value_or(-HUGE_VAL);
        const double bb = b.beta.value_or(-HUGE_VAL);
        return std::tie(a.estimator_id, ba, a.k) < std::tie(b.estimator_id, bb, b.k);
    });
    return rows;
}

}  // namespace censtail
