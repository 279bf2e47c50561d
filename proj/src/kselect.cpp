#include "censtail/kselect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

namespace censtail {

void KSelectConfig::validate() const {
    if (!(nu >= 0.0 && nu <= 0.5)) throw DomainError("kselect: nu must lie in [0, 1/2]");
    if (k_min < 2) throw DomainError("kselect: k_min must be >= 2");
    if (k_min > k_max) throw DomainError("kselect: k_min > k_max");
}

namespace {

// Running median of a growing sequence.
class RunningMedian {
public:
    void push(double x) {
        if (low_.empty() || x <= low_.top()) {
            low_.push(x);
        } else {
            high_.push(x);
        }
        if (low_.size() > high_.size() + 1) {
            high_.push(low_.top());
            low_.pop();
        } else if (high_.size() > low_.size()) {
            low_.push(high_.top());
            high_.pop();
        }
    }

    double median() const {
        if (low_.size() == high_.size()) return 0.5 * (low_.top() + high_.top());
        return low_.top();
    }

private:
    std::priority_queue<double> low_;
    std::priority_queue<double, std::vector<double>, std::greater<>> high_;
};

}  // namespace

CriterionCurve reiss_thomas_curve(const EstimatePath& path, const KSelectConfig& config) {
    config.validate();
    CriterionCurve curve;
    if (path.k_values.empty()) return curve;

    const std::size_t first = path.k_values.front();
    // First failure after the sequence starts cuts the prefix.
    std::size_t stop = path.k_values.back() + 1;
    for (const auto& f : path.failures) {
        if (f.k > first) stop = std::min(stop, f.k);
    }
    // Contiguity of successes up to `stop`.
    std::size_t count = 0;
    while (count < path.k_values.size() && path.k_values[count] < stop) {
        if (path.k_values[count] != first + count) {
            stop = first + count;
            break;
        }
        ++count;
    }

    std::vector<double> weights(count);
    for (std::size_t j = 0; j < count; ++j) {
        weights[j] = std::pow(static_cast<double>(path.k_values[j]), config.nu);
    }

    RunningMedian running;
    for (std::size_t j = 0; j < count; ++j) {
        running.push(path.estimates[j]);
        const std::size_t k = path.k_values[j];
        if (k < config.k_min || k > config.k_max) continue;
        const double m = running.median();
        double sum = 0.0;
        for (std::size_t i = 0; i <= j; ++i) sum += weights[i] * std::abs(path.estimates[i] - m);
        curve.k_values.push_back(k);
        curve.values.push_back(sum / static_cast<double>(k));
    }
    return curve;
}

KSelection reiss_thomas(const EstimatePath& path, const KSelectConfig& config) {
    const auto curve = reiss_thomas_curve(path, config);
    if (curve.k_values.empty()) throw DomainError("kselect: no admissible k in the path");
    std::size_t best = 0;
    for (std::size_t j = 1; j < curve.values.size(); ++j) {
        if (curve.values[j] < curve.values[best]) best = j;
    }
    return {curve.k_values[best], curve.values[best]};
}

}  // namespace censtail
