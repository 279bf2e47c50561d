#include "censtail/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "censtail/error.hpp"

namespace censtail {

std::size_t CensoredSample::censored_count() const noexcept {
    return static_cast<std::size_t>(std::count(delta.begin(), delta.end(), std::uint8_t{0}));
}

void CensoredSample::validate() const {
    if (z.size() != delta.size()) {
        throw DomainError("sample: z and delta lengths differ (" + std::to_string(z.size()) + " vs " +
                          std::to_string(delta.size()) + ")");
    }
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (!std::isfinite(z[j]) || z[j] <= 0.0) {
            throw DomainError("sample: observation " + std::to_string(j) + " has non-positive or non-finite z");
        }
        if (delta[j] > 1) {
            throw DomainError("sample: observation " + std::to_string(j) + " has delta outside {0,1}");
        }
    }
}

RankedSample rank(const CensoredSample& sample) {
    if (sample.size() == 0) throw DomainError("rank: empty sample");
    sample.validate();

    std::vector<std::size_t> order(sample.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sample.z[a] < sample.z[b]; });

    RankedSample ranked;
    ranked.z.reserve(order.size());
    ranked.delta.reserve(order.size());
    for (std::size_t idx : order) {
        ranked.z.push_back(sample.z[idx]);
        ranked.delta.push_back(sample.delta[idx]);
    }
    return ranked;
}

SurvivalCurve::SurvivalCurve(CurveKind kind, std::vector<double> support, std::vector<double> log_survival)
    : kind_(kind), support_(std::move(support)), log_survival_(std::move(log_survival)) {
    if (log_survival_.size() != support_.size() + 1) {
        throw DomainError("SurvivalCurve: expected n+1 cumulative sums");
    }
}

double SurvivalCurve::log_value(std::size_t i) const {
    if (i > support_.size()) throw DomainError("SurvivalCurve: rank out of range");
    return log_survival_[i];
}

double SurvivalCurve::value(std::size_t i) const {
    if (i == 0 || i > support_.size()) throw DomainError("SurvivalCurve: rank out of range");
    return std::exp(log_survival_[i]);
}

namespace {

template <class Term>
SurvivalCurve build_curve(CurveKind kind, const RankedSample& ranked, Term term) {
    const std::size_t n = ranked.size();
    if (n == 0) throw DomainError("survival curve: empty sample");
    std::vector<double> logs(n + 1);
    logs[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double at_risk = static_cast<double>(n - i + 1);
        logs[i] = logs[i - 1] + (ranked.delta[i - 1] ? term(at_risk) : 0.0);
    }
    return SurvivalCurve(kind, ranked.z, std::move(logs));
}

}  // namespace

SurvivalCurve km_curve(const RankedSample& ranked) {
    // log(1 - 1/m); -inf for m == 1.
    return build_curve(CurveKind::KaplanMeier, ranked, [](double m) { return std::log1p(-1.0 / m); });
}

SurvivalCurve na_curve(const RankedSample& ranked) {
    return build_curve(CurveKind::NelsonAalen, ranked, [](double m) { return -1.0 / m; });
}

double log_tail_ratio(const SurvivalCurve& curve, std::size_t i, std::size_t k) {
    const std::size_t n = curve.size();
    if (i < 1 || i > k || k + 1 > n) {
        throw DomainError("tail_ratio: need 1 <= i <= k <= n-1 (i=" + std::to_string(i) +
                          ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    }
    if (i == k) return 0.0;
    const auto logs = curve.log_values();
    return logs[n - i] - logs[n - k];
}

double tail_ratio(const SurvivalCurve& curve, std::size_t i, std::size_t k) {
    return std::exp(log_tail_ratio(curve, i, k));
}

double km_na_divergence(const RankedSample& ranked) {
    const auto km = km_curve(ranked);
    const auto na = na_curve(ranked);
    double sup = 0.0;
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        const double gap = std::abs(std::expm1(km.log_value(i) - na.log_value(i)));
        sup = std::max(sup, gap);
    }
    return sup;
}

}  // namespace censtail
