#include "censtail/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "censtail/error.hpp"

namespace censtail {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite and > 0");
    }
}

// 1 - x^{-1/γ}(1 + 1/log x) written in t = log x.
double modified_pareto_cdf_log(double gamma, double t) {
    return -std::expm1(-t / gamma) - std::exp(-t / gamma) / t;
}

double modified_pareto_quantile(double gamma, double u) {
    // F(e+) may already exceed u: atom at e.
    if (modified_pareto_cdf_log(gamma, 1.0) >= u) return std::numbers::e;
    double lo = 1.0;
    double hi = 2.0;
    while (modified_pareto_cdf_log(gamma, hi) < u) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw DomainError("modified Pareto quantile: bracket overflow");
    }
    // Bisection in log x, so the stopping width is a relative tolerance on x.
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (modified_pareto_cdf_log(gamma, mid) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::Burr: return "burr";
        case Family::Frechet: return "frechet";
        case Family::Pareto: return "pareto";
        case Family::ModifiedPareto: return "modified-pareto";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "burr") return Family::Burr;
    if (name == "frechet") return Family::Frechet;
    if (name == "pareto") return Family::Pareto;
    if (name == "modified-pareto") return Family::ModifiedPareto;
    throw DomainError("unknown distribution family '" + std::string(name) + "'");
}

HeavyTailModel HeavyTailModel::burr(double zeta, double eta) {
    HeavyTailModel m{Family::Burr, zeta, eta};
    m.validate();
    return m;
}

HeavyTailModel HeavyTailModel::frechet(double zeta) {
    HeavyTailModel m{Family::Frechet, zeta, 1.0};
    m.validate();
    return m;
}

HeavyTailModel HeavyTailModel::pareto(double zeta) {
    HeavyTailModel m{Family::Pareto, zeta, 1.0};
    m.validate();
    return m;
}

HeavyTailModel HeavyTailModel::modified_pareto(double gamma1) {
    HeavyTailModel m{Family::ModifiedPareto, gamma1, 1.0};
    m.validate();
    return m;
}

HeavyTailModel HeavyTailModel::with_tail_index(double gamma) const {
    HeavyTailModel m = *this;
    m.tail_index = gamma;
    m.validate();
    return m;
}

void HeavyTailModel::validate() const {
    require_positive(tail_index, "tail index");
    if (family == Family::Burr) require_positive(eta, "Burr eta");
}

double cdf(const HeavyTailModel& model, double x) {
    const double g = model.tail_index;
    switch (model.family) {
        case Family::Burr:
            if (x <= 0.0) return 0.0;
            return -std::expm1(-(model.eta / g) * std::log1p(std::pow(x, 1.0 / model.eta)));
        case Family::Frechet:
            if (x <= 0.0) return 0.0;
            return std::exp(-std::pow(x, -1.0 / g));
        case Family::Pareto:
            if (x <= 1.0) return 0.0;
            return -std::expm1(-std::log(x) / g);
        case Family::ModifiedPareto:
            if (x < std::numbers::e) return 0.0;
            return std::max(0.0, modified_pareto_cdf_log(g, std::log(x)));
    }
    return 0.0;
}

double quantile(const HeavyTailModel& model, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
    const double g = model.tail_index;
    switch (model.family) {
        case Family::Burr:
            // ((1-u)^{-ζ/η} - 1)^η
            return std::pow(std::expm1(-(g / model.eta) * std::log1p(-u)), model.eta);
        case Family::Frechet:
            return std::pow(-std::log(u), -g);
        case Family::Pareto:
            return std::exp(-g * std::log1p(-u));
        case Family::ModifiedPareto:
            return modified_pareto_quantile(g, u);
    }
    return 0.0;
}

double solve_censor_index(double gamma1, double p) {
    require_positive(gamma1, "gamma1");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
    return p * gamma1 / (1.0 - p);
}

CensoringScenario::CensoringScenario(HeavyTailModel target, std::optional<HeavyTailModel> censor)
    : target_(target), censor_(censor), p_(1.0) {
    target_.validate();
    if (censor_) {
        censor_->validate();
        p_ = censor_->tail_index / (target_.tail_index + censor_->tail_index);
    }
}

CensoringScenario CensoringScenario::same_family(Family family, double gamma1, double p, double eta) {
    const HeavyTailModel target{family, gamma1, eta};
    return CensoringScenario(target, target.with_tail_index(solve_censor_index(gamma1, p)));
}

CensoringScenario CensoringScenario::uncensored(HeavyTailModel target) {
    return CensoringScenario(target, std::nullopt);
}

Seed Seed::child(std::uint64_t replication) const noexcept {
    return Seed{splitmix64(splitmix64(master) ^ splitmix64(replication + 0x632BE59BD9B4E019ULL))};
}

double open_unit(std::uint64_t bits) noexcept {
    // 52-bit grid shifted by half a step: never 0, never 1, exact in double.
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

CensoredSample generate(const CensoringScenario& scenario, std::size_t n, Seed seed) {
    if (n == 0) throw DomainError("generate: sample size must be >= 1");
    std::mt19937_64 engine(splitmix64(seed.master));
    CensoredSample sample;
    sample.z.resize(n);
    sample.delta.resize(n);
    const auto& censor = scenario.censor();
    for (std::size_t j = 0; j < n; ++j) {
        const double x = quantile(scenario.target(), open_unit(engine()));
        if (censor) {
            const double c = quantile(*censor, open_unit(engine()));
            sample.z[j] = std::min(x, c);
            sample.delta[j] = x <= c ? 1 : 0;
        } else {
            sample.z[j] = x;
            sample.delta[j] = 1;
        }
    }
    return sample;
}

}  // namespace censtail
