#include "censtail/estimators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "censtail/io.hpp"

namespace censtail {

std::string_view to_string(EstimatorKind kind) noexcept {
    switch (kind) {
        case EstimatorKind::Hill: return "hill";
        case EstimatorKind::PHat: return "p-hat";
        case EstimatorKind::EFG: return "efg";
        case EstimatorKind::WormsKM: return "worms-km";
        case EstimatorKind::MnsNA: return "mns-na";
        case EstimatorKind::WeightedNA: return "weighted-na";
        case EstimatorKind::WeightedKM: return "weighted-km";
        case EstimatorKind::BW: return "bw";
    }
    return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
    for (auto kind : {EstimatorKind::Hill, EstimatorKind::PHat, EstimatorKind::EFG, EstimatorKind::WormsKM,
                      EstimatorKind::MnsNA, EstimatorKind::WeightedNA, EstimatorKind::WeightedKM,
                      EstimatorKind::BW}) {
        if (to_string(kind) == name) return kind;
    }
    throw DomainError("unknown estimator '" + std::string(name) + "'");
}

bool EstimatorSpec::uses_beta() const noexcept {
    return kind == EstimatorKind::WeightedNA || kind == EstimatorKind::WeightedKM || kind == EstimatorKind::BW;
}

void EstimatorSpec::validate() const {
    if (!std::isfinite(beta)) throw DomainError(label() + ": beta must be finite");
    if ((kind == EstimatorKind::WeightedNA || kind == EstimatorKind::WeightedKM) && beta <= 0.0) {
        throw DomainError(label() + ": beta must be > 0");
    }
}

std::vector<std::string> EstimatorSpec::warnings() const {
    std::vector<std::string> out;
    if ((kind == EstimatorKind::WeightedNA || kind == EstimatorKind::WeightedKM) && beta <= 1.0) {
        out.emplace_back("beta-le-one: consistency for p <= 1/2 requires beta > 1");
    }
    return out;
}

std::string EstimatorSpec::label() const {
    std::string out(to_string(kind));
    if (uses_beta()) out += "(" + format_double(beta) + ")";
    return out;
}

std::size_t EstimatorSpec::max_k(std::size_t n) const noexcept {
    if (n == 0) return 0;
    return kind == EstimatorKind::PHat ? n : n - 1;
}

std::size_t EstimatorSpec::min_k() const noexcept { return kind == EstimatorKind::BW ? 2 : 1; }

EstimatorSpec parse_estimator_spec(std::string_view text) {
    EstimatorSpec spec;
    const auto colon = text.find(':');
    spec.kind = parse_estimator_kind(text.substr(0, colon));
    if (colon != std::string_view::npos) {
        const auto beta_text = text.substr(colon + 1);
        const auto* first = beta_text.data();
        const auto* last = first + beta_text.size();
        const auto [ptr, ec] = std::from_chars(first, last, spec.beta);
        if (ec != std::errc{} || ptr != last) {
            throw DomainError("invalid beta in estimator spec '" + std::string(text) + "'");
        }
    } else if (spec.kind == EstimatorKind::WeightedNA || spec.kind == EstimatorKind::WeightedKM) {
        throw DomainError("estimator '" + std::string(text) + "' needs a beta, e.g. weighted-na:1.01");
    }
    spec.validate();
    return spec;
}

double box_cox(double u, double beta) {
    if (!(u >= 1.0)) throw DomainError("box_cox: u must be >= 1");
    const double lu = std::log(u);
    if (beta == 0.0) return lu;
    return -std::expm1(-beta * lu) / beta;
}

TailContext::TailContext(const RankedSample& ranked)
    : ranked_(ranked), n_(ranked.size()), km_(km_curve(ranked)), na_(na_curve(ranked)) {
    const std::size_t n = n_;
    spacing_.assign(n, 0.0);
    spacing_sum_.assign(n, 0.0);
    hill_sum_.assign(n, 0.0);
    worms_sum_.assign(n, 0.0);
    mns_sum_.assign(n, 0.0);
    uncensored_.assign(n + 1, 0);

    for (std::size_t j = 1; j <= n; ++j) uncensored_[j] = uncensored_[j - 1] + ranked_.upper_delta(j);

    double w_km = 0.0;
    double w_na = 0.0;
    for (std::size_t j = 1; j + 1 <= n; ++j) {
        const double s = std::log(ranked_.upper_z(j) / ranked_.upper_z(j + 1));
        spacing_[j] = s;
        spacing_sum_[j] = spacing_sum_[j - 1] + s;
        hill_sum_[j] = hill_sum_[j - 1] + static_cast<double>(j) * s;
        if (ranked_.upper_delta(j)) {
            const double inv = 1.0 / static_cast<double>(j);
            w_km += inv * std::exp(upper_log_survival(km_, j));
            w_na += inv * std::exp(upper_log_survival(na_, j));
        }
        worms_sum_[j] = worms_sum_[j - 1] + s * w_km;
        mns_sum_[j] = mns_sum_[j - 1] + s * w_na;
    }
}

// log F̄ₙ(Z_{n-i:n}); the product-identity ratio R(i,k) is
// exp(upper_log_survival(i) - upper_log_survival(k)).
double TailContext::upper_log_survival(const SurvivalCurve& curve, std::size_t i) const {
    return curve.log_values()[n_ - i];
}

double TailContext::log_excess(std::size_t i, std::size_t k) const {
    if (i < 1 || i > k + 1 || k + 1 > n_) throw DomainError("log_excess: index out of range");
    return spacing_sum_[k] - spacing_sum_[i - 1];
}

void TailContext::check_k(std::size_t k, std::size_t lo, std::size_t hi) const {
    if (k < lo || k > hi) {
        throw DomainError("k=" + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] for n=" + std::to_string(n_));
    }
}

double TailContext::hill(std::size_t k) const {
    check_k(k, 1, n_ - 1);
    return hill_sum_[k] / static_cast<double>(k);
}

double TailContext::p_hat(std::size_t k) const {
    check_k(k, 1, n_);
    return static_cast<double>(uncensored_[k]) / static_cast<double>(k);
}

double TailContext::efg(std::size_t k) const {
    check_k(k, 1, n_ - 1);
    if (uncensored_[k] == 0) throw AllCensoredTail("efg: top " + std::to_string(k) + " observations all censored");
    return hill(k) / p_hat(k);
}

double TailContext::worms_km(std::size_t k) const {
    check_k(k, 1, n_ - 1);
    return std::exp(-upper_log_survival(km_, k)) * worms_sum_[k];
}

double TailContext::mns_na(std::size_t k) const {
    check_k(k, 1, n_ - 1);
    return std::exp(-upper_log_survival(na_, k)) * mns_sum_[k];
}

double TailContext::weighted(const SurvivalCurve& curve, std::size_t k, double beta) const {
    check_k(k, 1, n_ - 1);
    if (!(beta > 0.0)) throw DomainError("weighted estimator: beta must be > 0");
    if (uncensored_[k] == 0) {
        throw AllCensoredTail("weighted estimator: top " + std::to_string(k) + " observations all censored");
    }
    const double power = beta / p_hat(k);
    const double log_base = upper_log_survival(curve, k);
    const double top = spacing_sum_[k];
    double sum = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        if (!ranked_.upper_delta(i)) continue;
        const double ratio = std::exp(power * (upper_log_survival(curve, i) - log_base));
        sum += ratio * (top - spacing_sum_[i - 1]) / static_cast<double>(i);
    }
    return power * power * sum;
}

double TailContext::weighted_na(std::size_t k, double beta) const { return weighted(na_, k, beta); }

double TailContext::weighted_km(std::size_t k, double beta) const { return weighted(km_, k, beta); }

double TailContext::bw(std::size_t k, double beta) const {
    check_k(k, 2, n_ - 1);
    if (!std::isfinite(beta)) throw DomainError("bw: beta must be finite");
    const double log_base = upper_log_survival(km_, k);
    const double top = spacing_sum_[k];
    double t = 0.0;
    for (std::size_t i = 2; i <= k; ++i) {
        const double ratio = std::exp(upper_log_survival(km_, i) - log_base);
        // κ(u_i) - κ(u_{i+1}) = u_{i+1}^{-β} (1 - e^{-β s_i}) / β
        double step = spacing_[i];
        if (beta != 0.0) {
            const double below = top - spacing_sum_[i];  // log u_{i+1}
            step = std::exp(-beta * below) * (-std::expm1(-beta * spacing_[i])) / beta;
        }
        t += ratio * step;
    }
    const double denom = 1.0 - beta * t;
    if (denom == 0.0) throw Degenerate("bw: 1 - beta*T vanishes");
    const double value = t / denom;
    if (!std::isfinite(value)) throw Degenerate("bw: non-finite estimate");
    return value;
}

EstimateResult TailContext::evaluate(const EstimatorSpec& spec, std::size_t k) const {
    if (n_ == 0 || k < spec.min_k() || k > spec.max_k(n_)) return {0.0, Reason::OutOfRange};
    const bool needs_uncensored = spec.kind == EstimatorKind::EFG || spec.kind == EstimatorKind::WeightedNA ||
                                  spec.kind == EstimatorKind::WeightedKM;
    if (needs_uncensored && uncensored_[k] == 0) return {0.0, Reason::AllCensoredTail};
    try {
        double v = 0.0;
        switch (spec.kind) {
            case EstimatorKind::Hill: v = hill(k); break;
            case EstimatorKind::PHat: v = p_hat(k); break;
            case EstimatorKind::EFG: v = efg(k); break;
            case EstimatorKind::WormsKM: v = worms_km(k); break;
            case EstimatorKind::MnsNA: v = mns_na(k); break;
            case EstimatorKind::WeightedNA: v = weighted_na(k, spec.beta); break;
            case EstimatorKind::WeightedKM: v = weighted_km(k, spec.beta); break;
            case EstimatorKind::BW: v = bw(k, spec.beta); break;
        }
        if (!std::isfinite(v)) return {0.0, Reason::NonFinite};
        return {v, Reason::Ok};
    } catch (const AllCensoredTail&) {
        return {0.0, Reason::AllCensoredTail};
    } catch (const Degenerate&) {
        return {0.0, Reason::Degenerate};
    } catch (const DomainError&) {
        return {0.0, Reason::OutOfRange};
    }
}

double hill(const RankedSample& ranked, std::size_t k) { return TailContext(ranked).hill(k); }
double p_hat(const RankedSample& ranked, std::size_t k) { return TailContext(ranked).p_hat(k); }
double efg(const RankedSample& ranked, std::size_t k) { return TailContext(ranked).efg(k); }
double weighted_na(const RankedSample& ranked, std::size_t k, double beta) {
    return TailContext(ranked).weighted_na(k, beta);
}
double weighted_km(const RankedSample& ranked, std::size_t k, double beta) {
    return TailContext(ranked).weighted_km(k, beta);
}
double mns_na(const RankedSample& ranked, std::size_t k) { return TailContext(ranked).mns_na(k); }
double worms_km(const RankedSample& ranked, std::size_t k) { return TailContext(ranked).worms_km(k); }
double bw(const RankedSample& ranked, std::size_t k, double beta) { return TailContext(ranked).bw(k, beta); }

std::optional<double> EstimatePath::at(std::size_t k) const {
    const auto it = std::lower_bound(k_values.begin(), k_values.end(), k);
    if (it == k_values.end() || *it != k) return std::nullopt;
    return estimates[static_cast<std::size_t>(it - k_values.begin())];
}

EstimatePath path(const TailContext& context, const EstimatorSpec& spec, std::size_t k_min, std::size_t k_max) {
    spec.validate();
    const std::size_t n = context.size();
    if (k_min < 1 || k_min > k_max) throw DomainError("path: empty k range");
    if (k_max > spec.max_k(n)) {
        throw DomainError("path: k_max=" + std::to_string(k_max) + " exceeds " +
                          std::to_string(spec.max_k(n)) + " for n=" + std::to_string(n));
    }
    EstimatePath out;
    out.estimator = spec;
    out.warnings = spec.warnings();
    out.k_values.reserve(k_max - k_min + 1);
    out.estimates.reserve(k_max - k_min + 1);
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const auto r = context.evaluate(spec, k);
        if (r.ok()) {
            out.k_values.push_back(k);
            out.estimates.push_back(r.value);
        } else {
            out.failures.push_back({k, r.reason});
        }
    }
    return out;
}

EstimatePath path(const RankedSample& ranked, const EstimatorSpec& spec, std::size_t k_min, std::size_t k_max) {
    return path(TailContext(ranked), spec, k_min, k_max);
}

}  // namespace censtail
