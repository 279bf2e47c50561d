#pragma once

// Heavy-tailed models, inverse-transform sampling and the random censoring
// mechanism Z = min(X, C), delta = 1{X <= C}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "censtail/survival.hpp"

namespace censtail {

enum class Family { Burr, Frechet, Pareto, ModifiedPareto };

std::string_view to_string(Family family) noexcept;
/// Accepts "burr", "frechet", "pareto", "modified-pareto".
Family parse_family(std::string_view name);

/// A Pareto-type distribution identified by its family and tail index.
///
///   Burr(ζ, η):        F(x) = 1 - (1 + x^{1/η})^{-η/ζ},  x > 0
///   Fréchet(ζ):        F(x) = exp(-x^{-1/ζ}),             x > 0
///   Pareto(ζ):         F(x) = 1 - x^{-1/ζ},               x >= 1
///   ModifiedPareto(γ): F(x) = 1 - x^{-1/γ}(1 + 1/log x),  x > e
///
/// For ModifiedPareto the expression at x = e+ equals 1 - 2e^{-1/γ}; when
/// that is positive the remaining mass sits as an atom at e, and when it is
/// negative the cdf is clamped at 0.
struct HeavyTailModel {
    Family family = Family::Pareto;
    double tail_index = 1.0;
    double eta = 1.0;  // Burr second shape; ignored elsewhere

    static HeavyTailModel burr(double zeta, double eta);
    static HeavyTailModel frechet(double zeta);
    static HeavyTailModel pareto(double zeta);
    static HeavyTailModel modified_pareto(double gamma1);

    /// Same family and shape, different tail index.
    HeavyTailModel with_tail_index(double gamma) const;

    void validate() const;
};

double cdf(const HeavyTailModel& model, double x);

/// Inverse cdf on the open interval (0, 1).  Throws DomainError otherwise.
double quantile(const HeavyTailModel& model, double u);

/// γ₂ = p γ₁ / (1 - p), the censoring tail index giving uncensored tail
/// proportion p.
double solve_censor_index(double gamma1, double p);

/// A target model censored by an independent censoring model.  An absent
/// censor means C = +inf (no censoring, p = 1).
class CensoringScenario {
public:
    CensoringScenario(HeavyTailModel target, std::optional<HeavyTailModel> censor);

    /// Target of `family` with tail index gamma1, censored by the same family
    /// with the tail index solved from p.
    static CensoringScenario same_family(Family family, double gamma1, double p, double eta = 1.0);
    static CensoringScenario uncensored(HeavyTailModel target);

    const HeavyTailModel& target() const noexcept { return target_; }
    const std::optional<HeavyTailModel>& censor() const noexcept { return censor_; }
    double gamma1() const noexcept { return target_.tail_index; }
    /// γ₂/(γ₁+γ₂), or 1 without censoring.
    double p() const noexcept { return p_; }

private:
    HeavyTailModel target_;
    std::optional<HeavyTailModel> censor_;
    double p_;
};

/// Master seed; replication r uses child(r).
struct Seed {
    std::uint64_t master = 0;

    Seed child(std::uint64_t replication) const noexcept;
};

/// Draw from the open interval (0, 1) given 64 random bits.
double open_unit(std::uint64_t bits) noexcept;

/// n i.i.d. censored pairs.  Pure function of its arguments.
CensoredSample generate(const CensoringScenario& scenario, std::size_t n, Seed seed);

}  // namespace censtail
