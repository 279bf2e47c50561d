#pragma once

// Adaptive choice of the number k of top order statistics:
//
//   k_opt = argmin_k (1/k) Σ_{i<=k} i^ν |ξ̂ᵢ - median(ξ̂_first, ..., ξ̂ₖ)|
//
// where ξ̂ᵢ is the estimate based on i upper order statistics.

#include <cstddef>
#include <vector>

#include "censtail/estimators.hpp"

namespace censtail {

struct KSelectConfig {
    double nu = 0.3;
    std::size_t k_min = 2;
    std::size_t k_max = static_cast<std::size_t>(-1);  // clipped to the path

    void validate() const;
};

struct KSelection {
    std::size_t k_opt = 0;
    double criterion = 0.0;
};

/// Criterion value for every admissible k of the path, in increasing k.
struct CriterionCurve {
    std::vector<std::size_t> k_values;
    std::vector<double> values;
};

/// The estimate sequence starts at the smallest k of the path with a valid
/// estimate.  A later failed entry disqualifies every k at or above it.
/// Even-length medians are the mean of the two central values.
CriterionCurve reiss_thomas_curve(const EstimatePath& path, const KSelectConfig& config);

/// Minimizer of reiss_thomas_curve; ties go to the smallest k.  Throws
/// DomainError when no k is admissible.
KSelection reiss_thomas(const EstimatePath& path, const KSelectConfig& config);

}  // namespace censtail
