#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "censtail/error.hpp"
#include "censtail/survival.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace censtail;
using censtail::testing::random_sample;

namespace {

std::vector<double> values(const SurvivalCurve& c) {
    std::vector<double> v;
    for (std::size_t i = 1; i <= c.size(); ++i) v.push_back(c.value(i));
    return v;
}

}  // namespace

TEST_CASE("rank sorts and carries concomitants") {
    auto r = rank({{3, 1, 2}, {1, 0, 1}});
    CHECK(r.z == std::vector<double>{1, 2, 3});
    CHECK(r.delta == std::vector<std::uint8_t>{0, 1, 1});
    CHECK(r.upper_z(1) == 3);
    CHECK(r.upper_delta(3) == 0);

    auto single = rank({{4.2}, {0}});
    CHECK(single.z == std::vector<double>{4.2});
    CHECK(single.delta == std::vector<std::uint8_t>{0});
}

TEST_CASE("rank breaks ties by original position") {
    auto r = rank({{2, 1, 2, 2}, {1, 1, 0, 1}});
    CHECK(r.z == std::vector<double>{1, 2, 2, 2});
    CHECK(r.delta == std::vector<std::uint8_t>{1, 1, 0, 1});
}

TEST_CASE("rank rejects invalid samples") {
    CHECK_THROWS_AS(rank({}), DomainError);
    CHECK_THROWS_AS(rank({{1.0, 0.0}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(rank({{1.0, -2.0}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(rank({{1.0, NAN}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(rank({{1.0, 2.0}, {1, 2}}), DomainError);
    CHECK_THROWS_AS(rank({{1.0, 2.0}, {1}}), DomainError);
}

TEST_CASE("rank agrees with a comparison sort and ignores input order") {
    std::mt19937_64 rng(11);
    auto s = random_sample(rng, 1000, 0.4);
    auto a = rank(s);
    auto b = rank(s);
    CHECK(a.z == b.z);
    CHECK(a.delta == b.delta);

    auto sorted = s.z;
    std::sort(sorted.begin(), sorted.end());
    CHECK(a.z == sorted);

    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CensoredSample shuffled;
    for (auto j : perm) {
        shuffled.z.push_back(s.z[j]);
        shuffled.delta.push_back(s.delta[j]);
    }
    auto c = rank(shuffled);
    CHECK(c.z == a.z);
    CHECK(c.delta == a.delta);  // continuous data: no ties
}

TEST_CASE("Kaplan-Meier hand example") {
    auto km = km_curve(rank({{1, 2, 3, 4}, {1, 0, 1, 1}}));
    auto v = values(km);
    CHECK(v[0] == doctest::Approx(0.75));
    CHECK(v[1] == doctest::Approx(0.75));
    CHECK(v[2] == doctest::Approx(0.375));
    CHECK(v[3] == 0.0);
    CHECK(std::isinf(km.log_value(4)));
    CHECK(km.log_value(0) == 0.0);
}

TEST_CASE("Kaplan-Meier limiting cases") {
    auto none = km_curve(rank({{1, 2, 3}, {0, 0, 0}}));
    for (double v : values(none)) CHECK(v == 1.0);

    const std::size_t n = 7;
    CensoredSample all;
    for (std::size_t j = 0; j < n; ++j) {
        all.z.push_back(1.0 + j);
        all.delta.push_back(1);
    }
    auto v = values(km_curve(rank(all)));
    for (std::size_t i = 1; i <= n; ++i) CHECK(v[i - 1] == doctest::Approx(double(n - i) / n).epsilon(1e-14));
}

TEST_CASE("Nelson-Aalen hand example") {
    auto na = na_curve(rank({{1, 2, 3, 4}, {1, 0, 1, 1}}));
    auto v = values(na);
    CHECK(v[0] == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
    CHECK(v[2] == doctest::Approx(std::exp(-0.75)).epsilon(1e-15));
    CHECK(v[3] == doctest::Approx(std::exp(-1.75)).epsilon(1e-15));
    CHECK(v[3] == doctest::Approx(0.1738).epsilon(1e-3));

    for (double x : values(na_curve(rank({{1, 2}, {0, 0}})))) CHECK(x == 1.0);
    CHECK(na_curve(rank({{3.0}, {1}})).value(1) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("curve accessors validate ranks") {
    auto km = km_curve(rank({{1, 2}, {1, 1}}));
    CHECK_THROWS_AS(km.value(0), DomainError);
    CHECK_THROWS_AS(km.value(3), DomainError);
    CHECK_THROWS_AS(km.log_value(3), DomainError);
}

TEST_CASE("tail_ratio examples") {
    CensoredSample all;
    for (int j = 0; j < 10; ++j) {
        all.z.push_back(1.0 + j);
        all.delta.push_back(1);
    }
    auto r = rank(all);
    auto km = km_curve(r);
    auto na = na_curve(r);
    CHECK(tail_ratio(km, 4, 4) == 1.0);
    CHECK(tail_ratio(na, 4, 4) == 1.0);
    for (std::size_t k = 1; k <= 9; ++k)
        for (std::size_t i = 1; i <= k; ++i) CHECK(tail_ratio(km, i, k) == doctest::Approx(double(i) / k).epsilon(1e-14));
    CHECK(tail_ratio(na, 2, 5) == doctest::Approx(std::exp(-(1.0 / 3 + 1.0 / 4 + 1.0 / 5))).epsilon(1e-15));
    CHECK(tail_ratio(na, 2, 5) == doctest::Approx(0.45689).epsilon(1e-5));

    CHECK_THROWS_AS(tail_ratio(km, 0, 3), DomainError);
    CHECK_THROWS_AS(tail_ratio(km, 4, 3), DomainError);
    CHECK_THROWS_AS(tail_ratio(km, 1, 10), DomainError);
}

TEST_CASE("tail_ratio equals the survival ratio just below the upper point") {
    std::mt19937_64 rng(5);
    auto r = rank(random_sample(rng, 60, 0.5));
    const std::size_t n = r.size();
    for (auto curve : {km_curve(r), na_curve(r)}) {
        for (std::size_t k = 1; k < n; k += 7) {
            for (std::size_t i = 1; i <= k; ++i) {
                const double num = curve.log_value(n - i);
                const double den = curve.log_value(n - k);
                CHECK(log_tail_ratio(curve, i, k) == doctest::Approx(num - den).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("km_na_divergence edge cases") {
    CHECK(km_na_divergence(rank({{1, 2, 3}, {0, 0, 0}})) == 0.0);
    CHECK(km_na_divergence(rank({{2.0}, {1}})) == 0.0);
    // n=2 all events: only i=1 counts, |(1/2)/e^{-1/2} - 1|
    CHECK(km_na_divergence(rank({{1, 2}, {1, 1}})) == doctest::Approx(std::abs(0.5 * std::exp(0.5) - 1)));
}

TEST_CASE("curve properties on random samples") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 300);
    std::uniform_real_distribution<double> rate(0.0, 0.9);
    for (int rep = 0; rep < 200; ++rep) {
        auto s = random_sample(rng, size(rng), rate(rng));
        auto r = rank(s);
        auto km = km_curve(r);
        auto na = na_curve(r);
        const std::size_t n = r.size();
        for (std::size_t i = 1; i <= n; ++i) {
            CHECK(na.value(i) >= km.value(i));
            CHECK(na.value(i) > 0.0);
            CHECK(km.value(i) >= 0.0);
            CHECK(na.value(i) <= 1.0);
            if (i > 1) {
                CHECK(km.value(i) <= km.value(i - 1));
                CHECK(na.value(i) <= na.value(i - 1));
            }
        }
        CHECK((km.value(n) == 0.0) == (r.delta[n - 1] == 1));

        // composition of ratios
        if (n >= 4) {
            std::uniform_int_distribution<std::size_t> pick(1, n - 1);
            std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            for (const auto* curve : {&km, &na}) {
                const double lhs = log_tail_ratio(*curve, a, b) + log_tail_ratio(*curve, b, c);
                const double rhs = log_tail_ratio(*curve, a, c);
                if (std::isfinite(rhs)) {
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
                    CHECK(std::exp(lhs) == doctest::Approx(tail_ratio(*curve, a, c)).epsilon(1e-12));
                } else {
                    CHECK(std::isinf(lhs));
                }
            }
        }

        // scale invariance
        auto scaled = s;
        for (double& z : scaled.z) z *= 37.5;
        auto km2 = km_curve(rank(scaled));
        auto na2 = na_curve(rank(scaled));
        for (std::size_t i = 1; i <= n; ++i) {
            CHECK(km2.value(i) == km.value(i));
            CHECK(na2.value(i) == na.value(i));
        }
    }
}
