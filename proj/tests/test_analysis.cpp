#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "parking_lab/analysis.hpp"

using namespace parking_lab;

namespace {

Perm PM(std::vector<int> v) { return Perm(std::move(v)); }

// Set-comprehension recomputation of cars_set straight from its definition:
// ({pi_1..pi_{j-1}} intersect {i+1..n}) union {i} with i the car in spot j.
std::set<int> cars_set_oracle(const Perm& pi, int j) {
    const int i = pi.car_at(j);
    std::set<int> left_of_j(pi.oneline().begin(), pi.oneline().begin() + (j - 1));
    std::set<int> after_i;
    for (int c = i + 1; c <= pi.size(); ++c) after_i.insert(c);
    std::set<int> out;
    std::set_intersection(left_of_j.begin(), left_of_j.end(), after_i.begin(), after_i.end(),
                          std::inserter(out, out.begin()));
    out.insert(i);
    return out;
}

std::set<int> pref_spots_oracle(const Perm& pi, int j) {
    const std::set<int> cars = cars_set_oracle(pi, j);
    std::set<int> spots;
    for (int k = 1; k <= j; ++k)
        if (cars.count(pi.car_at(k))) spots.insert(k);
    return spots;
}

}  // namespace

TEST_CASE("cars_set") {
    const Perm pi = PM({3, 4, 1, 5, 2, 6});
    CHECK(cars_set(pi, 5) == std::vector<int>{2, 3, 4, 5});
    CHECK(cars_set(pi, 2) == std::vector<int>{4});
    for (int j = 1; j <= 6; ++j) CHECK(cars_set(Perm::identity(6), j) == std::vector<int>{j});
    CHECK(cars_set(Perm::reversal(4), 3) == std::vector<int>{2, 3, 4});
    CHECK_THROWS_AS(cars_set(pi, 0), std::out_of_range);
    CHECK_THROWS_AS(cars_set(pi, 7), std::out_of_range);
}

TEST_CASE("pref_spots") {
    const Perm pi = PM({3, 4, 1, 5, 2, 6});
    const std::vector<std::vector<int>> expected = {{1},          {2}, {1, 2, 3},
                                                    {4}, {1, 2, 4, 5}, {6}};
    for (int j = 1; j <= 6; ++j) CHECK(pref_spots(pi, j) == expected[static_cast<std::size_t>(j) - 1]);
    for (int j = 1; j <= 5; ++j) CHECK(pref_spots(Perm::identity(5), j) == std::vector<int>{j});
    for (int j = 1; j <= 5; ++j) {
        std::vector<int> full(static_cast<std::size_t>(j));
        std::iota(full.begin(), full.end(), 1);
        CHECK(pref_spots(Perm::reversal(5), j) == full);
    }
}

TEST_CASE("cars_set and pref_spots agree with set-comprehension recomputation") {
    for_each_perm(5, [&](const Perm& pi) {
        for (int j = 1; j <= 5; ++j) {
            const std::vector<int> cars = cars_set(pi, j);
            const std::vector<int> spots = pref_spots(pi, j);
            CHECK(std::set<int>(cars.begin(), cars.end()) == cars_set_oracle(pi, j));
            CHECK(std::set<int>(spots.begin(), spots.end()) == pref_spots_oracle(pi, j));
            // the occupied spot always belongs to its own candidate set
            CHECK(std::binary_search(spots.begin(), spots.end(), j));
        }
    });
}

TEST_CASE("omega_bound") {
    CHECK(omega_bound(PM({1, 4, 6, 5, 2, 3})) == 32);
    CHECK(omega_bound(Perm::identity(7)) == 1);
    CHECK(omega_bound(PM({5, 1, 2, 3, 6, 9, 4, 7, 8})) == 128);
}

TEST_CASE("bundled candidate sets") {
    for_each_perm(4, [&](const Perm& pi) {
        const PrefSpotSets sets = pref_spot_sets(pi);
        REQUIRE(sets.cars.size() == 4);
        REQUIRE(sets.omega.size() == 4);
        for (int j = 1; j <= 4; ++j) {
            const auto& cars = sets.cars[static_cast<std::size_t>(j) - 1];
            const auto& omega = sets.omega[static_cast<std::size_t>(j) - 1];
            CHECK(cars == cars_set(pi, j));
            CHECK(omega == pref_spots(pi, j));
            CHECK(std::binary_search(omega.begin(), omega.end(), j));
            CHECK(std::binary_search(cars.begin(), cars.end(), pi.car_at(j)));
            for (int car : cars) {
                if (car == pi.car_at(j)) continue;
                CHECK(car > pi.car_at(j));
                CHECK(pi.spot_of(car) < j);
            }
        }
    });
}

TEST_CASE("fiber enumeration") {
    CHECK(enumerate_fiber(Perm::identity(4)) ==
          std::vector<PrefList>{Perm::identity(4).as_prefs()});
    CHECK(fiber_size(PM({1, 4, 6, 5, 2, 3})) == 13);
    CHECK(fiber_size(Perm::reversal(4)) == 9);

    SUBCASE("pruned agrees with exhaustive and stays within the bound") {
        for (int n = 1; n <= 4; ++n) {
            for_each_perm(n, [&](const Perm& pi) {
                const auto pruned = enumerate_fiber(pi, FiberMode::Pruned);
                const auto exhaustive = enumerate_fiber(pi, FiberMode::Exhaustive);
                CHECK(pruned == exhaustive);
                CHECK(pruned.size() >= 1);
                CHECK(pruned.size() <= omega_bound(pi));
                CHECK(std::is_sorted(pruned.begin(), pruned.end()));
            });
        }
    }

    SUBCASE("pruned search matches one full census of [6]^6") {
        std::map<std::vector<int>, std::vector<PrefList>> census;
        for_each_pref_vector(6, [&](const std::vector<int>& v) {
            const PrefList prefs(v);
            const ParkResult r = mvp_park(prefs);
            if (r.success()) census[r.outcome().oneline()].push_back(prefs);
        });
        for_each_perm(6, [&](const Perm& pi) {
            CHECK(enumerate_fiber(pi) == census[pi.oneline()]);
        });
    }

    SUBCASE("members prefer only candidate spots and include the inverse word") {
        const Perm pi = PM({2, 4, 1, 5, 3});
        const auto members = enumerate_fiber(pi);
        CHECK(std::find(members.begin(), members.end(), pi.inverse().as_prefs()) != members.end());
        for (const PrefList& alpha : members) {
            for (int j = 1; j <= pi.size(); ++j) {
                const std::vector<int> spots = pref_spots(pi, j);
                CHECK(std::binary_search(spots.begin(), spots.end(), alpha.pref(pi.car_at(j))));
            }
        }
    }

    SUBCASE("resource guard") {
        CHECK_THROWS_AS(enumerate_fiber(Perm::reversal(6), FiberMode::Pruned, 100),
                        ResourceLimitError);
        CHECK_THROWS_AS(enumerate_fiber(Perm::identity(10), FiberMode::Exhaustive, 1000),
                        ResourceLimitError);
    }
}

TEST_CASE("pattern containment") {
    const Perm host = PM({7, 3, 6, 2, 5, 4, 1});
    CHECK(contains_pattern(host, PM({2, 3, 1})));
    CHECK(contains_pattern(host, PM({1, 3, 2})));
    CHECK_FALSE(contains_pattern(host, PM({1, 2, 3})));
    CHECK(contains_pattern(host, PM({1})));
    CHECK(contains_pattern(PM({1}), PM({1})));
    CHECK_THROWS_AS(contains_pattern(PM({2, 1}), PM({1, 3, 2})), std::invalid_argument);
}

TEST_CASE("preference independence flag") {
    CHECK(is_preference_independent(PM({5, 1, 2, 3, 6, 9, 4, 7, 8})));
    CHECK_FALSE(is_preference_independent(PM({1, 4, 6, 5, 2, 3})));
    CHECK(is_preference_independent(Perm::identity(6)));
    CHECK_FALSE(is_preference_independent(PM({3, 4, 1, 2})));  // the 3412 word itself
}

TEST_CASE("independent permutation census matches odd-indexed Fibonacci numbers") {
    CHECK(count_independent_perms(1) == 1);
    CHECK(count_independent_perms(4) == 13);
    CHECK(count_independent_perms(5) == 34);
    CHECK_THROWS_AS(count_independent_perms(10), ResourceLimitError);
    CHECK_THROWS_AS(count_independent_perms(0), std::invalid_argument);

    SUBCASE("census agrees with the tightness reading") {
        for (int n = 1; n <= 4; ++n) {
            std::uint64_t tight_count = 0;
            for_each_perm(n, [&](const Perm& pi) {
                if (fiber_size(pi) == omega_bound(pi)) ++tight_count;
            });
            CHECK(tight_count == count_independent_perms(n));
        }
    }
}

TEST_CASE("one-cycle constructions") {
    CHECK(increasing_kcycle(6, 2, 3) == PM({1, 3, 4, 2, 5, 6}));
    CHECK(increasing_kcycle(5, 1, 5) == PM({2, 3, 4, 5, 1}));
    CHECK(decreasing_kcycle(6, 6, 3) == PM({1, 2, 3, 6, 4, 5}));
    CHECK(decreasing_kcycle(5, 5, 5) == PM({5, 1, 2, 3, 4}));
    CHECK_THROWS_AS(increasing_kcycle(4, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(decreasing_kcycle(4, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(increasing_kcycle(4, 1, 1), std::invalid_argument);
}

TEST_CASE("one-cycle fiber formulas against enumeration") {
    CHECK(increasing_kcycle_fiber(6, 2, 3) == 3);
    CHECK(increasing_kcycle_fiber(5, 1, 5) == 5);
    CHECK(decreasing_kcycle_fiber(6, 6, 3) == 4);
    CHECK(decreasing_kcycle_fiber(5, 5, 5) == 16);
    for (int n = 2; n <= 5; ++n) {
        for (int k = 2; k <= n; ++k) {
            for (int a = 1; a + k - 1 <= n; ++a)
                CHECK(increasing_kcycle_fiber(n, a, k) == fiber_size(increasing_kcycle(n, a, k)));
            for (int b = k; b <= n; ++b)
                CHECK(decreasing_kcycle_fiber(n, b, k) == fiber_size(decreasing_kcycle(n, b, k)));
        }
    }
}

TEST_CASE("increasing tails") {
    CHECK(strip_increasing_tail(PM({4, 2, 3, 1, 5, 6, 7, 8})) == PM({4, 2, 3, 1}));
    CHECK(strip_increasing_tail(Perm::identity(5)) == Perm::identity(1));
    CHECK(strip_increasing_tail(PM({2, 1, 5, 4, 3, 6, 7})) == PM({2, 1, 5, 4, 3}));
    CHECK(strip_increasing_tail(PM({2, 1})) == PM({2, 1}));

    CHECK(with_increasing_tail(PM({2, 1}), 4) == PM({2, 1, 3, 4}));
    CHECK_THROWS_AS(with_increasing_tail(PM({2, 1}), 1), std::invalid_argument);

    SUBCASE("a fixed-point tail does not change the fiber size") {
        const Perm pi = PM({2, 1, 5, 4, 3});
        CHECK(fiber_size(with_increasing_tail(pi, 7)) == fiber_size(pi));
        const Perm rho = PM({3, 1, 2, 4});
        CHECK(strip_increasing_tail(rho) == PM({3, 1, 2}));
        CHECK(fiber_size(rho) == fiber_size(PM({3, 1, 2})));
    }
}

TEST_CASE("classical fiber count") {
    CHECK(classical_fiber_count(Perm::identity(3)) == 6);
    CHECK(classical_fiber_count(Perm::reversal(4)) == 1);
    CHECK(classical_fiber_count(PM({2, 1})) == 1);

    SUBCASE("window product equals the exhaustive classical census") {
        for (int n = 1; n <= 4; ++n) {
            std::map<std::vector<int>, std::uint64_t> census;
            for_each_pref_vector(n, [&](const std::vector<int>& v) {
                const ParkResult r = classical_park(PrefList(v));
                if (r.success()) ++census[r.outcome().oneline()];
            });
            for_each_perm(n, [&](const Perm& pi) {
                CHECK(classical_fiber_count(pi) == census[pi.oneline()]);
            });
        }
    }
}

TEST_CASE("fiber reports") {
    const FiberReport loose = fiber_report(PM({1, 4, 6, 5, 2, 3}));
    CHECK(loose.fiber_size == 13);
    CHECK(loose.omega_bound == 32);
    CHECK_FALSE(loose.tight);
    CHECK(loose.contains_321);
    CHECK(loose.contains_3412);  // the subsequence 4,6,2,3

    const FiberReport tight = fiber_report(PM({5, 1, 2, 3, 6, 9, 4, 7, 8}));
    CHECK(tight.fiber_size == 128);
    CHECK(tight.omega_bound == 128);
    CHECK(tight.tight);
    CHECK_FALSE(tight.contains_321);
    CHECK_FALSE(tight.contains_3412);

    SUBCASE("tightness coincides with pattern avoidance") {
        for (int n = 1; n <= 4; ++n) {
            for_each_perm(n, [&](const Perm& pi) {
                const FiberReport r = fiber_report(pi);
                CHECK(r.fiber_size <= r.omega_bound);
                CHECK(r.tight == (!r.contains_321 && !r.contains_3412));
            });
        }
    }
}
