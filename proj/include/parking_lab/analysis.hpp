#pragma once

/*
 * Fiber analysis for the MVP outcome map: the per-spot candidate-preference
 * sets, the product upper bound on fiber size, exact fiber enumeration
 * (pruned or exhaustive), permutation pattern containment, the tightness
 * characterization, closed forms for one-cycle permutations, and the
 * increasing-tail reduction.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "parking_lab/core.hpp"

namespace parking_lab {

inline constexpr std::uint64_t kDefaultMaxCandidates = 100'000'000ULL;

// Cars that arrive after the occupant of spot j and park to its left,
// together with the occupant itself.
inline std::vector<int> cars_set(const Perm& pi, int j) {
    if (j < 1 || j > pi.size()) throw std::out_of_range("spot index out of range");
    const int i = pi.car_at(j);
    std::vector<int> cars;
    for (int k = 1; k < j; ++k)
        if (pi.car_at(k) > i) cars.push_back(pi.car_at(k));
    cars.push_back(i);
    std::sort(cars.begin(), cars.end());
    return cars;
}

// Spots on or left of j holding a car from cars_set(pi, j); these are the
// spots the occupant of j may have preferred. Always contains j itself.
inline std::vector<int> pref_spots(const Perm& pi, int j) {
    const std::vector<int> cars = cars_set(pi, j);
    std::vector<int> spots;
    for (int k = 1; k <= j; ++k)
        if (std::binary_search(cars.begin(), cars.end(), pi.car_at(k))) spots.push_back(k);
    return spots;
}

// Both families of sets for every spot at once.
struct PrefSpotSets {
    std::vector<std::vector<int>> cars;   // cars[j-1] = cars_set(pi, j)
    std::vector<std::vector<int>> omega;  // omega[j-1] = pref_spots(pi, j)
    friend bool operator==(const PrefSpotSets&, const PrefSpotSets&) = default;
};

inline PrefSpotSets pref_spot_sets(const Perm& pi) {
    PrefSpotSets sets;
    for (int j = 1; j <= pi.size(); ++j) {
        sets.cars.push_back(cars_set(pi, j));
        sets.omega.push_back(pref_spots(pi, j));
    }
    return sets;
}

// Product over all spots of the candidate-set sizes; an upper bound on the
// fiber size of pi under the MVP outcome map.
inline std::uint64_t omega_bound(const Perm& pi) {
    std::uint64_t product = 1;
    for (int j = 1; j <= pi.size(); ++j) {
        const std::uint64_t size = static_cast<std::uint64_t>(pref_spots(pi, j).size());
        if (product > UINT64_MAX / size) throw std::overflow_error("omega_bound overflows 64 bits");
        product *= size;
    }
    return product;
}

enum class FiberMode { Pruned, Exhaustive };

namespace detail {

// Candidate spots per car: car parked in spot j may only prefer pref_spots(pi, j).
inline std::vector<std::vector<int>> allowed_prefs_by_car(const Perm& pi) {
    std::vector<std::vector<int>> allowed(static_cast<std::size_t>(pi.size()) + 1);
    for (int j = 1; j <= pi.size(); ++j)
        allowed[static_cast<std::size_t>(pi.car_at(j))] = pref_spots(pi, j);
    return allowed;
}

inline std::uint64_t checked_candidate_count(const std::vector<std::vector<int>>& sets,
                                             std::uint64_t ceiling, const char* what) {
    std::uint64_t count = 1;
    for (const auto& s : sets) {
        if (s.empty()) continue;
        count *= static_cast<std::uint64_t>(s.size());
        if (count > ceiling)
            throw ResourceLimitError(std::string(what) + " needs more than " +
                                     std::to_string(ceiling) + " candidates");
    }
    return count;
}

}  // namespace detail

// All preference lists whose MVP outcome is pi, in lexicographic order.
// Pruned mode walks only the Cartesian product of the per-car candidate
// sets (which provably contains the fiber); exhaustive mode walks all of
// [n]^n and exists to validate the pruning.
inline std::vector<PrefList> enumerate_fiber(const Perm& pi, FiberMode mode = FiberMode::Pruned,
                                             std::uint64_t max_candidates = kDefaultMaxCandidates) {
    const int n = pi.size();
    std::vector<PrefList> members;
    std::vector<int> occ;

    const auto matches_pi = [&](const std::vector<int>& candidate) {
        if (!detail::run_mvp(candidate, occ)) return false;
        for (int j = 1; j <= n; ++j)
            if (occ[static_cast<std::size_t>(j)] != pi.car_at(j)) return false;
        return true;
    };

    if (mode == FiberMode::Exhaustive) {
        std::uint64_t count = 1;
        for (int i = 0; i < n; ++i) {
            count *= static_cast<std::uint64_t>(n);
            if (count > max_candidates)
                throw ResourceLimitError("exhaustive fiber search needs more than " +
                                         std::to_string(max_candidates) + " candidates");
        }
        for_each_pref_vector(n, [&](const std::vector<int>& v) {
            if (matches_pi(v)) members.emplace_back(v);
        });
        return members;
    }

    const std::vector<std::vector<int>> allowed = detail::allowed_prefs_by_car(pi);
    detail::checked_candidate_count(allowed, max_candidates, "pruned fiber search");

    // Odometer over the per-car candidate sets, lexicographic in the
    // resulting preference vector since each set is sorted ascending.
    std::vector<std::size_t> idx(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> candidate(static_cast<std::size_t>(n));
    while (true) {
        for (int c = 1; c <= n; ++c)
            candidate[static_cast<std::size_t>(c) - 1] =
                allowed[static_cast<std::size_t>(c)][idx[static_cast<std::size_t>(c)]];
        if (matches_pi(candidate)) members.emplace_back(candidate);
        int c = n;
        while (c >= 1 && idx[static_cast<std::size_t>(c)] + 1 == allowed[static_cast<std::size_t>(c)].size()) {
            idx[static_cast<std::size_t>(c)] = 0;
            --c;
        }
        if (c < 1) break;
        ++idx[static_cast<std::size_t>(c)];
    }
    return members;
}

inline std::uint64_t fiber_size(const Perm& pi, FiberMode mode = FiberMode::Pruned,
                                std::uint64_t max_candidates = kDefaultMaxCandidates) {
    return static_cast<std::uint64_t>(enumerate_fiber(pi, mode, max_candidates).size());
}

// True iff some subsequence of pi is order-isomorphic to rho. Backtracking
// search; positions still needed bound the scan (monotone pruning).
inline bool contains_pattern(const Perm& pi, const Perm& rho) {
    const int n = pi.size();
    const int m = rho.size();
    if (m > n) throw std::invalid_argument("pattern longer than host permutation");

    std::vector<int> chosen(static_cast<std::size_t>(m), 0);  // host positions, 1-based
    const std::function<bool(int, int)> extend = [&](int t, int start) {
        if (t == m) return true;
        for (int h = start; h <= n - (m - t) + 1; ++h) {
            bool consistent = true;
            for (int s = 0; s < t && consistent; ++s) {
                const bool pattern_lt = rho.car_at(s + 1) < rho.car_at(t + 1);
                const bool host_lt = pi.car_at(chosen[static_cast<std::size_t>(s)]) < pi.car_at(h);
                consistent = pattern_lt == host_lt;
            }
            if (!consistent) continue;
            chosen[static_cast<std::size_t>(t)] = h;
            if (extend(t + 1, h + 1)) return true;
        }
        return false;
    };
    return extend(0, 1);
}

// Tightness of the omega product bound: holds iff pi avoids both 321 and 3412.
inline bool is_preference_independent(const Perm& pi) {
    static const Perm p321({3, 2, 1});
    static const Perm p3412({3, 4, 1, 2});
    if (pi.size() < 3) return true;
    if (contains_pattern(pi, p321)) return false;
    if (pi.size() < 4) return true;
    return !contains_pattern(pi, p3412);
}

// Number of permutations of [n] avoiding both 321 and 3412; equals the
// Fibonacci number F(2n-1).
inline std::uint64_t count_independent_perms(int n, int max_n = 9) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (n > max_n)
        throw ResourceLimitError("independent-permutation census limited to n <= " +
                                 std::to_string(max_n));
    std::uint64_t count = 0;
    for_each_perm(n, [&](const Perm& pi) {
        if (is_preference_independent(pi)) ++count;
    });
    return count;
}

// One-line form of the cycle <a, a+1, ..., a+k-1>: the entry a moves k-1
// places right, the entries a+1..a+k-1 each shift one place left.
inline Perm increasing_kcycle(int n, int a, int k) {
    if (k < 2 || a < 1 || a + k - 1 > n)
        throw std::invalid_argument("increasing k-cycle out of range");
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    v.erase(v.begin() + (a - 1));
    v.insert(v.begin() + (a + k - 2), a);
    return Perm(std::move(v));
}

// One-line form of the cycle <b, b-1, ..., b-k+1>: the entry b moves k-1
// places left.
inline Perm decreasing_kcycle(int n, int b, int k) {
    if (k < 2 || b < k || b > n)
        throw std::invalid_argument("decreasing k-cycle out of range");
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    v.erase(v.begin() + (b - 1));
    v.insert(v.begin() + (b - k), b);
    return Perm(std::move(v));
}

// Closed-form fiber size of an increasing k-cycle.
inline std::uint64_t increasing_kcycle_fiber(int n, int a, int k) {
    increasing_kcycle(n, a, k);  // range validation
    return static_cast<std::uint64_t>(k);
}

// Closed-form fiber size of a decreasing k-cycle.
inline std::uint64_t decreasing_kcycle_fiber(int n, int b, int k) {
    decreasing_kcycle(n, b, k);  // range validation
    return std::uint64_t{1} << (k - 1);
}

// Drop the maximal suffix of fixed points (m0+1)(m0+2)...m and return the
// prefix permutation; fiber sizes are unchanged by such suffixes. An
// all-fixed input reduces to the length-1 prefix.
inline Perm strip_increasing_tail(const Perm& pi_prime) {
    int last_moved = 0;
    for (int j = 1; j <= pi_prime.size(); ++j)
        if (pi_prime.car_at(j) != j) last_moved = j;
    const int prefix = std::max(last_moved, 1);
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(prefix));
    for (int j = 1; j <= prefix; ++j) v.push_back(pi_prime.car_at(j));
    return Perm(std::move(v));
}

// Extend pi with the fixed points n+1..m; inverse of strip_increasing_tail.
inline Perm with_increasing_tail(const Perm& pi, int m) {
    if (m < pi.size()) throw std::invalid_argument("tail length below permutation size");
    std::vector<int> v = pi.oneline();
    for (int j = pi.size() + 1; j <= m; ++j) v.push_back(j);
    return Perm(std::move(v));
}

// Fiber size of pi under the classical outcome map: product of the lengths
// of the maximal windows pi_j..pi_i ending at i with all entries <= pi_i.
inline std::uint64_t classical_fiber_count(const Perm& pi) {
    std::uint64_t product = 1;
    for (int i = 1; i <= pi.size(); ++i) {
        int len = 0;
        for (int j = i; j >= 1 && pi.car_at(j) <= pi.car_at(i); --j) ++len;
        product *= static_cast<std::uint64_t>(len);
    }
    return product;
}

struct FiberReport {
    Perm pi;
    std::uint64_t fiber_size = 0;
    std::uint64_t omega_bound = 0;
    bool tight = false;
    bool contains_321 = false;
    bool contains_3412 = false;
    friend bool operator==(const FiberReport&, const FiberReport&) = default;
};

inline FiberReport fiber_report(const Perm& pi,
                                std::uint64_t max_candidates = kDefaultMaxCandidates) {
    FiberReport report{pi, 0, 0, false, false, false};
    report.fiber_size = fiber_size(pi, FiberMode::Pruned, max_candidates);
    report.omega_bound = omega_bound(pi);
    report.tight = report.fiber_size == report.omega_bound;
    report.contains_321 = pi.size() >= 3 && contains_pattern(pi, Perm({3, 2, 1}));
    report.contains_3412 = pi.size() >= 4 && contains_pattern(pi, Perm({3, 4, 1, 2}));
    return report;
}

}  // namespace parking_lab
