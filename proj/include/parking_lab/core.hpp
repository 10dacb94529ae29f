#pragma once

/*
 * Core parking machinery: preference lists, permutations, the classical and
 * bump ("MVP") parking rules, parking-function membership, occupancy traces,
 * and the outcome maps sending a preference list to the permutation that
 * records which car ends up in each spot.
 *
 * Conventions used throughout the library:
 *   - cars and spots are 1-based, matching the usual combinatorial notation;
 *   - a permutation is stored in one-line form, entry at spot j = car in spot j;
 *   - all operations are pure functions on immutable values.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace parking_lab {

class NotParkingFunction : public std::domain_error {
public:
    explicit NotParkingFunction(const std::string& what) : std::domain_error(what) {}
};

class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// A length-n vector of spot preferences, one entry per car, each in [n].
class PrefList {
public:
    explicit PrefList(std::vector<int> prefs) : prefs_(std::move(prefs)) {
        const int n = static_cast<int>(prefs_.size());
        if (n < 1) throw std::invalid_argument("preference list must be nonempty");
        for (int i = 0; i < n; ++i) {
            if (prefs_[i] < 1 || prefs_[i] > n)
                throw std::invalid_argument("preference " + std::to_string(prefs_[i]) +
                                            " of car " + std::to_string(i + 1) +
                                            " is outside [1," + std::to_string(n) + "]");
        }
    }

    int size() const noexcept { return static_cast<int>(prefs_.size()); }

    // Preferred spot of `car` (1-based).
    int pref(int car) const { return prefs_.at(static_cast<std::size_t>(car) - 1); }

    const std::vector<int>& values() const noexcept { return prefs_; }

    friend bool operator==(const PrefList&, const PrefList&) = default;
    friend bool operator<(const PrefList& a, const PrefList& b) {
        return std::lexicographical_compare(a.prefs_.begin(), a.prefs_.end(),
                                            b.prefs_.begin(), b.prefs_.end());
    }

private:
    std::vector<int> prefs_;
};

// A permutation of [n] in one-line form; entry at spot j is the car parked
// in spot j. Read as a preference vector it is also a valid PrefList.
class Perm {
public:
    explicit Perm(std::vector<int> oneline) : oneline_(std::move(oneline)) {
        const int n = static_cast<int>(oneline_.size());
        if (n < 1) throw std::invalid_argument("permutation must be nonempty");
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (int v : oneline_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("not a permutation of [" + std::to_string(n) +
                                            "]: entry " + std::to_string(v));
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Perm identity(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return Perm(std::move(v));
    }

    // The reversal (n, n-1, ..., 1); the longest word.
    static Perm reversal(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = n - j;
        return Perm(std::move(v));
    }

    // (n-1, n, n-2, n-3, ..., 2, 1); requires n >= 2.
    static Perm near_reversal(int n) {
        if (n < 2) throw std::invalid_argument("near_reversal requires n >= 2");
        std::vector<int> v;
        v.reserve(static_cast<std::size_t>(n));
        v.push_back(n - 1);
        v.push_back(n);
        for (int j = n - 2; j >= 1; --j) v.push_back(j);
        return Perm(std::move(v));
    }

    int size() const noexcept { return static_cast<int>(oneline_.size()); }

    // Car parked in `spot` (1-based).
    int car_at(int spot) const { return oneline_.at(static_cast<std::size_t>(spot) - 1); }

    // Spot where `car` is parked (1-based).
    int spot_of(int car) const {
        for (int j = 1; j <= size(); ++j)
            if (car_at(j) == car) return j;
        throw std::out_of_range("car " + std::to_string(car) + " not in permutation");
    }

    Perm inverse() const {
        std::vector<int> inv(oneline_.size());
        for (int j = 1; j <= size(); ++j) inv[static_cast<std::size_t>(car_at(j)) - 1] = j;
        return Perm(std::move(inv));
    }

    bool is_involution() const { return inverse() == *this; }

    // The one-line word read as a preference vector.
    PrefList as_prefs() const { return PrefList(oneline_); }

    const std::vector<int>& oneline() const noexcept { return oneline_; }

    friend bool operator==(const Perm&, const Perm&) = default;
    friend bool operator<(const Perm& a, const Perm& b) {
        return std::lexicographical_compare(a.oneline_.begin(), a.oneline_.end(),
                                            b.oneline_.begin(), b.oneline_.end());
    }

private:
    std::vector<int> oneline_;
};

struct ParkFailure {
    int failed_car = 0;  // the car left without a spot
    int at_step = 0;     // arrival index at which that happened
    friend bool operator==(const ParkFailure&, const ParkFailure&) = default;
};

// Outcome permutation on success, or the failure record of the first car
// that could not park.
class ParkResult {
public:
    ParkResult(Perm outcome) : v_(std::move(outcome)) {}
    ParkResult(ParkFailure failure) : v_(failure) {}

    bool success() const noexcept { return std::holds_alternative<Perm>(v_); }
    const Perm& outcome() const { return std::get<Perm>(v_); }
    const ParkFailure& failure() const { return std::get<ParkFailure>(v_); }

    friend bool operator==(const ParkResult&, const ParkResult&) = default;

private:
    std::variant<Perm, ParkFailure> v_;
};

enum class Rule { Classical, Mvp };

// Per-arrival occupancy: steps[i][j] is true iff spot j+1 is occupied after
// the (i+1)th car has arrived (and any bumped car has re-parked or failed).
struct OccupancyTrace {
    std::vector<std::vector<bool>> steps;
    friend bool operator==(const OccupancyTrace&, const OccupancyTrace&) = default;
};

namespace detail {

// One classical arrival. occ is spot -> car (0 when free), 1-based with a
// dummy slot 0. Returns the spot taken, or 0 if the car cannot park.
inline int classical_arrival(std::vector<int>& occ, int n, int car, int pref) {
    int s = pref;
    while (s <= n && occ[static_cast<std::size_t>(s)] != 0) ++s;
    if (s > n) return 0;
    occ[static_cast<std::size_t>(s)] = car;
    return s;
}

// One MVP arrival. The arriving car always takes its preferred spot; a
// previously parked occupant is bumped exactly once to the first free spot
// strictly beyond it. Returns 0 on success, otherwise the bumped car that
// could not re-park.
inline int mvp_arrival(std::vector<int>& occ, int n, int car, int pref) {
    const int bumped = occ[static_cast<std::size_t>(pref)];
    occ[static_cast<std::size_t>(pref)] = car;
    if (bumped == 0) return 0;
    int s = pref + 1;
    while (s <= n && occ[static_cast<std::size_t>(s)] != 0) ++s;
    if (s > n) return bumped;
    occ[static_cast<std::size_t>(s)] = bumped;
    return 0;
}

// Full MVP run over raw preferences; returns true iff all cars park, in
// which case occ holds the final spot -> car assignment.
inline bool run_mvp(const std::vector<int>& prefs, std::vector<int>& occ,
                    ParkFailure* failure = nullptr) {
    const int n = static_cast<int>(prefs.size());
    occ.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        const int lost = mvp_arrival(occ, n, i, prefs[static_cast<std::size_t>(i) - 1]);
        if (lost != 0) {
            if (failure) *failure = ParkFailure{lost, i};
            return false;
        }
    }
    return true;
}

inline bool run_classical(const std::vector<int>& prefs, std::vector<int>& occ,
                          ParkFailure* failure = nullptr) {
    const int n = static_cast<int>(prefs.size());
    occ.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        if (classical_arrival(occ, n, i, prefs[static_cast<std::size_t>(i) - 1]) == 0) {
            if (failure) *failure = ParkFailure{i, i};
            return false;
        }
    }
    return true;
}

inline Perm perm_from_occ(const std::vector<int>& occ) {
    return Perm(std::vector<int>(occ.begin() + 1, occ.end()));
}

}  // namespace detail

// Classical rule: car i drives forward from its preferred spot and takes the
// first free one; simulation stops at the first car that runs off the street.
inline ParkResult classical_park(const PrefList& prefs) {
    std::vector<int> occ;
    ParkFailure failure;
    if (!detail::run_classical(prefs.values(), occ, &failure)) return failure;
    return detail::perm_from_occ(occ);
}

// MVP rule: car i always takes its preferred spot; a bumped occupant drives
// forward once (no cascade). On failure the reported car is the bumped one.
inline ParkResult mvp_park(const PrefList& prefs) {
    std::vector<int> occ;
    ParkFailure failure;
    if (!detail::run_mvp(prefs.values(), occ, &failure)) return failure;
    return detail::perm_from_occ(occ);
}

// Membership test via the sorted-rearrangement criterion: b_i <= i.
inline bool is_parking_function(const PrefList& prefs) {
    std::vector<int> b = prefs.values();
    std::sort(b.begin(), b.end());
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
        if (b[static_cast<std::size_t>(i)] > i + 1) return false;
    return true;
}

// Occupied-spot bit-vectors after each arrival. Unlike the *_park functions
// this never stops early: an arrival whose car (or bumped car) cannot park
// leaves the occupancy unchanged and the remaining cars still arrive.
inline OccupancyTrace occupancy_trace(const PrefList& prefs, Rule rule) {
    const int n = prefs.size();
    std::vector<int> occ(static_cast<std::size_t>(n) + 1, 0);
    OccupancyTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        if (rule == Rule::Classical)
            detail::classical_arrival(occ, n, i, prefs.pref(i));
        else
            detail::mvp_arrival(occ, n, i, prefs.pref(i));
        std::vector<bool> row(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j) row[static_cast<std::size_t>(j) - 1] = occ[static_cast<std::size_t>(j)] != 0;
        trace.steps.push_back(std::move(row));
    }
    return trace;
}

inline Perm outcome_mvp(const PrefList& prefs) {
    ParkResult r = mvp_park(prefs);
    if (!r.success())
        throw NotParkingFunction("not a parking function: car " +
                                 std::to_string(r.failure().failed_car) + " cannot park");
    return r.outcome();
}

inline Perm outcome_classical(const PrefList& prefs) {
    ParkResult r = classical_park(prefs);
    if (!r.success())
        throw NotParkingFunction("not a parking function: car " +
                                 std::to_string(r.failure().failed_car) + " cannot park");
    return r.outcome();
}

// Visit every vector in [n]^n in lexicographic order.
inline void for_each_pref_vector(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> v(static_cast<std::size_t>(n), 1);
    while (true) {
        fn(v);
        int i = n - 1;
        while (i >= 0 && v[static_cast<std::size_t>(i)] == n) {
            v[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) return;
        ++v[static_cast<std::size_t>(i)];
    }
}

// Visit every permutation of [n] in lexicographic order.
inline void for_each_perm(int n, const std::function<void(const Perm&)>& fn) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
        fn(Perm(v));
    } while (std::next_permutation(v.begin(), v.end()));
}

inline std::string to_string(const std::vector<int>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(values[i]);
    }
    return s;
}

inline std::string to_string(const PrefList& prefs) { return to_string(prefs.values()); }
inline std::string to_string(const Perm& pi) { return to_string(pi.oneline()); }

}  // namespace parking_lab
