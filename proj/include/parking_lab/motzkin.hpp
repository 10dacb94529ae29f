#pragma once

/*
 * Motzkin paths and the encoding between them and the preference lists whose
 * MVP outcome is the reversal permutation (n, n-1, ..., 1):
 *
 *   - path_from_prefs reads off, spot by spot, whether a spot is preferred
 *     by zero cars (down step), one car (horizontal step), or more (up step);
 *   - prefs_from_path inverts this on Motzkin paths via a bracket pairing of
 *     up steps with down steps.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parking_lab/core.hpp"

namespace parking_lab {

// Declaration order fixes the lexicographic order used by enumerate_motzkin.
enum class Step : std::uint8_t { Up, Horizontal, Down };

inline char step_char(Step s) {
    switch (s) {
        case Step::Up: return 'U';
        case Step::Horizontal: return 'H';
        case Step::Down: return 'D';
    }
    throw std::invalid_argument("bad step tag");
}

inline std::string steps_to_string(const std::vector<Step>& steps) {
    std::string out;
    out.reserve(steps.size());
    for (Step s : steps) out += step_char(s);
    return out;
}

// Parses a UHD string; reports the 1-based position of the first bad character.
inline std::vector<Step> steps_from_string(const std::string& text) {
    std::vector<Step> steps;
    steps.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        switch (text[i]) {
            case 'U': steps.push_back(Step::Up); break;
            case 'H': steps.push_back(Step::Horizontal); break;
            case 'D': steps.push_back(Step::Down); break;
            default:
                throw std::invalid_argument("invalid step character '" +
                                            std::string(1, text[i]) + "' at position " +
                                            std::to_string(i + 1));
        }
    }
    return steps;
}

inline bool is_motzkin(const std::vector<Step>& steps) {
    int height = 0;
    for (Step s : steps) {
        if (s == Step::Up) ++height;
        if (s == Step::Down) --height;
        if (height < 0) return false;
    }
    return height == 0;
}

// A step sequence that stays on or above the axis and returns to it.
class MotzkinPath {
public:
    explicit MotzkinPath(std::vector<Step> steps) : steps_(std::move(steps)) {
        if (steps_.empty()) throw std::invalid_argument("path must be nonempty");
        int height = 0;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            if (steps_[i] == Step::Up) ++height;
            if (steps_[i] == Step::Down) --height;
            if (height < 0)
                throw std::invalid_argument("path falls below the axis at step " +
                                            std::to_string(i + 1));
        }
        if (height != 0)
            throw std::invalid_argument("path ends at height " + std::to_string(height));
    }

    static MotzkinPath parse(const std::string& text) {
        return MotzkinPath(steps_from_string(text));
    }

    int size() const noexcept { return static_cast<int>(steps_.size()); }
    Step step_at(int position) const { return steps_.at(static_cast<std::size_t>(position) - 1); }
    const std::vector<Step>& steps() const noexcept { return steps_; }
    std::string str() const { return steps_to_string(steps_); }

    friend bool operator==(const MotzkinPath&, const MotzkinPath&) = default;
    friend bool operator<(const MotzkinPath& a, const MotzkinPath& b) {
        return a.steps_ < b.steps_;
    }

private:
    std::vector<Step> steps_;
};

namespace detail {

// Binomials up to C(2n, n) in exact 64-bit arithmetic (Pascal's triangle,
// addition only).
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
    return row[static_cast<std::size_t>(k)];
}

inline std::uint64_t catalan(int k) {
    return binomial(2 * k, k) / static_cast<std::uint64_t>(k + 1);
}

}  // namespace detail

// Closed-form count of Motzkin paths of length n: sum over k of
// C(n, 2k) * Catalan(k). Exact for n <= 30.
inline std::uint64_t motzkin_number(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::uint64_t total = 0;
    for (int k = 0; 2 * k <= n; ++k)
        total += detail::binomial(n, 2 * k) * detail::catalan(k);
    return total;
}

// All Motzkin paths of length n, lexicographic with U < H < D.
inline std::vector<MotzkinPath> enumerate_motzkin(int n, int max_n = 14) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (n > max_n)
        throw ResourceLimitError("path enumeration limited to n <= " + std::to_string(max_n));
    std::vector<MotzkinPath> paths;
    std::vector<Step> prefix;
    prefix.reserve(static_cast<std::size_t>(n));
    const std::function<void(int)> extend = [&](int height) {
        const int remaining = n - static_cast<int>(prefix.size());
        if (remaining == 0) {
            if (height == 0) paths.emplace_back(prefix);
            return;
        }
        for (Step s : {Step::Up, Step::Horizontal, Step::Down}) {
            const int next = height + (s == Step::Up ? 1 : s == Step::Down ? -1 : 0);
            // feasibility: never below the axis, and low enough to return to it
            if (next < 0 || next > remaining - 1) continue;
            prefix.push_back(s);
            extend(next);
            prefix.pop_back();
        }
    };
    extend(0);
    return paths;
}

// Pairing of up steps with down steps, produced by repeatedly taking the
// rightmost unpaired up step and the nearest unpaired down step after it.
// Pairs are kept in production order.
struct BracketPairing {
    std::vector<std::pair<int, int>> pairs;  // (up position, down position), 1-based
    friend bool operator==(const BracketPairing&, const BracketPairing&) = default;
};

inline BracketPairing bracket_pairs(const MotzkinPath& path) {
    const int n = path.size();
    std::vector<bool> paired(static_cast<std::size_t>(n) + 1, false);
    BracketPairing pairing;
    for (int u = n; u >= 1; --u) {
        if (path.step_at(u) != Step::Up) continue;
        int d = u + 1;
        while (path.step_at(d) != Step::Down || paired[static_cast<std::size_t>(d)]) ++d;
        paired[static_cast<std::size_t>(d)] = true;
        pairing.pairs.emplace_back(u, d);
    }
    return pairing;
}

// Step sequence of a preference list: step j records how many cars prefer
// spot j (0 -> down, 1 -> horizontal, 2 or more -> up). Total on [n]^n; the
// result is a Motzkin path whenever the list parks in reverse order.
inline std::vector<Step> path_from_prefs(const PrefList& prefs) {
    const int n = prefs.size();
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
    for (int car = 1; car <= n; ++car) ++count[static_cast<std::size_t>(prefs.pref(car))];
    std::vector<Step> steps;
    steps.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const int c = count[static_cast<std::size_t>(j)];
        steps.push_back(c == 0 ? Step::Down : c == 1 ? Step::Horizontal : Step::Up);
    }
    return steps;
}

// Preference list parking in reverse order whose step sequence is the given
// path. Nondecreasing steps pin one preference each (car n-u+1 prefers spot
// u); each bracket pair (u, d) adds car n-d+1 preferring spot u.
inline PrefList prefs_from_path(const MotzkinPath& path) {
    const int n = path.size();
    std::vector<int> prefs(static_cast<std::size_t>(n), 0);
    for (int u = 1; u <= n; ++u)
        if (path.step_at(u) != Step::Down) prefs[static_cast<std::size_t>(n - u + 1) - 1] = u;
    for (const auto& [u, d] : bracket_pairs(path).pairs)
        prefs[static_cast<std::size_t>(n - d + 1) - 1] = u;
    return PrefList(std::move(prefs));
}

// Reversal-order fiber assembled from Motzkin paths, sorted lexicographically;
// equals enumerate_fiber(Perm::reversal(n)) elementwise.
inline std::vector<PrefList> reversal_fiber_from_paths(int n, int max_n = 12) {
    if (n > max_n)
        throw ResourceLimitError("reversal fiber via paths limited to n <= " +
                                 std::to_string(max_n));
    std::vector<PrefList> members;
    for (const MotzkinPath& path : enumerate_motzkin(n, max_n))
        members.push_back(prefs_from_path(path));
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace parking_lab
