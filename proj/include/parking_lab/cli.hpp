#pragma once

/*
 * Command-line front-end. Subcommands:
 *
 *   simulate --rule classical|mvp [--trace] PREFS
 *   fiber PI [--list] [--format text|json|csv] [--max-candidates N]
 *   survey N [--top K] [--format text|json|csv] [--force] [--max-candidates N]
 *   motzkin N count|list|to-pf|from-pf [ARG]
 *
 * Exit codes: 0 success, 1 domain failure (a car cannot park, a non-Motzkin
 * path, a refused resource ceiling), 2 usage or parse error.
 */

#include <cstdlib>
#include <future>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parking_lab/analysis.hpp"
#include "parking_lab/core.hpp"
#include "parking_lab/motzkin.hpp"

namespace parking_lab::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kSurveyCeiling = 7;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurveyRow {
    Perm pi;
    std::uint64_t fiber_size = 0;
    std::uint64_t omega_bound = 0;
    bool tight = false;
    bool is_longest_word = false;
    bool is_w0_tilde = false;
    friend bool operator==(const SurveyRow&, const SurveyRow&) = default;
};

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string token =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("invalid token '" + token + "' in list '" + text + "'");
        try {
            values.push_back(std::stoi(token));
        } catch (const std::out_of_range&) {
            throw UsageError("invalid token '" + token + "' in list '" + text + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

inline PrefList parse_prefs(const std::string& text) {
    try {
        return PrefList(parse_int_list(text));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + " in list '" + text + "'");
    }
}

inline Perm parse_perm(const std::string& text) {
    try {
        return Perm(parse_int_list(text));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + " in list '" + text + "'");
    }
}

inline std::uint64_t resolve_max_candidates(std::uint64_t flag_value, bool flag_given) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("PARKING_LAB_MAX_CANDIDATES")) {
        const std::string text(env);
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("invalid PARKING_LAB_MAX_CANDIDATES value '" + text + "'");
        try {
            return std::stoull(text);
        } catch (const std::out_of_range&) {
            throw UsageError("invalid PARKING_LAB_MAX_CANDIDATES value '" + text + "'");
        }
    }
    return kDefaultMaxCandidates;
}

inline const char* bool_str(bool b) { return b ? "true" : "false"; }

inline std::string space_joined(const std::vector<int>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(values[i]);
    }
    return s;
}

inline std::string bits(const std::vector<bool>& row) {
    std::string s;
    s.reserve(row.size());
    for (bool b : row) s += b ? '1' : '0';
    return s;
}

inline nlohmann::json fiber_json(const FiberReport& report, const std::vector<PrefList>* members) {
    nlohmann::json j;
    j["n"] = report.pi.size();
    j["pi"] = report.pi.oneline();
    j["fiber_size"] = report.fiber_size;
    j["omega_bound"] = report.omega_bound;
    j["tight"] = report.tight;
    if (members) {
        nlohmann::json list = nlohmann::json::array();
        for (const PrefList& m : *members) list.push_back(m.values());
        j["members"] = std::move(list);
    }
    return j;
}

}  // namespace detail

inline int run_simulate(const std::string& rule_name, bool trace, const std::string& prefs_text,
                        std::ostream& out) {
    if (rule_name != "classical" && rule_name != "mvp")
        throw UsageError("invalid rule '" + rule_name + "' (expected classical or mvp)");
    const Rule rule = rule_name == "mvp" ? Rule::Mvp : Rule::Classical;
    const PrefList prefs = detail::parse_prefs(prefs_text);

    if (trace) {
        const OccupancyTrace t = occupancy_trace(prefs, rule);
        for (std::size_t i = 0; i < t.steps.size(); ++i)
            out << "arrival " << i + 1 << ": " << detail::bits(t.steps[i]) << "\n";
    }
    const ParkResult result = rule == Rule::Mvp ? mvp_park(prefs) : classical_park(prefs);
    if (!result.success()) {
        out << "failure: car " << result.failure().failed_car << " cannot park\n";
        return kDomainFailure;
    }
    out << "outcome: " << to_string(result.outcome()) << "\n";
    return kOk;
}

inline int run_fiber(const std::string& pi_text, bool list, const std::string& format,
                     std::uint64_t max_candidates, std::ostream& out) {
    const Perm pi = detail::parse_perm(pi_text);
    const std::vector<PrefList> members = enumerate_fiber(pi, FiberMode::Pruned, max_candidates);
    const std::uint64_t bound = omega_bound(pi);
    const FiberReport report{pi,
                             static_cast<std::uint64_t>(members.size()),
                             bound,
                             members.size() == bound,
                             pi.size() >= 3 && contains_pattern(pi, Perm({3, 2, 1})),
                             pi.size() >= 4 && contains_pattern(pi, Perm({3, 4, 1, 2}))};

    if (format == "json") {
        out << detail::fiber_json(report, list ? &members : nullptr).dump(2) << "\n";
    } else if (format == "csv") {
        out << "pi,fiber_size,omega_bound,tight,contains_321,contains_3412\n";
        out << detail::space_joined(pi.oneline()) << ',' << report.fiber_size << ','
            << report.omega_bound << ',' << detail::bool_str(report.tight) << ','
            << detail::bool_str(report.contains_321) << ','
            << detail::bool_str(report.contains_3412) << "\n";
    } else if (format == "text") {
        out << "pi: " << to_string(pi) << "\n";
        out << "fiber_size: " << report.fiber_size << "\n";
        out << "omega_bound: " << report.omega_bound << "\n";
        out << "tight: " << detail::bool_str(report.tight) << "\n";
        out << "contains_321: " << detail::bool_str(report.contains_321) << "\n";
        out << "contains_3412: " << detail::bool_str(report.contains_3412) << "\n";
        if (list) {
            out << "members:\n";
            for (const PrefList& m : members) out << to_string(m) << "\n";
        }
    } else {
        throw UsageError("invalid format '" + format + "' (expected text, json or csv)");
    }
    return kOk;
}

inline std::vector<SurveyRow> survey_rows(int n, int top, std::uint64_t max_candidates) {
    const Perm longest = Perm::reversal(n);
    const Perm near = n >= 3 ? Perm::near_reversal(n) : longest;

    // Partitioned by first element across workers; the merge below re-sorts,
    // so the worker count never affects the output bytes.
    const auto rows_with_first = [&](int first) {
        std::vector<SurveyRow> rows;
        std::vector<int> rest;
        for (int v = 1; v <= n; ++v)
            if (v != first) rest.push_back(v);
        do {
            std::vector<int> word{first};
            word.insert(word.end(), rest.begin(), rest.end());
            const Perm pi(std::move(word));
            const std::uint64_t size = fiber_size(pi, FiberMode::Pruned, max_candidates);
            const std::uint64_t bound = omega_bound(pi);
            rows.push_back(SurveyRow{pi, size, bound, size == bound, pi == longest,
                                     n >= 3 && pi == near});
        } while (std::next_permutation(rest.begin(), rest.end()));
        return rows;
    };

    std::vector<std::future<std::vector<SurveyRow>>> tasks;
    for (int first = 2; first <= n; ++first)
        tasks.push_back(std::async(std::launch::async, rows_with_first, first));
    std::vector<SurveyRow> all = rows_with_first(1);
    for (auto& task : tasks) {
        std::vector<SurveyRow> part = task.get();
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    const auto by_size_then_lex = [](const SurveyRow& a, const SurveyRow& b) {
        if (a.fiber_size != b.fiber_size) return a.fiber_size > b.fiber_size;
        return a.pi < b.pi;
    };
    std::sort(all.begin(), all.end(), by_size_then_lex);

    std::vector<SurveyRow> selected;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (static_cast<int>(i) < top || all[i].is_longest_word || all[i].is_w0_tilde)
            selected.push_back(all[i]);
    return selected;
}

inline int run_survey(int n, int top, const std::string& format, bool force,
                      std::uint64_t max_candidates, std::ostream& out) {
    if (n < 1) throw UsageError("survey size must be positive");
    if (top < 0) throw UsageError("--top must be nonnegative");
    if (n > kSurveyCeiling && !force)
        throw DomainError("survey of S_" + std::to_string(n) + " exceeds the default ceiling " +
                          std::to_string(kSurveyCeiling) + "; pass --force to run it");
    const std::vector<SurveyRow> rows = survey_rows(n, top, max_candidates);

    if (format == "json") {
        nlohmann::json j;
        j["n"] = n;
        nlohmann::json list = nlohmann::json::array();
        for (const SurveyRow& r : rows) {
            nlohmann::json row;
            row["pi"] = r.pi.oneline();
            row["fiber_size"] = r.fiber_size;
            row["omega_bound"] = r.omega_bound;
            row["tight"] = r.tight;
            row["is_longest_word"] = r.is_longest_word;
            row["is_w0_tilde"] = r.is_w0_tilde;
            list.push_back(std::move(row));
        }
        j["rows"] = std::move(list);
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "pi,fiber_size,omega_bound,tight,is_longest_word,is_w0_tilde\n";
        for (const SurveyRow& r : rows)
            out << detail::space_joined(r.pi.oneline()) << ',' << r.fiber_size << ','
                << r.omega_bound << ',' << detail::bool_str(r.tight) << ','
                << detail::bool_str(r.is_longest_word) << ','
                << detail::bool_str(r.is_w0_tilde) << "\n";
    } else if (format == "text") {
        out << "pi fiber_size omega_bound tight is_longest_word is_w0_tilde\n";
        for (const SurveyRow& r : rows)
            out << to_string(r.pi) << ' ' << r.fiber_size << ' ' << r.omega_bound << ' '
                << detail::bool_str(r.tight) << ' ' << detail::bool_str(r.is_longest_word) << ' '
                << detail::bool_str(r.is_w0_tilde) << "\n";
    } else {
        throw UsageError("invalid format '" + format + "' (expected text, json or csv)");
    }
    return kOk;
}

inline int run_motzkin(int n, const std::string& action, const std::string& arg,
                       std::ostream& out) {
    if (n < 1) throw UsageError("path length must be positive");
    if (action == "count") {
        out << motzkin_number(n) << "\n";
    } else if (action == "list") {
        for (const MotzkinPath& path : enumerate_motzkin(n)) out << path.str() << "\n";
    } else if (action == "to-pf") {
        if (arg.empty()) throw UsageError("to-pf requires a UHD path argument");
        std::vector<Step> steps;
        try {
            steps = steps_from_string(arg);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (static_cast<int>(steps.size()) != n)
            throw UsageError("path '" + arg + "' has length " + std::to_string(steps.size()) +
                             ", expected " + std::to_string(n));
        try {
            out << to_string(prefs_from_path(MotzkinPath(std::move(steps)))) << "\n";
        } catch (const std::invalid_argument& e) {
            throw DomainError(std::string("not a Motzkin path: ") + e.what());
        }
    } else if (action == "from-pf") {
        if (arg.empty()) throw UsageError("from-pf requires a preference list argument");
        const PrefList prefs = detail::parse_prefs(arg);
        if (prefs.size() != n)
            throw UsageError("preference list has length " + std::to_string(prefs.size()) +
                             ", expected " + std::to_string(n));
        out << steps_to_string(path_from_prefs(prefs)) << "\n";
    } else {
        throw UsageError("invalid action '" + action +
                         "' (expected count, list, to-pf or from-pf)");
    }
    return kOk;
}

// Parses the argument vector (program name excluded) and dispatches; all
// reports go to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"MVP parking process toolkit"};
    app.set_version_flag("--version", std::string("parking-lab ") + kVersion);
    app.require_subcommand(0, 1);

    std::string rule;
    std::string prefs_text;
    bool trace = false;
    CLI::App* simulate = app.add_subcommand("simulate", "park one preference list");
    simulate->add_option("--rule", rule, "parking rule: classical or mvp")->required();
    simulate->add_flag("--trace", trace, "print occupancy bits after each arrival");
    simulate->add_option("prefs", prefs_text, "comma-separated preferences")->required();

    std::string pi_text;
    bool list = false;
    std::string fiber_format = "text";
    std::uint64_t fiber_max = kDefaultMaxCandidates;
    CLI::App* fiber = app.add_subcommand("fiber", "report the MVP fiber of a permutation");
    fiber->add_option("pi", pi_text, "comma-separated one-line permutation")->required();
    fiber->add_flag("--list", list, "list every fiber member");
    fiber->add_option("--format", fiber_format, "text, json or csv");
    CLI::Option* fiber_max_opt = fiber->add_option("--max-candidates", fiber_max,
                                                   "search-space ceiling");

    int survey_n = 0;
    int top = 5;
    std::string survey_format = "text";
    bool force = false;
    std::uint64_t survey_max = kDefaultMaxCandidates;
    CLI::App* survey = app.add_subcommand("survey", "fiber sizes across a symmetric group");
    survey->add_option("n", survey_n, "permutation length")->required();
    survey->add_option("--top", top, "number of largest fibers to report");
    survey->add_option("--format", survey_format, "text, json or csv");
    survey->add_flag("--force", force, "run past the default size ceiling");
    CLI::Option* survey_max_opt = survey->add_option("--max-candidates", survey_max,
                                                     "search-space ceiling");

    int motzkin_n = 0;
    std::string action;
    std::string motzkin_arg;
    CLI::App* motzkin = app.add_subcommand("motzkin", "Motzkin path tooling");
    motzkin->add_option("n", motzkin_n, "path length")->required();
    motzkin->add_option("action", action, "count, list, to-pf or from-pf")->required();
    motzkin->add_option("arg", motzkin_arg, "UHD path (to-pf) or preference list (from-pf)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*simulate) return run_simulate(rule, trace, prefs_text, out);
        if (*fiber)
            return run_fiber(pi_text, list, fiber_format,
                             detail::resolve_max_candidates(fiber_max, fiber_max_opt->count() > 0),
                             out);
        if (*survey)
            return run_survey(survey_n, top, survey_format, force,
                              detail::resolve_max_candidates(survey_max,
                                                             survey_max_opt->count() > 0),
                              out);
        if (*motzkin) return run_motzkin(motzkin_n, action, motzkin_arg, out);
        err << app.help();
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainFailure;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainFailure;
    } catch (const NotParkingFunction& e) {
        err << "error: " << e.what() << "\n";
        return kDomainFailure;
    }
}

}  // namespace parking_lab::cli
