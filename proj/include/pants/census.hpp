#pragma once

// Witness censuses of closed geodesics of bounded length and
// self-intersection, and the closed-form lower bounds they are checked
// against.

#include "pants/error.hpp"
#include "pants/hyperbolic.hpp"
#include "pants/intersection_oracle.hpp"
#include "pants/path_graph.hpp"
#include "pants/words.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pants {

// ---------------------------------------------------------------------------
// Pants bound
// ---------------------------------------------------------------------------

/// 2 + 1/2 min{ 2^{L / (8 l_max)}, 2^{sqrt(K / 12)} }, valid for
/// L >= 8 l_max and K >= 12.
inline double pants_lower_bound(double L, double K, double l_max) {
    if (!(l_max > 0))
        throw Error(Errc::InvalidArgument, "l_max must be positive");
    if (!(L >= 8 * l_max))
        throw Error(Errc::HypothesisViolated, "L: requires L >= 8 l_max");
    if (!(K >= 12))
        throw Error(Errc::HypothesisViolated, "K: requires K >= 12");
    return 2 + 0.5 * std::min(std::exp2(L / (8 * l_max)), std::exp2(std::sqrt(K / 12)));
}

// ---------------------------------------------------------------------------
// Surface bound
// ---------------------------------------------------------------------------

struct SurfaceParams {
    int genus = 0;
    int boundary_count = 0;
    double area = 0;
    double systole = 0;
    double pants_constant = 0; // c_X, supplied by the caller

    /// Dimension 6g - 6 + 2n of the Teichmueller space.
    int exponent() const { return 6 * genus - 6 + 2 * boundary_count; }

    void validate() const {
        if (genus < 0 || boundary_count < 0)
            throw Error(Errc::InvalidArgument, "genus and boundary count must be nonnegative");
        if (exponent() < 2)
            throw Error(Errc::InvalidArgument, "surface must satisfy 6g - 6 + 2n >= 2");
        if (!(area > 0) || !(systole > 0) || !(pants_constant > 0) || !std::isfinite(area) ||
            !std::isfinite(systole) || !std::isfinite(pants_constant))
            throw Error(Errc::InvalidArgument, "area, systole and c_X must be positive");
    }
};

/// s_X = 3 asinh(Area / l_sys).
inline double surface_s(double area, double systole) {
    if (!(area > 0) || !(systole > 0))
        throw Error(Errc::InvalidArgument, "area and systole must be positive");
    return 3 * std::asinh(area / systole);
}

struct SurfaceBound {
    double value = 0;
    double s = 0;       // s_X
    double s_prime = 0; // s_X + l_sys
    double margin = 0;  // L - 6 s'_X sqrt(K), positive when the enforced hypothesis holds
    bool satisfies_6s = false;       // L > 6 s_X sqrt(K)
    bool satisfies_3s = false;       // L > 3 s_X sqrt(K)
    bool satisfies_6s_prime = false; // L > 6 s'_X sqrt(K), enforced
};

/// Hypothesis report without evaluating the bound; never throws on a
/// violated hypothesis.
inline SurfaceBound surface_hypotheses(const SurfaceParams& p, double L, double K) {
    p.validate();
    SurfaceBound b;
    b.s = surface_s(p.area, p.systole);
    b.s_prime = b.s + p.systole;
    const double root = std::sqrt(std::max(K, 0.0));
    b.margin = L - 6 * b.s_prime * root;
    b.satisfies_6s = L > 6 * b.s * root;
    b.satisfies_3s = L > 3 * b.s * root;
    b.satisfies_6s_prime = b.margin > 0;
    return b;
}

/// c_X (L / (6 sqrt K))^{6g-6+2n} (2 + 1/2 2^{sqrt(K/12)}) for K > 12 and
/// L > 6 s'_X sqrt(K).
inline SurfaceBound surface_lower_bound(const SurfaceParams& p, double L, double K) {
    if (!(K > 12))
        throw Error(Errc::HypothesisViolated, "K: requires K > 12");
    SurfaceBound b = surface_hypotheses(p, L, K);
    if (!b.satisfies_6s_prime)
        throw Error(Errc::HypothesisViolated, "L: requires L > 6 s'_X sqrt(K)");
    b.value = p.pants_constant * std::pow(L / (6 * std::sqrt(K)), p.exponent()) *
              (2 + 0.5 * std::exp2(std::sqrt(K / 12)));
    return b;
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

struct CensusQuery {
    double L = 0;
    std::int64_t K = 0;
    std::array<double, 3> boundary_lengths{};
};

struct CensusOptions {
    bool with_oracle = false;
    int budget = kDefaultEnumerationBudget;
    double tolerance = 1e-9;
    bool parallel = true;
};

struct CensusRecord {
    CyclicPath path;
    CyclicWord word;
    std::size_t word_length = 0;
    std::int64_t word_intersection = 0;
    double length_upper_bound = 0; // l_max |w|
    double exact_length = 0;
    FreeGroupElement conjugacy_form;
    std::optional<int> oracle_intersections;
};

struct Census {
    CensusQuery query;
    PantsMetric metric;
    double path_budget = 0;  // N(L, K)
    int max_path_length = 0; // floor of N(L, K), up to the tolerance
    std::optional<double> lower_bound;
    std::vector<CensusRecord> records;
};

/// Largest path length admitted by the budget N. A budget within
/// `tolerance` (relative) of an integer counts as that integer.
inline int max_path_length(double budget, double tolerance) {
    return static_cast<int>(std::floor(budget * (1 + tolerance)));
}

namespace detail {

inline CensusRecord make_record(const CyclicPath& path, const PantsMetric& metric,
                                const Holonomy& holonomy, const CensusQuery& q,
                                const CensusOptions& opts) {
    CyclicWord word = path_to_word(path);
    CensusRecord r{path, word, word.size(), self_intersection(word), 0, 0, word_to_group(word),
                   std::nullopt};
    r.length_upper_bound = metric.l_max * static_cast<double>(r.word_length);
    r.exact_length = geodesic_length(r.conjugacy_form, holonomy);

    const double slack = 1 + opts.tolerance;
    const auto tau = static_cast<std::int64_t>(path.size());
    check_internal(r.word_length <= 4 * path.size(), "word longer than 4 |tau|");
    check_internal(r.exact_length <= r.length_upper_bound * slack,
                   "geodesic longer than its edge path");
    check_internal(r.length_upper_bound <= q.L * slack, "length certificate exceeds L");
    check_internal(r.word_intersection <= 3 * tau * tau, "i(w,w) exceeds 3 |tau|^2");
    check_internal(r.word_intersection <= q.K, "i(w,w) exceeds K");
    if (opts.with_oracle) {
        r.oracle_intersections = self_intersection_number(r.conjugacy_form, holonomy);
        check_internal(*r.oracle_intersections <= r.word_intersection,
                       "geometric self-intersection exceeds i(w,w)");
    }
    return r;
}

} // namespace detail

/// Every primitive cyclic path with 2 <= |tau| <= N(L, K), turned into a
/// certified record. Records are sorted by path.
inline Census run_census(const CensusQuery& q, const CensusOptions& opts = {}) {
    if (!(q.L > 0) || !std::isfinite(q.L))
        throw Error(Errc::InvalidArgument, "L must be positive");
    if (q.K < 0)
        throw Error(Errc::InvalidArgument, "K must be nonnegative");

    Census c;
    c.query = q;
    c.metric = solve_hexagon(q.boundary_lengths[0], q.boundary_lengths[1], q.boundary_lengths[2]);
    const Holonomy holonomy = build_holonomy(c.metric);
    const double K = static_cast<double>(q.K);
    c.path_budget = path_budget(q.L, K, c.metric.l_max);
    c.max_path_length = max_path_length(c.path_budget, opts.tolerance);
    if (c.max_path_length > opts.budget)
        throw Error(Errc::BudgetExceeded, "N(L,K) = " + std::to_string(c.path_budget) +
                                              " exceeds enumeration budget " +
                                              std::to_string(opts.budget));

    std::vector<CyclicPath> paths;
    for (int n = 2; n <= c.max_path_length; ++n) {
        if (trace_power(n) == 0)
            continue; // no closed walks of this length at all
        auto layer = enumerate_cyclic_paths(n, true, {opts.budget, opts.parallel});
        paths.insert(paths.end(), layer.begin(), layer.end());
    }
    std::sort(paths.begin(), paths.end());

    const std::size_t workers =
        opts.parallel ? std::max(1u, std::min(std::thread::hardware_concurrency(), 16u)) : 1;
    const std::size_t chunk = (paths.size() + workers - 1) / std::max<std::size_t>(workers, 1);
    std::vector<std::future<std::vector<CensusRecord>>> jobs;
    for (std::size_t begin = 0; begin < paths.size(); begin += chunk) {
        const std::size_t end = std::min(paths.size(), begin + chunk);
        jobs.push_back(std::async(paths.size() > 64 ? std::launch::async : std::launch::deferred,
                                  [&, begin, end] {
                                      std::vector<CensusRecord> out;
                                      for (std::size_t i = begin; i < end; ++i)
                                          out.push_back(detail::make_record(paths[i], c.metric,
                                                                            holonomy, q, opts));
                                      return out;
                                  }));
    }
    for (auto& j : jobs)
        for (auto& r : j.get())
            c.records.push_back(std::move(r));

    std::vector<FreeGroupElement> forms;
    forms.reserve(c.records.size());
    for (const auto& r : c.records)
        forms.push_back(r.conjugacy_form);
    std::sort(forms.begin(), forms.end());
    detail::check_internal(std::adjacent_find(forms.begin(), forms.end()) == forms.end(),
                           "two census paths give the same conjugacy class");

    if (q.L >= 8 * c.metric.l_max && K >= 12) {
        c.lower_bound = pants_lower_bound(q.L, K, c.metric.l_max);
        detail::check_internal(static_cast<double>(c.records.size()) >= *c.lower_bound,
                               "census smaller than the closed-form lower bound");
    }
    return c;
}

} // namespace pants
