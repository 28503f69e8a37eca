#pragma once

// The transition graph on the 12 oriented boundary edges: cyclic paths,
// the path -> word construction, exact Burnside counting and the
// path-length budget N(L, K).

#include "pants/error.hpp"
#include "pants/pants_complex.hpp"
#include "pants/rotation.hpp"
#include "pants/words.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pants {

using BigInt = boost::multiprecision::cpp_int;

enum class ArcLabel : std::uint8_t { O, E };

inline char arc_char(ArcLabel l) { return l == ArcLabel::O ? 'o' : 'e'; }

inline constexpr int kGraphVertices = 12;
inline constexpr int kDefaultEnumerationBudget = 24;

/// Matrix numbering of the vertices: x1..x6 -> 0..5, x1^-1..x6^-1 -> 6..11.
constexpr int matrix_index(OrientedEdge v) { return (v.index() - 1) + (v.is_forward() ? 0 : 6); }
constexpr OrientedEdge matrix_vertex(int i) { return i < 6 ? x(i + 1) : x_inv(i - 5); }

using AdjacencyMatrix = std::array<std::array<int, kGraphVertices>, kGraphVertices>;

/// o-arcs: x_i -> x_{i+1} and x_i^-1 -> x_{i-1}^-1; e-arcs: x_i <-> x_{i+2}^-1
/// (indices mod 6). Every vertex has exactly one outgoing arc of each label.
class EdgeGraph {
  public:
    struct Arc {
        OrientedEdge from, to;
        ArcLabel label;
    };

    OrientedEdge successor(OrientedEdge v, ArcLabel l) const {
        return next_[l == ArcLabel::O ? 0 : 1][v.code()];
    }

    std::optional<ArcLabel> arc_label(OrientedEdge from, OrientedEdge to) const {
        if (!from.is_boundary() || !to.is_boundary())
            return std::nullopt;
        if (successor(from, ArcLabel::O) == to)
            return ArcLabel::O;
        if (successor(from, ArcLabel::E) == to)
            return ArcLabel::E;
        return std::nullopt;
    }

    std::vector<Arc> arcs() const {
        std::vector<Arc> out;
        for (int i = 0; i < kGraphVertices; ++i) {
            auto v = matrix_vertex(i);
            out.push_back({v, successor(v, ArcLabel::O), ArcLabel::O});
            out.push_back({v, successor(v, ArcLabel::E), ArcLabel::E});
        }
        return out;
    }

    const AdjacencyMatrix& adjacency() const { return adjacency_; }

    friend EdgeGraph build_graph(const PantsComplex&);

  private:
    std::array<std::array<OrientedEdge, kBoundaryLetters>, 2> next_{};
    AdjacencyMatrix adjacency_{};
};

namespace detail {

using BigMatrix = std::vector<std::vector<BigInt>>;

inline BigMatrix to_big(const AdjacencyMatrix& m) {
    BigMatrix out(kGraphVertices, std::vector<BigInt>(kGraphVertices));
    for (int i = 0; i < kGraphVertices; ++i)
        for (int j = 0; j < kGraphVertices; ++j)
            out[i][j] = m[i][j];
    return out;
}

inline BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
    const std::size_t n = a.size();
    BigMatrix c(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline BigInt trace(const BigMatrix& a) {
    BigInt t = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        t += a[i][i];
    return t;
}

/// Faddeev-LeVerrier; every division is exact for integer matrices.
/// Returns coefficients of det(lambda I - M), lowest degree first.
inline std::vector<BigInt> charpoly(const BigMatrix& m) {
    const std::size_t n = m.size();
    std::vector<BigInt> c(n + 1);
    c[n] = 1;
    BigMatrix mk(n, std::vector<BigInt>(n)); // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        BigMatrix next = multiply(m, mk);
        for (std::size_t i = 0; i < n; ++i)
            next[i][i] += c[n - k + 1];
        mk = std::move(next);
        BigInt t = trace(multiply(m, mk));
        BigInt q = t / static_cast<long>(k);
        check_internal(q * static_cast<long>(k) == t, "inexact Faddeev-LeVerrier division");
        c[n - k] = -q;
    }
    return c;
}

inline std::vector<BigInt> poly_multiply(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

} // namespace detail

/// lambda^6 (lambda-2)(lambda-1)^2(lambda+1)^2(lambda+2), lowest degree first.
inline std::vector<BigInt> expected_charpoly() {
    std::vector<BigInt> p{1};
    for (int k = 0; k < 6; ++k)
        p = detail::poly_multiply(p, {0, 1});
    for (int root : {2, 1, 1, -1, -1, -2})
        p = detail::poly_multiply(p, {BigInt(-root), 1});
    return p;
}

/// Characteristic polynomial det(lambda I - M) of the adjacency matrix,
/// lowest degree first (exact).
inline std::vector<BigInt> characteristic_polynomial(const EdgeGraph& g) {
    return detail::charpoly(detail::to_big(g.adjacency()));
}

inline EdgeGraph build_graph(const PantsComplex& complex = pants_complex()) {
    EdgeGraph g;
    for (int i = 1; i <= 6; ++i) {
        const int next = i % 6 + 1;
        const int prev = (i + 4) % 6 + 1;
        const int plus2 = (i + 1) % 6 + 1;
        const int minus2 = (i + 3) % 6 + 1;
        g.next_[0][x(i).code()] = x(next);
        g.next_[0][x_inv(i).code()] = x_inv(prev);
        g.next_[1][x(i).code()] = x_inv(plus2);
        g.next_[1][x_inv(i).code()] = x(minus2);
    }
    for (int i = 0; i < kGraphVertices; ++i) {
        auto v = matrix_vertex(i);
        for (auto l : {ArcLabel::O, ArcLabel::E})
            g.adjacency_[i][matrix_index(g.successor(v, l))] += 1;
    }

    using detail::check_internal;
    for (int i = 0; i < kGraphVertices; ++i) {
        auto v = matrix_vertex(i);
        check_internal(g.successor(v, ArcLabel::O) != v && g.successor(v, ArcLabel::E) != v,
                       "self-loop in transition graph");
        // e-arcs are two-way, o-arcs are not
        check_internal(g.successor(g.successor(v, ArcLabel::E), ArcLabel::E) == v,
                       "e-arc not bidirectional");
        check_internal(g.successor(g.successor(v, ArcLabel::O), ArcLabel::O) != v,
                       "o-arc bidirectional");
        // each arc joins subwords through a forced seam on an alternating word
        for (auto l : {ArcLabel::O, ArcLabel::E}) {
            auto last = complex.boundary_successor(v);
            if (l == ArcLabel::O)
                last = complex.boundary_successor(last);
            const auto to = g.successor(v, l);
            check_internal(complex.seam_between(last, to).has_value(), "arc without forced seam");
            check_internal(complex.hexagon_of(last) != complex.hexagon_of(to),
                           "arc breaks alternation");
        }
    }
    // block form [[A, A^2], [A^-2, A^-1]] with A^6 = I
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const int a = (j == (i + 1) % 6) ? 1 : 0;
            const int a2 = (j == (i + 2) % 6) ? 1 : 0;
            const int am2 = (j == (i + 4) % 6) ? 1 : 0;
            const int am1 = (j == (i + 5) % 6) ? 1 : 0;
            check_internal(g.adjacency_[i][j] == a && g.adjacency_[i][j + 6] == a2 &&
                               g.adjacency_[i + 6][j] == am2 && g.adjacency_[i + 6][j + 6] == am1,
                           "adjacency block form");
        }
    check_internal(characteristic_polynomial(g) == expected_charpoly(),
                   "spectrum of the transition graph");
    return g;
}

inline const EdgeGraph& edge_graph() {
    static const EdgeGraph instance = build_graph(pants_complex());
    return instance;
}

/// A closed path in the transition graph, stored in its least vertex
/// rotation (letter order of OrientedEdge). `labels()[i]` is the label of
/// the arc from vertex i to vertex i+1 (cyclically).
class CyclicPath {
  public:
    std::span<const OrientedEdge> vertices() const { return vertices_; }
    std::span<const ArcLabel> labels() const { return labels_; }
    std::size_t size() const { return vertices_.size(); }

    std::string label_string() const {
        std::string s;
        for (auto l : labels_)
            s += arc_char(l);
        return s;
    }
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i)
                s += ' ';
            s += vertices_[i].label();
        }
        return s;
    }

    friend bool operator==(const CyclicPath& a, const CyclicPath& b) {
        return a.vertices_ == b.vertices_;
    }
    friend auto operator<=>(const CyclicPath& a, const CyclicPath& b) {
        return a.vertices_ <=> b.vertices_;
    }

    friend CyclicPath make_cyclic_path(std::span<const OrientedEdge>, const EdgeGraph&);

  private:
    std::vector<OrientedEdge> vertices_;
    std::vector<ArcLabel> labels_;
};

inline CyclicPath make_cyclic_path(std::span<const OrientedEdge> vertices,
                                   const EdgeGraph& g = edge_graph()) {
    if (vertices.empty())
        throw Error(Errc::InvalidPath, "empty path");
    CyclicPath p;
    p.vertices_ = canonical_rotation(vertices);
    const std::size_t n = p.vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto l = g.arc_label(p.vertices_[i], p.vertices_[(i + 1) % n]);
        if (!l)
            throw Error(Errc::InvalidPath,
                        "no arc " + p.vertices_[i].label() + " -> " +
                            p.vertices_[(i + 1) % n].label(),
                        i);
        p.labels_.push_back(*l);
    }
    return p;
}

inline CyclicPath make_cyclic_path(std::initializer_list<OrientedEdge> vertices,
                                   const EdgeGraph& g = edge_graph()) {
    return make_cyclic_path(std::span<const OrientedEdge>(vertices.begin(), vertices.size()), g);
}

inline bool is_primitive(const CyclicPath& p) {
    return cyclic_period(p.vertices()) == p.size();
}

/// The path whose power p is, i.e. p stripped to its fundamental period.
inline CyclicPath primitive_root(const CyclicPath& p, const EdgeGraph& g = edge_graph()) {
    const std::size_t period = cyclic_period(p.vertices());
    return make_cyclic_path(p.vertices().first(period), g);
}

/// Each vertex v_i opens a boundary subword starting with v_i, of length 3
/// after an o-arc and 2 after an e-arc; seams are the forced ones.
inline CyclicWord path_to_word(const CyclicPath& p, const PantsComplex& complex = pants_complex()) {
    std::vector<std::vector<OrientedEdge>> runs;
    runs.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<OrientedEdge> run{p.vertices()[i]};
        const std::size_t len = p.labels()[i] == ArcLabel::O ? 3 : 2;
        while (run.size() < len)
            run.push_back(complex.boundary_successor(run.back()));
        runs.push_back(std::move(run));
    }
    if (runs.size() < 2)
        throw Error(Errc::InvalidPath, "path_to_word needs at least two vertices");
    return reconstruct_seams(runs, complex);
}

struct EnumerationOptions {
    int budget = kDefaultEnumerationBudget;
    bool parallel = true;
};

namespace detail {

// Depth-first walk over closed walks of length n that start at `first` and
// never visit a vertex smaller than it; keeps walks that are their own least
// rotation.
inline void enumerate_shard(const EdgeGraph& g, int n, OrientedEdge first, ArcLabel first_arc,
                            bool primitive_only, std::vector<std::vector<OrientedEdge>>& out) {
    std::vector<OrientedEdge> walk{first};
    walk.reserve(n);
    auto recurse = [&](auto&& self) -> void {
        if (static_cast<int>(walk.size()) == n) {
            if (!g.arc_label(walk.back(), first))
                return;
            std::span<const OrientedEdge> s(walk);
            if (least_rotation(s) != 0)
                return;
            if (primitive_only && cyclic_period(s) != s.size())
                return;
            out.push_back(walk);
            return;
        }
        for (auto l : {ArcLabel::O, ArcLabel::E}) {
            auto next = g.successor(walk.back(), l);
            if (next < first)
                continue;
            walk.push_back(next);
            self(self);
            walk.pop_back();
        }
    };
    if (n == 1)
        return; // no self-loops
    auto second = g.successor(first, first_arc);
    if (second < first)
        return;
    walk.push_back(second);
    recurse(recurse);
}

} // namespace detail

/// All cyclic paths of length exactly n, in ascending canonical order.
inline std::vector<CyclicPath> enumerate_cyclic_paths(int n, bool primitive_only,
                                                      EnumerationOptions opts = {},
                                                      const EdgeGraph& g = edge_graph()) {
    if (n < 1)
        throw Error(Errc::InvalidArgument, "path length must be >= 1");
    if (n > opts.budget)
        throw Error(Errc::BudgetExceeded, "path length " + std::to_string(n) +
                                              " exceeds enumeration budget " +
                                              std::to_string(opts.budget));

    // shards: (start vertex, first arc)
    std::vector<std::pair<OrientedEdge, ArcLabel>> shards;
    for (int c = 0; c < kBoundaryLetters; ++c)
        for (auto l : {ArcLabel::O, ArcLabel::E})
            shards.emplace_back(OrientedEdge::from_code(c), l);

    std::vector<std::vector<std::vector<OrientedEdge>>> results(shards.size());
    auto run = [&](std::size_t i) {
        detail::enumerate_shard(g, n, shards[i].first, shards[i].second, primitive_only,
                                results[i]);
    };
    if (opts.parallel && n >= 12) {
        std::vector<std::future<void>> jobs;
        for (std::size_t i = 0; i < shards.size(); ++i)
            jobs.push_back(std::async(std::launch::async, run, i));
        for (auto& j : jobs)
            j.get();
    } else {
        for (std::size_t i = 0; i < shards.size(); ++i)
            run(i);
    }

    std::vector<CyclicPath> paths;
    for (auto& shard : results)
        for (auto& walk : shard)
            paths.push_back(make_cyclic_path(walk, g));
    std::sort(paths.begin(), paths.end());
    return paths;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

/// H_n: 0 for odd n, and 2 + (1/m) sum_{d | m} phi(d) 4^{m/d} for n = 2m.
inline BigInt count_cyclic_paths(int n) {
    if (n < 1)
        throw Error(Errc::InvalidArgument, "path length must be >= 1");
    if (n % 2 == 1)
        return 0;
    const int m = n / 2;
    BigInt sum = 0;
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0)
            continue;
        sum += BigInt(euler_phi(d)) * boost::multiprecision::pow(BigInt(4), m / d);
    }
    BigInt q = sum / m;
    detail::check_internal(q * m == sum, "necklace sum not divisible");
    return 2 + q;
}

/// trace(M^k) by exact integer matrix powering.
inline BigInt trace_power(int k, const EdgeGraph& g = edge_graph()) {
    if (k < 1)
        throw Error(Errc::InvalidArgument, "power must be >= 1");
    detail::BigMatrix base = detail::to_big(g.adjacency());
    detail::BigMatrix result(kGraphVertices, std::vector<BigInt>(kGraphVertices));
    for (int i = 0; i < kGraphVertices; ++i)
        result[i][i] = 1;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1)
            result = detail::multiply(result, base);
        if (e > 1)
            base = detail::multiply(base, base);
    }
    return detail::trace(result);
}

/// N(L, K) = min{ L / (4 l_max), sqrt(K / 3) }.
inline double path_budget(double L, double K, double l_max) {
    if (!(L > 0) || !(K >= 0) || !(l_max > 0))
        throw Error(Errc::InvalidArgument, "path_budget needs L > 0, K >= 0, l_max > 0");
    return std::min(L / (4.0 * l_max), std::sqrt(K / 3.0));
}

} // namespace pants
