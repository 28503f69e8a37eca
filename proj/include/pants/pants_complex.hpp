#pragma once

// The edge alphabet of the hexagon decomposition of a pair of pants.
//
// Labeling convention (fixed once, reported by `alphabet dump`):
//   * unoriented boundary edges x1..x6; x1, x3, x5 lie on the front hexagon,
//     x2, x4, x6 on the back one;
//   * boundary component beta_k (k = 1, 2, 3) is the union of x_k and x_{k+3};
//   * both x_k and x_{k+3} run from the point u_k to the point w_k of beta_k,
//     so x_k x_{k+3}^-1 winds once around beta_k;
//   * seam y_k joins the two components other than beta_k and is oriented
//     from the lower-numbered component to the higher-numbered one. The three
//     seams join w_1-u_2, w_2-u_3 and w_3-u_1.
//
// The skeleton therefore has six vertices, numbered 2(k-1) for u_k and
// 2(k-1)+1 for w_k.

#include "pants/error.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace pants {

enum class EdgeKind : std::uint8_t { Boundary, Seam };
enum class Orientation : std::uint8_t { Forward, Reversed };
enum class Hexagon : std::uint8_t { Front, Back };

inline constexpr int kAlphabetSize = 18;
inline constexpr int kBoundaryLetters = 12;
inline constexpr int kSkeletonVertices = 6;

/// One of the 18 oriented edges x1..x6, x1^-1..x6^-1, y1..y3, y1^-1..y3^-1.
///
/// Letters are totally ordered: boundary before seam, then by index, then
/// forward before reversed. The order is the one used for every canonical
/// rotation in the library.
class OrientedEdge {
  public:
    constexpr OrientedEdge() = default;

    static constexpr OrientedEdge boundary(int index, Orientation o = Orientation::Forward) {
        return from_code(2 * (index - 1) + (o == Orientation::Reversed ? 1 : 0));
    }
    static constexpr OrientedEdge seam(int index, Orientation o = Orientation::Forward) {
        return from_code(kBoundaryLetters + 2 * (index - 1) +
                         (o == Orientation::Reversed ? 1 : 0));
    }
    static constexpr OrientedEdge from_code(int code) {
        OrientedEdge e;
        e.code_ = static_cast<std::uint8_t>(code);
        return e;
    }

    constexpr int code() const { return code_; }
    constexpr EdgeKind kind() const {
        return code_ < kBoundaryLetters ? EdgeKind::Boundary : EdgeKind::Seam;
    }
    constexpr bool is_boundary() const { return kind() == EdgeKind::Boundary; }
    constexpr bool is_seam() const { return kind() == EdgeKind::Seam; }
    constexpr int index() const {
        return is_boundary() ? code_ / 2 + 1 : (code_ - kBoundaryLetters) / 2 + 1;
    }
    constexpr Orientation orientation() const {
        return (code_ & 1) ? Orientation::Reversed : Orientation::Forward;
    }
    constexpr bool is_forward() const { return orientation() == Orientation::Forward; }
    constexpr OrientedEdge reversed() const { return from_code(code_ ^ 1); }

    /// "x1", "x4-", "y2", "y2-"
    std::string label() const {
        std::string s(1, is_boundary() ? 'x' : 'y');
        s += static_cast<char>('0' + index());
        if (!is_forward())
            s += '-';
        return s;
    }

    static std::optional<OrientedEdge> parse(std::string_view s) {
        if (s.size() < 2 || s.size() > 3)
            return std::nullopt;
        const bool rev = s.size() == 3;
        if (rev && s[2] != '-')
            return std::nullopt;
        const int idx = s[1] - '0';
        const auto o = rev ? Orientation::Reversed : Orientation::Forward;
        if (s[0] == 'x' && idx >= 1 && idx <= 6)
            return boundary(idx, o);
        if (s[0] == 'y' && idx >= 1 && idx <= 3)
            return seam(idx, o);
        return std::nullopt;
    }

    friend constexpr bool operator==(OrientedEdge, OrientedEdge) = default;
    friend constexpr auto operator<=>(OrientedEdge, OrientedEdge) = default;

  private:
    std::uint8_t code_ = 0;
};

constexpr OrientedEdge reverse(OrientedEdge e) { return e.reversed(); }

constexpr OrientedEdge x(int i) { return OrientedEdge::boundary(i); }
constexpr OrientedEdge x_inv(int i) { return OrientedEdge::boundary(i, Orientation::Reversed); }
constexpr OrientedEdge y(int j) { return OrientedEdge::seam(j); }
constexpr OrientedEdge y_inv(int j) { return OrientedEdge::seam(j, Orientation::Reversed); }

class PantsComplex;
inline PantsComplex build_complex();

/// Incidence tables of the hexagon decomposition. Immutable after
/// construction; obtain the shared instance with `pants_complex()`.
class PantsComplex {
  public:
    int start(OrientedEdge e) const { return start_[e.code()]; }
    int end(OrientedEdge e) const { return end_[e.code()]; }

    /// Hexagon carrying a boundary edge (either orientation).
    Hexagon hexagon_of(OrientedEdge e) const {
        detail::check_internal(e.is_boundary(), "hexagon_of: seam letter");
        return (e.index() % 2 == 1) ? Hexagon::Front : Hexagon::Back;
    }

    /// Boundary component beta in {1,2,3} of a boundary edge.
    int component_of(OrientedEdge e) const {
        detail::check_internal(e.is_boundary(), "component_of: seam letter");
        return (e.index() - 1) % 3 + 1;
    }

    /// Components joined by a seam, in its forward direction.
    std::pair<int, int> seam_components(OrientedEdge s) const {
        detail::check_internal(s.is_seam(), "seam_components: boundary letter");
        const int a = start(s) / 2 + 1;
        const int b = end(s) / 2 + 1;
        return {a, b};
    }

    /// The oriented boundary edge continuing `e` along its boundary component.
    OrientedEdge boundary_successor(OrientedEdge e) const {
        detail::check_internal(e.is_boundary(), "boundary_successor: seam letter");
        return successor_[e.code()];
    }

    bool can_concatenate(OrientedEdge a, OrientedEdge b) const {
        return concat_[a.code()][b.code()];
    }

    /// The seam y with x y x' a non-backtracking path, if one exists.
    std::optional<OrientedEdge> seam_between(OrientedEdge from, OrientedEdge to) const {
        const int s = seam_between_[from.code()][to.code()];
        if (s < 0)
            return std::nullopt;
        return OrientedEdge::from_code(s);
    }

    /// Closed boundary walk of one hexagon: x y x y x y.
    const std::array<OrientedEdge, 6>& hexagon_relator(Hexagon h) const {
        return relator_[h == Hexagon::Front ? 0 : 1];
    }

    /// Image of a letter under the relabeling x_i -> x_{i+shift}. Every shift
    /// is an automorphism of the complex; odd shifts swap the hexagons.
    OrientedEdge relabel(OrientedEdge e, int shift) const {
        shift = ((shift % 6) + 6) % 6;
        if (e.is_boundary())
            return OrientedEdge::boundary((e.index() - 1 + shift) % 6 + 1, e.orientation());
        auto move = [&](int v) {
            const int comp = v / 2;
            return 2 * ((comp + shift) % 3) + v % 2;
        };
        const int s = move(start(e));
        const int t = move(end(e));
        for (int c = kBoundaryLetters; c < kAlphabetSize; ++c) {
            auto cand = OrientedEdge::from_code(c);
            if (start(cand) == s && end(cand) == t)
                return cand;
        }
        throw Error(Errc::InternalInconsistency, "relabel: no image seam");
    }

    static std::string vertex_name(int v) {
        return std::string(v % 2 == 0 ? "u" : "w") + static_cast<char>('1' + v / 2);
    }

    friend PantsComplex build_complex();

  private:
    PantsComplex() = default;
    void validate() const;

    std::array<int, kAlphabetSize> start_{};
    std::array<int, kAlphabetSize> end_{};
    std::array<OrientedEdge, kAlphabetSize> successor_{};
    std::array<std::array<bool, kAlphabetSize>, kAlphabetSize> concat_{};
    std::array<std::array<int, kAlphabetSize>, kAlphabetSize> seam_between_{};
    std::array<std::array<OrientedEdge, 6>, 2> relator_{};
};

namespace detail {
constexpr int u_vertex(int component) { return 2 * (component - 1); }
constexpr int w_vertex(int component) { return 2 * (component - 1) + 1; }
} // namespace detail

/// Builds and validates the incidence tables.
inline PantsComplex build_complex() {
    using detail::u_vertex;
    using detail::w_vertex;
    PantsComplex c;

    auto set_edge = [&](OrientedEdge e, int s, int t) {
        c.start_[e.code()] = s;
        c.end_[e.code()] = t;
        c.start_[e.reversed().code()] = t;
        c.end_[e.reversed().code()] = s;
    };
    for (int i = 1; i <= 6; ++i) {
        const int comp = (i - 1) % 3 + 1;
        set_edge(x(i), u_vertex(comp), w_vertex(comp));
    }
    // y_k joins the components other than beta_k
    set_edge(y(1), w_vertex(2), u_vertex(3));
    set_edge(y(2), u_vertex(1), w_vertex(3));
    set_edge(y(3), w_vertex(1), u_vertex(2));

    for (int i = 1; i <= 6; ++i) {
        const int j = (i + 2) % 6 + 1; // i + 3 mod 6
        c.successor_[x(i).code()] = x_inv(j);
        c.successor_[x_inv(i).code()] = x(j);
    }

    for (int a = 0; a < kAlphabetSize; ++a) {
        for (int b = 0; b < kAlphabetSize; ++b) {
            const auto ea = OrientedEdge::from_code(a);
            const auto eb = OrientedEdge::from_code(b);
            c.concat_[a][b] = c.end_[a] == c.start_[b] && eb != ea.reversed() &&
                              !(ea.is_seam() && eb.is_seam());
            c.seam_between_[a][b] = -1;
        }
    }
    for (int a = 0; a < kBoundaryLetters; ++a) {
        for (int b = 0; b < kBoundaryLetters; ++b) {
            for (int s = kBoundaryLetters; s < kAlphabetSize; ++s) {
                if (c.concat_[a][s] && c.concat_[s][b]) {
                    detail::check_internal(c.seam_between_[a][b] < 0,
                                           "two seams join the same boundary pair");
                    c.seam_between_[a][b] = s;
                }
            }
        }
    }

    c.relator_[0] = {x(1), y(3), x(5), y(1), x(3), y_inv(2)};
    c.relator_[1] = {x(4), y(3), x(2), y(1), x(6), y_inv(2)};

    c.validate();
    return c;
}

inline void PantsComplex::validate() const {
    using detail::check_internal;
    int boundary = 0, seams = 0;
    for (int code = 0; code < kAlphabetSize; ++code) {
        auto e = OrientedEdge::from_code(code);
        check_internal(e.reversed().reversed() == e, "reverse is not an involution");
        check_internal(start(e) != end(e), "loop edge");
        check_internal(start(e.reversed()) == end(e), "reversal endpoints");
        (e.is_boundary() ? boundary : seams)++;
    }
    check_internal(boundary == 12 && seams == 6, "alphabet size");

    for (int comp = 1; comp <= 3; ++comp) {
        int front = 0, back = 0;
        for (int i = 1; i <= 6; ++i) {
            if (component_of(x(i)) == comp)
                (hexagon_of(x(i)) == Hexagon::Front ? front : back)++;
        }
        check_internal(front == 1 && back == 1, "component must hold one edge per hexagon");
    }

    for (int code = 0; code < kBoundaryLetters; ++code) {
        auto e = OrientedEdge::from_code(code);
        auto s = boundary_successor(e);
        check_internal(hexagon_of(s) != hexagon_of(e), "successor must switch hexagons");
        check_internal(component_of(s) == component_of(e), "successor leaves component");
        check_internal(can_concatenate(e, s), "successor does not concatenate");
        int boundary_next = 0, seam_next = 0;
        for (int n = 0; n < kAlphabetSize; ++n) {
            auto f = OrientedEdge::from_code(n);
            if (can_concatenate(e, f))
                (f.is_boundary() ? boundary_next : seam_next)++;
        }
        check_internal(boundary_next == 1 && seam_next >= 1, "continuations of a boundary edge");
    }

    for (int a = 0; a < kAlphabetSize; ++a) {
        for (int b = 0; b < kAlphabetSize; ++b) {
            auto ea = OrientedEdge::from_code(a);
            auto eb = OrientedEdge::from_code(b);
            check_internal(can_concatenate(ea, eb) == can_concatenate(eb.reversed(), ea.reversed()),
                           "concatenation not reversal-symmetric");
            if (ea.is_boundary() && eb.is_boundary() && component_of(ea) == component_of(eb))
                check_internal(!seam_between(ea, eb), "seam between same-component edges");
        }
    }

    // x_j x_{j+3}^-1 runs along a component; a seam joins x_{j+3}^-1 to x_{j+2}^-1
    for (int j = 1; j <= 6; ++j) {
        const int j3 = (j + 2) % 6 + 1;
        const int j2 = (j + 1) % 6 + 1;
        check_internal(can_concatenate(x(j), x_inv(j3)), "x_j x_{j+3}^-1 must concatenate");
        check_internal(seam_between(x_inv(j3), x_inv(j2)).has_value(),
                       "missing seam between x_{j+3}^-1 and x_{j+2}^-1");
    }

    for (const auto& rel : relator_) {
        for (std::size_t i = 0; i < rel.size(); ++i)
            check_internal(end(rel[i]) == start(rel[(i + 1) % rel.size()]), "hexagon relator");
    }
}

/// Shared, validated instance.
inline const PantsComplex& pants_complex() {
    static const PantsComplex instance = build_complex();
    return instance;
}

} // namespace pants
