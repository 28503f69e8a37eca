#pragma once

// Geometric self-intersection numbers of closed geodesics, computed by
// tracing the axis of rho(g) through a Schottky fundamental domain of the
// holonomy group.
//
// Everything happens in the Klein disk model, where geodesics are straight
// chords: clipping an axis to the domain is line clipping, and crossings of
// geodesic arcs are segment intersections. Distances along a chord come from
// the Hilbert cross-ratio. Group elements act on ideal points through the
// Cayley transform of the upper half-plane.
//
// The domain is bounded by four walls: the perpendiculars to the axis of A
// at signed distance -L1/2 and +L1/2 from the foot of the common
// perpendicular of the axes of A and B, and likewise for B. Unperturbed,
// they are lifts of the seams y2 and y1 extended into the funnels. A pairs
// its two walls, B pairs the other two.

#include "pants/error.hpp"
#include "pants/hyperbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pants {

struct Vec2 {
    double x = 0, y = 0;

    friend Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
    friend Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
    friend Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
    double norm() const { return std::hypot(x, y); }
};

inline double cross(Vec2 p, Vec2 q) { return p.x * q.y - p.y * q.x; }
inline double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }

/// Homogeneous coordinates; doubles as a vector of Minkowski space R^{2,1}.
struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 p, Vec3 q) { return {p.x + q.x, p.y + q.y, p.z + q.z}; }
    friend Vec3 operator-(Vec3 p, Vec3 q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
    friend Vec3 operator*(double s, Vec3 p) { return {s * p.x, s * p.y, s * p.z}; }
};

inline Vec3 cross(Vec3 p, Vec3 q) {
    return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}
inline double minkowski(Vec3 p, Vec3 q) { return p.x * q.x + p.y * q.y - p.z * q.z; }
inline Vec3 homogeneous(Vec2 p) { return {p.x, p.y, 1}; }
inline Vec2 dehomogenize(Vec3 p) { return {p.x / p.z, p.y / p.z}; }

/// Klein point -> unit hyperboloid.
inline Vec3 to_hyperboloid(Vec2 k) {
    const double s = 1 / std::sqrt(1 - dot(k, k));
    return {s * k.x, s * k.y, s};
}

/// An oriented complete geodesic, given by its ideal endpoints (unit vectors).
struct Geodesic {
    Vec2 from;
    Vec2 to;
};

/// Line a x + b y + c = 0 with (a, b) a unit vector.
struct Line {
    double a = 0, b = 0, c = 0;
    double eval(Vec2 p) const { return a * p.x + b * p.y + c; }
};

inline Line normalized_line(Vec3 h) {
    const double n = std::hypot(h.x, h.y);
    return {h.x / n, h.y / n, h.z / n};
}

inline Line chord_line(const Geodesic& g) {
    return normalized_line(cross(homogeneous(g.from), homogeneous(g.to)));
}

/// Ideal endpoints of a line meeting the open unit disk.
inline std::optional<std::pair<Vec2, Vec2>> circle_points(const Line& l) {
    const double d = -l.c; // signed distance of the line from the origin along (a, b)
    if (std::abs(d) >= 1)
        return std::nullopt;
    const Vec2 n{l.a, l.b};
    const Vec2 foot = d * n;
    const double h = std::sqrt(1 - d * d);
    const Vec2 t{-n.y, n.x};
    return std::make_pair(foot + h * t, foot - h * t);
}

// ---------------------------------------------------------------------------
// Moebius action on the ideal boundary
// ---------------------------------------------------------------------------

/// rho(g) conjugated into the disk by the Cayley transform z -> (z-i)/(z+i).
struct DiskMap {
    std::complex<double> m00, m01, m10, m11;

    static DiskMap from(const Matrix2& m) {
        using C = std::complex<double>;
        const C i(0, 1);
        // C M C^{-1}, C = [[1, -i], [1, i]], C^{-1} = 1/(2i) [[i, i], [-1, 1]]
        const C cm00 = m.a - i * m.c, cm01 = m.b - i * m.d;
        const C cm10 = m.a + i * m.c, cm11 = m.b + i * m.d;
        const C k = 1.0 / (2.0 * i);
        return {k * (cm00 * i - cm01), k * (cm00 * i + cm01), k * (cm10 * i - cm11),
                k * (cm10 * i + cm11)};
    }

    Vec2 apply(Vec2 p) const {
        const std::complex<double> z(p.x, p.y);
        const auto w = (m00 * z + m01) / (m10 * z + m11);
        const double r = std::abs(w);
        return {w.real() / r, w.imag() / r};
    }

    /// Action on an interior Klein point (via the Poincare disk).
    Vec2 apply_interior(Vec2 k) const {
        const double r2 = dot(k, k);
        const double s = 1 / (1 + std::sqrt(1 - r2)); // Klein -> Poincare
        const std::complex<double> z(s * k.x, s * k.y);
        const auto w = (m00 * z + m01) / (m10 * z + m11);
        const double n = std::norm(w);
        return {2 * w.real() / (1 + n), 2 * w.imag() / (1 + n)}; // Poincare -> Klein
    }

    /// Axis oriented from the repelling to the attracting fixed point.
    Geodesic axis() const {
        using C = std::complex<double>;
        // m10 z^2 + (m11 - m00) z - m01 = 0
        const C qa = m10, qb = m11 - m00, qc = -m01;
        const C disc = std::sqrt(qb * qb - 4.0 * qa * qc);
        const C q = -0.5 * (qb + (std::real(std::conj(qb) * disc) >= 0 ? disc : -disc));
        const C z1 = q / qa;
        const C z2 = qc / q;
        auto unit = [](C z) { return Vec2{z.real() / std::abs(z), z.imag() / std::abs(z)}; };
        const C det = m00 * m11 - m01 * m10;
        // attracting: |derivative| = |det| / |m10 z + m11|^2 < 1
        const bool z1_attracts = std::norm(m10 * z1 + m11) > std::abs(det);
        return z1_attracts ? Geodesic{unit(z2), unit(z1)} : Geodesic{unit(z1), unit(z2)};
    }
};

inline Geodesic apply(const Matrix2& m, const Geodesic& g) {
    const auto d = DiskMap::from(m);
    return {d.apply(g.from), d.apply(g.to)};
}

// ---------------------------------------------------------------------------
// Fundamental domain
// ---------------------------------------------------------------------------

/// Shifts of the domain walls along the axes, as fractions of L1/2 and L2/2.
struct DomainOffsets {
    double a = 0;
    double b = 0;
};

/// Offsets tried in order by `self_intersection_number`; the first is the
/// unperturbed seam domain.
inline constexpr std::array<DomainOffsets, 5> kDomainOffsets{{
    {0.0, 0.0},
    {0.071, -0.043},
    {-0.053, 0.061},
    {0.037, 0.089},
    {-0.091, -0.027},
}};

struct DomainWall {
    Geodesic wall;
    Line line;          // oriented so the domain is on the positive side
    std::uint8_t exit;  // free group letter applied when a geodesic leaves here
    int partner = 0;    // wall onto which `exit` maps this one
};

struct SchottkyDomain {
    std::array<DomainWall, 4> walls;
    Vec2 basepoint;
    Holonomy holonomy;

    bool contains(Vec2 p, double tol = 0) const {
        return std::all_of(walls.begin(), walls.end(),
                           [&](const DomainWall& w) { return w.line.eval(p) > -tol; });
    }
};

namespace detail {

// Foot of the common perpendicular of two ultraparallel geodesics, on the
// first. The common perpendicular passes through both poles.
inline Vec2 common_perpendicular_foot(const Geodesic& on, const Geodesic& other) {
    auto pole = [](const Geodesic& g) {
        const Vec3 l = cross(homogeneous(g.from), homogeneous(g.to));
        return Vec3{l.x, l.y, -l.z};
    };
    const Vec3 perp = cross(pole(on), pole(other));
    return dehomogenize(cross(perp, cross(homogeneous(on.from), homogeneous(on.to))));
}

// Geodesic perpendicular to `axis` at signed distance t from `foot`
// (positive towards axis.to).
inline Geodesic perpendicular_at(const Geodesic& axis, Vec2 foot, double t) {
    const Vec3 f = to_hyperboloid(foot);
    const Vec3 na = homogeneous(axis.to);
    const Vec3 nr = homogeneous(axis.from);
    const double alpha = minkowski(na, nr) / minkowski(f, nr);
    const double beta = minkowski(nr, na) / minkowski(f, na);
    const Vec3 tangent = (1 / alpha) * na - (1 / beta) * nr;
    const Vec3 velocity = std::sinh(t) * f + std::cosh(t) * tangent;
    const auto ends = circle_points(normalized_line({velocity.x, velocity.y, -velocity.z}));
    check_internal(ends.has_value(), "perpendicular misses the disk");
    return {ends->first, ends->second};
}

inline bool same_ideal_point(Vec2 p, Vec2 q, double tol) { return (p - q).norm() < tol; }

inline bool same_unoriented(const Geodesic& g, const Geodesic& h, double tol) {
    return (same_ideal_point(g.from, h.from, tol) && same_ideal_point(g.to, h.to, tol)) ||
           (same_ideal_point(g.from, h.to, tol) && same_ideal_point(g.to, h.from, tol));
}

} // namespace detail

inline SchottkyDomain build_domain(const Holonomy& h, DomainOffsets offsets = {}) {
    const Geodesic axis_a = DiskMap::from(h.gen_a).axis();
    const Geodesic axis_b = DiskMap::from(h.gen_b).axis();
    const Vec2 foot_a = detail::common_perpendicular_foot(axis_a, axis_b);
    const Vec2 foot_b = detail::common_perpendicular_foot(axis_b, axis_a);

    const double half_a = std::acosh(std::abs(h.gen_a.trace()) / 2);
    const double half_b = std::acosh(std::abs(h.gen_b.trace()) / 2);
    const double shift_a = offsets.a * half_a;
    const double shift_b = offsets.b * half_b;

    SchottkyDomain d;
    d.holonomy = h;
    // walls 0,1 belong to a; 2,3 to b. Leaving through the wall behind the
    // foot is undone by the generator itself.
    d.walls[0] = {detail::perpendicular_at(axis_a, foot_a, shift_a - half_a), {}, 0, 1};
    d.walls[1] = {detail::perpendicular_at(axis_a, foot_a, shift_a + half_a), {}, 1, 0};
    d.walls[2] = {detail::perpendicular_at(axis_b, foot_b, shift_b - half_b), {}, 2, 3};
    d.walls[3] = {detail::perpendicular_at(axis_b, foot_b, shift_b + half_b), {}, 3, 2};

    const Vec3 mid = to_hyperboloid(foot_a) + to_hyperboloid(foot_b);
    d.basepoint = {mid.x / mid.z, mid.y / mid.z};

    for (auto& w : d.walls) {
        w.line = chord_line(w.wall);
        if (w.line.eval(d.basepoint) < 0)
            w.line = {-w.line.a, -w.line.b, -w.line.c};
    }

    // each wall must leave the other three on the domain side
    for (std::size_t i = 0; i < d.walls.size(); ++i)
        for (std::size_t j = 0; j < d.walls.size(); ++j) {
            if (i == j)
                continue;
            const auto& l = d.walls[i].line;
            if (!(l.eval(d.walls[j].wall.from) > 0 && l.eval(d.walls[j].wall.to) > 0))
                throw Error(Errc::DomainOverlap, "domain walls intersect or are misnested");
        }
    for (const auto& w : d.walls) {
        const auto image = apply(h.generator(w.exit), w.wall);
        detail::check_internal(detail::same_unoriented(image, d.walls[w.partner].wall, 1e-9),
                               "side pairing does not map a wall onto its partner");
    }
    return d;
}

// ---------------------------------------------------------------------------
// Tracing
// ---------------------------------------------------------------------------

struct GeodesicPiece {
    Vec2 entry;      // Klein coordinates
    Vec2 exit;
    int entry_wall = 0;
    int exit_wall = 0;
    double length = 0;
};

struct TracedGeodesic {
    std::vector<GeodesicPiece> pieces;
    double total_length = 0;
    double translation_length = 0;
    /// h_1^-1 ... h_k^-1 for the side pairings h_j applied in order; conjugate
    /// to the traced element.
    FreeGroupElement cutting_word;
};

namespace detail {

struct Clip {
    double t_in = 0, t_out = 1;
    int in_wall = -1, out_wall = -1;
};

// Intersection of the chord from.to with the domain, parametrized by
// p(t) = from + t (to - from).
inline std::optional<Clip> clip(const Geodesic& g, const SchottkyDomain& d) {
    Clip c;
    c.t_in = 0;
    c.t_out = 1;
    double runner_up = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        const double f0 = d.walls[i].line.eval(g.from);
        const double f1 = d.walls[i].line.eval(g.to);
        if (f0 >= 0 && f1 >= 0)
            continue;
        if (f0 < 0 && f1 < 0)
            return std::nullopt;
        const double t = f0 / (f0 - f1);
        if (f0 < 0) {
            if (t > c.t_in || c.in_wall < 0) {
                c.t_in = t;
                c.in_wall = i;
            }
        } else {
            if (t < c.t_out || c.out_wall < 0) {
                runner_up = std::min(runner_up, c.out_wall < 0 ? runner_up : c.t_out);
                c.t_out = t;
                c.out_wall = i;
            } else {
                runner_up = std::min(runner_up, t);
            }
        }
    }
    if (c.in_wall < 0 || c.out_wall < 0 || !(c.t_in < c.t_out))
        return std::nullopt;
    if (runner_up - c.t_out < 1e-12)
        throw Error(Errc::NumericalDegeneracy, "geodesic leaves the domain through a corner");
    return c;
}

inline Vec2 chord_point(const Geodesic& g, double t) { return g.from + t * (g.to - g.from); }

inline double logit(double t) { return std::log(t) - std::log1p(-t); }

} // namespace detail

/// Cuts one period of the axis of rho(g) into arcs inside the domain.
/// Requires a primitive, non-identity element.
inline TracedGeodesic trace_geodesic(const FreeGroupElement& g, const SchottkyDomain& d) {
    if (g.is_identity())
        throw Error(Errc::IdentityElement, "identity has no geodesic");
    const FreeGroupElement c = g.cyclically_reduced();
    if (c.is_proper_power())
        throw Error(Errc::NotPrimitive, "oracle requires a primitive element");

    TracedGeodesic out;
    out.translation_length = geodesic_length(c, d.holonomy);

    // The axis of a cyclically reduced element crosses the domain; fall back
    // to other conjugates if rounding says otherwise. Each translate of the
    // axis is recomputed from its conjugate rather than by pushing ideal
    // points through the side pairings, which would amplify rounding by
    // e^{length} near the attracting end.
    std::optional<FreeGroupElement> start;
    const auto letters = std::vector<std::uint8_t>(c.letters().begin(), c.letters().end());
    for (std::size_t r = 0; r < letters.size() && !start; ++r) {
        FreeGroupElement conj(rotate_left(std::span<const std::uint8_t>(letters), r));
        if (detail::clip(DiskMap::from(d.holonomy.evaluate(conj)).axis(), d))
            start = conj;
    }
    if (!start)
        throw Error(Errc::NumericalDegeneracy, "axis does not meet the domain");

    const std::size_t max_steps = 4 * c.size() + 8;
    FreeGroupElement current = *start;
    std::vector<std::uint8_t> cutting;
    std::optional<Vec2> expected_entry;
    for (std::size_t step = 0;; ++step) {
        if (step > max_steps || current.size() > kMaxTraceWordLength)
            throw Error(Errc::NumericalDegeneracy, "tracing did not close up");
        const Geodesic axis = DiskMap::from(d.holonomy.evaluate(current)).axis();
        const auto clip = detail::clip(axis, d);
        if (!clip)
            throw Error(Errc::NumericalDegeneracy, "geodesic lost the domain");

        GeodesicPiece piece;
        piece.entry = detail::chord_point(axis, clip->t_in);
        piece.exit = detail::chord_point(axis, clip->t_out);
        piece.entry_wall = clip->in_wall;
        piece.exit_wall = clip->out_wall;
        piece.length = 0.5 * (detail::logit(clip->t_out) - detail::logit(clip->t_in));
        if (expected_entry) {
            if (d.walls[out.pieces.back().exit_wall].partner != clip->in_wall ||
                (piece.entry - *expected_entry).norm() > 1e-6)
                throw Error(Errc::NumericalDegeneracy, "pieces are not related by the side pairing");
        }
        out.total_length += piece.length;
        out.pieces.push_back(piece);

        const std::uint8_t letter = d.walls[clip->out_wall].exit;
        cutting.push_back(letter ^ 1);
        const auto pairing = FreeGroupElement::generator(letter / 2, letter & 1);
        current = pairing * current * pairing.inverse();
        expected_entry = DiskMap::from(d.holonomy.generator(letter)).apply_interior(piece.exit);
        if (current == *start)
            break;
    }
    out.cutting_word = FreeGroupElement(std::move(cutting));

    const double tol = 1e-6 * std::max(1.0, out.translation_length);
    if (std::abs(out.total_length - out.translation_length) > tol)
        throw Error(Errc::NumericalDegeneracy, "piece lengths do not add up to the translation length");
    if (!out.cutting_word.is_conjugate_to(c))
        throw Error(Errc::InternalInconsistency, "cutting sequence does not spell the element");
    return out;
}

/// Result of the pairwise crossing scan. `ambiguous` is set when some
/// crossing lies within the tolerance of a piece endpoint, i.e. on or near
/// a domain wall, where counting per piece is unreliable.
struct CrossingScan {
    int crossings = 0;
    bool ambiguous = false;
};

inline CrossingScan scan_crossings(const TracedGeodesic& t, double tol = 1e-6) {
    CrossingScan scan;
    const auto& p = t.pieces;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const Vec2 d1 = p[i].exit - p[i].entry;
            const Vec2 d2 = p[j].exit - p[j].entry;
            const double denom = cross(d1, d2);
            if (std::abs(denom) <= 1e-14 * d1.norm() * d2.norm())
                continue; // parallel chords never meet inside the disk
            const Vec2 w = p[j].entry - p[i].entry;
            const double s = cross(w, d2) / denom;
            const double u = cross(w, d1) / denom;
            const double slack_i = tol / d1.norm();
            const double slack_j = tol / d2.norm();
            const bool inside_i = s > slack_i && s < 1 - slack_i;
            const bool inside_j = u > slack_j && u < 1 - slack_j;
            const bool near_i = s > -slack_i && s < 1 + slack_i;
            const bool near_j = u > -slack_j && u < 1 + slack_j;
            if (inside_i && inside_j) {
                ++scan.crossings;
            } else if (near_i && near_j) {
                scan.ambiguous = true;
            }
        }
    }
    return scan;
}

/// Number of transverse double points of a traced primitive geodesic.
/// Throws UnresolvedCrossing when a crossing sits on a domain wall; use
/// `self_intersection_number` to resolve those with perturbed domains.
inline int count_self_crossings(const TracedGeodesic& t) {
    const auto scan = scan_crossings(t);
    if (scan.ambiguous)
        throw Error(Errc::UnresolvedCrossing, "crossing on a domain wall");
    return scan.crossings;
}

/// Geometric self-intersection number i(gamma, gamma) of the closed geodesic
/// in the class of g. Walks through `kDomainOffsets` until a domain places
/// no crossing near a wall.
inline int self_intersection_number(const FreeGroupElement& g, const Holonomy& h,
                                    std::span<const DomainOffsets> offsets = kDomainOffsets) {
    for (const auto& off : offsets) {
        try {
            const auto domain = build_domain(h, off);
            const auto traced = trace_geodesic(g, domain);
            const auto scan = scan_crossings(traced);
            if (!scan.ambiguous)
                return scan.crossings;
        } catch (const Error& e) {
            if (e.code() != Errc::NumericalDegeneracy && e.code() != Errc::DomainOverlap)
                throw;
        }
    }
    throw Error(Errc::UnresolvedCrossing, "no domain perturbation separates the crossings");
}

} // namespace pants
