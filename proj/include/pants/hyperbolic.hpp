#pragma once

// Geometric ground truth for the pair of pants: hexagon side lengths, a
// holonomy representation of the free fundamental group, the translation of
// edge words into group elements, and exact geodesic lengths from traces.

#include "pants/error.hpp"
#include "pants/pants_complex.hpp"
#include "pants/rotation.hpp"
#include "pants/words.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pants {

// ---------------------------------------------------------------------------
// Pants metric
// ---------------------------------------------------------------------------

/// Side lengths of the two congruent right-angled hexagons.
/// `seam_lengths[k]` is the length of seam y_{k+1}, which joins the two
/// components other than beta_{k+1}.
struct PantsMetric {
    std::array<double, 3> boundary_lengths{};
    std::array<double, 3> boundary_edge_lengths{};
    std::array<double, 3> seam_lengths{};
    double l_max = 0; // longest boundary or seam edge
    double l_min = 0; // shortest boundary edge

    double edge_length(OrientedEdge e, const PantsComplex& complex = pants_complex()) const {
        if (e.is_boundary())
            return boundary_edge_lengths[complex.component_of(e) - 1];
        return seam_lengths[e.index() - 1];
    }

    /// Length of the edge path p(w); bounds the geodesic length from above.
    double path_length(const CyclicWord& w, const PantsComplex& complex = pants_complex()) const {
        double total = 0;
        for (auto e : w.letters())
            total += edge_length(e, complex);
        return total;
    }
};

/// cosh(sigma_ij) = (cosh(L_k/2) + cosh(L_i/2) cosh(L_j/2)) / (sinh(L_i/2) sinh(L_j/2))
inline PantsMetric solve_hexagon(double L1, double L2, double L3) {
    const std::array<double, 3> L{L1, L2, L3};
    for (double l : L)
        if (!(l > 0) || !std::isfinite(l))
            throw Error(Errc::NonPositiveLength, "boundary lengths must be positive and finite");

    PantsMetric m;
    m.boundary_lengths = L;
    for (int k = 0; k < 3; ++k)
        m.boundary_edge_lengths[k] = L[k] / 2;
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        const double h = m.boundary_edge_lengths[k];
        const double hi = m.boundary_edge_lengths[i];
        const double hj = m.boundary_edge_lengths[j];
        const double c = (std::cosh(h) + std::cosh(hi) * std::cosh(hj)) / (std::sinh(hi) * std::sinh(hj));
        m.seam_lengths[k] = std::acosh(c);
    }
    m.l_max = std::max(*std::max_element(m.boundary_edge_lengths.begin(), m.boundary_edge_lengths.end()),
                       *std::max_element(m.seam_lengths.begin(), m.seam_lengths.end()));
    m.l_min = *std::min_element(m.boundary_edge_lengths.begin(), m.boundary_edge_lengths.end());
    for (double s : m.seam_lengths)
        if (!std::isfinite(s) || !(s > 0))
            throw Error(Errc::NonPositiveLength, "degenerate hexagon");
    return m;
}

// ---------------------------------------------------------------------------
// Free groups
// ---------------------------------------------------------------------------

/// Freely reduced word in generators g_0, g_1, ...; letter code 2g is g and
/// 2g+1 its inverse. In rank 2 the generators print as a, b and their
/// inverses as A, B.
class FreeGroupElement {
  public:
    FreeGroupElement() = default;
    explicit FreeGroupElement(std::vector<std::uint8_t> letters) {
        for (auto l : letters)
            push(l);
    }

    static FreeGroupElement generator(int g, bool inverse = false) {
        FreeGroupElement e;
        e.letters_.push_back(static_cast<std::uint8_t>(2 * g + (inverse ? 1 : 0)));
        return e;
    }

    /// Parses "aBab" (capital = inverse); "1" or "" is the identity.
    static FreeGroupElement parse(std::string_view s) {
        FreeGroupElement e;
        for (char ch : s) {
            if (ch == '1')
                continue;
            if (ch >= 'a' && ch <= 'z')
                e.push(static_cast<std::uint8_t>(2 * (ch - 'a')));
            else if (ch >= 'A' && ch <= 'Z')
                e.push(static_cast<std::uint8_t>(2 * (ch - 'A') + 1));
            else
                throw Error(Errc::InvalidArgument, "bad free group letter");
        }
        return e;
    }

    std::span<const std::uint8_t> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }

    FreeGroupElement inverse() const {
        FreeGroupElement e;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            e.letters_.push_back(*it ^ 1);
        return e;
    }

    friend FreeGroupElement operator*(const FreeGroupElement& a, const FreeGroupElement& b) {
        FreeGroupElement out = a;
        for (auto l : b.letters_)
            out.push(l);
        return out;
    }

    FreeGroupElement power(int k) const {
        FreeGroupElement base = k < 0 ? inverse() : *this;
        FreeGroupElement out;
        for (int i = 0; i < std::abs(k); ++i)
            out = out * base;
        return out;
    }

    FreeGroupElement cyclically_reduced() const {
        std::size_t lo = 0, hi = letters_.size();
        while (hi - lo >= 2 && letters_[lo] == (letters_[hi - 1] ^ 1)) {
            ++lo;
            --hi;
        }
        FreeGroupElement e;
        e.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                          letters_.begin() + static_cast<std::ptrdiff_t>(hi));
        return e;
    }

    /// Least rotation of the cyclic reduction; equal for conjugate elements.
    FreeGroupElement conjugacy_canonical() const {
        FreeGroupElement c = cyclically_reduced();
        c.letters_ = canonical_rotation(std::span<const std::uint8_t>(c.letters_));
        return c;
    }

    bool is_conjugate_to(const FreeGroupElement& other) const {
        return conjugacy_canonical() == other.conjugacy_canonical();
    }

    /// True when the element is conjugate to v^k for some k >= 2.
    bool is_proper_power() const {
        auto c = cyclically_reduced();
        return !c.is_identity() && cyclic_period(c.letters()) != c.size();
    }

    /// Replaces each generator g by images[g].
    FreeGroupElement substitute(std::span<const FreeGroupElement> images) const {
        FreeGroupElement out;
        for (auto l : letters_) {
            const auto& img = images[l / 2];
            out = out * ((l & 1) ? img.inverse() : img);
        }
        return out;
    }

    int occurrences(int g) const {
        return static_cast<int>(std::count_if(letters_.begin(), letters_.end(),
                                              [g](std::uint8_t l) { return l / 2 == g; }));
    }

    std::string to_string() const {
        if (letters_.empty())
            return "1";
        std::string s;
        for (auto l : letters_)
            s += static_cast<char>((l & 1 ? 'A' : 'a') + l / 2);
        return s;
    }

    friend bool operator==(const FreeGroupElement&, const FreeGroupElement&) = default;
    friend auto operator<=>(const FreeGroupElement& a, const FreeGroupElement& b) {
        return a.letters_ <=> b.letters_;
    }

  private:
    void push(std::uint8_t l) {
        if (!letters_.empty() && letters_.back() == (l ^ 1))
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    std::vector<std::uint8_t> letters_;
};

// ---------------------------------------------------------------------------
// Edge words -> fundamental group
// ---------------------------------------------------------------------------

/// Presentation of pi_1 of the pants read off the hexagon 1-skeleton:
/// the non-tree edges of a fixed spanning tree generate F_4, and each
/// hexagon relator eliminates one of them. The two survivors are renamed a
/// (the loop x4 x1^-1 around beta_1) and b (the loop x2 x5^-1 around beta_2).
class SkeletonDictionary {
  public:
    /// Forward letters of the spanning tree.
    static constexpr std::array<OrientedEdge, 5> spanning_tree() {
        return {y(1), y(2), y(3), x(1), x(2)};
    }
    /// Non-tree edges, in generator order of F_4.
    static constexpr std::array<OrientedEdge, 4> free_generators() {
        return {x(3), x(4), x(5), x(6)};
    }
    /// Generator removed by the front / back hexagon relator.
    static constexpr std::array<OrientedEdge, 2> eliminated() { return {x(5), x(6)}; }

    explicit SkeletonDictionary(const PantsComplex& complex = pants_complex()) {
        using detail::check_internal;
        check_tree(complex);

        const auto gens = free_generators();
        auto gen_index = [&](OrientedEdge e) {
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (gens[i] == e)
                    return static_cast<int>(i);
            return -1;
        };

        // images in F_4
        std::array<FreeGroupElement, kAlphabetSize> f4;
        for (int code = 0; code < kAlphabetSize; ++code) {
            auto e = OrientedEdge::from_code(code);
            auto fwd = e.is_forward() ? e : e.reversed();
            const int g = gen_index(fwd);
            if (g >= 0)
                f4[code] = FreeGroupElement::generator(g, !e.is_forward());
        }
        auto image_of = [](const auto& table, std::span<const OrientedEdge> path) {
            FreeGroupElement out;
            for (auto e : path)
                out = out * table[e.code()];
            return out;
        };

        // Tietze eliminations
        std::vector<FreeGroupElement> subst;
        for (int g = 0; g < 4; ++g)
            subst.push_back(FreeGroupElement::generator(g));
        const Hexagon hexes[2] = {Hexagon::Front, Hexagon::Back};
        for (int r = 0; r < 2; ++r) {
            const auto& rel = complex.hexagon_relator(hexes[r]);
            FreeGroupElement word = image_of(f4, rel).substitute(subst);
            const int target = gen_index(eliminated()[r]);
            check_internal(word.occurrences(target) == 1, "relator must contain generator once");
            // word = u t^eps v  =>  t = (u^-1 v^-1)^eps
            const auto letters = word.letters();
            std::size_t pos = 0;
            while (letters[pos] / 2 != target)
                ++pos;
            FreeGroupElement u(std::vector<std::uint8_t>(letters.begin(), letters.begin() + pos));
            FreeGroupElement v(std::vector<std::uint8_t>(letters.begin() + pos + 1, letters.end()));
            FreeGroupElement t = u.inverse() * v.inverse();
            if (letters[pos] & 1)
                t = t.inverse();
            std::vector<FreeGroupElement> step;
            for (int g = 0; g < 4; ++g)
                step.push_back(g == target ? t : FreeGroupElement::generator(g));
            for (auto& s : subst)
                s = s.substitute(step);
        }

        // rename survivors: a = beta_1 loop, b = beta_2 loop
        const std::array<OrientedEdge, 2> loop_a{x(4), x_inv(1)};
        const std::array<OrientedEdge, 2> loop_b{x(2), x_inv(5)};
        const auto img_a = image_of(f4, loop_a).substitute(subst);
        const auto img_b = image_of(f4, loop_b).substitute(subst);
        check_internal(img_a.size() == 1 && img_b.size() == 1 &&
                           img_a.letters()[0] / 2 != img_b.letters()[0] / 2,
                       "boundary loops must be free generators");
        std::vector<FreeGroupElement> rename(4);
        rename[img_a.letters()[0] / 2] =
            FreeGroupElement::generator(0, (img_a.letters()[0] & 1) != 0);
        rename[img_b.letters()[0] / 2] =
            FreeGroupElement::generator(1, (img_b.letters()[0] & 1) != 0);

        for (int code = 0; code < kAlphabetSize; ++code)
            images_[code] = f4[code].substitute(subst).substitute(rename);

        for (auto h : hexes)
            check_internal(image_of(images_, complex.hexagon_relator(h)).is_identity(),
                           "hexagon relator does not vanish");
        const std::array<OrientedEdge, 2> loop_c{x(3), x_inv(6)};
        const auto c = image_of(images_, loop_c);
        check_internal(c.is_conjugate_to(FreeGroupElement::parse("ab")) ||
                           c.is_conjugate_to(FreeGroupElement::parse("BA")),
                       "beta_3 loop must be conjugate to (ab)^{+-1}");
    }

    const FreeGroupElement& image(OrientedEdge e) const { return images_[e.code()]; }

    FreeGroupElement image(std::span<const OrientedEdge> path) const {
        FreeGroupElement out;
        for (auto e : path)
            out = out * images_[e.code()];
        return out;
    }

  private:
    static void check_tree(const PantsComplex& complex) {
        std::array<int, kSkeletonVertices> parent{};
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        };
        for (auto e : spanning_tree()) {
            const int a = find(complex.start(e));
            const int b = find(complex.end(e));
            detail::check_internal(a != b, "spanning tree has a cycle");
            parent[a] = b;
        }
        for (int v = 1; v < kSkeletonVertices; ++v)
            detail::check_internal(find(v) == find(0), "spanning tree does not span");
    }

    std::array<FreeGroupElement, kAlphabetSize> images_;
};

inline const SkeletonDictionary& skeleton_dictionary() {
    static const SkeletonDictionary instance(pants_complex());
    return instance;
}

/// Conjugacy class of the loop p(w), as its canonical representative
/// (cyclically reduced, least rotation).
inline FreeGroupElement word_to_group(const CyclicWord& w,
                                      const SkeletonDictionary& dict = skeleton_dictionary()) {
    return dict.image(w.letters()).conjugacy_canonical();
}

// ---------------------------------------------------------------------------
// Holonomy
// ---------------------------------------------------------------------------

struct Matrix2 {
    double a = 1, b = 0, c = 0, d = 1;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    Matrix2 inverse() const { return {d, -b, -c, a}; } // det 1

    friend Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
                m.c * n.b + m.d * n.d};
    }
};

/// Upper bound on the reduced length of elements whose traces are evaluated.
inline constexpr std::size_t kMaxTraceWordLength = 60;

/// rho(a), rho(b) in SL(2,R) with tr A = 2cosh(L1/2), tr B = 2cosh(L2/2) and
/// tr AB = -2cosh(L3/2).
struct Holonomy {
    Matrix2 gen_a;
    Matrix2 gen_b;

    Matrix2 generator(std::uint8_t letter) const {
        const Matrix2& g = (letter / 2 == 0) ? gen_a : gen_b;
        return (letter & 1) ? g.inverse() : g;
    }

    Matrix2 evaluate(const FreeGroupElement& g) const {
        Matrix2 m;
        for (auto l : g.letters()) {
            detail::check_internal(l / 2 < 2, "holonomy evaluates rank-2 elements only");
            m = m * generator(l);
        }
        return m;
    }
};

/// Normal form: A = diag(e^{L1/2}, e^{-L1/2}); B = [[p, q], [r, s]] with
/// p + s = 2cosh(L2/2), e^{L1/2} p + e^{-L1/2} s = -2cosh(L3/2) and q > 0.
inline Holonomy build_holonomy(const PantsMetric& m) {
    const double h1 = m.boundary_lengths[0] / 2;
    const double lam = std::exp(h1);
    const double t2 = 2 * std::cosh(m.boundary_lengths[1] / 2);
    const double t3 = -2 * std::cosh(m.boundary_lengths[2] / 2);

    Holonomy h;
    h.gen_a = {lam, 0, 0, 1 / lam};
    const double p = (t3 - t2 / lam) / (lam - 1 / lam);
    const double s = t2 - p;
    const double qr = p * s - 1;
    if (!(std::abs(qr) > 0) || !std::isfinite(qr))
        throw Error(Errc::InternalInconsistency, "trace system has no hyperbolic solution");
    const double q = std::sqrt(std::abs(qr));
    h.gen_b = {p, q, qr / q, s};
    return h;
}

/// Translation length 2 arccosh(|tr rho(g)| / 2).
inline double geodesic_length(const FreeGroupElement& g, const Holonomy& h) {
    if (g.is_identity())
        throw Error(Errc::IdentityElement, "identity has no geodesic");
    const auto c = g.cyclically_reduced();
    if (c.size() > kMaxTraceWordLength)
        throw Error(Errc::TraceOverflow, "element of reduced length " + std::to_string(c.size()) +
                                             " exceeds the trace evaluation limit");
    const double t = std::abs(h.evaluate(c).trace());
    if (!std::isfinite(t))
        throw Error(Errc::TraceOverflow, "trace overflow");
    if (t <= 2)
        throw Error(Errc::ParabolicOrElliptic, "element is not hyperbolic");
    return 2 * std::acosh(t / 2);
}

} // namespace pants
