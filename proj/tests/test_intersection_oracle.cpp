#include "pants/intersection_oracle.hpp"
#include "pants/path_graph.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace pants;

const double kSym = 2 * std::acosh(2.0);

const Holonomy& symmetric() {
    static const Holonomy h = build_holonomy(solve_hexagon(kSym, kSym, kSym));
    return h;
}

FreeGroupElement g(const char* s) { return FreeGroupElement::parse(s); }

FreeGroupElement figure_eight() {
    return word_to_group(path_to_word(make_cyclic_path({x(1), x_inv(3)})));
}

// Brute-force count of crossings between pieces, without the endpoint
// tolerance logic: intersect the full chords and test both parameters.
int naive_crossings(const TracedGeodesic& t) {
    int count = 0;
    for (std::size_t i = 0; i < t.pieces.size(); ++i)
        for (std::size_t j = i + 1; j < t.pieces.size(); ++j) {
            const auto& p = t.pieces[i];
            const auto& q = t.pieces[j];
            auto side = [](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); };
            const double d1 = side(p.entry, p.exit, q.entry);
            const double d2 = side(p.entry, p.exit, q.exit);
            const double d3 = side(q.entry, q.exit, p.entry);
            const double d4 = side(q.entry, q.exit, p.exit);
            count += (d1 * d2 < 0) && (d3 * d4 < 0);
        }
    return count;
}

TEST(Domain, SymmetricPantsWallsAreDisjointAndPaired) {
    const auto d = build_domain(symmetric());
    EXPECT_TRUE(d.contains(d.basepoint));
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& w = d.walls[i];
        EXPECT_NEAR(w.wall.from.norm(), 1, 1e-12);
        EXPECT_NEAR(w.wall.to.norm(), 1, 1e-12);
        EXPECT_EQ(d.walls[w.partner].partner, static_cast<int>(i));
        EXPECT_EQ(d.walls[w.partner].exit, w.exit ^ 1);
        const auto image = apply(symmetric().generator(w.exit), w.wall);
        const auto& partner = d.walls[w.partner].wall;
        const bool same = ((image.from - partner.from).norm() < 1e-9 &&
                           (image.to - partner.to).norm() < 1e-9) ||
                          ((image.from - partner.to).norm() < 1e-9 &&
                           (image.to - partner.from).norm() < 1e-9);
        EXPECT_TRUE(same) << "wall " << i;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) {
                EXPECT_GT(w.line.eval(d.walls[j].wall.from), 0);
                EXPECT_GT(w.line.eval(d.walls[j].wall.to), 0);
            }
    }
}

TEST(Domain, PerturbedAndAsymmetricDomainsAreValid) {
    for (auto shape : {std::array{kSym, kSym, kSym}, std::array{1.0, 2.0, 3.0},
                       std::array{0.5, 4.0, 2.2}}) {
        const auto h = build_holonomy(solve_hexagon(shape[0], shape[1], shape[2]));
        for (const auto& off : kDomainOffsets)
            EXPECT_NO_THROW(build_domain(h, off));
    }
}

TEST(Domain, WallsOnOneAxisAreLengthApart) {
    // walls 0 and 1 are perpendicular to the axis of a, L1 apart
    const auto h = build_holonomy(solve_hexagon(1.0, 2.0, 3.0));
    const auto d = build_domain(h);
    const auto t = trace_geodesic(g("a"), d);
    ASSERT_EQ(t.pieces.size(), 1u);
    EXPECT_NEAR(t.pieces[0].length, 1.0, 1e-9);
}

TEST(Domain, OverlappingWallsAreReported) {
    // shifting the a-walls by a full period puts both on the same side of the basepoint
    try {
        build_domain(symmetric(), {2.0, 0.0});
        FAIL() << "expected DomainOverlap";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DomainOverlap);
    }
}

TEST(Trace, BoundaryGeneratorIsASinglePiece) {
    const auto d = build_domain(symmetric());
    const auto t = trace_geodesic(g("a"), d);
    EXPECT_EQ(t.pieces.size(), 1u);
    EXPECT_NEAR(t.total_length, kSym, 1e-9);
}

TEST(Trace, FigureEightHasAtLeastTwoPieces) {
    const auto d = build_domain(symmetric());
    const auto t = trace_geodesic(figure_eight(), d);
    EXPECT_GE(t.pieces.size(), 2u);
    EXPECT_NEAR(t.total_length, geodesic_length(figure_eight(), symmetric()), 1e-6);
}

TEST(Trace, RejectsIdentityAndPowers) {
    const auto d = build_domain(symmetric());
    try {
        trace_geodesic(g("aa"), d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotPrimitive);
    }
    try {
        trace_geodesic(g("abAB").power(0), d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IdentityElement);
    }
    try {
        self_intersection_number(g("abab"), symmetric());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotPrimitive);
    }
}

TEST(Trace, PiecesSumToTranslationLengthAndSpellTheElement) {
    for (auto shape : {std::array{kSym, kSym, kSym}, std::array{1.0, 2.0, 3.0}}) {
        const auto h = build_holonomy(solve_hexagon(shape[0], shape[1], shape[2]));
        const auto d = build_domain(h);
        for (int n = 2; n <= 6; n += 2)
            for (const auto& p : enumerate_cyclic_paths(n, true)) {
                const auto e = word_to_group(path_to_word(p));
                const auto t = trace_geodesic(e, d);
                EXPECT_NEAR(t.total_length, geodesic_length(e, h), 1e-6);
                EXPECT_TRUE(t.cutting_word.is_conjugate_to(e));
                EXPECT_EQ(t.pieces.size(), e.size());
                for (std::size_t i = 0; i < t.pieces.size(); ++i) {
                    const auto& cur = t.pieces[i];
                    const auto& next = t.pieces[(i + 1) % t.pieces.size()];
                    EXPECT_EQ(d.walls[cur.exit_wall].partner, next.entry_wall);
                    EXPECT_GT(cur.length, 0);
                }
            }
    }
}

TEST(Crossings, BoundaryClassesAreSimple) {
    for (const char* s : {"a", "b", "ab", "A", "B", "BA", "ba", "AB"})
        EXPECT_EQ(self_intersection_number(g(s), symmetric()), 0) << s;
    // conjugates describe the same curve
    for (const char* k : {"a", "b", "aB", "bba"}) {
        const auto c = g(k);
        EXPECT_EQ(self_intersection_number(c * g("ab") * c.inverse(), symmetric()), 0);
    }
}

TEST(Crossings, FigureEightHasOneDoublePoint) {
    EXPECT_EQ(self_intersection_number(figure_eight(), symmetric()), 1);
    for (const char* s : {"aB", "Ab", "aab", "abb", "AAB", "ABB"})
        EXPECT_EQ(self_intersection_number(g(s), symmetric()), 1) << s;
}

TEST(Crossings, ExampleWordFrozenRegression) {
    const auto w = path_to_word(make_cyclic_path({x(1), x(2), x_inv(4), x_inv(3)}));
    const int v = self_intersection_number(word_to_group(w), symmetric());
    EXPECT_LE(v, self_intersection(w));
    EXPECT_EQ(v, 6);
}

TEST(Crossings, KnownSmallClasses) {
    // a^k b for k >= 1 has k - 1 self-intersections on any pants
    for (int k = 1; k <= 5; ++k) {
        const auto e = g("a").power(k) * g("b");
        EXPECT_EQ(self_intersection_number(e, symmetric()), k - 1) << e.to_string();
    }
}

TEST(Crossings, NaiveCountAgreesWhenUnambiguous) {
    const auto d = build_domain(symmetric());
    for (int n = 2; n <= 6; n += 2)
        for (const auto& p : enumerate_cyclic_paths(n, true)) {
            const auto t = trace_geodesic(word_to_group(path_to_word(p)), d);
            const auto scan = scan_crossings(t);
            if (!scan.ambiguous) {
                EXPECT_EQ(scan.crossings, naive_crossings(t));
                EXPECT_EQ(count_self_crossings(t), scan.crossings);
            }
        }
}

TEST(Crossings, StableUnderDomainPerturbation) {
    for (int n = 2; n <= 6; n += 2)
        for (const auto& p : enumerate_cyclic_paths(n, true)) {
            const auto e = word_to_group(path_to_word(p));
            std::vector<int> counts;
            for (const auto& off : kDomainOffsets) {
                const auto scan = scan_crossings(trace_geodesic(e, build_domain(symmetric(), off)));
                if (!scan.ambiguous)
                    counts.push_back(scan.crossings);
            }
            ASSERT_GE(counts.size(), 4u) << e.to_string();
            for (int c : counts)
                EXPECT_EQ(c, counts.front()) << e.to_string();
        }
}

TEST(Crossings, IntersectionBoundsOnShortPaths) {
    for (int n = 2; n <= 6; n += 2)
        for (const auto& p : enumerate_cyclic_paths(n, true)) {
            const auto w = path_to_word(p);
            const auto tau = static_cast<std::int64_t>(p.size());
            const int geo = self_intersection_number(word_to_group(w), symmetric());
            EXPECT_LE(geo, self_intersection(w)) << w.to_string();
            EXPECT_LE(geo, 3 * tau * tau) << w.to_string();
        }
}

TEST(Crossings, IndependentOfTheMetric) {
    // self-intersection is topological: same counts on a lopsided pants
    const auto h = build_holonomy(solve_hexagon(1.0, 2.0, 3.0));
    for (int n = 2; n <= 6; n += 2)
        for (const auto& p : enumerate_cyclic_paths(n, true)) {
            const auto e = word_to_group(path_to_word(p));
            EXPECT_EQ(self_intersection_number(e, h), self_intersection_number(e, symmetric()))
                << e.to_string();
        }
}

} // namespace
