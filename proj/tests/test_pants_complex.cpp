#include "pants/pants_complex.hpp"

#include <gtest/gtest.h>

#include <set>

namespace {

using namespace pants;

const PantsComplex& pc() { return pants_complex(); }

std::vector<OrientedEdge> all_letters() {
    std::vector<OrientedEdge> out;
    for (int c = 0; c < kAlphabetSize; ++c)
        out.push_back(OrientedEdge::from_code(c));
    return out;
}

TEST(OrientedEdge, AlphabetHas12BoundaryAnd6Seams) {
    std::set<OrientedEdge> boundary, seams;
    for (auto e : all_letters())
        (e.is_boundary() ? boundary : seams).insert(e);
    EXPECT_EQ(boundary.size(), 12u);
    EXPECT_EQ(seams.size(), 6u);
}

TEST(OrientedEdge, LabelsRoundTrip) {
    for (auto e : all_letters()) {
        auto parsed = OrientedEdge::parse(e.label());
        ASSERT_TRUE(parsed.has_value()) << e.label();
        EXPECT_EQ(*parsed, e);
        EXPECT_EQ(e.reversed().reversed(), e);
        EXPECT_NE(e.reversed(), e);
    }
    EXPECT_EQ(x_inv(4).label(), "x4-");
    EXPECT_EQ(y(2).label(), "y2");
    EXPECT_FALSE(OrientedEdge::parse("x7"));
    EXPECT_FALSE(OrientedEdge::parse("y4"));
    EXPECT_FALSE(OrientedEdge::parse("x1+"));
    EXPECT_FALSE(OrientedEdge::parse("z1"));
}

TEST(OrientedEdge, LetterOrderIsBoundaryThenIndexThenOrientation) {
    EXPECT_LT(x(1), x_inv(1));
    EXPECT_LT(x_inv(1), x(2));
    EXPECT_LT(x_inv(6), y(1));
    EXPECT_LT(y(1), y_inv(1));
    EXPECT_LT(y_inv(1), y(2));
}

TEST(PantsComplex, ComponentsPairOppositeEdgesOnePerHexagon) {
    for (int j = 1; j <= 3; ++j) {
        EXPECT_EQ(pc().component_of(x(j)), j);
        EXPECT_EQ(pc().component_of(x(j + 3)), j);
        EXPECT_NE(pc().hexagon_of(x(j)), pc().hexagon_of(x(j + 3)));
    }
    EXPECT_EQ(pc().hexagon_of(x(1)), Hexagon::Front);
    EXPECT_EQ(pc().hexagon_of(x(3)), Hexagon::Front);
    EXPECT_EQ(pc().hexagon_of(x(5)), Hexagon::Front);
    EXPECT_EQ(pc().hexagon_of(x(2)), Hexagon::Back);
    EXPECT_EQ(pc().hexagon_of(x_inv(4)), Hexagon::Back);
}

TEST(PantsComplex, BoundarySuccessorAlternatesHexagonsAndClosesUp) {
    for (int c = 0; c < kBoundaryLetters; ++c) {
        const auto e = OrientedEdge::from_code(c);
        const auto s = pc().boundary_successor(e);
        EXPECT_TRUE(s.is_boundary());
        EXPECT_NE(pc().hexagon_of(s), pc().hexagon_of(e));
        EXPECT_EQ(pc().component_of(s), pc().component_of(e));
        EXPECT_EQ(pc().boundary_successor(s), e) << "a component consists of two edges";
        EXPECT_TRUE(pc().can_concatenate(e, s));
    }
    // (C1): x_j followed by x_{j+3}^{-1}
    for (int j = 1; j <= 6; ++j)
        EXPECT_EQ(pc().boundary_successor(x(j)), x_inv((j + 2) % 6 + 1));
}

TEST(PantsComplex, SeamBetweenExamples) {
    EXPECT_FALSE(pc().seam_between(x(1), x_inv(4)).has_value());
    // (C2): a seam joins x_{j+3}^{-1} to x_{j+2}^{-1}
    for (int j = 1; j <= 6; ++j) {
        const auto from = x_inv((j + 2) % 6 + 1);
        const auto to = x_inv((j + 1) % 6 + 1);
        auto s = pc().seam_between(from, to);
        ASSERT_TRUE(s.has_value()) << from.label() << " -> " << to.label();
        EXPECT_TRUE(s->is_seam());
    }
    // seams of the worked example
    EXPECT_EQ(pc().seam_between(x(1), x(2)), y(3));
    EXPECT_EQ(pc().seam_between(x_inv(5), x_inv(4)), y_inv(3));
    EXPECT_EQ(pc().seam_between(x_inv(4), x_inv(3)), y(2));
    EXPECT_EQ(pc().seam_between(x(6), x(1)), y_inv(2));
}

TEST(PantsComplex, SeamBetweenIsEmptyOnOneComponentAndUniqueOtherwise) {
    for (int a = 0; a < kBoundaryLetters; ++a) {
        for (int b = 0; b < kBoundaryLetters; ++b) {
            const auto ea = OrientedEdge::from_code(a);
            const auto eb = OrientedEdge::from_code(b);
            int count = 0;
            for (int s = kBoundaryLetters; s < kAlphabetSize; ++s) {
                const auto es = OrientedEdge::from_code(s);
                count += pc().can_concatenate(ea, es) && pc().can_concatenate(es, eb);
            }
            EXPECT_LE(count, 1);
            if (pc().component_of(ea) == pc().component_of(eb)) {
                EXPECT_FALSE(pc().seam_between(ea, eb).has_value());
            }
            EXPECT_EQ(pc().seam_between(ea, eb).has_value(), count == 1);
        }
    }
}

TEST(PantsComplex, SeamsJoinDistinctComponents) {
    for (int k = 1; k <= 3; ++k) {
        const auto [c1, c2] = pc().seam_components(y(k));
        EXPECT_NE(c1, c2);
        EXPECT_NE(c1, k);
        EXPECT_NE(c2, k);
        const auto [r1, r2] = pc().seam_components(y_inv(k));
        EXPECT_EQ(r1, c2);
        EXPECT_EQ(r2, c1);
    }
}

TEST(PantsComplex, ConcatenationRules) {
    for (auto a : all_letters()) {
        EXPECT_FALSE(pc().can_concatenate(a, a.reversed())) << a.label();
        for (auto b : all_letters()) {
            if (a.is_seam() && b.is_seam()) {
                EXPECT_FALSE(pc().can_concatenate(a, b));
            }
            if (pc().can_concatenate(a, b)) {
                EXPECT_EQ(pc().end(a), pc().start(b));
            }
        }
    }
    EXPECT_TRUE(pc().can_concatenate(x(1), y(3)));
    EXPECT_TRUE(pc().can_concatenate(y(3), x(2)));
}

TEST(PantsComplex, EveryBoundaryEdgeHasSuccessorAndSeamContinuation) {
    for (int c = 0; c < kBoundaryLetters; ++c) {
        const auto e = OrientedEdge::from_code(c);
        int boundary_next = 0, seam_next = 0;
        for (auto b : all_letters())
            if (pc().can_concatenate(e, b))
                ++(b.is_boundary() ? boundary_next : seam_next);
        EXPECT_EQ(boundary_next, 1) << e.label();
        EXPECT_GE(seam_next, 1) << e.label();
    }
}

TEST(PantsComplex, HexagonRelatorsAreClosedAndAlternate) {
    for (auto h : {Hexagon::Front, Hexagon::Back}) {
        const auto& r = pc().hexagon_relator(h);
        for (std::size_t i = 0; i < r.size(); ++i) {
            EXPECT_TRUE(pc().can_concatenate(r[i], r[(i + 1) % r.size()]));
            EXPECT_EQ(r[i].is_boundary(), i % 2 == 0);
            if (r[i].is_boundary()) {
                EXPECT_EQ(pc().hexagon_of(r[i]), h);
            }
        }
    }
}

TEST(PantsComplex, RelabelingIsAnAutomorphism) {
    for (int shift = 0; shift < 6; ++shift) {
        std::set<OrientedEdge> image;
        for (auto a : all_letters()) {
            const auto ra = pc().relabel(a, shift);
            image.insert(ra);
            EXPECT_EQ(ra.is_boundary(), a.is_boundary());
            EXPECT_EQ(pc().relabel(a.reversed(), shift), ra.reversed());
            for (auto b : all_letters())
                EXPECT_EQ(pc().can_concatenate(a, b),
                          pc().can_concatenate(ra, pc().relabel(b, shift)))
                    << a.label() << " " << b.label() << " shift " << shift;
        }
        EXPECT_EQ(image.size(), static_cast<std::size_t>(kAlphabetSize));
    }
}

} // namespace
