#pragma once

// Cyclic words over the edge alphabet: validation, canonical rotation,
// boundary-subword decomposition, primitivity and the combinatorial
// self-intersection number.

#include "pants/error.hpp"
#include "pants/pants_complex.hpp"
#include "pants/rotation.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace pants {

/// A closed, non-backtracking concatenation b1 s1 ... bn sn (or a pure
/// boundary word b1), stored in its least rotation. Only `validate` and
/// `reconstruct_seams` create values.
class CyclicWord {
  public:
    std::span<const OrientedEdge> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    OrientedEdge operator[](std::size_t i) const { return letters_[i]; }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(letters_.size());
        for (auto e : letters_)
            out.push_back(e.label());
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i)
                s += ' ';
            s += letters_[i].label();
        }
        return s;
    }

    friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
    friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) {
        return a.letters_ <=> b.letters_;
    }

  private:
    explicit CyclicWord(std::vector<OrientedEdge> canonical) : letters_(std::move(canonical)) {}
    friend CyclicWord validate(std::span<const OrientedEdge>, const PantsComplex&);

    std::vector<OrientedEdge> letters_;
};

inline CyclicWord validate(std::span<const OrientedEdge> letters,
                           const PantsComplex& complex = pants_complex()) {
    const std::size_t n = letters.size();
    if (n == 0 || std::none_of(letters.begin(), letters.end(),
                               [](OrientedEdge e) { return e.is_boundary(); }))
        throw Error(Errc::NoBoundaryEdge, "word has no boundary edge");

    for (std::size_t i = 0; i < n; ++i) {
        const auto a = letters[i];
        const auto b = letters[(i + 1) % n];
        if (a.is_seam() && b.is_seam())
            throw Error(Errc::SeamRunTooLong,
                        "consecutive seams " + a.label() + " " + b.label(), i);
        if (b == a.reversed())
            throw Error(Errc::Backtracks, a.label() + " followed by " + b.label(), i);
        if (complex.end(a) != complex.start(b))
            throw Error(Errc::NotClosed,
                        a.label() + " does not end where " + b.label() + " starts", i);
    }

    // boundary runs must have length >= 2 unless the word is pure boundary
    const bool has_seam = std::any_of(letters.begin(), letters.end(),
                                      [](OrientedEdge e) { return e.is_seam(); });
    if (has_seam) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto prev = letters[(i + n - 1) % n];
            const auto next = letters[(i + 1) % n];
            if (letters[i].is_boundary() && prev.is_seam() && next.is_seam())
                throw Error(Errc::ShortBoundarySubword,
                            "isolated boundary edge " + letters[i].label(), i);
        }
    }
    return CyclicWord(canonical_rotation(letters));
}

inline CyclicWord validate(std::initializer_list<OrientedEdge> letters,
                           const PantsComplex& complex = pants_complex()) {
    return validate(std::span<const OrientedEdge>(letters.begin(), letters.size()), complex);
}

/// Parses labels separated by spaces and/or commas ("x1 x4- y2").
inline std::vector<OrientedEdge> parse_letters(std::string_view text) {
    std::vector<OrientedEdge> out;
    std::string token;
    auto flush = [&] {
        if (token.empty())
            return;
        auto e = OrientedEdge::parse(token);
        if (!e)
            throw Error(Errc::InvalidLabel, "unknown edge label '" + token + "'");
        out.push_back(*e);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ' ' || ch == ',' || ch == '\t' || ch == '\n')
            flush();
        else
            token += ch;
    }
    flush();
    return out;
}

struct BoundarySubword {
    std::vector<OrientedEdge> letters;
    std::optional<OrientedEdge> seam; // absent only for a pure boundary word
    int component = 0;                // beta index 1..3

    friend bool operator==(const BoundarySubword&, const BoundarySubword&) = default;
};

struct SubwordDecomposition {
    std::vector<BoundarySubword> subwords;

    std::size_t count() const { return subwords.size(); }
    bool pure_boundary() const { return subwords.size() == 1 && !subwords.front().seam; }
};

/// Splits w as b1 s1 ... bn sn, starting at the first boundary run of the
/// canonical rotation.
inline SubwordDecomposition decompose(const CyclicWord& w,
                                      const PantsComplex& complex = pants_complex()) {
    const auto letters = w.letters();
    const std::size_t n = letters.size();
    SubwordDecomposition d;

    std::size_t first_seam = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (letters[i].is_seam()) {
            first_seam = i;
            break;
        }
    }
    if (first_seam == n) {
        BoundarySubword b;
        b.letters.assign(letters.begin(), letters.end());
        b.component = complex.component_of(letters.front());
        d.subwords.push_back(std::move(b));
        return d;
    }

    // start right after some seam so the rotation begins with a boundary run
    std::size_t start = 0;
    while (!(letters[start].is_boundary() && letters[(start + n - 1) % n].is_seam()))
        ++start;

    BoundarySubword current;
    for (std::size_t k = 0; k < n; ++k) {
        const auto e = letters[(start + k) % n];
        if (e.is_boundary()) {
            current.letters.push_back(e);
        } else {
            current.seam = e;
            current.component = complex.component_of(current.letters.front());
            d.subwords.push_back(std::move(current));
            current = {};
        }
    }
    return d;
}

/// Rebuilds the unique word with the given boundary subwords by inserting
/// the forced seams.
inline CyclicWord reconstruct_seams(std::span<const std::vector<OrientedEdge>> runs,
                                    const PantsComplex& complex = pants_complex()) {
    if (runs.empty())
        throw Error(Errc::InvalidBoundaryRun, "no boundary subwords");
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& run = runs[i];
        if (run.empty() || (runs.size() > 1 && run.size() < 2))
            throw Error(Errc::InvalidBoundaryRun, "boundary subword shorter than 2", i);
        for (std::size_t k = 0; k < run.size(); ++k) {
            if (!run[k].is_boundary())
                throw Error(Errc::InvalidBoundaryRun, "seam letter inside a boundary subword", i);
            if (k + 1 < run.size() && complex.boundary_successor(run[k]) != run[k + 1])
                throw Error(Errc::InvalidBoundaryRun,
                            "subword does not follow its boundary component", i);
        }
    }
    if (runs.size() == 1)
        return validate(runs.front(), complex);

    std::vector<OrientedEdge> letters;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& run = runs[i];
        const auto& next = runs[(i + 1) % runs.size()];
        auto seam = complex.seam_between(run.back(), next.front());
        if (!seam)
            throw Error(Errc::NoConnectingSeam,
                        "no seam joins " + run.back().label() + " to " + next.front().label(), i);
        letters.insert(letters.end(), run.begin(), run.end());
        letters.push_back(*seam);
    }
    return validate(letters, complex);
}

inline CyclicWord reconstruct_seams(const SubwordDecomposition& d,
                                    const PantsComplex& complex = pants_complex()) {
    std::vector<std::vector<OrientedEdge>> runs;
    for (const auto& b : d.subwords)
        runs.push_back(b.letters);
    return reconstruct_seams(runs, complex);
}

/// True iff w is not v^k for any k >= 2.
inline bool is_primitive(const CyclicWord& w) { return cyclic_period(w.letters()) == w.size(); }

/// No two cyclically consecutive boundary letters lie on the same hexagon
/// (seams are skipped).
inline bool is_alternating(const CyclicWord& w, const PantsComplex& complex = pants_complex()) {
    std::vector<OrientedEdge> boundary;
    for (auto e : w.letters())
        if (e.is_boundary())
            boundary.push_back(e);
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        if (complex.hexagon_of(boundary[i]) ==
            complex.hexagon_of(boundary[(i + 1) % boundary.size()]))
            return false;
    }
    return true;
}

/// i(w,w) = 2 sum_j sum_i i |b_{sigma_j(i)}|, where sigma_j lists the
/// subwords on component j by decreasing length. Ties are broken by first
/// occurrence; the sum does not depend on the tie order.
inline std::int64_t self_intersection(const CyclicWord& w,
                                      const PantsComplex& complex = pants_complex()) {
    const auto d = decompose(w, complex);
    std::array<std::vector<std::int64_t>, 3> lengths;
    for (const auto& b : d.subwords)
        lengths[b.component - 1].push_back(static_cast<std::int64_t>(b.letters.size()));
    std::int64_t total = 0;
    for (auto& group : lengths) {
        std::stable_sort(group.begin(), group.end(), std::greater<>());
        for (std::size_t i = 0; i < group.size(); ++i)
            total += static_cast<std::int64_t>(i + 1) * group[i];
    }
    return 2 * total;
}

} // namespace pants
