#pragma once

// Command-line front end. Kept in a header so tests can drive `run`
// in-process with captured streams.

#include "pants/census.hpp"
#include "pants/error.hpp"
#include "pants/hyperbolic.hpp"
#include "pants/intersection_oracle.hpp"
#include "pants/pants_complex.hpp"
#include "pants/path_graph.hpp"
#include "pants/words.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pants::cli {

using nlohmann::ordered_json;

inline constexpr const char* kCensusSchema = "pants-census/1";

enum class Format { Json, Csv };

/// A command's result: the JSON document, plus the rows to emit in CSV
/// mode (defaults to the document itself as a single row).
struct Result {
    ordered_json doc;
    std::optional<ordered_json> rows;
};

// ---------------------------------------------------------------------------
// Serialization helpers
// ---------------------------------------------------------------------------

inline ordered_json labels_json(std::span<const OrientedEdge> letters) {
    ordered_json a = ordered_json::array();
    for (auto e : letters)
        a.push_back(e.label());
    return a;
}

inline ordered_json big_json(const BigInt& v) {
    if (v <= BigInt(std::numeric_limits<std::int64_t>::max()) &&
        v >= BigInt(std::numeric_limits<std::int64_t>::min()))
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline ordered_json matrix_json(const Matrix2& m) {
    return ordered_json::array({ordered_json::array({m.a, m.b}), ordered_json::array({m.c, m.d})});
}

inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline std::string csv_cell(const ordered_json& v) {
    std::string s;
    if (v.is_null())
        return "";
    if (v.is_string())
        s = v.get<std::string>();
    else if (v.is_number_float())
        s = format_double(v.get<double>());
    else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                s += ' ';
            s += csv_cell(v[i]);
        }
    } else
        s = v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : s) {
            if (ch == '"')
                quoted += '"';
            quoted += ch;
        }
        return quoted + '"';
    }
    return s;
}

inline void write_csv(std::ostream& out, const ordered_json& rows) {
    if (rows.empty())
        return;
    std::vector<std::string> keys;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it)
        keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i)
        out << (i ? "," : "") << keys[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i)
            out << (i ? "," : "") << (row.contains(keys[i]) ? csv_cell(row[keys[i]]) : "");
        out << '\n';
    }
}

inline ordered_json subwords_json(const SubwordDecomposition& d) {
    ordered_json a = ordered_json::array();
    for (const auto& b : d.subwords)
        a.push_back({{"letters", labels_json(b.letters)},
                     {"seam", b.seam ? ordered_json(b.seam->label()) : ordered_json(nullptr)},
                     {"component", b.component}});
    return a;
}

inline ordered_json metric_json(const PantsMetric& m) {
    return {{"boundary_lengths", m.boundary_lengths},
            {"boundary_edge_lengths", m.boundary_edge_lengths},
            {"seam_lengths", m.seam_lengths},
            {"l_max", m.l_max},
            {"l_min", m.l_min}};
}

inline ordered_json record_json(const CensusRecord& r) {
    return {{"path", labels_json(r.path.vertices())},
            {"arcs", r.path.label_string()},
            {"path_length", r.path.size()},
            {"word", labels_json(r.word.letters())},
            {"word_length", r.word_length},
            {"word_intersection", r.word_intersection},
            {"length_upper_bound", r.length_upper_bound},
            {"exact_length", r.exact_length},
            {"conjugacy_form", r.conjugacy_form.to_string()},
            {"oracle_intersections", r.oracle_intersections ? ordered_json(*r.oracle_intersections)
                                                            : ordered_json(nullptr)}};
}

inline ordered_json census_json(const Census& c, bool with_oracle) {
    ordered_json records = ordered_json::array();
    for (const auto& r : c.records)
        records.push_back(record_json(r));
    return {{"schema", kCensusSchema},
            {"query",
             {{"L", c.query.L}, {"K", c.query.K}, {"boundary_lengths", c.query.boundary_lengths}}},
            {"metric", metric_json(c.metric)},
            {"path_budget", c.path_budget},
            {"max_path_length", c.max_path_length},
            {"lower_bound", c.lower_bound ? ordered_json(*c.lower_bound) : ordered_json(nullptr)},
            {"oracle", with_oracle},
            {"orientation", "oriented"},
            {"l_max_variant",
             "hexagon edges; the boundary/distance variant is at most twice this value"},
            {"count", c.records.size()},
            {"records", records}};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline Result alphabet_dump() {
    const auto& complex = pants_complex();
    ordered_json letters = ordered_json::array();
    for (int code = 0; code < kAlphabetSize; ++code) {
        const auto e = OrientedEdge::from_code(code);
        ordered_json row{{"label", e.label()},
                         {"kind", e.is_boundary() ? "boundary" : "seam"},
                         {"index", e.index()},
                         {"orientation", e.orientation() == Orientation::Forward ? "forward"
                                                                                 : "reversed"},
                         {"start", complex.vertex_name(complex.start(e))},
                         {"end", complex.vertex_name(complex.end(e))}};
        if (e.is_boundary()) {
            row["hexagon"] = complex.hexagon_of(e) == Hexagon::Front ? "front" : "back";
            row["component"] = complex.component_of(e);
            row["boundary_successor"] = complex.boundary_successor(e).label();
        } else {
            const auto [c1, c2] = complex.seam_components(e);
            row["components"] = ordered_json::array({c1, c2});
        }
        letters.push_back(row);
    }

    ordered_json seams = ordered_json::array();
    for (int i = 0; i < kBoundaryLetters; ++i)
        for (int j = 0; j < kBoundaryLetters; ++j) {
            const auto a = OrientedEdge::from_code(i);
            const auto b = OrientedEdge::from_code(j);
            if (auto s = complex.seam_between(a, b))
                seams.push_back({{"from", a.label()}, {"to", b.label()}, {"seam", s->label()}});
        }

    const auto& dict = skeleton_dictionary();
    ordered_json images = ordered_json::object();
    for (int code = 0; code < kAlphabetSize; ++code) {
        const auto e = OrientedEdge::from_code(code);
        if (e.orientation() == Orientation::Forward)
            images[e.label()] = dict.image(e).to_string();
    }
    auto edges_json = [](auto arr) {
        ordered_json a = ordered_json::array();
        for (auto e : arr)
            a.push_back(e.label());
        return a;
    };

    ordered_json doc{
        {"letters", letters},
        {"seam_between", seams},
        {"hexagon_relators",
         {{"front", labels_json(complex.hexagon_relator(Hexagon::Front))},
          {"back", labels_json(complex.hexagon_relator(Hexagon::Back))}}},
        {"fundamental_group",
         {{"spanning_tree", edges_json(SkeletonDictionary::spanning_tree())},
          {"free_generators", edges_json(SkeletonDictionary::free_generators())},
          {"eliminated", edges_json(SkeletonDictionary::eliminated())},
          {"images", images}}}};
    return {doc, letters};
}

inline Result paths_count(int n) {
    const auto h = count_cyclic_paths(n);
    return {{{"n", n}, {"H", big_json(h)}}, std::nullopt};
}

inline Result paths_enumerate(int n, bool primitive, int budget) {
    ordered_json paths = ordered_json::array();
    for (const auto& p : enumerate_cyclic_paths(n, primitive, {budget, true})) {
        ordered_json row{{"path", labels_json(p.vertices())}, {"arcs", p.label_string()}};
        if (n >= 2) {
            const auto w = path_to_word(p);
            row["word"] = labels_json(w.letters());
            row["word_length"] = w.size();
            row["word_intersection"] = self_intersection(w);
        }
        paths.push_back(row);
    }
    return {{{"n", n}, {"primitive", primitive}, {"count", paths.size()}, {"paths", paths}}, paths};
}

inline Result word_validate(const std::string& text) {
    const auto w = validate(parse_letters(text));
    const auto d = decompose(w);
    return {{{"word", labels_json(w.letters())},
             {"valid", true},
             {"length", w.size()},
             {"subword_count", d.count()},
             {"subwords", subwords_json(d)},
             {"primitive", is_primitive(w)},
             {"alternating", is_alternating(w)},
             {"conjugacy_form", word_to_group(w).to_string()}},
            std::nullopt};
}

inline Result word_intersect(const std::string& text) {
    const auto w = validate(parse_letters(text));
    return {{{"word", labels_json(w.letters())}, {"length", w.size()}, {"i_w", self_intersection(w)}},
            std::nullopt};
}

inline PantsMetric metric_from(const std::vector<double>& boundary) {
    return solve_hexagon(boundary.at(0), boundary.at(1), boundary.at(2));
}

inline Result geometry_solve(const std::vector<double>& boundary) {
    const auto m = metric_from(boundary);
    const auto h = build_holonomy(m);
    const auto ab = FreeGroupElement::parse("ab");
    ordered_json doc = metric_json(m);
    doc["holonomy"] = {{"a", matrix_json(h.gen_a)},
                       {"b", matrix_json(h.gen_b)},
                       {"trace_a", h.gen_a.trace()},
                       {"trace_b", h.gen_b.trace()},
                       {"trace_ab", h.evaluate(ab).trace()}};
    ordered_json row = metric_json(m);
    return {doc, ordered_json::array({row})};
}

inline Result oracle_intersections(const std::vector<double>& boundary, const std::string& text) {
    const auto h = build_holonomy(metric_from(boundary));
    const auto w = validate(parse_letters(text));
    const auto g = word_to_group(w);
    if (g.is_identity())
        throw Error(Errc::IdentityElement, "word is null-homotopic");
    const int i_geo = self_intersection_number(g, h);
    const auto traced = trace_geodesic(g, build_domain(h));
    ordered_json pieces = ordered_json::array();
    for (const auto& p : traced.pieces)
        pieces.push_back({{"entry", {p.entry.x, p.entry.y}},
                          {"exit", {p.exit.x, p.exit.y}},
                          {"entry_wall", p.entry_wall},
                          {"exit_wall", p.exit_wall},
                          {"length", p.length}});
    ordered_json doc{{"word", labels_json(w.letters())},
                     {"group_element", g.to_string()},
                     {"i_w", self_intersection(w)},
                     {"i_geo", i_geo},
                     {"length", traced.total_length},
                     {"piece_count", traced.pieces.size()},
                     {"pieces", pieces}};
    ordered_json row{{"word", doc["word"]},
                     {"group_element", doc["group_element"]},
                     {"i_w", doc["i_w"]},
                     {"i_geo", i_geo},
                     {"length", traced.total_length},
                     {"piece_count", traced.pieces.size()}};
    return {doc, ordered_json::array({row})};
}

inline Result census(double L, std::int64_t K, const std::vector<double>& boundary,
                     bool with_oracle, int budget, double tolerance) {
    CensusQuery q{L, K, {boundary.at(0), boundary.at(1), boundary.at(2)}};
    const auto c = run_census(q, {with_oracle, budget, tolerance, true});
    ordered_json doc = census_json(c, with_oracle);
    ordered_json rows = doc["records"];
    return {doc, rows};
}

inline Result bound_pants(double L, double K, std::optional<double> lmax,
                          const std::vector<double>& boundary) {
    double l_max = 0;
    std::string source;
    if (lmax) {
        l_max = *lmax;
        source = "given";
    } else {
        l_max = metric_from(boundary).l_max;
        source = "boundary";
    }
    const double value = pants_lower_bound(L, K, l_max);
    return {{{"bound", "pants"},
             {"L", L},
             {"K", K},
             {"l_max", l_max},
             {"l_max_source", source},
             {"l_max_variant",
              "hexagon edges; the boundary/distance variant is at most twice this value"},
             {"value", value}},
            std::nullopt};
}

inline Result bound_surface(const SurfaceParams& p, double L, double K) {
    const auto b = surface_lower_bound(p, L, K);
    return {{{"bound", "surface"},
             {"g", p.genus},
             {"n", p.boundary_count},
             {"area", p.area},
             {"systole", p.systole},
             {"c_X", p.pants_constant},
             {"L", L},
             {"K", K},
             {"exponent", p.exponent()},
             {"s_X", b.s},
             {"s_X_prime", b.s_prime},
             {"margin", b.margin},
             {"satisfies_L_gt_6_sX_sqrtK", b.satisfies_6s},
             {"satisfies_L_gt_3_sX_sqrtK", b.satisfies_3s},
             {"satisfies_L_gt_6_sXprime_sqrtK", b.satisfies_6s_prime},
             {"value", b.value}},
            std::nullopt};
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline void emit(std::ostream& out, const Result& r, Format f) {
    if (f == Format::Json) {
        out << r.doc.dump(2) << '\n';
        return;
    }
    write_csv(out, r.rows ? *r.rows : ordered_json::array({r.doc}));
}

/// Exit codes: 0 success, 1 domain error (reported as JSON on `out`),
/// 2 usage error (synopsis on `err`).
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Closed geodesics on a hyperbolic pair of pants", "pants"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    int budget = kDefaultEnumerationBudget;
    double tolerance = 1e-9;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--budget", budget, "Enumeration cap on path length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--tolerance", tolerance, "Relative tolerance")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* alphabet = app.add_subcommand("alphabet", "Edge alphabet and incidence tables");
    alphabet->require_subcommand(1);
    auto* alphabet_dump_cmd = alphabet->add_subcommand("dump", "Dump the incidence table");

    int length = 0;
    bool primitive = false;
    auto* paths = app.add_subcommand("paths", "Cyclic paths in the transition graph");
    paths->require_subcommand(1);
    auto* paths_count_cmd = paths->add_subcommand("count", "Closed-form count H_n");
    paths_count_cmd->add_option("--length", length, "Path length n")->required()->check(
        CLI::PositiveNumber);
    auto* paths_enum_cmd = paths->add_subcommand("enumerate", "List canonical cyclic paths");
    paths_enum_cmd->add_option("--length", length, "Path length n")->required()->check(
        CLI::PositiveNumber);
    paths_enum_cmd->add_flag("--primitive", primitive, "Only primitive paths");

    std::string word_text;
    auto* word = app.add_subcommand("word", "Cyclic words over the edge alphabet");
    word->require_subcommand(1);
    auto* word_validate_cmd = word->add_subcommand("validate", "Validate and decompose a word");
    word_validate_cmd->add_option("--word", word_text, "Labels, e.g. \"x1 x4-\"")->required();
    auto* word_intersect_cmd = word->add_subcommand("intersect", "Combinatorial i(w,w)");
    word_intersect_cmd->add_option("--word", word_text, "Labels")->required();

    std::vector<double> boundary;
    auto* geometry = app.add_subcommand("geometry", "Hexagon and holonomy data");
    geometry->require_subcommand(1);
    auto* geometry_solve_cmd = geometry->add_subcommand("solve", "Solve the pants metric");
    geometry_solve_cmd->add_option("--boundary", boundary, "L1 L2 L3")->expected(3)->required();

    auto* oracle = app.add_subcommand("oracle", "Geometric intersection oracle");
    oracle->require_subcommand(1);
    auto* oracle_cmd = oracle->add_subcommand("intersections", "Self-intersection of a word");
    oracle_cmd->add_option("--boundary", boundary, "L1 L2 L3")->expected(3)->required();
    oracle_cmd->add_option("--word", word_text, "Labels")->required();

    double L = 0;
    std::int64_t K = 0;
    bool with_oracle = false;
    auto* census_cmd = app.add_subcommand("census", "Witness census of G(L,K)");
    census_cmd->add_option("--L", L, "Length bound")->required();
    census_cmd->add_option("--K", K, "Self-intersection bound")->required();
    census_cmd->add_option("--boundary", boundary, "L1 L2 L3")->expected(3)->required();
    census_cmd->add_flag("--oracle", with_oracle, "Also run the geometric oracle");

    double K_real = 0;
    std::optional<double> lmax;
    auto* bound = app.add_subcommand("bound", "Closed-form lower bounds");
    bound->require_subcommand(1);
    auto* bound_pants_cmd = bound->add_subcommand("pants", "Pair-of-pants bound");
    bound_pants_cmd->add_option("--L", L, "Length bound")->required();
    bound_pants_cmd->add_option("--K", K_real, "Self-intersection bound")->required();
    auto* lmax_opt = bound_pants_cmd->add_option("--lmax", lmax, "Longest hexagon edge");
    auto* pants_boundary_opt =
        bound_pants_cmd->add_option("--boundary", boundary, "L1 L2 L3")->expected(3);
    lmax_opt->excludes(pants_boundary_opt);

    SurfaceParams surface;
    auto* bound_surface_cmd = bound->add_subcommand("surface", "Surface bound");
    bound_surface_cmd->add_option("--g", surface.genus, "Genus")->required();
    bound_surface_cmd->add_option("--n", surface.boundary_count, "Boundary components")
        ->required();
    bound_surface_cmd->add_option("--area", surface.area, "Area")->required();
    bound_surface_cmd->add_option("--sys", surface.systole, "Systole")->required();
    bound_surface_cmd->add_option("--cx", surface.pants_constant, "Constant c_X")->required();
    bound_surface_cmd->add_option("--L", L, "Length bound")->required();
    bound_surface_cmd->add_option("--K", K_real, "Self-intersection bound")->required();

    try {
        app.parse(argc, argv);
        if (bound_pants_cmd->parsed() && !lmax && boundary.empty())
            throw CLI::RequiredError("--lmax or --boundary");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const Format fmt = format == "csv" ? Format::Csv : Format::Json;
    try {
        Result r;
        if (alphabet_dump_cmd->parsed())
            r = alphabet_dump();
        else if (paths_count_cmd->parsed())
            r = paths_count(length);
        else if (paths_enum_cmd->parsed())
            r = paths_enumerate(length, primitive, budget);
        else if (word_validate_cmd->parsed())
            r = word_validate(word_text);
        else if (word_intersect_cmd->parsed())
            r = word_intersect(word_text);
        else if (geometry_solve_cmd->parsed())
            r = geometry_solve(boundary);
        else if (oracle_cmd->parsed())
            r = oracle_intersections(boundary, word_text);
        else if (census_cmd->parsed())
            r = census(L, K, boundary, with_oracle, budget, tolerance);
        else if (bound_pants_cmd->parsed())
            r = bound_pants(L, K_real, lmax, boundary);
        else if (bound_surface_cmd->parsed())
            r = bound_surface(surface, L, K_real);
        else {
            err << app.help();
            return 2;
        }
        emit(out, r, fmt);
        return 0;
    } catch (const Error& e) {
        ordered_json doc{{"error", errc_name(e.code())}, {"message", e.what()}};
        if (e.index())
            doc["index"] = *e.index();
        if (fmt == Format::Json)
            out << doc.dump(2) << '\n';
        else
            write_csv(out, ordered_json::array({doc}));
        return 1;
    }
}

} // namespace pants::cli
