#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "fairseq/errors.hpp"
#include "fairseq/figures.hpp"
#include "fairseq/geometry/export.hpp"
#include "fairseq/geometry/partition.hpp"
#include "fairseq/geometry/polygon.hpp"
#include "fairseq/geometry/projection.hpp"
#include "fairseq/geometry/verify.hpp"
#include "fairseq/sampling.hpp"

using namespace fairseq;
using namespace fairseq::geometry;

namespace {

ConvexPolygon unit_square() { return ConvexPolygon::rectangle({0, 0}, {1, 1}); }

ConvexPolygon random_convex(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vec2> pts;
    for (int i = 0; i < 12; ++i) pts.push_back({u(rng), u(rng)});
    return ConvexPolygon(convex_hull(pts));
}

double total_area(const std::vector<ConvexPolygon>& ps) {
    double s = 0;
    for (const auto& p : ps) s += p.area();
    return s;
}

const ExchangeSystem& figure_system(const std::string& name) {
    static std::map<std::string, ExchangeSystem> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, exact_partition_d3(figure_preset(name).params())).first;
    return it->second;
}

}  // namespace

TEST(Projection, PiAlpha) {
    const FrequencyVector a{0.5, 0.3, 0.2};
    const auto e2 = project_pi_alpha(std::vector<double>{0, 1, 0}, a);
    EXPECT_DOUBLE_EQ(e2[0], -0.5);
    EXPECT_DOUBLE_EQ(e2[1], 0.7);
    EXPECT_DOUBLE_EQ(e2[2], -0.2);
    EXPECT_NEAR(project_pi_alpha(a.values(), a).norm_inf(), 0.0, 1e-15);
    EXPECT_EQ(project_pi_alpha(std::vector<double>{0, 0, 0}, a), SumZeroVector::zero(3));
}

TEST(Projection, Iota) {
    const SumZeroVector x{0.2, -0.5, 0.3};
    EXPECT_EQ(iota(x), (std::vector<double>{0.2, -0.5}));
    const auto back = iota_inverse(std::vector<double>{0.2, -0.5});
    EXPECT_DOUBLE_EQ(back[2], 0.3);
    EXPECT_EQ(iota_inverse(std::vector<double>{0, 0}), SumZeroVector::zero(3));
    const auto q = iota2(x);
    EXPECT_EQ(iota2_inverse(q), iota_inverse(std::vector<double>{q.x, q.y}));
}

TEST(Projection, HypercubicRegion) {
    const FrequencyVector a{0.5, 0.3, 0.2};
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> e(3, 0.0);
        e[i] = 1.0;
        EXPECT_EQ(hypercubic_region_of(project_pi_alpha(e, a), a), i + 1);
    }
    EXPECT_EQ(hypercubic_region_of(SumZeroVector::zero(3), a), 1);
    const FrequencyVector b{0.75, 0.25};
    for (double t : {0.74, 0.6, 0.51}) EXPECT_EQ(hypercubic_region_of(SumZeroVector({-t, t}), b), 2);
    EXPECT_THROW(hypercubic_region_of(SumZeroVector({2.0, -2.0}), b), OutOfDomain);
    EXPECT_FALSE(classify_hypercubic(std::vector<double>{2.0, -2.0}, b).inside);
}

TEST(Projection, ExchangeStep) {
    const FrequencyVector a{0.5, 0.3, 0.2};
    const TijdemanParams hp(a, 1.0, 3.0, SumZeroVector::zero(3));
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> e(3, 0.0);
        e[i] = 1.0;
        EXPECT_NEAR(exchange_step(project_pi_alpha(e, a), SystemKind::hypercubic, hp).norm_inf(), 0.0, 1e-15);
    }
    const TijdemanParams tp(FrequencyVector{0.5, 0.5}, 0.75, 0.75, SumZeroVector::zero(2));
    const auto next = exchange_step(SumZeroVector::zero(2), SystemKind::tijdeman, tp);
    EXPECT_DOUBLE_EQ(next[0], -0.5);
    EXPECT_DOUBLE_EQ(next[1], 0.5);
}

TEST(Projection, TijdemanRegionMatchesStep) {
    std::mt19937_64 rng(31);
    const auto params = canonical_params(FrequencyVector{0.45, 0.35, 0.2});
    TraceOptions opt;
    const auto t = tijdeman_generate(params, 100'000, opt);
    for (std::size_t n = 0; n < t.steps(); ++n)
        ASSERT_EQ(tijdeman_region_of(t.points[n], params), t.letters[n]) << n;
}

TEST(Polygon, ConstructionAndQueries) {
    const auto sq = unit_square();
    EXPECT_DOUBLE_EQ(sq.area(), 1.0);
    EXPECT_DOUBLE_EQ(sq.perimeter(), 4.0);
    EXPECT_NEAR(sq.centroid().x, 0.5, 1e-15);
    EXPECT_TRUE(sq.contains({0.5, 0.5}));
    EXPECT_FALSE(sq.contains({1.5, 0.5}));
    EXPECT_NEAR(sq.inner_distance({0.5, 0.25}), 0.25, 1e-15);
    EXPECT_NEAR(sq.distance({2.0, 0.5}), 1.0, 1e-15);
    // Clockwise input, duplicates and collinear points are cleaned.
    const ConvexPolygon cw({{0, 0}, {0, 1}, {0, 1}, {1, 1}, {1, 0.5}, {1, 0}});
    EXPECT_EQ(cw.size(), 4u);
    EXPECT_DOUBLE_EQ(cw.area(), 1.0);
    EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), InvalidArgument);
    EXPECT_THROW(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.2}, {1, 1}}), InvalidArgument);
    EXPECT_FALSE(ConvexPolygon::try_make({{0, 0}, {1, 0}, {1, 1e-14}}).has_value());
}

TEST(Polygon, ClipExamples) {
    const auto sq = unit_square();
    const auto left = clip(sq, HalfPlane(1, 0, 0.5));
    ASSERT_TRUE(left);
    EXPECT_NEAR(left->area(), 0.5, 1e-15);
    const auto all = clip(sq, HalfPlane(1, 0, 5));
    ASSERT_TRUE(all);
    EXPECT_DOUBLE_EQ(all->area(), 1.0);
    EXPECT_FALSE(clip(sq, HalfPlane(1, 0, -1)).has_value());
    EXPECT_THROW(HalfPlane(0, 0, 1), InvalidArgument);
}

TEST(Polygon, ClipConservesArea) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const auto p = random_convex(rng);
        const HalfPlane h(u(rng), u(rng), 0.5 * u(rng));
        const auto a = clip(p, h), b = clip(p, h.complement());
        const double s = (a ? a->area() : 0.0) + (b ? b->area() : 0.0);
        EXPECT_NEAR(s, p.area(), 1e-9);
    }
}

TEST(Polygon, SubtractExamples) {
    const auto sq = unit_square();
    const auto far = ConvexPolygon::rectangle({2, 2}, {3, 3});
    ASSERT_EQ(subtract(sq, far).size(), 1u);
    EXPECT_TRUE(subtract(sq, ConvexPolygon::rectangle({-1, -1}, {2, 2})).empty());
    const auto rest = subtract(sq, ConvexPolygon::rectangle({-1, -1}, {0.5, 2}));
    ASSERT_EQ(rest.size(), 1u);
    EXPECT_NEAR(rest[0].area(), 0.5, 1e-15);
}

TEST(Polygon, SubtractConservesArea) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 300; ++k) {
        const auto p = random_convex(rng), q = random_convex(rng);
        const auto pieces = subtract(p, q);
        const auto common = intersect(p, q);
        EXPECT_NEAR(total_area(pieces), p.area() - (common ? common->area() : 0.0), 1e-9);
        for (const auto& piece : pieces) {
            const auto overlap = intersect(piece, q);
            EXPECT_LE(overlap ? overlap->area() : 0.0, 1e-9);
        }
    }
}

TEST(Polygon, MergeAndUnionBoundary) {
    const auto a = ConvexPolygon::rectangle({0, 0}, {0.5, 1});
    const auto b = ConvexPolygon::rectangle({0.5, 0}, {1, 1});
    const auto merged = merge_convex_pieces({a, b});
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_NEAR(merged[0].area(), 1.0, 1e-15);

    // An L-shape from two rectangles with a T-junction on the shared edge.
    std::vector<ConvexPolygon> l{ConvexPolygon::rectangle({0, 0}, {2, 1}), ConvexPolygon::rectangle({0, 1}, {1, 2})};
    const auto ub = union_boundary(l);
    EXPECT_EQ(ub.components, 1u);
    ASSERT_EQ(ub.loops.size(), 1u);
    EXPECT_EQ(ub.loops[0].size(), 6u);
    EXPECT_NEAR(shoelace_area(ub.loops[0]), 3.0, 1e-12);

    std::vector<ConvexPolygon> apart{unit_square(), ConvexPolygon::rectangle({3, 0}, {4, 1})};
    EXPECT_EQ(union_boundary(apart).components, 2u);
}

TEST(QCells, Properties) {
    const auto params = figure_preset("f2").params();
    const auto cells = q_cells(params);
    ASSERT_FALSE(cells.empty());
    const double Cp = params.C_prime();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (auto v : cells[i].polygon.vertices()) {
            const auto x = iota2_inverse(v);
            for (std::size_t k = 0; k < 3; ++k) {
                EXPECT_GE(x[k], -Cp - 1e-9);
                EXPECT_LE(x[k], 2 * Cp + 1e-9);
            }
        }
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            if (cells[i].letter == cells[j].letter) continue;
            const auto o = intersect(cells[i].polygon, cells[j].polygon);
            EXPECT_LE(o ? o->area() : 0.0, 1e-9);
        }
    }
    const auto t = tijdeman_generate(params, 10'000);
    for (std::size_t n = 0; n < t.steps(); ++n) {
        const Vec2 q = iota2(t.points[n]);
        bool found = false;
        for (const auto& c : cells) found = found || (c.letter == t.letters[n] && c.polygon.contains(q, 1e-9));
        ASSERT_TRUE(found) << n;
    }
    EXPECT_THROW(q_cells(canonical_params(FrequencyVector{0.4, 0.3, 0.2, 0.1})), UnsupportedDimension);
}

TEST(Partition, FigureTwo) {
    const auto& s = figure_system("f2");
    EXPECT_NEAR(s.total_area(), 1.0, 1e-6);
    ASSERT_EQ(s.atoms.size(), 3u);
    for (const auto& atom : s.atoms) {
        EXPECT_GE(atom.polygons.size(), 1u);
        // Letter frequencies equal the atom areas for a uniquely ergodic coding.
        EXPECT_NEAR(atom.area(), s.alpha[atom.letter - 1], 1e-6);
        const auto t = iota2(project_pi_alpha(std::vector<double>{atom.letter == 1 ? -1.0 : 0.0,
                                                                  atom.letter == 2 ? -1.0 : 0.0,
                                                                  atom.letter == 3 ? -1.0 : 0.0},
                                              s.alpha));
        EXPECT_NEAR(atom.translation.x, t.x, 1e-15);
        EXPECT_NEAR(atom.translation.y, t.y, 1e-15);
    }
    EXPECT_EQ(s.atoms[0].component_count(), 1u);
    EXPECT_LE(s.max_overlap(), 1e-9);
}

TEST(Partition, FigureThreeTer) {
    const auto& s = figure_system("f3ter");
    EXPECT_NEAR(s.total_area(), 1.0, 1e-6);
    for (const auto& atom : s.atoms) {
        EXPECT_EQ(atom.component_count(), 1u);
        const auto outline = atom.outlines();
        ASSERT_EQ(outline.size(), 1u);
        ASSERT_EQ(outline[0].size(), 4u);
        // Opposite sides are parallel.
        const auto& o = outline[0];
        EXPECT_NEAR(cross(o[1] - o[0], o[2] - o[3]), 0.0, 1e-9);
        EXPECT_NEAR(cross(o[2] - o[1], o[3] - o[0]), 0.0, 1e-9);
    }
}

TEST(Partition, FigureThreeBis) {
    const auto& s = figure_system("f3bis");
    EXPECT_NEAR(s.total_area(), 1.0, 1e-6);
    EXPECT_GE(s.atoms[2].component_count(), 2u);
}

TEST(Partition, Errors) {
    PartitionOptions opt;
    opt.n_cap = 5;
    EXPECT_THROW(exact_partition_d3(figure_preset("f2").params(), opt), NoConvergence);
    // Rational frequencies give a periodic orbit of the seed square.
    EXPECT_THROW(exact_partition_d3(TijdemanParams(FrequencyVector{0.5, 0.3, 0.2}, 0.75, 0.75,
                                                   SumZeroVector::zero(3))),
                 NoConvergence);
    EXPECT_THROW(exact_partition_d3(canonical_params(FrequencyVector{0.4, 0.3, 0.2, 0.1})), UnsupportedDimension);
    PartitionStats stats;
    try {
        exact_partition_d3(figure_preset("f2").params(), opt, &stats);
    } catch (const NoConvergence& e) {
        EXPECT_LT(e.achieved_area(), 1.0);
        EXPECT_EQ(e.iterations(), 5);
    }
}

TEST(Partition, Hypercubic) {
    const FrequencyVector a{0.48, 0.32, 0.2};
    const auto s = hypercubic_partition_d3(a);
    EXPECT_NEAR(s.total_area(), 1.0, 1e-9);
    for (const auto& atom : s.atoms) {
        ASSERT_EQ(atom.polygons.size(), 1u);
        EXPECT_EQ(atom.polygons[0].size(), 4u);
        for (auto v : atom.polygons[0].vertices()) EXPECT_NE(s.locate(v + atom.translation, 1e-9), 0);
    }
    EXPECT_THROW(hypercubic_partition_d3(FrequencyVector{0.4, 0.3, 0.2, 0.1}), UnsupportedDimension);
}

TEST(Verify, TilingHypercubicAndFigure) {
    const auto h = verify_tiling(hypercubic_partition_d3(FrequencyVector{0.48, 0.32, 0.2}), 100'000);
    EXPECT_TRUE(h.pass);
    EXPECT_GE(h.coverage_fraction, 0.999);
    const auto f = verify_tiling(figure_system("f2"), 100'000);
    EXPECT_TRUE(f.pass);
    EXPECT_TRUE(verify_tiling(figure_system("f2").translated(), 50'000).pass);
}

TEST(Verify, TilingNegativeControl) {
    auto s = hypercubic_partition_d3(FrequencyVector{0.48, 0.32, 0.2});
    const double removed = s.atoms[0].area();
    s.atoms.erase(s.atoms.begin());
    const auto r = verify_tiling(s, 100'000);
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(r.deficit_fraction, removed, 0.01);
}

TEST(Verify, NaturalPartition) {
    const auto& f = figure_system("f2");
    const auto r = verify_natural_partition(f, figure_preset("f2").params(), 100'000);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.orbit_in_atoms);
    EXPECT_TRUE(r.images_inside);
    EXPECT_TRUE(r.classification_agrees);

    const FrequencyVector a{0.48, 0.32, 0.2};
    const auto h = verify_natural_partition(hypercubic_partition_d3(a), TijdemanParams(a, 1.0, 3.0, SumZeroVector::zero(3)),
                                            100'000);
    EXPECT_TRUE(h.pass);

    // The f3ter system does not match the f3bis generator.
    const auto bad = verify_natural_partition(figure_system("f3ter"), figure_preset("f3bis").params(), 20'000);
    EXPECT_FALSE(bad.pass);
}

TEST(Verify, ModelSetEqualsBrokenLine) {
    const FrequencyVector a{0.48, 0.32, 0.2};
    const auto x0 = project_pi_alpha(std::vector<double>{0.5, 0.5, 0.5}, a);
    const auto window = hypercubic_partition_d3(a);
    const auto model = model_set_vertices(a, x0, window, 50);
    const auto line = broken_line_vertices(a, x0, 50);
    EXPECT_FALSE(model.interior.empty());
    for (const auto& p : model.interior) EXPECT_TRUE(line.count(p));
    for (const auto& p : line) EXPECT_TRUE(model.interior.count(p) || model.boundary.count(p));
    EXPECT_TRUE(model.interior.count({0, 0, 0}));
}

TEST(Verify, OrbitDensity) {
    const auto& s = figure_system("f2");
    const auto t = tijdeman_generate(figure_preset("f2").params(), 100'000);
    constexpr double cell = 0.05;
    std::set<std::pair<long, long>> hit;
    for (const auto& x : t.points) {
        const Vec2 q = iota2(x);
        hit.insert({std::lround(std::floor(q.x / cell)), std::lround(std::floor(q.y / cell))});
    }
    std::size_t probes = 0, missed = 0;
    for (double x = -1.0; x <= 1.0; x += 0.02)
        for (double y = -1.0; y <= 1.0; y += 0.02) {
            if (!s.locate({x, y}, -1e-3)) continue;
            ++probes;
            bool near = false;
            const long i = std::lround(std::floor(x / cell)), j = std::lround(std::floor(y / cell));
            for (long di = -1; di <= 1; ++di)
                for (long dj = -1; dj <= 1; ++dj) near = near || hit.count({i + di, j + dj});
            missed += !near;
        }
    EXPECT_GT(probes, 1000u);
    EXPECT_EQ(missed, 0u);
}

TEST(Export, JsonAndSvg) {
    const auto& s = figure_system("f3ter");
    const auto j = nlohmann::json::parse(partition_to_json(s));
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["atoms"].size(), 3u);
    EXPECT_NEAR(j["total_area"].get<double>(), 1.0, 1e-6);
    EXPECT_EQ(j["atoms"][0]["polygons"][0].size(), 4u);
    EXPECT_EQ(partition_to_json(s), partition_to_json(s));
    const auto svg = partition_to_svg(s);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
    EXPECT_NE(svg.find("id=\"P3\""), std::string::npos);
}
