#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "helpers.hpp"

using Catch::Approx;
using namespace ctl;
using namespace helpers;

namespace {

Zonotope from_columns(std::initializer_list<Eigen::Vector2d> cols)
{
    Zonotope z;
    z.generators.resize(2, static_cast<Eigen::Index>(cols.size()));
    Eigen::Index i = 0;
    for (const auto& c : cols)
        z.generators.col(i++) = c;
    return z;
}

// Equality up to cyclic rotation of the vertex list.
bool same_cycle(const Polygon2D& poly, const std::vector<Eigen::Vector2d>& expected)
{
    const size_t n = poly.vertices.size();
    if (n != expected.size())
        return false;
    for (size_t shift = 0; shift < n; ++shift) {
        bool all = true;
        for (size_t i = 0; i < n; ++i)
            if (!poly.vertices[(i + shift) % n].isApprox(expected[i], 1e-12))
                all = false;
        if (all)
            return true;
    }
    return false;
}

} // namespace

TEST_CASE("axis-aligned box", "[polygon]")
{
    const Polygon2D poly = boundary_polygon(from_columns({{1, 0}, {0, 1}}));
    CHECK(same_cycle(poly, {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}));
    CHECK(polygon_area(poly) == Approx(4.0));
}

TEST_CASE("two-generator parallelogram", "[polygon]")
{
    const Polygon2D poly = boundary_polygon(from_columns({{1, 0}, {1, 1}}));
    CHECK(same_cycle(poly, {{2, 1}, {0, 1}, {-2, -1}, {0, -1}}));
    CHECK(polygon_area(poly) == Approx(4.0));
}

TEST_CASE("parallel generators merge into one edge pair", "[polygon]")
{
    const Polygon2D poly = boundary_polygon(from_columns({{1, 0}, {0, 1}, {-2, 0}, {0.5, 0}}));
    // The three horizontal generators fold into one segment of half-length 3.5.
    CHECK(same_cycle(poly, {{3.5, 1}, {-3.5, 1}, {-3.5, -1}, {3.5, -1}}));
}

TEST_CASE("degenerate direction sets are rejected", "[polygon]")
{
    try {
        boundary_polygon(from_columns({{1, 1}, {-2, -2}, {0.5, 0.5}}));
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.code() == errc::degenerate);
    }

    Zonotope z3;
    z3.generators = Matrix::Identity(3, 3);
    try {
        boundary_polygon(z3);
        FAIL("expected DimensionUnsupported");
    } catch (const Error& e) {
        CHECK(e.code() == errc::dimension_unsupported);
    }
}

TEST_CASE("boundary walk agrees with the subset-determinant volume", "[polygon][property]")
{
    const LdtSystem sys(diag({0.4, 0.9}), col({1, 1}));
    const Zonotope z = build_generators(sys, 30, RegionKind::reach);
    const Polygon2D poly = boundary_polygon(z);
    CHECK(poly.vertices.size() == 60);
    CHECK(polygon_area(poly) == Approx(4.0 * enumerated_volume(z)).epsilon(1e-9));

    // Central symmetry of the vertex list.
    const size_t half = poly.vertices.size() / 2;
    for (size_t i = 0; i < half; ++i)
        CHECK(poly.vertices[i].isApprox(-poly.vertices[i + half], 1e-12));
}

TEST_CASE("vertex cycle ignores generator order", "[polygon][property]")
{
    std::mt19937 rng(31);
    const LdtSystem sys = random_distinct_system(rng, {0.35, 0.75});
    Zonotope z = build_generators(sys, 12, RegionKind::reach);
    const Polygon2D reference = boundary_polygon(z);

    std::vector<int> perm(static_cast<size_t>(z.count()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Zonotope shuffled = z;
    for (int c = 0; c < z.count(); ++c)
        shuffled.generators.col(c) = z.generators.col(perm[static_cast<size_t>(c)]);

    CHECK(same_cycle(boundary_polygon(shuffled), reference.vertices));
}

TEST_CASE("random 2-D systems cross-check area against volume", "[polygon][property]")
{
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 8; ++trial) {
        const auto eigs = random_spectrum(rng, 2, 0.05, 0.9, 0.03);
        const LdtSystem sys = random_distinct_system(rng, eigs);
        const Zonotope z = build_generators(sys, 30, RegionKind::reach);
        CHECK(polygon_area(boundary_polygon(z)) == Approx(4.0 * enumerated_volume(z)).epsilon(1e-9));
    }
}
