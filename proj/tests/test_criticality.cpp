#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "afx/criticality.hpp"
#include "afx/volume.hpp"
#include "random_bodies.hpp"

using namespace afx;
using testgen::segment;
using testgen::unit_cube;

namespace {

RatVector rv(std::initializer_list<int> xs) {
    RatVector v;
    for (int x : xs) v.push_back(Rational(x));
    return v;
}

IntVector iv(std::initializer_list<int> xs) {
    IntVector v;
    for (int x : xs) v.push_back(Integer(x));
    return v;
}

VPolytope truncated_cube() {
    // [0,2]^3 with the corner at (2,2,2) cut off by x+y+z <= 5
    return VPolytope(3, {rv({0, 0, 0}), rv({2, 0, 0}), rv({0, 2, 0}), rv({0, 0, 2}),
                         rv({2, 2, 0}), rv({2, 0, 2}), rv({0, 2, 2}), rv({1, 2, 2}),
                         rv({2, 1, 2}), rv({2, 2, 1})});
}

VPolytope square_in_r3() {
    return VPolytope(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0})});
}

}  // namespace

TEST_CASE("nondegeneracy frozen cases") {
    VPolytope e1 = segment(3, rv({0, 0, 0}), rv({1, 0, 0}));
    VPolytope e2 = segment(3, rv({0, 0, 0}), rv({0, 1, 0}));
    VPolytope e3 = segment(3, rv({0, 0, 0}), rv({0, 0, 1}));

    auto ok = nondegeneracy(std::vector<VPolytope>{e1, e2, e3});
    CHECK(ok.ok);
    CHECK(!ok.witness);

    auto bad = nondegeneracy(std::vector<VPolytope>{e1, e1, e2});
    CHECK(!bad.ok);
    REQUIRE(bad.witness);
    CHECK(*bad.witness == std::vector<std::size_t>{0, 1});

    VPolytope c = unit_cube(3);
    CHECK(nondegeneracy(std::vector<VPolytope>{c, c, c}).ok);

    CHECK_THROWS_AS(nondegeneracy(std::vector<VPolytope>{c, c}), input_error);
}

TEST_CASE("nondegeneracy agrees with positive mixed volume") {
    std::vector<IntVector> dirs{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}),
                                iv({1, 1, 0}), iv({0, 1, 1}), iv({1, 1, 1})};
    // all multisets of 3 directions out of 6
    for (std::size_t a = 0; a < dirs.size(); ++a)
        for (std::size_t b = a; b < dirs.size(); ++b)
            for (std::size_t c = b; c < dirs.size(); ++c) {
                std::vector<VPolytope> segs;
                for (auto i : {a, b, c})
                    segs.push_back(segment(3, rv({0, 0, 0}), to_rational(dirs[i])));
                bool nd = nondegeneracy(segs).ok;
                Rational v = mixed_volume(segs, Engine::both);
                INFO("multiset " << a << " " << b << " " << c);
                CHECK(nd == (v > 0));
            }

    std::mt19937_64 rng(4771);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<VPolytope> bodies;
        for (int i = 0; i < 3; ++i) bodies.push_back(testgen::random_any_dim(rng, 3, 4, -2, 2));
        CHECK(nondegeneracy(bodies).ok == (mixed_volume_polarization(bodies) > 0));
    }
}

TEST_CASE("supercritical tables") {
    Collection c3(3, {unit_cube(3)});
    auto rep = supercritical(c3);
    CHECK(rep.ok);
    REQUIRE(rep.table.size() == 1);
    CHECK(rep.table[0].dim == 3);

    Collection flat(3, {square_in_r3()});
    auto bad = supercritical(flat);
    CHECK(!bad.ok);
    CHECK(bad.table[0].dim == 2);
    CHECK(format_supercritical_table(bad).find("FAILS") != std::string::npos);

    Collection c4(4, {unit_cube(4), unit_cube(4)});
    auto rep4 = supercritical(c4);
    CHECK(rep4.ok);
    REQUIRE(rep4.table.size() == 3);
    CHECK(rep4.table[0].subset == std::vector<std::size_t>{0});
    CHECK(rep4.table[2].subset == std::vector<std::size_t>{0, 1});
    CHECK(rep4.table[2].dim == 4);

    // n = 2: empty collection is vacuously supercritical
    Collection c2(2, {});
    CHECK(supercritical(c2).ok);
    CHECK(supercritical(c2).table.empty());

    // enlarging any body preserves supercriticality
    Collection grown(3, {minkowski_sum(unit_cube(3), square_in_r3())});
    CHECK(supercritical(grown).ok);
}

TEST_CASE("extreme directions on the cube collection") {
    Collection c(3, {unit_cube(3)});

    auto r1 = extreme_direction(iv({1, 0, 0}), c);
    CHECK(r1.is_extreme);
    CHECK(r1.direction == iv({1, 0, 0}));

    auto r2 = extreme_direction(iv({1, 1, 1}), c);
    CHECK(!r2.is_extreme);
    REQUIRE(r2.witness);
    CHECK(*r2.witness == std::vector<std::size_t>{0});

    // positive scaling does not change the verdict or the representative
    auto r3 = extreme_direction(iv({7, 7, 7}), c);
    CHECK(r3.direction == iv({1, 1, 1}));
    CHECK(!r3.is_extreme);

    Collection empty(2, {});
    CHECK(extreme_direction(iv({3, -5}), empty).is_extreme);

    CHECK_THROWS_AS(extreme_direction(iv({0, 0, 0}), c), input_error);
    CHECK_THROWS_AS(extreme_direction(iv({1, 0}), c), input_error);
}

TEST_CASE("full-dimensional collections are supercritical") {
    std::mt19937_64 rng(90125);
    Collection c(4, {testgen::random_fulldim(rng, 4, 8, -3, 3),
                     testgen::random_fulldim(rng, 4, 8, -3, 3)});
    CHECK(supercritical(c).ok);
    // and on box collections every axis direction is extreme: the face at
    // +-e_k is a facet of each box, so all subset face dims are n-1 >= |I|
    Collection boxes(4, {testgen::unit_cube(4), dilate(testgen::unit_cube(4), 2)});
    for (std::size_t k = 0; k < 4; ++k) {
        IntVector u(4, Integer(0));
        u[k] = 1;
        CHECK(extreme_direction(u, boxes).is_extreme);
        u[k] = -3;
        CHECK(extreme_direction(u, boxes).is_extreme);
    }
}

TEST_CASE("extreme reports at facet normals") {
    Collection cube_col(3, {unit_cube(3)});

    auto all6 = extreme_facet_normals(dilate(unit_cube(3), 3), cube_col);
    REQUIRE(all6.size() == 6);
    for (const auto& r : all6) CHECK(r.is_extreme);

    auto trunc = extreme_facet_normals(truncated_cube(), cube_col);
    REQUIRE(trunc.size() == 7);
    std::size_t extreme_count = 0;
    for (const auto& r : trunc) {
        if (r.direction == iv({1, 1, 1})) {
            CHECK(!r.is_extreme);
        } else {
            CHECK(r.is_extreme);
            ++extreme_count;
        }
    }
    CHECK(extreme_count == 6);

    // n = 2, empty collection: every facet normal of M+N is extreme
    VPolytope m = unit_cube(2);
    VPolytope diamond(2, {rv({1, 0}), rv({-1, 0}), rv({0, 1}), rv({0, -1})});
    Collection empty(2, {});
    for (const auto& r : extreme_facet_normals(minkowski_sum(m, diamond), empty))
        CHECK(r.is_extreme);
}
