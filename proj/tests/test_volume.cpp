#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "afx/volume.hpp"
#include "random_bodies.hpp"

using namespace afx;
using testgen::axis_box;
using testgen::box_of_edges;
using testgen::segment;
using testgen::unit_cube;

namespace {

Rational mv_both(const std::vector<VPolytope>& bodies) { return mixed_volume(bodies, Engine::both); }

RatVector rv(std::initializer_list<int> xs) {
    RatVector v;
    for (int x : xs) v.push_back(Rational(x));
    return v;
}

}  // namespace

TEST_CASE("volume of frozen bodies") {
    CHECK(volume(unit_cube(1)) == 1);
    CHECK(volume(unit_cube(2)) == 1);
    CHECK(volume(unit_cube(3)) == 1);
    CHECK(volume(dilate(unit_cube(3), 2)) == 8);

    VPolytope tri(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})});
    CHECK(volume(tri) == make_rational(1, 2));

    VPolytope tet(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
    CHECK(volume(tet) == make_rational(1, 6));

    VPolytope cross(3, {rv({1, 0, 0}), rv({-1, 0, 0}), rv({0, 1, 0}), rv({0, -1, 0}),
                        rv({0, 0, 1}), rv({0, 0, -1})});
    CHECK(volume(cross) == make_rational(4, 3));

    // volume is translation invariant, even far from the origin
    CHECK(volume(scale_translate(tet, 1, rv({-7, 100, 3}))) == make_rational(1, 6));

    // degenerate bodies have volume zero
    VPolytope flat(3, {rv({0, 0, 1}), rv({1, 0, 1}), rv({0, 1, 1}), rv({1, 1, 1})});
    CHECK(volume(flat) == 0);
    CHECK(volume(VPolytope(2, {rv({3, 4})})) == 0);
}

TEST_CASE("mixed volume frozen values, both engines") {
    VPolytope s1 = segment(2, rv({0, 0}), rv({1, 0}));
    VPolytope s2 = segment(2, rv({0, 0}), rv({1, 1}));
    CHECK(mv_both({s1, s2}) == make_rational(1, 2));

    VPolytope k = unit_cube(2);
    VPolytope l = axis_box(2, {{Rational(0), Rational(1)}, {Rational(0), Rational(2)}});
    CHECK(mv_both({k, l}) == make_rational(3, 2));
    // consistency: vol(K+L) = vol K + 2 V(K,L) + vol L
    CHECK(volume(minkowski_sum(k, l)) == 1 + 2 * make_rational(3, 2) + 2);

    VPolytope e1 = segment(3, rv({0, 0, 0}), rv({1, 0, 0}));
    VPolytope e2 = segment(3, rv({0, 0, 0}), rv({0, 1, 0}));
    VPolytope e3 = segment(3, rv({0, 0, 0}), rv({0, 0, 1}));
    CHECK(mv_both({e1, e2, e3}) == make_rational(1, 6));

    // parallel segments force every summand degenerate
    VPolytope e1b = segment(3, rv({0, 0, 0}), rv({2, 0, 0}));
    CHECK(mv_both({e1, e1b, e3}) == 0);

    // diagonal recovers plain volume
    VPolytope tet(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
    CHECK(mv_both({tet, tet, tet}) == make_rational(1, 6));
}

TEST_CASE("permanent frozen values") {
    CHECK(permanent(RatMatrix::identity(4)) == 1);
    RatMatrix ones(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1;
    CHECK(permanent(ones) == 6);
    CHECK(permanent(RatMatrix::from_rows({rv({1, 2}), rv({3, 4})})) == 10);
    CHECK_THROWS_AS(permanent(RatMatrix(2, 3)), input_error);
}

TEST_CASE("box permanent oracle agrees with both engines") {
    VPolytope m = box_of_edges({1, 1, 1});
    VPolytope n = box_of_edges({1, 1, 2});

    CHECK(box_permanent_oracle(std::vector<VPolytope>{m, m, m}) == 1);
    CHECK(box_permanent_oracle(std::vector<VPolytope>{m, m, n}) == make_rational(8, 6));
    CHECK(box_permanent_oracle(std::vector<VPolytope>{m, n, n}) == make_rational(10, 6));
    CHECK(box_permanent_oracle(std::vector<VPolytope>{n, n, n}) == 2);

    CHECK(mv_both({m, m, n}) == make_rational(4, 3));
    CHECK(mv_both({m, n, n}) == make_rational(5, 3));

    std::mt19937_64 rng(802701);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t dim = 2 + trial % 3;
        std::vector<VPolytope> boxes;
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<Rational> edges;
            for (std::size_t j = 0; j < dim; ++j)
                edges.push_back(make_rational(1 + int(rng() % 5), 1 + int(rng() % 3)));
            boxes.push_back(box_of_edges(edges));
        }
        CHECK(mv_both(boxes) == box_permanent_oracle(boxes));
    }

    VPolytope tri(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})});
    CHECK_THROWS_AS(box_permanent_oracle(std::vector<VPolytope>{tri, tri}), input_error);
}

TEST_CASE("engines agree on random bodies") {
    std::mt19937_64 rng(19770527);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + trial % 2;
        std::vector<VPolytope> bodies;
        for (std::size_t i = 0; i < n; ++i)
            bodies.push_back(testgen::random_any_dim(rng, n, 4 + rng() % 3, -3, 3));
        Rational p = mixed_volume_polarization(bodies);
        Rational r = mixed_volume_recursive(bodies);
        INFO("trial " << trial);
        CHECK(p == r);
        CHECK(p >= 0);
        CHECK_NOTHROW(mixed_volume(bodies, Engine::both));
    }
    // a few full 3-dimensional tuples with rational coordinates
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<VPolytope> bodies;
        for (std::size_t i = 0; i < 3; ++i)
            bodies.push_back(testgen::random_fulldim(rng, 3, 5, -2, 2, 2));
        CHECK(mixed_volume_polarization(bodies) == mixed_volume_recursive(bodies));
    }
}

TEST_CASE("mixed volume symmetry, translation invariance, additivity") {
    std::mt19937_64 rng(63512);
    VPolytope a = testgen::random_fulldim(rng, 3, 6, -2, 2);
    VPolytope b = testgen::random_fulldim(rng, 3, 5, -2, 2);
    VPolytope c = testgen::random_fulldim(rng, 3, 5, -2, 2);
    VPolytope d = testgen::random_fulldim(rng, 3, 4, -2, 2);

    Rational ref = mv_both({a, b, c});
    CHECK(mv_both({b, a, c}) == ref);
    CHECK(mv_both({c, b, a}) == ref);

    VPolytope a_shift = scale_translate(a, 1, rv({5, -1, 9}));
    CHECK(mv_both({a_shift, b, c}) == ref);

    // Minkowski additivity in the first slot
    Rational lhs = mv_both({minkowski_sum(a, d), b, c});
    CHECK(lhs == ref + mv_both({d, b, c}));

    // positive homogeneity in one slot
    CHECK(mv_both({dilate(a, 3), b, c}) == 3 * ref);
}

TEST_CASE("volume memo is shared and stable across calls") {
    VolumeMemo memo;
    VPolytope m = box_of_edges({1, 1, 1});
    VPolytope n = box_of_edges({1, 1, 2});
    std::vector<VPolytope> t1{m, m, n}, t2{m, n, n};
    Rational v1 = mixed_volume_polarization(t1, &memo);
    CHECK(memo.size() == 2);
    Rational v2 = mixed_volume_polarization(t2, &memo);
    CHECK(memo.size() == 2);
    CHECK(v1 == make_rational(4, 3));
    CHECK(v2 == make_rational(5, 3));
    // re-run hits the cache and reproduces the same values
    CHECK(mixed_volume_polarization(t1, &memo) == v1);
    // translates register as distinct bodies but give equal volumes
    std::vector<VPolytope> t3{scale_translate(m, 1, rv({2, 2, 2})), m, n};
    CHECK(mixed_volume_polarization(t3, &memo) == v1);
    CHECK(memo.size() == 3);
}

TEST_CASE("minkowski volume polynomial identity") {
    std::mt19937_64 rng(271828);
    std::vector<RatVector> samples{rv({1, 1}), rv({2, 3}), {make_rational(1, 2), Rational(4)},
                                   rv({0, 1})};
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<VPolytope> bodies;
        for (int i = 0; i < 2; ++i) bodies.push_back(testgen::random_any_dim(rng, 2, 5, -3, 3));
        CHECK(minkowski_poly_check(bodies, samples));
    }
    std::vector<RatVector> samples3{rv({1, 1, 1}), rv({1, 2, 3}),
                                    {make_rational(1, 3), Rational(1), make_rational(5, 2)}};
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<VPolytope> bodies;
        for (int i = 0; i < 3; ++i) bodies.push_back(testgen::random_any_dim(rng, 3, 4, -2, 2));
        CHECK(minkowski_poly_check(bodies, samples3));
    }
}

TEST_CASE("mixed volume input validation") {
    VPolytope k = unit_cube(2);
    CHECK_THROWS_AS(mv_both({k}), input_error);
    CHECK_THROWS_AS(mv_both({k, k, k}), input_error);
    CHECK_THROWS_AS(mv_both({k, unit_cube(3)}), input_error);
    CHECK_THROWS_AS(mixed_volume(std::vector<VPolytope>{}, Engine::both), input_error);
}
