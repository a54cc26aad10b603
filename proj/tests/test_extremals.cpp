#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "afx/extremals.hpp"
#include "random_bodies.hpp"

using namespace afx;
using testgen::axis_box;
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

VPolytope stretched_box() {
    return axis_box(2, {{Rational(0), Rational(1)}, {Rational(0), Rational(2)}});
}

VPolytope tall_box() {
    return axis_box(3, {{Rational(0), Rational(1)}, {Rational(0), Rational(1)},
                        {Rational(0), Rational(2)}});
}

}  // namespace

TEST_CASE("af_triple frozen instances") {
    VPolytope cube = unit_cube(3);
    Collection c(3, {cube});

    auto same = af_triple(cube, cube, c);
    CHECK(same.v_mn == 1);
    CHECK(same.v_mm == 1);
    CHECK(same.v_nn == 1);
    CHECK(same.slack == 0);
    CHECK(same.status == AFStatus::equality);

    auto boxes = af_triple(cube, tall_box(), c);
    CHECK(boxes.v_mn == make_rational(4, 3));
    CHECK(boxes.v_mm == 1);
    CHECK(boxes.v_nn == make_rational(5, 3));
    CHECK(boxes.slack == make_rational(1, 9));
    CHECK(boxes.status == AFStatus::strict_inequality);
    CHECK(!boxes.certificate);

    VPolytope point(3, {rv({4, -1, 2})});
    auto deg = af_triple(cube, point, c);
    CHECK(deg.v_mn == 0);
    CHECK(deg.status == AFStatus::degenerate);

    CHECK_THROWS_AS(af_triple(unit_cube(2), cube, c), input_error);
}

TEST_CASE("certificate_solve frozen systems") {
    // single normal, underdetermined: canonical pick is a = 1, v = 0
    auto one = certificate_solve(std::vector<IntVector>{iv({1, 0})},
                                 std::vector<Rational>{Rational(1)},
                                 std::vector<Rational>{Rational(1)});
    REQUIRE(one);
    CHECK(one->a == 1);
    CHECK(one->v == rv({0, 0}));

    // pure dilation pinned by four normals
    std::vector<IntVector> axes{iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})};
    auto dil = certificate_solve(axes, std::vector<Rational>{1, 0, 1, 0},
                                 std::vector<Rational>{2, 0, 2, 0});
    REQUIRE(dil);
    CHECK(dil->a == make_rational(1, 2));
    CHECK(dil->v == rv({0, 0}));

    // contradictory data on +-e1
    std::vector<IntVector> pm{iv({1, 0}), iv({-1, 0})};
    CHECK(!certificate_solve(pm, std::vector<Rational>{1, 0}, std::vector<Rational>{0, 0}));

    CHECK_THROWS_AS(certificate_solve(pm, std::vector<Rational>{1}, std::vector<Rational>{0, 0}),
                    input_error);
}

TEST_CASE("af equality certificate on the homothety instance") {
    VPolytope cube = unit_cube(3);
    VPolytope n = scale_translate(cube, 2, rv({1, 1, 1}));
    Collection c(3, {cube});

    auto verdict = af_equality_certificate(cube, n, c);
    CHECK(verdict.status == AFStatus::equality);
    REQUIRE(verdict.certificate);
    CHECK(verdict.certificate->a == make_rational(1, 2));
    CHECK(verdict.certificate->v ==
          RatVector{make_rational(-1, 2), make_rational(-1, 2), make_rational(-1, 2)});
    CHECK(!verdict.violated_direction);
}

TEST_CASE("af equality certificate on the stretched box, strict") {
    VPolytope cube = unit_cube(3);
    Collection c(3, {cube});
    auto verdict = af_equality_certificate(cube, tall_box(), c);
    CHECK(verdict.status == AFStatus::strict_inequality);
    CHECK(verdict.slack == make_rational(1, 9));
    CHECK(!verdict.certificate);
    REQUIRE(verdict.violated_direction);
}

TEST_CASE("af equality in the plane: square and diamond") {
    VPolytope square = unit_cube(2);
    VPolytope diamond(2, {rv({1, 0}), rv({-1, 0}), rv({0, 1}), rv({0, -1})});
    Collection empty(2, {});

    auto strict = af_equality_certificate(square, diamond, empty);
    CHECK(strict.v_mn == 2);
    CHECK(strict.v_mm == 1);
    CHECK(strict.v_nn == 2);
    CHECK(strict.slack == 2);
    CHECK(strict.status == AFStatus::strict_inequality);

    VPolytope n = scale_translate(square, 3, rv({-2, 5}));
    auto eq = af_equality_certificate(square, n, empty);
    CHECK(eq.status == AFStatus::equality);
    REQUIRE(eq.certificate);
    CHECK(eq.certificate->a == make_rational(1, 3));
    CHECK(eq.certificate->v == RatVector{make_rational(2, 3), make_rational(-5, 3)});
}

TEST_CASE("degenerate instance short-circuits") {
    VPolytope cube = unit_cube(3);
    VPolytope point(3, {rv({0, 0, 0})});
    Collection c(3, {cube});
    auto verdict = af_equality_certificate(cube, point, c);
    CHECK(verdict.status == AFStatus::degenerate);
    CHECK(!verdict.certificate);
    CHECK(!verdict.violated_direction);
}

TEST_CASE("non-supercritical collections are refused") {
    VPolytope square3(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0})});
    Collection c(3, {square3});
    CHECK_THROWS_AS(af_equality_certificate(unit_cube(3), unit_cube(3), c), precondition_error);
}

TEST_CASE("certificate properties on random homothety instances") {
    std::mt19937_64 rng(5551212);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t n = 2 + trial % 2;
        VPolytope m = testgen::random_fulldim(rng, n, 6, -3, 3);
        std::vector<VPolytope> coll;
        for (std::size_t i = 0; i + 2 < n; ++i) coll.push_back(testgen::random_fulldim(rng, n, 6, -3, 3));
        Collection c(n, std::move(coll));

        Rational a = make_rational(1 + int(rng() % 5), 1 + int(rng() % 5));
        RatVector w = testgen::random_point(rng, n, -4, 4);
        VPolytope nn = scale_translate(m, a, w);

        auto verdict = af_equality_certificate(m, nn, c);
        INFO("trial " << trial);
        CHECK(verdict.status == AFStatus::equality);
        REQUIRE(verdict.certificate);
        CHECK(verdict.certificate->a == 1 / a);

        // certificate identity holds at every extreme facet normal
        std::vector<VPolytope> parts{m, nn};
        for (const auto& p : c.polytopes()) parts.push_back(p);
        for (const auto& rep : extreme_facet_normals(sum_of(parts), c)) {
            if (!rep.is_extreme) continue;
            Rational lhs = support(m, rep.direction);
            Rational rhs = verdict.certificate->a * support(nn, rep.direction) +
                           dot(verdict.certificate->v, to_rational(rep.direction));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("scaling equivariance of the certificate") {
    VPolytope cube = unit_cube(3);
    Collection c(3, {cube});
    VPolytope n = scale_translate(cube, 2, rv({1, 1, 1}));
    VPolytope n3 = dilate(n, 3);
    auto base = af_equality_certificate(cube, n, c);
    auto scaled = af_equality_certificate(cube, n3, c);
    REQUIRE(base.certificate);
    REQUIRE(scaled.certificate);
    CHECK(scaled.certificate->a == base.certificate->a / 3);
    CHECK(scaled.status == AFStatus::equality);
}

TEST_CASE("af slack is nonnegative on random supercritical instances") {
    std::mt19937_64 rng(1234321);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t n = 3;
        Collection c(n, {testgen::random_fulldim(rng, n, 5, -2, 2)});
        VPolytope m = testgen::random_any_dim(rng, n, 5, -2, 2);
        VPolytope nn = testgen::random_any_dim(rng, n, 5, -2, 2);
        auto v = af_triple(m, nn, c);
        CHECK(v.slack >= 0);
        if (v.v_mn > 0) CHECK_NOTHROW(af_equality_certificate(m, nn, c));
    }
}

TEST_CASE("kt sequence frozen values") {
    VPolytope cube = unit_cube(3);
    auto same = kt_sequence(cube, cube);
    for (const auto& v : same.sequence) CHECK(v == 1);
    for (const auto& s : same.slacks) CHECK(s == 0);

    auto boxes = kt_sequence(cube, tall_box());
    REQUIRE(boxes.sequence.size() == 4);
    CHECK(boxes.sequence[0] == 2);  // V_0 = vol(B)
    CHECK(boxes.sequence[1] == make_rational(5, 3));
    CHECK(boxes.sequence[2] == make_rational(4, 3));
    CHECK(boxes.sequence[3] == 1);  // V_3 = vol(A)
    REQUIRE(boxes.slacks.size() == 2);
    CHECK(boxes.slacks[0] == 4);  // 10^2 - 12*8
    CHECK(boxes.slacks[1] == 4);  // 8^2 - 10*6

    VPolytope point(3, {rv({1, 2, 3})});
    auto deg = kt_sequence(cube, point);
    CHECK(deg.sequence[0] == 0);
    CHECK(deg.sequence[1] == 0);
    CHECK(deg.sequence[2] == 0);
    CHECK(deg.sequence[3] == 1);

    CHECK_THROWS_AS(kt_sequence(cube, unit_cube(2)), input_error);
}

TEST_CASE("kt equality analysis") {
    VPolytope cube = unit_cube(3);
    VPolytope twice = scale_translate(cube, 2, rv({7, 0, -1}));

    auto eq = kt_equality(cube, twice, 1);
    REQUIRE(eq.equality_analysis);
    CHECK(eq.equality_analysis->status == AFStatus::equality);
    REQUIRE(eq.equality_analysis->certificate);
    CHECK(eq.equality_analysis->certificate->a == make_rational(1, 2));
    CHECK(eq.checked_k == 1);
    CHECK(eq.degeneracy_causes.empty());

    auto strict = kt_equality(cube, tall_box(), 1);
    REQUIRE(strict.equality_analysis);
    CHECK(strict.equality_analysis->status == AFStatus::strict_inequality);
    CHECK(strict.slacks[0] == 4);

    // degenerate position: flat A makes V_3 vanish
    VPolytope square3(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0})});
    auto deg = kt_equality(square3, cube, 3);
    CHECK(deg.sequence[3] == 0);
    CHECK(deg.degeneracy_causes == std::vector<std::string>{"dim A < k"});
    CHECK(!deg.equality_analysis);

    CHECK_THROWS_AS(kt_equality(cube, cube, 4), input_error);
    CHECK_THROWS_AS(kt_equality(cube, cube, 0), precondition_error);

    // reduction refusal: in the plane k = 1 needs dim A >= 2
    VPolytope seg(2, {rv({0, 0}), rv({1, 0})});
    VPolytope seg2(2, {rv({0, 0}), rv({0, 1})});
    CHECK_THROWS_AS(kt_equality(seg, seg2, 1), precondition_error);
}
