#include <catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"
#include "tracecone/circumcenter.hpp"
#include "tracecone/random.hpp"
#include "tracecone/testing/oracles.hpp"

using namespace tracecone;
using Catch::Matchers::WithinAbs;
using support::max_entry_gap;
using support::pos_diag;

TEST_CASE("max_radius examples", "[circumcenter]") {
    const auto m2 = BlockAlgebra::matrices(2);
    const PositiveElement one = PositiveElement::identity(m2);
    const PositiveElement b = pos_diag(m2, {4.0, 0.25});

    const std::vector<PositiveElement> single{b};
    const FarthestPoint self = max_radius(b, single);
    CHECK(self.radius == 0.0);
    CHECK(self.index == 0);

    // d2(1, diag(4, 1/4)) = sqrt(((ln 4)^2 + (ln 4)^2) / 2) = ln 4.
    const std::vector<PositiveElement> pair{one, b};
    CHECK_THAT(max_radius(midpoint(one, b), pair).radius, WithinAbs(std::log(2.0), 1e-14));
    const FarthestPoint from_one = max_radius(one, pair);
    CHECK_THAT(from_one.radius, WithinAbs(std::log(4.0), 1e-14));
    CHECK(from_one.index == 1);

    // Ties resolve to the smallest index.
    const std::vector<PositiveElement> tied{pos_diag(m2, {4.0, 1.0}), pos_diag(m2, {1.0, 4.0})};
    CHECK(max_radius(one, tied).index == 0);
    CHECK_THROWS_AS(max_radius(one, std::vector<PositiveElement>{}), Error);
}

TEST_CASE("circumcenter of one and two points", "[circumcenter]") {
    Rng rng(1);
    const auto alg = BlockAlgebra::make({2, 3}, {0.4, 0.6});
    const PositiveElement a = random_positive(alg, rng, 1e-2, 1e2);
    const std::vector<PositiveElement> single{a};
    const EnclosingBall lone = circumcenter(single);
    CHECK(lone.radius == 0.0);
    CHECK(lone.converged);
    CHECK(max_entry_gap(lone.center.element(), a.element()) == 0.0);

    for (int i = 0; i < 20; ++i) {
        const PositiveElement x = random_positive(alg, rng, 1e-2, 1e2);
        const PositiveElement y = random_positive(alg, rng, 1e-2, 1e2);
        const std::vector<PositiveElement> pair{x, y};
        const EnclosingBall ball = circumcenter(pair);
        CHECK(ball.converged);
        CHECK_THAT(ball.radius, WithinAbs(distance(x, y) / 2, 1e-8));
        CHECK(distance(ball.center, midpoint(x, y)) <= 1e-7);
    }
    CHECK_THROWS_AS(circumcenter(std::vector<PositiveElement>{}), Error);
}

TEST_CASE("symmetric three-point set", "[circumcenter]") {
    const auto m2 = BlockAlgebra::matrices(2);
    const std::vector<PositiveElement> points{PositiveElement::identity(m2), pos_diag(m2, {4.0, 0.25}),
                                              pos_diag(m2, {0.25, 4.0})};
    const EnclosingBall ball = circumcenter(points);
    REQUIRE(ball.converged);

    // In log coordinates the points are (0,0), (L,-L), (-L,L): collinear, so
    // the ball is the diametral one of the outer pair and the center is 1.
    const double L = std::log(4.0);
    const testing::LogBall exact = testing::enumerate_min_ball({{0, 0}, {L, -L}, {-L, L}});
    const testing::LogBall grid = testing::grid_search_min_ball({{0, 0}, {L, -L}, {-L, L}}, L, 1e-3);
    CHECK_THAT(ball.radius, WithinAbs(exact.radius, 1e-8));
    CHECK_THAT(ball.radius, WithinAbs(grid.radius, 1e-3));
    CHECK(distance(ball.center, PositiveElement::identity(m2)) <= 1e-7);
    CHECK_THAT(ball.radius, WithinAbs(distance(ball.center, points[1]), 1e-9));

    const Spectrum spectrum = hermitian_eig(ball.center.element());
    CHECK_THAT(spectrum[0].values(0) * spectrum[0].values(1), WithinAbs(1.0, 1e-7));
}

TEST_CASE("commuting diagonal sets match the enumeration oracle", "[circumcenter][property]") {
    Rng rng(9);
    const auto m2 = BlockAlgebra::matrices(2);
    std::uniform_real_distribution<double> coord(-std::log(4.0), std::log(4.0));
    for (int trial = 0; trial < 25; ++trial) {
        const int count = 2 + trial % 3;
        std::vector<testing::LogPoint> logs;
        std::vector<PositiveElement> points;
        for (int i = 0; i < count; ++i) {
            logs.push_back({coord(rng), coord(rng)});
            points.push_back(pos_diag(m2, {std::exp(logs.back().u), std::exp(logs.back().v)}));
        }
        const testing::LogBall oracle = testing::enumerate_min_ball(logs);
        const EnclosingBall ball = circumcenter(points);
        CHECK(ball.converged);
        CHECK_THAT(ball.radius, WithinAbs(oracle.radius, 1e-7));
        const PositiveElement center = pos_diag(m2, {std::exp(oracle.center.u), std::exp(oracle.center.v)});
        CHECK(distance(ball.center, center) <= 1e-6);
    }
}

TEST_CASE("circumcenter properties on random sets", "[circumcenter][property]") {
    Rng rng(31);
    const auto alg = BlockAlgebra::make({2, 2}, {0.25, 0.75});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<PositiveElement> points;
        for (int i = 0; i < 5; ++i) points.push_back(random_positive(alg, rng, 1e-2, 1e2));
        const EnclosingBall ball = circumcenter(points);
        CHECK(ball.converged);
        CHECK_THAT(ball.radius, WithinAbs(max_radius(ball.center, points).radius, 1e-9));
        for (std::size_t i = 1; i < ball.radius_history.size(); ++i) {
            CHECK(ball.radius_history[i] <= ball.radius_history[i - 1] + 1e-7);
        }
        CHECK(in_band(ball.center, Band(1e-2, 1e2)));

        // No nearby candidate does better.
        for (int k = 0; k < 20; ++k) {
            AlgebraElement direction = random_hermitian(alg, rng);
            direction = Complex(0.05 / norm2(direction)) * direction;
            const AlgebraElement root = sqrt(ball.center);
            const PositiveElement z = positivize(root * exp_hermitian(direction) * root);
            CHECK(max_radius(z, points).radius >= ball.radius - 1e-8);
        }

        const AlgebraElement g = random_invertible(alg, rng, 10.0);
        std::vector<PositiveElement> moved;
        for (const auto& p : points) moved.push_back(congruence(g, p));
        const EnclosingBall moved_ball = circumcenter(moved);
        CHECK(distance(moved_ball.center, congruence(g, ball.center)) <= 1e-7);
        CHECK_THAT(moved_ball.radius, WithinAbs(ball.radius, 1e-8));
    }
}

TEST_CASE("plain farthest-point iteration is available without refinement", "[circumcenter]") {
    const auto m2 = BlockAlgebra::matrices(2);
    const std::vector<PositiveElement> pair{PositiveElement::identity(m2), pos_diag(m2, {4.0, 0.25})};
    CircumcenterOptions options;
    options.refine = false;
    options.max_iter = 2000;
    const EnclosingBall ball = circumcenter(pair, options);
    CHECK(ball.iterations > 0);
    CHECK_THAT(ball.radius, WithinAbs(std::log(2.0), 1e-2));
}

TEST_CASE("karcher mean examples", "[circumcenter][karcher]") {
    Rng rng(14);
    const auto m2 = BlockAlgebra::matrices(2);
    const PositiveElement a = random_positive(m2, rng, 0.1, 10.0);
    const std::vector<PositiveElement> single{a};
    const KarcherMean lone = karcher_mean(single);
    CHECK(lone.converged);
    CHECK(distance(lone.mean, a) <= 1e-12);

    const std::vector<PositiveElement> diag{PositiveElement::identity(m2), pos_diag(m2, {4.0, 0.25})};
    const KarcherMean mean = karcher_mean(diag);
    CHECK(mean.converged);
    CHECK(max_entry_gap(mean.mean.element(), AlgebraElement::diagonal(m2, {2.0, 0.5})) < 1e-8);

    const auto alg = BlockAlgebra::make({2, 3}, {0.4, 0.6});
    for (int i = 0; i < 10; ++i) {
        const PositiveElement x = random_positive(alg, rng, 1e-2, 1e2);
        const PositiveElement y = random_positive(alg, rng, 1e-2, 1e2);
        const std::vector<PositiveElement> pair{x, y};
        const KarcherMean m = karcher_mean(pair);
        CHECK(m.converged);
        CHECK(distance(m.mean, midpoint(x, y)) <= 1e-7);
    }
}

TEST_CASE("karcher mean of commuting points is the entrywise geometric mean", "[circumcenter][karcher]") {
    const auto split = BlockAlgebra::make({1, 1, 1}, {0.2, 0.3, 0.5});
    const std::vector<PositiveElement> points{pos_diag(split, {1.0, 2.0, 8.0}), pos_diag(split, {3.0, 0.5, 1.0}),
                                              pos_diag(split, {9.0, 4.0, 0.125})};
    const KarcherMean mean = karcher_mean(points);
    REQUIRE(mean.converged);
    CHECK(max_entry_gap(mean.mean.element(), AlgebraElement::diagonal(split, {3.0, std::cbrt(4.0), 1.0})) < 1e-8);
}
