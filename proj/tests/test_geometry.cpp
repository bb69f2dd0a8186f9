#include <catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"
#include "tracecone/geometry.hpp"
#include "tracecone/random.hpp"

using namespace tracecone;
using Catch::Matchers::WithinAbs;
using support::max_entry_gap;
using support::pos_diag;

namespace {

const double e2 = std::exp(2.0);

}  // namespace

TEST_CASE("distance examples", "[geometry]") {
    const auto scalar = BlockAlgebra::matrices(1);
    const auto m2 = BlockAlgebra::matrices(2);
    const PositiveElement a = pos_diag(m2, {3.0, 0.7});
    CHECK(distance(a, a) <= 1e-14);
    CHECK_THAT(distance(pos_diag(scalar, {1.0}), pos_diag(scalar, {e2})), WithinAbs(2.0, 1e-14));
    CHECK_THAT(distance(PositiveElement::identity(m2), pos_diag(m2, {e2, 1.0 / e2})), WithinAbs(2.0, 1e-14));
}

TEST_CASE("geodesic examples", "[geometry]") {
    const auto scalar = BlockAlgebra::matrices(1);
    const auto m2 = BlockAlgebra::matrices(2);
    const PositiveElement one = PositiveElement::identity(m2);
    const PositiveElement b = pos_diag(m2, {4.0, 0.25});

    const GeodesicSegment from_one(one, b);
    CHECK(max_entry_gap(from_one(0.5).element(), AlgebraElement::diagonal(m2, {2.0, 0.5})) < 1e-14);
    CHECK(max_entry_gap(from_one(0.3).element(), spectral_map(b, SpectralFunction::power(0.3))) < 1e-14);
    CHECK(max_entry_gap(from_one(0.0).element(), one.element()) < 1e-14);
    CHECK(max_entry_gap(from_one(1.0).element(), b.element()) < 1e-14);

    const PositiveElement s = geodesic_eval(GeodesicSegment(pos_diag(scalar, {1.0}), pos_diag(scalar, {e2})), 0.3);
    CHECK_THAT(s.element().block(0)(0, 0).real(), WithinAbs(std::exp(0.6), 1e-14));
    CHECK_THAT(from_one.length(), WithinAbs(distance(one, b), 1e-14));
}

TEST_CASE("geodesic extrapolation leaves the segment but stays positive", "[geometry]") {
    const auto m2 = BlockAlgebra::matrices(2);
    const GeodesicSegment seg(PositiveElement::identity(m2), pos_diag(m2, {4.0, 0.25}));
    CHECK(max_entry_gap(seg(2.0).element(), AlgebraElement::diagonal(m2, {16.0, 1.0 / 16})) < 1e-12);
    CHECK(max_entry_gap(seg(-1.0).element(), AlgebraElement::diagonal(m2, {0.25, 4.0})) < 1e-13);
}

TEST_CASE("midpoint examples", "[geometry]") {
    const auto scalar = BlockAlgebra::matrices(1);
    const auto m2 = BlockAlgebra::matrices(2);
    const PositiveElement a = pos_diag(m2, {3.0, 0.7});
    CHECK(max_entry_gap(midpoint(a, a).element(), a.element()) < 1e-14);
    CHECK(max_entry_gap(midpoint(PositiveElement::identity(m2), pos_diag(m2, {4.0, 0.25})).element(),
                        AlgebraElement::diagonal(m2, {2.0, 0.5})) < 1e-14);
    CHECK_THAT(midpoint(pos_diag(scalar, {1.0}), pos_diag(scalar, {4.0})).element().block(0)(0, 0).real(),
               WithinAbs(2.0, 1e-14));
}

TEST_CASE("congruence examples", "[geometry]") {
    const auto m2 = BlockAlgebra::matrices(2);
    Rng rng(2);
    const PositiveElement a = random_positive(m2, rng, 0.1, 10.0);
    const PositiveElement one = PositiveElement::identity(m2);
    CHECK(max_entry_gap(congruence(AlgebraElement::identity(m2), a).element(), a.element()) < 1e-14);
    CHECK(max_entry_gap(congruence(AlgebraElement::diagonal(m2, {2.0, 1.0}), one).element(),
                        AlgebraElement::diagonal(m2, {4.0, 1.0})) < 1e-14);
    CHECK(max_entry_gap(congruence(random_unitary(m2, rng), one).element(), one.element()) < 1e-14);
    CHECK_THROWS_AS(congruence(AlgebraElement::diagonal(m2, {1.0, 0.0}), one), Error);
}

TEST_CASE("congruence is an isometry that moves geodesics to geodesics", "[geometry][property]") {
    Rng rng(21);
    for (const auto& alg : {BlockAlgebra::matrices(3), BlockAlgebra::make({2, 3}, {0.4, 0.6})}) {
        for (int i = 0; i < 25; ++i) {
            const PositiveElement a = random_positive(alg, rng, 1e-2, 1e2);
            const PositiveElement b = random_positive(alg, rng, 1e-2, 1e2);
            const AlgebraElement g = random_invertible(alg, rng, 100.0);
            const double d = distance(a, b);
            CHECK(std::abs(distance(congruence(g, a), congruence(g, b)) - d) <= 1e-8 * (1.0 + d));
            const PositiveElement lhs = GeodesicSegment(congruence(g, a), congruence(g, b))(0.4);
            const PositiveElement rhs = congruence(g, GeodesicSegment(a, b)(0.4));
            CHECK(uniform_norm(lhs.element() - rhs.element()) <= 1e-8 * (1.0 + uniform_norm(rhs.element())));
        }
    }
}

TEST_CASE("geodesics have constant speed", "[geometry][property]") {
    Rng rng(8);
    const auto alg = BlockAlgebra::make({2, 2}, {0.3, 0.7});
    for (int i = 0; i < 20; ++i) {
        const PositiveElement a = random_positive(alg, rng, 1e-2, 1e2);
        const PositiveElement b = random_positive(alg, rng, 1e-2, 1e2);
        const GeodesicSegment seg(a, b);
        const double d = distance(a, b);
        for (double s : {0.1, 0.35, 0.8}) {
            for (double t : {0.0, 0.5, 1.0}) {
                CHECK_THAT(distance(seg(s), seg(t)), WithinAbs(std::abs(s - t) * d, 1e-8 * (1.0 + d)));
            }
        }
    }
}

TEST_CASE("band membership", "[geometry]") {
    const auto m2 = BlockAlgebra::matrices(2);
    const Band band(0.5, 2.0);
    CHECK(in_band(PositiveElement::identity(m2), band));
    CHECK_FALSE(in_band(pos_diag(m2, {4.0, 0.25}), band));
    CHECK(in_band(pos_diag(m2, {2.0, 0.5}), band));
    CHECK_THAT(band.diameter(), WithinAbs(std::log(4.0), 1e-15));
    CHECK_THROWS_AS(Band(2.0, 1.0), Error);
    CHECK_THROWS_AS(Band(0.0, 1.0), Error);
    CHECK_NOTHROW(Band(1.0, 1.0));
}

TEST_CASE("band diameter bounds distances inside the band", "[geometry][property]") {
    Rng rng(4);
    const Band band(0.25, 4.0);
    const auto alg = BlockAlgebra::make({2, 3}, {0.4, 0.6});
    for (int i = 0; i < 100; ++i) {
        const PositiveElement a = random_positive(alg, rng, band.c1, band.c2);
        const PositiveElement b = random_positive(alg, rng, band.c1, band.c2);
        CHECK(distance(a, b) <= band.diameter() + 1e-8);
    }
    // The extreme corners attain the diameter in a single block.
    const auto m2 = BlockAlgebra::matrices(2);
    CHECK_THAT(distance(pos_diag(m2, {0.25, 0.25}), pos_diag(m2, {4.0, 4.0})), WithinAbs(band.diameter(), 1e-14));
}

TEST_CASE("hull expansion examples", "[geometry][hull]") {
    const auto m2 = BlockAlgebra::matrices(2);
    const PositiveElement one = PositiveElement::identity(m2);
    const PositiveElement b = pos_diag(m2, {4.0, 0.25});

    const std::vector<PositiveElement> single{b};
    const HullApproximation lone = hull_expand(single, 4);
    CHECK(lone.generations.size() == 4);
    CHECK(lone.last().size() == 1);

    const std::vector<PositiveElement> pair{one, b};
    const HullApproximation two = hull_expand(pair, 2, 3);
    REQUIRE(two.last().size() == 3);
    const auto target = AlgebraElement::diagonal(m2, {2.0, 0.5});
    bool found = false;
    for (const auto& p : two.last()) found = found || max_entry_gap(p.element(), target) < 1e-12;
    CHECK(found);

    // Duplicated inputs collapse.
    const std::vector<PositiveElement> repeated{one, one, b};
    CHECK(hull_expand(repeated, 1).last().size() == 2);
    CHECK_THROWS_AS(hull_expand(std::vector<PositiveElement>{}, 2), Error);
    CHECK_THROWS_AS(hull_expand(pair, 0), Error);
}

TEST_CASE("hull generations stay in the band of their inputs", "[geometry][hull][property]") {
    Rng rng(13);
    const Band band(0.25, 4.0);
    const auto alg = BlockAlgebra::make({2, 2}, {0.5, 0.5});
    std::vector<PositiveElement> points;
    for (int i = 0; i < 4; ++i) points.push_back(random_positive(alg, rng, band.c1, band.c2));
    const HullApproximation hull = hull_expand(points, 3, 4);
    for (std::size_t n = 0; n < hull.generations.size(); ++n) {
        if (n > 0) CHECK(hull.generations[n].size() >= hull.generations[n - 1].size());
        for (const auto& p : hull.generations[n]) CHECK(in_band(p, band));
    }
}

TEST_CASE("hull cap subsamples or fails on request", "[geometry][hull]") {
    Rng rng(6);
    const auto m2 = BlockAlgebra::matrices(2);
    std::vector<PositiveElement> points;
    for (int i = 0; i < 10; ++i) points.push_back(random_positive(m2, rng, 0.5, 2.0));

    HullOptions options;
    options.max_points = 30;
    const HullApproximation capped = hull_expand(points, 3, 3, options);
    CHECK(capped.subsampled);
    for (const auto& generation : capped.generations) CHECK(generation.size() <= 30);
    // Same seed, same subsample.
    const HullApproximation again = hull_expand(points, 3, 3, options);
    REQUIRE(again.last().size() == capped.last().size());
    for (std::size_t i = 0; i < again.last().size(); ++i) {
        CHECK(max_entry_gap(again.last()[i].element(), capped.last()[i].element()) == 0.0);
    }

    options.fail_on_cap = true;
    try {
        hull_expand(points, 2, 3, options);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::budget_exceeded);
    }
}
