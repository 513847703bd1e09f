#include "esplab/hausdorff.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace esplab;

namespace {

state_ensemble random_set(rng_stream& rng, std::size_t count, std::size_t dim) {
    std::vector<double> pts(count * dim);
    rng.fill_uniform(pts, -1.0, 1.0);
    return state_ensemble(dim, std::move(pts));
}

} // namespace

TEST_CASE("two-singleton and subset trivia") {
    const state_ensemble a(2, {0.0, 0.0});
    const state_ensemble b(2, {0.6, 0.8});
    CHECK(hausdorff_distance(a, b, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hausdorff_distance(a, a, 2.0) == 0.0);

    const state_ensemble c(1, {0.0, 1.0});
    const state_ensemble d(1, std::vector<double>{0.0});
    CHECK(directed_distance(d, c, 2.0) == 0.0);
    CHECK(directed_distance(c, d, 2.0) == 1.0);
    CHECK(hausdorff_distance(c, d, 2.0) == 1.0);
}

TEST_CASE("dimension mismatch is rejected") {
    const state_ensemble a(2, {0.0, 0.0});
    const state_ensemble b(3, {0.0, 0.0, 0.0});
    CHECK_THROWS_AS(hausdorff_distance(a, b, 2.0), esplab::dimension_error);
}

TEST_CASE("distance matrix holds all pairwise distances") {
    const state_ensemble a(1, {0.0, 0.5});
    const state_ensemble b(1, {-1.0, 0.25, 1.0});
    const matrix d = distance_matrix(a, b, 1.0);
    REQUIRE(d.rows() == 2);
    REQUIRE(d.cols() == 3);
    CHECK(d(0, 0) == 1.0);
    CHECK(d(0, 1) == 0.25);
    CHECK(d(1, 2) == 0.5);
}

TEST_CASE("oracle equivalence: pruned scan equals the naive double loop exactly") {
    rng_stream rng(31, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t dim = 1 + rng.next_below(6);
        const auto s1 = random_set(rng, 1 + rng.next_below(40), dim);
        const auto s2 = random_set(rng, 1 + rng.next_below(40), dim);
        for (double p : {1.0, 2.0, inf_norm}) {
            CHECK(directed_distance(s1, s2, p) == oracle::naive_directed(s1, s2, p));
            CHECK(hausdorff_distance(s1, s2, p) == oracle::naive_hausdorff(s1, s2, p));
        }
    }
}

TEST_CASE("metric axioms over random triples") {
    rng_stream rng(32, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t dim = 1 + rng.next_below(4);
        const auto a = random_set(rng, 1 + rng.next_below(12), dim);
        const auto b = random_set(rng, 1 + rng.next_below(12), dim);
        const auto c = random_set(rng, 1 + rng.next_below(12), dim);
        const double ab = hausdorff_distance(a, b, 2.0);
        const double ba = hausdorff_distance(b, a, 2.0);
        const double ac = hausdorff_distance(a, c, 2.0);
        const double bc = hausdorff_distance(b, c, 2.0);
        REQUIRE(ab == ba);
        REQUIRE(ab >= 0.0);
        REQUIRE(ac <= ab + bc + 1e-12);
        REQUIRE(hausdorff_distance(a, a, 2.0) == 0.0);
    }
}

TEST_CASE("identity of indiscernibles for equal point sets") {
    rng_stream rng(33, 0);
    const auto a = random_set(rng, 20, 3);
    // same point set, different order
    std::vector<double> rev;
    for (std::size_t i = a.count(); i-- > 0;)
        rev.insert(rev.end(), a.point(i).begin(), a.point(i).end());
    const state_ensemble b(3, std::move(rev));
    CHECK(hausdorff_distance(a, b, 2.0) == 0.0);

    // perturbing one point makes it strictly positive
    std::vector<double> bumped(a.flat().begin(), a.flat().end());
    bumped[0] = bumped[0] > 0.0 ? bumped[0] - 0.5 : bumped[0] + 0.5;
    const state_ensemble c(3, std::move(bumped));
    CHECK(hausdorff_distance(a, c, 2.0) > 0.0);
}

TEST_CASE("monotone inclusion: subsets have zero directed distance") {
    rng_stream rng(34, 0);
    const auto b = random_set(rng, 30, 2);
    std::vector<double> sub(b.flat().begin(), b.flat().begin() + 10 * 2);
    const state_ensemble a(2, std::move(sub));
    CHECK(directed_distance(a, b, 2.0) == 0.0);
    CHECK(hausdorff_distance(a, b, 2.0) == directed_distance(b, a, 2.0));
}

TEST_CASE("translation invariance within floating slack") {
    rng_stream rng(35, 0);
    auto shift_set = [](const state_ensemble& s, double dx, double dy) {
        std::vector<double> pts(s.flat().begin(), s.flat().end());
        for (std::size_t i = 0; i < pts.size(); i += 2) {
            pts[i] = pts[i] * 0.5 + dx;
            pts[i + 1] = pts[i + 1] * 0.5 + dy;
        }
        return state_ensemble(2, std::move(pts));
    };
    for (int rep = 0; rep < 100; ++rep) {
        const auto raw_a = random_set(rng, 14, 2);
        const auto raw_b = random_set(rng, 9, 2);
        const auto a0 = shift_set(raw_a, 0.0, 0.0), b0 = shift_set(raw_b, 0.0, 0.0);
        const auto a1 = shift_set(raw_a, 0.25, -0.125), b1 = shift_set(raw_b, 0.25, -0.125);
        CHECK(std::fabs(hausdorff_distance(a0, b0, 2.0) -
                        hausdorff_distance(a1, b1, 2.0)) <= 1e-12);
    }
}

TEST_CASE("1-D sorted path agrees with the naive loop on large sets") {
    rng_stream rng(36, 0);
    const auto s1 = random_set(rng, 500, 1);
    const auto s2 = random_set(rng, 700, 1);
    for (double p : {1.0, 2.0, inf_norm})
        CHECK(directed_distance(s1, s2, p) == oracle::naive_directed(s1, s2, p));
}
