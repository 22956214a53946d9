#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smaa/promethee.hpp"

using namespace smaa;

namespace {

std::vector<double> random_simplex(std::mt19937_64& rng, int n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(n);
    double s = 0;
    for (auto& v : w) s += v = e(rng);
    for (auto& v : w) v /= s;
    return w;
}

Vector as_vector(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

TEST_SUITE("promethee") {
TEST_CASE("preference degree shapes") {
    CHECK(preference_degree(0.0, 0.0, 0.0) == 0.0);
    CHECK(preference_degree(1e-12, 0.0, 0.0) == 1.0);
    CHECK(preference_degree(-3.0, 0.0, 0.0) == 0.0);
    CHECK(preference_degree(1.0, 1.0, 1.0) == 0.0);
    CHECK(preference_degree(1.5, 1.0, 1.0) == 1.0);
    CHECK(preference_degree(2.0, 1.0, 3.0) == doctest::Approx(0.5));
    CHECK(preference_degree(3.0, 1.0, 3.0) == 1.0);
    CHECK(preference_degree(0.5, 1.0, 3.0) == 0.0);
}

TEST_CASE("weight vectors must be a probability vector") {
    CHECK_NOTHROW(WeightVector(Vector::Constant(4, 0.25)));
    CHECK_THROWS_AS(WeightVector(Vector::Constant(3, 0.5)), ValidationError);
    Vector neg(2);
    neg << 1.5, -0.5;
    CHECK_THROWS_AS(WeightVector{neg}, ValidationError);
}

TEST_CASE("hand-computed three-alternative example") {
    // a = (1,0), b = (0,1), c = (0,0), equal weights, usual criterion.
    Matrix e(3, 2);
    e << 1, 0, 0, 1, 0, 0;
    const PerformanceTable t({{"x"}, {"y"}}, {"a", "b", "c"}, e);
    const Flows f = classical_flows(t, WeightVector(Vector::Constant(2, 0.5)));
    CHECK(f.positive[0] == doctest::Approx(0.5));
    CHECK(f.negative[0] == doctest::Approx(0.25));
    CHECK(f.net[0] == doctest::Approx(0.25));
    CHECK(f.net[1] == doctest::Approx(0.25));
    CHECK(f.net[2] == doctest::Approx(-0.5));
    const RelationMatrix p1 = promethee1_relation(f);
    CHECK(p1.at(0, 1) == Outranking::indifferent);
    CHECK(p1.at(0, 2) == Outranking::preferred);
    CHECK(p1.at(2, 0) == Outranking::preferred_inverse);
    CHECK(p1.at(1, 1) == Outranking::self);
    CHECK(promethee2_ranks(f.net) == std::vector<int>{1, 1, 3});
}

TEST_CASE("classical flows match the brute-force double loop") {
    const PerformanceTable t = oracle::students();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto w = random_simplex(rng, 3);
        const Flows f = classical_flows(t, WeightVector(as_vector(w)));
        const auto brute = oracle::classical_flows(t, w);
        for (Eigen::Index a = 0; a < 8; ++a) {
            CHECK(std::abs(f.positive[a] - brute.positive[a]) < 1e-12);
            CHECK(std::abs(f.negative[a] - brute.negative[a]) < 1e-12);
            CHECK(std::abs(f.net[a] - brute.net[a]) < 1e-12);
        }
        CHECK(std::abs(f.net.sum()) < 1e-9);
        CHECK((f.net - (f.positive - f.negative)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("linear thresholds and minimized criteria agree with the oracle") {
    Matrix e(4, 3);
    e << 1, 10, 3, 2, 7, 3.5, 4, 8, 1, 3, 9, 2;
    const PerformanceTable t({{"g1", Direction::maximize, 0.5, 2.0},
                              {"cost", Direction::minimize, 0.0, 2.5},
                              {"g3", Direction::maximize, 1.0, 1.0}},
                             {"a", "b", "c", "d"}, e);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto w = random_simplex(rng, 3);
        const Flows f = classical_flows(t, WeightVector(as_vector(w)));
        const auto brute = oracle::classical_flows(t, w);
        for (Eigen::Index a = 0; a < 4; ++a) CHECK(std::abs(f.net[a] - brute.net[a]) < 1e-12);
    }
}

TEST_CASE("aggregated preference is a convex combination of degrees") {
    const PerformanceTable t = oracle::students();
    const PreferenceDegrees deg(t);
    Vector w(3);
    w << 0.2, 0.3, 0.5;
    const Matrix pi = aggregated_preference_matrix(deg, WeightVector(w));
    for (std::size_t a = 0; a < 8; ++a) {
        CHECK(pi(a, a) == 0.0);
        for (std::size_t b = 0; b < 8; ++b) {
            if (a == b) continue;
            double expect = 0;
            for (std::size_t j = 0; j < 3; ++j) expect += w[j] * oracle::degree(t, j, a, b);
            CHECK(pi(a, b) == doctest::Approx(expect).epsilon(1e-14));
            CHECK(aggregated_preference(t, WeightVector(w), a, b) == doctest::Approx(expect).epsilon(1e-14));
        }
    }
}

TEST_CASE("partial comparison covers every outcome") {
    CHECK(compare_partial(0.5, 0.2, 0.5, 0.2) == Outranking::indifferent);
    CHECK(compare_partial(0.6, 0.2, 0.5, 0.2) == Outranking::preferred);
    CHECK(compare_partial(0.5, 0.1, 0.5, 0.2) == Outranking::preferred);
    CHECK(compare_partial(0.5, 0.3, 0.5, 0.2) == Outranking::preferred_inverse);
    CHECK(compare_partial(0.6, 0.3, 0.5, 0.2) == Outranking::incomparable);
    CHECK(compare_partial(0.5 + 1e-12, 0.2, 0.5, 0.2) == Outranking::indifferent);
    CHECK(compare_complete(0.1, 0.1 + 1e-12) == Outranking::indifferent);
    CHECK(compare_complete(0.2, 0.1) == Outranking::preferred);
    CHECK(compare_complete(0.1, 0.2) == Outranking::preferred_inverse);
}

TEST_CASE("ranks count strictly better alternatives") {
    Vector net(5);
    net << 0.3, -0.1, 0.3, 0.0, -0.5;
    CHECK(promethee2_ranks(net) == std::vector<int>{1, 4, 1, 3, 5});
    const Flows f{net, Vector::Zero(5), net};
    const RelationMatrix r = promethee2_relation(f);
    CHECK(r.at(0, 2) == Outranking::indifferent);
    CHECK(r.at(3, 1) == Outranking::preferred);
    CHECK(r.at(1, 3) == Outranking::preferred_inverse);
}

TEST_CASE("flows_from_pairwise scales by m - 1") {
    Matrix pi(3, 3);
    pi << 0, 1, 0.5, 0, 0, 1, 0.5, 0, 0;
    const Flows f = flows_from_pairwise(pi);
    CHECK(f.positive[0] == doctest::Approx(0.75));
    CHECK(f.negative[0] == doctest::Approx(0.25));
    CHECK(f.net.sum() == doctest::Approx(0.0));
}
}
