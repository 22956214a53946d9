#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "smaa/bipolar.hpp"
#include "smaa/linear_forms.hpp"

using namespace smaa;

namespace {

Vector random_x(std::mt19937_64& rng, int n) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = oracle::uniform(rng, -1.0, 1.0);
    return x;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_SUITE("bipolar") {
TEST_CASE("layout dimensions, indexing and names") {
    CHECK(bipolar_dimension(2) == 5);
    CHECK(bipolar_dimension(3) == 12);
    CHECK(bipolar_dimension(4) == 22);
    const ParamLayout l = ParamLayout::bipolar(3);
    CHECK(l.dimension() == 12);
    CHECK(l.weight(2) == 2);
    CHECK(l.pair(0, 1) == 3);
    CHECK(l.pair(1, 0) == 3);
    CHECK(l.pair(1, 2) == 5);
    CHECK(l.opp_plus(0, 1) == 6);
    CHECK(l.opp_plus(2, 1) == 11);
    CHECK(l.name(0) == "a_1");
    CHECK(l.name(4) == "a_1,3");
    CHECK(l.name(7) == "a+_1|3");
    std::set<std::size_t> seen;
    for (std::size_t j = 0; j < 3; ++j) {
        seen.insert(l.weight(j));
        for (std::size_t k = 0; k < 3; ++k) {
            if (j == k) continue;
            seen.insert(l.pair(j, k));
            seen.insert(l.opp_plus(j, k));
        }
    }
    CHECK(seen.size() == 12);
    CHECK(ParamLayout::classical(3).names() == std::vector<std::string>{"a_1", "a_2", "a_3"});
    CHECK(ParamLayout::generic(2).name(1) == "x_2");
}

TEST_CASE("disjoint pair enumeration visits n 3^(n-1) pairs") {
    for (std::size_t n : {2u, 3u, 4u}) {
        std::size_t count = 0;
        std::set<std::tuple<std::size_t, unsigned, unsigned>> seen;
        for_each_disjoint_pair(n, [&](std::size_t j, unsigned c, unsigned d) {
            ++count;
            CHECK((c & d) == 0u);
            CHECK(((c | d) & (1u << j)) == 0u);
            seen.insert({j, c, d});
        });
        std::size_t expect = n;
        for (std::size_t i = 1; i < n; ++i) expect *= 3;
        CHECK(count == expect);
        CHECK(seen.size() == expect);
    }
}

TEST_CASE("random valid parameters pass validation; violations are detected") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 4}) {
        const ParamLayout l = ParamLayout::bipolar(n);
        for (int trial = 0; trial < 50; ++trial) {
            const Vector theta = oracle::to_theta(oracle::random_valid(n, rng), l);
            CHECK_NOTHROW(BicapacityParams(l, theta));
        }
    }
    const ParamLayout l = ParamLayout::bipolar(3);
    std::mt19937_64 r2(5);
    Vector theta = oracle::to_theta(oracle::random_valid(3, r2), l);
    Vector bad = theta;
    bad[static_cast<Eigen::Index>(l.opp_plus(0, 1))] = 0.2;
    CHECK(BicapacityParams::find_violation(l, bad, 1e-10).has_value());
    bad = theta;
    bad *= 1.1;
    CHECK(BicapacityParams::find_violation(l, bad, 1e-10).has_value());
    // Monotonicity: a huge negative pair interaction drives a_1 + a_12 below zero.
    bad = Vector::Zero(12);
    bad[0] = 0.5;
    bad[1] = 0.5;
    bad[2] = 0.5;
    bad[static_cast<Eigen::Index>(l.pair(0, 1))] = -0.5;
    bad[static_cast<Eigen::Index>(l.pair(0, 2))] = -0.5;
    bad[static_cast<Eigen::Index>(l.pair(1, 2))] = 0.5;
    CHECK(BicapacityParams::find_violation(l, bad, 1e-10).has_value());
    CHECK_THROWS_AS(BicapacityParams(l, bad), ValidationError);
}

TEST_CASE("closed form equals the level-integral oracle and the definitional form") {
    std::mt19937_64 rng(2024);
    for (int n : {2, 3, 4}) {
        const ParamLayout l = ParamLayout::bipolar(n);
        for (int trial = 0; trial < 200; ++trial) {
            const oracle::RawParams raw = oracle::random_valid(n, rng);
            const BicapacityParams params(l, oracle::to_theta(raw, l));
            const GeneralBicapacity bc = GeneralBicapacity::from_2additive(params);
            Vector x = random_x(rng, n);
            if (trial % 5 == 0) x[0] = 0.0;
            if (trial % 7 == 0 && n > 2) x[1] = -x[2];
            const ChoquetValue closed = choquet_2additive(x, params);
            const ChoquetValue def = choquet_definitional(x, bc);
            const oracle::ChoquetParts levels = oracle::choquet_by_levels(raw, to_std(x));
            CHECK(std::abs(closed.positive - levels.positive) < 1e-10);
            CHECK(std::abs(closed.negative - levels.negative) < 1e-10);
            CHECK(std::abs(closed.total - levels.total()) < 1e-10);
            CHECK(std::abs(closed.total - def.total) < 1e-10);
            CHECK(std::abs(closed.positive - def.positive) < 1e-10);
        }
    }
}

TEST_CASE("decomposition tables agree with the oracle sums") {
    std::mt19937_64 rng(17);
    const oracle::RawParams raw = oracle::random_valid(3, rng);
    const ParamLayout l = ParamLayout::bipolar(3);
    const GeneralBicapacity bc = GeneralBicapacity::from_2additive(BicapacityParams(l, oracle::to_theta(raw, l)));
    CHECK_NOTHROW(bc.validate());
    for (unsigned c = 0; c < 8; ++c) {
        for (unsigned d = 0; d < 8; ++d) {
            if (c & d) continue;
            CHECK(bc.mu_plus(c, d) == doctest::Approx(oracle::mu_plus(raw, c, d)).epsilon(1e-14));
            CHECK(bc.mu_minus(c, d) == doctest::Approx(oracle::mu_minus(raw, c, d)).epsilon(1e-14));
        }
    }
    CHECK(bc.mu_plus(7, 0) == doctest::Approx(1.0));
    CHECK(bc.mu_minus(0, 7) == doctest::Approx(1.0));
}

TEST_CASE("definitional form rejects invalid bicapacities and unsorted orders") {
    Vector plus = Vector::Zero(16);
    Vector minus = Vector::Zero(16);
    const GeneralBicapacity broken(2, plus, minus);
    Vector x(2);
    x << 0.5, -0.25;
    CHECK_THROWS_AS(choquet_definitional(x, broken), ValidationError);
    std::mt19937_64 rng(1);
    const ParamLayout l = ParamLayout::bipolar(2);
    const GeneralBicapacity ok =
        GeneralBicapacity::from_2additive(BicapacityParams(l, oracle::to_theta(oracle::random_valid(2, rng), l)));
    const std::vector<std::size_t> wrong{0, 1};
    CHECK_THROWS_AS(choquet_definitional(x, ok, wrong), ValidationError);
}

TEST_CASE("antisymmetry of the bipolar integral") {
    std::mt19937_64 rng(99);
    for (int n : {2, 3, 4}) {
        const ParamLayout l = ParamLayout::bipolar(n);
        for (int trial = 0; trial < 200; ++trial) {
            const BicapacityParams params(l, oracle::to_theta(oracle::random_valid(n, rng), l));
            const Vector x = random_x(rng, n);
            const ChoquetValue v = choquet_2additive(x, params);
            const ChoquetValue w = choquet_2additive(Vector(-x), params);
            CHECK(std::abs(v.total + w.total) < 1e-10);
            CHECK(std::abs(v.positive - w.negative) < 1e-10);
        }
    }
}

TEST_CASE("linear forms reproduce the closed form and are linear in theta") {
    std::mt19937_64 rng(8);
    const ParamLayout l = ParamLayout::bipolar(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector x = random_x(rng, 3);
        const ChoquetForm form = choquet_linear_form(x, l);
        const Vector t1 = oracle::to_theta(oracle::random_valid(3, rng), l);
        const Vector t2 = oracle::to_theta(oracle::random_valid(3, rng), l);
        const auto v1 = choquet_2additive(x, l, t1);
        CHECK(std::abs(form.positive.dot(t1) - v1.positive) < 1e-12);
        CHECK(std::abs(form.negative.dot(t1) - v1.negative) < 1e-12);
        const Vector mix = 0.3 * t1 + 1.7 * t2;
        const auto v2 = choquet_2additive(x, l, t2);
        const auto vm = choquet_2additive(x, l, mix);
        CHECK(std::abs(vm.total - (0.3 * v1.total + 1.7 * v2.total)) < 1e-12);
    }
}

TEST_CASE("bipolar flows match the brute-force oracle over all ordered pairs") {
    const PerformanceTable t = oracle::students();
    const ParamLayout l = ParamLayout::bipolar(3);
    const FlowOperator op = make_flow_operator(t, l);
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::RawParams raw = oracle::random_valid(3, rng);
        const BicapacityParams params(l, oracle::to_theta(raw, l));
        const Flows f = bipolar_flows(t, params);
        const Flows g = op.evaluate(params.values());
        const auto brute = oracle::bipolar_flows(t, raw);
        for (Eigen::Index a = 0; a < 8; ++a) {
            CHECK(std::abs(f.positive[a] - brute.positive[a]) < 1e-12);
            CHECK(std::abs(f.negative[a] - brute.negative[a]) < 1e-12);
            CHECK(std::abs(f.net[a] - brute.net[a]) < 1e-12);
            CHECK(std::abs(g.net[a] - brute.net[a]) < 1e-12);
        }
        CHECK(std::abs(f.net.sum()) < 1e-9);
        CHECK((f.net - (f.positive - f.negative)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("zero interactions reduce bipolar flows to classical flows") {
    const PerformanceTable t = oracle::students();
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const oracle::RawParams raw = oracle::random_valid(3, rng, true);
        const WeightVector w(Eigen::Map<const Vector>(raw.a.data(), 3));
        const Flows b = bipolar_flows(t, BicapacityParams::from_weights(w));
        const Flows c = classical_flows(t, w);
        CHECK((b.net - c.net).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((b.positive - c.positive).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("bipolar preference vector takes the signed side") {
    const PerformanceTable t = oracle::students();
    const Vector x = bipolar_preference_vector(t, 6, 1);  // s7 vs s2
    CHECK(x[0] == 1.0);
    CHECK(x[1] == 1.0);
    CHECK(x[2] == -1.0);
    const Vector y = bipolar_preference_vector(t, 1, 6);
    CHECK(y == -x);
    const Vector z = bipolar_preference_vector(t, 1, 4);  // s2 vs s5, M tied
    CHECK(z[0] == 0.0);
}

TEST_CASE("parameter JSON round trip") {
    std::mt19937_64 rng(21);
    const ParamLayout l = ParamLayout::bipolar(3);
    const BicapacityParams p(l, oracle::to_theta(oracle::random_valid(3, rng), l));
    const BicapacityParams back = params_from_json_text(params_to_json_text(p));
    CHECK(back.layout() == l);
    CHECK((back.values() - p.values()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_NOTHROW(params_from_json_text("{\"a\": [1]}"));
    CHECK_THROWS_AS(params_from_json_text("{\"a\": [0.5]}"), ValidationError);
    CHECK_THROWS_AS(params_from_json_text("{\"a\": [0.5, 0.5], \"a_pair\": {\"1,3\": 0}}"), ValidationError);
    CHECK_THROWS_AS(params_from_json_text("{\"a\": [0.5, 0.5], \"a_opp_plus\": {\"1|2\": 0.1}}"), ValidationError);
}
}
