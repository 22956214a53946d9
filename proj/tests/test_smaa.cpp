#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smaa/smaa.hpp"

using namespace smaa;

namespace {

ConstraintSystem scenario1(const PerformanceTable& t, bool classical) {
    const ConstraintSystem s =
        compile(parse_statements(read_text_file(std::string(SMAA_DATA_DIR) + "/scenario1.jsonl"), t), t);
    return classical ? restrict_classical(s) : s;
}

SampleBatch draw(const ConstraintSystem& sys, std::size_t n, std::uint64_t seed) {
    SamplerConfig cfg;
    cfg.sample_count = n;
    cfg.seed = seed;
    return sample_compatible(sys, cfg);
}

PerformanceTable two_by_two(double a1, double a2, double b1, double b2) {
    Matrix e(2, 2);
    e << a1, a2, b1, b2;
    return PerformanceTable({{"x"}, {"y"}}, {"a", "b"}, e);
}

}  // namespace

TEST_SUITE("smaa") {
TEST_CASE("dominance fixes every ranking") {
    const PerformanceTable t = two_by_two(2, 2, 1, 1);
    for (bool classical : {true, false}) {
        const ConstraintSystem sys = classical ? restrict_classical(compile({}, t)) : compile({}, t);
        const SmaaResults r =
            aggregate(t, draw(sys, 2000, 1), classical ? FlowMode::classical : FlowMode::bipolar);
        CHECK(r.rank_counts(0, 0) == 2000);
        CHECK(r.rank_counts(1, 1) == 2000);
        CHECK(r.p2_pref_counts(0, 1) == 2000);
        CHECK(r.p1_pref_counts(0, 1) == 2000);
        CHECK(r.ror_necessary_approx(0, 1));
        CHECK(!r.ror_possible_approx(1, 0));
        CHECK(r.central_weights[0].has_value());
        CHECK(!r.central_weights[1].has_value());
    }
}

TEST_CASE("identical alternatives share the first rank") {
    const PerformanceTable t = two_by_two(1, 3, 1, 3);
    const SmaaResults r = aggregate(t, draw(restrict_classical(compile({}, t)), 1000, 2), FlowMode::classical);
    CHECK(r.p2_indiff_counts(0, 1) == 1000);
    CHECK(r.p1_indiff_counts(0, 1) == 1000);
    CHECK(r.rank_counts(0, 0) == 1000);
    CHECK(r.rank_counts(1, 0) == 1000);
    CHECK(r.ror_necessary_approx(0, 1));
    CHECK(r.ror_necessary_approx(1, 0));
    CHECK(r.ror_possible_approx(0, 1));
    CHECK(check_count_invariants(r).empty());
}

TEST_CASE("counts match a brute-force recount") {
    const PerformanceTable t = oracle::students();
    const ConstraintSystem sys = scenario1(t, false);
    const SampleBatch b = draw(sys, 300, 6);
    const SmaaResults r = aggregate(t, b, FlowMode::bipolar);
    const ParamLayout l = ParamLayout::bipolar(3);
    CountMatrix rank = CountMatrix::Zero(8, 8), p1 = CountMatrix::Zero(8, 8), p1i = CountMatrix::Zero(8, 8),
                p2 = CountMatrix::Zero(8, 8);
    for (Eigen::Index s = 0; s < b.size(); ++s) {
        oracle::RawParams raw;
        raw.n = 3;
        raw.a.assign(3, 0);
        raw.pair.assign(3, std::vector<double>(3, 0));
        raw.plus.assign(3, std::vector<double>(3, 0));
        for (std::size_t j = 0; j < 3; ++j) {
            raw.a[j] = b.samples(s, static_cast<Eigen::Index>(l.weight(j)));
            for (std::size_t k = 0; k < 3; ++k) {
                if (j == k) continue;
                raw.pair[j][k] = b.samples(s, static_cast<Eigen::Index>(l.pair(j, k)));
                raw.plus[j][k] = b.samples(s, static_cast<Eigen::Index>(l.opp_plus(j, k)));
            }
        }
        const auto f = oracle::bipolar_flows(t, raw);
        for (int i = 0; i < 8; ++i) {
            int better = 0;
            for (int k = 0; k < 8; ++k) better += f.net[k] > f.net[i] + 1e-9;
            ++rank(i, better);
            for (int k = 0; k < 8; ++k) {
                if (k == i) continue;
                if (f.net[i] > f.net[k] + 1e-9) ++p2(i, k);
                const bool pos_ge = f.positive[i] >= f.positive[k] - 1e-9;
                const bool neg_le = f.negative[i] <= f.negative[k] + 1e-9;
                const bool pos_eq = std::abs(f.positive[i] - f.positive[k]) <= 1e-9;
                const bool neg_eq = std::abs(f.negative[i] - f.negative[k]) <= 1e-9;
                if (pos_eq && neg_eq) {
                    ++p1i(i, k);
                } else if (pos_ge && neg_le) {
                    ++p1(i, k);
                }
            }
        }
    }
    CHECK(r.rank_counts == rank);
    CHECK(r.p2_pref_counts == p2);
    CHECK(r.p1_pref_counts == p1);
    CHECK(r.p1_indiff_counts == p1i);
    CHECK((r.barycenter - b.samples.colwise().mean().transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("structural invariants and convexity on the student example") {
    const PerformanceTable t = oracle::students();
    for (bool classical : {true, false}) {
        const ConstraintSystem sys = scenario1(t, classical);
        const SmaaResults r =
            aggregate(t, draw(sys, 20000, 10), classical ? FlowMode::classical : FlowMode::bipolar);
        CHECK(check_count_invariants(r).empty());
        const Matrix b = r.rank_acceptability();
        for (Eigen::Index i = 0; i < 8; ++i) CHECK(std::abs(b.row(i).sum() - 1.0) < 1e-12);
        const Matrix p1 = r.p1_pref(), p1i = r.p1_indiff(), p1r = r.p1_incomp(), p2 = r.p2_pref(), p2i = r.p2_indiff();
        for (Eigen::Index i = 0; i < 8; ++i) {
            for (Eigen::Index j = 0; j < 8; ++j) {
                if (i == j) continue;
                CHECK(std::abs(p1(i, j) + p1(j, i) + p1i(i, j) + p1r(i, j) - 1.0) < 1e-12);
                CHECK(std::abs(p2(i, j) + p2(j, i) + p2i(i, j) - 1.0) < 1e-12);
                CHECK(p1r(i, j) == p1r(j, i));
                if (r.ror_necessary_approx(i, j)) CHECK(r.ror_possible_approx(i, j));
            }
        }
        CHECK(max_convexity_violation(r, sys, 0.0) <= 1e-9);
    }
}

TEST_CASE("results do not depend on the worker count") {
    const PerformanceTable t = oracle::students();
    const SampleBatch b = draw(scenario1(t, false), 10000, 4);
    AggregateOptions one;
    one.threads = 1;
    AggregateOptions many;
    many.threads = 5;
    const SmaaResults r1 = aggregate(t, b, FlowMode::bipolar, one);
    const SmaaResults r5 = aggregate(t, b, FlowMode::bipolar, many);
    CHECK(r1.rank_counts == r5.rank_counts);
    CHECK(r1.p1_incomp_counts == r5.p1_incomp_counts);
    CHECK(r1.barycenter == r5.barycenter);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(r1.central_weights[i].has_value() == r5.central_weights[i].has_value());
        if (r1.central_weights[i]) CHECK(*r1.central_weights[i] == *r5.central_weights[i]);
    }
}

TEST_CASE("two seeds agree within 1.5 percentage points") {
    const PerformanceTable t = oracle::students();
    const ConstraintSystem sys = scenario1(t, true);
    const SmaaResults a = aggregate(t, draw(sys, 100000, 101), FlowMode::classical);
    const SmaaResults b = aggregate(t, draw(sys, 100000, 202), FlowMode::classical);
    CHECK((a.rank_acceptability() - b.rank_acceptability()).cwiseAbs().maxCoeff() < 0.015);
    CHECK((a.p1_pref() - b.p1_pref()).cwiseAbs().maxCoeff() < 0.015);
    CHECK((a.p1_incomp() - b.p1_incomp()).cwiseAbs().maxCoeff() < 0.015);
    CHECK((a.p2_pref() - b.p2_pref()).cwiseAbs().maxCoeff() < 0.015);
}

TEST_CASE("classical and bipolar aggregation agree when interactions are zero") {
    const PerformanceTable t = oracle::students();
    ConstraintSystem sys = scenario1(t, false);
    const ParamLayout& l = sys.layout();
    for (std::size_t c = 3; c < l.dimension(); ++c) {
        sys.add_row(RowVector::Unit(static_cast<Eigen::Index>(sys.column_count()), static_cast<Eigen::Index>(c)),
                    Sense::equal, 0.0, "zero " + l.name(c));
    }
    const SampleBatch bip = draw(sys, 20000, 8);
    const SampleBatch cls = classical_projection(bip);
    const SmaaResults rb = aggregate(t, bip, FlowMode::bipolar);
    const SmaaResults rc = aggregate(t, cls, FlowMode::classical);
    CHECK(rb.rank_counts == rc.rank_counts);
    CHECK(rb.p1_pref_counts == rc.p1_pref_counts);
    CHECK(rb.p1_indiff_counts == rc.p1_indiff_counts);
    CHECK(rb.p1_incomp_counts == rc.p1_incomp_counts);
    CHECK(rb.p2_pref_counts == rc.p2_pref_counts);
    CHECK((rb.barycenter.head(3) - rc.barycenter).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("SMAA approximation never contradicts exact ROR") {
    const PerformanceTable t = oracle::students();
    for (bool classical : {true, false}) {
        const ConstraintSystem sys = scenario1(t, classical);
        const SmaaResults r =
            aggregate(t, draw(sys, 20000, 12), classical ? FlowMode::classical : FlowMode::bipolar);
        const RorValidation v = validate_against_exact_ror(r, sys, t);
        CHECK(v.consistent());
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(v.exact.necessary[i][i]);
            for (std::size_t j = 0; j < 8; ++j) {
                if (v.exact.necessary[i][j]) CHECK(v.exact.possible[i][j]);
            }
        }
    }
}

TEST_CASE("aggregate rejects empty batches and layout mismatches") {
    const PerformanceTable t = oracle::students();
    const SampleBatch b = draw(scenario1(t, true), 10, 1);
    CHECK_THROWS_AS(aggregate(t, b, FlowMode::bipolar), ValidationError);
    SampleBatch empty{b.layout, Matrix(0, 3)};
    CHECK_THROWS_AS(aggregate(t, empty, FlowMode::classical), ValidationError);
    CHECK_THROWS_AS(classical_projection(b), ValidationError);
}

TEST_CASE("count invariant checker flags broken partitions") {
    const PerformanceTable t = oracle::students();
    SmaaResults r = aggregate(t, draw(scenario1(t, true), 100, 1), FlowMode::classical);
    CHECK(check_count_invariants(r).empty());
    SmaaResults broken = r;
    broken.p2_pref_counts(0, 1) += 1;
    CHECK(!check_count_invariants(broken).empty());
    broken = r;
    broken.rank_counts(2, 0) += 1;
    CHECK(!check_count_invariants(broken).empty());
    broken = r;
    broken.p1_incomp_counts(0, 1) += 1;
    broken.p1_pref_counts(1, 0) -= 1;
    CHECK(!check_count_invariants(broken).empty());
}
}
