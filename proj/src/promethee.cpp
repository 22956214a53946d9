#include "smaa/promethee.hpp"

#include <cmath>

namespace smaa {

WeightVector::WeightVector(Vector w) : w_(std::move(w)) {
    if (w_.size() == 0) throw ValidationError("weight vector is empty");
    if (!w_.allFinite() || (w_.array() < 0.0).any()) throw ValidationError("weights must be finite and non-negative");
    if (std::abs(w_.sum() - 1.0) > 1e-12) throw ValidationError("weights must sum to 1");
}

PreferenceDegrees::PreferenceDegrees(const PerformanceTable& table) : m_(table.alternative_count()) {
    const auto m = static_cast<Eigen::Index>(m_);
    per_criterion_.reserve(table.criterion_count());
    for (std::size_t j = 0; j < table.criterion_count(); ++j) {
        const Criterion& c = table.criterion(j);
        Matrix deg = Matrix::Zero(m, m);
        for (std::size_t a = 0; a < m_; ++a) {
            for (std::size_t b = 0; b < m_; ++b) {
                if (a == b) continue;
                deg(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    preference_degree(difference(table, j, a, b), c.q, c.p);
            }
        }
        per_criterion_.push_back(std::move(deg));
    }
}

double aggregated_preference(const PerformanceTable& table, const WeightVector& w, std::size_t a, std::size_t b) {
    if (static_cast<std::size_t>(w.size()) != table.criterion_count()) {
        throw ValidationError("weight vector length does not match criteria");
    }
    double pi = 0.0;
    for (std::size_t j = 0; j < table.criterion_count(); ++j) {
        const Criterion& c = table.criterion(j);
        pi += w[static_cast<Eigen::Index>(j)] * preference_degree(difference(table, j, a, b), c.q, c.p);
    }
    return pi;
}

Matrix aggregated_preference_matrix(const PreferenceDegrees& degrees, const WeightVector& w) {
    if (static_cast<std::size_t>(w.size()) != degrees.criterion_count()) {
        throw ValidationError("weight vector length does not match criteria");
    }
    const auto m = static_cast<Eigen::Index>(degrees.alternative_count());
    Matrix pi = Matrix::Zero(m, m);
    for (std::size_t j = 0; j < degrees.criterion_count(); ++j) {
        pi += w[static_cast<Eigen::Index>(j)] * degrees.criterion(j);
    }
    return pi;
}

Flows flows_from_pairwise(const Matrix& pairwise) {
    const Eigen::Index m = pairwise.rows();
    if (m < 2 || pairwise.cols() != m) throw ValidationError("flows need a square matrix over at least two alternatives");
    const double scale = 1.0 / static_cast<double>(m - 1);
    Flows f;
    f.positive = scale * (pairwise.rowwise().sum() - pairwise.diagonal());
    f.negative = scale * (pairwise.colwise().sum().transpose() - pairwise.diagonal());
    f.net = f.positive - f.negative;
    return f;
}

Flows classical_flows(const PerformanceTable& table, const WeightVector& w) {
    return flows_from_pairwise(aggregated_preference_matrix(PreferenceDegrees(table), w));
}

Outranking compare_partial(double pos_a, double neg_a, double pos_b, double neg_b, double tol) {
    const bool pos_eq = std::abs(pos_a - pos_b) <= tol;
    const bool neg_eq = std::abs(neg_a - neg_b) <= tol;
    if (pos_eq && neg_eq) return Outranking::indifferent;
    const bool a_geq_pos = pos_eq || pos_a > pos_b;
    const bool a_leq_neg = neg_eq || neg_a < neg_b;
    if (a_geq_pos && a_leq_neg) return Outranking::preferred;
    const bool b_geq_pos = pos_eq || pos_b > pos_a;
    const bool b_leq_neg = neg_eq || neg_b < neg_a;
    if (b_geq_pos && b_leq_neg) return Outranking::preferred_inverse;
    return Outranking::incomparable;
}

Outranking compare_complete(double net_a, double net_b, double tol) {
    if (net_a > net_b + tol) return Outranking::preferred;
    if (net_b > net_a + tol) return Outranking::preferred_inverse;
    return Outranking::indifferent;
}

namespace {

Outranking inverse(Outranking r) {
    switch (r) {
        case Outranking::preferred: return Outranking::preferred_inverse;
        case Outranking::preferred_inverse: return Outranking::preferred;
        default: return r;
    }
}

}  // namespace

RelationMatrix promethee1_relation(const Flows& flows, double tol) {
    const auto m = static_cast<std::size_t>(flows.size());
    RelationMatrix rel(m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const auto ia = static_cast<Eigen::Index>(a);
            const auto ib = static_cast<Eigen::Index>(b);
            const Outranking r = compare_partial(flows.positive[ia], flows.negative[ia], flows.positive[ib],
                                                 flows.negative[ib], tol);
            rel.set(a, b, r);
            rel.set(b, a, inverse(r));
        }
    }
    return rel;
}

RelationMatrix promethee2_relation(const Flows& flows, double tol) {
    const auto m = static_cast<std::size_t>(flows.size());
    RelationMatrix rel(m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const Outranking r =
                compare_complete(flows.net[static_cast<Eigen::Index>(a)], flows.net[static_cast<Eigen::Index>(b)], tol);
            rel.set(a, b, r);
            rel.set(b, a, inverse(r));
        }
    }
    return rel;
}

std::vector<int> promethee2_ranks(const Vector& net, double tol) {
    std::vector<int> ranks(static_cast<std::size_t>(net.size()), 1);
    for (Eigen::Index i = 0; i < net.size(); ++i) {
        for (Eigen::Index k = 0; k < net.size(); ++k) {
            if (k != i && net[k] > net[i] + tol) ++ranks[static_cast<std::size_t>(i)];
        }
    }
    return ranks;
}

}  // namespace smaa
