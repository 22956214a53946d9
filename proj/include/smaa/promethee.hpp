#pragma once

#include <cstddef>
#include <vector>

#include "smaa/model.hpp"

namespace smaa {

/// Flow-equality tolerance used when building relations and ranks.
inline constexpr double kFlowTolerance = 1e-9;

/// Piecewise-linear preference degree in [0,1]; q == p is the usual criterion (1 iff d > q).
template <typename Scalar>
Scalar preference_degree(Scalar d, Scalar q, Scalar p) {
    if (d <= q) return Scalar(0);
    if (d >= p) return Scalar(1);
    return (d - q) / (p - q);
}

/// Non-negative weights summing to one.
class WeightVector {
public:
    explicit WeightVector(Vector w);

    const Vector& values() const { return w_; }
    Eigen::Index size() const { return w_.size(); }
    double operator[](Eigen::Index j) const { return w_[j]; }

private:
    Vector w_;
};

/// All P_j(a,b) for a table; one m x m matrix per criterion.
class PreferenceDegrees {
public:
    explicit PreferenceDegrees(const PerformanceTable& table);

    std::size_t alternative_count() const { return m_; }
    std::size_t criterion_count() const { return per_criterion_.size(); }
    double operator()(std::size_t j, std::size_t a, std::size_t b) const {
        return per_criterion_[j](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    const Matrix& criterion(std::size_t j) const { return per_criterion_[j]; }

private:
    std::size_t m_;
    std::vector<Matrix> per_criterion_;
};

/// pi(a,b) = sum_j w_j P_j(a,b).
double aggregated_preference(const PerformanceTable& table, const WeightVector& w, std::size_t a, std::size_t b);

/// Dense m x m matrix of pi(a,b), zero diagonal.
Matrix aggregated_preference_matrix(const PreferenceDegrees& degrees, const WeightVector& w);

struct FlowTriple {
    double positive;
    double negative;
    double net;
};

/// Positive, negative and net flow per alternative.
struct Flows {
    Vector positive;
    Vector negative;
    Vector net;

    Eigen::Index size() const { return net.size(); }
    FlowTriple operator[](Eigen::Index a) const { return {positive[a], negative[a], net[a]}; }
};

/// Flows from a pairwise matrix: positive = row sums / (m-1), negative = column sums / (m-1).
Flows flows_from_pairwise(const Matrix& pairwise);

Flows classical_flows(const PerformanceTable& table, const WeightVector& w);

enum class Outranking { self, preferred, preferred_inverse, indifferent, incomparable };

/// Square relation matrix; at(a,b) describes a versus b.
class RelationMatrix {
public:
    explicit RelationMatrix(std::size_t m) : m_(m), cells_(m * m, Outranking::self) {}

    std::size_t size() const { return m_; }
    Outranking at(std::size_t a, std::size_t b) const { return cells_[a * m_ + b]; }
    void set(std::size_t a, std::size_t b, Outranking r) { cells_[a * m_ + b] = r; }

private:
    std::size_t m_;
    std::vector<Outranking> cells_;
};

/// Partial-order outcome for a pair from (positive, negative) flows.
Outranking compare_partial(double pos_a, double neg_a, double pos_b, double neg_b, double tol = kFlowTolerance);

/// Complete-preorder outcome for a pair from net flows.
Outranking compare_complete(double net_a, double net_b, double tol = kFlowTolerance);

RelationMatrix promethee1_relation(const Flows& flows, double tol = kFlowTolerance);
RelationMatrix promethee2_relation(const Flows& flows, double tol = kFlowTolerance);

/// rank(i) = 1 + #{k : net(k) > net(i) + tol}; ties share the better rank.
std::vector<int> promethee2_ranks(const Vector& net, double tol = kFlowTolerance);

}  // namespace smaa
