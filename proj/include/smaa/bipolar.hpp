#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smaa/model.hpp"
#include "smaa/promethee.hpp"

namespace smaa {

/// Largest criteria family for which P(J) is enumerated by default (3^n pairs).
inline constexpr std::size_t kDefaultMaxCriteria = 8;

enum class LayoutKind { classical, bipolar, generic };

/// Column layout of a parameter vector.
///
/// classical: [w_1 .. w_n]
/// bipolar:   [a_1 .. a_n | a_{jk} for j<k, lexicographic | a+_{j|k} for j != k, row-major]
///            (3n^2 - n)/2 columns; a-_{j|k} is read as a+_{k|j}.
/// generic:   opaque columns, used for plain polytopes.
class ParamLayout {
public:
    static ParamLayout classical(std::size_t n);
    static ParamLayout bipolar(std::size_t n);
    static ParamLayout generic(std::size_t dimension);

    LayoutKind kind() const { return kind_; }
    std::size_t criteria() const { return n_; }
    std::size_t dimension() const { return dim_; }

    std::size_t weight(std::size_t j) const;
    std::size_t pair(std::size_t j, std::size_t k) const;      ///< a_{jk}, unordered
    std::size_t opp_plus(std::size_t j, std::size_t k) const;  ///< a+_{j|k}, ordered

    /// "a_1", "a_1,2", "a+_1|2" (1-based), or "x_1" for generic layouts.
    std::string name(std::size_t column) const;
    std::vector<std::string> names() const;

    bool operator==(const ParamLayout&) const = default;

private:
    ParamLayout(LayoutKind kind, std::size_t n, std::size_t dim) : kind_(kind), n_(n), dim_(dim) {}

    LayoutKind kind_;
    std::size_t n_;
    std::size_t dim_;
};

inline std::size_t bipolar_dimension(std::size_t n) { return (3 * n * n - n) / 2; }

std::string to_string(LayoutKind kind);

/// Calls visit(j, C_mask, D_mask) for every j and every disjoint (C, D) over J \ {j}.
template <typename Visitor>
void for_each_disjoint_pair(std::size_t n, Visitor&& visit) {
    std::size_t total = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) total *= 3;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t code = 0; code < total; ++code) {
            unsigned c_mask = 0;
            unsigned d_mask = 0;
            std::size_t rest = code;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                const std::size_t digit = rest % 3;
                rest /= 3;
                if (digit == 1) c_mask |= 1u << k;
                if (digit == 2) d_mask |= 1u << k;
            }
            visit(j, c_mask, d_mask);
        }
    }
}

/// Symmetric 2-additive decomposable bicapacity {a_j, a_jk, a+_{j|k}}.
class BicapacityParams {
public:
    /// Validates sign, boundary and (exhaustively enumerated) monotonicity conditions.
    BicapacityParams(ParamLayout layout, Vector values, double tol = 1e-10,
                     std::size_t max_criteria = kDefaultMaxCriteria);

    /// No validation; used for linear-form extraction and candidate points.
    static BicapacityParams unchecked(ParamLayout layout, Vector values);

    /// Zero interactions, a_j = w_j.
    static BicapacityParams from_weights(const WeightVector& w);

    const ParamLayout& layout() const { return layout_; }
    const Vector& values() const { return values_; }
    std::size_t criteria() const { return layout_.criteria(); }

    double a(std::size_t j) const { return values_[idx(layout_.weight(j))]; }
    double pair(std::size_t j, std::size_t k) const { return values_[idx(layout_.pair(j, k))]; }
    double opp_plus(std::size_t j, std::size_t k) const { return values_[idx(layout_.opp_plus(j, k))]; }
    /// a-_{j|k} through the symmetry a-_{j|k} = a+_{k|j}.
    double opp_minus(std::size_t j, std::size_t k) const { return opp_plus(k, j); }

    /// First violated condition, or nullopt.
    static std::optional<std::string> find_violation(const ParamLayout& layout, const Vector& values, double tol,
                                                     std::size_t max_criteria = kDefaultMaxCriteria);

private:
    BicapacityParams(ParamLayout layout, Vector values, std::nullopt_t)
        : layout_(layout), values_(std::move(values)) {}
    static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

    ParamLayout layout_;
    Vector values_;
};

template <typename Scalar>
struct BasicChoquet {
    Scalar total;
    Scalar positive;
    Scalar negative;
};
using ChoquetValue = BasicChoquet<double>;

/// Closed-form bipolar Choquet integral of x for a 2-additive decomposable
/// bicapacity given as a raw bipolar-layout parameter vector. Pair sums run
/// over unordered pairs. Linear in theta for fixed x.
template <typename DerivedX, typename DerivedTheta>
BasicChoquet<typename DerivedX::Scalar> choquet_2additive(const Eigen::MatrixBase<DerivedX>& x,
                                                          const ParamLayout& layout,
                                                          const Eigen::MatrixBase<DerivedTheta>& theta) {
    using Scalar = typename DerivedX::Scalar;
    const std::size_t n = layout.criteria();
    auto at = [&](std::size_t col) { return theta[static_cast<Eigen::Index>(col)]; };
    auto xv = [&](std::size_t j) { return x[static_cast<Eigen::Index>(j)]; };
    Scalar pos(0);
    Scalar neg(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (xv(j) > 0) pos += at(layout.weight(j)) * xv(j);
        if (xv(j) < 0) neg -= at(layout.weight(j)) * xv(j);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (xv(j) > 0 && xv(k) > 0) pos += at(layout.pair(j, k)) * std::min(xv(j), xv(k));
            if (xv(j) < 0 && xv(k) < 0) neg -= at(layout.pair(j, k)) * std::max(xv(j), xv(k));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!(xv(j) > 0)) continue;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j || !(xv(k) < 0)) continue;
            pos += at(layout.opp_plus(j, k)) * std::min(xv(j), -xv(k));
            // a-_{j|k} = a+_{k|j}
            neg -= at(layout.opp_plus(k, j)) * std::max(-xv(j), xv(k));
        }
    }
    return {pos - neg, pos, neg};
}

template <typename DerivedX>
ChoquetValue choquet_2additive(const Eigen::MatrixBase<DerivedX>& x, const BicapacityParams& params) {
    return choquet_2additive(x, params.layout(), params.values());
}

/// Coefficients of the positive and negative Choquet parts as linear forms in
/// the bipolar parameter vector (value at theta = form * theta).
struct ChoquetForm {
    RowVector positive;
    RowVector negative;
    RowVector total() const { return positive - negative; }
};

/// Obtained by evaluating the closed form at each unit parameter vector.
ChoquetForm choquet_linear_form(const Vector& x, const ParamLayout& layout);

/// x_j = P_j(a,b) if positive, otherwise -P_j(b,a).
Vector bipolar_preference_vector(const PreferenceDegrees& degrees, std::size_t a, std::size_t b);
Vector bipolar_preference_vector(const PerformanceTable& table, std::size_t a, std::size_t b);

/// Decomposed bicapacity with arbitrary mu+ / mu- tables over P(J).
/// Entries are indexed by (C_mask << n) | D_mask; only disjoint pairs are meaningful.
class GeneralBicapacity {
public:
    GeneralBicapacity(std::size_t n, Vector mu_plus, Vector mu_minus);

    /// mu+/mu- built from the 2-additive decomposition sums.
    static GeneralBicapacity from_2additive(const BicapacityParams& params);

    std::size_t criteria() const { return n_; }
    double mu_plus(unsigned c, unsigned d) const { return mu_plus_[index(c, d)]; }
    double mu_minus(unsigned c, unsigned d) const { return mu_minus_[index(c, d)]; }

    /// Throws ValidationError when a boundary or monotonicity axiom fails.
    void validate(double tol = 1e-10) const;

private:
    Eigen::Index index(unsigned c, unsigned d) const {
        return static_cast<Eigen::Index>((static_cast<std::size_t>(c) << n_) | d);
    }

    std::size_t n_;
    Vector mu_plus_;
    Vector mu_minus_;
};

/// Sort-based bipolar Choquet integral (telescoping sums over |x| level sets).
/// Ties in |x| are broken by index. Validates the bicapacity first.
ChoquetValue choquet_definitional(const Vector& x, const GeneralBicapacity& bc);

/// Same with an explicit visiting order, which must sort |x| non-decreasingly.
ChoquetValue choquet_definitional(const Vector& x, const GeneralBicapacity& bc, std::span<const std::size_t> order);

/// Bipolar positive, negative and net flows (Choquet parts averaged over the other alternatives).
Flows bipolar_flows(const PerformanceTable& table, const BicapacityParams& params);

inline RelationMatrix bipolar_promethee1_relation(const Flows& flows, double tol = kFlowTolerance) {
    return promethee1_relation(flows, tol);
}
inline RelationMatrix bipolar_promethee2_relation(const Flows& flows, double tol = kFlowTolerance) {
    return promethee2_relation(flows, tol);
}

/// {"a":[...], "a_pair":{"1,2":v}, "a_opp_plus":{"1|2":v}} with 1-based criteria.
std::string params_to_json_text(const BicapacityParams& params);
BicapacityParams params_from_json_text(const std::string& text);

}  // namespace smaa
