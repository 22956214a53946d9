#include "smaa/bipolar.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace smaa {

ParamLayout ParamLayout::classical(std::size_t n) { return ParamLayout(LayoutKind::classical, n, n); }

ParamLayout ParamLayout::bipolar(std::size_t n) { return ParamLayout(LayoutKind::bipolar, n, bipolar_dimension(n)); }

ParamLayout ParamLayout::generic(std::size_t dimension) { return ParamLayout(LayoutKind::generic, 0, dimension); }

std::size_t ParamLayout::weight(std::size_t j) const {
    if (kind_ == LayoutKind::generic || j >= n_) throw std::out_of_range("weight index out of range");
    return j;
}

std::size_t ParamLayout::pair(std::size_t j, std::size_t k) const {
    if (kind_ != LayoutKind::bipolar) throw std::logic_error("interaction columns exist only in bipolar layouts");
    if (j == k || j >= n_ || k >= n_) throw std::out_of_range("pair index out of range");
    if (j > k) std::swap(j, k);
    // pairs (0,1),(0,2),..,(0,n-1),(1,2),..
    const std::size_t before = j * n_ - j * (j + 1) / 2;
    return n_ + before + (k - j - 1);
}

std::size_t ParamLayout::opp_plus(std::size_t j, std::size_t k) const {
    if (kind_ != LayoutKind::bipolar) throw std::logic_error("opposing-power columns exist only in bipolar layouts");
    if (j == k || j >= n_ || k >= n_) throw std::out_of_range("opposing-power index out of range");
    const std::size_t pairs = n_ * (n_ - 1) / 2;
    return n_ + pairs + j * (n_ - 1) + (k < j ? k : k - 1);
}

std::string ParamLayout::name(std::size_t column) const {
    if (column >= dim_) throw std::out_of_range("column out of range");
    if (kind_ == LayoutKind::generic) return "x_" + std::to_string(column + 1);
    if (column < n_) return "a_" + std::to_string(column + 1);
    if (kind_ == LayoutKind::bipolar) {
        std::size_t rest = column - n_;
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = j + 1; k < n_; ++k) {
                if (rest-- == 0) return "a_" + std::to_string(j + 1) + "," + std::to_string(k + 1);
            }
        }
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) {
                if (k == j) continue;
                if (rest-- == 0) return "a+_" + std::to_string(j + 1) + "|" + std::to_string(k + 1);
            }
        }
    }
    throw std::logic_error("unreachable column");
}

std::vector<std::string> ParamLayout::names() const {
    std::vector<std::string> out;
    out.reserve(dim_);
    for (std::size_t c = 0; c < dim_; ++c) out.push_back(name(c));
    return out;
}

std::string to_string(LayoutKind kind) {
    switch (kind) {
        case LayoutKind::classical: return "classical";
        case LayoutKind::bipolar: return "bipolar";
        case LayoutKind::generic: return "generic";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

BicapacityParams::BicapacityParams(ParamLayout layout, Vector values, double tol, std::size_t max_criteria)
    : layout_(layout), values_(std::move(values)) {
    if (auto why = find_violation(layout_, values_, tol, max_criteria)) throw ValidationError(*why);
}

BicapacityParams BicapacityParams::unchecked(ParamLayout layout, Vector values) {
    if (layout.kind() != LayoutKind::bipolar || static_cast<std::size_t>(values.size()) != layout.dimension()) {
        throw ValidationError("bicapacity parameters need a bipolar layout of matching size");
    }
    return BicapacityParams(layout, std::move(values), std::nullopt);
}

BicapacityParams BicapacityParams::from_weights(const WeightVector& w) {
    const auto n = static_cast<std::size_t>(w.size());
    const ParamLayout layout = ParamLayout::bipolar(n);
    Vector theta = Vector::Zero(static_cast<Eigen::Index>(layout.dimension()));
    theta.head(w.size()) = w.values();
    return BicapacityParams(layout, std::move(theta));
}

std::optional<std::string> BicapacityParams::find_violation(const ParamLayout& layout, const Vector& v, double tol,
                                                            std::size_t max_criteria) {
    if (layout.kind() != LayoutKind::bipolar) return "bicapacity parameters need a bipolar layout";
    const std::size_t n = layout.criteria();
    if (n > max_criteria) {
        return "criteria count " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(max_criteria);
    }
    if (static_cast<std::size_t>(v.size()) != layout.dimension()) {
        return "expected " + std::to_string(layout.dimension()) + " parameters, got " + std::to_string(v.size());
    }
    if (!v.allFinite()) return "parameters must be finite";
    auto at = [&](std::size_t c) { return v[static_cast<Eigen::Index>(c)]; };

    double boundary = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (at(layout.weight(j)) < -tol) return "a_" + std::to_string(j + 1) + " is negative";
        boundary += at(layout.weight(j));
        for (std::size_t k = j + 1; k < n; ++k) boundary += at(layout.pair(j, k));
        for (std::size_t k = 0; k < n; ++k) {
            if (k != j && at(layout.opp_plus(j, k)) > tol) return layout.name(layout.opp_plus(j, k)) + " is positive";
        }
    }
    if (std::abs(boundary - 1.0) > tol) return "boundary condition sums to " + std::to_string(boundary);

    std::optional<std::string> failure;
    for_each_disjoint_pair(n, [&](std::size_t j, unsigned c, unsigned d) {
        if (failure) return;
        double positive_side = at(layout.weight(j));
        double negative_side = at(layout.weight(j));
        for (std::size_t k = 0; k < n; ++k) {
            if (c & (1u << k)) {
                positive_side += at(layout.pair(j, k));
                negative_side += at(layout.opp_plus(j, k));  // a-_{k|j}
            }
            if (d & (1u << k)) {
                positive_side += at(layout.opp_plus(j, k));
                negative_side += at(layout.pair(j, k));
            }
        }
        if (positive_side < -tol || negative_side < -tol) {
            failure = "monotonicity fails for criterion " + std::to_string(j + 1);
        }
    });
    return failure;
}

// ---------------------------------------------------------------------------

ChoquetForm choquet_linear_form(const Vector& x, const ParamLayout& layout) {
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    ChoquetForm form{RowVector::Zero(dim), RowVector::Zero(dim)};
    Vector unit = Vector::Zero(dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        unit[c] = 1.0;
        const ChoquetValue v = choquet_2additive(x, layout, unit);
        form.positive[c] = v.positive;
        form.negative[c] = v.negative;
        unit[c] = 0.0;
    }
    return form;
}

Vector bipolar_preference_vector(const PreferenceDegrees& degrees, std::size_t a, std::size_t b) {
    const std::size_t n = degrees.criterion_count();
    Vector x(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const double forward = degrees(j, a, b);
        x[static_cast<Eigen::Index>(j)] = forward > 0.0 ? forward : -degrees(j, b, a);
    }
    return x;
}

Vector bipolar_preference_vector(const PerformanceTable& table, std::size_t a, std::size_t b) {
    if (a >= table.alternative_count() || b >= table.alternative_count()) {
        throw std::out_of_range("alternative index out of range");
    }
    return bipolar_preference_vector(PreferenceDegrees(table), a, b);
}

// ---------------------------------------------------------------------------

GeneralBicapacity::GeneralBicapacity(std::size_t n, Vector mu_plus, Vector mu_minus)
    : n_(n), mu_plus_(std::move(mu_plus)), mu_minus_(std::move(mu_minus)) {
    if (n == 0 || n > 12) throw ValidationError("general bicapacities support 1..12 criteria");
    const auto size = static_cast<Eigen::Index>(std::size_t{1} << (2 * n));
    if (mu_plus_.size() != size || mu_minus_.size() != size) throw ValidationError("bicapacity table has wrong size");
}

GeneralBicapacity GeneralBicapacity::from_2additive(const BicapacityParams& params) {
    const std::size_t n = params.criteria();
    const auto size = static_cast<Eigen::Index>(std::size_t{1} << (2 * n));
    Vector plus = Vector::Zero(size);
    Vector minus = Vector::Zero(size);
    const unsigned full = (1u << n) - 1u;
    for (unsigned c = 0; c <= full; ++c) {
        for (unsigned d = 0; d <= full; ++d) {
            if (c & d) continue;
            double mp = 0.0;
            double mm = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const bool in_c = c & (1u << j);
                const bool in_d = d & (1u << j);
                if (in_c) mp += params.a(j);
                if (in_d) mm += params.a(j);
                for (std::size_t k = j + 1; k < n; ++k) {
                    if (in_c && (c & (1u << k))) mp += params.pair(j, k);
                    if (in_d && (d & (1u << k))) mm += params.pair(j, k);
                }
                if (!in_c) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    if (d & (1u << k)) {
                        mp += params.opp_plus(j, k);
                        mm += params.opp_minus(j, k);
                    }
                }
            }
            const auto at = static_cast<Eigen::Index>((static_cast<std::size_t>(c) << n) | d);
            plus[at] = mp;
            minus[at] = mm;
        }
    }
    return GeneralBicapacity(n, std::move(plus), std::move(minus));
}

void GeneralBicapacity::validate(double tol) const {
    const unsigned full = (1u << n_) - 1u;
    auto fail = [](const std::string& what) { throw ValidationError("bicapacity axiom violated: " + what); };
    if (std::abs(mu_plus(full, 0) - 1.0) > tol) fail("mu+(J, {}) != 1");
    if (std::abs(mu_minus(0, full) - 1.0) > tol) fail("mu-({}, J) != 1");
    for (unsigned b = 0; b <= full; ++b) {
        if (std::abs(mu_plus(0, b)) > tol) fail("mu+({}, B) != 0");
        if (std::abs(mu_minus(b, 0)) > tol) fail("mu-(B, {}) != 0");
    }
    for (unsigned c = 0; c <= full; ++c) {
        for (unsigned d = 0; d <= full; ++d) {
            if (c & d) continue;
            if (std::abs(mu_plus(c, d)) > 1.0 + tol || std::abs(mu_minus(c, d)) > 1.0 + tol) fail("value outside [-1,1]");
            for (std::size_t i = 0; i < n_; ++i) {
                const unsigned bit = 1u << i;
                if (!(c & bit) && !(d & bit)) {
                    // growing C raises mu+, growing D raises mu-
                    if (mu_plus(c | bit, d) < mu_plus(c, d) - tol) fail("mu+ not monotone in C");
                    if (mu_minus(c, d | bit) < mu_minus(c, d) - tol) fail("mu- not monotone in D");
                }
                if (d & bit) {
                    if (mu_plus(c, d & ~bit) < mu_plus(c, d) - tol) fail("mu+ not antitone in D");
                }
                if (c & bit) {
                    if (mu_minus(c & ~bit, d) < mu_minus(c, d) - tol) fail("mu- not antitone in C");
                }
            }
        }
    }
}

ChoquetValue choquet_definitional(const Vector& x, const GeneralBicapacity& bc) {
    std::vector<std::size_t> order(static_cast<std::size_t>(x.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(x[static_cast<Eigen::Index>(i)]) < std::abs(x[static_cast<Eigen::Index>(j)]);
    });
    return choquet_definitional(x, bc, order);
}

ChoquetValue choquet_definitional(const Vector& x, const GeneralBicapacity& bc, std::span<const std::size_t> order) {
    const std::size_t n = bc.criteria();
    if (static_cast<std::size_t>(x.size()) != n || order.size() != n) throw ValidationError("dimension mismatch");
    if (!x.allFinite()) throw ValidationError("preference vector must be finite");
    bc.validate();
    auto mag = [&](std::size_t i) { return std::abs(x[static_cast<Eigen::Index>(i)]); };
    for (std::size_t p = 1; p < n; ++p) {
        if (mag(order[p]) < mag(order[p - 1])) throw ValidationError("order does not sort |x|");
    }

    // C_(p), D_(p) for the p-th strictly positive level; the sentinel after the last is (empty, empty).
    auto level_sets = [&](double level) {
        unsigned c = 0;
        unsigned d = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = x[static_cast<Eigen::Index>(i)];
            if (xi != 0.0 && xi >= level) c |= 1u << i;
            if (xi != 0.0 && -xi >= level) d |= 1u << i;
        }
        return std::pair{c, d};
    };

    ChoquetValue out{0.0, 0.0, 0.0};
    std::vector<std::size_t> active;
    for (std::size_t i : order) {
        if (mag(i) > 0.0) active.push_back(i);
    }
    for (std::size_t p = 0; p < active.size(); ++p) {
        const double level = mag(active[p]);
        const auto [c, d] = level_sets(level);
        unsigned c_next = 0;
        unsigned d_next = 0;
        if (p + 1 < active.size()) std::tie(c_next, d_next) = level_sets(mag(active[p + 1]));
        const double dp = bc.mu_plus(c, d) - bc.mu_plus(c_next, d_next);
        const double dm = bc.mu_minus(c, d) - bc.mu_minus(c_next, d_next);
        out.positive += level * dp;
        out.negative += level * dm;
        out.total += level * (dp - dm);
    }
    return out;
}

Flows bipolar_flows(const PerformanceTable& table, const BicapacityParams& params) {
    if (params.criteria() != table.criterion_count()) throw ValidationError("parameters do not match the criteria");
    const PreferenceDegrees degrees(table);
    const auto m = static_cast<Eigen::Index>(table.alternative_count());
    Flows f{Vector::Zero(m), Vector::Zero(m), Vector::Zero(m)};
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            if (a == b) continue;
            const Vector x =
                bipolar_preference_vector(degrees, static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            const ChoquetValue v = choquet_2additive(x, params);
            f.positive[a] += v.positive;
            f.negative[a] += v.negative;
            f.net[a] += v.total;
        }
    }
    const double scale = 1.0 / static_cast<double>(m - 1);
    f.positive *= scale;
    f.negative *= scale;
    f.net *= scale;
    return f;
}

// ---------------------------------------------------------------------------

std::string params_to_json_text(const BicapacityParams& params) {
    using nlohmann::json;
    const std::size_t n = params.criteria();
    json doc;
    doc["a"] = json::array();
    for (std::size_t j = 0; j < n; ++j) doc["a"].push_back(params.a(j));
    doc["a_pair"] = json::object();
    doc["a_opp_plus"] = json::object();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            doc["a_pair"][std::to_string(j + 1) + "," + std::to_string(k + 1)] = params.pair(j, k);
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (k != j) doc["a_opp_plus"][std::to_string(j + 1) + "|" + std::to_string(k + 1)] = params.opp_plus(j, k);
        }
    }
    return doc.dump(2) + "\n";
}

BicapacityParams params_from_json_text(const std::string& text) {
    using nlohmann::json;
    try {
        const json doc = json::parse(text);
        const auto a = doc.at("a").get<std::vector<double>>();
        const std::size_t n = a.size();
        const ParamLayout layout = ParamLayout::bipolar(n);
        Vector theta = Vector::Zero(static_cast<Eigen::Index>(layout.dimension()));
        for (std::size_t j = 0; j < n; ++j) theta[static_cast<Eigen::Index>(j)] = a[j];
        auto parse_key = [n](const std::string& key, char sep) {
            const auto pos = key.find(sep);
            if (pos == std::string::npos) throw ValidationError("bad parameter key '" + key + "'");
            const std::size_t j = std::stoul(key.substr(0, pos));
            const std::size_t k = std::stoul(key.substr(pos + 1));
            if (j < 1 || k < 1 || j > n || k > n || j == k) throw ValidationError("bad parameter key '" + key + "'");
            return std::pair{j - 1, k - 1};
        };
        const json pairs = doc.value("a_pair", json::object());
        const json opposing = doc.value("a_opp_plus", json::object());
        for (const auto& [key, value] : pairs.items()) {
            const auto [j, k] = parse_key(key, ',');
            theta[static_cast<Eigen::Index>(layout.pair(j, k))] = value.get<double>();
        }
        for (const auto& [key, value] : opposing.items()) {
            const auto [j, k] = parse_key(key, '|');
            theta[static_cast<Eigen::Index>(layout.opp_plus(j, k))] = value.get<double>();
        }
        return BicapacityParams(layout, std::move(theta));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bicapacity file: ") + e.what());
    }
}

}  // namespace smaa
