#include "smaa/sampler.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>

#include <json.hpp>

namespace smaa {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

namespace {

constexpr double kRankTolerance = 1e-10;

/// Orthonormal basis of {x : E x = 0}.
Matrix null_space(const Matrix& equalities, Eigen::Index dimension) {
    if (equalities.rows() == 0) return Matrix::Identity(dimension, dimension);
    Eigen::ColPivHouseholderQR<Matrix> qr(equalities.transpose());
    qr.setThreshold(kRankTolerance);
    const Eigen::Index rank = qr.rank();
    const Matrix q = qr.householderQ() * Matrix::Identity(dimension, dimension);
    return q.rightCols(dimension - rank);
}

}  // namespace

ReducedPolytope build_polytope(const ConstraintSystem& system, double delta_strict, const LpOptions& options) {
    const LpOutcome lp = max_epsilon(system, options);
    if (lp.status != LpStatus::optimal) {
        throw IncompatibleError("constraint system is infeasible (phase-1 residual " + std::to_string(lp.certificate) +
                                    ")",
                                -std::numeric_limits<double>::infinity());
    }
    if (!(lp.epsilon_star > delta_strict + options.feasibility_tolerance)) {
        throw IncompatibleError("max epsilon " + std::to_string(lp.epsilon_star) + " does not exceed delta_strict " +
                                    std::to_string(delta_strict),
                                lp.epsilon_star);
    }

    const auto dim = static_cast<Eigen::Index>(system.parameter_count());
    const auto eps_col = static_cast<Eigen::Index>(system.epsilon_column());
    std::vector<RowVector> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<RowVector> le_rows;
    std::vector<double> le_rhs;
    for (const ConstraintRow& r : system.rows()) {
        const RowVector a = r.coefficients.head(dim);
        const double rhs = r.rhs - r.coefficients[eps_col] * delta_strict;
        switch (r.sense) {
            case Sense::equal:
                eq_rows.push_back(a);
                eq_rhs.push_back(rhs);
                break;
            case Sense::less_equal:
                le_rows.push_back(a);
                le_rhs.push_back(rhs);
                break;
            case Sense::greater_equal:
                le_rows.push_back(-a);
                le_rhs.push_back(-rhs);
                break;
        }
    }

    Matrix e(static_cast<Eigen::Index>(eq_rows.size()), dim);
    Vector f(e.rows());
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        e.row(i) = eq_rows[static_cast<std::size_t>(i)];
        f[i] = eq_rhs[static_cast<std::size_t>(i)];
    }

    // Particular point: the LP vertex, projected back onto the equality set.
    Vector particular = lp.solution.head(dim);
    if (e.rows() > 0) {
        const Vector residual = e * particular - f;
        particular -= e.completeOrthogonalDecomposition().solve(residual);
        if ((e * particular - f).cwiseAbs().maxCoeff() > options.feasibility_tolerance) {
            throw IncompatibleError("equality rows are inconsistent", lp.epsilon_star);
        }
    }

    ReducedPolytope poly{system.layout(), particular, null_space(e, dim), Matrix(), Vector(), lp.epsilon_star,
                         delta_strict, 0.0};
    const Eigen::Index k = poly.basis.cols();

    // Inequalities in reduced coordinates around the particular point; merge duplicates.
    std::map<std::vector<double>, std::size_t> seen;
    std::vector<RowVector> g_rows;
    std::vector<double> h_values;
    for (std::size_t i = 0; i < le_rows.size(); ++i) {
        const RowVector g = le_rows[i] * poly.basis;
        const double h = le_rhs[i] - le_rows[i].dot(particular);
        if (g.norm() <= kRankTolerance) {
            if (h < -options.feasibility_tolerance) throw IncompatibleError("inequality contradicts equalities", lp.epsilon_star);
            continue;
        }
        std::vector<double> key(g.data(), g.data() + g.size());
        const auto [it, inserted] = seen.emplace(std::move(key), g_rows.size());
        if (inserted) {
            g_rows.push_back(g);
            h_values.push_back(h);
        } else {
            h_values[it->second] = std::min(h_values[it->second], h);
        }
    }
    poly.inequalities.resize(static_cast<Eigen::Index>(g_rows.size()), k);
    poly.bounds.resize(static_cast<Eigen::Index>(g_rows.size()));
    for (Eigen::Index i = 0; i < poly.inequalities.rows(); ++i) {
        poly.inequalities.row(i) = g_rows[static_cast<std::size_t>(i)];
        poly.bounds[i] = h_values[static_cast<std::size_t>(i)];
    }
    if (k == 0) return poly;

    // Chebyshev centre: max r s.t. g_i y + |g_i| r <= h_i (r plays the epsilon column, capped at 1).
    ConstraintSystem centre(ParamLayout::generic(static_cast<std::size_t>(k)));
    for (Eigen::Index i = 0; i < poly.inequalities.rows(); ++i) {
        centre.add_row(poly.inequalities.row(i), poly.inequalities.row(i).norm(), Sense::less_equal, poly.bounds[i],
                       "reduced row " + std::to_string(i));
    }
    const LpOutcome c = max_epsilon(centre, options);
    if (c.status != LpStatus::optimal || c.epsilon_star <= kRankTolerance) {
        throw IncompatibleError("compatible polytope has an empty interior in reduced coordinates", lp.epsilon_star);
    }
    const Vector y = c.solution.head(k);
    poly.offset = particular + poly.basis * y;
    poly.bounds -= poly.inequalities * y;
    poly.inradius = c.epsilon_star;
    return poly;
}

SampleBatch hit_and_run(const ReducedPolytope& polytope, const SamplerConfig& config) {
    if (config.sample_count < 1) throw ValidationError("sample_count must be at least 1");
    if (config.thinning < 1) throw ValidationError("thinning must be at least 1");

    const Eigen::Index k = polytope.reduced_dimension();
    const auto count = static_cast<Eigen::Index>(config.sample_count);
    Matrix reduced = Matrix::Zero(count, k);

    if (k > 0) {
        const Matrix& g = polytope.inequalities;
        const Vector& h = polytope.bounds;
        Rng rng(config.seed);
        Vector y = Vector::Zero(k);
        Vector slack = h;
        Vector direction(k);
        Vector gd(g.rows());
        const std::size_t total = config.burn_in + config.sample_count * config.thinning;
        Eigen::Index stored = 0;

        for (std::size_t step = 0; step < total; ++step) {
            double t_lo = 0.0;
            double t_hi = 0.0;
            std::size_t attempt = 0;
            for (;; ++attempt) {
                if (attempt > config.direction_retries) {
                    throw std::runtime_error("hit-and-run: chord stayed empty after " +
                                             std::to_string(config.direction_retries) + " retries");
                }
                for (Eigen::Index i = 0; i < k; ++i) direction[i] = rng.normal();
                const double norm = direction.norm();
                if (norm == 0.0) continue;
                direction /= norm;
                gd.noalias() = g * direction;
                t_lo = -std::numeric_limits<double>::infinity();
                t_hi = std::numeric_limits<double>::infinity();
                for (Eigen::Index i = 0; i < gd.size(); ++i) {
                    const double s = std::max(slack[i], 0.0);
                    if (gd[i] > 1e-14) {
                        t_hi = std::min(t_hi, s / gd[i]);
                    } else if (gd[i] < -1e-14) {
                        t_lo = std::max(t_lo, s / gd[i]);
                    }
                }
                if (!std::isfinite(t_lo) || !std::isfinite(t_hi)) {
                    throw std::runtime_error("hit-and-run: compatible polytope is unbounded");
                }
                if (t_hi - t_lo >= 1e-12) break;
            }
            const double t = t_lo + rng.uniform() * (t_hi - t_lo);
            y.noalias() += t * direction;
            if ((step + 1) % 1024 == 0) {
                slack = h - g * y;
            } else {
                slack.noalias() -= t * gd;
            }
            if (step >= config.burn_in && (step - config.burn_in) % config.thinning == 0) {
                reduced.row(stored++) = y.transpose();
            }
        }
    }

    SampleBatch batch{polytope.layout, Matrix()};
    batch.samples = (reduced * polytope.basis.transpose()).rowwise() + polytope.offset.transpose();
    return batch;
}

SampleBatch sample_compatible(const ConstraintSystem& system, const SamplerConfig& config) {
    return hit_and_run(build_polytope(system, config.delta_strict, config.lp), config);
}

// ---------------------------------------------------------------------------

void save_batch(const SampleBatch& batch, const std::filesystem::path& bin_path,
                const std::filesystem::path& sidecar_path) {
    std::ofstream bin(bin_path, std::ios::binary);
    if (!bin) throw ValidationError("cannot write '" + bin_path.string() + "'");
    for (Eigen::Index i = 0; i < batch.samples.rows(); ++i) {
        for (Eigen::Index j = 0; j < batch.samples.cols(); ++j) {
            auto bits = std::bit_cast<std::uint64_t>(batch.samples(i, j));
            if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
            char bytes[8];
            std::memcpy(bytes, &bits, 8);
            bin.write(bytes, 8);
        }
    }
    nlohmann::ordered_json side;
    side["format"] = "float64-le-row-major";
    side["rows"] = batch.samples.rows();
    side["cols"] = batch.samples.cols();
    side["layout"] = to_string(batch.layout.kind());
    side["criteria"] = batch.layout.criteria();
    side["variable_index"] = nlohmann::ordered_json::object();
    const auto names = batch.layout.names();
    for (std::size_t c = 0; c < names.size(); ++c) side["variable_index"][names[c]] = c;
    std::ofstream js(sidecar_path);
    if (!js) throw ValidationError("cannot write '" + sidecar_path.string() + "'");
    js << side.dump(2) << "\n";
}

SampleBatch load_batch(const std::filesystem::path& bin_path, const std::filesystem::path& sidecar_path) {
    const auto side = nlohmann::json::parse(read_text_file(sidecar_path));
    const auto rows = side.at("rows").get<Eigen::Index>();
    const auto cols = side.at("cols").get<Eigen::Index>();
    const auto kind = side.at("layout").get<std::string>();
    const auto n = side.at("criteria").get<std::size_t>();
    const ParamLayout layout = kind == "bipolar"     ? ParamLayout::bipolar(n)
                               : kind == "classical" ? ParamLayout::classical(n)
                                                     : ParamLayout::generic(static_cast<std::size_t>(cols));
    if (static_cast<Eigen::Index>(layout.dimension()) != cols) throw ValidationError("sidecar layout mismatch");
    const std::string raw = read_text_file(bin_path);
    if (raw.size() != static_cast<std::size_t>(rows * cols) * 8) throw ValidationError("sample file has wrong size");
    SampleBatch batch{layout, Matrix(rows, cols)};
    std::size_t offset = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            std::uint64_t bits = 0;
            std::memcpy(&bits, raw.data() + offset, 8);
            offset += 8;
            if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
            batch.samples(i, j) = std::bit_cast<double>(bits);
        }
    }
    return batch;
}

}  // namespace smaa
