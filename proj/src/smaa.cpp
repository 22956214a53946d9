#include "smaa/smaa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace smaa {

std::string to_string(FlowMode mode) { return mode == FlowMode::classical ? "classical" : "bipolar"; }

Matrix SmaaResults::fraction(const CountMatrix& counts) const {
    return counts.cast<double>() / static_cast<double>(sample_count);
}

std::size_t default_thread_count() {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SMAA_THREADS")) {
        char* end = nullptr;
        const long requested = std::strtol(env, &end, 10);
        if (end != env && requested > 0) hw = std::min(hw, static_cast<std::size_t>(requested));
    }
    return hw;
}

namespace {

constexpr Eigen::Index kBlockSize = 2048;

struct Partial {
    CountMatrix rank, p1_pref, p1_indiff, p1_incomp, p2_pref, p2_indiff;
    Matrix first_rank_sums;  ///< m x dimension
    Vector sample_sum;

    Partial(Eigen::Index m, Eigen::Index d)
        : rank(CountMatrix::Zero(m, m)),
          p1_pref(CountMatrix::Zero(m, m)),
          p1_indiff(CountMatrix::Zero(m, m)),
          p1_incomp(CountMatrix::Zero(m, m)),
          p2_pref(CountMatrix::Zero(m, m)),
          p2_indiff(CountMatrix::Zero(m, m)),
          first_rank_sums(Matrix::Zero(m, d)),
          sample_sum(Vector::Zero(d)) {}
};

void process_block(const FlowOperator& op, const Matrix& net_op, const Matrix& samples, Eigen::Index begin,
                   Eigen::Index end, const AggregateOptions& options, Partial& out) {
    const auto block = samples.middleRows(begin, end - begin);
    const Matrix pos = block * op.positive.transpose();
    const Matrix neg = block * op.negative.transpose();
    const Matrix net = block * net_op.transpose();
    const Eigen::Index m = pos.cols();
    const double tol = options.tie_tolerance;

    for (Eigen::Index s = 0; s < block.rows(); ++s) {
        const double gap = (net.row(s) - (pos.row(s) - neg.row(s))).cwiseAbs().maxCoeff();
        const double total = net.row(s).sum();
        if (gap > options.identity_tolerance || std::abs(total) > options.identity_tolerance) {
            throw std::logic_error("flow identity violated at sample " + std::to_string(begin + s));
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            Eigen::Index rank = 1;
            for (Eigen::Index k = 0; k < m; ++k) {
                if (net(s, k) > net(s, i) + tol) ++rank;
            }
            ++out.rank(i, rank - 1);
            if (rank == 1) out.first_rank_sums.row(i) += block.row(s);

            for (Eigen::Index j = i + 1; j < m; ++j) {
                switch (compare_partial(pos(s, i), neg(s, i), pos(s, j), neg(s, j), tol)) {
                    case Outranking::preferred: ++out.p1_pref(i, j); break;
                    case Outranking::preferred_inverse: ++out.p1_pref(j, i); break;
                    case Outranking::indifferent:
                        ++out.p1_indiff(i, j);
                        ++out.p1_indiff(j, i);
                        break;
                    default:
                        ++out.p1_incomp(i, j);
                        ++out.p1_incomp(j, i);
                        break;
                }
                switch (compare_complete(net(s, i), net(s, j), tol)) {
                    case Outranking::preferred: ++out.p2_pref(i, j); break;
                    case Outranking::preferred_inverse: ++out.p2_pref(j, i); break;
                    default:
                        ++out.p2_indiff(i, j);
                        ++out.p2_indiff(j, i);
                        break;
                }
            }
        }
        out.sample_sum += block.row(s).transpose();
    }
}

}  // namespace

SmaaResults aggregate(const PerformanceTable& table, const SampleBatch& batch, FlowMode mode,
                      const AggregateOptions& options) {
    if (batch.size() == 0) throw ValidationError("cannot aggregate an empty sample batch");
    const LayoutKind expected = mode == FlowMode::classical ? LayoutKind::classical : LayoutKind::bipolar;
    if (batch.layout.kind() != expected || batch.layout.criteria() != table.criterion_count()) {
        throw ValidationError("sample layout " + to_string(batch.layout.kind()) + " with " +
                              std::to_string(batch.layout.criteria()) + " criteria does not match " +
                              to_string(mode) + " mode on " + std::to_string(table.criterion_count()) +
                              " criteria");
    }
    if (batch.samples.cols() != static_cast<Eigen::Index>(batch.layout.dimension())) {
        throw ValidationError("sample matrix width does not match its layout");
    }

    const FlowOperator op = make_flow_operator(table, batch.layout);
    const Matrix net_op = op.net();
    const auto m = static_cast<Eigen::Index>(table.alternative_count());
    const Eigen::Index d = batch.samples.cols();
    const Eigen::Index n_samples = batch.size();
    const Eigen::Index n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;

    std::vector<Partial> partials(static_cast<std::size_t>(n_blocks), Partial(m, d));
    const std::size_t workers =
        std::min<std::size_t>(options.threads ? options.threads : default_thread_count(),
                              static_cast<std::size_t>(n_blocks));

    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            for (Eigen::Index b = static_cast<Eigen::Index>(w); b < n_blocks; b += static_cast<Eigen::Index>(workers)) {
                process_block(op, net_op, batch.samples, b * kBlockSize, std::min(n_samples, (b + 1) * kBlockSize),
                              options, partials[static_cast<std::size_t>(b)]);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    Partial total(m, d);
    for (const Partial& p : partials) {
        total.rank += p.rank;
        total.p1_pref += p.p1_pref;
        total.p1_indiff += p.p1_indiff;
        total.p1_incomp += p.p1_incomp;
        total.p2_pref += p.p2_pref;
        total.p2_indiff += p.p2_indiff;
        total.first_rank_sums += p.first_rank_sums;
        total.sample_sum += p.sample_sum;
    }

    SmaaResults r;
    r.mode = mode;
    r.layout = batch.layout;
    r.alternatives = table.alternatives();
    r.sample_count = n_samples;
    r.rank_counts = total.rank;
    r.p1_pref_counts = total.p1_pref;
    r.p1_indiff_counts = total.p1_indiff;
    r.p1_incomp_counts = total.p1_incomp;
    r.p2_pref_counts = total.p2_pref;
    r.p2_indiff_counts = total.p2_indiff;
    r.barycenter = total.sample_sum / static_cast<double>(n_samples);
    r.central_weights.resize(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        const std::int64_t firsts = total.rank(i, 0);
        if (firsts > 0) {
            r.central_weights[static_cast<std::size_t>(i)] =
                Vector(total.first_rank_sums.row(i).transpose() / static_cast<double>(firsts));
        }
    }
    r.ror_necessary_approx = BoolMatrix::Constant(m, m, true);
    r.ror_possible_approx = BoolMatrix::Constant(m, m, true);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i == j) continue;
            r.ror_necessary_approx(i, j) = r.p2_pref_counts(i, j) + r.p2_indiff_counts(i, j) == n_samples;
            r.ror_possible_approx(i, j) = r.p2_pref_counts(i, j) + r.p2_indiff_counts(i, j) > 0;
        }
    }

    if (const std::string problem = check_count_invariants(r); !problem.empty()) {
        throw std::logic_error("SMAA invariant violated: " + problem);
    }
    return r;
}

std::string check_count_invariants(const SmaaResults& r) {
    const auto m = static_cast<Eigen::Index>(r.alternative_count());
    const std::int64_t n = r.sample_count;
    if (n <= 0) return "sample_count must be positive";
    for (Eigen::Index i = 0; i < m; ++i) {
        if (r.rank_counts.row(i).sum() != n) return "rank row " + std::to_string(i) + " does not sum to 1";
        for (Eigen::Index j = 0; j < m; ++j) {
            const std::string pair = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (i == j) {
                if (r.p1_pref_counts(i, i) || r.p2_pref_counts(i, i) || r.p1_indiff_counts(i, i) ||
                    r.p1_incomp_counts(i, i) || r.p2_indiff_counts(i, i)) {
                    return "non-zero diagonal at " + pair;
                }
                continue;
            }
            if (r.p1_pref_counts(i, j) + r.p1_pref_counts(j, i) + r.p1_indiff_counts(i, j) + r.p1_incomp_counts(i, j) !=
                n) {
                return "PROMETHEE I frequencies do not partition " + pair;
            }
            if (r.p1_indiff_counts(i, j) != r.p1_indiff_counts(j, i) ||
                r.p1_incomp_counts(i, j) != r.p1_incomp_counts(j, i)) {
                return "PROMETHEE I indifference/incomparability not symmetric at " + pair;
            }
            if (r.p2_pref_counts(i, j) + r.p2_pref_counts(j, i) + r.p2_indiff_counts(i, j) != n) {
                return "PROMETHEE II frequencies do not partition " + pair;
            }
            if (r.ror_necessary_approx(i, j) && !r.ror_possible_approx(i, j)) {
                return "approximate necessary without possible at " + pair;
            }
        }
    }
    return {};
}

double max_convexity_violation(const SmaaResults& r, const ConstraintSystem& system, double delta) {
    if (system.layout() != r.layout) throw ValidationError("system layout does not match the results");
    double worst = system.max_violation(r.barycenter, delta);
    for (const auto& c : r.central_weights) {
        if (c) worst = std::max(worst, system.max_violation(*c, delta));
    }
    return worst;
}

SampleBatch classical_projection(const SampleBatch& batch) {
    if (batch.layout.kind() != LayoutKind::bipolar) throw ValidationError("classical projection needs a bipolar batch");
    const std::size_t n = batch.layout.criteria();
    SampleBatch out{ParamLayout::classical(n), Matrix(batch.size(), static_cast<Eigen::Index>(n))};
    for (std::size_t j = 0; j < n; ++j) {
        out.samples.col(static_cast<Eigen::Index>(j)) = batch.samples.col(static_cast<Eigen::Index>(batch.layout.weight(j)));
    }
    return out;
}

RorValidation validate_against_exact_ror(const SmaaResults& results, const ConstraintSystem& system,
                                         const PerformanceTable& table, const RorOptions& options) {
    if (system.layout() != results.layout) throw ValidationError("system layout does not match the results");
    RorValidation v;
    v.exact = exact_ror(system, make_flow_operator(table, system.layout()), options);
    const std::size_t m = results.alternative_count();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            const bool approx_nec = results.ror_necessary_approx(ii, jj);
            const bool approx_pos = results.ror_possible_approx(ii, jj);
            if (v.exact.necessary[i][j] && !approx_nec) v.violations.push_back({i, j, "necessary without frequency 1"});
            const bool preferred_somewhere = results.p2_pref_counts(ii, jj) > 0;
            if ((preferred_somewhere || approx_pos) && !v.exact.possible[i][j]) {
                v.violations.push_back({i, j, "frequency > 0 without possible"});
            }
            if (approx_nec && !v.exact.necessary[i][j]) v.converse.push_back({i, j, "frequency 1 without necessary"});
            if (v.exact.possible[i][j] && !approx_pos) v.converse.push_back({i, j, "possible with zero frequency"});
        }
    }
    return v;
}

}  // namespace smaa
