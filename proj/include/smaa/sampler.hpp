#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "smaa/elicitation.hpp"
#include "smaa/lp.hpp"

namespace smaa {

/// The constraint system admits no parameter vector with epsilon above delta_strict.
class IncompatibleError : public ValidationError {
public:
    IncompatibleError(const std::string& what, double epsilon_star)
        : ValidationError(what), epsilon_star_(epsilon_star) {}
    double epsilon_star() const { return epsilon_star_; }

private:
    double epsilon_star_;
};

struct SamplerConfig {
    std::size_t sample_count = 100000;
    std::size_t burn_in = 1000;
    std::size_t thinning = 1;
    std::uint64_t seed = 0;
    /// Epsilon value the sampled polytope is cut at; 0 samples the closure of the strict rows.
    double delta_strict = 0.0;
    std::size_t direction_retries = 100;
    LpOptions lp;
};

/// Compatible polytope in reduced coordinates: theta = offset + basis * y with
/// inequalities * y <= bounds. basis spans the null space of the equality rows.
struct ReducedPolytope {
    ParamLayout layout;
    Vector offset;       ///< interior point (Chebyshev-style centre), satisfies the equalities
    Matrix basis;        ///< dimension x reduced, orthonormal columns
    Matrix inequalities; ///< rows x reduced
    Vector bounds;       ///< slack of each inequality at the offset
    double epsilon_star = 0.0;
    double delta = 0.0;
    double inradius = 0.0;

    Eigen::Index reduced_dimension() const { return basis.cols(); }
    Vector lift(const Vector& y) const { return offset + basis * y; }
};

/// Fixes epsilon at delta_strict, eliminates equalities through an orthonormal null-space basis
/// (column-pivoted Householder QR) and centres the start point. Throws IncompatibleError when
/// max epsilon does not exceed delta_strict.
ReducedPolytope build_polytope(const ConstraintSystem& system, double delta_strict, const LpOptions& options = {});

/// Sampled parameter vectors, one per row.
struct SampleBatch {
    ParamLayout layout;
    Matrix samples;

    Eigen::Index size() const { return samples.rows(); }
};

/// Hit-and-run chain: isotropic direction, uniform point on the chord, burn-in then thinning.
SampleBatch hit_and_run(const ReducedPolytope& polytope, const SamplerConfig& config);

/// build_polytope + hit_and_run.
SampleBatch sample_compatible(const ConstraintSystem& system, const SamplerConfig& config);

/// Raw 64-bit engine plus deterministic transforms (no std::*_distribution, whose output is
/// implementation defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Row-major little-endian float64 dump plus a JSON sidecar describing the columns.
void save_batch(const SampleBatch& batch, const std::filesystem::path& bin_path,
                const std::filesystem::path& sidecar_path);
SampleBatch load_batch(const std::filesystem::path& bin_path, const std::filesystem::path& sidecar_path);

}  // namespace smaa
