#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "svabc/abc.hpp"
#include "svabc/filters.hpp"
#include "svabc/rng.hpp"
#include "svabc/stable.hpp"
#include "svabc/svm.hpp"

namespace svabc {

/// Normal-inverse-Gamma hyperparameters over (tau, phi, sigma2): sigma2 is
/// inverse-Gamma(a, b) and (tau, phi) | sigma2 is bivariate normal with mean
/// mu and covariance sigma2 * lambda^{-1}. lambda is stored row-major and
/// must be symmetric positive definite. Serves as both prior and updated
/// posterior.
struct NigState {
    double a = 2.0;
    double b = 0.5;
    std::array<double, 2> mu = {0.0, 0.9};
    std::array<double, 4> lambda = {1.0, 0.0, 0.0, 1.0};

    [[nodiscard]] bool valid() const noexcept;
    void validate() const;
};

/// Conjugate update from a volatility path h_0..h_T: the regression of
/// log h_t on (1, log h_{t-1}) for t = 1..T with the standard NIG posterior
/// formulas. T = 0 returns the prior unchanged.
NigState nig_update(const NigState& prior, std::span<const double> h);

/// Draw (tau, phi, sigma2) from the NIG law truncated to |phi| < 1 by joint
/// rejection: the whole (sigma2, tau, phi) triple is redrawn until the
/// constraint holds. Throws TruncationFailureError after 10^6 attempts.
SvmParams sample_truncated_nig(const NigState& state, Rng& rng);

enum class FilterKind { AbcCbf, AbcCbfas, AbcCapf };

/// One particle Gibbs chain's settings.
struct PgConfig {
    int n_particles = 100;
    int burn_in = 2000;
    int n_samples = 5000;
    AbcConfig abc;
    StableParams stable{1.75, 0.1, 1.0, 0.0};
    NigState prior;
    FilterKind filter = FilterKind::AbcCapf;
    std::uint64_t seed = 0;
    /// 0 disables trajectory storage; k > 0 keeps every k-th post-burn-in
    /// trajectory. Parameter draws are always stored densely.
    int traj_thin = 0;

    void validate() const;
};

struct PosteriorSample {
    std::vector<SvmParams> theta_draws;
    std::vector<Trajectory> trajectory_draws;
};

struct PgState {
    SvmParams theta;
    Trajectory traj;
};

/// Chain initialization: parameters from the prior, then a forward-simulated
/// trajectory of n_steps volatilities and auxiliary observations under those
/// parameters.
PgState pg_init(const PgConfig& cfg, int n_steps, Rng& rng);

/// One Gibbs sweep: the configured conditional filter replaces the
/// trajectory under the current parameters, then the parameters are redrawn
/// from their conjugate conditional given the new volatility path. The
/// overload taking a ParticleSystem reuses its buffers across sweeps.
void pg_sweep(PgState& state, const Observations& obs, const PgConfig& cfg, Rng& rng);
void pg_sweep(PgState& state, const Observations& obs, const PgConfig& cfg, Rng& rng,
              ParticleSystem& workspace);

/// Full run: init, burn_in + n_samples sweeps, returning the post-burn-in
/// parameter draws (and thinned trajectories when configured). Deterministic
/// per seed.
PosteriorSample run_pg(const Observations& obs, const PgConfig& cfg);

}  // namespace svabc
