#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "svabc/abc.hpp"
#include "svabc/rng.hpp"
#include "svabc/stable.hpp"
#include "svabc/svm.hpp"

namespace svabc {

/// Log observation density l_t(r_t | h_t); only the tractable-likelihood
/// filters (cbf, cbfas) evaluate it.
using LogLikFn = std::function<double(double r, double h)>;

/// i.i.d. categorical draws with probabilities proportional to
/// exp(log_weights - max). Throws DegenerateWeightsError when every weight is
/// -inf (total rejection under a uniform ABC kernel).
std::vector<std::uint32_t> multinomial_resample(std::span<const double> log_weights,
                                                int n_draws, Rng& rng);

/// Full record of one conditional SMC pass over T observations with N
/// particles. States are carried on the log scale; the reference slot is
/// always index N-1. All per-step weight rows are normalized so that the row
/// maximum is exactly 0.
struct ParticleSystem {
    int n_particles = 0;
    int n_steps = 0;
    std::vector<double> log_h;           // (T+1) x N, row t holds log h_t
    std::vector<double> u;               // T x N, ABC variants only
    std::vector<std::uint32_t> ancestors;  // T x N, row t-1 holds a_{t-1}
    std::vector<double> log_w;           // (T+1) x N, normalized per row
    std::vector<double> log_w_tempered;  // T x N, auxiliary filter only
    int selected = -1;

    [[nodiscard]] double log_h_at(int t, int n) const {
        return log_h[static_cast<std::size_t>(t) * n_particles + n];
    }
    [[nodiscard]] double u_at(int t, int n) const {  // t in 1..T
        return u[static_cast<std::size_t>(t - 1) * n_particles + n];
    }
    [[nodiscard]] std::uint32_t ancestor_at(int t, int n) const {  // t in 1..T
        return ancestors[static_cast<std::size_t>(t - 1) * n_particles + n];
    }
    [[nodiscard]] std::span<const double> log_w_row(int t) const {
        return {log_w.data() + static_cast<std::size_t>(t) * n_particles,
                static_cast<std::size_t>(n_particles)};
    }
};

enum class CsmcKind { Cbf, Cbfas, AbcCbf, AbcCbfas, AbcCapf };

/// Everything a single conditional SMC pass needs. Exactly one of `lik`
/// (tractable kinds) or `stable` + `abc` (ABC kinds) must be set.
struct CsmcInputs {
    const Observations* obs = nullptr;
    const Trajectory* ref = nullptr;
    const SvmParams* theta = nullptr;
    const StableParams* stable = nullptr;
    const AbcConfig* abc = nullptr;
    const LogLikFn* lik = nullptr;
    int n_particles = 0;
    /// When true the reference slot's terminal-step weight carries the same
    /// tempered-weight correction as the generated particles. Off by default:
    /// the reference keeps the plain kernel weight. Test instrumentation only.
    bool ref_weight_ratio = false;
};

/// Run one conditional SMC pass, filling `sys` (buffers are reused across
/// calls). Returns the selected particle index, also stored in sys.selected.
int run_csmc(CsmcKind kind, const CsmcInputs& in, Rng& rng, ParticleSystem& sys);

/// Back-trace the selected ancestry into a trajectory. Positions occupied by
/// the reference slot reproduce the reference volatilities bit-exactly.
Trajectory extract_path(const ParticleSystem& sys, const Trajectory& ref);

/// Log of the approximate one-step-ahead predictive weight used by the
/// auxiliary filter's resampling step: a Cauchy surrogate for the return
/// noise gives
///   -log(1 + (r^2)^c exp(-c (tau + phi log h_prev))),
///   c = sqrt(pi^2 / (sigma2 + pi^2)),
/// evaluated in softplus form. r = 0 returns 0 (unit weight).
double tempered_logweight(double r_t, double h_prev, const SvmParams& theta);

/// Conditional bootstrap filter: the reference slot is pinned at every step
/// and weights come from the tractable likelihood.
Trajectory cbf(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
               const LogLikFn& lik, int n_particles, Rng& rng);

/// Conditional bootstrap filter with ancestor sampling: the reference state
/// is pinned but its ancestor index is drawn from
/// w_{t-1}^(n) g_t(h_t* | h_{t-1}^(n)).
Trajectory cbfas(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                 const LogLikFn& lik, int n_particles, Rng& rng);

/// ABC bootstrap variant: each particle draws an auxiliary observation
/// u_t ~ sqrt(h_t) Z and is weighted by K_eps(r_t | u_t). The reference
/// slot's u is refreshed every pass.
Trajectory abc_cbf(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                   const StableParams& stable, const AbcConfig& abc, int n_particles,
                   Rng& rng);

/// ABC variant with ancestor sampling for the reference slot.
Trajectory abc_cbfas(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                     const StableParams& stable, const AbcConfig& abc, int n_particles,
                     Rng& rng);

/// ABC conditional auxiliary particle filter: resampling uses tempered
/// weights w~_{t-1} = w_{t-1} * predictive(r_t | h_{t-1}); the new weights
/// carry the ratio w_{t-1}/w~_{t-1} so the pass targets the same law as
/// abc_cbf.
Trajectory abc_capf(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                    const StableParams& stable, const AbcConfig& abc, int n_particles,
                    Rng& rng);

}  // namespace svabc
