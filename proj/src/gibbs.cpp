#include "svabc/gibbs.hpp"

#include <cmath>
#include <sstream>

#include "svabc/errors.hpp"

namespace svabc {

namespace {

constexpr int kTruncationBudget = 1'000'000;

// 2x2 symmetric solve helpers; the parameter block is fixed at dimension 2
// so closed forms beat a linear-algebra dependency.

struct Sym2 {
    double xx, xy, yy;  // [[xx, xy], [xy, yy]]

    [[nodiscard]] double det() const { return xx * yy - xy * xy; }

    [[nodiscard]] std::array<double, 2> solve(const std::array<double, 2>& v) const {
        const double d = det();
        return {(yy * v[0] - xy * v[1]) / d, (xx * v[1] - xy * v[0]) / d};
    }

    [[nodiscard]] double quad(const std::array<double, 2>& v) const {
        return xx * v[0] * v[0] + 2.0 * xy * v[0] * v[1] + yy * v[1] * v[1];
    }
};

Sym2 as_sym(const std::array<double, 4>& m) { return {m[0], m[1], m[3]}; }

}  // namespace

bool NigState::valid() const noexcept {
    const bool symmetric = lambda[1] == lambda[2];
    const double det = lambda[0] * lambda[3] - lambda[1] * lambda[2];
    return a > 0.0 && b > 0.0 && symmetric && lambda[0] > 0.0 && det > 0.0 &&
           std::isfinite(mu[0]) && std::isfinite(mu[1]);
}

void NigState::validate() const {
    if (!valid()) {
        throw DomainError("NigState: require a > 0, b > 0, lambda symmetric positive definite");
    }
}

NigState nig_update(const NigState& prior, std::span<const double> h) {
    prior.validate();
    if (h.empty()) {
        throw DomainError("nig_update: need at least h_0");
    }
    for (double v : h) {
        if (!(v > 0.0)) {
            throw DomainError("nig_update: volatilities must be positive");
        }
    }
    const std::size_t n_obs = h.size() - 1;
    if (n_obs == 0) {
        return prior;
    }

    double sum_x = 0.0, sum_xx = 0.0, sum_y = 0.0, sum_yy = 0.0, sum_xy = 0.0;
    double x = std::log(h[0]);
    for (std::size_t t = 1; t <= n_obs; ++t) {
        const double y = std::log(h[t]);
        sum_x += x;
        sum_xx += x * x;
        sum_y += y;
        sum_yy += y * y;
        sum_xy += x * y;
        x = y;
    }

    const Sym2 lambda0 = as_sym(prior.lambda);
    const Sym2 lambda_post{lambda0.xx + static_cast<double>(n_obs),
                           lambda0.xy + sum_x, lambda0.yy + sum_xx};
    const std::array<double, 2> rhs = {
        lambda0.xx * prior.mu[0] + lambda0.xy * prior.mu[1] + sum_y,
        lambda0.xy * prior.mu[0] + lambda0.yy * prior.mu[1] + sum_xy};
    const std::array<double, 2> mu_post = lambda_post.solve(rhs);

    NigState post;
    post.a = prior.a + 0.5 * static_cast<double>(n_obs);
    post.b = prior.b + 0.5 * (sum_yy + lambda0.quad(prior.mu) - lambda_post.quad(mu_post));
    post.mu = mu_post;
    post.lambda = {lambda_post.xx, lambda_post.xy, lambda_post.xy, lambda_post.yy};
    return post;
}

SvmParams sample_truncated_nig(const NigState& state, Rng& rng) {
    state.validate();
    const Sym2 lambda = as_sym(state.lambda);
    const double det = lambda.det();
    // covariance factor of lambda^{-1} (unit sigma2): lower Cholesky
    const double inv_xx = lambda.yy / det;
    const double inv_xy = -lambda.xy / det;
    const double inv_yy = lambda.xx / det;
    const double l11 = std::sqrt(inv_xx);
    const double l21 = inv_xy / l11;
    const double l22 = std::sqrt(inv_yy - l21 * l21);

    for (int attempt = 0; attempt < kTruncationBudget; ++attempt) {
        const double sigma2 = state.b / sample_gamma(state.a, rng);
        const double scale = std::sqrt(sigma2);
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const double tau = state.mu[0] + scale * l11 * z1;
        const double phi = state.mu[1] + scale * (l21 * z1 + l22 * z2);
        if (std::abs(phi) < 1.0) {
            return {tau, phi, sigma2};
        }
    }
    std::ostringstream msg;
    msg << "sample_truncated_nig: no draw with |phi| < 1 after " << kTruncationBudget
        << " attempts (a=" << state.a << ", b=" << state.b << ", mu=[" << state.mu[0]
        << ", " << state.mu[1] << "], lambda=[" << state.lambda[0] << ", "
        << state.lambda[1] << "; " << state.lambda[2] << ", " << state.lambda[3] << "])";
    throw TruncationFailureError(msg.str());
}

void PgConfig::validate() const {
    if (n_particles < 1) {
        throw DomainError("PgConfig: n_particles must be at least 1");
    }
    if (n_samples < 1 || burn_in < 0 || traj_thin < 0) {
        throw DomainError("PgConfig: invalid run lengths");
    }
    abc.validate();
    stable.validate();
    prior.validate();
}

PgState pg_init(const PgConfig& cfg, int n_steps, Rng& rng) {
    cfg.validate();
    if (n_steps < 0) {
        throw DomainError("pg_init: n_steps must be nonnegative");
    }
    PgState state;
    state.theta = sample_truncated_nig(cfg.prior, rng);
    const StableSampler noise(cfg.stable);
    state.traj.h.reserve(static_cast<std::size_t>(n_steps) + 1);
    state.traj.u.reserve(static_cast<std::size_t>(n_steps));
    state.traj.h.push_back(initial_sample(state.theta, rng));
    for (int t = 1; t <= n_steps; ++t) {
        state.traj.h.push_back(transition_sample(state.traj.h.back(), state.theta, rng));
        state.traj.u.push_back(emit_return(state.traj.h.back(), noise, rng));
    }
    return state;
}

namespace {

CsmcKind to_csmc(FilterKind kind) {
    switch (kind) {
        case FilterKind::AbcCbf:
            return CsmcKind::AbcCbf;
        case FilterKind::AbcCbfas:
            return CsmcKind::AbcCbfas;
        case FilterKind::AbcCapf:
        default:
            return CsmcKind::AbcCapf;
    }
}

}  // namespace

void pg_sweep(PgState& state, const Observations& obs, const PgConfig& cfg, Rng& rng,
              ParticleSystem& workspace) {
    CsmcInputs in;
    in.obs = &obs;
    in.ref = &state.traj;
    in.theta = &state.theta;
    in.stable = &cfg.stable;
    in.abc = &cfg.abc;
    in.n_particles = cfg.n_particles;
    run_csmc(to_csmc(cfg.filter), in, rng, workspace);
    state.traj = extract_path(workspace, state.traj);
    const NigState post = nig_update(cfg.prior, state.traj.h);
    state.theta = sample_truncated_nig(post, rng);
}

void pg_sweep(PgState& state, const Observations& obs, const PgConfig& cfg, Rng& rng) {
    ParticleSystem sys;
    pg_sweep(state, obs, cfg, rng, sys);
}

PosteriorSample run_pg(const Observations& obs, const PgConfig& cfg) {
    cfg.validate();
    if (obs.r.empty()) {
        throw DomainError("run_pg: observations must be non-empty");
    }
    Rng rng(cfg.seed);
    PgState state = pg_init(cfg, static_cast<int>(obs.r.size()), rng);

    PosteriorSample out;
    out.theta_draws.reserve(static_cast<std::size_t>(cfg.n_samples));
    ParticleSystem workspace;
    const int total = cfg.burn_in + cfg.n_samples;
    for (int sweep = 1; sweep <= total; ++sweep) {
        pg_sweep(state, obs, cfg, rng, workspace);
        if (sweep > cfg.burn_in) {
            out.theta_draws.push_back(state.theta);
            const int kept = sweep - cfg.burn_in;
            if (cfg.traj_thin > 0 && (kept - 1) % cfg.traj_thin == 0) {
                out.trajectory_draws.push_back(state.traj);
            }
        }
    }
    return out;
}

}  // namespace svabc
