#include "svabc/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svabc/errors.hpp"

namespace svabc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi2 = 9.869604401089358618834490999876151135;  // pi^2

double softplus(double x) {
    if (x > 0.0) {
        return x + std::log1p(std::exp(-x));
    }
    return std::log1p(std::exp(x));
}

/// Normalize a log-weight row in place by max-subtraction so the row maximum
/// is 0. A fully degenerate row (all -inf) throws, except for a single
/// particle where the self-normalized weight is 1 by definition.
void normalize_row(std::span<double> lw) {
    double max = kNegInf;
    for (double v : lw) {
        max = std::max(max, v);
    }
    if (max == kNegInf) {
        if (lw.size() == 1) {
            lw[0] = 0.0;
            return;
        }
        throw DegenerateWeightsError(
            "all particle weights are zero; the ABC bandwidth is too small for the data scale");
    }
    for (double& v : lw) {
        v -= max;
    }
}

/// Cumulative linear weights from a log row; returns total mass.
double build_cumulative(std::span<const double> lw, std::vector<double>& cum) {
    cum.resize(lw.size());
    double total = 0.0;
    double max = kNegInf;
    for (double v : lw) {
        max = std::max(max, v);
    }
    if (max == kNegInf) {
        throw DegenerateWeightsError("all particle weights are zero");
    }
    for (std::size_t i = 0; i < lw.size(); ++i) {
        total += std::exp(lw[i] - max);
        cum[i] = total;
    }
    return total;
}

std::uint32_t draw_index(const std::vector<double>& cum, double total, Rng& rng) {
    const double x = rng.uniform() * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), x);
    const auto idx = static_cast<std::uint32_t>(it - cum.begin());
    return std::min(idx, static_cast<std::uint32_t>(cum.size() - 1));
}

struct Scratch {
    std::vector<double> cum;
    std::vector<double> ancestor_lw;
};

bool is_abc(CsmcKind kind) {
    return kind == CsmcKind::AbcCbf || kind == CsmcKind::AbcCbfas ||
           kind == CsmcKind::AbcCapf;
}

}  // namespace

std::vector<std::uint32_t> multinomial_resample(std::span<const double> log_weights,
                                                int n_draws, Rng& rng) {
    if (log_weights.empty()) {
        throw DomainError("multinomial_resample: empty weight vector");
    }
    if (n_draws < 0) {
        throw DomainError("multinomial_resample: n_draws must be nonnegative");
    }
    std::vector<double> cum;
    const double total = build_cumulative(log_weights, cum);
    std::vector<std::uint32_t> out(static_cast<std::size_t>(n_draws));
    for (auto& idx : out) {
        idx = draw_index(cum, total, rng);
    }
    return out;
}

double tempered_logweight(double r_t, double h_prev, const SvmParams& theta) {
    if (!(h_prev > 0.0)) {
        throw DomainError("tempered_logweight: h_prev must be positive");
    }
    theta.validate();
    if (r_t == 0.0) {
        return 0.0;
    }
    const double c = std::sqrt(kPi2 / (theta.sigma2 + kPi2));
    const double x = c * (std::log(r_t * r_t) - theta.tau - theta.phi * std::log(h_prev));
    return -softplus(x);
}

int run_csmc(CsmcKind kind, const CsmcInputs& in, Rng& rng, ParticleSystem& sys) {
    const Observations& obs = *in.obs;
    const Trajectory& ref = *in.ref;
    const SvmParams& theta = *in.theta;
    theta.validate();
    const int n_steps = static_cast<int>(obs.r.size());
    const int n = in.n_particles;
    if (n < 1) {
        throw DomainError("run_csmc: need at least one particle");
    }
    if (ref.h.size() != static_cast<std::size_t>(n_steps) + 1) {
        throw DomainError("run_csmc: reference length does not match observations");
    }
    for (double h : ref.h) {
        if (!(h > 0.0)) {
            throw DomainError("run_csmc: reference volatilities must be positive");
        }
    }
    const bool abc = is_abc(kind);
    const bool capf = kind == CsmcKind::AbcCapf;
    if (abc) {
        in.abc->validate();
    }

    sys.n_particles = n;
    sys.n_steps = n_steps;
    sys.log_h.assign(static_cast<std::size_t>(n_steps + 1) * n, 0.0);
    sys.u.assign(abc ? static_cast<std::size_t>(n_steps) * n : 0, 0.0);
    sys.ancestors.assign(static_cast<std::size_t>(n_steps) * n, 0);
    sys.log_w.assign(static_cast<std::size_t>(n_steps + 1) * n, 0.0);
    sys.log_w_tempered.assign(capf ? static_cast<std::size_t>(n_steps) * n : 0, 0.0);
    sys.selected = -1;

    const double init_mean = theta.tau / (1.0 - theta.phi);
    const double init_sd = std::sqrt(theta.sigma2 / (1.0 - theta.phi * theta.phi));
    const double sigma_h = std::sqrt(theta.sigma2);
    const double temper_c = std::sqrt(kPi2 / (theta.sigma2 + kPi2));

    StableSampler noise =
        abc ? StableSampler(*in.stable) : StableSampler(StableParams{});

    double* row0 = sys.log_h.data();
    for (int i = 0; i < n - 1; ++i) {
        row0[i] = init_mean + init_sd * rng.normal();
    }
    row0[n - 1] = std::log(ref.h[0]);
    // initial weights are uniform; the normalized row is identically zero

    Scratch scratch;
    for (int t = 1; t <= n_steps; ++t) {
        const double r_t = obs.r[static_cast<std::size_t>(t - 1)];
        const double log_r2 = r_t == 0.0 ? kNegInf : std::log(r_t * r_t);
        const double* prev_h = sys.log_h.data() + static_cast<std::size_t>(t - 1) * n;
        double* cur_h = sys.log_h.data() + static_cast<std::size_t>(t) * n;
        const double* prev_w = sys.log_w.data() + static_cast<std::size_t>(t - 1) * n;
        double* cur_w = sys.log_w.data() + static_cast<std::size_t>(t) * n;
        std::uint32_t* anc = sys.ancestors.data() + static_cast<std::size_t>(t - 1) * n;

        // Tempered log weight of particle i for the upcoming observation,
        // without the accumulated w_{t-1} part.
        auto temper = [&](int i) {
            if (log_r2 == kNegInf) {
                return 0.0;
            }
            return -softplus(temper_c * (log_r2 - theta.tau - theta.phi * prev_h[i]));
        };

        // resampling weights for the free slots
        double total = 0.0;
        if (capf) {
            double* tw = sys.log_w_tempered.data() + static_cast<std::size_t>(t - 1) * n;
            for (int i = 0; i < n; ++i) {
                tw[i] = prev_w[i] + temper(i);
            }
            normalize_row({tw, static_cast<std::size_t>(n)});
            if (n > 1) {
                total = build_cumulative({tw, static_cast<std::size_t>(n)}, scratch.cum);
            }
        } else if (n > 1) {
            total = build_cumulative({prev_w, static_cast<std::size_t>(n)}, scratch.cum);
        }
        for (int i = 0; i < n - 1; ++i) {
            anc[i] = draw_index(scratch.cum, total, rng);
        }

        // reference-slot ancestor
        const double ref_log_h = std::log(ref.h[static_cast<std::size_t>(t)]);
        if (kind == CsmcKind::Cbfas || kind == CsmcKind::AbcCbfas) {
            if (n == 1) {
                anc[n - 1] = 0;
            } else {
                scratch.ancestor_lw.resize(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) {
                    const double z = ref_log_h - theta.tau - theta.phi * prev_h[i];
                    scratch.ancestor_lw[i] =
                        prev_w[i] - 0.5 * z * z / theta.sigma2;  // shared factors drop out
                }
                const double anc_total = build_cumulative(scratch.ancestor_lw, scratch.cum);
                anc[n - 1] = draw_index(scratch.cum, anc_total, rng);
            }
        } else {
            anc[n - 1] = static_cast<std::uint32_t>(n - 1);
        }

        // propagate
        for (int i = 0; i < n - 1; ++i) {
            cur_h[i] = theta.tau + theta.phi * prev_h[anc[i]] + sigma_h * rng.normal();
        }
        cur_h[n - 1] = ref_log_h;

        // weights
        if (abc) {
            double* cur_u = sys.u.data() + static_cast<std::size_t>(t - 1) * n;
            for (int i = 0; i < n; ++i) {
                cur_u[i] = std::exp(0.5 * cur_h[i]) * noise(rng);
            }
            if (capf) {
                for (int i = 0; i < n - 1; ++i) {
                    cur_w[i] = -temper(static_cast<int>(anc[i])) +
                               log_kernel(*in.abc, r_t, cur_u[i]);
                }
                cur_w[n - 1] = log_kernel(*in.abc, r_t, cur_u[n - 1]);
                if (in.ref_weight_ratio) {
                    cur_w[n - 1] -= temper(n - 1);
                }
            } else {
                for (int i = 0; i < n; ++i) {
                    cur_w[i] = log_kernel(*in.abc, r_t, cur_u[i]);
                }
            }
        } else {
            const LogLikFn& lik = *in.lik;
            for (int i = 0; i < n; ++i) {
                cur_w[i] = lik(r_t, std::exp(cur_h[i]));
            }
        }
        normalize_row({cur_w, static_cast<std::size_t>(n)});
    }

    if (n == 1) {
        sys.selected = 0;
    } else {
        const double* last_w = sys.log_w.data() + static_cast<std::size_t>(n_steps) * n;
        const double total =
            build_cumulative({last_w, static_cast<std::size_t>(n)}, scratch.cum);
        sys.selected = static_cast<int>(draw_index(scratch.cum, total, rng));
    }
    return sys.selected;
}

Trajectory extract_path(const ParticleSystem& sys, const Trajectory& ref) {
    const int n = sys.n_particles;
    const int n_steps = sys.n_steps;
    Trajectory out;
    out.h.resize(static_cast<std::size_t>(n_steps) + 1);
    if (!sys.u.empty()) {
        out.u.resize(static_cast<std::size_t>(n_steps));
    }
    int idx = sys.selected;
    for (int t = n_steps; t >= 1; --t) {
        out.h[static_cast<std::size_t>(t)] =
            idx == n - 1 ? ref.h[static_cast<std::size_t>(t)]
                         : std::exp(sys.log_h_at(t, idx));
        if (!sys.u.empty()) {
            out.u[static_cast<std::size_t>(t - 1)] = sys.u_at(t, idx);
        }
        idx = static_cast<int>(sys.ancestor_at(t, idx));
    }
    out.h[0] = idx == n - 1 ? ref.h[0] : std::exp(sys.log_h_at(0, idx));
    return out;
}

namespace {

Trajectory run_and_extract(CsmcKind kind, const CsmcInputs& in, Rng& rng) {
    ParticleSystem sys;
    run_csmc(kind, in, rng, sys);
    return extract_path(sys, *in.ref);
}

}  // namespace

Trajectory cbf(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
               const LogLikFn& lik, int n_particles, Rng& rng) {
    CsmcInputs in;
    in.obs = &obs;
    in.ref = &ref;
    in.theta = &theta;
    in.lik = &lik;
    in.n_particles = n_particles;
    return run_and_extract(CsmcKind::Cbf, in, rng);
}

Trajectory cbfas(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                 const LogLikFn& lik, int n_particles, Rng& rng) {
    CsmcInputs in;
    in.obs = &obs;
    in.ref = &ref;
    in.theta = &theta;
    in.lik = &lik;
    in.n_particles = n_particles;
    return run_and_extract(CsmcKind::Cbfas, in, rng);
}

Trajectory abc_cbf(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                   const StableParams& stable, const AbcConfig& abc, int n_particles,
                   Rng& rng) {
    CsmcInputs in;
    in.obs = &obs;
    in.ref = &ref;
    in.theta = &theta;
    in.stable = &stable;
    in.abc = &abc;
    in.n_particles = n_particles;
    return run_and_extract(CsmcKind::AbcCbf, in, rng);
}

Trajectory abc_cbfas(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                     const StableParams& stable, const AbcConfig& abc, int n_particles,
                     Rng& rng) {
    CsmcInputs in;
    in.obs = &obs;
    in.ref = &ref;
    in.theta = &theta;
    in.stable = &stable;
    in.abc = &abc;
    in.n_particles = n_particles;
    return run_and_extract(CsmcKind::AbcCbfas, in, rng);
}

Trajectory abc_capf(const Observations& obs, const Trajectory& ref, const SvmParams& theta,
                    const StableParams& stable, const AbcConfig& abc, int n_particles,
                    Rng& rng) {
    CsmcInputs in;
    in.obs = &obs;
    in.ref = &ref;
    in.theta = &theta;
    in.stable = &stable;
    in.abc = &abc;
    in.n_particles = n_particles;
    return run_and_extract(CsmcKind::AbcCapf, in, rng);
}

}  // namespace svabc
