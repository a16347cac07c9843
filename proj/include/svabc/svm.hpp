#pragma once

#include <utility>
#include <vector>

#include "svabc/rng.hpp"
#include "svabc/stable.hpp"

namespace svabc {

/// Log-volatility dynamics parameters: log(h_t) = tau + phi log(h_{t-1}) + sigma_h eps_t
/// with eps_t standard normal. |phi| < 1 and sigma2 = sigma_h^2 > 0.
struct SvmParams {
    double tau = 0.0;
    double phi = 0.9;
    double sigma2 = 0.1;

    [[nodiscard]] bool valid() const noexcept;
    void validate() const;
};

/// A latent path: volatilities h_0..h_T plus, for the ABC filters, the
/// auxiliary observations u_1..u_T. h[0] pairs with no u; u.size() is either
/// 0 (volatility-only path) or h.size() - 1.
struct Trajectory {
    std::vector<double> h;
    std::vector<double> u;
};

/// Observed returns r_1..r_T.
struct Observations {
    std::vector<double> r;
};

/// A simulation-design point: persistence phi, squared coefficient of
/// variation of h_t, and stationary mean of h_t.
struct GridPoint {
    double phi = 0.9;
    double cv = 1.0;
    double mean_h = 0.0009;

    [[nodiscard]] bool valid() const noexcept;
    void validate() const;
};

/// Draw h_0 from the stationary law Log-normal(tau/(1-phi), sigma2/(1-phi^2)).
double initial_sample(const SvmParams& theta, Rng& rng);

/// Draw h_t | h_{t-1}: exp(tau + phi log(h_prev) + sigma_h z).
double transition_sample(double h_prev, const SvmParams& theta, Rng& rng);

/// Log density of h_t | h_{t-1} (log-normal on h_t, including the 1/h_t
/// Jacobian).
double transition_logdensity(double h_t, double h_prev, const SvmParams& theta);

/// Draw sqrt(h_t) * Z with Z from the given stable sampler. Generates both
/// observed returns and ABC auxiliary observations.
double emit_return(double h_t, const StableSampler& noise, Rng& rng);
double emit_return(double h_t, const StableParams& noise, Rng& rng);

/// Simulate a volatility path h_0..h_T and returns r_1..r_T.
std::pair<std::vector<double>, Observations> simulate(const SvmParams& theta,
                                                      const StableParams& noise,
                                                      int n_steps, Rng& rng);

/// Invert (phi, CV, E h) to (tau, phi, sigma_h^2):
///   sigma2 = (1 - phi^2) log(1 + CV)
///   tau    = (1 - phi) [log(mean_h) - sigma2 / (2 (1 - phi^2))]
SvmParams grid_params(const GridPoint& g);

}  // namespace svabc
