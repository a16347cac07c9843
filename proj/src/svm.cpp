#include "svabc/svm.hpp"

#include <cmath>

#include "svabc/errors.hpp"

namespace svabc {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454835606594728112352797;
}

bool SvmParams::valid() const noexcept {
    return std::abs(phi) < 1.0 && sigma2 > 0.0 && std::isfinite(tau) &&
           std::isfinite(sigma2);
}

void SvmParams::validate() const {
    if (!valid()) {
        throw DomainError("SvmParams: require |phi| < 1, sigma2 > 0, tau finite");
    }
}

bool GridPoint::valid() const noexcept {
    return cv > 0.0 && std::abs(phi) < 1.0 && mean_h > 0.0;
}

void GridPoint::validate() const {
    if (!valid()) {
        throw DomainError("GridPoint: require cv > 0, |phi| < 1, mean_h > 0");
    }
}

double initial_sample(const SvmParams& theta, Rng& rng) {
    theta.validate();
    const double m = theta.tau / (1.0 - theta.phi);
    const double s = std::sqrt(theta.sigma2 / (1.0 - theta.phi * theta.phi));
    return std::exp(m + s * rng.normal());
}

double transition_sample(double h_prev, const SvmParams& theta, Rng& rng) {
    if (!(h_prev > 0.0)) {
        throw DomainError("transition_sample: h_prev must be positive");
    }
    theta.validate();
    return std::exp(theta.tau + theta.phi * std::log(h_prev) +
                    std::sqrt(theta.sigma2) * rng.normal());
}

double transition_logdensity(double h_t, double h_prev, const SvmParams& theta) {
    if (!(h_t > 0.0) || !(h_prev > 0.0)) {
        throw DomainError("transition_logdensity: volatilities must be positive");
    }
    theta.validate();
    const double log_h = std::log(h_t);
    const double mean = theta.tau + theta.phi * std::log(h_prev);
    const double z = log_h - mean;
    return -0.5 * (kLogTwoPi + std::log(theta.sigma2)) -
           0.5 * z * z / theta.sigma2 - log_h;
}

double emit_return(double h_t, const StableSampler& noise, Rng& rng) {
    if (!(h_t >= 0.0)) {
        throw DomainError("emit_return: h_t must be nonnegative");
    }
    return std::sqrt(h_t) * noise(rng);
}

double emit_return(double h_t, const StableParams& noise, Rng& rng) {
    return emit_return(h_t, StableSampler(noise), rng);
}

std::pair<std::vector<double>, Observations> simulate(const SvmParams& theta,
                                                      const StableParams& noise,
                                                      int n_steps, Rng& rng) {
    if (n_steps < 0) {
        throw DomainError("simulate: n_steps must be nonnegative");
    }
    const StableSampler sampler(noise);
    std::vector<double> h;
    h.reserve(static_cast<std::size_t>(n_steps) + 1);
    Observations obs;
    obs.r.reserve(static_cast<std::size_t>(n_steps));
    h.push_back(initial_sample(theta, rng));
    for (int t = 1; t <= n_steps; ++t) {
        h.push_back(transition_sample(h.back(), theta, rng));
        obs.r.push_back(emit_return(h.back(), sampler, rng));
    }
    return {std::move(h), std::move(obs)};
}

SvmParams grid_params(const GridPoint& g) {
    g.validate();
    const double one_minus_phi2 = 1.0 - g.phi * g.phi;
    SvmParams theta;
    theta.phi = g.phi;
    theta.sigma2 = one_minus_phi2 * std::log1p(g.cv);
    theta.tau = (1.0 - g.phi) *
                (std::log(g.mean_h) - theta.sigma2 / (2.0 * one_minus_phi2));
    return theta;
}

}  // namespace svabc
