#include "svabc/stable.hpp"

#include <cmath>

#include "svabc/errors.hpp"

namespace svabc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

bool StableParams::valid() const noexcept {
    return alpha > 0.0 && alpha <= 2.0 && beta >= -1.0 && beta <= 1.0 &&
           gamma >= 0.0 && std::isfinite(gamma) && std::isfinite(delta);
}

void StableParams::validate() const {
    if (!valid()) {
        throw DomainError("StableParams: require alpha in (0,2], beta in [-1,1], gamma >= 0, delta finite");
    }
}

std::complex<double> char_fn(const StableParams& params, double t) {
    params.validate();
    if (t == 0.0) {
        return {1.0, 0.0};
    }
    if (params.gamma == 0.0) {
        return std::polar(1.0, params.delta * t);
    }
    const double at = std::abs(t);
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    double re;
    double im;
    if (std::abs(params.alpha - 1.0) < kAlphaOneTol) {
        const double scale = params.gamma * at;
        re = -scale;
        im = -scale * (2.0 / kPi) * params.beta * sgn * std::log(scale) + params.delta * t;
    } else {
        const double scale_pow = std::pow(params.gamma * at, params.alpha);
        // (gamma|t|)^(1-alpha) - 1 through expm1 to keep precision near alpha = 1
        const double frac = std::expm1((1.0 - params.alpha) * std::log(params.gamma * at));
        const double skew = std::tan(kHalfPi * params.alpha) * frac;
        re = -scale_pow;
        im = -scale_pow * params.beta * sgn * skew + params.delta * t;
    }
    return std::polar(std::exp(re), im);
}

StableSampler::StableSampler(const StableParams& params) : params_(params) {
    params_.validate();
    alpha_one_ = std::abs(params_.alpha - 1.0) < kAlphaOneTol;
    if (!alpha_one_) {
        tan_half_ = std::tan(kHalfPi * params_.alpha);
        if (params_.beta != 0.0) {
            cms_b_ = std::atan(params_.beta * tan_half_) / params_.alpha;
            cms_s_ = std::pow(1.0 + params_.beta * params_.beta * tan_half_ * tan_half_,
                              0.5 / params_.alpha);
        }
        inv_alpha_ = 1.0 / params_.alpha;
        tail_exp_ = (1.0 - params_.alpha) * inv_alpha_;
        shift_ = params_.delta - params_.beta * params_.gamma * tan_half_;
    } else {
        shift_ = params_.delta;
    }
}

double StableSampler::operator()(Rng& rng) const {
    if (params_.gamma == 0.0) {
        return params_.delta;
    }
    const double v = kPi * (rng.uniform() - 0.5);  // uniform on (-pi/2, pi/2)
    const double w = rng.exponential();
    double x;
    if (alpha_one_) {
        const double bv = kHalfPi + params_.beta * v;
        x = (bv * std::tan(v) -
             params_.beta * std::log(kHalfPi * w * std::cos(v) / bv)) /
            kHalfPi;
        return params_.gamma * x + shift_;
    }
    const double avb = params_.alpha * (v + cms_b_);
    x = cms_s_ * std::sin(avb) * std::pow(std::cos(v), -inv_alpha_) *
        std::pow(std::cos(v - avb) / w, tail_exp_);
    return params_.gamma * x + shift_;
}

double sample_stable(const StableParams& params, Rng& rng) {
    return StableSampler(params)(rng);
}

}  // namespace svabc
