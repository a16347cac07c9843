#pragma once

#include <cmath>
#include <limits>

#include "svabc/errors.hpp"

namespace svabc {

enum class KernelKind { Gaussian, Uniform };

/// ABC comparison kernel K_eps(r | u): bandwidth plus kernel family.
struct AbcConfig {
    double epsilon = 0.001;
    KernelKind kind = KernelKind::Gaussian;

    [[nodiscard]] bool valid() const noexcept {
        return epsilon > 0.0 && std::isfinite(epsilon);
    }
    void validate() const {
        if (!valid()) {
            throw DomainError("AbcConfig: epsilon must be positive and finite");
        }
    }
};

/// Unnormalized log kernel weight. Gaussian: -(r-u)^2 / (2 eps^2); the
/// normalizing constant cancels under self-normalization. Uniform: 0 inside
/// the open interval |r-u| < eps, -inf outside.
inline double log_kernel(const AbcConfig& cfg, double r, double u) {
    cfg.validate();
    const double d = r - u;
    if (cfg.kind == KernelKind::Gaussian) {
        return -d * d / (2.0 * cfg.epsilon * cfg.epsilon);
    }
    return std::abs(d) < cfg.epsilon ? 0.0
                                     : -std::numeric_limits<double>::infinity();
}

}  // namespace svabc
