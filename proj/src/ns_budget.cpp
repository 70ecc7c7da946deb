#include "cantordyn/ns_budget.hpp"

#include <cmath>

#include "cantordyn/errors.hpp"

namespace cantordyn {

void validate(const NSParams& p) {
    if (!(p.nu > 0)) throw ValidationError("viscosity nu must be positive");
    if (!(p.m > 0)) throw ValidationError("initial amplitude M must be positive");
}

double tau(double t, const NSParams& p) {
    validate(p);
    if (t < 0) throw ValidationError("tau(t) is defined for t >= 0");
    return (p.m / p.nu) * (1.0 - std::exp(-p.nu * t));
}

double amplitude(double t, const NSParams& p) {
    validate(p);
    return p.m * std::exp(-p.nu * t);
}

double pressure_coefficient(double t, const NSParams& p) {
    validate(p);
    return -0.5 * p.m * p.m * std::exp(-2.0 * p.nu * t);
}

double tau_sup(const NSParams& p) {
    validate(p);
    return p.m / p.nu;
}

std::uint64_t step_budget(const NSParams& p, double tau_per_step) {
    validate(p);
    if (!(tau_per_step > 0)) throw ValidationError("tau_per_step must be positive");
    double ratio = tau_sup(p) / tau_per_step;
    if (ratio < 1.0) return 0;
    auto n = static_cast<std::uint64_t>(std::floor(ratio));
    // Strict bound: when n * tau_per_step does not stay below the supremum,
    // the n-th step never completes.
    while (n > 0 && !(static_cast<double>(n) * tau_per_step < tau_sup(p))) --n;
    return n;
}

MinAmplitude min_amplitude(double nu, double tau_per_step, std::uint64_t n) {
    if (!(nu > 0)) throw ValidationError("viscosity nu must be positive");
    if (!(tau_per_step > 0)) throw ValidationError("tau_per_step must be positive");
    return MinAmplitude{static_cast<double>(n) * nu * tau_per_step, false};
}

}  // namespace cantordyn
