#pragma once

#include <cstdint>

namespace cantordyn {

// Viscosity and initial amplitude of the exponentially decaying solution
// X(.,t) = M X0 e^{-nu t}.
struct NSParams {
    double nu = 1.0;
    double m = 1.0;
};

void validate(const NSParams& p);

// Reparametrized time tau(t) = (M/nu)(1 - e^{-nu t}); strictly increasing,
// bounded above by M/nu and never attaining it.
double tau(double t, const NSParams& p);

// Amplitude M e^{-nu t} of the decaying solution.
double amplitude(double t, const NSParams& p);

// Coefficient -M^2 e^{-2 nu t} / 2 multiplying the squared field norm in the
// pressure.
double pressure_coefficient(double t, const NSParams& p);

// Supremum M/nu of the reparametrized time.
double tau_sup(const NSParams& p);

// Largest n with n * tau_per_step < M/nu (strict: tau never reaches its
// supremum, so the boundary step never completes).
std::uint64_t step_budget(const NSParams& p, double tau_per_step);

// Infimal amplitude enabling n complete steps: M = n * nu * tau_per_step.
// Never attaining: at that amplitude the budget is n-1.
struct MinAmplitude {
    double m = 0.0;
    bool attaining = false;
};

MinAmplitude min_amplitude(double nu, double tau_per_step, std::uint64_t n);

}  // namespace cantordyn
