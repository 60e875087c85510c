#pragma once

#include <complex>

#include "fcp/errors.hpp"
#include "fcp/rng.hpp"

namespace fcp {

enum class WaitingKind { StablePositive, Pareto };

// Heavy-tailed waiting-time law with Laplace transform
//   phi(s) = 1 - B_alpha s^alpha + o(s^alpha),  s -> 0.
// StablePositive has phi(s) = exp(-B_alpha s^alpha) exactly; Pareto has
// density alpha tau0^alpha / tau^(1+alpha) on tau >= tau0, for which
// B_alpha = Gamma(1-alpha) tau0^alpha.
struct WaitingTimeLaw {
    WaitingKind kind = WaitingKind::StablePositive;
    double alpha = 0.5;
    double b_alpha = 1.0;
    double tau0 = 1.0;  // Pareto cutoff; unused for StablePositive

    static WaitingTimeLaw stable(double alpha, double b_alpha = 1.0);
    static WaitingTimeLaw pareto(double alpha, double tau0);
    void validate() const;
};

// Gaussian jump lengths with characteristic function exp(-sigma^2 k^2);
// the sampler variance is therefore 2 sigma^2.
struct JumpLaw {
    double sigma = 1.0;

    void validate() const;
    // K_alpha = sigma^2 / B_alpha.
    double diffusion_coefficient(const WaitingTimeLaw& w) const { return sigma * sigma / w.b_alpha; }
};

namespace dist {

double sample_waiting(const WaitingTimeLaw& law, RngStream& rng);

// Exact Laplace transform of the waiting density, defined for Re(s) >= 0.
std::complex<double> laplace_wtd(const WaitingTimeLaw& law, std::complex<double> s);

// Analytic continuation to the cut plane (cut along the negative real axis),
// as needed on inversion contours. Available for StablePositive only; Pareto
// falls back to the Re(s) >= 0 domain and throws DomainError outside it.
std::complex<double> laplace_wtd_analytic(const WaitingTimeLaw& law, std::complex<double> s);

double sample_jump(const JumpLaw& law, RngStream& rng);

// Characteristic function exp(-sigma^2 k^2) of the jump law.
double fourier_jump(const JumpLaw& law, double k);

namespace detail {
// Upper incomplete gamma Gamma(a, z) for fixed real a in (-1, 0) and complex
// z != 0 with Re(z) >= 0. Power series near the origin, Lentz continued
// fraction elsewhere.
std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z);
}  // namespace detail

}  // namespace dist
}  // namespace fcp
