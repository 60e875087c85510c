#include "fcp/distributions.hpp"

#include <cmath>
#include <sstream>

namespace fcp {

namespace {
constexpr double kPi = 3.141592653589793238462643;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "waiting exponent alpha = " << alpha << " outside (0,1)";
        throw InvalidDistribution(os.str());
    }
}
}  // namespace

WaitingTimeLaw WaitingTimeLaw::stable(double alpha, double b_alpha) {
    WaitingTimeLaw law{WaitingKind::StablePositive, alpha, b_alpha, 1.0};
    law.validate();
    return law;
}

WaitingTimeLaw WaitingTimeLaw::pareto(double alpha, double tau0) {
    check_alpha(alpha);
    if (!(tau0 > 0.0)) throw InvalidDistribution("Pareto cutoff tau0 must be positive");
    WaitingTimeLaw law{WaitingKind::Pareto, alpha, std::tgamma(1.0 - alpha) * std::pow(tau0, alpha), tau0};
    law.validate();
    return law;
}

void WaitingTimeLaw::validate() const {
    check_alpha(alpha);
    if (!(b_alpha > 0.0)) throw InvalidDistribution("B_alpha must be positive");
    if (kind == WaitingKind::Pareto) {
        if (!(tau0 > 0.0)) throw InvalidDistribution("Pareto cutoff tau0 must be positive");
    }
}

void JumpLaw::validate() const {
    if (!(sigma > 0.0)) throw InvalidDistribution("jump scale sigma must be positive");
}

namespace dist {

double sample_waiting(const WaitingTimeLaw& law, RngStream& rng) {
    if (law.kind == WaitingKind::Pareto) {
        return law.tau0 * std::pow(rng.uniform(), -1.0 / law.alpha);
    }
    // Kanter's exact transform for the one-sided stable law with Laplace
    // transform exp(-s^alpha): V uniform on (0,pi), W standard exponential.
    const double a = law.alpha;
    const double v = kPi * rng.uniform();
    const double w = rng.exponential();
    const double x = std::sin(a * v) * std::pow(std::sin(v), -1.0 / a) *
                     std::pow(std::sin((1.0 - a) * v) / w, (1.0 - a) / a);
    return std::pow(law.b_alpha, 1.0 / a) * x;
}

std::complex<double> laplace_wtd(const WaitingTimeLaw& law, std::complex<double> s) {
    if (s.real() < 0.0) {
        std::ostringstream os;
        os << "laplace_wtd requires Re(s) >= 0, got Re(s) = " << s.real();
        throw DomainError(os.str());
    }
    if (s == 0.0) return 1.0;
    if (law.kind == WaitingKind::StablePositive) {
        return std::exp(-law.b_alpha * std::pow(s, law.alpha));
    }
    // alpha (tau0 s)^alpha Gamma(-alpha, tau0 s)
    const std::complex<double> z = law.tau0 * s;
    return law.alpha * std::pow(z, law.alpha) * detail::upper_incomplete_gamma(-law.alpha, z);
}

std::complex<double> laplace_wtd_analytic(const WaitingTimeLaw& law, std::complex<double> s) {
    if (law.kind == WaitingKind::StablePositive) {
        if (s == 0.0) return 1.0;
        if (s.real() < 0.0 && s.imag() == 0.0) {
            throw DomainError("stable waiting transform is not defined on the branch cut");
        }
        return std::exp(-law.b_alpha * std::pow(s, law.alpha));
    }
    return laplace_wtd(law, s);
}

double sample_jump(const JumpLaw& law, RngStream& rng) {
    // Variance 2 sigma^2, matching the characteristic function exp(-sigma^2 k^2).
    return law.sigma * std::sqrt(2.0) * rng.gaussian();
}

double fourier_jump(const JumpLaw& law, double k) {
    return std::exp(-law.sigma * law.sigma * k * k);
}

namespace detail {

std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z) {
    using cd = std::complex<double>;
    if (std::abs(z) < 4.0) {
        // Gamma(a,z) = Gamma(a) - gamma(a,z) with the lower-gamma power
        // series gamma(a,z) = z^a e^{-z} sum_n z^n / (a (a+1) ... (a+n)).
        cd term = 1.0 / a;
        cd sum = term;
        for (int n = 1; n < 200; ++n) {
            term *= z / (a + n);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        cd lower = std::pow(z, a) * std::exp(-z) * sum;
        return std::tgamma(a) - lower;
    }
    // Modified Lentz continued fraction (Numerical Recipes gcf), valid for
    // Re(z) >= 0 away from the origin.
    const double tiny = 1e-290;
    cd b = z + 1.0 - a;
    cd c = 1.0 / tiny;
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i <= 300; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        cd del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-z) * std::pow(z, a) * h;
}

}  // namespace detail
}  // namespace dist
}  // namespace fcp
