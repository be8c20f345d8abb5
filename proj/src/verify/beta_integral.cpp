#include "mildns/errors.hpp"
#include "mildns/verify.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

namespace mildns::verify {

namespace {

// int_0^{t/2} (t - tau)^-gamma tau^-theta dtau with tau = sigma^{1/(1-theta)},
// which removes the endpoint singularity at tau = 0.
double lower_half(double gamma, double theta, double t) {
    const double e = 1.0 / (1.0 - theta);
    const double top = std::pow(0.5 * t, 1.0 - theta);
    auto f = [&](double sigma) { return e * std::pow(t - std::pow(sigma, e), -gamma); };
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, 0.0, top, 1e-14);
}

double half_integral(double gamma, double theta, Half half, double t) {
    // the upper half is the lower half with the roles of the exponents swapped
    return half == Half::lower ? lower_half(gamma, theta, t) : lower_half(theta, gamma, t);
}

} // namespace

BetaIntegral beta_integral(double gamma, double theta, Half half) {
    if (!std::isfinite(gamma) || !std::isfinite(theta)) {
        throw DomainError("beta integral exponents must be finite");
    }
    if (half == Half::lower && theta >= 1.0) {
        throw DivergentIntegralError("integral over [0, t/2] diverges for theta >= 1");
    }
    if (half == Half::upper && gamma >= 1.0) {
        throw DivergentIntegralError("integral over [t/2, t] diverges for gamma >= 1");
    }
    BetaIntegral out;
    out.value = half_integral(gamma, theta, half, 1.0);
    for (double t : {1.0, 2.0, 5.0}) {
        const double scaled = half_integral(gamma, theta, half, t) * std::pow(t, gamma + theta - 1.0);
        out.scaling_spread = std::max(out.scaling_spread, std::abs(scaled / out.value - 1.0));
    }
    return out;
}

} // namespace mildns::verify
