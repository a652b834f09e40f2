#include "params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sphns {

void PhysParams::validate() const {
    if (!(gamma >= 1.0))
        throw std::invalid_argument("gamma must be >= 1");
    if (!(delta >= 2.0 / 3.0 && delta < 1.0))
        throw std::invalid_argument("delta must lie in [2/3, 1)");
    if (!(a > 0.0))
        throw std::invalid_argument("inner radius a must be positive");
    if (!(eta >= 0.0))
        throw std::invalid_argument("eta must be nonnegative");
    if (gamma == 1.0) {
        if (!(alpha > 1.0 && alpha < 2.0))
            throw std::invalid_argument("alpha must lie in (1,2) when gamma == 1");
    } else if (alpha != 0.0) {
        throw std::invalid_argument("alpha must be 0 when gamma > 1");
    }
}

double k_of_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("k_of_delta requires 0 < delta < 1");
    const double om = 1.0 - delta;
    return 2.0 * delta * (2.0 * delta - 1.0) / (om * om);
}

std::pair<double, double> p_range(double delta) {
    const double k = k_of_delta(delta);
    if (k < 4.0 * (1.0 - 1e-12))
        throw std::domain_error("p_range requires K(delta) >= 4, i.e. delta >= 2/3");
    // The discriminant is written as K*(K-4): K^2 loses precision first as
    // delta -> 1, and at the delta = 2/3 boundary round-off may push it
    // marginally negative.
    const double s = std::sqrt(std::max(0.0, k * (k - 4.0)));
    return {(k - s) / 2.0, (k + s) / 2.0};
}

double p_star(double delta) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::domain_error("p_star requires 0 <= delta < 1");
    return (4.0 - 2.0 * delta) / (1.0 - delta);
}

AdmissibilityReport check_admissibility(double gamma, double delta) {
    AdmissibilityReport rep;
    rep.gamma = gamma;
    rep.delta = delta;
    rep.delta_in_law_range = (delta >= 2.0 / 3.0 && delta < 1.0);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.k = (delta > 0.0 && delta < 1.0) ? k_of_delta(delta) : nan;
    rep.p_star = (delta >= 0.0 && delta < 1.0) ? p_star(delta) : nan;

    if (!rep.delta_in_law_range) {
        rep.p_min = rep.p_max = nan;
        rep.admissible = false;
        rep.reason = (delta < 2.0 / 3.0)
                         ? "delta below 2/3: 2*mu + 3*lambda would be negative"
                         : "delta must be below 1";
        return rep;
    }

    const auto [pmin, pmax] = p_range(delta);
    rep.p_min = pmin;
    rep.p_max = pmax;
    rep.admissible = rep.p_star <= rep.p_max;
    if (!rep.admissible)
        rep.reason = "p_star exceeds p_max";
    return rep;
}

AdmissibilityReport check_admissibility(const PhysParams& params) {
    return check_admissibility(params.gamma, params.delta);
}

double find_delta_star(double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("find_delta_star requires tol > 0");

    // Endpoints avoid the K singularity at delta = 1 and the K = 4
    // discriminant boundary at delta = 2/3.
    double lo = 2.0 / 3.0 + 1e-9;
    double hi = 1.0 - 1e-9;

    auto gap = [](double d) { return p_star(d) - p_range(d).second; };

    double flo = gap(lo);
    double fhi = gap(hi);
    if (!(flo > 0.0 && fhi < 0.0))
        throw std::runtime_error("find_delta_star: bracket endpoints do not straddle a sign change");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool exponent_condition(double gamma, double delta, double p) {
    return gamma - delta - 1.0 / p >= 0.0;
}

}  // namespace sphns
