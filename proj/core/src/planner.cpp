#include "imethod/planner.hpp"

#include <cmath>
#include <string>

#include "imethod/error.hpp"

namespace imethod {

double eta_min(double s) { return -2.0 * s / (1.0 + 24.0 * s); }

namespace {

void validate(const PlanInput& in) {
    if (!(in.eps >= 0.0 && in.eps < 1.0)) throw DomainError("make_plan: eps must lie in [0, 1)");
    const double s_lower = -(1.0 - in.eps) / 24.0;
    if (!(in.s > s_lower) || !(in.s < 0.0)) {
        throw DomainError("make_plan: s = " + std::to_string(in.s) +
                          " is outside the admissible range (" + std::to_string(s_lower) +
                          ", 0); the estimate needs -1/24 < s < 0 and the slack narrows it to s > -(1-eps)/24");
    }
    const double cube = std::pow(4.0 * in.eps0, 3);
    if (!(in.eps0 > 0.0) || !(cube < 0.01)) {
        throw DomainError("make_plan: eps0 must satisfy (4 eps0)^3 < 1/100");
    }
    if (!(in.T > 0.0) || !std::isfinite(in.T)) throw DomainError("make_plan: T must be > 0");
    if (!(in.u0_norm > 0.0) || !std::isfinite(in.u0_norm)) {
        throw DomainError("make_plan: u0_norm must be > 0");
    }
}

}  // namespace

Plan make_plan(const PlanInput& in) {
    validate(in);
    Plan p;
    p.s_lower = -(1.0 - in.eps) / 24.0;
    p.eta_min = eta_min(in.s);
    const double r = std::pow(in.u0_norm / in.eps0, 1.0 / (1.0 / 6.0 + in.s));
    p.rho = r > 1.0 ? r : 1.0;
    p.exponent = (1.0 - in.eps + 24.0 * in.s) / (1.0 + 6.0 * in.s);
    p.N = std::pow(p.rho * p.rho * p.rho * in.T, 1.0 / p.exponent);
    if (!(p.N > 1.0) || !std::isfinite(p.N)) {
        throw DomainError("make_plan: the plan gives N = " + std::to_string(p.N) +
                          ", but N > 1 is required; increase T");
    }
    p.lambda = p.rho * std::pow(p.N, -6.0 * in.s / (1.0 + 6.0 * in.s));
    p.iterations = std::floor(std::pow(p.N, 1.0 - in.eps));
    return p;
}

GrowthBound growth_bound(const PlanInput& in, double eta) {
    const double em = eta_min(in.s);
    if (!(eta > em)) {
        throw DomainError("growth_bound: eta must exceed eta_min = " + std::to_string(em));
    }
    if (!(in.T >= 0.0)) throw DomainError("growth_bound: T must be >= 0");
    return {std::pow(1.0 + in.T, eta) * in.u0_norm, eta - em};
}

nlohmann::json to_json(const PlanInput& in) {
    return {{"s", in.s}, {"T", in.T}, {"u0_norm", in.u0_norm}, {"eps0", in.eps0}, {"eps", in.eps}};
}

nlohmann::json to_json(const Plan& p) {
    return {{"rho", p.rho},         {"lambda", p.lambda},     {"N", p.N},
            {"iterations", p.iterations}, {"eta_min", p.eta_min}, {"exponent", p.exponent},
            {"s_lower", p.s_lower}};
}

}  // namespace imethod
