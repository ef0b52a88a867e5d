#pragma once

#include <json.hpp>

#include "imethod/multiplier.hpp"

namespace imethod {

struct PlanInput {
    double s = -1.0 / 48.0;
    double T = 100.0;
    double u0_norm = 1.0;
    double eps0 = 0.05;
    double eps = kDefaultSlack;  ///< slack in the exponent 1 - eps of the N relation
};

struct Plan {
    double rho = 1.0;
    double lambda = 1.0;
    double N = 1.0;
    double iterations = 0.0;  ///< floor(N^{1-eps}); kept as double, it can exceed 2^63
    double eta_min = 0.0;
    double exponent = 0.0;    ///< (1 - eps + 24 s) / (1 + 6 s)
    double s_lower = 0.0;     ///< -(1 - eps) / 24
};

/// -2s / (1 + 24 s).
double eta_min(double s);

/// rho = max(1, (u0/eps0)^{1/(1/6+s)}), then N from N^{(1-eps+24s)/(1+6s)} = rho^3 T and
/// lambda = rho N^{-6s/(1+6s)}. Throws DomainError unless -(1-eps)/24 < s < 0,
/// (4 eps0)^3 < 1/100, T > 0, u0_norm > 0 and N > 1.
Plan make_plan(const PlanInput& in);

struct GrowthBound {
    double bound;   ///< (1 + T)^eta * u0_norm
    double margin;  ///< eta - eta_min
};

/// Throws DomainError when eta <= eta_min(s).
GrowthBound growth_bound(const PlanInput& in, double eta);

nlohmann::json to_json(const PlanInput& in);
nlohmann::json to_json(const Plan& p);

}  // namespace imethod
