#pragma once

// Resonance-surface geometry for the eight-linear interaction.
//
// Tuples are (xi, xi_1, ..., xi_7) with xi = xi_1 + ... + xi_7, and
//   Phi5 = xi^3 - xi_1^3 - xi_2^3 - xi_3^3 - xi_4567^3,   xi_4567 = xi - xi_1 - xi_2 - xi_3
//   Phi8 = xi^3 - xi_1^3 - ... - xi_7^3.
// A Jacobian is taken in two free variables while one further frequency absorbs the
// constraint. Each entry is the exact derivative, so it carries the factor +-3 from the
// cubes; the determinant is 9 (pairs (xi_1, xi_3) and (xi, xi_7)) or -9 (pair (xi, xi_2))
// times the determinant of the squared-difference matrix.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "imethod/multiplier.hpp"

namespace imethod {

enum class JacobianPair {
    xi1_xi3,  ///< free (xi_1, xi_3), xi_7 dependent
    xi_xi2,   ///< free (xi, xi_2), xi_4 dependent
    xi_xi7,   ///< free (xi, xi_7), xi_4 dependent
};

JacobianPair parse_jacobian_pair(const std::string& name);
std::string to_string(JacobianPair pair);

double phi5_of(const FrequencyTuple& t);
double phi8_of(const FrequencyTuple& t);

/// 2x2 matrix d(Phi5, Phi8)/d(a, b), rows Phi5, Phi8.
std::array<std::array<double, 2>, 2> jacobian_matrix(const FrequencyTuple& t, JacobianPair pair);

/// Determinant of jacobian_matrix. The tuple must satisfy xi = xi_1 + ... + xi_7.
double jacobian_phi5_phi8(const FrequencyTuple& t, JacobianPair pair);

/// Move along free variable `which` (0 or 1) of the pair by h, keeping the constraint
/// through the dependent frequency.
FrequencyTuple shift_free(const FrequencyTuple& t, JacobianPair pair, int which, double h);

struct JacobianBound {
    double min_ratio = 0.0;  ///< min |det| / (xi^2 xi_4^2)
    std::int64_t accepted = 0;
    std::int64_t drawn = 0;
};

/// Smallest |det d(Phi5,Phi8)/d(xi_1,xi_3)| / (xi^2 xi_4^2) over random D3 samples in
/// case A: xi_1, xi_2, xi_3 comparable and of size ~N, xi_4 >= .. >= xi_7 small,
/// |xi_4^2 - xi_4567^2| >= xi_4^2/4, |xi_7^2 - xi_4567^2| >= xi_4^2/4, and
/// |xi_1^2 - xi_3^2| >= xi_1^2/4.
JacobianBound jacobian_lower_bound(double N, std::int64_t samples, std::uint64_t seed);

struct JacobianFdCheck {
    double max_rel_error = 0.0;
    std::int64_t accepted = 0;
    std::int64_t drawn = 0;
};

/// Compare jacobian_phi5_phi8 with Richardson-extrapolated central differences of
/// phi5_of and phi8_of on random tuples in [-4N, 4N]^7. Samples with
/// |det| < 1e-3 max|xi|^4 are skipped as degenerate.
JacobianFdCheck jacobian_fd_check(JacobianPair pair, double N, std::int64_t samples,
                                  std::uint64_t seed);

enum class MorseFamily {
    refined_case_b,  ///< P = 1 - p1^3 - p2^3 - p3^3 - p4^3, p3 fixed, p4 = 1 - p1 - p2 - p3
    d3_case_B,       ///< P = 1 - p1^3 - p2^3 - p3^3, p3 = 1 - p1 - p2
};

MorseFamily parse_morse_family(const std::string& name);
std::string to_string(MorseFamily f);

struct MorseResult {
    std::array<double, 2> point{};
    double gradient_norm = 0.0;
    double hessian_det = 0.0;
    int iterations = 0;
};

/// The four stationary points of P for the family. `p3` is the fixed ratio of the
/// refined family and is ignored for d3_case_B.
std::vector<std::array<double, 2>> stationary_points(MorseFamily f, double p3 = 0.5);

double morse_P(MorseFamily f, std::array<double, 2> q, double p3 = 0.5);
std::array<double, 2> morse_gradient(MorseFamily f, std::array<double, 2> q, double p3 = 0.5);
std::array<std::array<double, 2>, 2> morse_hessian(MorseFamily f, std::array<double, 2> q,
                                                   double p3 = 0.5);

/// Damped Newton on grad P from base_point, which must lie within 0.1 of a stationary
/// point of the family. Throws ConvergenceError after 50 iterations.
MorseResult morse_check(MorseFamily f, std::array<double, 2> base_point, double p3 = 0.5);

}  // namespace imethod
