#include "imethod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "imethod/error.hpp"
#include "imethod/numeric.hpp"

namespace imethod {

JacobianPair parse_jacobian_pair(const std::string& name) {
    if (name == "xi1_xi3") return JacobianPair::xi1_xi3;
    if (name == "xi_xi2") return JacobianPair::xi_xi2;
    if (name == "xi_xi7") return JacobianPair::xi_xi7;
    throw DomainError("unknown Jacobian pair '" + name + "' (xi1_xi3 | xi_xi2 | xi_xi7)");
}

std::string to_string(JacobianPair pair) {
    switch (pair) {
        case JacobianPair::xi1_xi3: return "xi1_xi3";
        case JacobianPair::xi_xi2: return "xi_xi2";
        case JacobianPair::xi_xi7: return "xi_xi7";
    }
    return "unknown";
}

namespace {

struct PairLayout {
    int a, b, dep;  // positions in (xi, xi_1, ..., xi_7)
};

PairLayout layout(JacobianPair pair) {
    switch (pair) {
        case JacobianPair::xi1_xi3: return {1, 3, 7};
        case JacobianPair::xi_xi2: return {0, 2, 4};
        case JacobianPair::xi_xi7: return {0, 7, 4};
    }
    throw DomainError("unknown Jacobian pair");
}

void require_octet(const FrequencyTuple& t, const char* who) {
    if (t.size() != 8) throw DomainError(std::string(who) + ": expected (xi, xi_1..xi_7)");
    double rest = 0.0;
    for (std::size_t j = 1; j < 8; ++j) rest += t[j];
    if (std::abs(t[0] - rest) > t.gamma_tolerance()) {
        throw DomainError(std::string(who) + ": xi must equal xi_1 + ... + xi_7");
    }
}

double x4567(const FrequencyTuple& t) { return t[0] - t[1] - t[2] - t[3]; }

// d(xi_position)/d(variable at v) along the constrained parametrization.
double dvar(int position, int v, int dep) {
    if (position == v) return 1.0;
    if (position == dep) return v == 0 ? 1.0 : -1.0;
    return 0.0;
}

double dphi5(const FrequencyTuple& t, int v, int dep) {
    double d = 3.0 * t[0] * t[0] * dvar(0, v, dep);
    double dx = dvar(0, v, dep);
    for (int j = 1; j <= 3; ++j) {
        d -= 3.0 * t[j] * t[j] * dvar(j, v, dep);
        dx -= dvar(j, v, dep);
    }
    const double y = x4567(t);
    d -= 3.0 * y * y * dx;
    return d;
}

double dphi8(const FrequencyTuple& t, int v, int dep) {
    double d = 3.0 * t[0] * t[0] * dvar(0, v, dep);
    for (int j = 1; j <= 7; ++j) d -= 3.0 * t[j] * t[j] * dvar(j, v, dep);
    return d;
}

}  // namespace

double phi5_of(const FrequencyTuple& t) {
    const double y = x4567(t);
    return t[0] * t[0] * t[0] - t[1] * t[1] * t[1] - t[2] * t[2] * t[2] - t[3] * t[3] * t[3] -
           y * y * y;
}

double phi8_of(const FrequencyTuple& t) {
    double v = t[0] * t[0] * t[0];
    for (std::size_t j = 1; j < 8; ++j) v -= t[j] * t[j] * t[j];
    return v;
}

std::array<std::array<double, 2>, 2> jacobian_matrix(const FrequencyTuple& t, JacobianPair pair) {
    require_octet(t, "jacobian_matrix");
    const PairLayout l = layout(pair);
    return {{{dphi5(t, l.a, l.dep), dphi5(t, l.b, l.dep)},
             {dphi8(t, l.a, l.dep), dphi8(t, l.b, l.dep)}}};
}

double jacobian_phi5_phi8(const FrequencyTuple& t, JacobianPair pair) {
    const auto J = jacobian_matrix(t, pair);
    return J[0][0] * J[1][1] - J[0][1] * J[1][0];
}

FrequencyTuple shift_free(const FrequencyTuple& t, JacobianPair pair, int which, double h) {
    const PairLayout l = layout(pair);
    const int v = which == 0 ? l.a : l.b;
    FrequencyTuple out = t;
    out[static_cast<std::size_t>(v)] += h;
    out[static_cast<std::size_t>(l.dep)] += v == 0 ? h : -h;
    return out;
}

JacobianBound jacobian_lower_bound(double N, std::int64_t samples, std::uint64_t seed) {
    if (!(N > 0.0) || samples < 1) throw DomainError("jacobian_lower_bound: need N > 0, samples >= 1");
    auto rng = chunk_engine(seed, 0);
    std::uniform_real_distribution<double> big(N, 4.0 * N);
    std::uniform_real_distribution<double> small(0.0, N / 8.0);
    std::bernoulli_distribution coin(0.5);
    JacobianBound out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    while (out.accepted < samples) {
        ++out.drawn;
        if (out.drawn > 1000 * samples) break;
        std::array<double, 3> hi{big(rng), big(rng), big(rng)};
        std::array<double, 4> lo{small(rng), small(rng), small(rng), small(rng)};
        std::sort(hi.rbegin(), hi.rend());
        std::sort(lo.rbegin(), lo.rend());
        std::array<double, 8> x{};
        for (int j = 0; j < 3; ++j) x[1 + j] = coin(rng) ? hi[j] : -hi[j];
        for (int j = 0; j < 4; ++j) x[4 + j] = coin(rng) ? lo[j] : -lo[j];
        for (int j = 1; j < 8; ++j) x[0] += x[j];
        const double y = x[4] + x[5] + x[6] + x[7];
        const double q4 = x[4] * x[4];
        if (std::abs(q4 - y * y) < 0.25 * q4) continue;
        if (std::abs(x[7] * x[7] - y * y) < 0.25 * q4) continue;
        if (std::abs(x[1] * x[1] - x[3] * x[3]) < 0.25 * x[1] * x[1]) continue;
        const FrequencyTuple t(x);
        const double det = std::abs(jacobian_phi5_phi8(t, JacobianPair::xi1_xi3));
        out.min_ratio = std::min(out.min_ratio, det / (x[0] * x[0] * q4));
        ++out.accepted;
    }
    if (out.accepted == 0) out.min_ratio = 0.0;
    return out;
}

JacobianFdCheck jacobian_fd_check(JacobianPair pair, double N, std::int64_t samples,
                                  std::uint64_t seed) {
    if (!(N > 0.0) || samples < 1) throw DomainError("jacobian_fd_check: need N > 0, samples >= 1");
    auto rng = chunk_engine(seed, 1);
    std::uniform_real_distribution<double> u(-4.0 * N, 4.0 * N);
    JacobianFdCheck out;
    while (out.accepted < samples) {
        ++out.drawn;
        if (out.drawn > 1000 * samples) break;
        std::array<double, 8> x{};
        for (int j = 1; j < 8; ++j) {
            x[j] = u(rng);
            x[0] += x[j];
        }
        const FrequencyTuple t(x);
        const double scale = std::pow(t.max_abs(), 4);
        const double exact = jacobian_phi5_phi8(t, pair);
        if (std::abs(exact) < 1e-3 * scale) continue;

        // Central differences of cubics have error exactly c h^2, so one Richardson
        // step with h and h/2 is exact up to rounding.
        const double h = 1e-2 * std::max(1.0, t.max_abs());
        std::array<std::array<double, 2>, 2> J{};
        for (int which = 0; which < 2; ++which) {
            auto central = [&](double step, double (*phi)(const FrequencyTuple&)) {
                return (phi(shift_free(t, pair, which, step)) - phi(shift_free(t, pair, which, -step))) /
                       (2.0 * step);
            };
            J[0][which] = (4.0 * central(h / 2, phi5_of) - central(h, phi5_of)) / 3.0;
            J[1][which] = (4.0 * central(h / 2, phi8_of) - central(h, phi8_of)) / 3.0;
        }
        const double fd = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        out.max_rel_error = std::max(out.max_rel_error, std::abs(fd - exact) / std::abs(exact));
        ++out.accepted;
    }
    return out;
}

MorseFamily parse_morse_family(const std::string& name) {
    if (name == "refined_case_b") return MorseFamily::refined_case_b;
    if (name == "d3_case_B") return MorseFamily::d3_case_B;
    throw DomainError("unknown Morse family '" + name + "' (refined_case_b | d3_case_B)");
}

std::string to_string(MorseFamily f) {
    return f == MorseFamily::refined_case_b ? "refined_case_b" : "d3_case_B";
}

namespace {

// Both families are P = const - p1^3 - p2^3 - r^3 with r = c - p1 - p2.
struct Reduced {
    double c;
    double offset;  // P = offset - p1^3 - p2^3 - r^3
};

Reduced reduce(MorseFamily f, double p3) {
    if (f == MorseFamily::d3_case_B) return {1.0, 1.0};
    if (!std::isfinite(p3)) throw DomainError("morse_check: p3 must be finite");
    return {1.0 - p3, 1.0 - p3 * p3 * p3};
}

}  // namespace

std::vector<std::array<double, 2>> stationary_points(MorseFamily f, double p3) {
    const double c = reduce(f, p3).c;
    return {{c, c}, {c, -c}, {-c, c}, {c / 3.0, c / 3.0}};
}

double morse_P(MorseFamily f, std::array<double, 2> q, double p3) {
    const Reduced red = reduce(f, p3);
    const double r = red.c - q[0] - q[1];
    return red.offset - q[0] * q[0] * q[0] - q[1] * q[1] * q[1] - r * r * r;
}

std::array<double, 2> morse_gradient(MorseFamily f, std::array<double, 2> q, double p3) {
    const double r = reduce(f, p3).c - q[0] - q[1];
    return {3.0 * (r * r - q[0] * q[0]), 3.0 * (r * r - q[1] * q[1])};
}

std::array<std::array<double, 2>, 2> morse_hessian(MorseFamily f, std::array<double, 2> q,
                                                   double p3) {
    const double r = reduce(f, p3).c - q[0] - q[1];
    return {{{-6.0 * (q[0] + r), -6.0 * r}, {-6.0 * r, -6.0 * (q[1] + r)}}};
}

MorseResult morse_check(MorseFamily f, std::array<double, 2> base_point, double p3) {
    const auto pts = stationary_points(f, p3);
    const bool near = std::any_of(pts.begin(), pts.end(), [&](const auto& s) {
        return std::hypot(base_point[0] - s[0], base_point[1] - s[1]) <= 0.1;
    });
    if (!near) {
        throw DomainError("morse_check: base point is not within 0.1 of a stationary point of " +
                          to_string(f));
    }
    auto norm = [](std::array<double, 2> g) { return std::hypot(g[0], g[1]); };
    std::array<double, 2> q = base_point;
    for (int it = 0; it <= 50; ++it) {
        const auto g = morse_gradient(f, q, p3);
        if (norm(g) < 1e-12) {
            const auto H = morse_hessian(f, q, p3);
            return {q, norm(g), H[0][0] * H[1][1] - H[0][1] * H[1][0], it};
        }
        if (it == 50) break;
        const auto H = morse_hessian(f, q, p3);
        const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
        if (det == 0.0) throw ConvergenceError("morse_check: singular Hessian during Newton");
        const std::array<double, 2> step{(H[1][1] * g[0] - H[0][1] * g[1]) / det,
                                         (H[0][0] * g[1] - H[1][0] * g[0]) / det};
        double damping = 1.0;
        std::array<double, 2> next{};
        for (int k = 0; k < 30; ++k) {
            next = {q[0] - damping * step[0], q[1] - damping * step[1]};
            if (norm(morse_gradient(f, next, p3)) < norm(g)) break;
            damping *= 0.5;
        }
        q = next;
    }
    throw ConvergenceError("morse_check: Newton did not converge in 50 iterations");
}

}  // namespace imethod
