#include "imethod/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "imethod/error.hpp"
#include "imethod/multiplier.hpp"

namespace imethod {

WeightKind parse_weight_kind(const std::string& name) {
    if (name == "constant") return WeightKind::constant;
    if (name == "basic_smoothing") return WeightKind::basic_smoothing;
    if (name == "refined") return WeightKind::refined;
    if (name == "d3") return WeightKind::d3;
    throw DomainError("unknown weight '" + name + "' (constant | basic_smoothing | refined | d3)");
}

std::string to_string(WeightKind w) {
    switch (w) {
        case WeightKind::constant: return "constant";
        case WeightKind::basic_smoothing: return "basic_smoothing";
        case WeightKind::refined: return "refined";
        case WeightKind::d3: return "d3";
    }
    return "unknown";
}

Restriction parse_restriction(const std::string& name) {
    if (name == "sublevel") return Restriction::sublevel;
    if (name == "quotient_tail") return Restriction::quotient_tail;
    throw DomainError("unknown restriction '" + name + "' (sublevel | quotient_tail)");
}

std::string to_string(Restriction r) {
    return r == Restriction::sublevel ? "sublevel" : "quotient_tail";
}

void SublevelQuery::validate() const {
    const std::size_t a = free_indices.size();
    if (a < 2 || a > 4) throw DomainError("SublevelQuery: need 2 to 4 free indices");
    std::array<bool, 5> seen{};
    for (int i : free_indices) {
        if (i < 0 || i > 4) throw DomainError("SublevelQuery: free index out of 0..4");
        if (seen[static_cast<std::size_t>(i)]) throw DomainError("SublevelQuery: repeated free index");
        seen[static_cast<std::size_t>(i)] = true;
    }
    if (!(K > 0.0) || !std::isfinite(K)) throw DomainError("SublevelQuery: K must be > 0");
    if (!(box_hi > box_lo) || !std::isfinite(box_lo) || !std::isfinite(box_hi)) {
        throw DomainError("SublevelQuery: empty integration box");
    }
    if (!(eps > 0.0 && eps < 0.5)) throw DomainError("SublevelQuery: eps must lie in (0, 1/2)");
    if (phase == PhaseKind::linear && (linear_index < 0 || linear_index > 4)) {
        throw DomainError("SublevelQuery: linear_index out of 0..4");
    }
    if (!std::isfinite(alpha)) throw DomainError("SublevelQuery: alpha must be finite");
    MultiplierParams(s, N);
}

void set_default_box(SublevelQuery& q) {
    q.box_lo = -4.0 * q.N;
    q.box_hi = 4.0 * q.N;
}

double weight_value(const SublevelQuery& q, const std::array<double, 5>& xi) {
    switch (q.weight) {
        case WeightKind::constant: return 1.0;
        case WeightKind::basic_smoothing: {
            double big = 0.0;
            for (int j = 0; j < 4; ++j) big = std::max(big, std::abs(xi[j]));
            return big * std::pow(japanese(big), 0.5 - q.eps);
        }
        case WeightKind::refined:
            return std::abs(xi[4]) * std::pow(japanese(xi[4]), 1.0 - 2.0 * q.eps) /
                   std::pow(japanese(xi[3]), 0.5 - q.eps);
        case WeightKind::d3:
            return std::pow(std::abs(xi[4]), 1.0 - 4.0 * q.s) * std::abs(xi[3]) /
                   std::pow(q.N, -4.0 * q.s);
    }
    return 0.0;
}

double phase_value(const SublevelQuery& q, const std::array<double, 5>& xi) {
    if (q.phase == PhaseKind::linear) return xi[static_cast<std::size_t>(q.linear_index)];
    double v = 0.0;
    for (double x : xi) v += x * x * x;
    return v;
}

namespace {

using Point = std::array<double, 5>;

// Phase along the line variable: a2 t^2 + a1 t + a0 (alpha already subtracted).
struct LinePoly {
    double a2 = 0.0, a1 = 0.0, a0 = 0.0;
    double operator()(double t) const { return (a2 * t + a1) * t + a0; }
};

void add_roots(const LinePoly& g, double level, double lo, double hi, std::vector<double>& out) {
    const double c0 = g.a0 - level;
    auto keep = [&](double r) {
        if (r > lo && r < hi) out.push_back(r);
    };
    if (g.a2 == 0.0) {
        if (g.a1 != 0.0) keep(-c0 / g.a1);
        return;
    }
    const double disc = g.a1 * g.a1 - 4.0 * g.a2 * c0;
    if (disc < 0.0) return;
    const double qd = -0.5 * (g.a1 + std::copysign(std::sqrt(disc), g.a1));
    if (qd != 0.0) {
        keep(qd / g.a2);
        keep(c0 / qd);
    } else {
        keep(0.0);
    }
}

class LineIntegrator {
public:
    explicit LineIntegrator(const SublevelQuery& q)
        : q_(q),
          d_(q.dimension()),
          line_(q.free_indices[static_cast<std::size_t>(d_ - 1)]),
          dep_(q.free_indices[static_cast<std::size_t>(d_)]) {
        breaks_.reserve(64);
    }

    // `x` holds every frequency except the line variable and the dependent one.
    double operator()(Point x) {
        double c = 0.0;
        double cubes = 0.0;
        for (int j = 0; j < 5; ++j) {
            if (j == line_ || j == dep_) continue;
            c += x[j];
            cubes += x[j] * x[j] * x[j];
        }
        LinePoly g;
        if (q_.phase == PhaseKind::phi5) {
            g = {-3.0 * c, -3.0 * c * c, cubes - c * c * c};
        } else if (q_.linear_index == line_) {
            g = {0.0, 1.0, 0.0};
        } else if (q_.linear_index == dep_) {
            g = {0.0, -1.0, -c};
        } else {
            g = {0.0, 0.0, x[static_cast<std::size_t>(q_.linear_index)]};
        }
        g.a0 -= q_.alpha;

        const double lo = q_.box_lo, hi = q_.box_hi;
        breaks_.clear();
        breaks_.push_back(lo);
        breaks_.push_back(hi);
        add_roots(g, q_.K, lo, hi, breaks_);
        add_roots(g, -q_.K, lo, hi, breaks_);
        auto kink = [&](double t) {
            if (t > lo && t < hi) breaks_.push_back(t);
        };
        kink(0.0);
        kink(-c);
        kink(-0.5 * c);
        for (int j = 0; j < 5; ++j) {
            if (j == line_ || j == dep_) continue;
            kink(x[j]);
            kink(-x[j]);
            kink(-c + x[j]);
            kink(-c - x[j]);
        }
        std::sort(breaks_.begin(), breaks_.end());

        auto eval = [&](double t) {
            x[static_cast<std::size_t>(line_)] = t;
            x[static_cast<std::size_t>(dep_)] = -(c + t);
            return weight_value(q_, x);
        };
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
            const double u = breaks_[i], v = breaks_[i + 1];
            if (!(v > u)) continue;
            const double gm = std::abs(g(0.5 * (u + v)));
            if (q_.restriction == Restriction::sublevel) {
                if (gm >= q_.K) continue;
                total += boost::math::quadrature::gauss<double, 10>::integrate(eval, u, v);
            } else {
                if (gm <= q_.K) continue;
                auto f = [&](double t) { return eval(t) / std::abs(g(t)); };
                total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                    f, u, v, 10, 1e-7);
            }
        }
        return total;
    }

private:
    const SublevelQuery& q_;
    int d_;
    int line_;
    int dep_;
    std::vector<double> breaks_;
};

constexpr std::int64_t kChunk = 1024;

struct Moments {
    CompensatedSum sum;
    CompensatedSum sumsq;
};

template <class PerSample>
Estimate chunked_mean(std::int64_t samples, std::uint64_t seed, double volume, PerSample&& make) {
    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<double> sum(static_cast<std::size_t>(chunks));
    std::vector<double> sumsq(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ch = 0; ch < chunks; ++ch) {
        auto rng = chunk_engine(seed, static_cast<std::uint64_t>(ch));
        auto f = make();
        Moments m;
        const std::int64_t n = std::min(kChunk, samples - ch * kChunk);
        for (std::int64_t i = 0; i < n; ++i) {
            const double v = f(rng);
            m.sum.add(v);
            m.sumsq.add(v * v);
        }
        sum[static_cast<std::size_t>(ch)] = m.sum.value();
        sumsq[static_cast<std::size_t>(ch)] = m.sumsq.value();
    }
    CompensatedSum s1, s2;
    for (std::int64_t ch = 0; ch < chunks; ++ch) {
        s1.add(sum[static_cast<std::size_t>(ch)]);
        s2.add(sumsq[static_cast<std::size_t>(ch)]);
    }
    const auto n = static_cast<double>(samples);
    const double mean = s1.value() / n;
    const double var = std::max(0.0, (s2.value() / n - mean * mean)) * n / std::max(1.0, n - 1.0);
    return {volume * mean, volume * std::sqrt(var / n), samples};
}

}  // namespace

Estimate sublevel_integral(const SublevelQuery& q, std::int64_t samples, std::uint64_t seed) {
    q.validate();
    if (samples < 1000) throw DomainError("sublevel_integral: need at least 1000 samples");
    const int d = q.dimension();
    const double width = q.box_hi - q.box_lo;
    if (d == 1) {
        LineIntegrator line(q);
        return {line(q.fixed), 0.0, samples};
    }
    const double volume = std::pow(width, d - 1);
    return chunked_mean(samples, seed, volume, [&] {
        return [&q, d, line = LineIntegrator(q),
                dist = std::uniform_real_distribution<double>(q.box_lo, q.box_hi)](
                   std::mt19937_64& rng) mutable {
            Point x = q.fixed;
            for (int i = 0; i < d - 1; ++i) x[static_cast<std::size_t>(q.free_indices[i])] = dist(rng);
            return line(x);
        };
    });
}

Estimate sublevel_integral_hit_or_miss(const SublevelQuery& q, std::int64_t samples,
                                       std::uint64_t seed) {
    q.validate();
    if (samples < 1000) throw DomainError("sublevel_integral_hit_or_miss: need at least 1000 samples");
    const int d = q.dimension();
    const double volume = std::pow(q.box_hi - q.box_lo, d);
    return chunked_mean(samples, seed, volume, [&] {
        return [&q, d, dist = std::uniform_real_distribution<double>(q.box_lo, q.box_hi)](
                   std::mt19937_64& rng) mutable {
            Point x = q.fixed;
            for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(q.free_indices[i])] = dist(rng);
            const int dep = q.free_indices.back();
            double sum = 0.0;
            for (int i = 0; i < 5; ++i) {
                if (i != dep) sum += x[static_cast<std::size_t>(i)];
            }
            x[static_cast<std::size_t>(dep)] = -sum;
            const double g = std::abs(phase_value(q, x) - q.alpha);
            if (q.restriction == Restriction::sublevel) return g < q.K ? weight_value(q, x) : 0.0;
            return g > q.K ? weight_value(q, x) / g : 0.0;
        };
    });
}

ScalingReport sweep_sup(const SublevelQuery& tmpl, int configs, std::span<const double> levels,
                        std::int64_t samples, std::uint64_t seed) {
    tmpl.validate();
    if (configs < 1) throw DomainError("sweep_sup: need at least one configuration");
    if (levels.size() < 8) throw DomainError("sweep_sup: need at least 8 levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0) || (i > 0 && !(levels[i] > levels[i - 1]))) {
            throw DomainError("sweep_sup: levels must be positive and strictly increasing");
        }
    }

    ScalingReport rep;
    rep.weight = to_string(tmpl.weight);
    if (tmpl.phase == PhaseKind::linear) rep.weight += "_linear_phase";
    if (tmpl.restriction == Restriction::quotient_tail) rep.weight += "_quotient_tail";
    rep.levels.assign(levels.begin(), levels.end());
    rep.estimates.assign(levels.size(), -1.0);
    rep.std_errors.assign(levels.size(), 0.0);
    rep.argmax_config.resize(levels.size());
    rep.seed = seed;

    const auto& free = tmpl.free_indices;
    for (int c = 0; c < configs; ++c) {
        auto rng = chunk_engine(seed, 0x100000000ULL + static_cast<std::uint64_t>(c));
        std::uniform_real_distribution<double> dist(tmpl.box_lo, tmpl.box_hi);
        SublevelQuery q = tmpl;
        for (int j = 0; j < 5; ++j) {
            if (std::find(free.begin(), free.end(), j) == free.end()) q.fixed[static_cast<std::size_t>(j)] = dist(rng);
        }
        if (tmpl.restriction == Restriction::quotient_tail) {
            q.alpha = 0.0;
        } else {
            Point x = q.fixed;
            double sum = 0.0;
            for (std::size_t i = 0; i + 1 < free.size(); ++i) x[static_cast<std::size_t>(free[i])] = dist(rng);
            for (int j = 0; j < 5; ++j) {
                if (j != free.back()) sum += x[static_cast<std::size_t>(j)];
            }
            x[static_cast<std::size_t>(free.back())] = -sum;
            q.alpha = phase_value(q, x);
        }
        const std::uint64_t est_seed = rng();
        for (std::size_t l = 0; l < levels.size(); ++l) {
            q.K = levels[l];
            const Estimate e = sublevel_integral(q, samples, est_seed);
            if (e.value > rep.estimates[l]) {
                rep.estimates[l] = e.value;
                rep.std_errors[l] = e.std_error;
                rep.argmax_config[l] = {q.fixed, q.alpha};
            }
        }
    }
    rep.fit = fit_loglog(rep.levels, rep.estimates);
    return rep;
}

nlohmann::json to_json(const ScalingReport& r) {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    nlohmann::json argmax = nlohmann::json::array();
    for (const SupConfig& c : r.argmax_config) {
        argmax.push_back({{"fixed", c.fixed}, {"alpha", c.alpha}});
    }
    return {{"weight", r.weight},
            {"levels", r.levels},
            {"estimates", r.estimates},
            {"stderr", r.std_errors},
            {"slope", r.fit.degenerate ? nlohmann::json(nullptr) : num(r.fit.slope)},
            {"slope_ci", r.fit.degenerate ? nlohmann::json(nullptr) : num(r.fit.slope_ci)},
            {"argmax_config", argmax},
            {"seed", r.seed}};
}

}  // namespace imethod
