#include "imethod/energy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "imethod/error.hpp"
#include "imethod/numeric.hpp"

namespace imethod {

void TrackerConfig::validate() const {
    if (!(mode_cutoff > 0.0)) throw DomainError("TrackerConfig: mode_cutoff must be > 0");
    if (!(amp_threshold >= 0.0)) throw DomainError("TrackerConfig: amp_threshold must be >= 0");
    if (stride < 1) throw DomainError("TrackerConfig: stride must be >= 1");
    if (!(budget > 0.0)) throw DomainError("TrackerConfig: budget must be > 0");
    if (!(tol_reality > 0.0)) throw DomainError("TrackerConfig: tol_reality must be > 0");
    if (std::isnan(K)) throw DomainError("TrackerConfig: K is NaN");
}

double TrackerConfig::resolved_K(const MultiplierParams& p) const {
    return K > 0.0 ? K : 1.0 / std::sqrt(p.N());
}

double energy_E1(const SpectralField& u, const MultiplierParams& p) {
    const auto c = u.half();
    const FrequencyGrid& g = u.grid();
    CompensatedSum acc;
    for (std::size_t n = 0; n < c.size(); ++n) {
        const double m = m_eval(p, g.wavenumber(static_cast<int>(n)));
        const double w = n == 0 ? 1.0 : 2.0;
        acc.add(w * m * m * std::norm(c[n]));
    }
    return g.parseval() * acc.value();
}

namespace {

struct ActiveModes {
    int H = 0;                       // indices run over [-H, H]
    std::vector<int> index;          // sorted active indices
    std::vector<cplx> coeff;         // c_n at n + H, zero when inactive
    std::vector<double> w;           // (m^2 - 1) k_n at n + H
    std::vector<std::int64_t> cube;  // n^3 at n + H
};

ActiveModes collect_active(const SpectralField& u, const MultiplierParams& p,
                           const TrackerConfig& cfg) {
    const FrequencyGrid& g = u.grid();
    ActiveModes a;
    a.H = g.max_index();
    const auto width = static_cast<std::size_t>(2 * a.H + 1);
    a.coeff.assign(width, cplx{});
    a.w.assign(width, 0.0);
    a.cube.assign(width, 0);
    const double thr = cfg.amp_threshold * u.max_abs_coeff();
    for (int n = -a.H; n <= a.H; ++n) {
        const auto i = static_cast<std::size_t>(n + a.H);
        const double k = g.wavenumber(n);
        const double m = m_eval(p, k);
        a.w[i] = std::abs(k) >= p.N() ? (m * m - 1.0) * k : 0.0;
        a.cube[i] = static_cast<std::int64_t>(n) * n * n;
        const cplx c = u.coeff(n);
        if (c == cplx{} || std::abs(c) < thr || std::abs(k) > cfg.mode_cutoff) continue;
        a.coeff[i] = c;
        a.index.push_back(n);
    }
    return a;
}

}  // namespace

QuinticSum lambda5(const SpectralField& u, const MultiplierParams& p, QuinticSymbol symbol,
                   const TrackerConfig& cfg) {
    cfg.validate();
    const ActiveModes a = collect_active(u, p, cfg);
    const auto A = static_cast<double>(a.index.size());
    if (A * A * A * A > cfg.budget) {
        const int fit = static_cast<int>(std::floor(std::pow(cfg.budget, 0.25)));
        const double cut = u.grid().dk() * std::max(0, (fit - 1) / 2);
        throw BudgetError("lambda5: " + std::to_string(a.index.size()) +
                          " active modes exceed the quadruple budget; try mode_cutoff <= " +
                          std::to_string(cut) + " or a larger amp_threshold");
    }

    const double dk = u.grid().dk();
    const long double dk3 = static_cast<long double>(dk) * dk * dk;
    const long double K = cfg.resolved_K(p);
    const int H = a.H;
    const auto nA = static_cast<long>(a.index.size());
    std::vector<cplx> chunk_value(a.index.size());
    std::vector<std::int64_t> chunk_count(a.index.size(), 0);

#pragma omp parallel for schedule(dynamic, 1)
    for (long i1 = 0; i1 < nA; ++i1) {
        const int n1 = a.index[i1];
        ComplexCompensatedSum acc;
        std::int64_t count = 0;
        // The summand is symmetric in (n1, n2, n3): visit n1 <= n2 <= n3 once and
        // weight by the number of distinct orderings.
        for (long i2 = i1; i2 < nA; ++i2) {
            const int n2 = a.index[i2];
            for (long i3 = i2; i3 < nA; ++i3) {
                const int n3 = a.index[i3];
                const double mult = i1 == i3 ? 1.0 : (i1 == i2 || i2 == i3 ? 3.0 : 6.0);
                const int s3 = n1 + n2 + n3;
                const int lo = std::max(-H, -H - s3);
                const int hi = std::min(H, H - s3);
                if (lo > hi) continue;
                const cplx c123 = a.coeff[n1 + H] * a.coeff[n2 + H] * a.coeff[n3 + H];
                const double w123 = a.w[n1 + H] + a.w[n2 + H] + a.w[n3 + H];
                const std::int64_t q123 = a.cube[n1 + H] + a.cube[n2 + H] + a.cube[n3 + H];
                cplx inner{};
                auto it = std::lower_bound(a.index.begin(), a.index.end(), lo);
                for (; it != a.index.end() && *it <= hi; ++it) {
                    const int n4 = *it;
                    const int n5 = -s3 - n4;
                    count += static_cast<std::int64_t>(mult);
                    const cplx c5 = a.coeff[n5 + H];
                    if (c5 == cplx{}) continue;
                    const double W = w123 + a.w[n4 + H] + a.w[n5 + H];
                    if (W == 0.0) continue;
                    double sym = W;
                    if (symbol == QuinticSymbol::correction) {
                        const std::int64_t q = q123 + a.cube[n4 + H] + a.cube[n5 + H];
                        const long double phi = dk3 * static_cast<long double>(q);
                        if (q == 0 || std::fabs(phi) <= K) continue;
                        sym = static_cast<double>(2.0L * W / (5.0L * phi));
                    }
                    inner += sym * (a.coeff[n4 + H] * c5);
                }
                acc.add(mult * (c123 * inner));
            }
        }
        chunk_value[i1] = acc.value();
        chunk_count[i1] = count;
    }

    ComplexCompensatedSum total;
    QuinticSum out;
    for (std::size_t i = 0; i < chunk_value.size(); ++i) {
        total.add(chunk_value[i]);
        out.quadruples += chunk_count[i];
    }
    out.value = u.grid().parseval() * total.value();
    out.active_modes = static_cast<int>(a.index.size());
    return out;
}

double quintic_correction(const SpectralField& u, const MultiplierParams& p,
                          const TrackerConfig& cfg) {
    const cplx v = lambda5(u, p, QuinticSymbol::correction, cfg).value;
    const double scale = std::abs(v.real()) + energy_E1(u, p);
    if (std::abs(v.imag()) > cfg.tol_reality * scale) {
        throw Error("quintic_correction: imaginary residue " + std::to_string(v.imag()) +
                    " exceeds tolerance; is the field Hermitian?");
    }
    return v.real();
}

double dE1_from_lambda5(const SpectralField& u, const MultiplierParams& p,
                        const TrackerConfig& cfg) {
    // -(2i/5) * (x + iy) has real part (2/5) y.
    return 0.4 * lambda5(u, p, QuinticSymbol::m1, cfg).value.imag();
}

EnergyRecord energy_record(double t, const SpectralField& u, const MultiplierParams& p,
                           const TrackerConfig& cfg) {
    EnergyRecord r;
    r.t = t;
    r.E1 = energy_E1(u, p);
    r.corr5 = quintic_correction(u, p, cfg);
    r.E2 = r.E1 + r.corr5;
    return r;
}

void write_energy_csv_header(std::ostream& os) { os << "t,E1,corr5,E2,dE1_fd,dE1_lambda5\n"; }

void write_energy_csv_row(std::ostream& os, const EnergyRecord& r) {
    auto opt = [](const std::optional<double>& v) {
        if (!v) return std::string("nan");
        std::ostringstream s;
        s << std::setprecision(17) << *v;
        return s.str();
    };
    os << std::setprecision(17) << r.t << ',' << r.E1 << ',' << r.corr5 << ',' << r.E2 << ','
       << opt(r.dE1_fd) << ',' << opt(r.dE1_lambda5) << "\n";
}

CrosscheckResult derivative_crosscheck(const Trajectory& traj, const MultiplierParams& p,
                                       const TrackerConfig& cfg) {
    const std::size_t n = traj.size();
    if (n < 3) throw DomainError("derivative_crosscheck: need at least 3 samples");
    const double h = traj[1].t - traj[0].t;
    if (!(h > 0.0)) throw DomainError("derivative_crosscheck: times must increase");
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((traj[i].t - traj[i - 1].t) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw DomainError("derivative_crosscheck: samples must be equally spaced");
        }
    }

    CrosscheckResult res;
    res.records.reserve(n);
    for (const Snapshot& s : traj) {
        res.records.push_back(energy_record(s.t, s.u, p, cfg));
    }
    auto E = [&](std::size_t i) { return res.records[i].E1; };
    const bool wide = n >= 5;
    const std::size_t first = wide ? 2 : 1;
    for (std::size_t i = first; i + first < n; ++i) {
        const double fd = wide ? (-E(i + 2) + 8.0 * E(i + 1) - 8.0 * E(i - 1) + E(i - 2)) / (12.0 * h)
                               : (E(i + 1) - E(i - 1)) / (2.0 * h);
        const double lam = dE1_from_lambda5(traj[i].u, p, cfg);
        res.records[i].dE1_fd = fd;
        res.records[i].dE1_lambda5 = lam;
        res.scale = std::max(res.scale, std::abs(lam));
        res.max_abs_mismatch = std::max(res.max_abs_mismatch, std::abs(fd - lam));
    }
    if (res.scale > 0.0) {
        res.max_relative_mismatch = res.max_abs_mismatch / res.scale;
    } else {
        res.max_relative_mismatch = res.max_abs_mismatch > 0.0
                                        ? std::numeric_limits<double>::infinity()
                                        : 0.0;
    }
    return res;
}

}  // namespace imethod
