#include "imethod_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "imethod/error.hpp"

namespace imethod::cli {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out = "invalid config:";
    for (const auto& x : xs) out += "\n  " + x;
    return out;
}

// Walks one JSON object, records type errors and unknown keys under a dotted path.
class Reader {
public:
    Reader(const json* j, std::string path, std::vector<std::string>& problems)
        : j_(j), path_(std::move(path)), problems_(problems) {
        if (j_ && !j_->is_object()) {
            fail("", "expected an object");
            j_ = nullptr;
        }
    }

    ~Reader() {
        if (!j_) return;
        for (const auto& [k, v] : j_->items()) {
            if (!seen_.count(k)) problems_.push_back(at(k) + ": unknown key");
        }
    }

    Reader section(const std::string& key) {
        seen_.insert(key);
        const json* sub = j_ && j_->contains(key) ? &(*j_)[key] : nullptr;
        return Reader(sub, at(key), problems_);
    }

    const json* raw(const std::string& key) {
        seen_.insert(key);
        return j_ && j_->contains(key) ? &(*j_)[key] : nullptr;
    }

    void get(const std::string& key, double& out) {
        if (const json* v = raw(key)) {
            if (v->is_number()) out = v->get<double>();
            else fail(key, "expected a number");
        }
    }

    void get(const std::string& key, int& out) {
        if (const json* v = raw(key)) {
            if (v->is_number_integer()) out = v->get<int>();
            else fail(key, "expected an integer");
        }
    }

    void get(const std::string& key, std::int64_t& out) {
        if (const json* v = raw(key)) {
            if (v->is_number_integer()) out = v->get<std::int64_t>();
            else if (v->is_number_float() && std::floor(v->get<double>()) == v->get<double>())
                out = static_cast<std::int64_t>(v->get<double>());
            else fail(key, "expected an integer");
        }
    }

    void get(const std::string& key, std::uint64_t& out) {
        if (const json* v = raw(key)) {
            if (v->is_number_unsigned()) out = v->get<std::uint64_t>();
            else fail(key, "expected a non-negative integer");
        }
    }

    void get(const std::string& key, bool& out) {
        if (const json* v = raw(key)) {
            if (v->is_boolean()) out = v->get<bool>();
            else fail(key, "expected true or false");
        }
    }

    void get(const std::string& key, std::string& out) {
        if (const json* v = raw(key)) {
            if (v->is_string()) out = v->get<std::string>();
            else fail(key, "expected a string");
        }
    }

    void get(const std::string& key, std::vector<double>& out) {
        if (const json* v = raw(key)) {
            if (!v->is_array()) return fail(key, "expected an array of numbers");
            std::vector<double> xs;
            for (const auto& e : *v) {
                if (!e.is_number()) return fail(key, "expected an array of numbers");
                xs.push_back(e.get<double>());
            }
            out = std::move(xs);
        }
    }

    void get(const std::string& key, std::vector<int>& out) {
        if (const json* v = raw(key)) {
            if (!v->is_array()) return fail(key, "expected an array of integers");
            std::vector<int> xs;
            for (const auto& e : *v) {
                if (!e.is_number_integer()) return fail(key, "expected an array of integers");
                xs.push_back(e.get<int>());
            }
            out = std::move(xs);
        }
    }

    /// null or "auto" clear the value, a number sets it.
    void get(const std::string& key, std::optional<double>& out) {
        if (const json* v = raw(key)) {
            if (v->is_null() || (v->is_string() && v->get<std::string>() == "auto")) out.reset();
            else if (v->is_number()) out = v->get<double>();
            else fail(key, "expected a number, null or \"auto\"");
        }
    }

    template <class Enum, class Parse>
    void get_enum(const std::string& key, Enum& out, Parse parse) {
        std::string name;
        if (!raw(key)) return;
        get(key, name);
        if (name.empty()) return;
        try {
            out = parse(name);
        } catch (const Error& e) {
            fail(key, e.what());
        }
    }

    void fail(const std::string& key, const std::string& msg) {
        problems_.push_back((key.empty() ? path_ : at(key)) + ": " + msg);
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const json* j_;
    std::string path_;
    std::vector<std::string>& problems_;
    std::set<std::string> seen_;
};

void check(std::vector<std::string>& problems, bool ok, const std::string& path,
           const std::string& msg) {
    if (!ok) problems.push_back(path + ": " + msg);
}

PhaseKind parse_phase(const std::string& name) {
    if (name == "phi5") return PhaseKind::phi5;
    if (name == "linear") return PhaseKind::linear;
    throw DomainError("unknown phase '" + name + "' (phi5 | linear)");
}

std::string phase_name(PhaseKind p) { return p == PhaseKind::phi5 ? "phi5" : "linear"; }

SublevelCase parse_case(const json& j, const std::string& path, std::vector<std::string>& problems) {
    SublevelCase c;
    Reader r(&j, path, problems);
    r.get("name", c.name);
    r.get_enum("weight", c.weight, parse_weight_kind);
    r.get_enum("phase", c.phase, parse_phase);
    r.get("linear_index", c.linear_index);
    r.get_enum("restriction", c.restriction, parse_restriction);
    r.get("free_indices", c.free_indices);
    if (const json* box = r.raw("box")) {
        if (box->is_string() && box->get<std::string>() == "auto") {
            c.box.reset();
        } else if (box->is_array() && box->size() == 2 && (*box)[0].is_number() &&
                   (*box)[1].is_number()) {
            c.box = std::make_pair((*box)[0].get<double>(), (*box)[1].get<double>());
        } else {
            r.fail("box", "expected \"auto\" or [lo, hi]");
        }
    }
    std::vector<double> window{c.slope_min, c.slope_max};
    r.get("slope_window", window);
    if (window.size() == 2) {
        c.slope_min = window[0];
        c.slope_max = window[1];
    } else {
        r.fail("slope_window", "expected [min, max]");
    }
    if (c.name.empty()) r.fail("name", "required");
    return c;
}

void validate(const RunConfig& c, std::vector<std::string>& p) {
    check(p, c.schema_version == kSchemaVersion, "schema_version",
          "unsupported version " + std::to_string(c.schema_version));
    check(p, c.global.epsilon > 0.0 && c.global.epsilon < 0.5, "global.epsilon", "must lie in (0, 1/2)");
    check(p, !c.global.output_dir.empty(), "global.output_dir", "must not be empty");
    check(p, c.solver.L > 0.0, "solver.L", "must be > 0");
    check(p, c.solver.M >= 4 && c.solver.M % 2 == 0, "solver.M", "must be even and >= 4");
    check(p, c.solver.dt > 0.0, "solver.dt", "must be > 0");
    check(p, c.solver.T_end >= 0.0, "solver.T_end", "must be >= 0");
    check(p, c.solver.dealias_pad >= 2.5, "solver.dealias_pad", "must be >= 2.5");
    check(p, c.initial_data.Hs_target > 0.0, "initial_data.Hs_target", "must be > 0");
    check(p, c.initial_data.band_min <= c.initial_data.band_max, "initial_data.band_max",
          "must be >= band_min");
    check(p, c.multiplier.s > -1.0 / 6.0 && c.multiplier.s <= 0.0, "multiplier.s", "must lie in (-1/6, 0]");
    check(p, c.multiplier.N >= 1.0, "multiplier.N", "must be >= 1");
    check(p, !c.multiplier.N_list.empty(), "multiplier.N_list", "must not be empty");
    for (double N : c.multiplier.N_list) check(p, N >= 1.0, "multiplier.N_list", "entries must be >= 1");
    check(p, !c.multiplier.K || *c.multiplier.K > 0.0, "multiplier.K", "must be > 0 or \"auto\"");
    check(p, c.tracker.stride >= 1, "tracker.stride", "must be >= 1");
    check(p, !c.tracker.mode_cutoff || *c.tracker.mode_cutoff > 0.0, "tracker.mode_cutoff", "must be > 0");
    check(p, c.tracker.amp_threshold >= 0.0, "tracker.amp_threshold", "must be >= 0");
    check(p, c.tracker.budget > 0.0, "tracker.budget", "must be > 0");
    check(p, c.pointwise.samples >= 1, "verification.pointwise.samples", "must be >= 1");
    check(p, !c.pointwise.N_list.empty(), "verification.pointwise.N_list", "must not be empty");
    for (double N : c.pointwise.N_list) {
        check(p, N >= 1.0, "verification.pointwise.N_list", "entries must be >= 1");
    }
    check(p, c.sublevel.N >= 1.0, "verification.sublevel.N", "must be >= 1");
    check(p, c.sublevel.configs >= 1, "verification.sublevel.configs", "must be >= 1");
    check(p, c.sublevel.samples >= 1000, "verification.sublevel.samples", "must be >= 1000");
    check(p, c.sublevel.level_hi - c.sublevel.level_lo >= 7, "verification.sublevel.levels",
          "need at least 8 dyadic levels");
    check(p, c.geometry.jacobian_samples >= 1, "verification.geometry.jacobian_samples", "must be >= 1");
    check(p, c.geometry.lower_bound_samples >= 1, "verification.geometry.lower_bound_samples",
          "must be >= 1");
    check(p, c.geometry.fd_tolerance > 0.0, "verification.geometry.fd_tolerance", "must be > 0");
    check(p, c.geometry.N > 0.0, "verification.geometry.N", "must be > 0");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

SolverConfig RunConfig::solver_config() const {
    SolverConfig s;
    s.dt = solver.dt;
    s.T_end = solver.T_end;
    s.dealias_pad = solver.dealias_pad;
    return s;
}

TrackerConfig RunConfig::tracker_config() const {
    TrackerConfig t;
    t.K = multiplier.K.value_or(0.0);
    if (tracker.mode_cutoff) t.mode_cutoff = *tracker.mode_cutoff;
    t.amp_threshold = tracker.amp_threshold;
    t.stride = tracker.stride;
    t.budget = tracker.budget;
    return t;
}

FrequencyGrid RunConfig::grid() const { return FrequencyGrid(solver.L, solver.M); }

std::vector<SublevelCase> default_sublevel_cases() {
    SublevelCase toy;
    toy.name = "linear_toy";
    toy.weight = WeightKind::constant;
    toy.phase = PhaseKind::linear;
    toy.linear_index = 0;
    toy.free_indices = {1, 2, 0, 4};
    toy.box = std::make_pair(-1.0, 1.0);
    toy.slope_min = 0.98;
    toy.slope_max = 1.02;

    SublevelCase basic;
    basic.name = "basic_smoothing";
    basic.weight = WeightKind::basic_smoothing;
    basic.free_indices = {0, 1, 4};

    SublevelCase quotient;
    quotient.name = "d3_quotient";
    quotient.weight = WeightKind::d3;
    quotient.restriction = Restriction::quotient_tail;
    quotient.free_indices = {0, 1, 4};
    quotient.slope_min = -0.15;
    quotient.slope_max = 0.05;
    return {toy, basic, quotient};
}

RunConfig default_config() {
    RunConfig c;
    c.initial_data.Hs_target = 0.5;
    c.initial_data.s = -1.0 / 48.0;
    c.initial_data.spectral_slope = 1.0;
    c.initial_data.band_max = c.solver.M / 2 - 1;
    c.initial_data.seed = c.global.seed;
    c.sublevel.cases = default_sublevel_cases();
    return c;
}

RunConfig parse_config(const json& j) {
    std::vector<std::string> problems;
    RunConfig c = default_config();
    {
        Reader root(&j, "", problems);
        root.get("schema_version", c.schema_version);
        if (!j.contains("schema_version")) problems.push_back("schema_version: required");
        {
            Reader g = root.section("global");
            g.get("seed", c.global.seed);
            g.get("epsilon", c.global.epsilon);
            g.get("output_dir", c.global.output_dir);
            g.get("extended_check", c.global.extended_check);
        }
        {
            Reader s = root.section("solver");
            s.get("L", c.solver.L);
            s.get("M", c.solver.M);
            s.get("dt", c.solver.dt);
            s.get("T_end", c.solver.T_end);
            s.get("dealias_pad", c.solver.dealias_pad);
        }
        {
            Reader d = root.section("initial_data");
            d.get_enum("kind", c.initial_data.kind, parse_initial_data_kind);
            d.get("Hs_target", c.initial_data.Hs_target);
            d.get("s", c.initial_data.s);
            d.get("spectral_slope", c.initial_data.spectral_slope);
            d.get("band_min", c.initial_data.band_min);
            c.initial_data.band_max = c.solver.M / 2 - 1;
            d.get("band_max", c.initial_data.band_max);
            d.get("bumps", c.initial_data.bumps);
            d.get("width_min", c.initial_data.width_min);
            d.get("width_max", c.initial_data.width_max);
        }
        {
            Reader m = root.section("multiplier");
            m.get("s", c.multiplier.s);
            m.get("N", c.multiplier.N);
            m.get("N_list", c.multiplier.N_list);
            m.get("K", c.multiplier.K);
        }
        {
            Reader t = root.section("tracker");
            t.get("stride", c.tracker.stride);
            t.get("mode_cutoff", c.tracker.mode_cutoff);
            t.get("amp_threshold", c.tracker.amp_threshold);
            t.get("budget", c.tracker.budget);
        }
        {
            Reader v = root.section("verification");
            {
                Reader pw = v.section("pointwise");
                pw.get("N_list", c.pointwise.N_list);
                pw.get("samples", c.pointwise.samples);
                pw.get("baseline_sup", c.pointwise.baseline_sup);
            }
            {
                Reader sl = v.section("sublevel");
                sl.get("N", c.sublevel.N);
                sl.get("configs", c.sublevel.configs);
                sl.get("samples", c.sublevel.samples);
                sl.get("level_lo", c.sublevel.level_lo);
                sl.get("level_hi", c.sublevel.level_hi);
                if (const json* cases = sl.raw("cases")) {
                    if (!cases->is_array()) {
                        sl.fail("cases", "expected an array");
                    } else {
                        c.sublevel.cases.clear();
                        for (std::size_t i = 0; i < cases->size(); ++i) {
                            c.sublevel.cases.push_back(parse_case(
                                (*cases)[i], sl.at("cases") + "[" + std::to_string(i) + "]", problems));
                        }
                    }
                }
            }
            {
                Reader ge = v.section("geometry");
                ge.get("jacobian_samples", c.geometry.jacobian_samples);
                ge.get("fd_tolerance", c.geometry.fd_tolerance);
                ge.get("N", c.geometry.N);
                ge.get("lower_bound_samples", c.geometry.lower_bound_samples);
                ge.get("morse_p3", c.geometry.morse_p3);
            }
        }
        {
            Reader pl = root.section("plan");
            pl.get("s", c.plan.s);
            pl.get("T", c.plan.T);
            pl.get("u0_norm", c.plan.u0_norm);
            pl.get("eps0", c.plan.eps0);
            pl.get("eta", c.plan.eta);
        }
    }
    c.initial_data.seed = c.global.seed;
    validate(c, problems);
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({path + ": cannot open"});
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({path + ": " + e.what()});
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json("auto"); };
    json cases = json::array();
    for (const SublevelCase& k : c.sublevel.cases) {
        cases.push_back({{"name", k.name},
                         {"weight", to_string(k.weight)},
                         {"phase", phase_name(k.phase)},
                         {"linear_index", k.linear_index},
                         {"restriction", to_string(k.restriction)},
                         {"free_indices", k.free_indices},
                         {"box", k.box ? json::array({k.box->first, k.box->second}) : json("auto")},
                         {"slope_window", {k.slope_min, k.slope_max}}});
    }
    const InitialDataSpec& d = c.initial_data;
    return {
        {"schema_version", c.schema_version},
        {"global",
         {{"seed", c.global.seed},
          {"epsilon", c.global.epsilon},
          {"output_dir", c.global.output_dir},
          {"extended_check", c.global.extended_check}}},
        {"solver",
         {{"L", c.solver.L},
          {"M", c.solver.M},
          {"dt", c.solver.dt},
          {"T_end", c.solver.T_end},
          {"dealias_pad", c.solver.dealias_pad}}},
        {"initial_data",
         {{"kind", to_string(d.kind)},
          {"Hs_target", d.Hs_target},
          {"s", d.s},
          {"spectral_slope", d.spectral_slope},
          {"band_min", d.band_min},
          {"band_max", d.band_max},
          {"bumps", d.bumps},
          {"width_min", d.width_min},
          {"width_max", d.width_max}}},
        {"multiplier",
         {{"s", c.multiplier.s},
          {"N", c.multiplier.N},
          {"N_list", c.multiplier.N_list},
          {"K", opt(c.multiplier.K)}}},
        {"tracker",
         {{"stride", c.tracker.stride},
          {"mode_cutoff", opt(c.tracker.mode_cutoff)},
          {"amp_threshold", c.tracker.amp_threshold},
          {"budget", c.tracker.budget}}},
        {"verification",
         {{"pointwise",
           {{"N_list", c.pointwise.N_list},
            {"samples", c.pointwise.samples},
            {"baseline_sup", c.pointwise.baseline_sup ? json(*c.pointwise.baseline_sup) : json(nullptr)}}},
          {"sublevel",
           {{"N", c.sublevel.N},
            {"configs", c.sublevel.configs},
            {"samples", c.sublevel.samples},
            {"level_lo", c.sublevel.level_lo},
            {"level_hi", c.sublevel.level_hi},
            {"cases", cases}}},
          {"geometry",
           {{"jacobian_samples", c.geometry.jacobian_samples},
            {"fd_tolerance", c.geometry.fd_tolerance},
            {"N", c.geometry.N},
            {"lower_bound_samples", c.geometry.lower_bound_samples},
            {"morse_p3", c.geometry.morse_p3}}}}},
        {"plan",
         {{"s", c.plan.s},
          {"T", c.plan.T},
          {"u0_norm", c.plan.u0_norm},
          {"eps0", c.plan.eps0},
          {"eta", c.plan.eta ? json(*c.plan.eta) : json(nullptr)}}},
    };
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256: digest failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

std::string config_hash(const RunConfig& c) { return sha256_hex(to_json(c).dump()); }

}  // namespace imethod::cli
