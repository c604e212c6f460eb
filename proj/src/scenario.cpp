#include "inertphase/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "inertphase/errors.hpp"
#include "inertphase/field.hpp"

namespace inertphase {

using nlohmann::json;

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::neutron: return "neutron";
        case ScenarioKind::ring: return "ring";
        case ScenarioKind::compare: return "compare";
        case ScenarioKind::sweep: return "sweep";
    }
    return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
    if (name == "neutron") return ScenarioKind::neutron;
    if (name == "ring") return ScenarioKind::ring;
    if (name == "compare") return ScenarioKind::compare;
    if (name == "sweep") return ScenarioKind::sweep;
    throw ConfigError("kind: unknown scenario kind '" + std::string(name) +
                      "' (expected neutron, ring, compare, sweep)");
}

namespace {

const std::set<std::string> sweepable = {"bmax_t", "t_on_s", "ramp_s", "width_s", "flat_s"};

// Reads keys out of one JSON object, remembering which were consumed so
// that leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path, std::vector<std::string>& issues)
        : obj_(obj), path_(std::move(path)), issues_(issues) {
        if (!obj_.is_object()) throw ParseError(path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    std::optional<double> number(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        const json& v = obj_.at(key);
        if (!v.is_number()) throw ParseError(name(key) + ": expected a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) {
        return number(key).value_or(fallback);
    }

    double required_number(const std::string& key) {
        auto v = number(key);
        if (!v) {
            issues_.push_back(name(key) + ": required");
            return std::nan("");
        }
        return *v;
    }

    std::optional<std::int64_t> integer(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        const json& v = obj_.at(key);
        if (!v.is_number_integer()) throw ParseError(name(key) + ": expected an integer");
        return v.get<std::int64_t>();
    }

    std::optional<std::string> string(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        const json& v = obj_.at(key);
        if (!v.is_string()) throw ParseError(name(key) + ": expected a string");
        return v.get<std::string>();
    }

    std::optional<Vec3> vec3(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        const json& v = obj_.at(key);
        if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
            !v[2].is_number()) {
            throw ParseError(name(key) + ": expected an array of 3 numbers");
        }
        return Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    }

    std::vector<double> numbers(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) return {};
        const json& v = obj_.at(key);
        if (!v.is_array()) throw ParseError(name(key) + ": expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ParseError(name(key) + ": expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::optional<ObjectReader> child(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        return ObjectReader(obj_.at(key), name(key), issues_);
    }

    void report_unknown() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.contains(key)) issues_.push_back(name(key) + ": unknown key");
        }
    }

    std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const json& obj_;
    std::string path_;
    std::vector<std::string>& issues_;
    std::set<std::string> seen_;
};

GridConfig read_grid(ObjectReader& r, std::vector<std::string>& issues) {
    GridConfig g;
    g.t_start_s = r.number_or("t_start_s", 0.0);
    g.t_end_s = r.required_number("t_end_s");
    if (auto n = r.integer("n_steps")) {
        if (*n < 2) {
            issues.push_back(r.name("n_steps") + ": must be at least 2");
        } else {
            g.n_steps = static_cast<std::size_t>(*n);
        }
    }
    r.report_unknown();
    return g;
}

// Pulse parameters as plain numbers, so sweeps can overwrite one by name.
struct PulseParams {
    PulseKind kind = PulseKind::constant;
    double bmax_t = 0.0;
    double t_on_s = 0.0;
    double ramp_s = 0.0;
    double width_s = 0.0;
    double flat_s = 0.0;

    double& by_name(const std::string& key) {
        if (key == "bmax_t") return bmax_t;
        if (key == "t_on_s") return t_on_s;
        if (key == "ramp_s") return ramp_s;
        if (key == "width_s") return width_s;
        return flat_s;
    }

    PulseProfile build() const {
        switch (kind) {
            case PulseKind::constant: return PulseProfile::constant(bmax_t);
            case PulseKind::linear_ramp: return PulseProfile::linear_ramp(bmax_t, t_on_s, ramp_s);
            case PulseKind::raised_cosine: return PulseProfile::raised_cosine(bmax_t, t_on_s, width_s);
            case PulseKind::smoothed_rectangle:
                return PulseProfile::smoothed_rectangle(bmax_t, t_on_s, ramp_s, flat_s);
        }
        return PulseProfile::constant(bmax_t);
    }
};

PulseParams params_of(const PulseProfile& p) {
    PulseParams out;
    out.kind = p.kind();
    out.bmax_t = p.amplitude();
    out.t_on_s = p.t_on();
    if (p.kind() == PulseKind::raised_cosine) {
        out.width_s = p.ramp();
    } else {
        out.ramp_s = p.ramp();
    }
    out.flat_s = p.flat();
    return out;
}

// Builds the profile, turning constructor failures into named issues.
std::optional<PulseProfile> try_build(const PulseParams& params, const std::string& where,
                                      std::vector<std::string>& issues) {
    try {
        return params.build();
    } catch (const ConfigError& e) {
        issues.push_back(where + ": " + e.what());
        return std::nullopt;
    }
}

struct FieldRead {
    FieldConfig config;
    PulseParams params;
    bool valid = false;
};

FieldRead read_field(ObjectReader& r, std::vector<std::string>& issues) {
    FieldRead out;
    const auto profile_name = r.string("profile");
    if (!profile_name) {
        issues.push_back(r.name("profile") + ": required");
    } else {
        try {
            out.params.kind = pulse_kind_from_string(*profile_name);
        } catch (const ConfigError& e) {
            issues.push_back(r.name("profile") + ": " + e.what());
            r.report_unknown();
            return out;
        }
    }
    out.params.bmax_t = r.required_number("bmax_t");
    out.params.t_on_s = r.number_or("t_on_s", 0.0);
    switch (out.params.kind) {
        case PulseKind::constant: break;
        case PulseKind::linear_ramp: out.params.ramp_s = r.required_number("ramp_s"); break;
        case PulseKind::raised_cosine: out.params.width_s = r.required_number("width_s"); break;
        case PulseKind::smoothed_rectangle:
            out.params.ramp_s = r.required_number("ramp_s");
            out.params.flat_s = r.number_or("flat_s", 0.0);
            break;
    }
    if (auto d = r.vec3("direction")) out.config.direction = *d;
    if (auto g = r.vec3("gradient_t_per_m")) out.config.gradient_t_per_m = *g;
    out.config.length_scale_m = r.number_or("length_scale_m", out.config.length_scale_m);
    out.config.uniformity_rel_tol = r.number_or("uniformity_rel_tol", out.config.uniformity_rel_tol);
    r.report_unknown();

    if (!is_finite(out.config.direction) || !is_unit(out.config.direction)) {
        issues.push_back(r.name("direction") + ": must be a unit vector (|d| = 1 within 1e-12)");
    }
    if (profile_name && std::isfinite(out.params.bmax_t)) {
        if (auto p = try_build(out.params, r.name("profile"), issues)) {
            out.config.profile = *p;
            out.valid = true;
        }
    }
    return out;
}

NeutronConfig read_neutron(ObjectReader& r) {
    NeutronConfig n;
    n.mass_kg = r.number_or("mass_kg", n.mass_kg);
    n.moment_magnitude_j_per_t = r.number_or("moment_magnitude_j_per_t", n.moment_magnitude_j_per_t);
    if (auto v = r.vec3("velocity_m_per_s")) n.velocity_m_per_s = *v;
    if (auto s = r.integer("spin_sign")) n.spin_sign = static_cast<int>(*s);
    r.report_unknown();
    return n;
}

RingConfig read_ring(ObjectReader& r, std::vector<std::string>& issues) {
    RingConfig g;
    g.radius_m = r.required_number("radius_m");
    g.current_a = r.number("current_a");
    g.device_mass_kg = r.required_number("device_mass_kg");
    g.fluid_mass_kg = r.required_number("fluid_mass_kg");
    g.axial_velocity_m_per_s = r.number_or("axial_velocity_m_per_s", 0.0);
    g.fluid_speed_m_per_s = r.required_number("fluid_speed_m_per_s");
    if (auto c = r.vec3("center_m")) g.center_m = *c;
    if (auto a = r.vec3("axis")) g.axis = *a;
    if (auto n = r.integer("n_segments")) {
        if (*n < 8) {
            issues.push_back(r.name("n_segments") + ": must be at least 8");
        } else {
            g.n_segments = static_cast<std::size_t>(*n);
        }
    }
    r.report_unknown();
    return g;
}

void validate_neutron(const NeutronConfig& n, std::vector<std::string>& issues) {
    if (!(n.mass_kg > 0.0)) issues.emplace_back("neutron.mass_kg: must be positive");
    if (!(n.moment_magnitude_j_per_t >= 0.0)) {
        issues.emplace_back("neutron.moment_magnitude_j_per_t: must be non-negative");
    }
    const double v_max = constants::max_speed_fraction_of_c * constants::speed_of_light;
    if (!is_finite(n.velocity_m_per_s) || !(norm(n.velocity_m_per_s) < v_max)) {
        issues.emplace_back("neutron.velocity_m_per_s: |v| must stay below 0.01 c (nonrelativistic limit)");
    }
    if (n.spin_sign != 1 && n.spin_sign != -1) {
        issues.emplace_back("neutron.spin_sign: must be +1 or -1");
    }
}

double moment_along_axis(const RingConfig& g, const NeutronConfig& n, const FieldConfig& f) {
    if (g.current_a) return std::numbers::pi * g.radius_m * g.radius_m * *g.current_a;
    return n.spin_sign * n.moment_magnitude_j_per_t * dot(f.direction, g.axis);
}

void validate_ring(const Scenario& s, const FieldConfig& field, std::vector<std::string>& issues) {
    const RingConfig& g = *s.ring;
    if (!(g.radius_m > 0.0)) issues.emplace_back("ring.radius_m: must be positive");
    if (g.current_a && !std::isfinite(*g.current_a)) issues.emplace_back("ring.current_a: must be finite");
    if (!(g.fluid_mass_kg > 0.0)) issues.emplace_back("ring.fluid_mass_kg: must be positive");
    if (!(g.device_mass_kg >= g.fluid_mass_kg)) {
        issues.emplace_back("ring.device_mass_kg: must be at least the fluid mass");
    }
    if (!is_finite(g.axis) || !is_unit(g.axis)) issues.emplace_back("ring.axis: must be a unit vector");
    if (!is_finite(g.center_m)) issues.emplace_back("ring.center_m: must be finite");
    if (!(std::abs(g.fluid_speed_m_per_s) > 0.0) || !std::isfinite(g.fluid_speed_m_per_s)) {
        issues.emplace_back("ring.fluid_speed_m_per_s: fluid must be moving at T_0");
    }

    const PulseProfile& p = field.profile;
    if (std::abs(p.value(s.grid.t_start_s)) > 1e-12 * std::abs(p.amplitude())) {
        issues.emplace_back("field: field must vanish at start (B(T_0) = 0 for ring runs)");
    }

    const NeutronConfig n = s.neutron.value_or(NeutronConfig{});
    if (s.kind == ScenarioKind::ring && !g.current_a) {
        issues.emplace_back("ring.current_a: required");
        return;
    }
    // Worst case |mu·B| is |mu| |B_max|; the fluid must never stall.
    const double mu = std::abs(moment_along_axis(g, n, field));
    const double ke0 = 0.5 * g.fluid_mass_kg * g.fluid_speed_m_per_s * g.fluid_speed_m_per_s;
    if (std::isfinite(ke0) && !(ke0 > mu * std::abs(p.amplitude()))) {
        issues.emplace_back(
            "ring.fluid_speed_m_per_s: initial fluid kinetic energy must exceed |mu·B| (fluid would stall)");
    }

    if (s.kind == ScenarioKind::compare) {
        const Vec3 mu_n = (n.spin_sign * n.moment_magnitude_j_per_t) * field.direction;
        const Vec3 mu_r = moment_along_axis(g, n, field) * g.axis;
        if (norm(mu_r - mu_n) > 1e-9 * norm(mu_n)) {
            issues.emplace_back("ring: moment must match the neutron moment in magnitude and direction");
        }
    }
}

void check_uniformity(const FieldConfig& f, double length_scale, const std::string& where,
                      std::vector<std::string>& issues) {
    if (!is_practically_uniform(f.gradient_t_per_m, length_scale, f.profile.amplitude(),
                                f.uniformity_rel_tol)) {
        issues.push_back(where + ": field must be spatially uniform (gradient exceeds tolerance)");
    }
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view default_id) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
    }

    std::vector<std::string> issues;
    ObjectReader root(doc, "", issues);
    Scenario s;
    s.id = root.string("id").value_or(std::string(default_id));

    const auto kind = root.string("kind");
    bool kind_ok = false;
    if (!kind) {
        issues.emplace_back("kind: required");
    } else {
        try {
            s.kind = scenario_kind_from_string(*kind);
            kind_ok = true;
        } catch (const ConfigError& e) {
            issues.emplace_back(e.what());
        }
    }

    if (auto g = root.child("grid")) {
        s.grid = read_grid(*g, issues);
    } else {
        issues.emplace_back("grid: required");
    }
    if (auto q = root.child("quadrature")) {
        if (auto m = q->string("method")) {
            try {
                s.method = quadrature_method_from_string(*m);
            } catch (const ConfigError& e) {
                issues.push_back(q->name("method") + ": " + e.what());
            }
        }
        s.rel_tol = q->number_or("rel_tol", s.rel_tol);
        q->report_unknown();
    }

    FieldRead field;
    if (auto f = root.child("field")) {
        field = read_field(*f, issues);
        s.field = field.config;
    } else {
        issues.emplace_back("field: required");
    }

    const bool has_neutron = root.has("neutron");
    const bool has_ring = root.has("ring");
    const bool has_sweep = root.has("sweep");
    if (auto n = root.child("neutron")) s.neutron = read_neutron(*n);
    if (auto r = root.child("ring")) s.ring = read_ring(*r, issues);
    if (auto w = root.child("sweep")) {
        SweepConfig sw;
        sw.parameter = w->string("parameter").value_or("");
        sw.values = w->numbers("values");
        w->report_unknown();
        s.sweep = sw;
    }
    s.visibility = root.number_or("visibility", 1.0);
    if (auto o = root.child("output")) {
        s.output_dir = o->string("dir").value_or(".");
        o->report_unknown();
    }
    if (auto w = root.integer("workers")) {
        if (*w < 1) {
            issues.emplace_back("workers: must be at least 1");
        } else {
            s.workers = static_cast<std::size_t>(*w);
        }
    }
    root.report_unknown();

    // Exactly the blocks each kind needs.
    if (kind_ok) {
        const bool want_ring = s.kind == ScenarioKind::ring || s.kind == ScenarioKind::compare;
        const bool allow_neutron = s.kind != ScenarioKind::ring;
        const bool want_sweep = s.kind == ScenarioKind::sweep;
        if (want_ring && !has_ring) issues.emplace_back("ring: required for kind " + *kind);
        if (!want_ring && has_ring) issues.emplace_back("ring: not allowed for kind " + *kind);
        if (!allow_neutron && has_neutron) issues.emplace_back("neutron: not allowed for kind " + *kind);
        if (want_sweep && !has_sweep) issues.emplace_back("sweep: required for kind " + *kind);
        if (!want_sweep && has_sweep) issues.emplace_back("sweep: not allowed for kind " + *kind);
        if (allow_neutron && !s.neutron) s.neutron = NeutronConfig{};
    }

    // Grid and quadrature.
    if (std::isfinite(s.grid.t_end_s) && !(s.grid.t_end_s > s.grid.t_start_s)) {
        issues.emplace_back("grid.t_end_s: must exceed grid.t_start_s");
    }
    if (s.method == QuadratureMethod::simpson && s.grid.n_steps % 2 != 0) {
        issues.emplace_back("grid.n_steps: simpson quadrature needs an even step count");
    }
    if (!(s.rel_tol > 0.0)) issues.emplace_back("quadrature.rel_tol: must be positive");
    if (!(s.visibility >= 0.0 && s.visibility <= 1.0)) {
        issues.emplace_back("visibility: must lie in [0, 1]");
    }

    if (s.neutron) validate_neutron(*s.neutron, issues);

    double length_scale = s.field.length_scale_m;
    if (s.ring && s.ring->radius_m > 0.0) length_scale = std::max(length_scale, 2.0 * s.ring->radius_m);

    if (field.valid) {
        check_uniformity(s.field, length_scale, "field", issues);
        if (s.ring && kind_ok) validate_ring(s, s.field, issues);
    }

    // Sweep expansion: one sub-run per value, the named pulse parameter replaced.
    if (kind_ok && s.kind == ScenarioKind::sweep && s.sweep) {
        const SweepConfig& sw = *s.sweep;
        if (!sweepable.contains(sw.parameter)) {
            issues.emplace_back("sweep.parameter: must be one of bmax_t, t_on_s, ramp_s, width_s, flat_s");
        } else if (sw.values.empty()) {
            issues.emplace_back("sweep.values: at least one value required");
        } else if (field.valid) {
            for (std::size_t i = 0; i < sw.values.size(); ++i) {
                PulseParams params = field.params;
                params.by_name(sw.parameter) = sw.values[i];
                const std::string where = "sweep.values[" + std::to_string(i) + "]";
                if (auto p = try_build(params, where, issues)) {
                    SubRun sub;
                    sub.id = s.id + "_" + std::to_string(i);
                    sub.parameter_value = sw.values[i];
                    sub.field = s.field;
                    sub.field.profile = *p;
                    check_uniformity(sub.field, length_scale, where, issues);
                    s.sub_runs.push_back(std::move(sub));
                }
            }
        }
    }

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::filesystem::filesystem_error("cannot open scenario", path,
                                                     std::make_error_code(std::errc::no_such_file_or_directory));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.stem().string());
}

namespace {

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json field_json(const FieldConfig& f) {
    const PulseParams p = params_of(f.profile);
    json j;
    j["profile"] = std::string(to_string(p.kind));
    j["bmax_t"] = p.bmax_t;
    switch (p.kind) {
        case PulseKind::constant: break;
        case PulseKind::linear_ramp:
            j["t_on_s"] = p.t_on_s;
            j["ramp_s"] = p.ramp_s;
            break;
        case PulseKind::raised_cosine:
            j["t_on_s"] = p.t_on_s;
            j["width_s"] = p.width_s;
            break;
        case PulseKind::smoothed_rectangle:
            j["t_on_s"] = p.t_on_s;
            j["ramp_s"] = p.ramp_s;
            j["flat_s"] = p.flat_s;
            break;
    }
    j["direction"] = vec_json(f.direction);
    j["gradient_t_per_m"] = vec_json(f.gradient_t_per_m);
    j["length_scale_m"] = f.length_scale_m;
    j["uniformity_rel_tol"] = f.uniformity_rel_tol;
    return j;
}

}  // namespace

std::string write_scenario(const Scenario& s) {
    json j;
    j["id"] = s.id;
    j["kind"] = std::string(to_string(s.kind));
    j["grid"] = {{"t_start_s", s.grid.t_start_s}, {"t_end_s", s.grid.t_end_s}, {"n_steps", s.grid.n_steps}};
    j["quadrature"] = {{"method", std::string(to_string(s.method))}, {"rel_tol", s.rel_tol}};
    j["field"] = field_json(s.field);
    if (s.neutron) {
        const NeutronConfig& n = *s.neutron;
        j["neutron"] = {{"mass_kg", n.mass_kg},
                        {"moment_magnitude_j_per_t", n.moment_magnitude_j_per_t},
                        {"velocity_m_per_s", vec_json(n.velocity_m_per_s)},
                        {"spin_sign", n.spin_sign}};
    }
    if (s.ring) {
        const RingConfig& g = *s.ring;
        json r = {{"radius_m", g.radius_m},
                  {"device_mass_kg", g.device_mass_kg},
                  {"fluid_mass_kg", g.fluid_mass_kg},
                  {"axial_velocity_m_per_s", g.axial_velocity_m_per_s},
                  {"fluid_speed_m_per_s", g.fluid_speed_m_per_s},
                  {"center_m", vec_json(g.center_m)},
                  {"axis", vec_json(g.axis)},
                  {"n_segments", g.n_segments}};
        if (g.current_a) r["current_a"] = *g.current_a;
        j["ring"] = r;
    }
    if (s.sweep) j["sweep"] = {{"parameter", s.sweep->parameter}, {"values", s.sweep->values}};
    j["visibility"] = s.visibility;
    j["output"] = {{"dir", s.output_dir}};
    j["workers"] = s.workers;
    return j.dump(2) + "\n";
}

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ParseError*>(&e)) return static_cast<int>(ExitCode::parse);
    if (dynamic_cast<const ConfigError*>(&e)) return static_cast<int>(ExitCode::validation);
    if (dynamic_cast<const ConvergenceError*>(&e)) return static_cast<int>(ExitCode::convergence);
    if (dynamic_cast<const PhysicalValidityError*>(&e)) {
        return static_cast<int>(ExitCode::physical_validity);
    }
    if (dynamic_cast<const NumericalError*>(&e)) return static_cast<int>(ExitCode::numerical);
    if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return static_cast<int>(ExitCode::io);
    if (dynamic_cast<const std::ios_base::failure*>(&e)) return static_cast<int>(ExitCode::io);
    return 1;
}

}  // namespace inertphase
