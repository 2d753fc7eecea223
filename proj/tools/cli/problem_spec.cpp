#include "cli/problem_spec.hpp"

#include <fstream>
#include <random>

namespace cexpr::cli {

using nlohmann::json;

namespace {

constexpr std::pair<std::string_view, FormKind> kFormNames[] = {
    {"one-point-linear", FormKind::OnePointLinear},
    {"one-point-additive", FormKind::OnePointAdditive},
    {"one-point-rational", FormKind::OnePointRational},
    {"one-point-combined", FormKind::OnePointCombined},
    {"taylor", FormKind::Taylor},
    {"waring", FormKind::Waring},
    {"waring-vector", FormKind::WaringVector},
    {"stack", FormKind::Stack},
    {"two-derivative", FormKind::TwoDerivative},
    {"periodic-continuous", FormKind::PeriodicContinuous},
    {"periodic-discontinuous", FormKind::PeriodicDiscontinuous},
    {"periodic-waring", FormKind::PeriodicWaring},
};

class Resolver {
public:
    Resolver(ConstantMap constants, std::string variable)
        : constants_(std::move(constants)), variable_(std::move(variable)) {}

    const ConstantMap& constants() const { return constants_; }

    double number(const json& node, std::string_view what) const {
        if (node.is_number()) {
            return node.get<double>();
        }
        if (node.is_string()) {
            return parse_constant(node.get<std::string>(), constants_);
        }
        throw SpecError(std::string(what) + ": expected a number or constant expression");
    }

    double number_field(const json& object, const char* key) const {
        if (!object.is_object() || !object.contains(key)) {
            throw SpecError(std::string("missing field '") + key + "'");
        }
        return number(object.at(key), key);
    }

    unsigned order_field(const json& object, const char* key) const {
        if (!object.contains(key)) {
            throw SpecError(std::string("missing field '") + key + "'");
        }
        const json& node = object.at(key);
        if (!node.is_number_integer() || node.get<long long>() < 0) {
            throw SpecError(std::string("field '") + key + "' must be a nonnegative integer");
        }
        return node.get<unsigned>();
    }

    std::vector<double> numbers(const json& node, std::string_view what) const {
        if (!node.is_array()) {
            throw SpecError(std::string(what) + ": expected an array");
        }
        std::vector<double> out;
        for (const auto& item : node) {
            out.push_back(number(item, what));
        }
        return out;
    }

    FreeFunction function(const std::string& text, const ConstantMap& extra = {}) const {
        ParseOptions options;
        options.constants = constants_;
        for (const auto& [name, value] : extra) {
            options.constants[name] = value;
        }
        options.variable = variable_;
        return FreeFunction::expression(parse(text, options));
    }

private:
    ConstantMap constants_;
    std::string variable_;
};

ConstantMap read_constants(const json& node, const ConstantMap& base) {
    ConstantMap out = base;
    if (!node.is_object()) {
        throw SpecError("'consts' must be an object");
    }
    for (const auto& [name, value] : node.items()) {
        if (value.is_number()) {
            out[name] = value.get<double>();
        } else if (value.is_string()) {
            out[name] = parse_constant(value.get<std::string>(), out);
        } else {
            throw SpecError("constant '" + name + "' must be a number or expression");
        }
    }
    return out;
}

LinearConstraint read_constraint(const json& node, const Resolver& r) {
    if (!node.is_object() || node.size() != 1) {
        throw SpecError("each constraint must be an object with exactly one of "
                        "'point', 'derivative', 'relative', 'linear'");
    }
    const auto& [kind, body] = *node.items().begin();
    if (kind == "point") {
        return point_constraint(r.number_field(body, "x"), r.number_field(body, "y"));
    }
    if (kind == "derivative") {
        return derivative_constraint(r.number_field(body, "x"), r.order_field(body, "d"),
                                     r.number_field(body, "v"));
    }
    if (kind == "relative") {
        return relative_constraint(r.number_field(body, "xi"), r.order_field(body, "di"),
                                   r.number_field(body, "xj"), r.order_field(body, "dj"));
    }
    if (kind == "linear") {
        if (!body.contains("terms") || !body.at("terms").is_array() || body.at("terms").empty()) {
            throw SpecError("linear constraint needs a nonempty 'terms' array");
        }
        std::vector<ConstraintTerm> terms;
        for (const auto& t : body.at("terms")) {
            terms.push_back({r.number_field(t, "alpha"), r.order_field(t, "d"), r.number_field(t, "x")});
        }
        return LinearConstraint::unchecked(r.number_field(body, "c"), std::move(terms));
    }
    throw SpecError("unknown constraint kind '" + kind + "'");
}

std::vector<Node> read_points(const json& node, const Resolver& r) {
    if (!node.is_array() || node.empty()) {
        throw SpecError("'points' must be a nonempty array of [x, y] pairs");
    }
    std::vector<Node> points;
    for (const auto& item : node) {
        const auto xy = r.numbers(item, "points");
        if (xy.size() != 2) {
            throw SpecError("each point must be [x, y]");
        }
        points.push_back({xy[0], xy[1]});
    }
    return points;
}

void read_anchor(const json& body, const Resolver& r, FormSpec& form) {
    if (!body.contains("anchor")) {
        throw SpecError("form needs 'anchor': [x, y]");
    }
    const auto xy = r.numbers(body.at("anchor"), "anchor");
    if (xy.size() != 2) {
        throw SpecError("'anchor' must be [x, y]");
    }
    form.x1 = xy[0];
    form.y1 = xy[1];
}

std::vector<Waypoint> read_waypoints(const json& body, const Resolver& r, std::vector<std::string>& notes) {
    std::vector<Waypoint> waypoints;
    if (body.contains("waypoints")) {
        for (const auto& w : body.at("waypoints")) {
            waypoints.push_back({r.number_field(w, "t"), r.numbers(w.at("y"), "waypoint y")});
        }
        return waypoints;
    }
    if (!body.contains("values")) {
        throw SpecError("waring-vector form needs 'waypoints' or 'values'");
    }
    const json& values = body.at("values");
    if (!values.is_array() || values.empty()) {
        throw SpecError("'values' must be a nonempty array of vectors");
    }
    std::vector<double> times;
    if (body.contains("times")) {
        times = r.numbers(body.at("times"), "times");
        if (times.size() != values.size()) {
            throw SpecError("'times' and 'values' differ in length");
        }
    } else {
        double lo = 0.0;
        double hi = 1.0;
        if (body.contains("interval")) {
            const auto iv = r.numbers(body.at("interval"), "interval");
            if (iv.size() != 2 || !(iv[0] < iv[1])) {
                throw SpecError("'interval' must be [a, b] with a < b");
            }
            lo = iv[0];
            hi = iv[1];
        }
        const std::size_t n = values.size();
        for (std::size_t k = 0; k < n; ++k) {
            times.push_back(n == 1 ? lo : lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(n - 1)));
        }
        notes.push_back("waypoint times not given; assumed equally spaced on [" + format_number(lo) + ", " +
                        format_number(hi) + "]");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        waypoints.push_back({times[k], r.numbers(values[k], "values")});
    }
    return waypoints;
}

FormSpec read_form(const json& body, const Resolver& r, std::vector<std::string>& notes) {
    if (!body.is_object() || !body.contains("kind") || !body.at("kind").is_string()) {
        throw SpecError("'form' must be an object with a string 'kind'");
    }
    const std::string name = body.at("kind").get<std::string>();
    const auto kind = form_kind_from_name(name);
    if (!kind) {
        throw SpecError("unknown form kind '" + name + "'");
    }
    FormSpec form;
    form.kind = *kind;
    if (body.contains("p") && body.at("p").is_string()) {
        form.p = r.function(body.at("p").get<std::string>());
    }
    if (body.contains("h") && body.at("h").is_string()) {
        form.h = r.function(body.at("h").get<std::string>());
    }
    switch (form.kind) {
    case FormKind::OnePointLinear:
        read_anchor(body, r, form);
        if (!form.p) {
            throw SpecError("one-point-linear needs 'p'");
        }
        break;
    case FormKind::OnePointRational:
        read_anchor(body, r, form);
        if (!form.h) {
            throw SpecError("one-point-rational needs 'h'");
        }
        break;
    case FormKind::OnePointAdditive:
    case FormKind::OnePointCombined:
    case FormKind::PeriodicContinuous:
    case FormKind::PeriodicDiscontinuous:
        read_anchor(body, r, form);
        break;
    case FormKind::Taylor:
        form.x1 = r.number_field(body, "x1");
        form.values = r.numbers(body.at("values"), "values");
        if (form.values.empty()) {
            throw SpecError("taylor form needs at least one value");
        }
        break;
    case FormKind::Stack:
        form.x1 = r.number_field(body, "x0");
        form.values = r.numbers(body.at("values"), "values");
        if (form.values.empty()) {
            throw SpecError("stack form needs at least one value");
        }
        break;
    case FormKind::TwoDerivative:
        form.x1 = r.number_field(body, "x1");
        form.p_order = r.order_field(body, "p");
        form.q_order = r.order_field(body, "q");
        form.vp = r.number_field(body, "vp");
        form.vq = r.number_field(body, "vq");
        if (form.p_order >= form.q_order) {
            throw SpecError("two-derivative form needs p < q");
        }
        break;
    case FormKind::Waring:
    case FormKind::PeriodicWaring:
        form.points = read_points(body.contains("points") ? body.at("points") : json(), r);
        break;
    case FormKind::WaringVector:
        form.waypoints = read_waypoints(body, r, notes);
        break;
    }
    return form;
}

PeriodicSpec read_periodic(const json& body, const Resolver& r) {
    PeriodicSpec spec;
    spec.period = r.number_field(body, "period");
    spec.shift = body.contains("shift") ? r.number(body.at("shift"), "shift") : 0.0;
    const std::string kind = body.value("kind", std::string("continuous"));
    if (kind == "continuous") {
        spec.kind = PeriodicSpec::Kind::Continuous;
    } else if (kind == "discontinuous") {
        spec.kind = PeriodicSpec::Kind::Discontinuous;
    } else {
        throw SpecError("periodic kind must be 'continuous' or 'discontinuous'");
    }
    if (body.contains("psi")) {
        spec.psi = r.function(body.at("psi").get<std::string>());
    }
    spec.check();
    return spec;
}

SamplingSpec read_sampling(const json& body, const Resolver& r) {
    SamplingSpec s;
    s.from = r.number_field(body, "from");
    s.to = r.number_field(body, "to");
    if (!body.contains("count") || !body.at("count").is_number_integer()) {
        throw SpecError("sampling needs an integer 'count'");
    }
    const auto count = body.at("count").get<long long>();
    if (count < 2) {
        throw SpecError("sampling count must be at least 2");
    }
    s.count = static_cast<std::size_t>(count);
    if (!(s.from < s.to)) {
        throw SpecError("sampling needs from < to");
    }
    if (body.contains("derivatives")) {
        s.derivatives = r.order_field(body, "derivatives");
    }
    if (body.contains("columns")) {
        s.columns = body.at("columns").get<std::vector<std::string>>();
    }
    return s;
}

std::optional<RandomSpec> read_random(const json& document, const ConstantMap& constants) {
    if (!document.contains("random")) {
        return std::nullopt;
    }
    const json& body = document.at("random");
    RandomSpec spec;
    if (body.contains("curves")) {
        const auto curves = body.at("curves").get<long long>();
        if (curves < 1) {
            throw SpecError("random.curves must be positive");
        }
        spec.curves = static_cast<std::size_t>(curves);
    }
    if (body.contains("draws")) {
        for (const auto& [name, range] : body.at("draws").items()) {
            if (!range.is_array() || range.size() != 2) {
                throw SpecError("draw range for '" + name + "' must be [lo, hi]");
            }
            auto value = [&](const json& v) {
                return v.is_number() ? v.get<double>() : parse_constant(v.get<std::string>(), constants);
            };
            const double lo = value(range[0]);
            const double hi = value(range[1]);
            if (!(lo <= hi)) {
                throw SpecError("draw range for '" + name + "' must have lo <= hi");
            }
            spec.draws[name] = {lo, hi};
        }
    }
    return spec;
}

} // namespace

std::optional<FormKind> form_kind_from_name(std::string_view name) {
    for (const auto& [n, k] : kFormNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string form_kind_name(FormKind kind) {
    for (const auto& [n, k] : kFormNames) {
        if (k == kind) {
            return std::string(n);
        }
    }
    return "unknown";
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11U) * 0x1.0p-53; }

std::vector<ConstantMap> draw_constants(const RandomSpec& random, std::uint64_t seed) {
    std::mt19937_64 generator(seed);
    std::vector<ConstantMap> out(random.curves);
    for (auto& constants : out) {
        for (const auto& [name, range] : random.draws) {
            constants[name] = range.first + (range.second - range.first) * unit_uniform(generator());
        }
    }
    return out;
}

nlohmann::json read_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError("cannot read spec file '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw SpecError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

ProblemSpec parse_problem_spec(const json& document, const ConstantMap& overrides) {
    if (!document.is_object()) {
        throw SpecError("spec must be a JSON object");
    }
    try {
        ProblemSpec spec;
        ConstantMap constants;
        if (document.contains("consts")) {
            constants = read_constants(document.at("consts"), constants);
        }
        spec.random = read_random(document, constants);
        if (spec.random) {
            for (const auto& [name, range] : spec.random->draws) {
                if (!overrides.contains(name)) {
                    constants[name] = 0.5 * (range.first + range.second);
                }
            }
        }
        for (const auto& [name, value] : overrides) {
            constants[name] = value;
        }
        spec.constants = constants;
        const std::string variable = document.value("variable", std::string("x"));
        const Resolver r(constants, variable);

        const bool has_form = document.contains("form");
        const bool has_engine = document.contains("basis") || document.contains("constraints");
        if (has_form == has_engine) {
            throw SpecError("spec needs exactly one of 'form' or 'basis' + 'constraints'");
        }

        if (has_engine) {
            if (!document.contains("basis") || !document.contains("constraints")) {
                throw SpecError("'basis' and 'constraints' must be given together");
            }
            spec.basis_descriptors = document.at("basis").get<std::vector<std::string>>();
            spec.basis = BasisFamily::from_descriptors(spec.basis_descriptors, constants);
            ConstraintSet set;
            for (const auto& c : document.at("constraints")) {
                set.add(read_constraint(c, r));
            }
            const auto violations = validate(set);
            if (!violations.empty()) {
                std::string message = "invalid constraint set:";
                for (const auto& v : violations) {
                    message += "\n  " + v.message;
                }
                throw SpecError(message);
            }
            spec.constraints = std::move(set);
        }

        if (!document.contains("free") || document.at("free") == "zero") {
            spec.free.push_back(FreeFunction::zero());
            spec.free_text.push_back("0");
        } else {
            const json& free = document.at("free");
            if (free.is_string()) {
                spec.free.push_back(r.function(free.get<std::string>()));
                spec.free_text.push_back(free.get<std::string>());
            } else if (free.is_array()) {
                for (const auto& component : free) {
                    spec.free.push_back(component == "zero" ? FreeFunction::zero()
                                                            : r.function(component.get<std::string>()));
                    spec.free_text.push_back(component.get<std::string>());
                }
                if (spec.free.empty()) {
                    throw SpecError("'free' array must not be empty");
                }
            } else if (free.is_object() && free.contains("expr")) {
                ConstantMap local;
                if (free.contains("consts")) {
                    local = read_constants(free.at("consts"), constants);
                }
                const std::string text = free.at("expr").get<std::string>();
                spec.free.push_back(r.function(text, local));
                spec.free_text.push_back(text);
            } else if (free.is_object() && free.contains("linear-combination")) {
                if (!spec.basis) {
                    throw SpecError("'linear-combination' free function needs a basis");
                }
                spec.free.push_back(FreeFunction::linear_combination(
                    *spec.basis, r.numbers(free.at("linear-combination"), "linear-combination")));
                spec.free_text.push_back(spec.free.back().describe());
            } else {
                throw SpecError("'free' must be \"zero\", an expression, an array, {\"expr\": ...} or "
                                "{\"linear-combination\": [...]}");
            }
        }

        if (has_form) {
            spec.form = read_form(document.at("form"), r, spec.notes);
            if (spec.form->kind == FormKind::WaringVector) {
                for (const auto& w : spec.form->waypoints) {
                    if (w.y.size() != spec.free.size()) {
                        throw SpecError("waring-vector: 'free' needs one expression per component (" +
                                        std::to_string(w.y.size()) + ")");
                    }
                }
            } else if (spec.free.size() != 1) {
                throw SpecError("vector 'free' is only valid for the waring-vector form");
            }
        } else if (spec.free.size() != 1) {
            throw SpecError("engine problems take a scalar free function");
        }

        if (document.contains("periodic")) {
            spec.periodic = read_periodic(document.at("periodic"), r);
        }
        if (spec.form) {
            const FormKind kind = spec.form->kind;
            const bool periodic_form = kind == FormKind::PeriodicContinuous ||
                                       kind == FormKind::PeriodicDiscontinuous ||
                                       kind == FormKind::PeriodicWaring;
            if (periodic_form && !spec.periodic) {
                throw SpecError("periodic forms need a 'periodic' block");
            }
            if (kind == FormKind::PeriodicContinuous) {
                spec.periodic->kind = PeriodicSpec::Kind::Continuous;
            } else if (kind == FormKind::PeriodicDiscontinuous) {
                spec.periodic->kind = PeriodicSpec::Kind::Discontinuous;
            }
        }
        if (document.contains("sampling")) {
            spec.sampling = read_sampling(document.at("sampling"), r);
        }
        return spec;
    } catch (const json::exception& e) {
        throw SpecError(std::string("malformed spec: ") + e.what());
    }
}

} // namespace cexpr::cli
