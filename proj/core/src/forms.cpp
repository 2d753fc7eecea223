#include "cexpr/forms.hpp"

#include <cmath>
#include <numbers>

#include "cexpr/errors.hpp"
#include "cexpr/format.hpp"

namespace cexpr {

namespace {

double factorial(unsigned n) {
    double result = 1.0;
    for (unsigned i = 2; i <= n; ++i) {
        result *= i;
    }
    return result;
}

// d^r/dx^r of x^m / m!
double scaled_power_derivative(double x, unsigned m, unsigned r) {
    if (r > m) {
        return 0.0;
    }
    return std::pow(x, m - r) / factorial(m - r);
}

double anchored_value(const FreeFunction& f, double x, const char* name) {
    double value = 0.0;
    try {
        value = f.eval(x);
    } catch (const DomainError& e) {
        throw AnchorViolation(std::string(name) + " undefined at anchor: " + e.what());
    }
    return value;
}

} // namespace

OnePointForm OnePointForm::linear(double x1, double y1, ScalarFunction p) {
    OnePointForm form{Kind::Linear, x1, y1, std::move(p), std::nullopt, std::nullopt};
    form.check();
    return form;
}

OnePointForm OnePointForm::additive(double x1, double y1, FreeFunction g) {
    OnePointForm form{Kind::Additive, x1, y1, {}, std::move(g), std::nullopt};
    form.check();
    return form;
}

OnePointForm OnePointForm::rational(double x1, double y1, FreeFunction h) {
    OnePointForm form{Kind::Rational, x1, y1, {}, std::nullopt, std::move(h)};
    form.check();
    return form;
}

OnePointForm OnePointForm::combined(double x1, double y1, ScalarFunction p, std::optional<FreeFunction> g,
                                    std::optional<FreeFunction> h) {
    OnePointForm form{Kind::Combined, x1, y1, std::move(p), std::move(g), std::move(h)};
    form.check();
    return form;
}

void OnePointForm::check() const {
    if (kind == Kind::Linear && !p) {
        throw AnchorViolation("linear form needs p(x)");
    }
    if (kind == Kind::Additive && !g) {
        throw AnchorViolation("additive form needs g(x)");
    }
    if (kind == Kind::Rational && !h) {
        throw AnchorViolation("rational form needs h(x)");
    }
    if (p) {
        double p1 = 0.0;
        try {
            p1 = p(x1);
        } catch (const DomainError& e) {
            throw AnchorViolation(std::string("p undefined at anchor: ") + e.what());
        }
        if (!std::isfinite(p1)) {
            throw AnchorViolation("p(x1) is not finite");
        }
    }
    if (g) {
        (void)anchored_value(*g, x1, "g");
    }
    if (h && anchored_value(*h, x1, "h") == 0.0) {
        throw AnchorViolation("h(x1) = 0 at x1 = " + format_number(x1));
    }
}

double one_point(const OnePointForm& form, double x) {
    const double x1 = form.x1;
    double y = 0.0;
    if (form.p) {
        y += form.p(x) * (x - x1);
    }
    double g1 = 0.0;
    if (form.g) {
        y += form.g->eval(x);
        g1 = anchored_value(*form.g, x1, "g");
    }
    double ratio = 1.0;
    if (form.h) {
        const double h1 = anchored_value(*form.h, x1, "h");
        if (h1 == 0.0) {
            throw AnchorViolation("h(x1) = 0 at x1 = " + format_number(x1));
        }
        ratio = form.h->eval(x) / h1;
    }
    return y + ratio * (form.y1 - g1);
}

SlopeFunction::SlopeFunction(FreeFunction g, double x1)
    : g_(std::move(g)), x1_(x1), g1_(anchored_value(g_, x1, "g")) {}

double SlopeFunction::operator()(double x) const {
    if (x == x1_) {
        return g_.eval(x1_, 1);
    }
    return (g_.eval(x) - g1_) / (x - x1_);
}

SlopeFunction slope_equivalent(const FreeFunction& g, double x1) { return SlopeFunction(g, x1); }

double two_derivative_form(const FreeFunction& g, double x1, unsigned p, unsigned q, double vp, double vq,
                           double x, unsigned order) {
    if (p >= q) {
        throw InvalidProblem("two-derivative form needs p < q");
    }
    const double dp = vp - g.eval(x1, p);
    const double dq = vq - g.eval(x1, q);
    const double coupling = std::pow(x1, q - p) / factorial(q - p);
    const double hp = scaled_power_derivative(x, p, order);
    const double hq = scaled_power_derivative(x, q, order);
    return g.eval(x, order) + hp * dp + (hq - coupling * hp) * dq;
}

double taylor_form(const FreeFunction& g, double x1, std::span<const double> values, double x,
                   unsigned order) {
    double y = g.eval(x, order);
    const double dx = x - x1;
    for (std::size_t k = order; k < values.size(); ++k) {
        const auto kk = static_cast<unsigned>(k);
        const double delta = values[k] - g.eval(x1, kk);
        y += std::pow(dx, kk - order) / factorial(kk - order) * delta;
    }
    return y;
}

std::vector<double> waring_weights(std::span<const double> nodes, double x) {
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (nodes[i] == nodes[j]) {
                throw DuplicateNode(nodes[i]);
            }
        }
    }
    std::vector<double> weights(n, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i != k) {
                weights[k] *= (x - nodes[i]) / (nodes[k] - nodes[i]);
            }
        }
    }
    return weights;
}

double waring_form(const FreeFunction& g, std::span<const Node> points, double x) {
    std::vector<double> nodes;
    nodes.reserve(points.size());
    for (const auto& p : points) {
        nodes.push_back(p.x);
    }
    const std::vector<double> weights = waring_weights(nodes, x);
    double y = g.eval(x);
    for (std::size_t k = 0; k < points.size(); ++k) {
        y += (points[k].y - anchored_value(g, points[k].x, "g")) * weights[k];
    }
    return y;
}

std::vector<double> waring_vector_form(std::span<const FreeFunction> g, std::span<const Waypoint> waypoints,
                                       double t) {
    const std::size_t dim = g.size();
    for (const auto& w : waypoints) {
        if (w.y.size() != dim) {
            throw DimensionMismatch("waypoint at t = " + format_number(w.t) + " has " +
                                    std::to_string(w.y.size()) + " components, free function has " +
                                    std::to_string(dim));
        }
    }
    std::vector<Node> points(waypoints.size());
    std::vector<double> out(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t k = 0; k < waypoints.size(); ++k) {
            points[k] = {waypoints[k].t, waypoints[k].y[c]};
        }
        out[c] = waring_form(g[c], points, t);
    }
    return out;
}

Matrix stack_matrix(double x, double x0, std::size_t size, bool differentiated) {
    Matrix b(size, size);
    const double dx = x - x0;
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i; j < size; ++j) {
            const auto gap = static_cast<unsigned>(j - i);
            if (!differentiated) {
                b(i, j) = std::pow(dx, gap) / factorial(gap);
            } else if (gap >= 1) {
                b(i, j) = std::pow(dx, gap - 1) / factorial(gap - 1);
            }
        }
    }
    return b;
}

std::vector<double> stack_form(const FreeFunction& g, double x0, std::span<const double> y_d0, std::size_t size,
                               double x) {
    if (size == 0 || y_d0.size() != size) {
        throw DimensionMismatch("stack form needs " + std::to_string(size) + " initial derivatives, got " +
                                std::to_string(y_d0.size()));
    }
    std::vector<double> delta(size);
    for (std::size_t i = 0; i < size; ++i) {
        delta[i] = y_d0[i] - g.eval(x0, static_cast<unsigned>(i));
    }
    const Matrix b = stack_matrix(x, x0, size);
    std::vector<double> out(size);
    for (std::size_t i = 0; i < size; ++i) {
        double value = g.eval(x, static_cast<unsigned>(i));
        for (std::size_t j = i; j < size; ++j) {
            value += b(i, j) * delta[j];
        }
        out[i] = value;
    }
    return out;
}

void PeriodicSpec::check() const {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw InvalidProblem("period must be positive, got " + format_number(period));
    }
}

double periodic_map(const PeriodicSpec& spec, double x) {
    const double u = x - spec.shift;
    if (spec.kind == PeriodicSpec::Kind::Continuous) {
        if (spec.psi) {
            return spec.psi->eval(u);
        }
        return std::sin(2.0 * std::numbers::pi * u / spec.period);
    }
    double r = std::fmod(u, spec.period);
    if (r < 0.0) {
        r += spec.period;
    }
    if (r >= spec.period) {
        r = 0.0;
    }
    return r + 0.0;
}

double periodic_point_form(const PeriodicSpec& spec, const FreeFunction& g, Node anchor, double x) {
    const double g_anchor = anchored_value(g, periodic_map(spec, anchor.x), "g");
    return g.eval(periodic_map(spec, x)) + (anchor.y - g_anchor);
}

double periodic_waring(const PeriodicSpec& spec, const FreeFunction& g, std::span<const Node> points, double x) {
    std::vector<double> nodes;
    nodes.reserve(points.size());
    for (const auto& p : points) {
        nodes.push_back(p.x);
    }
    const std::vector<double> weights = waring_weights(nodes, x);
    double y = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        y += periodic_point_form(spec, g, points[k], x) * weights[k];
    }
    return y;
}

} // namespace cexpr
