#include "cli/repro.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cexpr/cexpr.hpp"
#include "cli/problem_spec.hpp"

namespace cexpr::cli {

namespace {

using std::numbers::e;
using std::numbers::pi;

ReproCheck near(std::string label, double expected, double computed, double tolerance) {
    const bool ok = std::abs(expected - computed) <= tolerance;
    return {std::move(label), format_number(expected), format_number(computed) + " (tol " + format_number(tolerance) + ")",
            ok};
}

ReproCheck below(std::string label, double bound, double computed) {
    return {std::move(label), "< " + format_number(bound), format_number(computed), computed < bound};
}

ReproCheck exact(std::string label, const std::string& expected, const std::string& computed) {
    return {std::move(label), expected, computed, expected == computed};
}

std::string matrix_text(const Matrix& m) {
    std::string text = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        text += r ? ", [" : "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            text += (c ? ", " : "") + format_number(m(r, c));
        }
        text += "]";
    }
    return text + "]";
}

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (double v : row) {
            m(r, c++) = v;
        }
        ++r;
    }
    return m;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
        }
    }
    return worst;
}

ReproReport four_constraint() {
    ReproReport report{"four-constraint", "y''(-1), y(0), y(2), y'(2) with monomials {1, x, x^2, x^3}", {}, {}};
    const ConstraintSet set{derivative_constraint(-1.0, 2, 0.0), point_constraint(0.0, 0.0),
                            point_constraint(2.0, 0.0), derivative_constraint(2.0, 1, 0.0)};
    const BasisFamily basis = BasisFamily::monomials(4);
    const SupportMatrix support = assemble_support_matrix(set, basis);
    const Matrix expected_h = from_rows({{0, 0, 2, -6}, {1, 0, 0, 0}, {1, 2, 4, 8}, {0, 1, 4, 12}});
    report.checks.push_back(exact("support matrix H", matrix_text(expected_h), matrix_text(support.entries)));

    const CoefficientMatrix xi = solve_coefficients(support, set, basis);
    Matrix expected_xi = from_rows({{0, 28, 0, 0}, {-8, -24, 24, -20}, {8, 3, -3, 6}, {-2, 1, -1, 2}});
    Matrix scaled = xi.columns;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            expected_xi(r, c) /= 28.0;
            scaled(r, c) *= 28.0;
        }
    }
    report.checks.push_back(exact("28 * Xi (rounded)", "[[0, 28, 0, 0], [-8, -24, 24, -20], [8, 3, -3, 6], [-2, 1, -1, 2]]",
                                  [&] {
                                      Matrix rounded = scaled;
                                      for (std::size_t r = 0; r < 4; ++r) {
                                          for (std::size_t c = 0; c < 4; ++c) {
                                              rounded(r, c) = std::round(rounded(r, c)) + 0.0;
                                          }
                                      }
                                      return matrix_text(rounded);
                                  }()));
    report.checks.push_back(below("max |Xi - published/28|", 1e-12, max_abs_difference(xi.columns, expected_xi)));

    const std::vector<std::function<double(double)>> published{
        [](double x) { return (-8 * x + 8 * x * x - 2 * x * x * x) / 28; },
        [](double x) { return (28 - 24 * x + 3 * x * x + x * x * x) / 28; },
        [](double x) { return (24 * x - 3 * x * x - x * x * x) / 28; },
        [](double x) { return (-20 * x + 6 * x * x + 2 * x * x * x) / 28; },
    };
    const ConstrainedExpression ce(basis, xi, set, FreeFunction::zero());
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double x = -2.0 + 5.0 * i / 19.0;
        const auto beta = ce.beta(x);
        for (std::size_t k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(beta[k] - published[k](x)));
        }
    }
    report.checks.push_back(below("max |beta_k - published polynomial| on 20 points of [-2, 3]", 1e-10, worst));
    return report;
}

ReproReport relative_numeric() {
    ReproReport report{"relative-numeric",
                       "3 = 2 y(-1) - pi y''(2) and pi = e y'(-1) + y(1) - 3 y'(2) with h = {exp(x), sin(x)}",
                       {},
                       {}};
    const ConstraintSet set{
        LinearConstraint(3.0, {{2.0, 0, -1.0}, {-pi, 2, 2.0}}),
        LinearConstraint(pi, {{e, 1, -1.0}, {1.0, 0, 1.0}, {-3.0, 1, 2.0}}),
    };
    const BasisFamily basis({BasisMember::exp(), BasisMember::sin()});
    const ConstrainedExpression ce = build(set, basis, FreeFunction::parse("x^2"));
    const Matrix& xi = ce.coefficients().columns;
    const Matrix published = from_rows({{-0.0610, 0.0201}, {-0.3163, 0.3853}});
    const char* names[2][2] = {{"Xi[1][1]", "Xi[1][2]"}, {"Xi[2][1]", "Xi[2][2]"}};
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            report.checks.push_back(near(names[r][c], published(r, c), xi(r, c), 5e-4));
        }
    }
    // The closed-form 2x2 support matrix, inverted by hand.
    const double a = 2 / e - pi * e * e;
    const double b = 2 * std::sin(-1.0) + pi * std::sin(2.0);
    const double c = 1 + e - 3 * e * e;
    const double d = e * std::cos(-1.0) + std::sin(1.0) - 3 * std::cos(2.0);
    const double det = a * d - b * c;
    const Matrix analytic = from_rows({{d / det, -b / det}, {-c / det, a / det}});
    report.checks.push_back(below("max |Xi - analytic inverse|", 1e-12, max_abs_difference(xi, analytic)));
    double worst = 0.0;
    const auto residuals = ce.residuals();
    const auto scales = ce.residual_scales();
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        worst = std::max(worst, residuals[k] / scales[k]);
    }
    report.checks.push_back(below("max scaled residual with g = x^2", 1e-8, worst));
    return report;
}

ReproReport waring_table1() {
    ReproReport report{"waring-table1", "vector Waring trajectory through five 3-D waypoints", {}, {}};
    report.notes.push_back("waypoint times assumed equally spaced on [0, 1]");
    const std::vector<std::vector<double>> points{{2, 1, 2}, {0, 2, 1}, {-1, 0, 2}, {1, -1, 0}, {1, 1, -1}};
    std::vector<Waypoint> waypoints;
    for (std::size_t k = 0; k < points.size(); ++k) {
        waypoints.push_back({static_cast<double>(k) / 4.0, points[k]});
    }
    const std::vector<FreeFunction> g{FreeFunction::parse("sin(x)"), FreeFunction::parse("exp(x)"),
                                      FreeFunction::parse("1 - x^2")};
    const char axis[] = {'x', 'y', 'z'};
    for (std::size_t k = 0; k < waypoints.size(); ++k) {
        const auto y = waring_vector_form(g, waypoints, waypoints[k].t);
        for (std::size_t c = 0; c < 3; ++c) {
            report.checks.push_back(near(std::string(1, axis[c]) + "(t = " + format_number(waypoints[k].t) + ")",
                                         points[k][c], y[c], 1e-9));
        }
    }
    return report;
}

const std::vector<std::string>& fig3_functions() {
    static const std::vector<std::string> g{"1 - exp(x)", "2 + 3*x^3", "cos(5*x)"};
    return g;
}

ReproReport periodic_fig3(std::uint64_t seed) {
    ReproReport report{"periodic-fig3", "continuous and discontinuous periodic maps, T = 0.5", {}, {}};
    report.notes.push_back("continuous map is sin(2*pi*(x - 0.4)/T), whose period is T");
    std::mt19937_64 generator(seed);
    std::vector<double> xs(50);
    for (double& x : xs) {
        x = -1.0 + 3.0 * unit_uniform(generator());
    }
    const PeriodicSpec specs[] = {{0.5, 0.4, PeriodicSpec::Kind::Continuous, std::nullopt},
                                  {0.5, 0.6, PeriodicSpec::Kind::Discontinuous, std::nullopt}};
    for (const auto& spec : specs) {
        const std::string kind = spec.kind == PeriodicSpec::Kind::Continuous ? "continuous" : "discontinuous";
        for (const auto& text : fig3_functions()) {
            const FreeFunction g = FreeFunction::parse(text);
            double worst = 0.0;
            for (double x : xs) {
                worst = std::max(worst, std::abs(g.eval(periodic_map(spec, x + spec.period)) -
                                                 g.eval(periodic_map(spec, x))));
            }
            report.checks.push_back(below(kind + ", g = " + text + ": max |y(x + T) - y(x)|", 1e-10, worst));
        }
    }
    return report;
}

/// Max deviation of (x_i, r_i) from its least-squares line.
double line_fit_residual(const std::vector<double>& xs, const std::vector<double>& rs) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sr = 0, sxx = 0, sxr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sr += rs[i];
        sxx += xs[i] * xs[i];
        sxr += xs[i] * rs[i];
    }
    const double slope = (n * sxr - sx * sr) / (n * sxx - sx * sx);
    const double intercept = (sr - slope * sx) / n;
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        worst = std::max(worst, std::abs(rs[i] - (intercept + slope * xs[i])));
    }
    return worst;
}

ReproReport periodic_fig4() {
    ReproReport report{"periodic-fig4", "two-point periodic Waring through (-0.7, -0.1) and (1.7, 0.2), T = 0.5", {}, {}};
    const std::vector<Node> nodes{{-0.7, -0.1}, {1.7, 0.2}};
    const PeriodicSpec specs[] = {{0.5, 0.4, PeriodicSpec::Kind::Continuous, std::nullopt},
                                  {0.5, 0.6, PeriodicSpec::Kind::Discontinuous, std::nullopt}};
    for (const auto& spec : specs) {
        const std::string kind = spec.kind == PeriodicSpec::Kind::Continuous ? "continuous" : "discontinuous";
        for (const std::string text : {"cos(7*x)", "1 - exp(x)", "2 + 3*x^3"}) {
            const FreeFunction g = FreeFunction::parse(text);
            double node_error = 0.0;
            for (const auto& node : nodes) {
                node_error = std::max(node_error, std::abs(periodic_waring(spec, g, nodes, node.x) - node.y));
            }
            report.checks.push_back(below(kind + ", g = " + text + ": max node error", 1e-10, node_error));
            std::vector<double> xs;
            std::vector<double> rs;
            for (int i = 0; i <= 200; ++i) {
                // Grid offset keeps samples away from sawtooth jumps.
                const double x = -1.0 + 3.0 * (i + 0.37) / 200.0;
                xs.push_back(x);
                rs.push_back(periodic_waring(spec, g, nodes, x + spec.period) - periodic_waring(spec, g, nodes, x));
            }
            report.checks.push_back(
                below(kind + ", g = " + text + ": line-fit residual of y(x + T) - y(x)", 1e-9, line_fit_residual(xs, rs)));
        }
    }
    return report;
}

ReproReport rank_pathology() {
    ReproReport report{"rank-pathology", "y'''(x1), y(x2), y'''(x2), y'''(x3) with monomials {1, x, x^2, x^3}", {}, {}};
    report.notes.push_back("x1 = -1, x2 = 0.5, x3 = 2");
    const ConstraintSet set{derivative_constraint(-1.0, 3, 0.0), point_constraint(0.5, 0.0),
                            derivative_constraint(0.5, 3, 0.0), derivative_constraint(2.0, 3, 0.0)};
    const BasisFamily monomials = BasisFamily::monomials(4);
    const SupportMatrix support = assemble_support_matrix(set, monomials);
    report.checks.push_back(exact("rank", "2", std::to_string(support.rank)));
    std::string raised = "none";
    try {
        (void)solve_coefficients(support, set, monomials);
    } catch (const SingularSupport& e) {
        raised = "SingularSupport rank " + std::to_string(e.rank());
        report.notes.push_back(e.hint());
    }
    report.checks.push_back(exact("solve", "SingularSupport rank 2", raised));

    const BasisFamily remedy = suggest_monomial_remedy(set);
    std::string labels;
    for (std::size_t i = 0; i < remedy.size(); ++i) {
        labels += (i ? ", " : "") + remedy.member(i).label();
    }
    report.checks.push_back(exact("remedy basis", "1, x^3, x^4, x^5", labels));
    const SupportMatrix fixed = assemble_support_matrix(set, remedy);
    report.checks.push_back(exact("remedy rank", "4", std::to_string(fixed.rank)));
    report.checks.push_back(
        {"remedy rcond", ">= " + format_number(kRcondError), format_number(fixed.rcond), !fixed.singular()});
    return report;
}

ReproReport relative_fig2(std::uint64_t seed) {
    ReproReport report{"relative-fig2", "10 random curves with y(x1) = y(x2) and y'(x1) = y'(x2)", {}, {}};
    report.notes.push_back("draw ranges: v in [0, 2*pi], x1 in [-2.5, -0.5], x2 in [0.5, 2.5] "
                           "(the second printed range is read as x2's)");
    const RandomSpec random{10, {{"v", {0.0, 2.0 * pi}}, {"x1", {-2.5, -0.5}}, {"x2", {0.5, 2.5}}}};
    const BasisFamily basis({BasisMember::composite("1 - x^2"), BasisMember::sin()});
    const auto draws = draw_constants(random, seed);
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const ConstantMap& c = draws[i];
        const double x1 = c.at("x1");
        const double x2 = c.at("x2");
        const ConstraintSet set{relative_constraint(x1, 0, x2, 0), relative_constraint(x1, 1, x2, 1)};
        const ConstrainedExpression ce = build(set, basis, FreeFunction::parse("v + x^2 - sin(3*x + v)", c));
        const double dy = std::abs(ce.evaluate(x1) - ce.evaluate(x2));
        const double ddy = std::abs(ce.evaluate(x1, 1) - ce.evaluate(x2, 1));
        report.checks.push_back(below("curve " + std::to_string(i + 1) + ": max(|y1 - y2|, |y1' - y2'|)", 1e-8,
                                      std::max(dy, ddy)));
    }
    return report;
}

} // namespace

bool ReproReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ReproCheck& c) { return c.pass; });
}

std::vector<std::string> repro_names() {
    return {"four-constraint", "relative-numeric", "waring-table1", "periodic-fig3",
            "periodic-fig4",   "rank-pathology",   "relative-fig2"};
}

ReproReport run_repro(const std::string& name, std::uint64_t seed) {
    if (name == "four-constraint") {
        return four_constraint();
    }
    if (name == "relative-numeric") {
        return relative_numeric();
    }
    if (name == "waring-table1") {
        return waring_table1();
    }
    if (name == "periodic-fig3") {
        return periodic_fig3(seed);
    }
    if (name == "periodic-fig4") {
        return periodic_fig4();
    }
    if (name == "rank-pathology") {
        return rank_pathology();
    }
    if (name == "relative-fig2") {
        return relative_fig2(seed);
    }
    throw std::invalid_argument("unknown example '" + name + "'");
}

void print_report(std::ostream& out, const ReproReport& report) {
    out << report.name << ": " << report.title << '\n';
    for (const auto& note : report.notes) {
        out << "note: " << note << '\n';
    }
    for (const auto& check : report.checks) {
        out << (check.pass ? "  match  " : "  MISMATCH  ") << check.label << "\n    expected: " << check.expected
            << "\n    computed: " << check.computed << '\n';
    }
    out << (report.passed() ? "PASS" : "FAIL") << '\n';
}

} // namespace cexpr::cli
