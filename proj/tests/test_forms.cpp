#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cexpr/engine.hpp"
#include "cexpr/errors.hpp"
#include "cexpr/forms.hpp"
#include "support.hpp"

using namespace cexpr;
using cexpr::testing::Draws;

namespace {

const PeriodicSpec kContinuous{0.5, 0.4, PeriodicSpec::Kind::Continuous, std::nullopt};
const PeriodicSpec kDiscontinuous{0.5, 0.6, PeriodicSpec::Kind::Discontinuous, std::nullopt};

} // namespace

TEST_CASE("one-point forms pass through the anchor") {
    const FreeFunction g = FreeFunction::parse("exp(x) - x^3");
    const FreeFunction h = FreeFunction::parse("2 + cos(x)");
    const auto p = [](double x) { return x * x - 1.0; };
    const double x1 = 0.7;
    const double y1 = -1.3;
    for (const auto& form : {OnePointForm::linear(x1, y1, p), OnePointForm::additive(x1, y1, g),
                             OnePointForm::rational(x1, y1, h), OnePointForm::combined(x1, y1, p, g, h)}) {
        CHECK(one_point(form, x1) == doctest::Approx(y1).epsilon(1e-15));
    }
    CHECK(one_point(OnePointForm::linear(1.0, 2.0, [](double) { return 3.0; }), 2.0) == 5.0);
    CHECK(one_point(OnePointForm::additive(0.0, 5.0, g), 1.0) == doctest::Approx(g(1.0) + 5.0 - g(0.0)));
}

TEST_CASE("one-point anchor violations") {
    CHECK_THROWS_AS((void)OnePointForm::rational(0.0, 1.0, FreeFunction::parse("sin(x)")), AnchorViolation);
    CHECK_THROWS_AS((void)OnePointForm::additive(0.0, 1.0, FreeFunction::parse("ln(x)")), AnchorViolation);
    CHECK_THROWS_AS((void)OnePointForm::linear(0.0, 1.0, [](double x) { return 1.0 / x; }), AnchorViolation);
}

TEST_CASE("slope-equivalent linear form reproduces the additive form") {
    const FreeFunction g = FreeFunction::parse("sin(2*x) + x^2");
    const double x1 = 0.3;
    const double y1 = 1.5;
    const auto linear = OnePointForm::combined(x1, y1, slope_equivalent(g, x1), std::nullopt, std::nullopt);
    const auto additive = OnePointForm::additive(x1, y1, g);
    for (double x : {-1.0, 0.0, 0.3, 0.9, 2.0}) {
        CHECK(one_point(linear, x) == doctest::Approx(one_point(additive, x)).epsilon(1e-12));
    }
    CHECK(slope_equivalent(g, x1)(x1) == doctest::Approx(g.eval(x1, 1)));
}

TEST_CASE("taylor form agrees with the engine") {
    Draws draws(51);
    const FreeFunction g = FreeFunction::parse("exp(x)*sin(2*x)");
    for (std::size_t n = 1; n <= 5; ++n) {
        const double x1 = draws.uniform(-1.0, 1.0);
        std::vector<double> values(n);
        ConstraintSet set;
        std::vector<BasisMember> members;
        for (std::size_t k = 0; k < n; ++k) {
            values[k] = draws.uniform(-2.0, 2.0);
            set.add(derivative_constraint(x1, static_cast<unsigned>(k), values[k]));
            members.push_back(BasisMember::monomial(static_cast<unsigned>(k)));
        }
        const auto ce = build(set, BasisFamily(members), g);
        for (int i = 0; i < 20; ++i) {
            const double x = draws.uniform(-2.0, 2.0);
            CHECK(std::abs(taylor_form(g, x1, values, x) - ce.evaluate(x)) <= 1e-10);
            CHECK(std::abs(taylor_form(g, x1, values, x, 1) - ce.evaluate(x, 1)) <= 1e-10);
        }
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(taylor_form(g, x1, values, x1, static_cast<unsigned>(k)) ==
                  doctest::Approx(values[k]).epsilon(1e-13));
        }
    }
}

TEST_CASE("two-derivative form agrees with the engine") {
    Draws draws(52);
    const FreeFunction g = FreeFunction::parse("cos(3*x) + x^4");
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = static_cast<unsigned>(draws.integer(0, 2));
        const auto q = static_cast<unsigned>(draws.integer(static_cast<int>(p) + 1, 3));
        const double x1 = draws.uniform(-1.0, 1.0);
        const double vp = draws.uniform(-2.0, 2.0);
        const double vq = draws.uniform(-2.0, 2.0);
        const auto ce = build({derivative_constraint(x1, p, vp), derivative_constraint(x1, q, vq)},
                              BasisFamily({BasisMember::scaled_monomial(p), BasisMember::scaled_monomial(q)}), g);
        for (int i = 0; i < 20; ++i) {
            const double x = draws.uniform(-2.0, 2.0);
            CHECK(std::abs(two_derivative_form(g, x1, p, q, vp, vq, x) - ce.evaluate(x)) <= 1e-10);
        }
        CHECK(two_derivative_form(g, x1, p, q, vp, vq, x1, p) == doctest::Approx(vp).epsilon(1e-12));
        CHECK(two_derivative_form(g, x1, p, q, vp, vq, x1, q) == doctest::Approx(vq).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)two_derivative_form(g, 0.0, 2, 1, 0.0, 0.0, 0.0), InvalidProblem);
}

TEST_CASE("waring with g = 0 is classical interpolation") {
    Draws draws(53);
    for (int trial = 0; trial < 10; ++trial) {
        const auto xs = draws.distinct(5, -2.0, 2.0, 0.1);
        std::vector<double> ys;
        std::vector<Node> nodes;
        for (double x : xs) {
            ys.push_back(draws.uniform(-3.0, 3.0));
            nodes.push_back({x, ys.back()});
        }
        const cexpr::testing::NewtonInterpolant oracle(xs, ys);
        for (int i = 0; i < 50; ++i) {
            const double x = draws.uniform(-2.0, 2.0);
            CHECK(std::abs(waring_form(FreeFunction::zero(), nodes, x) - oracle(x)) <= 1e-9);
        }
    }
}

TEST_CASE("waring interpolates exactly for arbitrary g") {
    Draws draws(54);
    const FreeFunction g = FreeFunction::parse("exp(x) + 10*sin(7*x)");
    const auto xs = draws.distinct(6, -2.0, 2.0, 0.1);
    std::vector<Node> nodes;
    for (double x : xs) {
        nodes.push_back({x, draws.uniform(-50.0, 50.0)});
    }
    for (const auto& node : nodes) {
        const double scale = std::max(1.0, std::abs(node.y));
        CHECK(std::abs(waring_form(g, nodes, node.x) - node.y) <= 1e-11 * scale);
    }
    const std::vector<Node> repeated{{0.0, 1.0}, {1.0, 2.0}, {0.0, 3.0}};
    CHECK_THROWS_AS((void)waring_form(g, repeated, 0.5), DuplicateNode);
}

TEST_CASE("vector waring through five waypoints") {
    const std::vector<std::vector<double>> points{{2, 1, 2}, {0, 2, 1}, {-1, 0, 2}, {1, -1, 0}, {1, 1, -1}};
    std::vector<Waypoint> waypoints;
    for (std::size_t k = 0; k < points.size(); ++k) {
        waypoints.push_back({k / 4.0, points[k]});
    }
    const std::vector<FreeFunction> g{FreeFunction::parse("sin(x)"), FreeFunction::parse("exp(x)"),
                                      FreeFunction::parse("1 - x^2")};
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto y = waring_vector_form(g, waypoints, waypoints[k].t);
        for (std::size_t c = 0; c < 3; ++c) {
            CHECK(std::abs(y[c] - points[k][c]) <= 1e-9);
        }
    }
    const std::vector<FreeFunction> two{g[0], g[1]};
    CHECK_THROWS_AS((void)waring_vector_form(two, waypoints, 0.5), DimensionMismatch);
}

TEST_CASE("stack matrix") {
    CHECK(stack_matrix(0.7, 0.7, 4) == Matrix::identity(4));
    const Matrix b = stack_matrix(2.0, 0.5, 3);
    CHECK(b(0, 1) == 1.5);
    CHECK(b(0, 2) == doctest::Approx(1.125));
    CHECK(b(1, 0) == 0.0);
    Draws draws(55);
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = draws.uniform(-1.0, 1.0);
        const double x = draws.uniform(-2.0, 2.0);
        const Matrix db = stack_matrix(x, x0, 5, true);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                const double fd = cexpr::testing::central_difference(
                    [&](double t) { return stack_matrix(t, x0, 5)(i, j); }, x);
                CHECK(std::abs(db(i, j) - fd) <= 1e-6);
            }
        }
    }
}

TEST_CASE("stack form is a consistent derivative stack") {
    Draws draws(56);
    const FreeFunction g = FreeFunction::parse("sin(2*x) - x^3/6");
    const std::vector<double> y0{1.0, -0.5, 2.0, 0.25};
    const double x0 = 0.3;
    const auto at_x0 = stack_form(g, x0, y0, 4, x0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(at_x0[i] == doctest::Approx(y0[i]).epsilon(1e-14));
    }
    for (int trial = 0; trial < 20; ++trial) {
        const double x = draws.uniform(-2.0, 2.0);
        const auto y = stack_form(g, x0, y0, 4, x);
        for (std::size_t i = 0; i + 1 < 4; ++i) {
            const double fd =
                cexpr::testing::central_difference([&](double t) { return stack_form(g, x0, y0, 4, t)[i]; }, x);
            CHECK(cexpr::testing::relative_gap(y[i + 1], fd) < 1e-5);
        }
        CHECK(y[0] == doctest::Approx(taylor_form(g, x0, y0, x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)stack_form(g, x0, y0, 3, 0.0), DimensionMismatch);
}

TEST_CASE("periodic maps") {
    CHECK(periodic_map(kDiscontinuous, 0.1) == 0.0);
    CHECK_FALSE(std::signbit(periodic_map(kDiscontinuous, 0.1)));
    CHECK(periodic_map(kDiscontinuous, 0.6) == 0.0);
    CHECK(periodic_map(kDiscontinuous, 0.85) == doctest::Approx(0.25));
    CHECK(periodic_map(kDiscontinuous, -0.15) == doctest::Approx(0.25));
    for (double x = -3.0; x < 3.0; x += 0.01) {
        const double r = periodic_map(kDiscontinuous, x);
        CHECK(r >= 0.0);
        CHECK(r < 0.5);
    }
    CHECK(periodic_map(kContinuous, 0.4) == 0.0);
    CHECK(periodic_map(kContinuous, 0.525) == doctest::Approx(1.0));

    PeriodicSpec half = kContinuous;
    half.psi = FreeFunction::parse("sin(pi*x/0.5)");
    CHECK(periodic_map(half, 0.9) == doctest::Approx(0.0).epsilon(1e-12));

    PeriodicSpec bad = kContinuous;
    bad.period = 0.0;
    CHECK_THROWS_AS(bad.check(), InvalidProblem);
}

TEST_CASE("periodic forms repeat with period T") {
    Draws draws(57);
    for (const auto& spec : {kContinuous, kDiscontinuous}) {
        for (const char* text : {"1 - exp(x)", "2 + 3*x^3", "cos(5*x)"}) {
            const FreeFunction g = FreeFunction::parse(text);
            for (int i = 0; i < 50; ++i) {
                const double x = draws.uniform(-1.0, 2.0);
                const double a = periodic_point_form(spec, g, {0.0, 1.0}, x);
                const double b = periodic_point_form(spec, g, {0.0, 1.0}, x + spec.period);
                CHECK(std::abs(a - b) <= 1e-10);
            }
            CHECK(periodic_point_form(spec, g, {0.2, -0.4}, 0.2) == doctest::Approx(-0.4).epsilon(1e-14));
        }
    }
}

TEST_CASE("periodic waring: nodes and a constant drift per period") {
    const std::vector<Node> nodes{{-0.7, -0.1}, {1.7, 0.2}};
    for (const auto& spec : {kContinuous, kDiscontinuous}) {
        for (const char* text : {"cos(7*x)", "1 - exp(x)", "2 + 3*x^3"}) {
            const FreeFunction g = FreeFunction::parse(text);
            for (const auto& n : nodes) {
                CHECK(std::abs(periodic_waring(spec, g, nodes, n.x) - n.y) <= 1e-10);
            }
            const double drift = periodic_waring(spec, g, nodes, 0.11 + spec.period) - periodic_waring(spec, g, nodes, 0.11);
            for (double x = -1.0; x < 2.0; x += 0.0731) {
                const double step = periodic_waring(spec, g, nodes, x + spec.period) - periodic_waring(spec, g, nodes, x);
                CHECK(std::abs(step - drift) <= 1e-9);
            }
        }
    }
}
