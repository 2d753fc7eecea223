#include <benchmark/benchmark.h>

#include <numbers>

#include "cexpr/cexpr.hpp"

namespace {

cexpr::ConstraintSet four_constraints() {
    return {cexpr::derivative_constraint(-1.0, 2, 1.0), cexpr::point_constraint(0.0, 2.0),
            cexpr::point_constraint(2.0, -1.0), cexpr::derivative_constraint(2.0, 1, 0.5)};
}

cexpr::ConstraintSet point_constraints(std::size_t n) {
    cexpr::ConstraintSet set;
    for (std::size_t k = 0; k < n; ++k) {
        set.add(cexpr::point_constraint(-1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n), 0.1 * k));
    }
    return set;
}

} // namespace

static void BM_Parse(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(cexpr::parse("v + x^2 - sin(3*x + v)", cexpr::ConstantMap{{"v", 1.25}}));
    }
}
BENCHMARK(BM_Parse);

static void BM_SymbolicDerivative(benchmark::State& state) {
    const auto order = static_cast<unsigned>(state.range(0));
    const cexpr::Expression e = cexpr::parse("exp(sin(x)) * cos(2*x)");
    for (auto _ : state) {
        // Fresh cache each iteration so the tree is rebuilt.
        cexpr::SymbolicFunction f(e);
        benchmark::DoNotOptimize(f.derivative(order));
    }
}
BENCHMARK(BM_SymbolicDerivative)->DenseRange(1, 4);

static void BM_BuildFourConstraint(benchmark::State& state) {
    const auto set = four_constraints();
    const auto basis = cexpr::BasisFamily::monomials(4);
    const auto g = cexpr::FreeFunction::parse("sin(3*x) + x^4");
    for (auto _ : state) {
        benchmark::DoNotOptimize(cexpr::build(set, basis, g));
    }
}
BENCHMARK(BM_BuildFourConstraint);

static void BM_BuildPoints(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto set = point_constraints(n);
    const auto basis = cexpr::BasisFamily::monomials(n);
    const auto g = cexpr::FreeFunction::zero();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cexpr::build(set, basis, g));
    }
}
BENCHMARK(BM_BuildPoints)->RangeMultiplier(2)->Range(2, 16);

static void BM_Evaluate(benchmark::State& state) {
    const auto ce = cexpr::build(four_constraints(), cexpr::BasisFamily::monomials(4),
                                 cexpr::FreeFunction::parse("sin(3*x) + x^4"));
    const auto order = static_cast<unsigned>(state.range(0));
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ce.evaluate(x, order));
        x = x > 3.0 ? -2.0 : x + 1e-3;
    }
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 2);

static void BM_WaringVector(benchmark::State& state) {
    std::vector<cexpr::Waypoint> waypoints{
        {0.0, {2, 1, 2}}, {0.25, {0, 2, 1}}, {0.5, {-1, 0, 2}}, {0.75, {1, -1, 0}}, {1.0, {1, 1, -1}}};
    const std::vector<cexpr::FreeFunction> g{cexpr::FreeFunction::parse("sin(x)"), cexpr::FreeFunction::parse("exp(x)"),
                                             cexpr::FreeFunction::parse("1 - x^2")};
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cexpr::waring_vector_form(g, waypoints, t));
        t = t > 1.0 ? 0.0 : t + 1e-3;
    }
}
BENCHMARK(BM_WaringVector);
BENCHMARK_MAIN();
