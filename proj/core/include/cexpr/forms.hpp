#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cexpr/free_function.hpp"
#include "cexpr/linalg.hpp"

namespace cexpr {

// Closed-form constrained expressions. Each one is written out directly
// (no linear solve) so it can be cross-checked against the general engine.

using ScalarFunction = std::function<double(double)>;

/// Everything passing through one point (x1, y1):
///
///   y(x) = p(x) (x - x1) + g(x) + h(x) / h(x1) * (y1 - g(x1))
///
/// with absent pieces dropped (p) or defaulted (g = 0, h = 1). The linear,
/// additive and rational forms and their four combinations are special cases.
struct OnePointForm {
    enum class Kind {
        Linear,    // p (x - x1) + y1
        Additive,  // g + (y1 - g1)
        Rational,  // h / h1 * y1
        Combined,  // any mix of p, g, h
    };

    Kind kind = Kind::Additive;
    double x1 = 0.0;
    double y1 = 0.0;
    ScalarFunction p;
    std::optional<FreeFunction> g;
    std::optional<FreeFunction> h;

    static OnePointForm linear(double x1, double y1, ScalarFunction p);
    static OnePointForm additive(double x1, double y1, FreeFunction g);
    static OnePointForm rational(double x1, double y1, FreeFunction h);
    static OnePointForm combined(double x1, double y1, ScalarFunction p, std::optional<FreeFunction> g,
                                 std::optional<FreeFunction> h);

    /// Throws AnchorViolation when p or g is not finite at x1 or h(x1) = 0.
    void check() const;
};

double one_point(const OnePointForm& form, double x);

/// p(x) = (g(x) - g(x1)) / (x - x1), with p(x1) = g'(x1).
class SlopeFunction {
public:
    SlopeFunction(FreeFunction g, double x1);
    double operator()(double x) const;

private:
    FreeFunction g_;
    double x1_;
    double g1_;
};

SlopeFunction slope_equivalent(const FreeFunction& g, double x1);

/// Function and two derivative orders p < q fixed at x1, using the support
/// functions x^p/p! and x^q/q!. `order` differentiates the result.
double two_derivative_form(const FreeFunction& g, double x1, unsigned p, unsigned q, double vp, double vq,
                           double x, unsigned order = 0);

/// y(x) = g(x) + sum_k (x - x1)^k / k! (y^(k)(x1) - g^(k)(x1)), k = 0..n
/// with n = values.size() - 1. `order` differentiates the result.
double taylor_form(const FreeFunction& g, double x1, std::span<const double> values, double x,
                   unsigned order = 0);

struct Node {
    double x = 0.0;
    double y = 0.0;
};

/// y(x) = g(x) + sum_k (y_k - g(x_k)) prod_{i != k} (x - x_i) / (x_k - x_i).
/// Throws DuplicateNode, AnchorViolation (g undefined at a node).
double waring_form(const FreeFunction& g, std::span<const Node> points, double x);

struct Waypoint {
    double t = 0.0;
    std::vector<double> y;
};

/// Componentwise waring_form. Throws DimensionMismatch when the component
/// counts of g and the waypoints disagree.
std::vector<double> waring_vector_form(std::span<const FreeFunction> g, std::span<const Waypoint> waypoints,
                                       double t);

/// Upper triangular B(x, x0) with B(i, j) = (x - x0)^(j-i) / (j-i)! for
/// j >= i, or its elementwise derivative when `differentiated`.
Matrix stack_matrix(double x, double x0, std::size_t size, bool differentiated = false);

/// (y, y', ..., y^(size-1)) at x given the same stack y_d0 at x0:
/// y_d(x) = g_d(x) + B(x, x0) (y_d0 - g_d(x0)).
std::vector<double> stack_form(const FreeFunction& g, double x0, std::span<const double> y_d0,
                               std::size_t size, double x);

struct PeriodicSpec {
    enum class Kind { Continuous, Discontinuous };

    double period = 1.0;
    double shift = 0.0;
    Kind kind = Kind::Continuous;
    /// Optional continuous map u -> psi(u) applied to u = x - shift. The
    /// default is sin(2 pi u / period).
    std::optional<FreeFunction> psi;

    /// Throws InvalidProblem unless period > 0.
    void check() const;
};

/// Continuous: psi(x - shift). Discontinuous: (x - shift) mod period in
/// [0, period).
double periodic_map(const PeriodicSpec& spec, double x);

/// g(map(x)) + (y_k - g(map(x_k))). Throws AnchorViolation.
double periodic_point_form(const PeriodicSpec& spec, const FreeFunction& g, Node anchor, double x);

/// sum_k periodic_point_form_k(x) prod_{i != k} (x - x_i) / (x_k - x_i).
double periodic_waring(const PeriodicSpec& spec, const FreeFunction& g, std::span<const Node> points,
                       double x);

/// prod_{i != k} (x - x_i) / (x_k - x_i) for every k. Throws DuplicateNode.
std::vector<double> waring_weights(std::span<const double> nodes, double x);

} // namespace cexpr
