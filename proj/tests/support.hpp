#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace cexpr::testing {

/// Seeded uniform draws; every property test owns one.
class Draws {
public:
    explicit Draws(std::uint64_t seed) : generator_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(generator_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(generator_); }

    std::vector<double> distinct(std::size_t n, double lo, double hi, double min_gap) {
        std::vector<double> out;
        while (out.size() < n) {
            const double x = uniform(lo, hi);
            bool ok = true;
            for (double y : out) {
                ok = ok && std::abs(x - y) >= min_gap;
            }
            if (ok) {
                out.push_back(x);
            }
        }
        return out;
    }

private:
    std::mt19937_64 generator_;
};

/// Fourth-order central difference.
inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-3) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

/// |a - b| relative to max(1, |a|, |b|).
inline double relative_gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Classical interpolating polynomial via Newton divided differences,
/// an algorithm independent of the product-weight form under test.
class NewtonInterpolant {
public:
    NewtonInterpolant(std::vector<double> xs, const std::vector<double>& ys) : xs_(std::move(xs)), coef_(ys) {
        for (std::size_t level = 1; level < xs_.size(); ++level) {
            for (std::size_t i = xs_.size() - 1; i >= level; --i) {
                coef_[i] = (coef_[i] - coef_[i - 1]) / (xs_[i] - xs_[i - level]);
            }
        }
    }

    double operator()(double x) const {
        double y = coef_.back();
        for (std::size_t i = coef_.size() - 1; i-- > 0;) {
            y = y * (x - xs_[i]) + coef_[i];
        }
        return y;
    }

private:
    std::vector<double> xs_;
    std::vector<double> coef_;
};

} // namespace cexpr::testing
