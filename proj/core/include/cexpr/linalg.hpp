#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace cexpr {

/// Small dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::vector<double> column(std::size_t c) const;

    /// Maximum absolute column sum.
    double norm1() const;
    double max_abs() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// y = x^T A for a row vector x.
std::vector<double> row_times(std::span<const double> x, const Matrix& a);

struct InversionResult {
    std::size_t rank = 0;
    /// 1 / (||A||_1 ||A^-1||_1); 0 when rank deficient.
    double rcond = 0.0;
    std::optional<Matrix> inverse;
};

/// Gauss-Jordan elimination with complete pivoting.
///
/// Elimination stops when the largest remaining pivot is at most
/// `relative_threshold * max|A|`; the number of pivots taken is the rank.
/// The inverse is produced only for full rank square input.
InversionResult invert(const Matrix& a, double relative_threshold = 1e-12);

} // namespace cexpr
