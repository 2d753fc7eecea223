#include "cexpr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cexpr/errors.hpp"

namespace cexpr {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionMismatch("ragged matrix initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

double Matrix::norm1() const {
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            sum += std::abs((*this)(r, c));
        }
        best = std::max(best, sum);
    }
    return best;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double v : data_) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionMismatch("matrix product dimension mismatch");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols_; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

std::vector<double> row_times(std::span<const double> x, const Matrix& a) {
    if (x.size() != a.rows()) {
        throw DimensionMismatch("row vector length does not match matrix rows");
    }
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out[c] += x[r] * a(r, c);
        }
    }
    return out;
}

InversionResult invert(const Matrix& a, double relative_threshold) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    InversionResult result;
    const double scale = a.max_abs();
    if (scale == 0.0) {
        return result;
    }
    const double threshold = relative_threshold * scale;

    // Work on [A | I]; column permutation recorded in col_perm.
    Matrix work = a;
    Matrix right = Matrix::identity(rows);
    std::vector<std::size_t> col_perm(cols);
    std::iota(col_perm.begin(), col_perm.end(), 0);

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pr = k;
        std::size_t pc = k;
        double best = 0.0;
        for (std::size_t r = k; r < rows; ++r) {
            for (std::size_t c = k; c < cols; ++c) {
                const double v = std::abs(work(r, c));
                if (v > best) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (best <= threshold) {
            break;
        }
        if (pr != k) {
            std::swap_ranges(work.row(pr).begin(), work.row(pr).end(), work.row(k).begin());
            std::swap_ranges(right.row(pr).begin(), right.row(pr).end(), right.row(k).begin());
        }
        if (pc != k) {
            for (std::size_t r = 0; r < rows; ++r) {
                std::swap(work(r, pc), work(r, k));
            }
            std::swap(col_perm[pc], col_perm[k]);
        }
        const double pivot = work(k, k);
        for (std::size_t c = 0; c < cols; ++c) {
            work(k, c) /= pivot;
        }
        for (std::size_t c = 0; c < rows; ++c) {
            right(k, c) /= pivot;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == k) {
                continue;
            }
            const double factor = work(r, k);
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < cols; ++c) {
                work(r, c) -= factor * work(k, c);
            }
            for (std::size_t c = 0; c < rows; ++c) {
                right(r, c) -= factor * right(k, c);
            }
        }
        ++result.rank;
    }

    if (rows != cols || result.rank < rows) {
        return result;
    }
    // work is now the identity in permuted columns: row k solves for
    // unknown col_perm[k].
    Matrix inverse(rows, rows);
    for (std::size_t k = 0; k < rows; ++k) {
        for (std::size_t c = 0; c < rows; ++c) {
            inverse(col_perm[k], c) = right(k, c);
        }
    }
    result.rcond = 1.0 / (a.norm1() * inverse.norm1());
    result.inverse = std::move(inverse);
    return result;
}

} // namespace cexpr
