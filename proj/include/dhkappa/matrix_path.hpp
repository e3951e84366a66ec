#pragma once

// Matrix formulation of the DH kappa: the eight-step procedure over the count
// matrix A and the label indicator matrix B, built from whole-matrix
// primitives (column/row sums, Hadamard products, an element-wise pair map).
// Deliberately shares no code with core_metrics.hpp so the two can be checked
// against each other.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dhkappa/error.hpp"
#include "dhkappa/types.hpp"

namespace dhkappa {

/// Dense row-major matrix.
template <typename T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw Error(ErrorKind::InvalidArgument, "matrix data does not match its shape");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const T> values() const noexcept { return data_; }
    std::span<T> values() noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
Matrix<T> ones(std::size_t rows, std::size_t cols) {
    return Matrix<T>(rows, cols, T{1});
}

template <typename T>
Matrix<T> identity(std::size_t size) {
    Matrix<T> out(size, size);
    for (std::size_t i = 0; i < size; ++i) out(i, i) = T{1};
    return out;
}

namespace detail {
template <typename T, typename U>
void require_same_shape(const Matrix<T>& a, const Matrix<U>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::InvalidArgument,
                    "shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}
}  // namespace detail

/// Element-wise product.
template <typename T, typename U>
auto hadamard(const Matrix<T>& a, const Matrix<U>& b) {
    using R = std::common_type_t<T, U>;
    detail::require_same_shape(a, b);
    Matrix<R> out(a.rows(), a.cols());
    auto x = a.values();
    auto y = b.values();
    auto z = out.values();
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = static_cast<R>(x[k]) * static_cast<R>(y[k]);
    return out;
}

template <typename T, typename U>
auto subtract(const Matrix<T>& a, const Matrix<U>& b) {
    using R = std::common_type_t<T, U>;
    detail::require_same_shape(a, b);
    Matrix<R> out(a.rows(), a.cols());
    auto x = a.values();
    auto y = b.values();
    auto z = out.values();
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = static_cast<R>(x[k]) - static_cast<R>(y[k]);
    return out;
}

template <typename R, typename T>
Matrix<R> cast(const Matrix<T>& m) {
    Matrix<R> out(m.rows(), m.cols());
    auto x = m.values();
    auto z = out.values();
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = static_cast<R>(x[k]);
    return out;
}

template <typename T>
Matrix<T> scale(Matrix<T> m, T factor) {
    for (T& v : m.values()) v *= factor;
    return m;
}

/// Sums each column: r x c -> 1 x c. Rows are accumulated in ascending order.
template <typename T>
Matrix<T> col_sum(const Matrix<T>& m) {
    Matrix<T> out(1, m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(0, c) += m(r, c);
    return out;
}

/// Sums each row: r x c -> r x 1.
template <typename T>
Matrix<T> row_sum(const Matrix<T>& m) {
    Matrix<T> out(m.rows(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        T acc{};
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c);
        out(r, 0) = acc;
    }
    return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& m) {
    Matrix<T> out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
    return out;
}

/// Element-wise k -> k(k-1)/2.
template <typename T>
Matrix<double> pairwise_map(const Matrix<T>& m) {
    static_assert(std::is_integral_v<T>, "pairwise_map expects integer counts");
    Matrix<double> out(m.rows(), m.cols());
    auto in = m.values();
    auto z = out.values();
    for (std::size_t k = 0; k < z.size(); ++k) {
        if constexpr (std::is_signed_v<T>) {
            if (in[k] < 0) throw Error(ErrorKind::InvalidArgument, "pairwise_map got a negative count");
        }
        const double v = static_cast<double>(in[k]);
        z[k] = v * (v - 1.0) / 2.0;
    }
    return out;
}

inline Matrix<Count> to_matrix(const AnnotationCounts& counts) {
    auto flat = counts.flat();
    return Matrix<Count>(counts.items(), counts.categories(), std::vector<Count>(flat.begin(), flat.end()));
}

/// n x m 0/1 matrix with exactly one 1 per row.
class IndicatorMatrix {
public:
    explicit IndicatorMatrix(Matrix<std::uint8_t> entries) : entries_(std::move(entries)) {
        for (std::size_t r = 0; r < entries_.rows(); ++r) {
            std::size_t hot = 0;
            for (std::size_t c = 0; c < entries_.cols(); ++c) {
                const auto v = entries_(r, c);
                if (v > 1) throw Error(ErrorKind::InvalidArgument, "indicator entries must be 0 or 1");
                hot += v;
            }
            if (hot != 1)
                throw Error(ErrorKind::InvalidArgument,
                            "indicator row " + std::to_string(r + 1) + " has " + std::to_string(hot) +
                                " ones, expected exactly 1");
        }
    }

    const Matrix<std::uint8_t>& entries() const noexcept { return entries_; }
    std::size_t rows() const noexcept { return entries_.rows(); }
    std::size_t cols() const noexcept { return entries_.cols(); }

private:
    Matrix<std::uint8_t> entries_;
};

inline IndicatorMatrix indicator_from_labels(std::span<const std::size_t> labels, std::size_t categories) {
    Matrix<std::uint8_t> b(labels.size(), categories);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= categories)
            throw Error(ErrorKind::InvalidArgument,
                        "label of item " + std::to_string(i + 1) + " is outside the category set");
        b(i, labels[i]) = 1;
    }
    return IndicatorMatrix(std::move(b));
}

inline IndicatorMatrix indicator_from_labels(const ProposedLabels& labels) {
    return indicator_from_labels(labels.values(), labels.categories());
}

// Above this many categories the m x m matrix T is not materialized; its
// squared row sums are formed as sum_j C_j^2 - C_i^2 instead.
inline constexpr std::size_t dense_off_diagonal_limit = 64;

struct MatrixTrace {
    std::vector<double> category_row;         // C, 1 x m
    std::vector<double> label_row;            // L, 1 x m
    double expected_correct = 0.0;            // C_E
    Matrix<double> off_diagonal;              // T, empty when m > dense_off_diagonal_limit
    std::vector<double> off_diagonal_sq_sum;  // row_sum(T (.) T), length m
    double expected_incorrect = 0.0;          // C_F
    double observed_correct_mean = 0.0;       // R bar
    double observed_incorrect_mean = 0.0;     // S bar
    double kappa_dh = 0.0;
};

inline MatrixTrace dh_kappa_matrix(const AnnotationCounts& counts, const IndicatorMatrix& indicator) {
    const std::size_t n = counts.items();
    const std::size_t m = counts.categories();
    if (indicator.rows() != n || indicator.cols() != m)
        throw Error(ErrorKind::InvalidArgument, "indicator matrix shape does not match the counts");

    const Matrix<Count> a = to_matrix(counts);
    const Matrix<std::uint8_t>& b = indicator.entries();
    const double nd = static_cast<double>(n);
    const double big_n = static_cast<double>(counts.annotators());
    MatrixTrace t;

    // C <- col_sum(A) / (N n)
    const Matrix<double> c = scale(col_sum(cast<double>(a)), 1.0 / (big_n * nd));
    // L <- col_sum(B) / n
    const Matrix<double> l = scale(col_sum(cast<double>(b)), 1.0 / nd);
    t.category_row.assign(c.values().begin(), c.values().end());
    t.label_row.assign(l.values().begin(), l.values().end());

    // C_E <- row_sum(C (.) C (.) L)
    t.expected_correct = row_sum(hadamard(hadamard(c, c), l))(0, 0);

    // T <- [C; ...; C] (.) (J - I), then row_sum(T (.) T)
    Matrix<double> sq_sums;
    if (m <= dense_off_diagonal_limit) {
        Matrix<double> stacked(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t j = 0; j < m; ++j) stacked(r, j) = c(0, j);
        t.off_diagonal = hadamard(stacked, subtract(ones<double>(m, m), identity<double>(m)));
        sq_sums = row_sum(hadamard(t.off_diagonal, t.off_diagonal));
    } else {
        const double total = row_sum(hadamard(c, c))(0, 0);
        sq_sums = Matrix<double>(m, 1);
        for (std::size_t r = 0; r < m; ++r) sq_sums(r, 0) = total - c(0, r) * c(0, r);
    }
    t.off_diagonal_sq_sum.assign(sq_sums.values().begin(), sq_sums.values().end());

    // C_F <- col_sum(row_sum(T (.) T) (.) L^T)
    t.expected_incorrect = col_sum(hadamard(sq_sums, transpose(l)))(0, 0);

    // R bar, S bar via f(A) (.) B and f(A) (.) (J - B)
    const Matrix<double> fa = pairwise_map(a);
    const double inv_pairs = 1.0 / (big_n * (big_n - 1.0) / 2.0);
    const Matrix<double> correct = scale(row_sum(hadamard(fa, b)), inv_pairs);
    const Matrix<double> incorrect = scale(row_sum(hadamard(fa, subtract(ones<double>(n, m), b))), inv_pairs);
    t.observed_correct_mean = col_sum(correct)(0, 0) / nd;
    t.observed_incorrect_mean = col_sum(incorrect)(0, 0) / nd;

    const double expected_differential = t.expected_correct - t.expected_incorrect;
    const double denominator = 1.0 - expected_differential;
    if (std::abs(denominator) < degeneracy_tolerance)
        throw Error(ErrorKind::DegenerateDistribution,
                    "annotations and labels concentrate on a single category");
    t.kappa_dh =
        ((t.observed_correct_mean - t.observed_incorrect_mean) - expected_differential) / denominator;
    return t;
}

inline MatrixTrace dh_kappa_matrix(const AnnotationCounts& counts, const ProposedLabels& labels) {
    require_paired(counts, labels);
    return dh_kappa_matrix(counts, indicator_from_labels(labels));
}

}  // namespace dhkappa
