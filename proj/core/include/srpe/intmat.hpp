#pragma once
/* intmat.hpp - signed integer matrices and vectors.
 *
 * Trapdoor bases, Gaussian preimages and all secret-key material are small
 * signed integers; they only meet Z_q through the mixed products in zq.hpp.
 */

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace srpe {

using i64 = std::int64_t;

struct IntVector {
    std::vector<i64> entries;

    IntVector() = default;
    explicit IntVector(std::size_t len) : entries(len, 0) {}

    std::size_t size() const { return entries.size(); }
    i64& operator[](std::size_t i) { return entries[i]; }
    i64 operator[](std::size_t i) const { return entries[i]; }

    bool operator==(const IntVector&) const = default;

    i64 norm_inf() const {
        i64 m = 0;
        for (i64 v : entries) m = std::max<i64>(m, v < 0 ? -v : v);
        return m;
    }
    double norm2() const {
        double s = 0;
        for (i64 v : entries) s += double(v) * double(v);
        return std::sqrt(s);
    }
};

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    i64& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    i64 at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    i64& operator()(std::size_t r, std::size_t c) { return at(r, c); }
    i64 operator()(std::size_t r, std::size_t c) const { return at(r, c); }

    const std::vector<i64>& data() const { return data_; }
    std::vector<i64>& data() { return data_; }

    bool operator==(const IntMatrix&) const = default;

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    IntVector column(std::size_t c) const {
        IntVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }
    void set_column(std::size_t c, const IntVector& v) {
        for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
    }

    /// Euclidean norm of the longest column.
    double max_column_norm() const {
        double best = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            double s = 0;
            for (std::size_t r = 0; r < rows_; ++r) s += double(at(r, c)) * double(at(r, c));
            best = std::max(best, s);
        }
        return std::sqrt(best);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<i64> data_;
};

IntMatrix int_mat_mul(const IntMatrix& a, const IntMatrix& b);
IntVector int_mat_vec(const IntMatrix& a, const IntVector& v);
IntVector int_transpose_vec_int(const IntMatrix& a, const IntVector& v);
IntVector int_stack(const IntVector& a, const IntVector& b);
IntVector int_vec_add(const IntVector& a, const IntVector& b);

}  // namespace srpe
