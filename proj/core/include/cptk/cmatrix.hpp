#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cptk/scalar.hpp"

namespace cptk {

/// Dense matrix of exact scalars. Immutable value semantics in practice:
/// every operation returns a fresh matrix, equality is entrywise exact.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t rows, std::size_t cols) {
        return CMatrix(rows, cols);
    }
    static CMatrix diagonal(const std::vector<Scalar>& entries);
    /// Row-major construction helper for tests and templates.
    static CMatrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Scalar& at(std::size_t r, std::size_t c) const {
        check_index(r, c);
        return data_[r * cols_ + c];
    }
    Scalar& at(std::size_t r, std::size_t c) {
        check_index(r, c);
        return data_[r * cols_ + c];
    }

    CMatrix operator-() const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(const Scalar& s, CMatrix m);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

    CMatrix transpose() const;
    CMatrix conj() const;
    /// Conjugate transpose.
    CMatrix dagger() const { return transpose().conj(); }

    Scalar trace() const;
    bool is_zero() const;
    bool is_real() const;
    bool is_imaginary() const;
    bool is_symmetric() const { return *this == transpose(); }
    bool is_antisymmetric() const { return transpose() == -*this; }
    bool is_hermitian() const { return *this == dagger(); }
    bool is_antihermitian() const { return dagger() == -*this; }

    /// Exact Gauss-Jordan inverse; throws std::domain_error when singular.
    CMatrix inverse() const;

    /// Writes src into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const CMatrix& src);
    CMatrix block(std::size_t r0, std::size_t c0, std::size_t rows,
                  std::size_t cols) const;

    std::string str() const;

  private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("CMatrix index out of range");
    }

    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<Scalar> data_;
};

/// Kronecker product; dimensions multiply.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Block-diagonal sum of a non-empty sequence; dimensions add.
/// Throws std::invalid_argument on an empty sequence.
CMatrix direct_sum(std::span<const CMatrix> blocks);
CMatrix direct_sum(std::initializer_list<CMatrix> blocks);

} // namespace cptk
