#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace opschmidt {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. The single value type shared by every
/// component of the toolkit; everything here runs at desk scale, so storage
/// is always dense and arithmetic is plain double precision.
class ComplexMatrix {
public:
    /// Empty 0x0 matrix. Only useful as a placeholder before assignment.
    ComplexMatrix() = default;

    /// Zero-filled rows x cols matrix. Both dimensions must be positive.
    ComplexMatrix(std::size_t rows, std::size_t cols);

    /// Takes ownership of row-major data; its length must be rows*cols.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> data);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: entry ((ra*b.rows + rb), (ca*b.cols + cb)) = a(ra,ca)*b(rb,cb).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

/// Hilbert-Schmidt inner product Tr(a^dagger * b); conjugate-linear in the
/// first argument, linear in the second.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);

/// Largest entrywise |a - b|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(2*pi*i*numerator/denominator). The numerator is reduced modulo the
/// denominator before any floating-point arithmetic, so equal residues give
/// bit-identical results no matter how large the inputs were.
Complex unit_phase(std::int64_t numerator, std::int64_t denominator);

} // namespace opschmidt
