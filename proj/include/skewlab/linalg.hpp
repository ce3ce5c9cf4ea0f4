#pragma once

#include <optional>
#include <vector>

#include "skewlab/scalar.hpp"
#include "skewlab/unipoly.hpp"

namespace skewlab {

/// Small dense matrix over an exact field. Row major.
class Matrix {
public:
    Matrix(const FieldSpec& f, unsigned rows, unsigned cols);
    static Matrix identity(const FieldSpec& f, unsigned n);
    static Matrix from_rows(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows);
    static Matrix from_int_rows(const FieldSpec& f,
                                const std::vector<std::vector<long>>& rows);

    const FieldSpec& field() const { return field_; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    Scalar& at(unsigned i, unsigned j);
    const Scalar& at(unsigned i, unsigned j) const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const Scalar& c) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    Scalar trace() const;
    bool is_identity() const;
    bool is_zero() const;

    std::string to_string() const;

private:
    FieldSpec field_;
    unsigned rows_, cols_;
    std::vector<Scalar> a_;
};

Matrix mat_pow(const Matrix& m, unsigned long e);

/// Exact determinant by fraction-producing Gaussian elimination.
Scalar determinant(const Matrix& m);

/// Exact inverse, or nullopt for singular input.
std::optional<Matrix> inverse(const Matrix& m);

/// Characteristic polynomial det(t*I - A), monic of degree n, computed by
/// cofactor expansion over dense univariate polynomials. Field agnostic
/// (no division by integers, so small characteristics are fine).
UniPoly charpoly(const Matrix& a);

/// p(A), Horner over matrices.
Matrix poly_at_matrix(const UniPoly& p, const Matrix& a);

/// Basis of the right kernel {v : A v = 0}, reduced echelon construction.
/// Deterministic: free variables in ascending column order.
std::vector<std::vector<Scalar>> nullspace(const Matrix& a);

} // namespace skewlab
