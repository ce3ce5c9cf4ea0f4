#include "skewlab/linalg.hpp"

namespace skewlab {

Matrix::Matrix(const FieldSpec& f, unsigned rows, unsigned cols)
    : field_(f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Scalar::zero(f)) {
    if (rows == 0 || cols == 0) throw domain_error("empty matrix");
}

Matrix Matrix::identity(const FieldSpec& f, unsigned n) {
    Matrix m(f, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_rows(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty() || rows.front().empty()) throw domain_error("empty matrix");
    Matrix m(f, static_cast<unsigned>(rows.size()), static_cast<unsigned>(rows.front().size()));
    for (unsigned i = 0; i < m.rows_; ++i) {
        if (rows[i].size() != m.cols_) throw domain_error("ragged matrix rows");
        for (unsigned j = 0; j < m.cols_; ++j) {
            if (!(rows[i][j].field() == f)) throw domain_error("matrix entry from the wrong field");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::from_int_rows(const FieldSpec& f, const std::vector<std::vector<long>>& rows) {
    if (rows.empty() || rows.front().empty()) throw domain_error("empty matrix");
    Matrix m(f, static_cast<unsigned>(rows.size()), static_cast<unsigned>(rows.front().size()));
    for (unsigned i = 0; i < m.rows_; ++i) {
        if (rows[i].size() != m.cols_) throw domain_error("ragged matrix rows");
        for (unsigned j = 0; j < m.cols_; ++j) m.at(i, j) = Scalar::from_int(f, rows[i][j]);
    }
    return m;
}

Scalar& Matrix::at(unsigned i, unsigned j) {
    if (i >= rows_ || j >= cols_) throw domain_error("matrix index out of range");
    return a_[static_cast<std::size_t>(i) * cols_ + j];
}

const Scalar& Matrix::at(unsigned i, unsigned j) const {
    if (i >= rows_ || j >= cols_) throw domain_error("matrix index out of range");
    return a_[static_cast<std::size_t>(i) * cols_ + j];
}

static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols())
        throw domain_error("matrix shape or field mismatch");
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_shape(*this, o);
    Matrix r = *this;
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) r.at(i, j) += o.at(i, j);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_shape(*this, o);
    Matrix r = *this;
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) r.at(i, j) -= o.at(i, j);
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (!(field_ == o.field_) || cols_ != o.rows_) throw domain_error("matrix product mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (unsigned j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

Matrix Matrix::operator*(const Scalar& c) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Scalar Matrix::trace() const {
    if (rows_ != cols_) throw domain_error("trace of a non-square matrix");
    Scalar t = Scalar::zero(field_);
    for (unsigned i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

std::string Matrix::to_string() const {
    std::string out = "[";
    for (unsigned i = 0; i < rows_; ++i) {
        out += i == 0 ? "[" : ", [";
        for (unsigned j = 0; j < cols_; ++j) {
            if (j > 0) out += ", ";
            out += at(i, j).to_string();
        }
        out += "]";
    }
    return out + "]";
}

Matrix mat_pow(const Matrix& m, unsigned long e) {
    if (m.rows() != m.cols()) throw domain_error("power of a non-square matrix");
    Matrix acc = Matrix::identity(m.field(), m.rows());
    Matrix base = m;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw domain_error("determinant of a non-square matrix");
    Matrix a = m;
    const unsigned n = a.rows();
    Scalar det = Scalar::one(m.field());
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return Scalar::zero(m.field());
        if (pivot != col) {
            for (unsigned j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            det = -det;
        }
        det *= a.at(col, col);
        Scalar inv = a.at(col, col).inverse();
        for (unsigned i = col + 1; i < n; ++i) {
            if (a.at(i, col).is_zero()) continue;
            Scalar factor = a.at(i, col) * inv;
            for (unsigned j = col; j < n; ++j) a.at(i, j) -= factor * a.at(col, j);
        }
    }
    return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw domain_error("inverse of a non-square matrix");
    const unsigned n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(m.field(), n);
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (unsigned j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        Scalar piv_inv = a.at(col, col).inverse();
        for (unsigned j = 0; j < n; ++j) {
            a.at(col, j) *= piv_inv;
            inv.at(col, j) *= piv_inv;
        }
        for (unsigned i = 0; i < n; ++i) {
            if (i == col || a.at(i, col).is_zero()) continue;
            Scalar factor = a.at(i, col);
            for (unsigned j = 0; j < n; ++j) {
                a.at(i, j) -= factor * a.at(col, j);
                inv.at(i, j) -= factor * inv.at(col, j);
            }
        }
    }
    return inv;
}

namespace {

// determinant of a matrix with UniPoly entries, cofactor expansion;
// n stays small so n! cost is acceptable
UniPoly unipoly_det(const std::vector<std::vector<UniPoly>>& m, std::vector<unsigned> cols) {
    const std::size_t row = m.size() - cols.size();
    if (cols.size() == 1) return m[row][cols[0]];
    UniPoly acc = UniPoly::zero(m[0][0].field());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const UniPoly& entry = m[row][cols[k]];
        if (entry.is_zero()) continue;
        std::vector<unsigned> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        UniPoly minor = unipoly_det(m, std::move(rest));
        UniPoly term = entry * minor;
        if (k % 2 == 1) term = -term;
        acc = acc + term;
    }
    return acc;
}

} // namespace

UniPoly charpoly(const Matrix& a) {
    if (a.rows() != a.cols()) throw domain_error("charpoly of a non-square matrix");
    const unsigned n = a.rows();
    const FieldSpec& f = a.field();
    std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n, UniPoly::zero(f)));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            // t*I - A
            m[i][j] = UniPoly::constant(-a.at(i, j));
            if (i == j) m[i][j] = m[i][j] + UniPoly::variable(f);
        }
    std::vector<unsigned> cols(n);
    for (unsigned j = 0; j < n; ++j) cols[j] = j;
    return unipoly_det(m, std::move(cols));
}

Matrix poly_at_matrix(const UniPoly& p, const Matrix& a) {
    if (a.rows() != a.cols()) throw domain_error("poly_at_matrix needs a square matrix");
    Matrix acc(a.field(), a.rows(), a.cols());
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc = acc * a;
        if (!p.coeffs()[i].is_zero()) {
            for (unsigned d = 0; d < a.rows(); ++d) acc.at(d, d) += p.coeffs()[i];
        }
    }
    return acc;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& a) {
    const unsigned rows = a.rows(), cols = a.cols();
    Matrix m = a;
    std::vector<int> pivot_of_col(cols, -1);
    unsigned r = 0;
    for (unsigned c = 0; c < cols && r < rows; ++c) {
        unsigned pivot = r;
        while (pivot < rows && m.at(pivot, c).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (unsigned j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Scalar inv = m.at(r, c).inverse();
        for (unsigned j = 0; j < cols; ++j) m.at(r, j) *= inv;
        for (unsigned i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar factor = m.at(i, c);
            for (unsigned j = 0; j < cols; ++j) m.at(i, j) -= factor * m.at(r, j);
        }
        pivot_of_col[c] = static_cast<int>(r);
        ++r;
    }
    std::vector<std::vector<Scalar>> basis;
    for (unsigned c = 0; c < cols; ++c) {
        if (pivot_of_col[c] != -1) continue;
        std::vector<Scalar> v(cols, Scalar::zero(a.field()));
        v[c] = Scalar::one(a.field());
        for (unsigned j = 0; j < cols; ++j) {
            if (pivot_of_col[j] != -1)
                v[j] = -m.at(static_cast<unsigned>(pivot_of_col[j]), c);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace skewlab
