#include "pcw/matrix.hpp"

#include <sstream>

namespace pcw {

MatQ MatQ::operator*(const MatQ& o) const {
    if (cols_ != o.rows_) throw MatrixError("dimension mismatch in product");
    MatQ r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

MatQ MatQ::operator+(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw MatrixError("dimension mismatch in sum");
    MatQ r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

MatQ MatQ::operator-(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw MatrixError("dimension mismatch in diff");
    MatQ r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

MatQ MatQ::scaled(const Rat& s) const {
    MatQ r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

Rat MatQ::det() const {
    if (rows_ != cols_) throw MatrixError("det needs a square matrix");
    MatQ m = *this;
    Rat d = 1;
    for (int c = 0; c < cols_; ++c) {
        int pivot = -1;
        for (int r = c; r < rows_; ++r)
            if (m.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != c) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Rat inv_p = 1 / m.at(c, c);
        for (int r = c + 1; r < rows_; ++r) {
            if (m.at(r, c) == 0) continue;
            Rat f = m.at(r, c) * inv_p;
            for (int j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(c, j);
        }
    }
    return d;
}

MatQ MatQ::inverse() const {
    if (rows_ != cols_) throw MatrixError("inverse needs a square matrix");
    const int n = rows_;
    MatQ m = *this;
    MatQ r = identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int row = c; row < n; ++row)
            if (m.at(row, c) != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw MatrixError("matrix is singular");
        if (pivot != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(pivot, j), m.at(c, j));
                std::swap(r.at(pivot, j), r.at(c, j));
            }
        Rat inv_p = 1 / m.at(c, c);
        for (int j = 0; j < n; ++j) {
            m.at(c, j) *= inv_p;
            r.at(c, j) *= inv_p;
        }
        for (int row = 0; row < n; ++row) {
            if (row == c || m.at(row, c) == 0) continue;
            Rat f = m.at(row, c);
            for (int j = 0; j < n; ++j) {
                m.at(row, j) -= f * m.at(c, j);
                r.at(row, j) -= f * r.at(c, j);
            }
        }
    }
    return r;
}

MatQ MatQ::pow(const Int& e) const {
    if (rows_ != cols_) throw MatrixError("pow needs a square matrix");
    MatQ base = e < 0 ? inverse() : *this;
    Int k = abs(e);
    MatQ acc = identity(rows_);
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

bool MatQ::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool MatQ::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

std::vector<std::vector<Rat>> MatQ::nullspace() const {
    MatQ m = *this;
    const int nr = rows_, nc = cols_;
    std::vector<int> pivot_col_of_row(nr, -1);
    std::vector<bool> is_pivot_col(nc, false);
    int row = 0;
    for (int c = 0; c < nc && row < nr; ++c) {
        int pivot = -1;
        for (int r = row; r < nr; ++r)
            if (m.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < nc; ++j) std::swap(m.at(pivot, j), m.at(row, j));
        Rat inv_p = 1 / m.at(row, c);
        for (int j = 0; j < nc; ++j) m.at(row, j) *= inv_p;
        for (int r = 0; r < nr; ++r) {
            if (r == row || m.at(r, c) == 0) continue;
            Rat f = m.at(r, c);
            for (int j = 0; j < nc; ++j) m.at(r, j) -= f * m.at(row, j);
        }
        pivot_col_of_row[row] = c;
        is_pivot_col[c] = true;
        ++row;
    }
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < nc; ++free) {
        if (is_pivot_col[free]) continue;
        std::vector<Rat> v(nc, Rat(0));
        v[free] = 1;
        for (int r = 0; r < row; ++r) {
            int pc = pivot_col_of_row[r];
            v[pc] = -m.at(r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string MatQ::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).get_str();
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

}  // namespace pcw
