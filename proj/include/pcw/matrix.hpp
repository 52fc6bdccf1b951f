#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pcw/numeric.hpp"

namespace pcw {

struct MatrixError : std::runtime_error {
    explicit MatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Dense square/rectangular matrix of exact rationals. Sizes here are tiny
// (representation dimension + 1), so simple O(n^3) algorithms are fine.
class MatQ {
  public:
    MatQ() = default;
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static MatQ identity(int n) {
        MatQ m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool operator==(const MatQ& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    MatQ operator*(const MatQ& o) const;
    MatQ operator+(const MatQ& o) const;
    MatQ operator-(const MatQ& o) const;
    MatQ scaled(const Rat& s) const;

    Rat det() const;             // square only
    MatQ inverse() const;        // throws MatrixError when singular
    MatQ pow(const Int& e) const;  // square; negative e inverts first

    bool is_identity() const;
    bool is_zero() const;

    // Basis of the right nullspace {x : M x = 0} as columns.
    std::vector<std::vector<Rat>> nullspace() const;

    std::string str() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

}  // namespace pcw
