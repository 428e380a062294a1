#pragma once

// Exact integer / rational linear algebra used by the return-vector group
// machinery. Matrices over cpp_int never overflow; everything here is small
// (ranks of a handful), so the naive dense algorithms are fine.

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

namespace tc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

using Index = std::ptrdiff_t;

// Minimal dense matrix over an exact scalar. Eigen's expression machinery
// does not cooperate with this Boost version's multiprecision types, so the
// exact layer has its own type; conversions to Eigen happen at the float
// boundary only.
template <typename T>
class DMat {
 public:
  DMat() = default;
  DMat(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DMat identity(Index n) {
    DMat m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  T& operator()(Index r, Index c) { return data_[r * cols_ + c]; }
  const T& operator()(Index r, Index c) const { return data_[r * cols_ + c]; }

  DMat operator*(const DMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("DMat: dimension mismatch in product");
    DMat out(rows_, o.cols_);
    for (Index i = 0; i < rows_; ++i)
      for (Index k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (Index j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (static_cast<Index>(v.size()) != cols_) throw std::invalid_argument("DMat: dimension mismatch in apply");
    std::vector<T> out(rows_);
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  DMat transpose() const {
    DMat out(cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool operator==(const DMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  Index rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using ZMat = DMat<BigInt>;
using QMat = DMat<BigRational>;

inline ZMat to_zmat(const Eigen::MatrixXi& m) {
  ZMat out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Eigen::MatrixXd to_double(const ZMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<double>();
  return out;
}

inline Eigen::MatrixXi to_int(const ZMat& m) {
  Eigen::MatrixXi out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) > std::numeric_limits<int>::max() || m(i, j) < std::numeric_limits<int>::min())
        throw std::overflow_error("ZMat entry does not fit in int");
      out(i, j) = m(i, j).convert_to<int>();
    }
  return out;
}

// Column-style Hermite normal form: returns H (rows x rank) whose columns are
// a canonical basis of the column lattice of A. Deterministic.
ZMat hermite_basis(const ZMat& a);

// Elementary divisors (nonzero ones) of the integer matrix, ascending.
std::vector<BigInt> smith_divisors(ZMat a);

Index integer_rank(const ZMat& a);

// Solves A x = b exactly over the rationals (A with full column rank); returns
// nullopt when the system is inconsistent or the solution is not integral.
std::optional<std::vector<BigInt>> solve_integer(const ZMat& a, const std::vector<BigInt>& b);

}  // namespace tc
