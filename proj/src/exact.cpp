#include "tilecocycle/exact.hpp"

namespace tc {
namespace {

// Gaussian elimination over Q; returns (rank, echelon matrix).
Index rational_eliminate(QMat& m) {
  Index rank = 0;
  for (Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Index pivot = -1;
    for (Index r = rank; r < m.rows(); ++r)
      if (m(r, col) != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (Index c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(rank, c));
    const BigRational p = m(rank, col);
    for (Index c = 0; c < m.cols(); ++c) m(rank, c) /= p;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, col) == 0) continue;
      const BigRational f = m(r, col);
      for (Index c = 0; c < m.cols(); ++c) m(r, c) -= f * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

ZMat hermite_basis(const ZMat& a) {
  // Work on a copy; column operations only, so the column lattice is fixed.
  ZMat m = a;
  const Index rows = m.rows(), cols = m.cols();
  Index pivot_col = 0;
  std::vector<Index> pivot_rows;
  for (Index row = 0; row < rows && pivot_col < cols; ++row) {
    // Euclidean reduction across columns pivot_col..cols-1 on this row.
    while (true) {
      Index nz = -1;
      for (Index c = pivot_col; c < cols; ++c)
        if (m(row, c) != 0) { nz = c; break; }
      if (nz < 0) break;
      // Find column with minimal |entry| in this row.
      Index best = nz;
      for (Index c = pivot_col; c < cols; ++c)
        if (m(row, c) != 0 && abs(m(row, c)) < abs(m(row, best))) best = c;
      if (best != pivot_col)
        for (Index r = 0; r < rows; ++r) std::swap(m(r, best), m(r, pivot_col));
      bool reduced = true;
      for (Index c = pivot_col + 1; c < cols; ++c) {
        if (m(row, c) == 0) continue;
        BigInt q = m(row, c) / m(row, pivot_col);
        if (q != 0)
          for (Index r = 0; r < rows; ++r) m(r, c) -= q * m(r, pivot_col);
        if (m(row, c) != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (m(row, pivot_col) == 0) continue;
    if (m(row, pivot_col) < 0)
      for (Index r = 0; r < rows; ++r) m(r, pivot_col) = -m(r, pivot_col);
    // Reduce earlier pivot columns against this one for canonical form.
    for (Index c = 0; c < pivot_col; ++c) {
      // floor division so residues land in [0, pivot).
      BigInt q;
      BigInt num = m(row, c), den = m(row, pivot_col);
      q = num / den;
      if (num % den != 0 && ((num < 0) != (den < 0))) q -= 1;
      if (q != 0)
        for (Index r = 0; r < rows; ++r) m(r, c) -= q * m(r, pivot_col);
    }
    pivot_rows.push_back(row);
    ++pivot_col;
  }
  const Index rank = pivot_col;
  ZMat out(rows, rank);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < rank; ++c) out(r, c) = m(r, c);
  return out;
}

std::vector<BigInt> smith_divisors(ZMat a) {
  const Index rows = a.rows(), cols = a.cols();
  std::vector<BigInt> divisors;
  Index top = 0;
  while (top < rows && top < cols) {
    // Find a nonzero entry in the remaining block.
    Index pr = -1, pc = -1;
    for (Index r = top; r < rows && pr < 0; ++r)
      for (Index c = top; c < cols; ++c)
        if (a(r, c) != 0) { pr = r; pc = c; break; }
    if (pr < 0) break;
    for (Index c = 0; c < cols; ++c) std::swap(a(pr, c), a(top, c));
    for (Index r = 0; r < rows; ++r) std::swap(a(r, pc), a(r, top));
    bool done = false;
    while (!done) {
      // Clear row and column via Euclidean steps.
      for (Index r = top + 1; r < rows; ++r) {
        while (a(r, top) != 0) {
          BigInt q = a(r, top) / a(top, top);
          for (Index c = top; c < cols; ++c) a(r, c) -= q * a(top, c);
          if (a(r, top) != 0)
            for (Index c = top; c < cols; ++c) std::swap(a(r, c), a(top, c));
        }
      }
      for (Index c = top + 1; c < cols; ++c) {
        while (a(top, c) != 0) {
          BigInt q = a(top, c) / a(top, top);
          for (Index r = top; r < rows; ++r) a(r, c) -= q * a(r, top);
          if (a(top, c) != 0)
            for (Index r = top; r < rows; ++r) std::swap(a(r, c), a(r, top));
        }
      }
      done = true;
      for (Index r = top + 1; r < rows; ++r)
        if (a(r, top) != 0) done = false;
      // Divisibility fix-up: pivot must divide every remaining entry.
      if (done) {
        for (Index r = top + 1; r < rows && done; ++r)
          for (Index c = top + 1; c < cols; ++c)
            if (a(r, c) % a(top, top) != 0) {
              for (Index cc = top; cc < cols; ++cc) a(top, cc) += a(r, cc);
              done = false;
              break;
            }
      }
    }
    if (a(top, top) < 0) a(top, top) = -a(top, top);
    divisors.push_back(a(top, top));
    ++top;
  }
  return divisors;
}

Index integer_rank(const ZMat& a) {
  QMat q(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) q(i, j) = BigRational(a(i, j));
  return rational_eliminate(q);
}

std::optional<std::vector<BigInt>> solve_integer(const ZMat& a, const std::vector<BigInt>& b) {
  if (static_cast<Index>(b.size()) != a.rows()) throw std::invalid_argument("solve_integer: size mismatch");
  QMat aug(a.rows(), a.cols() + 1);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) aug(i, j) = BigRational(a(i, j));
    aug(i, a.cols()) = BigRational(b[i]);
  }
  rational_eliminate(aug);
  std::vector<BigRational> x(a.cols());
  std::vector<bool> seen(a.cols(), false);
  for (Index r = 0; r < aug.rows(); ++r) {
    Index lead = -1;
    for (Index c = 0; c < a.cols(); ++c)
      if (aug(r, c) != 0) { lead = c; break; }
    if (lead < 0) {
      if (aug(r, a.cols()) != 0) return std::nullopt;  // inconsistent
      continue;
    }
    // Full column rank is expected; a free variable means the caller built a
    // degenerate basis.
    for (Index c = lead + 1; c < a.cols(); ++c)
      if (aug(r, c) != 0) return std::nullopt;
    x[lead] = aug(r, a.cols()) / aug(r, lead);
    seen[lead] = true;
  }
  for (Index c = 0; c < a.cols(); ++c)
    if (!seen[c]) return std::nullopt;
  std::vector<BigInt> out(a.cols());
  for (Index c = 0; c < a.cols(); ++c) {
    if (denominator(x[c]) != 1) return std::nullopt;
    out[c] = numerator(x[c]);
  }
  return out;
}

}  // namespace tc
