#pragma once

// Small dense complex matrices. Column-major, value semantics. Sizes here are
// at most a few hundred, so nothing is blocked or vectorised by hand.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace crystinv {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix from_columns(std::size_t rows, std::span<const CVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[c * rows_ + r]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * rows_ + r]; }

  std::span<cplx> col(std::size_t c) noexcept { return {data_.data() + c * rows_, rows_}; }
  std::span<const cplx> col(std::size_t c) const noexcept { return {data_.data() + c * rows_, rows_}; }

  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix columns(std::size_t first, std::size_t count) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);

CVector multiply(const CMatrix& a, std::span<const cplx> x);
/// a^* x without forming the adjoint.
CVector multiply_adjoint(const CMatrix& a, std::span<const cplx> x);

double frobenius_norm(const CMatrix& a);
double frobenius_distance(const CMatrix& a, const CMatrix& b);
/// ||a - a^*||_F
double hermitian_defect(const CMatrix& a);
double trace_real(const CMatrix& a);

double norm2(std::span<const cplx> v);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);  // <a, b> = sum a_i conj(b_i)

/// Orthogonal projection onto the span of the columns of an orthonormal basis.
CMatrix projector(const CMatrix& orthonormal_basis, std::size_t dim);

/// Permutation acting on coefficient vectors by out[i] = in[map[i]].
struct Permutation {
  std::vector<std::size_t> map;

  std::size_t size() const noexcept { return map.size(); }
  static Permutation identity(std::size_t n);

  /// (this * other)(a) = this(other(a)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  CVector apply(std::span<const cplx> in) const;
  /// Matrix P with P(i, map[i]) = 1.
  CMatrix matrix() const;
  /// Rows of m permuted: returns P * m.
  CMatrix apply_rows(const CMatrix& m) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

}  // namespace crystinv
