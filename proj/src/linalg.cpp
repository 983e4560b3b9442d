#include "crystinv/linalg.hpp"

#include <cassert>
#include <cmath>

#include "crystinv/error.hpp"

namespace crystinv {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::SizeMismatch, "matrix shapes differ");
}

}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_columns(std::size_t rows, std::span<const CVector> columns) {
  CMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorKind::SizeMismatch, "column length differs from row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix CMatrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw Error(ErrorKind::SizeMismatch, "column range out of bounds");
  CMatrix out(rows_, count);
  for (std::size_t c = 0; c < count; ++c)
    for (std::size_t r = 0; r < rows_; ++r) out(r, c) = (*this)(r, first + c);
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::SizeMismatch, "inner dimensions differ in product");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto oc = out.col(c);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx bkc = b(k, c);
      if (bkc == cplx{}) continue;
      auto ak = a.col(k);
      for (std::size_t r = 0; r < a.rows(); ++r) oc[r] += ak[r] * bkc;
    }
  }
  return out;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CVector multiply(const CMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::SizeMismatch, "matrix-vector size mismatch");
  CVector out(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    auto ak = a.col(k);
    for (std::size_t r = 0; r < a.rows(); ++r) out[r] += ak[r] * x[k];
  }
  return out;
}

CVector multiply_adjoint(const CMatrix& a, std::span<const cplx> x) {
  if (a.rows() != x.size()) throw Error(ErrorKind::SizeMismatch, "adjoint matrix-vector size mismatch");
  CVector out(a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    auto ak = a.col(k);
    cplx s{};
    for (std::size_t r = 0; r < a.rows(); ++r) s += std::conj(ak[r]) * x[r];
    out[k] = s;
  }
  return out;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b);
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::norm(da[i] - db[i]);
  return std::sqrt(s);
}

double hermitian_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::SizeMismatch, "hermitian_defect needs a square matrix");
  double s = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) s += std::norm(a(r, c) - std::conj(a(c, r)));
  return std::sqrt(s);
}

double trace_real(const CMatrix& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i).real();
  return t;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

CMatrix projector(const CMatrix& basis, std::size_t dim) {
  CMatrix p(basis.rows(), basis.rows());
  for (std::size_t k = 0; k < dim; ++k) {
    auto v = basis.col(k);
    for (std::size_t c = 0; c < basis.rows(); ++c) {
      const cplx vc = std::conj(v[c]);
      for (std::size_t r = 0; r < basis.rows(); ++r) p(r, c) += v[r] * vc;
    }
  }
  return p;
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.map.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.map[i] = i;
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw Error(ErrorKind::SizeMismatch, "permutation sizes differ");
  Permutation out;
  out.map.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.map[i] = other.map[map[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.map.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.map[map[i]] = i;
  return out;
}

CVector Permutation::apply(std::span<const cplx> in) const {
  if (in.size() != size()) throw Error(ErrorKind::SizeMismatch, "permutation applied to wrong length");
  CVector out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = in[map[i]];
  return out;
}

CMatrix Permutation::matrix() const {
  CMatrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i) m(i, map[i]) = 1.0;
  return m;
}

CMatrix Permutation::apply_rows(const CMatrix& m) const {
  if (m.rows() != size()) throw Error(ErrorKind::SizeMismatch, "permutation applied to wrong row count");
  CMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t i = 0; i < size(); ++i) out(i, c) = m(map[i], c);
  return out;
}

}  // namespace crystinv
