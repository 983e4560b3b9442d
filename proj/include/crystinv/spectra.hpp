#pragma once

// Hermitian eigendecomposition by cyclic complex Jacobi, lexicographic (i, g)
// labels, pseudoinverse square roots, cut-tie detection and Reynolds averaging.

#include <cstddef>
#include <span>
#include <vector>

#include "crystinv/linalg.hpp"

namespace crystinv {

struct Spectrum {
  std::vector<double> values;  // non-increasing
  CMatrix vectors;             // column k belongs to values[k]
  int sweeps = 0;
  double off_norm = 0.0;  // off-diagonal Frobenius norm at termination
};

/// Eigenpairs of a Hermitian matrix. The input is symmetrised first; a defect
/// above 1e-10 ||A||_F throws NotHermitian. With require_psd, eigenvalues below
/// -1e-10 ||A||_F throw NotPsd and smaller negatives are clamped to zero.
/// Each eigenvector is phased so its largest-modulus entry is real positive.
Spectrum eig_hermitian(const CMatrix& a, bool require_psd = false);

struct Label {
  std::size_t i = 0;  // data index, zero-based
  std::size_t g = 0;  // group element index
  friend bool operator==(const Label&, const Label&) = default;
};

struct LabeledSpectrum {
  Spectrum spectrum;
  std::vector<Label> labels;  // position p = i |G| + g
};

LabeledSpectrum label_lex(Spectrum spectrum, std::size_t m, std::size_t group_order);

struct PsdFactor {
  CMatrix matrix;
  std::size_t rank = 0;
  double threshold = 0.0;
};

/// (A^+)^{1/2}. Eigenvalues above eps_rank * max(lambda_max, floor) are
/// inverted, the rest are dropped. floor lets a caller impose a global scale.
PsdFactor pinv_sqrt(const CMatrix& gram, double eps_rank, double floor = 0.0);

struct TieWindow {
  bool tie = false;
  std::size_t begin = 0;  // tied multiplet is [begin, end)
  std::size_t end = 0;
};

/// Tie across the cut between positions cut-1 and cut, at tolerance tau * scale.
/// The window is grown in both directions with the same criterion.
TieWindow detect_cut_tie(std::span<const double> values, std::size_t cut, double tau, double scale);

/// Projection onto the eigenvectors of (1/|H|) sum_h h P h^* with eigenvalue
/// above 1/2. Throws RankCollapse when that rank differs from rank(P).
CMatrix reynolds_symmetrize(const CMatrix& projection, std::span<const CMatrix> unitaries);

/// First `count` eigenvectors as columns.
CMatrix leading_vectors(const Spectrum& spectrum, std::size_t count);

/// Orthonormal basis for the range of a Hermitian projection.
CMatrix projection_basis(const CMatrix& projection);

}  // namespace crystinv
