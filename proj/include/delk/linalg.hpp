#pragma once

#include <complex>
#include <vector>

namespace delk {

/// Dense complex matrix, row-major. Desk-scale sizes only.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
  int n() const { return n_; }
  std::complex<double>& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  const std::complex<double>& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

 private:
  int n_ = 0;
  std::vector<std::complex<double>> a_;
};

/// Determinant via partially pivoted LU. Empty matrix -> 1.
std::complex<double> det_lu(CMat a);

/// Eigenvalues of a Hermitian matrix in ascending order, computed by Jacobi
/// sweeps on the real symmetric embedding [[Re, -Im], [Im, Re]] (each
/// eigenvalue of the input appears twice in the embedding).
std::vector<double> hermitian_eigenvalues(const CMat& a);

/// Pfaffian of a real antisymmetric matrix by Parlett-Reid elimination with
/// partial pivoting. Odd dimension -> 0, empty -> 1. Destroys its argument.
double pfaffian_inplace(std::vector<double>& m, int n);

}  // namespace delk
