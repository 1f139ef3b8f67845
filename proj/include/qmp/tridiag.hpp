#pragma once

#include <vector>

namespace qmp {

// Symmetric tridiagonal matrix: diag has n entries, off has n-1 (off[k] couples k and k+1).
struct TridiagEigen {
  std::vector<double> values;            // ascending
  std::vector<double> first_components;  // first entry of each unit eigenvector, same order
};

// Implicit-shift QL; EigensolveFailure when an eigenvalue needs more than 60 sweeps.
std::vector<double> tridiag_eigenvalues_ql(std::vector<double> diag, std::vector<double> off);
TridiagEigen tridiag_eigen_first(std::vector<double> diag, std::vector<double> off);
// Sturm-sequence bisection; slower, never fails to converge.
std::vector<double> tridiag_eigenvalues_bisection(const std::vector<double>& diag,
                                                  const std::vector<double>& off);
// QL with bisection fallback.
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& off);

}  // namespace qmp
