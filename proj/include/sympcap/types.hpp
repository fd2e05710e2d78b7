#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace sympcap {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using ComplexMatrix = MatrixX<std::complex<double>>;
using ComplexVector = VectorX<std::complex<double>>;

/// Input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iteration failed to converge within its cap.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Phase-space vectors use the block ordering (x_1,...,x_n, p_1,...,p_n).
inline Eigen::Index mode_count(Eigen::Index dim, const char* what) {
  if (dim <= 0 || dim % 2 != 0)
    throw ValidationError(std::string(what) + ": dimension must be even and positive, got " +
                          std::to_string(dim));
  return dim / 2;
}

inline void require_square_even(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw ValidationError(std::string(what) + ": matrix must be square");
  mode_count(a.rows(), what);
}

inline void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
}

}  // namespace sympcap
