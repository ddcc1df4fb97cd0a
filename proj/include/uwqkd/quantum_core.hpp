#pragma once

// Small dense complex linear algebra for one or two polarization qubits.
//
// Two-photon operators act on the ordered basis {HH, HV, VH, VV}; photon A is
// always the left tensor factor, so index = 2 * a + b with H = 0 and V = 1.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace uwqkd {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kCompletenessTol = 1e-12;
// Smallest eigenvalue a state may have and still count as positive semidefinite.
inline constexpr double kPsdFloor = -1e-10;

// Basis indices of the two-photon space.
enum BasisIndex : std::size_t { kHH = 0, kHV = 1, kVH = 2, kVV = 3 };

class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  // Zero matrix. rows and cols must each be 2 or 4.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Row-major entries; throws DimensionError on a size mismatch and DomainError
  // on non-finite entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::initializer_list<cplx> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * kMaxDim + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * kMaxDim + c]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  bool is_finite() const;
  bool is_hermitian(double tol = kHermitianTol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::array<cplx, kMaxDim * kMaxDim> data_{};
};

// Largest absolute entrywise difference; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Kronecker product of two single-photon operators; `a` acts on photon A.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi on the
// real symmetric embedding [[Re, -Im], [Im, Re]]).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

// Two-photon polarization state. Construction checks Hermiticity, unit trace
// and positive semidefiniteness.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& matrix() const { return mat_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

  static DensityMatrix maximally_mixed();

 private:
  ComplexMatrix mat_;
};

// Quantum channel in operator-sum form. Construction checks that all operators
// share one square dimension and that sum_j K_j^dagger K_j = I to kCompletenessTol.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  std::size_t dim() const { return ops_.front().rows(); }

  // max |sum_j K_j^dagger K_j - I|
  static double completeness_deviation(const std::vector<ComplexMatrix>& operators);

 private:
  std::vector<ComplexMatrix> ops_;
};

// |Phi_beta><Phi_beta| with |Phi_beta> = cos(beta)|HH> + sin(beta)|VV>, 0 <= beta <= pi/4.
DensityMatrix initial_state(double beta);

// sum_j K_j m K_j^dagger for any matching dimension; no state validation.
ComplexMatrix apply_kraus(const ComplexMatrix& m, const KrausSet& channel);

// Two-photon channel application. The result is checked as a DensityMatrix;
// a violation is reported as ChannelValidityError.
DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& channel);

// Tr(rho * obs) for a Hermitian two-photon observable.
double expectation(const DensityMatrix& rho, const ComplexMatrix& obs);

}  // namespace uwqkd
