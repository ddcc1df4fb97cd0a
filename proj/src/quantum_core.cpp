#include "uwqkd/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uwqkd/errors.hpp"

namespace uwqkd {

namespace {

void check_dim(std::size_t n) {
  if (n != 2 && n != 4) {
    throw DimensionError("matrix dimension must be 2 or 4, got " + std::to_string(n));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dim(rows);
  check_dim(cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries)
    : ComplexMatrix(rows, cols) {
  if (entries.size() != rows * cols) {
    throw DimensionError("expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(entries.size()));
  }
  auto it = entries.begin();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      (*this)(r, c) = *it++;
    }
  }
  if (!is_finite()) {
    throw DomainError("matrix entries must be finite");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  std::size_t i = 0;
  for (const cplx& d : diag) {
    m(i, i) = d;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_finite() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const cplx& z = (*this)(r, c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return is_square() && max_abs_diff(*this, adjoint()) <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) += other(r, c);
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) -= other(r, c);
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) *= scalar;
  }
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("operator*: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  }
  return worst;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, 2, {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw DimensionError("tensor_product expects two 2x2 operators");
  }
  ComplexMatrix out(4, 4);
  for (std::size_t ar = 0; ar < 2; ++ar) {
    for (std::size_t ac = 0; ac < 2; ++ac) {
      for (std::size_t br = 0; br < 2; ++br) {
        for (std::size_t bc = 0; bc < 2; ++bc) {
          out(2 * ar + br, 2 * ac + bc) = a(ar, ac) * b(br, bc);
        }
      }
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eigenvalues expects a square matrix");
  const std::size_t n = m.rows();
  const std::size_t dim = 2 * n;
  std::array<std::array<double, 2 * ComplexMatrix::kMaxDim>, 2 * ComplexMatrix::kMaxDim> s{};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      // Symmetrize so that round-off in the input does not leak into the rotation.
      const cplx z = 0.5 * (m(r, c) + std::conj(m(c, r)));
      s[r][c] = z.real();
      s[r + n][c + n] = z.real();
      s[r][c + n] = -z.imag();
      s[r + n][c] = z.imag();
    }
  }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) off += s[p][q] * s[p][q];
    }
    if (off < 1e-32) break;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        if (std::abs(s[p][q]) < 1e-300) continue;
        const double theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < dim; ++k) {
          const double skp = s[k][p];
          const double skq = s[k][q];
          s[k][p] = c * skp - sn * skq;
          s[k][q] = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double spk = s[p][k];
          const double sqk = s[q][k];
          s[p][k] = c * spk - sn * sqk;
          s[q][k] = sn * spk + c * sqk;
        }
      }
    }
  }

  // Every eigenvalue of the embedding appears twice.
  std::vector<double> diag(dim);
  for (std::size_t i = 0; i < dim; ++i) diag[i] = s[i][i];
  std::sort(diag.begin(), diag.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(mat) {
  if (mat_.rows() != 4 || mat_.cols() != 4) {
    throw DimensionError("density matrix must be 4x4");
  }
  if (!mat_.is_finite()) throw DomainError("density matrix has non-finite entries");
  if (!mat_.is_hermitian(kHermitianTol)) throw DomainError("density matrix is not Hermitian");
  if (std::abs(mat_.trace() - 1.0) > kTraceTol) throw DomainError("density matrix trace differs from 1");
  if (min_eigenvalue(mat_) < kPsdFloor) throw DomainError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(ComplexMatrix::identity(4) * 0.25); }

KrausSet::KrausSet(std::vector<ComplexMatrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw ChannelValidityError("Kraus set is empty");
  const std::size_t n = ops_.front().rows();
  for (const ComplexMatrix& k : ops_) {
    if (!k.is_square() || k.rows() != n) {
      throw DimensionError("Kraus operators must share one square dimension");
    }
  }
  const double dev = completeness_deviation(ops_);
  if (!(dev <= kCompletenessTol)) {
    throw ChannelValidityError("Kraus set violates completeness by " + std::to_string(dev));
  }
}

double KrausSet::completeness_deviation(const std::vector<ComplexMatrix>& operators) {
  const std::size_t n = operators.front().rows();
  ComplexMatrix sum(n, n);
  for (const ComplexMatrix& k : operators) sum += k.adjoint() * k;
  return max_abs_diff(sum, ComplexMatrix::identity(n));
}

DensityMatrix initial_state(double beta) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi / 4.0)) {
    throw DomainError("entanglement angle must lie in [0, pi/4]");
  }
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  ComplexMatrix m(4, 4);
  m(kHH, kHH) = c * c;
  m(kVV, kVV) = s * s;
  m(kHH, kVV) = c * s;
  m(kVV, kHH) = c * s;
  return DensityMatrix(m);
}

ComplexMatrix apply_kraus(const ComplexMatrix& m, const KrausSet& channel) {
  if (m.rows() != channel.dim() || m.cols() != channel.dim()) {
    throw DimensionError("state and channel dimensions differ");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (const ComplexMatrix& k : channel.operators()) out += k * m * k.adjoint();
  return out;
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& channel) {
  if (channel.dim() != 4) throw DimensionError("two-photon channel must be 4x4");
  ComplexMatrix out = apply_kraus(rho.matrix(), channel);
  try {
    return DensityMatrix(out);
  } catch (const DomainError& e) {
    throw ChannelValidityError(std::string("channel output is not a valid state: ") + e.what());
  }
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
  if (obs.rows() != 4 || obs.cols() != 4) throw DimensionError("observable must be 4x4");
  if (!obs.is_hermitian(kHermitianTol)) throw DomainError("observable is not Hermitian");
  return (rho.matrix() * obs).trace().real();
}

}  // namespace uwqkd
