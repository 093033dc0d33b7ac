#include "irma/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "irma/errors.hpp"

namespace irma::linalg {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kOffDiagTarget = 1e-12;
constexpr double kConvergenceFloor = 1e-9;
constexpr int kMaxSweeps = 100;
constexpr double kUnitTol = 1e-10;

double max_asymmetry(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

double max_offdiag(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q)
      worst = std::max(worst, std::abs(a(p, q)));
  return worst;
}

// Flips each column so its largest-magnitude component is non-negative;
// ties broken by the lowest row index.
void fix_signs(Matrix& v) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < v.cols(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double a = std::abs(v(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (v(arg, j) < 0.0)
      for (std::size_t i = 0; i < n; ++i) v(i, j) = -v(i, j);
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](double x) { return std::isfinite(x); });
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : entries_) s += x * x;
  return std::sqrt(s);
}

Vector SpectralDecomposition::eigenvector(std::size_t j) const {
  Vector v(eigenvectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, j);
  return v;
}

SpectralDecomposition sym_eig(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ShapeMismatch("sym_eig requires a square matrix, got " +
                        std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
  if (double asym = max_asymmetry(m); asym > kSymmetryTol)
    throw NotSymmetric("matrix asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");

  const std::size_t n = m.rows();
  Matrix a = m;
  // Symmetrize exactly so both triangles agree during the sweeps.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

  Matrix v = Matrix::identity(n);

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (max_offdiag(a) < kOffDiagTarget) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that zeroes a(p,q).
        const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;  // avoid overflow in theta^2
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;

        a(p, p) -= h;
        a(q, q) += h;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = a(p, i) = aip - s * (aiq + tau * aip);
          a(i, q) = a(q, i) = aiq + s * (aip - tau * aiq);
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
  }
  if (sweep == kMaxSweeps && max_offdiag(a) > kConvergenceFloor)
    throw NoConvergence("Jacobi sweeps exhausted with off-diagonal residual " +
                        std::to_string(max_offdiag(a)));

  // Sort descending; ties keep the Jacobi output order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return a(i, i) > a(j, j);
                   });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, j) = v(i, order[j]);
  }
  fix_signs(out.eigenvectors);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatch("matmul: " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " times " +
                        std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Vector matvec(const Matrix& m, const Vector& x) {
  if (m.cols() != x.size())
    throw ShapeMismatch("matvec: matrix has " + std::to_string(m.cols()) +
                        " columns, vector has " + std::to_string(x.size()));
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* mi = m.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += mi[j] * x[j];
    y[i] = s;
  }
  return y;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw ShapeMismatch("dot: sizes " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

Matrix outer_deflation(const Matrix& m, const std::vector<Vector>& directions) {
  Matrix result = m;
  for (const Vector& v : directions) {
    if (v.size() != m.cols())
      throw ShapeMismatch("outer_deflation: direction of size " +
                          std::to_string(v.size()) + " against " +
                          std::to_string(m.cols()) + " columns");
    if (std::abs(norm(v) - 1.0) > kUnitTol)
      throw NonUnitDirection("direction has norm " + std::to_string(norm(v)));
  }
  for (const Vector& v : directions) {
    // result -= (result v) v^T
    for (std::size_t i = 0; i < result.rows(); ++i) {
      double* ri = result.row(i);
      double proj = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) proj += ri[j] * v[j];
      for (std::size_t j = 0; j < v.size(); ++j) ri[j] -= proj * v[j];
    }
  }
  return result;
}

}  // namespace irma::linalg
