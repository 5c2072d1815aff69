#pragma once

#include "gtbound/parallel.hpp"
#include "gtbound/power_series.hpp"

#include <Eigen/Dense>
#include "json.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gtbound {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Base PSD tolerance; the effective threshold is kPsdTol * max(1, k).
inline constexpr double kPsdTol = 1e-8;

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;  // psd iff min_eigenvalue >= -threshold
};

/// Eigenvalue test on the Hermitian part. Throws DomainError when the input
/// is not square or not Hermitian within 1e-12.
template <typename Scalar>
PsdCheck is_psd(const Matrix<Scalar>& a, double tol = kPsdTol);

/// Unit-diagonal Hermitian PSD matrix, validated on construction.
template <typename Scalar>
class CorrelationMatrix {
public:
  explicit CorrelationMatrix(Matrix<Scalar> entries, double tol = kPsdTol);

  const Matrix<Scalar>& matrix() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }
  double tolerance() const noexcept { return tol_; }
  double min_eigenvalue() const noexcept { return min_eig_; }

private:
  Matrix<Scalar> entries_;
  double tol_;
  double min_eig_;
};

/// Validation without throwing: unit diagonal within 1e-12, |entries| <= 1,
/// and PSD within the size-scaled tolerance.
struct CorrelationCheck {
  PsdCheck psd;
  double max_diag_deviation = 0.0;
  double max_abs_entry = 0.0;
  bool valid() const noexcept {
    return psd.psd && max_diag_deviation <= 1e-12 && max_abs_entry <= 1.0 + 1e-12;
  }
};

template <typename Scalar>
CorrelationCheck check_correlation(const Matrix<Scalar>& a, double tol = kPsdTol);

template <typename Scalar>
Matrix<Scalar> schur_product(const Matrix<Scalar>& a, const Matrix<Scalar>& b);

template <typename Scalar>
Matrix<Scalar> entrywise_apply(const std::function<Scalar(Scalar)>& f, const Matrix<Scalar>& a) {
  Matrix<Scalar> out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = f(a(i, j));
  }
  return out;
}

/// Series-backed map; every entry must lie in [-1, 1].
RealMatrix entrywise_apply(const FloatSeries& f, const RealMatrix& a);

/// Gram matrix of k independent uniform unit vectors in R^rank.
RealMatrix random_correlation(int k, int rank, std::uint64_t seed);
/// Same with unit vectors in C^rank.
ComplexMatrix random_correlation_complex(int k, int rank, std::uint64_t seed);

/// J(A) = 1/2 [[0, A], [A*, 0]].
template <typename Scalar>
Matrix<Scalar> block_j(const Matrix<Scalar>& a);

/// tr(B* Sigma).
template <typename Scalar>
Scalar trace_pair(const Matrix<Scalar>& b, const Matrix<Scalar>& sigma);

enum class NormMode { exact, heuristic };

/// Maximum exact enumeration size (m + n) for the real infinity-to-one norm.
inline constexpr int kMaxExactNormSize = 22;

struct Inf1Norm {
  double value = 0.0;
  bool exact = false;  // false: a lower bound from local search
  Eigen::VectorXcd p;  // row witness (signs or phases)
  Eigen::VectorXcd q;  // column witness
};

/// ||A||_{inf,1} = max |sum a_ij p_i q_j| over |p_i| = |q_j| = 1.
Inf1Norm norm_inf1(const RealMatrix& a, NormMode mode = NormMode::exact,
                   std::uint64_t seed = 0);
Inf1Norm norm_inf1(const ComplexMatrix& a, std::uint64_t seed = 0);

struct CcpViolation {
  RealMatrix sigma;
  RealMatrix image;
  double min_eigenvalue = 0.0;
};

struct CcpReport {
  std::vector<int> sizes;
  int trials = 0;
  std::uint64_t seed = 0;
  long instances = 0;
  long violations = 0;
  double worst_min_eigenvalue = 0.0;
  std::optional<CcpViolation> worst;  // set when some instance violates
};

/// Applies f entrywise to `trials` random correlation matrices per size.
/// Trial t of size k uses rank 1 + (t mod k) and a seed derived from
/// (seed, k, t), so the report is independent of the thread count.
CcpReport ccp_probe(const std::function<double(double)>& f, const std::vector<int>& sizes,
                    int trials, std::uint64_t seed, Exec exec = Exec::parallel);

struct SchurClosureReport {
  long pairs = 0;
  double worst_min_eigenvalue = 0.0;
  long failures = 0;
};

/// Schur products of random correlation pairs with sizes in [min_size, max_size].
SchurClosureReport schur_closure_probe(int pairs, int min_size, int max_size,
                                       std::uint64_t seed, Exec exec = Exec::parallel);

struct BlockTransform {
  RealMatrix matrix;             // [[h(f(rA)), rZ], [rZ^T, h(f(rB))]]
  RealMatrix composed;           // h[[f(rA), g(rZ)], [g(rZ)^T, f(rB)]]
  double composition_gap = 0.0;  // max |matrix - composed|
  CorrelationCheck validity;
};

/// Block construction behind the workflow bound. sigma is 2k x 2k with
/// blocks A, Z, B; r in (0, 1].
BlockTransform block_transform(const RealMatrix& sigma, const std::function<double(double)>& h,
                               const std::function<double(double)>& f,
                               const std::function<double(double)>& g, double r);

struct TraceRatioReport {
  int instances = 0;
  double max_ratio = 0.0;
  RealMatrix argmax_a;
  RealMatrix argmax_sigma;
};

/// For random A (m + n <= max_dim) finds a correlation matrix Sigma by
/// alternating maximisation of tr(J(A) Sigma) over Gram vectors, and records
/// |tr(J(A) Sigma)| / ||A||_{inf,1}.
TraceRatioReport trace_ratio_probe(int instances, int max_dim, std::uint64_t seed,
                                   Exec exec = Exec::parallel);

/// Row-major JSON; complex entries as [re, im].
nlohmann::json matrix_to_json(const RealMatrix& a);
nlohmann::json matrix_to_json(const ComplexMatrix& a);
RealMatrix real_matrix_from_json(const nlohmann::json& j);
ComplexMatrix complex_matrix_from_json(const nlohmann::json& j);
std::string matrix_to_csv(const RealMatrix& a);
RealMatrix matrix_from_csv(const std::string& text);

}  // namespace gtbound
