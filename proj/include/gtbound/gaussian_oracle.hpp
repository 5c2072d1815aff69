#pragma once

#include "gtbound/parallel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace gtbound {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(n)
  long n_samples = 0;
  std::uint64_t seed = 0;

  /// (mean - reference) / std_error; 0 when both the error and the gap vanish.
  double z_score(double reference) const;
  /// |mean - reference| <= k * std_error, with a 1e-12 floor for exact cases.
  bool agrees(double reference, double k = 4.0) const;
};

struct ComplexMcEstimate {
  McEstimate re;
  McEstimate im;
  std::complex<double> mean() const { return {re.mean, im.mean}; }
  bool agrees(std::complex<double> reference, double k = 4.0) const {
    return re.agrees(reference.real(), k) && im.agrees(reference.imag(), k);
  }
};

/// Samples per independently seeded chunk; fixes the reduction order.
inline constexpr long kMcChunk = 1L << 16;

/// Draws (X, Y) with X, X' iid N(0, I_d) and Y = rho X + sqrt(1 - rho^2) X'.
class CorrelatedPairSampler {
public:
  CorrelatedPairSampler(int d, double rho);
  void draw(std::mt19937_64& rng, Eigen::Ref<Eigen::VectorXd> x,
            Eigen::Ref<Eigen::VectorXd> y);
  int dim() const noexcept { return d_; }

private:
  int d_;
  double rho_;
  double comp_;
  std::normal_distribution<double> normal_;
};

struct CorrelatedSample {
  Eigen::MatrixXd x;  // n x d
  Eigen::MatrixXd y;  // n x d
};

/// Materialised pairs, chunk-seeded exactly like the estimators.
CorrelatedSample sample_corr_pairs(int d, double rho, long n, std::uint64_t seed);

/// E[sign(X_1) sign(Y_1)]
McEstimate mc_sign_identity(double rho, long n, std::uint64_t seed, Exec exec = Exec::parallel);
/// E[b_p(X_1) b_p(Y_1)]
McEstimate mc_threshold(double p, double rho, long n, std::uint64_t seed,
                        Exec exec = Exec::parallel);
/// E[<X/|X|, Y/|Y|>^m]
McEstimate mc_moment(int d, int m, double rho, long n, std::uint64_t seed,
                     Exec exec = Exec::parallel);
/// P(X_1 <= 0, Y_1 <= 0)
McEstimate mc_orthant(double rho, long n, std::uint64_t seed, Exec exec = Exec::parallel);
/// E[sign(Z) conj(sign(W))] for standard proper complex normals with
/// E[Z conj(W)] = z, sign(w) = w / |w|.
ComplexMcEstimate mc_haagerup(std::complex<double> z, long n, std::uint64_t seed,
                              Exec exec = Exec::parallel);

}  // namespace gtbound
