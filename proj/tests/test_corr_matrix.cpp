#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gtbound/corr_matrix.hpp"
#include "gtbound/error.hpp"
#include "gtbound/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gtbound;

namespace {

constexpr double kPi = std::numbers::pi;

// Rank-2 correlation matrix whose sin(pi/2 .) image is indefinite.
RealMatrix sin_violation_fixture() {
  RealMatrix s(3, 3);
  s << 1.0, -0.45487068681262205, 0.6601568979777932,  //
      -0.45487068681262205, 1.0, 0.36863641269915537,  //
      0.6601568979777932, 0.36863641269915537, 1.0;
  return s;
}

// Brute force over both sign vectors.
double norm_by_both_signs(const RealMatrix& a) {
  double best = 0.0;
  for (unsigned p = 0; p < (1u << a.rows()); ++p) {
    for (unsigned q = 0; q < (1u << a.cols()); ++q) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          double si = (p >> i) & 1u ? -1.0 : 1.0, sj = (q >> j) & 1u ? -1.0 : 1.0;
          s += a(i, j) * si * sj;
        }
      }
      best = std::max(best, std::abs(s));
    }
  }
  return best;
}

double arcsin_h(double x) { return 2.0 / kPi * std::asin(std::clamp(x, -1.0, 1.0)); }

}  // namespace

TEST_CASE("PSD checks") {
  CHECK(is_psd<double>(RealMatrix::Identity(4, 4)).psd);
  RealMatrix bad(2, 2);
  bad << 1, 2, 2, 1;
  auto c = is_psd<double>(bad);
  CHECK_FALSE(c.psd);
  CHECK(c.min_eigenvalue == doctest::Approx(-1.0));
  RealMatrix asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(is_psd<double>(asym), DomainError);
  CHECK_THROWS_AS(is_psd<double>(RealMatrix(2, 3)), DomainError);
  CHECK(is_psd<double>(random_correlation(7, 3, 5)).psd);
  CHECK(is_psd<std::complex<double>>(random_correlation_complex(6, 2, 5)).psd);
}

TEST_CASE("correlation matrix type") {
  CHECK_NOTHROW(CorrelationMatrix<double>(random_correlation(5, 2, 1)));
  RealMatrix off_diag = RealMatrix::Identity(2, 2) * 1.1;
  CHECK_THROWS_AS(CorrelationMatrix<double>{off_diag}, DomainError);
  CHECK_FALSE(check_correlation<double>(off_diag).valid());
}

TEST_CASE("random correlation matrices") {
  auto r1 = random_correlation(6, 1, 9);
  for (Eigen::Index i = 0; i < 6; ++i) {
    CHECK(r1(i, i) == 1.0);
    for (Eigen::Index j = 0; j < 6; ++j) CHECK(std::abs(std::abs(r1(i, j)) - 1.0) < 1e-15);
  }
  Eigen::FullPivLU<RealMatrix> lu(r1);
  lu.setThreshold(1e-10);
  CHECK(lu.rank() == 1);
  CHECK(random_correlation(3, 3, 11) == random_correlation(3, 3, 11));
  CHECK(random_correlation(3, 3, 11) != random_correlation(3, 3, 12));
  auto cz = random_correlation_complex(4, 2, 3);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(cz(i, i) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("Schur products") {
  auto a = random_correlation(5, 2, 21);
  CHECK(schur_product<double>(a, RealMatrix::Ones(5, 5)) == a);
  RealMatrix diag = schur_product<double>(RealMatrix::Identity(5, 5), a);
  CHECK(diag == RealMatrix(a.diagonal().asDiagonal()));
  CHECK_THROWS_AS(schur_product<double>(a, RealMatrix::Ones(4, 5)), DomainError);
  auto rep = schur_closure_probe(500, 2, 10, 3);
  CHECK(rep.pairs == 500);
  CHECK(rep.failures == 0);
  CHECK(rep.worst_min_eigenvalue >= -kPsdTol * 10);
}

TEST_CASE("entrywise maps") {
  auto a = random_correlation(6, 3, 2);
  CHECK(entrywise_apply<double>([](double x) { return x; }, a) == a);
  CHECK(check_correlation<double>(entrywise_apply<double>(arcsin_h, a)).valid());

  const auto fixture = sin_violation_fixture();
  CHECK(check_correlation<double>(fixture).valid());
  auto image = entrywise_apply<double>([](double x) { return std::sin(kPi / 2.0 * x); }, fixture);
  auto psd = is_psd<double>(image);
  CHECK_FALSE(psd.psd);
  CHECK(psd.min_eigenvalue < -0.38);

  // A series with non-negative coefficients summing to 1 preserves correlation matrices.
  FloatSeries series({0.1, 0.3, 0.0, 0.4, 0.2});
  for (int t = 0; t < 200; ++t) {
    auto s = random_correlation(2 + t % 7, 1 + t % 4, 500 + t);
    CHECK(is_psd<double>(entrywise_apply(series, s)).psd);
  }
  RealMatrix outside = RealMatrix::Constant(2, 2, 1.5);
  CHECK_THROWS_AS(entrywise_apply(series, outside), DomainError);
}

TEST_CASE("CCP probes") {
  std::vector<int> sizes{2, 3, 4, 5, 6, 7, 8};
  auto arcsin = ccp_probe(arcsin_h, sizes, 200, 1);
  CHECK(arcsin.instances == 1400);
  CHECK(arcsin.violations == 0);
  CHECK_FALSE(arcsin.worst);
  CHECK(ccp_probe([](double x) { return x; }, sizes, 50, 2).violations == 0);
  auto sin = ccp_probe([](double x) { return std::sin(kPi / 2.0 * x); }, sizes, 200, 1);
  CHECK(sin.violations > 0);
  REQUIRE(sin.worst);
  CHECK(sin.worst->min_eigenvalue < -kPsdTol);
  CHECK(sin.worst_min_eigenvalue == sin.worst->min_eigenvalue);

  auto serial = ccp_probe([](double x) { return std::sin(kPi / 2.0 * x); }, sizes, 200, 1,
                          Exec::serial);
  CHECK(serial.violations == sin.violations);
  CHECK(serial.worst_min_eigenvalue == sin.worst_min_eigenvalue);
}

TEST_CASE("infinity-to-one norm") {
  CHECK(norm_inf1(RealMatrix(RealMatrix::Ones(1, 1))).value == 1.0);
  CHECK(norm_inf1(RealMatrix(RealMatrix::Identity(2, 2))).value == 2.0);
  RealMatrix h(2, 2);
  h << 1, 1, 1, -1;
  CHECK(norm_inf1(h).value == 2.0);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 30; ++t) {
    RealMatrix a(1 + t % 5, 1 + (t / 5) % 6);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
    auto exact = norm_inf1(a);
    CHECK(exact.exact);
    CHECK(exact.value == doctest::Approx(norm_by_both_signs(a)).epsilon(1e-12));
    // The witness attains the value.
    double s = (exact.p.real().transpose() * a * exact.q.real())(0, 0);
    CHECK(std::abs(s) == doctest::Approx(exact.value).epsilon(1e-12));
    auto heur = norm_inf1(a, NormMode::heuristic, 8);
    CHECK_FALSE(heur.exact);
    CHECK(heur.value <= exact.value + 1e-12);
    CHECK(heur.value >= 0.999 * exact.value);
    // Complex norm is at least the real one and at most sqrt(2) times it.
    auto cz = norm_inf1(ComplexMatrix(a.cast<std::complex<double>>()), 8);
    CHECK(cz.value >= heur.value - 1e-9);
    CHECK(cz.value <= std::sqrt(2.0) * exact.value + 1e-9);
  }
  CHECK_THROWS_AS(norm_inf1(RealMatrix(RealMatrix::Ones(12, 11))), DomainError);
}

TEST_CASE("block operator and trace pairing") {
  RealMatrix a(2, 3);
  a << 1, -2, 0.5, 3, 0, -1;
  auto j = block_j<double>(a);
  CHECK(j.rows() == 5);
  CHECK(j.diagonal().isZero());
  CHECK(j == j.transpose());
  CHECK(trace_pair<double>(j, RealMatrix::Identity(5, 5)) == 0.0);
  Eigen::VectorXd p(2), q(3);
  p << 1, -1;
  q << -1, 1, 1;
  Eigen::VectorXd w(5);
  w << p, q;
  RealMatrix theta = w * w.transpose();
  CHECK(trace_pair<double>(j, theta) == doctest::Approx(p.dot(a * q)));
}

TEST_CASE("trace ratio probe") {
  auto rep = trace_ratio_probe(500, 10, 17);
  CHECK(rep.instances == 500);
  CHECK(rep.max_ratio > 1.0);
  CHECK(rep.max_ratio <= 1.78222 + 1e-6);
  CHECK(check_correlation<double>(rep.argmax_sigma).valid());
  auto serial = trace_ratio_probe(40, 10, 17, Exec::serial);
  auto parallel = trace_ratio_probe(40, 10, 17, Exec::parallel);
  CHECK(serial.max_ratio == parallel.max_ratio);
}

TEST_CASE("block transform with Krivine parameters") {
  const double r = 2.0 * std::log(1.0 + std::sqrt(2.0)) / kPi;
  auto h = arcsin_h;
  auto f = [](double x) { return std::sinh(kPi / 2.0 * x); };
  auto g = [](double x) { return std::sin(kPi / 2.0 * x); };
  for (int t = 0; t < 20; ++t) {
    auto sigma = random_correlation(8, 1 + t % 8, 900 + t);
    auto bt = block_transform(sigma, h, f, g, r);
    CHECK(bt.validity.valid());
    CHECK(bt.composition_gap < 1e-12);
    for (Eigen::Index i = 0; i < 8; ++i) CHECK(std::abs(bt.matrix(i, i) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(block_transform(random_correlation(3, 2, 1), h, f, g, r), DomainError);
  CHECK_THROWS_AS(block_transform(random_correlation(4, 2, 1), h, f, g, 0.0), DomainError);
}

TEST_CASE("matrix I/O round trip") {
  auto a = random_correlation(4, 2, 8);
  CHECK(real_matrix_from_json(matrix_to_json(a)) == a);
  CHECK(matrix_from_csv(matrix_to_csv(a)) == a);
  auto c = random_correlation_complex(3, 2, 8);
  CHECK(complex_matrix_from_json(matrix_to_json(c)) == c);
  CHECK_THROWS_AS(matrix_from_csv("1,2\n3\n"), DomainError);
}
