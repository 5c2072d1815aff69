#include "gtbound/gaussian_oracle.hpp"

#include "gtbound/error.hpp"
#include "gtbound/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gtbound {

namespace {

double sign_of(double x) { return x >= 0.0 ? 1.0 : -1.0; }

// Welford state for two components; combined across chunks in chunk order.
struct Moments {
  long n = 0;
  double mean[2] = {0.0, 0.0};
  double m2[2] = {0.0, 0.0};

  void push(double a, double b) {
    ++n;
    const double v[2] = {a, b};
    for (int c = 0; c < 2; ++c) {
      double delta = v[c] - mean[c];
      mean[c] += delta / static_cast<double>(n);
      m2[c] += delta * (v[c] - mean[c]);
    }
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    const long total = n + o.n;
    for (int c = 0; c < 2; ++c) {
      double delta = o.mean[c] - mean[c];
      mean[c] += delta * static_cast<double>(o.n) / static_cast<double>(total);
      m2[c] += o.m2[c] + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) /
                             static_cast<double>(total);
    }
    n = total;
  }

  McEstimate estimate(int c, std::uint64_t seed) const {
    McEstimate e;
    e.mean = mean[c];
    e.n_samples = n;
    e.seed = seed;
    e.std_error = n > 1 ? std::sqrt(m2[c] / static_cast<double>(n - 1) / static_cast<double>(n))
                        : 0.0;
    return e;
  }
};

// Runs `make_chunk_sampler()` once per chunk; the sampler is called as
// sample(rng) -> std::complex<double>.
template <typename MakeSampler>
Moments run_chunks(long n, std::uint64_t seed, Exec exec, MakeSampler make_sampler) {
  if (n < 1) throw DomainError("Monte-Carlo sample count must be positive");
  const long chunks = (n + kMcChunk - 1) / kMcChunk;
  std::vector<Moments> partial(static_cast<std::size_t>(chunks));
  auto run = [&](long c) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    auto sample = make_sampler();
    const long count = std::min(kMcChunk, n - c * kMcChunk);
    Moments& m = partial[static_cast<std::size_t>(c)];
    for (long i = 0; i < count; ++i) {
      std::complex<double> v = sample(rng);
      m.push(v.real(), v.imag());
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long c = 0; c < chunks; ++c) run(c);
  } else {
    for (long c = 0; c < chunks; ++c) run(c);
  }
  Moments total;
  for (const auto& m : partial) total.merge(m);
  return total;
}

void check_rho(double rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("correlation must satisfy |rho| <= 1");
}

}  // namespace

double McEstimate::z_score(double reference) const {
  const double gap = mean - reference;
  if (std_error == 0.0) return std::abs(gap) <= 1e-12 ? 0.0 : std::copysign(INFINITY, gap);
  return gap / std_error;
}

bool McEstimate::agrees(double reference, double k) const {
  return std::abs(mean - reference) <= k * std_error + 1e-12;
}

CorrelatedPairSampler::CorrelatedPairSampler(int d, double rho)
    : d_(d), rho_(rho), comp_(std::sqrt(std::max(0.0, 1.0 - rho * rho))) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  check_rho(rho);
}

void CorrelatedPairSampler::draw(std::mt19937_64& rng, Eigen::Ref<Eigen::VectorXd> x,
                                 Eigen::Ref<Eigen::VectorXd> y) {
  for (int i = 0; i < d_; ++i) {
    const double a = normal_(rng);
    const double b = normal_(rng);
    x(i) = a;
    y(i) = rho_ * a + comp_ * b;
  }
}

CorrelatedSample sample_corr_pairs(int d, double rho, long n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample count must be positive");
  CorrelatedSample s;
  s.x.resize(n, d);
  s.y.resize(n, d);
  const long chunks = (n + kMcChunk - 1) / kMcChunk;
  Eigen::VectorXd x(d), y(d);
  for (long c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    CorrelatedPairSampler sampler(d, rho);
    const long count = std::min(kMcChunk, n - c * kMcChunk);
    for (long i = 0; i < count; ++i) {
      sampler.draw(rng, x, y);
      s.x.row(c * kMcChunk + i) = x.transpose();
      s.y.row(c * kMcChunk + i) = y.transpose();
    }
  }
  return s;
}

McEstimate mc_sign_identity(double rho, long n, std::uint64_t seed, Exec exec) {
  check_rho(rho);
  auto m = run_chunks(n, seed, exec, [rho] {
    return [s = CorrelatedPairSampler(1, rho), x = Eigen::VectorXd(1),
            y = Eigen::VectorXd(1)](std::mt19937_64& rng) mutable {
      s.draw(rng, x, y);
      return std::complex<double>(sign_of(x(0)) * sign_of(y(0)), 0.0);
    };
  });
  return m.estimate(0, seed);
}

McEstimate mc_threshold(double p, double rho, long n, std::uint64_t seed, Exec exec) {
  check_rho(rho);
  if (!(p > 0.0 && p < 1.0)) throw DomainError("threshold level p must lie in (0, 1)");
  const double t = norm_cdf_inv(p);
  auto m = run_chunks(n, seed, exec, [rho, t] {
    return [s = CorrelatedPairSampler(1, rho), x = Eigen::VectorXd(1), y = Eigen::VectorXd(1),
            t](std::mt19937_64& rng) mutable {
      s.draw(rng, x, y);
      const double bx = x(0) >= t ? 1.0 : -1.0;
      const double by = y(0) >= t ? 1.0 : -1.0;
      return std::complex<double>(bx * by, 0.0);
    };
  });
  return m.estimate(0, seed);
}

McEstimate mc_moment(int d, int m, double rho, long n, std::uint64_t seed, Exec exec) {
  if (d < 1 || m < 1) throw DomainError("mc_moment needs d >= 1 and m >= 1");
  if (!(std::abs(rho) < 1.0)) throw DomainError("mc_moment needs |rho| < 1");
  auto mom = run_chunks(n, seed, exec, [d, m, rho] {
    return [s = CorrelatedPairSampler(d, rho), x = Eigen::VectorXd(d), y = Eigen::VectorXd(d), d,
            m](std::mt19937_64& rng) mutable {
      s.draw(rng, x, y);
      double c;
      if (d == 1) {
        c = sign_of(x(0)) * sign_of(y(0));  // S^0 = {-1, 1}
      } else {
        c = x.dot(y) / (x.norm() * y.norm());
      }
      double v = 1.0;
      for (int k = 0; k < m; ++k) v *= c;
      return std::complex<double>(v, 0.0);
    };
  });
  return mom.estimate(0, seed);
}

McEstimate mc_orthant(double rho, long n, std::uint64_t seed, Exec exec) {
  check_rho(rho);
  auto m = run_chunks(n, seed, exec, [rho] {
    return [s = CorrelatedPairSampler(1, rho), x = Eigen::VectorXd(1),
            y = Eigen::VectorXd(1)](std::mt19937_64& rng) mutable {
      s.draw(rng, x, y);
      return std::complex<double>(x(0) <= 0.0 && y(0) <= 0.0 ? 1.0 : 0.0, 0.0);
    };
  });
  return m.estimate(0, seed);
}

ComplexMcEstimate mc_haagerup(std::complex<double> z, long n, std::uint64_t seed, Exec exec) {
  const double mag = std::abs(z);
  if (mag > 1.0 + 1e-15) throw DomainError("mc_haagerup needs |z| <= 1");
  const double comp = std::sqrt(std::max(0.0, 1.0 - mag * mag));
  const std::complex<double> zc = std::conj(z);
  auto m = run_chunks(n, seed, exec, [zc, comp] {
    return [normal = std::normal_distribution<double>(), zc,
            comp](std::mt19937_64& rng) mutable {
      const double s = std::sqrt(0.5);
      std::complex<double> a(normal(rng) * s, normal(rng) * s);
      std::complex<double> b(normal(rng) * s, normal(rng) * s);
      std::complex<double> w = zc * a + comp * b;
      auto unit = [](std::complex<double> v) {
        double r = std::abs(v);
        return r == 0.0 ? std::complex<double>(1.0) : v / r;
      };
      return unit(a) * std::conj(unit(w));
    };
  });
  return {m.estimate(0, seed), m.estimate(1, seed)};
}

}  // namespace gtbound
