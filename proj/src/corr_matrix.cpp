#include "gtbound/corr_matrix.hpp"

#include "gtbound/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gtbound {

namespace {

template <typename Scalar>
void require_square(const Matrix<Scalar>& a, const char* what) {
  if (a.rows() != a.cols()) throw DomainError(std::string(what) + ": matrix must be square");
}

template <typename Scalar>
double hermitian_defect(const Matrix<Scalar>& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

RealMatrix gram_of_unit_rows(RealMatrix v) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) v.row(i).normalize();
  RealMatrix g = v * v.transpose();
  for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, i) = 1.0;
  return g;
}

RealMatrix random_unit_rows(int k, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  RealMatrix v(k, rank);
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    do {
      for (Eigen::Index j = 0; j < v.cols(); ++j) v(i, j) = normal(rng);
    } while (v.row(i).norm() == 0.0);
    v.row(i).normalize();
  }
  return v;
}

double sign_of(double x) { return x >= 0.0 ? 1.0 : -1.0; }

}  // namespace

template <typename Scalar>
PsdCheck is_psd(const Matrix<Scalar>& a, double tol) {
  require_square(a, "is_psd");
  if (hermitian_defect(a) > 1e-12) throw DomainError("is_psd: matrix is not Hermitian");
  PsdCheck out;
  out.threshold = tol * std::max<double>(1.0, static_cast<double>(a.rows()));
  if (a.rows() == 0) {
    out.psd = true;
    return out;
  }
  Matrix<Scalar> herm = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(herm, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.psd = out.min_eigenvalue >= -out.threshold;
  return out;
}

template <typename Scalar>
CorrelationCheck check_correlation(const Matrix<Scalar>& a, double tol) {
  CorrelationCheck c;
  c.psd = is_psd<Scalar>(a, tol);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    c.max_diag_deviation = std::max(c.max_diag_deviation, std::abs(a(i, i) - Scalar(1)));
  }
  c.max_abs_entry = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  return c;
}

template <typename Scalar>
CorrelationMatrix<Scalar>::CorrelationMatrix(Matrix<Scalar> entries, double tol)
    : entries_(std::move(entries)), tol_(tol) {
  auto c = check_correlation<Scalar>(entries_, tol_);
  min_eig_ = c.psd.min_eigenvalue;
  if (c.max_diag_deviation > 1e-12) throw DomainError("correlation matrix needs unit diagonal");
  if (!c.psd.psd) {
    throw DomainError("correlation matrix is not PSD (min eigenvalue " +
                      std::to_string(c.psd.min_eigenvalue) + ")");
  }
  if (c.max_abs_entry > 1.0 + 1e-12) throw DomainError("correlation entries exceed 1 in modulus");
}

template <typename Scalar>
Matrix<Scalar> schur_product(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("schur_product: shape mismatch");
  }
  return a.cwiseProduct(b);
}

RealMatrix entrywise_apply(const FloatSeries& f, const RealMatrix& a) {
  if (a.size() > 0 && a.cwiseAbs().maxCoeff() > 1.0) {
    throw DomainError("series-backed entrywise map needs entries in [-1, 1]");
  }
  return entrywise_apply<double>([&f](double x) { return eval(f, x); }, a);
}

RealMatrix random_correlation(int k, int rank, std::uint64_t seed) {
  if (k < 1 || rank < 1) throw DomainError("random_correlation needs k >= 1 and rank >= 1");
  std::mt19937_64 rng(seed);
  return gram_of_unit_rows(random_unit_rows(k, rank, rng));
}

ComplexMatrix random_correlation_complex(int k, int rank, std::uint64_t seed) {
  if (k < 1 || rank < 1) throw DomainError("random_correlation needs k >= 1 and rank >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix v(k, rank);
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    do {
      for (Eigen::Index j = 0; j < v.cols(); ++j) v(i, j) = {normal(rng), normal(rng)};
    } while (v.row(i).norm() == 0.0);
    v.row(i).normalize();
  }
  ComplexMatrix g = v * v.adjoint();
  for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, i) = 1.0;
  return g;
}

template <typename Scalar>
Matrix<Scalar> block_j(const Matrix<Scalar>& a) {
  const auto m = a.rows(), n = a.cols();
  Matrix<Scalar> j = Matrix<Scalar>::Zero(m + n, m + n);
  j.topRightCorner(m, n) = a / 2.0;
  j.bottomLeftCorner(n, m) = a.adjoint() / 2.0;
  return j;
}

template <typename Scalar>
Scalar trace_pair(const Matrix<Scalar>& b, const Matrix<Scalar>& sigma) {
  if (b.rows() != sigma.rows() || b.cols() != sigma.cols()) {
    throw DomainError("trace_pair: shape mismatch");
  }
  // tr(B* S) = sum_ij conj(b_ij) s_ij
  return (b.conjugate().cwiseProduct(sigma)).sum();
}

Inf1Norm norm_inf1(const RealMatrix& a, NormMode mode, std::uint64_t seed) {
  if (a.size() == 0) throw DomainError("norm_inf1 of an empty matrix");
  const bool transpose = a.rows() > a.cols();
  const RealMatrix m = transpose ? RealMatrix(a.transpose()) : a;
  const Eigen::Index rows = m.rows();
  Inf1Norm out;

  if (mode == NormMode::exact) {
    if (a.rows() + a.cols() > kMaxExactNormSize) {
      throw DomainError("exact norm_inf1 limited to m + n <= " +
                        std::to_string(kMaxExactNormSize));
    }
    // max over p of sum_j |sum_i a_ij p_i|; p_1 = +1 by symmetry.
    Eigen::VectorXd best_p = Eigen::VectorXd::Ones(rows);
    double best = -1.0;
    const std::uint64_t patterns = std::uint64_t{1} << (rows - 1);
    Eigen::VectorXd p(rows);
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      p(0) = 1.0;
      for (Eigen::Index i = 1; i < rows; ++i) p(i) = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
      double v = (m.transpose() * p).cwiseAbs().sum();
      if (v > best) {
        best = v;
        best_p = p;
      }
    }
    Eigen::VectorXd q = (m.transpose() * best_p).unaryExpr(&sign_of);
    out.value = best;
    out.exact = true;
    out.p = (transpose ? q : best_p).cast<std::complex<double>>();
    out.q = (transpose ? best_p : q).cast<std::complex<double>>();
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  double best = -1.0;
  for (int start = 0; start < 32; ++start) {
    Eigen::VectorXd p(a.rows());
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = coin(rng) ? 1.0 : -1.0;
    Eigen::VectorXd q = (a.transpose() * p).unaryExpr(&sign_of);
    double value = p.dot(a * q);
    for (int it = 0; it < 1000; ++it) {
      p = (a * q).unaryExpr(&sign_of);
      q = (a.transpose() * p).unaryExpr(&sign_of);
      double next = p.dot(a * q);
      if (next <= value + 1e-15) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    if (value > best) {
      best = value;
      out.p = p.cast<std::complex<double>>();
      out.q = q.cast<std::complex<double>>();
    }
  }
  out.value = best;
  out.exact = false;
  return out;
}

Inf1Norm norm_inf1(const ComplexMatrix& a, std::uint64_t seed) {
  if (a.size() == 0) throw DomainError("norm_inf1 of an empty matrix");
  auto phase = [](std::complex<double> z) {
    double r = std::abs(z);
    return r == 0.0 ? std::complex<double>(1.0) : z / r;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  Inf1Norm out;
  double best = -1.0;
  for (int start = 0; start < 32; ++start) {
    Eigen::VectorXcd p(a.rows());
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = std::polar(1.0, angle(rng));
    // maximise Re(p^* A q) alternately; the optimum over q is phase(A^* p)
    Eigen::VectorXcd q = (a.adjoint() * p).unaryExpr(phase);
    double value = std::abs(p.dot(a * q));
    for (int it = 0; it < 2000; ++it) {
      p = (a * q).unaryExpr(phase);
      q = (a.adjoint() * p).unaryExpr(phase);
      double next = std::abs(p.dot(a * q));
      if (next <= value + 1e-14) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    if (value > best) {
      best = value;
      out.p = p;
      out.q = q;
    }
  }
  out.value = best;
  out.exact = false;
  return out;
}

CcpReport ccp_probe(const std::function<double(double)>& f, const std::vector<int>& sizes,
                    int trials, std::uint64_t seed, Exec exec) {
  if (trials < 0) throw DomainError("ccp_probe needs trials >= 0");
  for (int k : sizes) {
    if (k < 1) throw DomainError("ccp_probe sizes must be positive");
  }
  CcpReport report;
  report.sizes = sizes;
  report.trials = trials;
  report.seed = seed;
  const long total = static_cast<long>(sizes.size()) * trials;
  report.instances = total;
  std::vector<double> min_eig(static_cast<std::size_t>(total), 0.0);

  auto run = [&](long idx) {
    const int k = sizes[static_cast<std::size_t>(idx / trials)];
    const int t = static_cast<int>(idx % trials);
    RealMatrix sigma = random_correlation(k, 1 + t % k, derive_seed(seed, k, t));
    RealMatrix image = entrywise_apply<double>(f, sigma);
    image = (image + image.transpose()) / 2.0;
    min_eig[static_cast<std::size_t>(idx)] = is_psd<double>(image).min_eigenvalue;
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < total; ++idx) run(idx);
  } else {
    for (long idx = 0; idx < total; ++idx) run(idx);
  }

  long worst_idx = -1;
  for (long idx = 0; idx < total; ++idx) {
    const int k = sizes[static_cast<std::size_t>(idx / trials)];
    const double e = min_eig[static_cast<std::size_t>(idx)];
    if (e < -kPsdTol * std::max(1, k)) ++report.violations;
    if (worst_idx < 0 || e < report.worst_min_eigenvalue) {
      report.worst_min_eigenvalue = e;
      worst_idx = idx;
    }
  }
  if (report.violations > 0) {
    const int k = sizes[static_cast<std::size_t>(worst_idx / trials)];
    const int t = static_cast<int>(worst_idx % trials);
    CcpViolation v;
    v.sigma = random_correlation(k, 1 + t % k, derive_seed(seed, k, t));
    v.image = entrywise_apply<double>(f, v.sigma);
    v.min_eigenvalue = report.worst_min_eigenvalue;
    report.worst = std::move(v);
  }
  return report;
}

SchurClosureReport schur_closure_probe(int pairs, int min_size, int max_size, std::uint64_t seed,
                                       Exec exec) {
  if (pairs < 0 || min_size < 1 || max_size < min_size) {
    throw DomainError("schur_closure_probe: bad arguments");
  }
  std::vector<double> min_eig(static_cast<std::size_t>(pairs), 0.0);
  std::vector<char> ok(static_cast<std::size_t>(pairs), 0);
  const int span = max_size - min_size + 1;
  auto run = [&](int t) {
    const int k = min_size + t % span;
    auto s1 = derive_seed(seed, static_cast<std::uint64_t>(t), 1);
    auto s2 = derive_seed(seed, static_cast<std::uint64_t>(t), 2);
    RealMatrix a = random_correlation(k, 1 + t % k, s1);
    RealMatrix b = random_correlation(k, 1 + (t / k) % k, s2);
    auto check = is_psd<double>(schur_product<double>(a, b));
    min_eig[static_cast<std::size_t>(t)] = check.min_eigenvalue;
    ok[static_cast<std::size_t>(t)] = check.psd;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < pairs; ++t) run(t);
  } else {
    for (int t = 0; t < pairs; ++t) run(t);
  }
  SchurClosureReport r;
  r.pairs = pairs;
  for (int t = 0; t < pairs; ++t) {
    if (t == 0 || min_eig[t] < r.worst_min_eigenvalue) r.worst_min_eigenvalue = min_eig[t];
    if (!ok[t]) ++r.failures;
  }
  return r;
}

BlockTransform block_transform(const RealMatrix& sigma, const std::function<double(double)>& h,
                               const std::function<double(double)>& f,
                               const std::function<double(double)>& g, double r) {
  require_square(sigma, "block_transform");
  if (sigma.rows() % 2 != 0) throw DomainError("block_transform needs a 2k x 2k matrix");
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("block_transform needs r in (0, 1]");
  const Eigen::Index k = sigma.rows() / 2;

  auto checked = [](double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string("block_transform: ") + name +
                                             " left its domain");
    return v;
  };
  // h(f(x)) with f(x) allowed to overshoot 1 by rounding only
  auto hf = [&](double x) {
    double y = checked(f(x), "f");
    if (std::abs(y) > 1.0 + 1e-12) throw DomainError("block_transform: |f(r a_ij)| exceeds 1");
    return checked(h(std::clamp(y, -1.0, 1.0)), "h");
  };

  BlockTransform out;
  out.matrix.resize(sigma.rows(), sigma.cols());
  out.composed.resize(sigma.rows(), sigma.cols());
  for (Eigen::Index j = 0; j < sigma.cols(); ++j) {
    for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
      const double x = r * sigma(i, j);
      const bool diagonal_block = (i < k) == (j < k);
      if (diagonal_block) {
        out.matrix(i, j) = hf(x);
        out.composed(i, j) = out.matrix(i, j);
      } else {
        out.matrix(i, j) = x;
        double gx = checked(g(x), "g");
        out.composed(i, j) = checked(h(std::clamp(gx, -1.0, 1.0)), "h");
      }
    }
  }
  out.composition_gap = (out.matrix - out.composed).cwiseAbs().maxCoeff();
  RealMatrix sym = (out.matrix + out.matrix.transpose()) / 2.0;
  out.validity = check_correlation<double>(sym);
  return out;
}

TraceRatioReport trace_ratio_probe(int instances, int max_dim, std::uint64_t seed, Exec exec) {
  if (instances < 1 || max_dim < 2) throw DomainError("trace_ratio_probe: bad arguments");
  struct Result {
    double ratio = 0.0;
    RealMatrix a, sigma;
  };
  std::vector<Result> results(static_cast<std::size_t>(instances));

  auto run = [&](int t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_int_distribution<int> total_dim(2, max_dim);
    const int dim = total_dim(rng);
    std::uniform_int_distribution<int> split(1, dim - 1);
    const int m = split(rng), n = dim - m;
    std::normal_distribution<double> normal;
    RealMatrix a(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < m; ++i) a(i, j) = normal(rng);
    }
    // alternating maximisation of sum a_ij <u_i, v_j>
    RealMatrix u = random_unit_rows(m, dim, rng);
    RealMatrix v = random_unit_rows(n, dim, rng);
    for (int it = 0; it < 200; ++it) {
      RealMatrix nu = a * v;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (nu.row(i).norm() > 0.0) u.row(i) = nu.row(i).normalized();
      }
      RealMatrix nv = a.transpose() * u;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (nv.row(j).norm() > 0.0) v.row(j) = nv.row(j).normalized();
      }
    }
    RealMatrix w(dim, dim);
    w.topRows(m) = u;
    w.bottomRows(n) = v;
    RealMatrix sigma = gram_of_unit_rows(w);
    const double tr = trace_pair<double>(block_j<double>(a), sigma);
    const double norm = norm_inf1(a).value;
    auto& res = results[static_cast<std::size_t>(t)];
    res.ratio = std::abs(tr) / norm;
    res.a = std::move(a);
    res.sigma = std::move(sigma);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < instances; ++t) run(t);
  } else {
    for (int t = 0; t < instances; ++t) run(t);
  }

  TraceRatioReport report;
  report.instances = instances;
  for (const auto& r : results) {
    if (r.ratio > report.max_ratio) {
      report.max_ratio = r.ratio;
      report.argmax_a = r.a;
      report.argmax_sigma = r.sigma;
    }
  }
  return report;
}

nlohmann::json matrix_to_json(const RealMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return {{"field", "real"}, {"rows", a.rows()}, {"cols", a.cols()}, {"entries", rows}};
}

nlohmann::json matrix_to_json(const ComplexMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      row.push_back(nlohmann::json::array({a(i, j).real(), a(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return {{"field", "complex"}, {"rows", a.rows()}, {"cols", a.cols()}, {"entries", rows}};
}

namespace {

const nlohmann::json& entries_of(const nlohmann::json& j) {
  const nlohmann::json& e = j.is_object() ? j.at("entries") : j;
  if (!e.is_array() || e.empty() || !e[0].is_array()) {
    throw DomainError("matrix JSON must be a non-empty array of rows");
  }
  for (const auto& row : e) {
    if (!row.is_array() || row.size() != e[0].size()) {
      throw DomainError("matrix JSON rows must have equal length");
    }
  }
  return e;
}

}  // namespace

RealMatrix real_matrix_from_json(const nlohmann::json& j) {
  const auto& e = entries_of(j);
  RealMatrix a(e.size(), e[0].size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t c = 0; c < e[i].size(); ++c) {
      if (!e[i][c].is_number()) throw DomainError("real matrix entries must be numbers");
      a(i, c) = e[i][c].get<double>();
    }
  }
  return a;
}

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j) {
  const auto& e = entries_of(j);
  ComplexMatrix a(e.size(), e[0].size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t c = 0; c < e[i].size(); ++c) {
      const auto& v = e[i][c];
      if (v.is_number()) {
        a(i, c) = v.get<double>();
      } else if (v.is_array() && v.size() == 2) {
        a(i, c) = {v[0].get<double>(), v[1].get<double>()};
      } else {
        throw DomainError("complex matrix entries must be numbers or [re, im]");
      }
    }
  }
  return a;
}

std::string matrix_to_csv(const RealMatrix& a) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out << (j ? "," : "") << a(i, j);
    out << "\n";
  }
  return out.str();
}

RealMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw DomainError("bad CSV cell '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows[0].size()) {
      throw DomainError("CSV rows must have equal length");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("empty CSV matrix");
  RealMatrix a(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  }
  return a;
}

template PsdCheck is_psd<double>(const RealMatrix&, double);
template PsdCheck is_psd<std::complex<double>>(const ComplexMatrix&, double);
template CorrelationCheck check_correlation<double>(const RealMatrix&, double);
template CorrelationCheck check_correlation<std::complex<double>>(const ComplexMatrix&, double);
template class CorrelationMatrix<double>;
template class CorrelationMatrix<std::complex<double>>;
template RealMatrix schur_product<double>(const RealMatrix&, const RealMatrix&);
template ComplexMatrix schur_product<std::complex<double>>(const ComplexMatrix&,
                                                           const ComplexMatrix&);
template RealMatrix block_j<double>(const RealMatrix&);
template ComplexMatrix block_j<std::complex<double>>(const ComplexMatrix&);
template double trace_pair<double>(const RealMatrix&, const RealMatrix&);
template std::complex<double> trace_pair<std::complex<double>>(const ComplexMatrix&,
                                                               const ComplexMatrix&);

}  // namespace gtbound
