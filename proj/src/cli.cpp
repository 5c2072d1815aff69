#include "gtbound/cli.hpp"

#include "gtbound/bell_poly.hpp"
#include "gtbound/bound_pipeline.hpp"
#include "gtbound/concepts.hpp"
#include "gtbound/corr_matrix.hpp"
#include "gtbound/error.hpp"
#include "gtbound/gaussian_oracle.hpp"
#include "gtbound/json_io.hpp"
#include "gtbound/special_fn.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace gtbound {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

std::string fmt17(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

long parse_count(const std::string& text) {
  double v;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DomainError("bad sample count '" + text + "'");
  }
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
    throw DomainError("sample count must be a positive integer");
  }
  return static_cast<long>(v);
}

std::complex<double> parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing");
    return v;
  };
  try {
    if (s.empty()) throw std::invalid_argument("empty");
    if (s.back() != 'i') return {number(s), 0.0};
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    auto imag = [&](const std::string& t) {
      if (t.empty() || t == "+") return 1.0;
      if (t == "-") return -1.0;
      return number(t);
    };
    if (split == std::string::npos) return {0.0, imag(s)};
    return {number(s.substr(0, split)), imag(s.substr(split))};
  } catch (const std::invalid_argument&) {
    throw DomainError("bad complex number '" + s + "'");
  }
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
      if (lo < 1 || hi < lo) throw DomainError("bad size range '" + text + "'");
      for (int k = lo; k <= hi; ++k) sizes.push_back(k);
    } else {
      std::stringstream in(text);
      std::string item;
      while (std::getline(in, item, ',')) sizes.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw DomainError("bad size list '" + text + "'");
  }
  if (sizes.empty()) throw DomainError("empty size list");
  return sizes;
}

RealMatrix read_matrix(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return matrix_from_csv(text);
  try {
    return real_matrix_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad matrix JSON: ") + e.what());
  }
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad JSON in '") + path + "': " + e.what());
  }
}

struct Cli {
  CLI::App app{"Grothendieck-constant bounds from concept functions", "gtbound"};
  std::ostream& out;
  std::function<int()> action;

  explicit Cli(std::ostream& o) : out(o) {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");
    add_bell();
    add_series();
    add_special();
    add_concept();
    add_matrix();
    add_oracle();
    add_bound();
  }

  // ---- bell ----
  unsigned bell_n = 0, bell_k = 0;
  bool bell_symbolic_flag = false;
  std::string bell_at;

  void add_bell() {
    auto* cmd = app.add_subcommand("bell", "Ordinary partial Bell polynomial B°_{n,k}");
    cmd->add_option("n", bell_n, "Total")->required();
    cmd->add_option("k", bell_k, "Number of parts")->required();
    auto* sym = cmd->add_flag("--symbolic", bell_symbolic_flag, "Print the polynomial");
    auto* at = cmd->add_option("--at", bell_at, "Evaluate at x1,x2,... (exact rationals)");
    sym->excludes(at);
    cmd->callback([this] {
      action = [this] {
        if (!bell_at.empty()) {
          std::vector<Rational> x;
          std::stringstream in(bell_at);
          std::string item;
          while (std::getline(in, item, ',')) x.push_back(parse_rational(item));
          out << to_string(bell_ordinary(bell_n, bell_k, x)) << "\n";
        } else {
          out << bell_symbolic(bell_n, bell_k).to_string("x") << "\n";
        }
        return kExitOk;
      };
    });
  }

  // ---- series ----
  std::string series_coeffs, series_out = "-";
  std::size_t series_order = 0;
  bool series_exact = false;
  double series_x = 0.0, series_tol = 1e-12;

  void add_series() {
    auto* cmd = app.add_subcommand("series", "Truncated power series operations");
    cmd->require_subcommand(1);

    auto* inv = cmd->add_subcommand("invert", "Series reversion via Bell polynomials");
    inv->add_option("--coeffs", series_coeffs, "Series JSON file")->required();
    inv->add_option("--order", series_order, "Output order N")->required();
    inv->add_flag("--exact", series_exact, "Exact rational arithmetic");
    inv->add_option("--out", series_out, "Output path ('-' for stdout)");
    inv->callback([this] {
      action = [this] {
        auto s = series_from_json(read_json(series_coeffs));
        nlohmann::json j;
        if (series_exact) {
          RationalSeries q = std::holds_alternative<RationalSeries>(s)
                                 ? std::get<RationalSeries>(s)
                                 : [&] {
                                     std::vector<Rational> c;
                                     for (double v : std::get<FloatSeries>(s).coeffs()) {
                                       c.push_back(rational_from_double(v));
                                     }
                                     return RationalSeries(std::move(c));
                                   }();
          j = series_to_json(invert_series(q, series_order));
        } else {
          FloatSeries f = std::holds_alternative<FloatSeries>(s)
                              ? std::get<FloatSeries>(s)
                              : to_float(std::get<RationalSeries>(s));
          j = series_to_json(invert_series(f, series_order));
        }
        write_text(series_out, j.dump(2) + "\n", out);
        return kExitOk;
      };
    });

    auto* ev = cmd->add_subcommand("eval", "Evaluate a series at x in [-1, 1]");
    ev->add_option("--coeffs", series_coeffs, "Series JSON file")->required();
    ev->add_option("--x", series_x, "Point")->required();
    ev->callback([this] {
      action = [this] {
        auto s = series_from_json(read_json(series_coeffs));
        FloatSeries f = std::holds_alternative<FloatSeries>(s)
                            ? std::get<FloatSeries>(s)
                            : to_float(std::get<RationalSeries>(s));
        out << fmt17(eval(f, series_x)) << "\n";
        return kExitOk;
      };
    });

    auto* root = cmd->add_subcommand("root", "Solve f(r) = 1 for a non-negative series");
    root->add_option("--coeffs", series_coeffs, "Series JSON file")->required();
    root->add_option("--tol", series_tol, "Residual tolerance");
    root->callback([this] {
      action = [this] {
        auto s = series_from_json(read_json(series_coeffs));
        FloatSeries f = std::holds_alternative<FloatSeries>(s)
                            ? std::get<FloatSeries>(s)
                            : to_float(std::get<RationalSeries>(s));
        auto r = solve_unit_level(f, series_tol);
        nlohmann::json j = {{"r", r.r},
                            {"residual", r.residual},
                            {"degenerate", r.degenerate},
                            {"iterations", r.iterations}};
        out << j.dump(2) << "\n";
        return kExitOk;
      };
    });
  }

  // ---- special ----
  double sp_a = 0, sp_b = 0, sp_c = 0, sp_z = 0, sp_a3 = 0, sp_b1 = 0, sp_b2 = 0;
  int sp_d = 1, sp_m = 1;
  unsigned sp_n = 0;

  void add_special() {
    auto* cmd = app.add_subcommand("special", "Closed-form special functions");
    cmd->require_subcommand(1);

    auto* f21 = cmd->add_subcommand("2f1", "Gauss hypergeometric 2F1(a, b; c; z)");
    f21->add_option("a", sp_a)->required();
    f21->add_option("b", sp_b)->required();
    f21->add_option("c", sp_c)->required();
    f21->add_option("z", sp_z)->required();
    f21->callback([this] {
      action = [this] {
        out << fmt17(hyp2f1(sp_a, sp_b, sp_c, sp_z)) << "\n";
        return kExitOk;
      };
    });

    auto* f32 = cmd->add_subcommand("3f2", "3F2(a1, a2, a3; b1, b2; z)");
    f32->add_option("a1", sp_a)->required();
    f32->add_option("a2", sp_b)->required();
    f32->add_option("a3", sp_a3)->required();
    f32->add_option("b1", sp_b1)->required();
    f32->add_option("b2", sp_b2)->required();
    f32->add_option("z", sp_z)->required();
    f32->callback([this] {
      action = [this] {
        out << fmt17(hyp3f2(sp_a, sp_b, sp_a3, sp_b1, sp_b2, sp_z)) << "\n";
        return kExitOk;
      };
    });

    auto* mom = cmd->add_subcommand("moment", "E[<X/|X|, Y/|Y|>^m] in closed form");
    mom->add_option("d", sp_d)->required();
    mom->add_option("m", sp_m)->required();
    mom->add_option("rho", sp_z)->required();
    mom->callback([this] {
      action = [this] {
        out << fmt17(moment_closed_form(sp_d, sp_m, sp_z)) << "\n";
        return kExitOk;
      };
    });

    auto* her = cmd->add_subcommand("hermite", "Orthonormal Hermite polynomial H_n(x)");
    her->add_option("n", sp_n)->required();
    her->add_option("x", sp_z)->required();
    her->callback([this] {
      action = [this] {
        out << fmt17(hermite_orthonormal(sp_n, sp_z)) << "\n";
        return kExitOk;
      };
    });

    auto* q = cmd->add_subcommand("norm-quantile", "Standard normal quantile");
    q->add_option("p", sp_z)->required();
    q->callback([this] {
      action = [this] {
        out << fmt17(norm_cdf_inv(sp_z)) << "\n";
        return kExitOk;
      };
    });
  }

  // ---- concept ----
  std::string concept_kind = "sign";
  std::size_t concept_order = 10;
  bool concept_json = false, concept_quadrature = false;

  void add_concept() {
    auto* cmd = app.add_subcommand("concept", "Hermite data of concept functions");
    cmd->require_subcommand(1);
    auto* al = cmd->add_subcommand("alphas", "alpha_n = <b, H_n>^2");
    al->add_option("--kind", concept_kind, "sign | threshold:p");
    al->add_option("--order", concept_order, "N")->required();
    al->add_flag("--json", concept_json, "JSON output");
    al->add_flag("--quadrature", concept_quadrature, "Use numerical quadrature");
    al->callback([this] {
      action = [this] {
        auto spec = parse_concept(concept_kind);
        if (concept_quadrature) spec.source = CoefficientSource::quadrature;
        auto a = alpha_coeffs(spec, concept_order);
        if (concept_json) {
          out << alpha_to_json(a).dump(2) << "\n";
        } else {
          for (std::size_t n = 0; n <= a.order(); ++n) out << n << " " << fmt17(a.alpha[n]) << "\n";
        }
        return kExitOk;
      };
    });
  }

  // ---- matrix ----
  std::string mx_fn = "arcsin", mx_sizes = "2..8", mx_in;
  int mx_trials = 200;
  std::uint64_t mx_seed = 1;
  bool mx_csv = false;

  std::function<double(double)> matrix_function() {
    constexpr double pi = std::numbers::pi;
    if (mx_fn == "arcsin") return [](double x) { return grothendieck_h(std::clamp(x, -1.0, 1.0)); };
    if (mx_fn == "sin") return [](double x) { return std::sin(pi / 2.0 * x); };
    if (mx_fn == "identity") return [](double x) { return x; };
    if (mx_fn.rfind("series:", 0) == 0) {
      auto s = series_from_json(read_json(mx_fn.substr(7)));
      FloatSeries f = std::holds_alternative<FloatSeries>(s) ? std::get<FloatSeries>(s)
                                                             : to_float(std::get<RationalSeries>(s));
      return [f](double x) { return eval(f, std::clamp(x, -1.0, 1.0)); };
    }
    throw DomainError("unknown function '" + mx_fn + "' (arcsin | sin | identity | series:file)");
  }

  void add_matrix() {
    auto* cmd = app.add_subcommand("matrix", "Correlation-matrix tools");
    cmd->require_subcommand(1);

    auto* probe = cmd->add_subcommand("ccp-probe", "Search for entrywise PSD violations");
    probe->add_option("--fn", mx_fn, "arcsin | sin | identity | series:file");
    probe->add_option("--sizes", mx_sizes, "Range lo..hi or list");
    probe->add_option("--trials", mx_trials, "Trials per size");
    probe->add_option("--seed", mx_seed, "Seed");
    probe->callback([this] {
      action = [this] {
        auto rep = ccp_probe(matrix_function(), parse_sizes(mx_sizes), mx_trials, mx_seed);
        nlohmann::json j = {{"fn", mx_fn},
                            {"sizes", rep.sizes},
                            {"trials", rep.trials},
                            {"seed", rep.seed},
                            {"instances", rep.instances},
                            {"violations", rep.violations},
                            {"worst_min_eigenvalue", rep.worst_min_eigenvalue},
                            {"psd_tolerance", kPsdTol}};
        if (rep.worst) {
          j["violation"] = {{"sigma", matrix_to_json(rep.worst->sigma)},
                            {"image", matrix_to_json(rep.worst->image)},
                            {"min_eigenvalue", rep.worst->min_eigenvalue}};
        }
        out << j.dump(2) << "\n";
        return kExitOk;
      };
    });

    auto* check = cmd->add_subcommand("check", "Validate a correlation matrix (JSON or CSV)");
    check->add_option("--in", mx_in, "Matrix file")->required();
    check->callback([this] {
      action = [this] {
        auto a = read_matrix(mx_in);
        if (a.rows() != a.cols()) throw DomainError("matrix must be square");
        auto c = check_correlation<double>(a);
        out << nlohmann::json{{"valid", c.valid()},
                              {"psd", c.psd.psd},
                              {"min_eigenvalue", c.psd.min_eigenvalue},
                              {"threshold", c.psd.threshold},
                              {"max_diag_deviation", c.max_diag_deviation},
                              {"max_abs_entry", c.max_abs_entry}}
                   .dump(2)
            << "\n";
        return kExitOk;
      };
    });

    auto* norm = cmd->add_subcommand("norm", "||A||_{inf,1} by sign enumeration");
    norm->add_option("--in", mx_in, "Matrix file")->required();
    norm->callback([this] {
      action = [this] {
        auto a = read_matrix(mx_in);
        bool exact = a.rows() + a.cols() <= kMaxExactNormSize;
        auto r = norm_inf1(a, exact ? NormMode::exact : NormMode::heuristic, mx_seed);
        std::vector<double> p, q;
        for (auto v : r.p) p.push_back(v.real());
        for (auto v : r.q) q.push_back(v.real());
        out << nlohmann::json{{"value", r.value}, {"exact", r.exact}, {"p", p}, {"q", q}}.dump(2)
            << "\n";
        return kExitOk;
      };
    });
  }

  // ---- oracle ----
  double or_rho = 0.5, or_p = 0.5;
  int or_d = 1, or_m = 1;
  std::string or_n = "1000000", or_z = "0.5";
  std::uint64_t or_seed = 1;

  void add_oracle() {
    auto* cmd = app.add_subcommand("oracle", "Monte-Carlo checks of Gaussian identities");
    cmd->require_subcommand(1);
    auto common = [this](CLI::App* c) {
      c->add_option("--n", or_n, "Sample count (e.g. 1e6)");
      c->add_option("--seed", or_seed, "Seed");
    };

    auto* sign = cmd->add_subcommand("sign-identity", "E[sign X sign Y] vs (2/pi) arcsin rho");
    sign->add_option("--rho", or_rho);
    common(sign);
    sign->callback([this] {
      action = [this] {
        auto e = mc_sign_identity(or_rho, parse_count(or_n), or_seed);
        out << estimate_to_json(e, grothendieck_h(or_rho)).dump(2) << "\n";
        return kExitOk;
      };
    });

    auto* thr = cmd->add_subcommand("threshold", "E[b_p(X) b_p(Y)] vs the tetrachoric series");
    thr->add_option("--p", or_p);
    thr->add_option("--rho", or_rho);
    common(thr);
    thr->callback([this] {
      action = [this] {
        auto e = mc_threshold(or_p, or_rho, parse_count(or_n), or_seed);
        out << estimate_to_json(e, h_p_eval(or_p, or_rho, 100000)).dump(2) << "\n";
        return kExitOk;
      };
    });

    auto* mom = cmd->add_subcommand("moment", "E[<X/|X|, Y/|Y|>^m] vs the 3F2 closed form");
    mom->add_option("--d", or_d);
    mom->add_option("--m", or_m);
    mom->add_option("--rho", or_rho);
    common(mom);
    mom->callback([this] {
      action = [this] {
        auto e = mc_moment(or_d, or_m, or_rho, parse_count(or_n), or_seed);
        out << estimate_to_json(e, moment_closed_form(or_d, or_m, or_rho)).dump(2) << "\n";
        return kExitOk;
      };
    });

    auto* haa = cmd->add_subcommand("haagerup", "Complex sign identity vs Haagerup's function");
    haa->add_option("--z", or_z, "Complex correlation, e.g. 0.3+0.2i");
    common(haa);
    haa->callback([this] {
      action = [this] {
        auto z = parse_complex(or_z);
        auto e = mc_haagerup(z, parse_count(or_n), or_seed);
        out << estimate_to_json(e, haagerup_h(z)).dump(2) << "\n";
        return kExitOk;
      };
    });

    auto* orth = cmd->add_subcommand("orthant", "4 P(X<=0, Y<=0) - 1 vs (2/pi) arcsin rho");
    orth->add_option("--rho", or_rho);
    common(orth);
    orth->callback([this] {
      action = [this] {
        auto e = mc_orthant(or_rho, parse_count(or_n), or_seed);
        out << estimate_to_json(e, (grothendieck_h(or_rho) + 1.0) / 4.0).dump(2) << "\n";
        return kExitOk;
      };
    });
  }

  // ---- bound ----
  std::string bd_concept = "sign", bd_json, bd_csv;
  std::size_t bd_order = 0;
  double bd_tol = 1e-10;

  void add_bound() {
    auto* cmd = app.add_subcommand("bound", "Upper bound on K_G from a concept function");
    cmd->add_option("--concept", bd_concept, "sign | threshold:p");
    cmd->add_option("--order", bd_order, "Truncation order N (default 41 odd, 60 otherwise)");
    cmd->add_option("--tol", bd_tol, "Root residual tolerance");
    cmd->add_option("--json", bd_json, "Write the report as JSON ('-' for stdout)");
    cmd->add_option("--csv", bd_csv, "Write the (N, r_N, 1/r_N) trace as CSV");
    cmd->callback([this] {
      action = [this] {
        auto spec = parse_concept(bd_concept);
        std::size_t order = bd_order;
        if (order == 0) {
          auto probe = h_series(spec, 8);
          order = probe.parity() == Parity::odd ? 41 : 60;
        }
        auto rep = compute_upper_bound(spec, order, bd_tol);
        if (!bd_json.empty()) write_text(bd_json, report_to_json(rep).dump(2) + "\n", out);
        if (!bd_csv.empty()) write_text(bd_csv, roots_to_csv(rep), out);
        if (bd_json.empty()) {
          out << "concept " << spec.label() << " order " << order << " (" << rep.inverted_object
              << ")\n";
          if (rep.bound) {
            out << "r* = " << fmt17(*rep.r_star) << "\nK_G <= " << fmt17(*rep.bound) << "\n";
          } else {
            out << "no bound\n";
          }
          for (const auto& d : rep.diagnostics) out << "note: " << d << "\n";
        }
        return rep.bound ? kExitOk : kExitDomain;
      };
    });
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cli.app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << cli.app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << cli.app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << cli.app.help();
    return kExitUsage;
  }
  if (!cli.action) {
    err << cli.app.help();
    return kExitUsage;
  }
  try {
    return cli.action();
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace gtbound
