#include "approxlab/lie.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "approxlab/rng.hpp"

namespace approxlab {

namespace {

constexpr double kRoundtripTol = 1e-10;
constexpr double kDomainImagTol = 1e-12;

double gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.unit();  // (0,1] keeps the log finite
  const double u2 = rng.unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Uniform draw from the closed algebra ball of the given radius, exact in the
// chart norm thanks to the orthonormalized basis.
Eigen::MatrixXd sample_ball(const LieChart& chart, double radius, Rng& rng) {
  const int d = chart.dim;
  Eigen::VectorXd dir(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) dir(i) = gaussian(rng);
    norm = dir.norm();
  } while (norm < 1e-12);
  const double r = radius * std::pow(rng.unit(), 1.0 / d);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(chart.matrix_dim, chart.matrix_dim);
  for (int i = 0; i < d; ++i) x += (r * dir(i) / norm) * chart.onb[static_cast<std::size_t>(i)];
  return x;
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows.push_back(m(i, j));
  return rows;
}

Eigen::MatrixXd mat_from_json(const json& entries, int k, const char* what) {
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
    throw std::invalid_argument(std::string(what) + ": expected a row-major array of " +
                                std::to_string(k * k) + " numbers");
  Eigen::MatrixXd m(k, k);
  std::size_t idx = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = entries[idx++].get<double>();
  return m;
}

double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}

void orthonormalize(LieChart& chart) {
  chart.onb.clear();
  for (const Eigen::MatrixXd& b : chart.basis) {
    Eigen::MatrixXd v = b;
    for (const Eigen::MatrixXd& e : chart.onb) v -= frobenius_inner(e, v) * e;
    const double n = v.norm();
    if (n <= 1e-10) throw std::invalid_argument("algebra basis is linearly dependent");
    chart.onb.push_back(v / n);
  }
}

Eigen::MatrixXd pow17(const Eigen::MatrixXd& g) {
  Eigen::MatrixXd g2 = g * g;
  Eigen::MatrixXd g4 = g2 * g2;
  Eigen::MatrixXd g8 = g4 * g4;
  return g8 * g8 * g;
}

struct Margin {
  double max_margin = -std::numeric_limits<double>::infinity();
  int checks = 0;
  void update(double m) {
    max_margin = std::max(max_margin, m);
    ++checks;
  }
};

void record_failure(LiePropertyReport& rep, json detail) {
  if (rep.counterexamples.size() < 8) rep.counterexamples.push_back(std::move(detail));
}

}  // namespace

Eigen::MatrixXd lie_exp(const Eigen::MatrixXd& x) { return x.exp(); }

bool principal_domain_ok(const Eigen::MatrixXd& g) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(g, /*computeEigenvectors=*/false);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) <= kDomainImagTol && ev.real() <= kDomainImagTol) return false;
  }
  return true;
}

Eigen::MatrixXd lie_log(const Eigen::MatrixXd& g) {
  if (!principal_domain_ok(g))
    throw std::domain_error("matrix logarithm: eigenvalue on the closed negative real axis");
  Eigen::MatrixXd w = g.log();
  if ((w.exp() - g).norm() > kRoundtripTol)
    throw std::domain_error("matrix logarithm: exp/log roundtrip residual above tolerance");
  return w;
}

Eigen::MatrixXd bch(const LieChart&, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  const Eigen::MatrixXd p = lie_exp(x) * lie_exp(y);
  // lie_log validates the principal domain and the residual of exp(z) vs p,
  // which is exactly the advertised postcondition.
  return lie_log(p);
}

LieChart LieChart::from_spec(const json& spec) {
  LieChart chart;
  chart.name = spec.value("name", std::string("chart"));
  if (!spec.contains("basis") || !spec["basis"].is_array() || spec["basis"].empty())
    throw std::invalid_argument("chart spec: \"basis\" must be a nonempty array");
  int k = spec.value("matrix_dim", 0);
  if (k == 0) {
    const std::size_t len = spec["basis"][0].size();
    k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(len))));
    if (static_cast<std::size_t>(k) * static_cast<std::size_t>(k) != len)
      throw std::invalid_argument("chart spec: basis entries must be square row-major matrices");
  }
  chart.matrix_dim = k;
  for (const json& b : spec["basis"]) chart.basis.push_back(mat_from_json(b, k, "chart basis"));
  chart.dim = static_cast<int>(chart.basis.size());
  const std::string ip = spec.value("inner_product", std::string("frobenius"));
  if (ip != "frobenius")
    throw std::invalid_argument("chart spec: unsupported inner product \"" + ip + "\"");
  chart.safety = spec.value("safety", 1.25);
  if (chart.safety < 1.0) throw std::invalid_argument("chart spec: safety must be >= 1");
  chart.seed = spec.value("seed", std::uint64_t{0});
  orthonormalize(chart);
  return chart;
}

LieChart LieChart::so3(double safety, std::uint64_t seed) {
  json spec = {{"name", "so3"},
               {"matrix_dim", 3},
               {"basis",
                {{0, 0, 0, 0, 0, -1, 0, 1, 0},
                 {0, 0, 1, 0, 0, 0, -1, 0, 0},
                 {0, -1, 0, 1, 0, 0, 0, 0, 0}}},
               {"inner_product", "frobenius"},
               {"safety", safety},
               {"seed", seed}};
  return from_spec(spec);
}

LieChart LieChart::sl2(double safety, std::uint64_t seed) {
  json spec = {{"name", "sl2"},
               {"matrix_dim", 2},
               {"basis", {{1, 0, 0, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}}},
               {"inner_product", "frobenius"},
               {"safety", safety},
               {"seed", seed}};
  return from_spec(spec);
}

json LieChart::to_json() const {
  json j;
  j["name"] = name;
  j["matrix_dim"] = matrix_dim;
  j["dim"] = dim;
  json basis_json = json::array();
  for (const Eigen::MatrixXd& b : basis) basis_json.push_back(mat_to_json(b));
  j["basis"] = basis_json;
  j["inner_product"] = "frobenius";
  j["safety"] = safety;
  j["seed"] = seed;
  j["constants"] = {{"ready", constants_ready}, {"sampled_c0", sampled_c0},
                    {"sampled_c1", sampled_c1}, {"C0", C0},
                    {"C1", C1},                 {"eps0", eps0},
                    {"eps1", eps1},             {"eps", eps}};
  return j;
}

json BallLadder::to_json() const {
  json j;
  j["eps"] = eps;
  j["radii"] = radii;
  return j;
}

void estimate_constants(LieChart& chart, const EstimateOptions& opts) {
  // Kronecker low-discrepancy sequence over [0,1)^{2(d+1)}: per pair, a
  // direction block and radius coordinate for each of the two points.
  const int d = chart.dim;
  const int coords = 2 * (d + 1);
  std::vector<double> alpha(static_cast<std::size_t>(coords));
  {
    double p = 2.0;
    auto next_prime = [](double v) {
      int c = static_cast<int>(v) + 1;
      for (;; ++c) {
        bool prime = c >= 2;
        for (int q = 2; q * q <= c; ++q)
          if (c % q == 0) prime = false;
        if (prime) return static_cast<double>(c);
      }
    };
    for (int i = 0; i < coords; ++i) {
      alpha[static_cast<std::size_t>(i)] = std::sqrt(p) - std::floor(std::sqrt(p));
      p = next_prime(p);
    }
  }
  auto grid_point = [&](int k, int offset, double radius) {
    Eigen::VectorXd dir(d);
    double norm = 0.0;
    for (int i = 0; i < d; ++i) {
      const double u =
          std::fmod(static_cast<double>(k + 1) * alpha[static_cast<std::size_t>(offset + i)], 1.0);
      dir(i) = 2.0 * u - 1.0;
      norm += dir(i) * dir(i);
    }
    norm = std::sqrt(norm);
    if (norm < 1e-9) {
      dir.setOnes();
      norm = dir.norm();
    }
    const double ur =
        std::fmod(static_cast<double>(k + 1) * alpha[static_cast<std::size_t>(offset + d)], 1.0);
    const double r = radius * std::pow(ur, 1.0 / d);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(chart.matrix_dim, chart.matrix_dim);
    for (int i = 0; i < d; ++i) x += (r * dir(i) / norm) * chart.onb[static_cast<std::size_t>(i)];
    return x;
  };

  double radius = opts.start_radius;
  for (int attempt = 0; attempt <= opts.max_shrink; ++attempt, radius /= 2.0) {
    Rng rng(chart.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
    double c0 = 0.0;
    double c1 = 0.0;
    bool domain_ok = true;
    const double norm_floor = 1e-3 * radius;  // defect ratios below this are float noise
    for (int k = 0; k < opts.grid_points + opts.random_pairs && domain_ok; ++k) {
      Eigen::MatrixXd x, y;
      if (k < opts.grid_points) {
        x = grid_point(k, 0, radius);
        y = grid_point(k, d + 1, radius);
      } else {
        x = sample_ball(chart, radius, rng);
        y = sample_ball(chart, radius, rng);
      }
      const double nx = x.norm();
      const double ny = y.norm();
      if (nx < norm_floor || ny < norm_floor) continue;
      try {
        const Eigen::MatrixXd xy = bch(chart, x, y);
        const Eigen::MatrixXd conj = bch(chart, xy, -x);     // x*y*(-x)
        const Eigen::MatrixXd comm = bch(chart, conj, -y);   // x*y*(-x)*(-y)
        const double denom = nx * ny;
        c0 = std::max(c0, (xy - (x + y)).norm() / denom);
        c1 = std::max(c1, (conj - y).norm() / denom);
        c1 = std::max(c1, comm.norm() / denom);
      } catch (const std::domain_error&) {
        domain_ok = false;
      }
    }
    if (!domain_ok) continue;
    chart.sampled_c0 = c0;
    chart.sampled_c1 = c1;
    chart.C0 = std::max(c0 * chart.safety, 1e-9);
    chart.C1 = std::max(c1 * chart.safety, 1e-9);
    chart.eps0 = radius;
    chart.eps1 = radius;
    chart.eps = std::min({chart.eps1, 1.0 / (2.0 * chart.C1), 1.0 / (17.0 * chart.C0)});
    chart.constants_ready = true;
    return;
  }
  throw std::runtime_error(
      "estimate_constants: no sampling radius kept the group law inside the principal-log domain");
}

BallLadder build_ladder(const LieChart& chart, int n_max) {
  if (!chart.constants_ready)
    throw std::logic_error("build_ladder: chart constants have not been estimated");
  if (n_max < 0) throw std::invalid_argument("build_ladder: n_max must be nonnegative");
  BallLadder ladder;
  ladder.eps = chart.eps;
  const double step = std::pow(17.0, -0.25);
  double r = chart.eps;
  for (int n = 0; n <= n_max; ++n) {
    r *= step;
    ladder.radii.push_back(r);
  }
  return ladder;
}

json LiePropertyReport::to_json() const {
  json j;
  j["property"] = property;
  j["samples"] = samples;
  j["checks"] = checks;
  j["skipped"] = skipped;
  j["max_margin"] = max_margin;
  j["passed"] = passed;
  j["counterexamples"] = counterexamples;
  j["cover_counts"] = cover_counts;
  return j;
}

LiePropertyReport verify_property(const LieChart& chart, const BallLadder& ladder,
                                  int property_id, int samples, std::uint64_t seed) {
  if (property_id < 1 || property_id > 6)
    throw std::invalid_argument("verify_property: property id must be in 1..6");
  if (ladder.radii.empty()) throw std::invalid_argument("verify_property: empty ladder");
  const int n_max = static_cast<int>(ladder.radii.size()) - 1;
  const auto& rho = ladder.radii;
  const double tol = kLieMembershipTol;

  LiePropertyReport rep;
  rep.property = property_id;
  rep.samples = samples;
  Margin margin;
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(property_id));

  auto membership = [&](double measured, double allowed, int n, const char* what) {
    const double m = measured - (allowed + tol);
    margin.update(m);
    if (m > 0.0)
      record_failure(rep, json{{"type", what}, {"n", n}, {"measured", measured},
                               {"allowed", allowed}, {"margin", m}});
  };

  switch (property_id) {
    case 1: {
      // Greedy separated net in each B_n; the sampled points double as the
      // candidate pool, so every sample has a net point nearby by maximality.
      if (n_max < 1) break;
      const int per_rung = std::max(1, samples / n_max);
      const long long bound = [&] {
        long long b = 1;
        for (int i = 0; i < chart.dim; ++i) b *= 17;
        return b;
      }();
      for (int n = 0; n < n_max; ++n) {
        double sep = rho[static_cast<std::size_t>(n + 1)] -
                     chart.C0 * rho[static_cast<std::size_t>(n)] * rho[static_cast<std::size_t>(n)];
        sep = std::max(sep, rho[static_cast<std::size_t>(n + 1)] / 2.0);
        std::vector<Eigen::MatrixXd> xs;
        xs.reserve(static_cast<std::size_t>(per_rung));
        for (int s = 0; s < per_rung; ++s)
          xs.push_back(sample_ball(chart, rho[static_cast<std::size_t>(n)], rng));
        std::vector<Eigen::MatrixXd> net;
        for (const Eigen::MatrixXd& x : xs) {
          bool separated = true;
          for (const Eigen::MatrixXd& z : net)
            if ((x - z).norm() <= sep) {
              separated = false;
              break;
            }
          if (separated) net.push_back(x);
        }
        rep.cover_counts.push_back(json{{"n", n},
                                        {"net_size", net.size()},
                                        {"bound", bound},
                                        {"separation", sep}});
        if (static_cast<long long>(net.size()) > bound)
          record_failure(rep, json{{"type", "cover_count"}, {"n", n},
                                   {"net_size", net.size()}, {"bound", bound}});
        for (const Eigen::MatrixXd& x : xs) {
          double best = std::numeric_limits<double>::infinity();
          const Eigen::MatrixXd* best_z = nullptr;
          for (const Eigen::MatrixXd& z : net) {
            const double dzx = (x - z).norm();
            if (dzx < best) {
              best = dzx;
              best_z = &z;
            }
          }
          try {
            const Eigen::MatrixXd w = bch(chart, -*best_z, x);
            membership(w.norm(), rho[static_cast<std::size_t>(n + 1)], n, "cover_membership");
          } catch (const std::domain_error& e) {
            record_failure(rep, json{{"type", "domain"}, {"n", n}, {"detail", e.what()}});
            margin.update(tol);  // counts as a failed check
          }
        }
      }
      break;
    }
    case 2:
    case 3:
    case 4: {
      for (int s = 0; s < samples; ++s) {
        try {
          if (property_id == 2) {
            if (n_max < 1) break;
            const int n = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max)));
            const Eigen::MatrixXd x = sample_ball(chart, rho[static_cast<std::size_t>(n + 1)], rng);
            const Eigen::MatrixXd y = sample_ball(chart, rho[static_cast<std::size_t>(n + 1)], rng);
            membership(bch(chart, x, y).norm(), rho[static_cast<std::size_t>(n)], n, "product");
          } else if (property_id == 3) {
            if (n_max < 1) break;
            const int n = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max)));
            const Eigen::MatrixXd a = sample_ball(chart, rho[0], rng);
            const Eigen::MatrixXd y = sample_ball(chart, rho[static_cast<std::size_t>(n + 1)], rng);
            const Eigen::MatrixXd w = bch(chart, bch(chart, a, y), -a);
            membership(w.norm(), rho[static_cast<std::size_t>(n)], n, "conjugation");
          } else {
            const int n1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max + 1)));
            const int n2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max + 1)));
            const int n = std::min(n1 + n2, n_max);
            const Eigen::MatrixXd x = sample_ball(chart, rho[static_cast<std::size_t>(n1)], rng);
            const Eigen::MatrixXd y = sample_ball(chart, rho[static_cast<std::size_t>(n2)], rng);
            const Eigen::MatrixXd w = bch(chart, bch(chart, bch(chart, x, y), -x), -y);
            membership(w.norm(), rho[static_cast<std::size_t>(n)], n, "commutator");
          }
        } catch (const std::domain_error& e) {
          record_failure(rep, json{{"type", "domain"}, {"detail", e.what()}});
          margin.update(tol);
        }
      }
      break;
    }
    case 5: {
      // Injectivity of squaring on U_0: the principal log of exp(x)^2 must
      // be exactly 2x, so distinct x give distinct squares.
      for (int s = 0; s < samples; ++s) {
        const Eigen::MatrixXd x = sample_ball(chart, rho[0], rng);
        try {
          const Eigen::MatrixXd g = lie_exp(x);
          const Eigen::MatrixXd w = lie_log(g * g);
          membership((w - 2.0 * x).norm(), 0.0, 0, "square_log");
        } catch (const std::domain_error& e) {
          record_failure(rep, json{{"type", "domain"}, {"detail", e.what()}});
          margin.update(tol);
        }
      }
      break;
    }
    case 6: {
      if (n_max < 4) {
        record_failure(rep, json{{"type", "ladder_too_short"}, {"n_max", n_max}});
        margin.update(tol);
        break;
      }
      const int half = samples / 2;
      for (int s = 0; s < samples; ++s) {
        const int n = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max - 3)));
        try {
          if (s < half) {
            // Forward: x in B_{n+4} implies x^17 lands in U_n.
            const Eigen::MatrixXd x = sample_ball(chart, rho[static_cast<std::size_t>(n + 4)], rng);
            const Eigen::MatrixXd w = lie_log(pow17(lie_exp(x)));
            membership(w.norm(), rho[static_cast<std::size_t>(n)], n, "power_forward");
          } else {
            // Backward: x in U_0 with x^17 in U_n must already lie in U_{n+4}.
            const double probe = std::min(rho[0], 1.25 * rho[static_cast<std::size_t>(n + 4)]);
            const Eigen::MatrixXd x = sample_ball(chart, probe, rng);
            const Eigen::MatrixXd w = lie_log(pow17(lie_exp(x)));
            const double hyp = w.norm();
            const double gate = rho[static_cast<std::size_t>(n)];
            if (hyp > gate - tol && hyp <= gate + tol) {
              ++rep.skipped;  // hypothesis inside the dead band
            } else if (hyp <= gate - tol) {
              membership(x.norm(), rho[static_cast<std::size_t>(n + 4)], n, "power_backward");
            }
          }
        } catch (const std::domain_error& e) {
          record_failure(rep, json{{"type", "domain"}, {"detail", e.what()}});
          margin.update(tol);
        }
      }
      break;
    }
    default:
      break;
  }

  rep.checks = margin.checks;
  rep.max_margin = margin.checks == 0 ? 0.0 : margin.max_margin;
  rep.passed = rep.counterexamples.empty();
  return rep;
}

json verify_chart(const LieChart& chart, int n_max, int samples, std::uint64_t seed) {
  if (!chart.constants_ready)
    throw std::logic_error("verify_chart: chart constants have not been estimated");
  const BallLadder ladder = build_ladder(chart, n_max);
  json j;
  j["chart"] = chart.to_json();
  j["ladder"] = ladder.to_json();
  json props = json::array();
  bool all = true;
  for (int p = 1; p <= 6; ++p) {
    const LiePropertyReport rep = verify_property(chart, ladder, p, samples, seed);
    all = all && rep.passed;
    props.push_back(rep.to_json());
  }
  j["properties"] = props;
  j["all_passed"] = all;
  return j;
}

}  // namespace approxlab
