#include "sel/app/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "sel/liouvillian.hpp"
#include "sel/moments.hpp"
#include "sel/numerics/quadrature.hpp"
#include "sel/quasiprob/husimi.hpp"
#include "sel/quasiprob/limit_solutions.hpp"

namespace sel::app {

namespace {

using lindblad::LaserParams;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Point {
  double omega, eta, tau;
};

std::string describe(const Point& p) {
  return "(omega " + fmt(p.omega) + ", eta " + fmt(p.eta) + ", tau " + fmt(p.tau) + ")";
}

class Recorder {
 public:
  explicit Recorder(ValidationReport& r) : report_(r) {}

  CheckResult& add(int criterion, std::string name, double measured, std::string bound, bool passed) {
    report_.checks.push_back({criterion, std::move(name), measured, std::move(bound), passed, {}, true});
    return report_.checks.back();
  }

  /// A check whose computation threw counts as failed with the message attached.
  template <class F>
  void guarded(int criterion, const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(criterion, name, std::nan(""), "(not evaluated)", false).detail.push_back(e.what());
    }
  }

 private:
  ValidationReport& report_;
};

lindblad::SteadyStateResult stationary(const Point& p) {
  return lindblad::solve_steady_state(LaserParams::from_dimensionless(p.omega, p.eta, p.tau));
}

std::vector<Point> relation_points(ValidationLevel level) {
  std::vector<Point> pts;
  const std::vector<double> etas = {0.1, 0.5};
  const std::vector<double> omegas =
      level == ValidationLevel::kFull ? std::vector<double>{0.1, 0.3, 0.5, 1.0} : std::vector<double>{0.3, 1.0};
  for (double e : etas)
    for (double w : omegas) pts.push_back({w, e, w});
  return pts;
}

std::vector<Point> figure_points(ValidationLevel level) {
  std::vector<Point> pts;
  const int stride = level == ValidationLevel::kFull ? 1 : 10;
  for (double e : {0.1, 0.5})
    for (double factor : {1.0, 2.0})
      for (int j = 1; j <= 30; j += stride) {
        const double w = 0.05 * j;
        pts.push_back({w, e, factor * w});
      }
  return pts;
}

void criterion_limit_constants(Recorder& rec) {
  rec.guarded(1, "limit-2 constants", [&] {
    const auto q2 = quasiprob::limit2_q();
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-13;
    const double m0 = numerics::integrate_semi_infinite(q2.value, spec);
    const double m1 = numerics::integrate_semi_infinite([&](double i) { return q2.value(i) * i; }, spec);
    const double m2 = numerics::integrate_semi_infinite([&](double i) { return q2.value(i) * i * i; }, spec);
    const double mean_n = m1 - 1.0;
    const double second = m2 - 3.0 * mean_n - 2.0;

    rec.add(1, "limit-2 normalization integral Q2 dI", m0, "|x - 1| <= 1e-12", std::abs(m0 - 1.0) <= 1e-12);
    rec.add(1, "limit-2 <n> = integral Q2 I dI - 1 (target 0.630843)", mean_n, "|x - 0.630843| <= 1e-05",
            std::abs(mean_n - 0.630843) <= 1e-5);
    rec.add(1, "limit-2 <n^2> = integral Q2 I^2 dI - 3<n> - 2 (target 1)", second, "|x - 1| <= 1e-04",
            std::abs(second - 1.0) <= 1e-4);
  });
}

void criterion_vacuum(Recorder& rec, ValidationLevel level) {
  rec.guarded(2, "limit-1 vacuum", [&] {
    const auto q1 = quasiprob::vacuum_q();
    const double mean_n = q1.series->moment(1.0) - 1.0;
    rec.add(2, "limit-1 <n> = integral Q1 I dI - 1 (exact)", mean_n, "== 0", mean_n == 0.0);
    double worst = 0.0;
    for (double i : quasiprob::limit_ode_grid()) worst = std::max(worst, std::abs(q1.value(i) - std::exp(-i)));
    rec.add(2, "limit-1 Q1 equals e^-I on the grid", worst, "== 0", worst == 0.0);
  });

  std::vector<Point> pts{{0.0, 0.5, 0.3}};
  if (level == ValidationLevel::kFull) {
    pts.push_back({0.0, 0.1, 1.0});
    pts.push_back({0.0, 1.0, 0.05});
  }
  for (const auto& p : pts) {
    rec.guarded(2, "zero-pump steady state " + describe(p), [&] {
      const auto result = stationary(p);
      numerics::ComplexMatrix diff = result.rho.matrix();
      diff -= hilbert::basis_projector(result.rho.truncation(), 1, 0);
      const double dev = diff.norm_inf();
      rec.add(2, "zero-pump steady state is |1,0><1,0| " + describe(p), dev, "<= 1e-10", dev <= 1e-10);
    });
  }
}

void criterion_limit_ode(Recorder& rec) {
  rec.guarded(3, "limit ODE identities", [&] {
    const auto sols = quasiprob::limit_solutions();
    const auto r1 = quasiprob::limit_ode_residual(1, sols.q1);
    const auto r2 = quasiprob::limit_ode_residual(2, sols.q2);
    rec.add(3, "case 1: Q1' + Q1 on the limit grid", r1.max_abs, "== 0", r1.max_abs == 0.0);
    rec.add(3, "case 2: limit ODE applied to Q2 on the limit grid", r2.max_abs, "<= 1e-09", r2.max_abs <= 1e-9)
        .detail.push_back("largest at I = " + fmt(r2.at_intensity));
  });
}

void criterion_relation(Recorder& rec, ValidationLevel level) {
  rec.guarded(4, "quasi-probability relation", [&] {
    double worst = 0.0;
    std::vector<std::string> lines;
    for (const auto& p : relation_points(level)) {
      const auto params = LaserParams::from_dimensionless(p.omega, p.eta, p.tau);
      const auto result = lindblad::solve_steady_state(params);
      const auto r = quasiprob::relation_residual(quasiprob::husimi_radial(result.rho), params);
      worst = std::max(worst, r.max_abs);
      lines.push_back(describe(p) + " n_max " + std::to_string(result.n_max_used) + ": max |r| " + fmt(r.max_abs));
    }
    rec.add(4, "rho_sigma = (kappa/g) I^1/2 (Q + Q') on steady states", worst, "<= 1e-08", worst <= 1e-8).detail =
        lines;
  });
}

void criterion_figure(Recorder& rec, ValidationLevel level) {
  rec.guarded(5, "figure grid", [&] {
    double worst_rel = 0.0;
    double worst_q = 0.0;
    Point at_rel{};
    Point at_q{};
    for (const auto& p : figure_points(level)) {
      const auto m = moments::solve_moments(p.omega, p.eta, p.tau);
      const auto o = lindblad::observables(stationary(p).rho);
      const double rel = std::abs(m.mean_n - o.mean_n) / o.mean_n;
      const double dq = std::abs(m.mandel_q.value() - o.mandel_q.value());
      if (rel > worst_rel) worst_rel = rel, at_rel = p;
      if (dq > worst_q) worst_q = dq, at_q = p;
    }
    rec.add(5, "moment system vs Lindblad: relative <n> error", worst_rel, "<= 0.05", worst_rel <= 0.05)
        .detail.push_back("worst at " + describe(at_rel));
    rec.add(5, "moment system vs Lindblad: absolute Mandel Q error", worst_q, "<= 0.05", worst_q <= 0.05)
        .detail.push_back("worst at " + describe(at_q));
  });
}

void criterion_qualitative(Recorder& rec, ValidationLevel level) {
  rec.guarded(6, "qualitative features", [&] {
    const double step = level == ValidationLevel::kFull ? 0.05 : 0.25;
    std::vector<double> omegas;
    for (int j = 0;; ++j) {
      const double w = 0.05 + step * j;
      if (w > 10.0 + 1e-9) break;
      omegas.push_back(w);
    }
    if (omegas.back() < 10.0 - 1e-9) omegas.push_back(10.0);

    std::vector<double> mean_n;
    double min_q = 1e300;
    double at_min_q = 0.0;
    for (double w : omegas) {
      const auto o = lindblad::observables(stationary({w, 0.1, w}).rho);
      mean_n.push_back(o.mean_n);
      if (o.mandel_q && *o.mandel_q < min_q) min_q = *o.mandel_q, at_min_q = w;
    }
    const auto peak = static_cast<std::size_t>(std::max_element(mean_n.begin(), mean_n.end()) - mean_n.begin());
    const bool interior = peak > 0 && peak + 1 < mean_n.size();
    const double decline = mean_n.back() / mean_n[peak];
    auto& c = rec.add(6, "<n>(omega) along tau = omega, eta = 0.1: end value / interior peak", decline,
                      "< 1 with interior peak", interior && decline < 1.0);
    c.detail.push_back("peak <n> " + fmt(mean_n[peak]) + " at omega " + fmt(omegas[peak]) + "; <n>(10) " +
                       fmt(mean_n.back()));
    rec.add(6, "min over omega of Mandel Q along tau = omega, eta = 0.1", min_q, "< 0", min_q < 0.0)
        .detail.push_back("at omega " + fmt(at_min_q));
  });
}

void criterion_p_to_q(Recorder& rec) {
  rec.guarded(7, "P to Q", [&] {
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0};
    const auto q2 = quasiprob::limit2_q();
    const auto t = quasiprob::p_to_q_transform(quasiprob::C0Mode::kNormalize, 0.0, grid);
    double worst = 0.0;
    auto& c = rec.add(7, "finite-part transform of P reproduces Q2", 0.0, "<= 1e-04", false);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double diff = std::abs(t.q[i] - q2.value(grid[i]));
      worst = std::max(worst, diff);
      c.detail.push_back("I = " + fmt(grid[i]) + ": transform " + fmt(t.q[i]) + ", closed form " +
                         fmt(q2.value(grid[i])));
    }
    c.detail.push_back("normalizing c0 = " + fmt(t.c0));
    c.measured = worst;
    c.passed = worst <= 1e-4;
  });
}

void criterion_consistency(Recorder& rec, ValidationLevel level) {
  std::vector<Point> pts{{0.3, 0.5, 0.3}};
  if (level == ValidationLevel::kFull) {
    pts.push_back({0.1, 0.1, 0.1});
    pts.push_back({1.0, 0.5, 2.0});
  }

  rec.guarded(8, "Husimi moments and positivity", [&] {
    double worst_moment = 0.0;
    double min_q = 1e300;
    double worst_eig = 1e300;
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-13;
    for (const auto& p : pts) {
      const auto result = stationary(p);
      const auto o = lindblad::observables(result.rho);
      const auto set = quasiprob::husimi_radial(result.rho);
      const double m1 = numerics::integrate_semi_infinite([&](double i) { return set.q(i) * i; }, spec);
      worst_moment = std::max(worst_moment, std::abs(m1 - 1.0 - o.mean_n));
      for (double i = 0.0; i <= 20.0; i += 0.01) min_q = std::min(min_q, set.q(i));
      worst_eig = std::min(worst_eig, result.rho.min_eigenvalue());
    }
    rec.add(8, "integral q I dI - 1 = <n>", worst_moment, "<= 1e-09", worst_moment <= 1e-9);
    rec.add(8, "Husimi q >= 0 on [0, 20]", min_q, ">= -1e-15", min_q >= -1e-15);
    rec.add(8, "steady state smallest eigenvalue", worst_eig, ">= -1e-12", worst_eig >= -1e-12);
  });

  rec.guarded(8, "generator structure", [&] {
    const hilbert::FockTruncation trunc(10);
    const auto L = lindblad::build_liouvillian(LaserParams::from_dimensionless(0.7, 0.3, 0.4), trunc);
    const double trace_defect = L.left_trace_defect() / L.norm_inf();
    rec.add(8, "Liouvillian trace preservation (relative)", trace_defect, "<= 1e-14", trace_defect <= 1e-14);

    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> normal;
    const std::size_t d = trunc.dimension();
    numerics::ComplexMatrix h(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      h(j, j) = std::abs(normal(rng));
      for (std::size_t k = j + 1; k < d; ++k) {
        h(j, k) = {normal(rng), normal(rng)};
        h(k, j) = std::conj(h(j, k));
      }
    }
    const auto out = L.apply(lindblad::DensityMatrix(trunc, h));
    const double herm = out.hermiticity_defect() / std::max(1.0, out.matrix().norm_inf());
    rec.add(8, "Liouvillian maps Hermitian to Hermitian (relative)", herm, "<= 1e-14", herm <= 1e-14);
  });

  rec.guarded(8, "uniqueness and truncation", [&] {
    double min_sv = 1e300;
    double worst_shift = 0.0;
    for (const auto& p : pts) {
      const auto params = LaserParams::from_dimensionless(p.omega, p.eta, p.tau);
      const auto L40 = lindblad::build_liouvillian(params, hilbert::FockTruncation(40));
      min_sv = std::min(min_sv, lindblad::trace_constrained_min_singular_value(L40));
      const auto n40 = lindblad::observables(lindblad::steady_state(L40, 1.0)).mean_n;
      const auto n80 = lindblad::observables(
          lindblad::steady_state(lindblad::build_liouvillian(params, hilbert::FockTruncation(80)), 1.0)).mean_n;
      worst_shift = std::max(worst_shift, std::abs(n80 - n40));
    }
    if (level == ValidationLevel::kFull) {
      const auto small = lindblad::build_liouvillian(LaserParams::from_dimensionless(0.3, 0.5, 0.3),
                                                     hilbert::FockTruncation(6));
      min_sv = std::min(min_sv, lindblad::trace_constrained_min_singular_value(small, true));
    }
    rec.add(8, "stationary state unique: smallest singular value of trace-constrained system", min_sv, "> 1e-08",
            min_sv > 1e-8);
    rec.add(8, "truncation self-convergence |<n>(n_max 80) - <n>(n_max 40)|", worst_shift, "< 1e-08",
            worst_shift < 1e-8);
  });
}

void add_terms(CheckResult& c, const quasiprob::ResidualReport& r, bool per_term, std::span<const double> grid) {
  c.detail.push_back(r.label + ": normalized " + fmt(r.normalized()) + ", max |r| " + fmt(r.max_abs) +
                     ", integral |r| " + fmt(r.integral_abs) + ", scale " + fmt(r.scale));
  if (per_term) {
    for (const auto& t : r.terms) c.detail.push_back("    term " + t.name + ": max " + fmt(t.max_abs));
  }
  if (r.normalized() > 1e-6) {
    const auto fits = quasiprob::localize_residual(r, grid);
    const std::size_t shown = std::min<std::size_t>(fits.size(), 3);
    for (std::size_t i = 0; i < shown; ++i) {
      c.detail.push_back("    suspect " + fits[i].name + ": rescaling by " + fmt(fits[i].factor) +
                         " leaves normalized residual " + fmt(fits[i].remaining));
    }
  }
}

void criterion_residuals(Recorder& rec, const ValidationOptions& options) {
  const bool full = options.level == ValidationLevel::kFull;
  std::vector<Point> pts{{0.3, 0.5, 0.3}};
  if (full) {
    pts = relation_points(ValidationLevel::kFull);
    pts.push_back({0.5, 0.1, 1.0});
    pts.push_back({1.2, 0.5, 2.4});
  }
  const auto grid = quasiprob::standard_residual_grid();

  rec.guarded(9, "stationary pair and ode5 residuals", [&] {
    double worst4 = 0.0;
    double worst5 = 0.0;
    CheckResult c4{9, "", 0, "", false, {}, true};
    CheckResult c5 = c4;
    for (const auto& p : pts) {
      const auto params = LaserParams::from_dimensionless(p.omega, p.eta, p.tau);
      const auto set = quasiprob::husimi_radial(lindblad::solve_steady_state(params).rho);
      const auto pair = quasiprob::stationary_pair_residual(set, params);
      auto coeffs = quasiprob::ode5_coefficients(p.omega, p.eta, p.tau);
      if (options.mutate_ode) options.mutate_ode(coeffs);
      const auto ode5 = quasiprob::ode5_residual(set.q, coeffs, grid);

      c4.detail.push_back("at " + describe(p));
      c5.detail.push_back("at " + describe(p));
      for (const auto& r : pair) {
        worst4 = std::max(worst4, r.normalized());
        add_terms(c4, r, full, grid);
      }
      worst5 = std::max(worst5, ode5.normalized());
      add_terms(c5, ode5, full, grid);
    }
    auto& r4 = rec.add(9, "stationary pair on steady-state quasi-probabilities (normalized)", worst4, "<= 1e-06",
                       worst4 <= 1e-6);
    r4.detail = std::move(c4.detail);
    auto& r5 = rec.add(9, "ode5 on steady-state Q (normalized)", worst5, "<= 1e-06", worst5 <= 1e-6);
    r5.detail = std::move(c5.detail);
  });

  rec.guarded(9, "Cramer cross-check", [&] {
    double worst = 0.0;
    for (const auto& p : figure_points(options.level)) {
      worst = std::max(worst,
                       moments::cramer_cross_check(moments::coefficient_table(p.omega, p.eta, p.tau)).max_rel_discrepancy);
    }
    rec.add(9, "closed-form Cramer solution vs elimination (relative, diagnostic)", worst, "<= 1e-10", worst <= 1e-10)
        .hard = false;
  });
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || !c.hard; });
}

bool ValidationReport::criterion_passed(int criterion) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.criterion != criterion) continue;
    any = true;
    if (c.hard && !c.passed) return false;
  }
  return any;
}

void ValidationReport::write(std::ostream& out) const {
  out << "sel-lab validation (" << (level == ValidationLevel::kFull ? "full" : "quick") << ")\n";
  for (const auto& c : checks) {
    out << (c.passed ? "[PASS] " : c.hard ? "[FAIL] " : "[WARN] ") << "C" << c.criterion << "  " << c.name << ": measured "
        << fmt(c.measured) << ", bound " << c.bound << '\n';
    for (const auto& line : c.detail) out << "         " << line << '\n';
  }
  std::size_t failed = 0;
  for (const auto& c : checks) failed += (c.passed || !c.hard) ? 0 : 1;
  out << (failed == 0 ? "ALL CHECKS PASSED" : "FAILED CHECKS: " + std::to_string(failed)) << " ("
      << checks.size() << " checks)\n";
}

ValidationReport run_validation(const ValidationOptions& options) {
  ValidationReport report;
  report.level = options.level;
  Recorder rec(report);
  criterion_limit_constants(rec);
  criterion_vacuum(rec, options.level);
  criterion_limit_ode(rec);
  criterion_relation(rec, options.level);
  criterion_figure(rec, options.level);
  criterion_qualitative(rec, options.level);
  criterion_p_to_q(rec);
  criterion_consistency(rec, options.level);
  criterion_residuals(rec, options);
  return report;
}

}  // namespace sel::app
