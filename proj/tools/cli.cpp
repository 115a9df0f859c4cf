#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "nearint/bound_profile.hpp"
#include "nearint/certificate.hpp"
#include "nearint/constructions.hpp"
#include "nearint/errors.hpp"
#include "nearint/io.hpp"
#include "nearint/oracles.hpp"
#include "nearint/snowflake.hpp"
#include "nearint/spherical.hpp"

namespace nearint::cli {
namespace {

struct Options {
  // construct sarkozy3d
  std::string X = "1000000";
  std::string delta;
  std::string out;
  std::uint64_t cap = kDefaultPointCap;
  // construct snowflake-lift
  std::int64_t M = 64;
  std::string eta = "0.5";
  int levels = 20;
  std::string lift_delta = "auto";
  // verify / bruteforce / besselcheck / plot-data / check-cert
  std::string in;
  std::string norm = "l2";
  unsigned threads = 0;
  // certify
  int ell = 1;
  int max_degree = 64;
  // besselcheck
  int kmax = 10;
  int dim_sphere = 0;
  std::uint64_t samples = kDefaultSphereSamples;
  std::uint64_t seed = 1;
  // bruteforce
  bool exact = false;
  bool greedy = false;
  // bound
  int dim = 0;
  std::string bound_X;
  // plot-data
  std::string projection = "yz";
};

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out) : o_(opt), out_(out) {}

  int sarkozy3d() const {
    const Rational X = parse_rational(o_.X);
    const Rational delta = parse_rational(o_.delta);
    const Sarkozy3d result = build_sarkozy3d(X, delta, o_.cap);
    const auto& p = result.params;
    PointSetFile file;
    file.points = result.points;
    file.delta = Delta(delta);
    file.meta.construction = "sarkozy3d";
    file.meta.params = {{"X", to_string(X)},
                        {"delta", to_string(delta)},
                        {"k", std::to_string(p.k)},
                        {"t", std::to_string(p.t)}};
    file.meta.created = timestamp_now();
    write_point_set(o_.out, file);
    fmt::print(out_, "sarkozy3d: k = {}, t = {}, {} points, radius bound {}\n", p.k, p.t,
               result.points.size(), to_string(X));
    fmt::print(out_, "log-size lower bound: {:.6f} (log count {:.6f})\n",
               log_size_lower_bound(X, delta), std::log(static_cast<double>(result.points.size())));
    fmt::print(out_, "wrote {}\n", o_.out);
    return kOk;
  }

  int snowflake_lift() const {
    if (o_.M < 1) throw DomainError(fmt::format("--M must be positive, got {}", o_.M));
    double eta = 0.0;
    if (o_.eta == "sweep") {
      const auto etas = default_eta_sweep();
      const auto sweep = sweep_eta(o_.M, o_.levels, etas);
      fmt::print(out_, "{:>6}  {:>12}  {:>12}  {:>12}\n", "eta", "c_emp", "C_emp", "delta_phi");
      for (const auto& e : sweep) {
        fmt::print(out_, "{:>6.2f}  {:>12.6f}  {:>12.6f}  {:>12.6f}\n", e.eta, e.constants.c_emp,
                   e.constants.C_emp, e.constants.delta_phi);
      }
      eta = best_eta(sweep).eta;
      fmt::print(out_, "chosen eta = {:.2f}\n", eta);
    } else {
      eta = parse_real(o_.eta, "--eta");
    }
    const SnowflakeCurve curve = build_snowflake_curve(o_.levels, eta);
    const SnowflakeLift lift =
        o_.lift_delta == "auto"
            ? nearint::snowflake_lift(o_.M, curve)
            : nearint::snowflake_lift(o_.M, curve, to_double(parse_rational(o_.lift_delta)));
    PointSetFile file;
    file.points = lift.points;
    file.delta = Delta(lift.params.delta);
    file.meta.construction = "snowflake-lift";
    file.meta.params = {{"M", std::to_string(o_.M)},
                        {"eta", fmt::format("{:.17g}", eta)},
                        {"levels", std::to_string(o_.levels)},
                        {"lambda", fmt::format("{:.17g}", lift.params.lambda)},
                        {"c_emp", fmt::format("{:.17g}", lift.constants.c_emp)},
                        {"C_emp", fmt::format("{:.17g}", lift.constants.C_emp)},
                        {"delta_phi", fmt::format("{:.17g}", lift.constants.delta_phi)}};
    file.meta.created = timestamp_now();
    write_point_set(o_.out, file);
    fmt::print(out_, "snowflake-lift: M = {}, eta = {:.2f}, levels = {}\n", o_.M, eta, o_.levels);
    fmt::print(out_, "c_emp = {:.9f}, C_emp = {:.9f}, delta_phi = {:.9f}\n", lift.constants.c_emp,
               lift.constants.C_emp, lift.constants.delta_phi);
    fmt::print(out_, "delta = {:.9f}, lambda = {:.9f}, {} points in R^4\n", lift.params.delta,
               lift.params.lambda, lift.points.size());
    fmt::print(out_, "wrote {}\n", o_.out);
    return kOk;
  }

  int verify() const {
    const PointSetFile file = read_point_set(o_.in);
    const Delta delta = resolve_delta(file);
    const VerificationReport report =
        pairwise_verify(file.points, delta, NormSpec::parse(o_.norm), o_.threads);
    fmt::print(out_, "points:        {}\n", file.points.size());
    out_ << format_report(report);
    return report.pass ? kOk : kVerificationFailed;
  }

  int certify() const {
    const Rational delta = parse_rational(o_.delta);
    CertifyOptions options;
    options.max_degree = o_.max_degree;
    const CertifyResult result = certify_negative_polynomial(delta, o_.ell, options);
    const CertificateFile file = make_certificate_file(delta, o_.ell, o_.max_degree, result);
    write_certificate(o_.out, file);
    fmt::print(out_, "status:           {}\n", file.status());
    fmt::print(out_, "delta:            {}\n", to_string(delta));
    fmt::print(out_, "ell:              {}\n", o_.ell);
    if (result.certificate) {
      const TrigCertificate& c = *result.certificate;
      fmt::print(out_, "degree:           {}\n", c.degree);
      fmt::print(out_, "margin:           {:.6e}\n", c.margin);
      fmt::print(out_, "grid step:        {:.6e}\n", c.grid_step);
      fmt::print(out_, "derivative bound: {:.6f}\n", c.derivative_bound);
    } else {
      fmt::print(out_, "best grid margin: {:.6e} (degree {})\n", result.best_grid_margin,
                 result.best_degree);
    }
    fmt::print(out_, "LP solves:        {}\n", result.lp_solves);
    fmt::print(out_, "wall time:        {:.3f} s\n", result.wall_time_seconds);
    fmt::print(out_, "wrote {}\n", o_.out);
    return kOk;
  }

  int check_cert() const {
    const CertificateFile file = read_certificate(o_.in);
    if (!file.certificate) {
      fmt::print(out_, "infeasible run (best grid margin {:.6e}); nothing to check\n",
                 file.best_grid_margin);
      return kOk;
    }
    const bool ok = check_certificate(*file.certificate);
    fmt::print(out_, "certificate for delta = {}, ell = {}, degree {}, margin {:.6e}: {}\n",
               to_string(file.delta), file.ell, file.certificate->degree,
               file.certificate->margin, ok ? "PASS" : "FAIL");
    return ok ? kOk : kVerificationFailed;
  }

  int besselcheck() const {
    const PointSetFile file = read_point_set(o_.in);
    const PointSet& set = file.points;
    if (set.empty()) throw DomainError("point set is empty");
    const int d = static_cast<int>(set.dim()) - 1;
    if (o_.dim_sphere != 0 && o_.dim_sphere != d) {
      throw DomainError(fmt::format("--dim-sphere {} does not match points in R^{}",
                                    o_.dim_sphere, set.dim()));
    }
    const SphericalCalibration cal = spherical_constant(d, o_.samples, o_.seed);
    fmt::print(out_, "sphere S^{}: nu = {}, C = {:.8f} +- {:.2e} ({} samples)\n", d, cal.nu,
               cal.C, cal.std_error, cal.samples);
    const double floor = -1e-6 * static_cast<double>(set.size());
    bool ok = true;
    for (const BesselDiagnostic& diag : bessel_diagnostics(set, o_.kmax, cal.C)) {
      const bool pass = diag.energy >= floor;
      ok = ok && pass;
      fmt::print(out_, "k = {:>4}  energy = {:>16.9f}  {}\n", diag.k, diag.energy,
                 pass ? "ok" : "NEGATIVE");
    }
    return ok ? kOk : kVerificationFailed;
  }

  int bruteforce() const {
    if (o_.exact && o_.greedy) throw DomainError("--exact and --greedy are mutually exclusive");
    const PointSetFile file = read_point_set(o_.in);
    const Delta delta = resolve_delta(file);
    const NormSpec norm = NormSpec::parse(o_.norm);
    const std::vector<std::size_t> subset =
        o_.greedy ? greedy_valid_subset(file.points, delta, norm, o_.seed)
                  : max_valid_subset(file.points, delta, norm);
    fmt::print(out_, "{} valid subset: {} of {} candidates\n",
               o_.greedy ? "greedy" : "maximum", subset.size(), file.points.size());
    fmt::print(out_, "indices: [{}]\n", fmt::join(subset, ", "));
    fmt::print(out_, "(a lower bound for the ball problem over these candidates only)\n");
    if (!o_.out.empty()) {
      PointSetFile sub;
      sub.points = file.points.subset(subset);
      sub.delta = delta;
      sub.norm = norm;
      sub.meta.construction = o_.greedy ? "greedy-subset" : "max-subset";
      sub.meta.params = {{"source", o_.in}};
      if (o_.greedy) sub.meta.seed = o_.seed;
      sub.meta.created = timestamp_now();
      write_point_set(o_.out, sub);
      fmt::print(out_, "wrote {}\n", o_.out);
    }
    return kOk;
  }

  int bound() const {
    const BoundProfile profile = bound_profile(o_.dim);
    fmt::print(out_, "d = {}: f_d(X) = {}\n", o_.dim, profile.to_string());
    if (!o_.bound_X.empty()) {
      const double X = parse_real(o_.bound_X, "--X");
      fmt::print(out_, "integral of f_d(t) t^(-d/2-1) over [2, 4X] at X = {}: {:.12g}\n", X,
                 recursion_integral(o_.dim, X));
    }
    return kOk;
  }

  int plot_data() const {
    if (o_.projection.size() != 2) {
      throw DomainError(fmt::format("projection must name two axes, got '{}'", o_.projection));
    }
    auto axis = [](char c) -> std::size_t {
      switch (c) {
        case 'x': return 0;
        case 'y': return 1;
        case 'z': return 2;
        case 'w': return 3;
        default: throw DomainError(fmt::format("unknown axis '{}'", c));
      }
    };
    const std::size_t a = axis(o_.projection[0]);
    const std::size_t b = axis(o_.projection[1]);
    const PointSetFile file = read_point_set(o_.in);
    const PointSet& set = file.points;
    if (!set.empty() && std::max(a, b) >= set.dim()) {
      throw DomainError(fmt::format("projection {} needs at least {} coordinates", o_.projection,
                                    std::max(a, b) + 1));
    }
    std::ofstream csv(o_.out);
    if (!csv) throw DomainError(fmt::format("cannot open '{}' for writing", o_.out));
    fmt::print(csv, "index,{},{}\n", o_.projection[0], o_.projection[1]);
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Point& p = set[i];
      if (p.is_lattice()) {
        fmt::print(csv, "{},{},{}\n", i, p.lattice()[a], p.lattice()[b]);
      } else {
        fmt::print(csv, "{},{:.17g},{:.17g}\n", i, p[a], p[b]);
      }
    }
    fmt::print(out_, "wrote {} rows to {}\n", set.size(), o_.out);
    return kOk;
  }

 private:
  static double parse_real(const std::string& text, std::string_view flag) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used == text.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw DomainError(fmt::format("{} expects a real number, got '{}'", flag, text));
  }

  Delta resolve_delta(const PointSetFile& file) const {
    if (!o_.delta.empty()) return parse_delta(o_.delta, file.points.mode());
    if (file.delta) return *file.delta;
    throw DomainError("no --delta given and the file records none");
  }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point sets whose pairwise distances avoid near-integers", "nearint"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;
  Runner runner(o, out);

  auto* construct = app.add_subcommand("construct", "Build a point set");
  construct->require_subcommand(1);

  auto* sar = construct->add_subcommand("sarkozy3d", "Digit-expansion lattice set in R^3");
  sar->add_option("--X", o.X, "Ball radius")->required();
  sar->add_option("--delta", o.delta, "Gap threshold (p/q or decimal)")->required();
  sar->add_option("--out", o.out, "Output file")->required();
  sar->add_option("--cap", o.cap, "Refuse to build more points than this");
  sar->callback([&] { action = [&] { return runner.sarkozy3d(); }; });

  auto* snow = construct->add_subcommand("snowflake-lift", "Lift {1..M} along a snowflake curve");
  snow->add_option("--M", o.M, "Number of points")->required();
  snow->add_option("--eta", o.eta, "Displacement amplitude, or 'sweep'");
  snow->add_option("--levels", o.levels, "Curve refinement levels");
  snow->add_option("--delta", o.lift_delta, "Gap threshold, or 'auto' for delta_phi");
  snow->add_option("--out", o.out, "Output file")->required();
  snow->callback([&] { action = [&] { return runner.snowflake_lift(); }; });

  auto* ver = app.add_subcommand("verify", "Check every pairwise distance gap");
  ver->add_option("--in", o.in, "Point-set file")->required();
  ver->add_option("--delta", o.delta, "Gap threshold (defaults to the file's)");
  ver->add_option("--norm", o.norm, "l2 or lp:<p>");
  ver->add_option("--threads", o.threads, "Worker threads (default: NEARINT_THREADS)");
  ver->callback([&] { action = [&] { return runner.verify(); }; });

  auto* cert = app.add_subcommand("certify", "Search for a negative cosine polynomial");
  cert->add_option("--delta", o.delta, "Interval parameter")->required();
  cert->add_option("--ell", o.ell, "Phase class")->required();
  cert->add_option("--max-degree", o.max_degree, "Largest degree tried");
  cert->add_option("--out", o.out, "Certificate file")->required();
  cert->callback([&] { action = [&] { return runner.certify(); }; });

  auto* check = app.add_subcommand("check-cert", "Re-check a certificate file");
  check->add_option("--in", o.in, "Certificate file")->required();
  check->callback([&] { action = [&] { return runner.check_cert(); }; });

  auto* bes = app.add_subcommand("besselcheck", "Bessel energy diagnostics for a point set");
  bes->add_option("--in", o.in, "Point-set file")->required();
  bes->add_option("--kmax", o.kmax, "Largest frequency")->required();
  bes->add_option("--dim-sphere", o.dim_sphere, "Sphere dimension d (points in R^(d+1))");
  bes->add_option("--samples", o.samples, "Monte-Carlo samples for the calibration");
  bes->add_option("--seed", o.seed, "Random seed");
  bes->callback([&] { action = [&] { return runner.besselcheck(); }; });

  auto* bf = app.add_subcommand("bruteforce", "Largest valid subset of a candidate set");
  bf->add_option("--in", o.in, "Candidate point-set file")->required();
  bf->add_option("--delta", o.delta, "Gap threshold (defaults to the file's)");
  bf->add_option("--norm", o.norm, "l2 or lp:<p>");
  bf->add_flag("--exact", o.exact, "Exact branch and bound (default)");
  bf->add_flag("--greedy", o.greedy, "Seeded greedy insertion");
  bf->add_option("--seed", o.seed, "Random seed for --greedy");
  bf->add_option("--out", o.out, "Write the subset to this file");
  bf->callback([&] { action = [&] { return runner.bruteforce(); }; });

  auto* bnd = app.add_subcommand("bound", "Upper-bound growth profile");
  bnd->add_option("--dim", o.dim, "Dimension d")->required();
  bnd->add_option("--X", o.bound_X, "Also integrate the recursion up to this radius");
  bnd->callback([&] { action = [&] { return runner.bound(); }; });

  auto* plot = app.add_subcommand("plot-data", "CSV of a two-axis projection");
  plot->add_option("--in", o.in, "Point-set file")->required();
  plot->add_option("--projection", o.projection, "Two axes from x, y, z, w");
  plot->add_option("--out", o.out, "CSV file")->required();
  plot->callback([&] { action = [&] { return runner.plot_data(); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    return action ? action() : kUsageError;
  } catch (const DomainError& e) {
    fmt::print(err, "error: {}\n", e.what());
  } catch (const PreconditionError& e) {
    fmt::print(err, "error: precondition failed: {}\n", e.what());
  } catch (const CapacityError& e) {
    fmt::print(err, "error: {}\n", e.what());
  } catch (const InternalError& e) {
    fmt::print(err, "internal error: {}\n", e.what());
    return kInternalError;
  } catch (const std::exception& e) {
    fmt::print(err, "internal error: {}\n", e.what());
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace nearint::cli
