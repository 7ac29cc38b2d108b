#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"

#include "hillfol/blowup/blowup.hpp"
#include "hillfol/floquet/floquet.hpp"
#include "hillfol/integrability/singer.hpp"
#include "hillfol/io/model.hpp"
#include "hillfol/io/svg.hpp"
#include "hillfol/models/hill.hpp"
#include "hillfol/ode/holonomy.hpp"
#include "hillfol/special/bessel.hpp"

using namespace hillfol;
namespace fs = std::filesystem;

namespace {

struct Config {
  std::string model;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::string out;
  int dmax = 4, nmax = 5, qmax = 8, K = 16, n = 2, count = 20, grid = 81, levels = 12, max_iter = 50;
  std::optional<double> r, y0, length, k;
  std::string start, integral = "bessel-2d", nu = "0", z = "1", kind = "J", mode = "second", chart;
  std::string window = "0.1,3,0.1,3";
  double zslice = 0.0;
  bool trace = false;
};

std::vector<double> parse_list(const std::string& s, std::size_t want, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError(what + ": cannot read '" + item + "' as a number");
    }
  }
  if (v.size() != want) throw ArgumentError(what + " needs " + std::to_string(want) + " comma-separated numbers");
  return v;
}

/// "re" or "re,im".
cplx parse_complex(const std::string& s, const std::string& what) {
  auto n = std::count(s.begin(), s.end(), ',');
  auto v = parse_list(s, static_cast<std::size_t>(n) + 1, what);
  if (v.size() > 2) throw ArgumentError(what + " takes re or re,im");
  return v.size() == 1 ? cplx(v[0]) : cplx(v[0], v[1]);
}

std::array<cplx, 2> start_or(const Config& c, double x, double y) {
  if (c.start.empty()) return {x, y};
  auto v = parse_list(c.start, 2, "--start");
  return {v[0], v[1]};
}

ModelDescriptor model_or(const Config& c, const std::string& dflt) {
  return ModelDescriptor::load(c.model.empty() ? dflt : c.model);
}

ToleranceSpec tolerance(const Config& c) { return ToleranceSpec::uniform(c.tol); }

fs::path out_dir(const Config& c) {
  fs::path d = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(d);
  return d;
}

json matrix_json(const Eigen::Matrix2cd& M) {
  return {{complex_to_json(M(0, 0)), complex_to_json(M(0, 1))}, {complex_to_json(M(1, 0)), complex_to_json(M(1, 1))}};
}

// ---- integrals and the trajectories they are audited on ----

struct IntegralSetup {
  FirstIntegral F;
  std::string default_model;
  std::array<cplx, 2> start;
  double length;
  std::optional<OneForm> plane;  // fixed plane model, else taken from the descriptor
};

IntegralSetup integral_setup(const Config& c) {
  const std::string& name = c.integral;
  if (name == "bessel-2d") return {bessel_first_integral_2d(), "omega2", {1.0, 1.0}, 5.0, {}};
  if (name == "bessel-3d") return {bessel_first_integral_3d(), "exp", {1.0, 0.0}, 2.0, {}};
  if (name == "p0-rational") return {rational_first_integral_p0(), "p0", {1.0, 1.0}, 2.0, {}};
  if (name == "p1-liouvillian") return {liouvillian_first_integral_p1(), "p1", {1.0, 0.5}, 2.0, {}};
  if (name == "F_n") return {model_first_integral_F(c.n), "", {1.0, 0.5}, 1.0, divisor_model(c.n)};
  if (name == "G_j") return {model_first_integral_G(c.n), "", {0.7, 0.6}, 1.0, corner_model(c.n)};
  if (name == "bessel-hill") {
    double r = c.r.value_or(0.0), k = c.k.value_or(2.0);
    json m{{"kind", "hill"}, {"p", {{"type", "bessel-hill"}, {"r", r}, {"k", k}}}};
    return {bessel_hill_first_integral(r, k), m.dump(), {1.0, 0.3}, 0.5, {}};
  }
  throw ArgumentError("unknown integral '" + name +
                      "' (bessel-2d, bessel-3d, p0-rational, p1-liouvillian, F_n, G_j, bessel-hill)");
}

Trajectory audit_trajectory(const Config& c, const IntegralSetup& s, json& info) {
  auto st = start_or(c, s.start[0].real(), s.start[1].real());
  double L = c.length.value_or(s.length);
  info["start"] = {complex_to_json(st[0]), complex_to_json(st[1])};
  info["length"] = L;
  if (s.F.arity() == 2) {
    OneForm w = s.plane ? *s.plane : model_or(c, s.default_model).plane();
    info["model"] = w.pretty();
    if (auto why = s.F.singular(st, default_guard)) throw DomainError("start point: " + *why);
    return flow_plane_model(PlaneForm::from_form(w), st[0], st[1], ArcLength{L}, tolerance(c), avoid_singular(s.F));
  }
  ModelDescriptor m = model_or(c, s.default_model);
  info["model"] = m.source;
  return hill_trajectory(m.hill(), ComplexPath::segment(0.0, L), st[0], st[1], tolerance(c));
}

void maybe_csv(const Config& c, const Trajectory& t, const std::vector<std::string>& names, json& result) {
  if (c.out.empty()) return;
  fs::path f = out_dir(c) / (c.integral.empty() ? "trajectory.csv" : c.integral + "_trajectory.csv");
  std::ofstream os(f);
  write_csv(t, os, names);
  result["csv"] = f.string();
}

// ---- subcommands ----

json cmd_integrability(const Config& c) {
  json r{{"command", "integrability"}};
  if (!c.model.empty()) {
    ModelDescriptor m = ModelDescriptor::load(c.model);
    r["model"] = m.source;
    if (m.p_exact) {
      auto h = build_hill(*m.p_exact);
      r["symbolic"] = {{"form", h.form.pretty()},
                       {"contraction", h.contraction().pretty()},
                       {"defect", h.defect()[0].pretty()},
                       {"integrable", h.contraction().is_zero() && h.defect().is_zero()}};
    }
    auto [defect, contraction] = build_hill(m.hill()).numeric_defects(200, c.seed);
    r["numeric"] = {{"points", 200}, {"seed", c.seed}, {"max_defect", defect}, {"max_contraction", contraction}};
    return r;
  }
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> deg(0, 5), num(-9, 9), den(1, 9);
  json cases = json::array();
  bool all = true;
  for (int i = 0; i < c.count; ++i) {
    Poly p(VarList{"z"});
    int d = deg(rng);
    for (int e = 0; e <= d; ++e) p.add_term({e, 0, 0}, GaussRat::fraction(num(rng), den(rng)));
    auto h = build_hill(p);
    bool ok = h.contraction().is_zero() && h.defect().is_zero();
    all = all && ok;
    cases.push_back({{"p", p.pretty()}, {"contraction_zero", h.contraction().is_zero()}, {"defect_zero", h.defect().is_zero()}});
  }
  r["seed"] = c.seed;
  r["cases"] = cases;
  r["all_integrable"] = all;
  return r;
}

json cmd_bessel(const Config& c) {
  cplx nu = parse_complex(c.nu, "--nu"), z = parse_complex(c.z, "--z");
  BesselKind kind;
  if (c.kind == "J") kind = BesselKind::J;
  else if (c.kind == "Y") kind = BesselKind::Y;
  else throw ArgumentError("--kind must be J or Y");
  return {{"command", "bessel"},
          {"kind", c.kind},
          {"nu", complex_to_json(nu)},
          {"z", complex_to_json(z)},
          {"value", complex_to_json(bessel(kind, nu, z))},
          {"derivative", complex_to_json(bessel_deriv(kind, nu, z))}};
}

json cmd_audit(const Config& c) {
  IntegralSetup s = integral_setup(c);
  json r{{"command", "audit"}, {"integral", s.F.name()}, {"tol", c.tol}};
  Trajectory t = audit_trajectory(c, s, r);
  r["drift"] = audit_first_integral(s.F, t);
  r["samples"] = t.samples.size();
  r["status"] = t.status;
  maybe_csv(c, t, s.F.arity() == 2 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x", "y", "z"}, r);
  return r;
}

json cmd_floquet(const Config& c) {
  ModelDescriptor m = model_or(c, "exp");
  Monodromy mon = monodromy(m.hill());
  FloquetData d = floquet_decompose(mon);
  json r{{"command", "floquet"},
         {"model", m.source},
         {"monodromy", matrix_json(mon.M)},
         {"trace", complex_to_json(mon.trace())},
         {"det", complex_to_json(mon.det())},
         {"floquet", d.to_json()}};
  if (d.eigenvectors[0]) {
    auto P = periodic_part(m.hill(), d, 0);
    r["periodic_part"] = {{"defect", P.periodicity_defect()}, {"fourier", fourier_coefficients(P, c.K).to_json()}};
  }
  return r;
}

json cmd_lf_integral(const Config& c) {
  ModelDescriptor m = model_or(c, R"({"kind": "hill", "p": {"type": "affine-exp", "a": 1, "b": 0.1}})");
  LaurentFourierOptions o;
  if (c.mode == "reflected") o.mode = LaurentMode::Reflected;
  else if (c.mode != "second") throw ArgumentError("--mode must be second or reflected");
  FirstIntegral H = laurent_fourier_first_integral(m.hill(), c.K, o);
  auto st = start_or(c, 0.6, 0.3);
  double L = c.length.value_or(1.0);
  Trajectory t = hill_trajectory(m.hill(), ComplexPath::segment(0.0, L), st[0], st[1], ToleranceSpec::uniform(std::min(c.tol, 1e-12)));
  return {{"command", "lf-integral"},
          {"model", m.source},
          {"integral", H.name()},
          {"K", c.K},
          {"mode", c.mode},
          {"start", {complex_to_json(st[0]), complex_to_json(st[1])}},
          {"length", L},
          {"drift", audit_first_integral(H, t)},
          {"samples", t.samples.size()}};
}

json cmd_darboux(const Config& c) {
  ModelDescriptor m = model_or(c, "omega2");
  DarbouxOptions o;
  o.seed = c.seed;
  json r = darboux_search(m.plane(), c.dmax, o).to_json();
  r["command"] = "darboux";
  r["model"] = m.source;
  r["dmax"] = c.dmax;
  return r;
}

json cmd_singer(const Config& c) {
  ModelDescriptor m = model_or(c, "omega2");
  DarbouxOptions o;
  o.seed = c.seed;
  auto cert = singer_search(m.plane(), darboux_search(m.plane(), c.dmax, o), c.nmax, c.qmax);
  json r = cert.to_json();
  r["command"] = "singer";
  r["model"] = m.source;
  r["certificate"] = cert.found ? "witness" : "non-existence";
  return r;
}

json cmd_blowup(const Config& c) {
  if (!c.chart.empty()) {
    ModelDescriptor m = model_or(c, "omega2");
    BlowupStep s = blowup_chart(m.plane(), parse_chart(c.chart));
    return {{"command", "blowup"},
            {"model", m.source},
            {"step", s.to_json()},
            {"factorization_exact", s.factorization_exact()},
            {"origin", classify(s.strict, {GaussRat(0), GaussRat(0)}).to_json()}};
  }
  DesingSequence seq = desing_sequence(c.n);
  json r = seq.to_json();
  r["command"] = "blowup";
  r["n"] = c.n;
  json audits = json::array();
  auto st = start_or(c, 1.0, 0.5);
  for (int k = 1; k <= c.n; ++k) audits.push_back(audit_model_integrals(ModelKind::Divisor, k, st[0], st[1], tolerance(c)).to_json());
  for (int j = 1; j < c.n; ++j) audits.push_back(audit_model_integrals(ModelKind::Corner, j, 0.7, 0.6, tolerance(c)).to_json());
  r["audits"] = audits;
  return r;
}

json cmd_holonomy(const Config& c) {
  double r0 = c.r.value_or(1.0);
  cplx y0 = c.y0.value_or(0.05);
  cplx h = holonomy(r0, y0), h0 = holonomy(r0, 0.0);
  auto F = bessel_first_integral_2d();
  std::array<cplx, 2> a{r0, h}, b{r0, y0};
  return {{"command", "holonomy"},
          {"r0", r0},
          {"y0", complex_to_json(y0)},
          {"h_y0", complex_to_json(h)},
          {"h_0", complex_to_json(h0)},
          {"h_prime_0", complex_to_json(holonomy_derivative(r0, 0.0))},
          {"F_defect", std::abs(F(a) - F(b))}};
}

json cmd_porbit(const Config& c) {
  double r = c.r.value_or(0.25);
  PeriodicOrbit o = c.start.empty() ? periodic_orbit_from_scan(r) : periodic_orbit(r, parse_complex(c.start, "--start"), ToleranceSpec::uniform(1e-13), c.max_iter);
  return {{"command", "porbit"},
          {"r", r},
          {"x0", complex_to_json(o.x0)},
          {"residual", o.residual},
          {"iterations", o.iterations},
          {"multiplier", complex_to_json(o.multiplier)}};
}

json cmd_plot(const Config& c) {
  IntegralSetup s = integral_setup(c);
  auto w = parse_list(c.window, 4, "--window");
  if (!(w[1] > w[0] && w[3] > w[2])) throw ArgumentError("--window must be xmin,xmax,ymin,ymax with min < max");
  if (c.grid < 3 || c.grid > 1001) throw ArgumentError("--grid must lie in 3..1001");
  ScalarGrid g{w[0], w[1], w[2], w[3], c.grid, c.grid, {}};
  std::size_t excluded = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      std::vector<cplx> p{g.x(i), g.y(j)};
      if (s.F.arity() == 3) p.push_back(c.zslice);
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!s.F.singular(p, default_guard)) v = std::log(std::abs(s.F(p)));
      if (!std::isfinite(v)) ++excluded;
      g.v.push_back(v);
    }
  SvgCanvas svg(w[0], w[1], w[2], w[3]);
  auto levels = g.quantile_levels(c.levels);
  std::size_t segments = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    auto segs = contour(g, levels[k]);
    segments += segs.size();
    for (const auto& sg : segs) svg.line(sg, SvgCanvas::ramp(levels.size() > 1 ? double(k) / (levels.size() - 1) : 0.5));
  }
  json r{{"command", "plot"}, {"integral", s.F.name()}, {"window", w}, {"grid", c.grid}, {"excluded_points", excluded}};
  if (c.trace) {
    json info;
    Trajectory t = audit_trajectory(c, s, info);
    std::vector<std::pair<double, double>> pts;
    for (const auto& smp : t.samples) pts.push_back({smp.y[0].real(), smp.y[1].real()});
    svg.polyline(pts, "black");
    r["trace"] = info;
  }
  svg.text(40, 20, "log|" + s.F.name() + "| level curves");
  fs::path f = out_dir(c) / (c.integral + ".svg");
  std::ofstream(f) << svg.str();
  json lv = json::array();
  for (double l : levels) lv.push_back(l);
  r["levels"] = lv;
  r["segments"] = segments;
  r["svg"] = f.string();
  return r;
}

json error_json(const std::string& type, const std::string& message) {
  return {{"error", {{"type", type}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hill foliation toolkit: integrability checks, first-integral audits, Floquet data, "
               "Darboux and Singer searches, blow-ups."};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--model", c.model, "model descriptor: JSON file, inline JSON, or built-in name");
  app.add_option("--tol", c.tol, "integrator tolerance")->check(CLI::Range(1e-15, 0.5));
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--out", c.out, "directory for data files");

  auto* integ = app.add_subcommand("integrability", "exact and numeric integrability defect of the Hill form");
  integ->add_option("--count", c.count, "random polynomials p when no model is given")->check(CLI::Range(1, 1000));
  auto* bes = app.add_subcommand("bessel", "evaluate J or Y and its derivative");
  bes->add_option("--nu", c.nu, "order, re or re,im");
  bes->add_option("--z", c.z, "argument, re or re,im");
  bes->add_option("--kind", c.kind, "J or Y");
  auto* aud = app.add_subcommand("audit", "first-integral drift along a trajectory");
  auto* plot = app.add_subcommand("plot", "SVG of log|F| level curves");
  for (auto* sc : {aud, plot}) {
    sc->add_option("--integral", c.integral, "bessel-2d, bessel-3d, p0-rational, p1-liouvillian, F_n, G_j, bessel-hill");
    sc->add_option("--n", c.n, "index n of F_n or j of G_j");
    sc->add_option("--start", c.start, "x0,y0");
    sc->add_option("--length", c.length, "arc length (plane) or z-extent (Hill)");
    sc->add_option("--r", c.r, "Bessel order for bessel-hill");
    sc->add_option("--k", c.k, "scale for bessel-hill");
  }
  plot->add_option("--window", c.window, "xmin,xmax,ymin,ymax");
  plot->add_option("--grid", c.grid, "samples per side");
  plot->add_option("--levels", c.levels, "number of level curves");
  plot->add_option("--zslice", c.zslice, "z for three-variable integrals");
  plot->add_flag("--trace", c.trace, "overlay the audit trajectory");
  auto* flo = app.add_subcommand("floquet", "monodromy, multipliers, exponents, Fourier data");
  flo->add_option("--K", c.K, "Fourier truncation")->check(CLI::Range(0, 30));
  auto* lf = app.add_subcommand("lf-integral", "drift of the truncated Laurent-Fourier integral");
  lf->add_option("--K", c.K, "Fourier truncation")->check(CLI::Range(0, 30));
  lf->add_option("--mode", c.mode, "second or reflected");
  lf->add_option("--start", c.start, "x0,y0");
  lf->add_option("--length", c.length, "z-extent");
  auto* dar = app.add_subcommand("darboux", "invariant algebraic curves up to a degree");
  dar->add_option("--dmax", c.dmax, "degree bound");
  auto* sin = app.add_subcommand("singer", "Liouvillian integrating-factor search");
  sin->add_option("--dmax", c.dmax, "degree bound for the curve search");
  sin->add_option("--nmax", c.nmax, "bound on the sum of pole orders");
  sin->add_option("--qmax", c.qmax, "bound on deg Q");
  auto* blo = app.add_subcommand("blowup", "desingularization of the fundamental form");
  blo->add_option("--n", c.n, "number of blow-ups")->check(CLI::Range(1, 64));
  blo->add_option("--chart", c.chart, "single step on --model: (x, xy) or (xy, y)");
  blo->add_option("--start", c.start, "start point for the divisor-model audits");
  auto* hol = app.add_subcommand("holonomy", "holonomy of the separatrix y = 0");
  hol->add_option("--r", c.r, "radius r0 of the transversal");
  hol->add_option("--y0", c.y0, "transversal coordinate");
  auto* por = app.add_subcommand("porbit", "periodic orbit by shooting");
  por->add_option("--r", c.r, "parameter r");
  por->add_option("--start", c.start, "Newton guess, re or re,im (default: grid scan)");
  por->add_option("--max-iter", c.max_iter, "Newton iteration cap with --start")->check(CLI::Range(0, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("UsageError", e.what()).dump(2) << "\n";
    return 1;
  }

  try {
    json r;
    if (*integ) r = cmd_integrability(c);
    else if (*bes) r = cmd_bessel(c);
    else if (*aud) r = cmd_audit(c);
    else if (*flo) r = cmd_floquet(c);
    else if (*lf) r = cmd_lf_integral(c);
    else if (*dar) r = cmd_darboux(c);
    else if (*sin) r = cmd_singer(c);
    else if (*blo) r = cmd_blowup(c);
    else if (*hol) r = cmd_holonomy(c);
    else if (*por) r = cmd_porbit(c);
    else if (*plot) r = cmd_plot(c);
    std::cout << r.dump(2) << "\n";
    return 0;
  } catch (const ArgumentError& e) {
    std::cout << error_json("ArgumentError", e.what()).dump(2) << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cout << error_json("DomainError", e.what()).dump(2) << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cout << error_json("ConvergenceError", e.what()).dump(2) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cout << error_json("Error", e.what()).dump(2) << "\n";
    return 1;
  }
}
