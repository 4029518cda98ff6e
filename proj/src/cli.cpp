#include "relaxarea/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "relaxarea/execution.hpp"
#include "relaxarea/relaxation.hpp"
#include "relaxarea/report_io.hpp"
#include "relaxarea/topology.hpp"

namespace relaxarea {

namespace {

struct RunConfig {
  std::string config_path;
  std::string field = "vortex";
  int n = 0;  // 0: the field's natural dimension (or the domain's)
  int d = 1;
  int m = 3;
  int disk = 1;
  double twist = 0.0;
  double amplitude = 1.0;
  std::vector<double> value{1.0, 0.0};
  std::string domain;
  double radius = 1.0;
  double tol = 1e-6;
  int grid = 64;
  std::string study = "smoothing";
  std::string construction = "smoothing";
  std::string variant = "ball";
  std::vector<double> eps;
  std::vector<int> k;
  std::vector<double> radii{0.2, 0.9};
  std::string out;
  std::string json_out;
  int threads = 0;
  unsigned long long seed = 0x5EED;
  bool serial = false;
};

FieldKind parse_field(const std::string& s) {
  static const std::map<std::string, FieldKind> kinds{{"vortex", FieldKind::vortex},
                                                      {"planar_vortex", FieldKind::planar_vortex},
                                                      {"vortex_chain", FieldKind::vortex_chain},
                                                      {"sphere_vortex", FieldKind::sphere_vortex},
                                                      {"constant", FieldKind::constant},
                                                      {"smooth_lift", FieldKind::smooth_lift},
                                                      {"hedgehog_projection", FieldKind::hedgehog_projection}};
  const auto it = kinds.find(s);
  if (it == kinds.end()) throw Error(ErrorCode::InvalidParams, "unknown field '" + s + "'");
  return it->second;
}

int natural_dim(FieldKind k) {
  switch (k) {
    case FieldKind::planar_vortex:
    case FieldKind::sphere_vortex:
    case FieldKind::hedgehog_projection:
      return 3;
    default:
      return 2;
  }
}

// "ball3", "cube2", ...
Domain parse_domain(const std::string& s, int n_default, double radius) {
  std::string kind = s.empty() ? "ball" : s;
  int n = n_default;
  if (!kind.empty() && std::isdigit(static_cast<unsigned char>(kind.back()))) {
    n = kind.back() - '0';
    kind.pop_back();
  }
  if (n < 2 || n > 4) throw Error(ErrorCode::InvalidParams, "domain dimension must be 2, 3 or 4");
  if (kind == "ball") return Domain::ball(n, radius, Point::Zero(n));
  if (kind == "cube") return Domain::cube(n, radius, Point::Zero(n));
  throw Error(ErrorCode::InvalidParams, "unknown domain '" + s + "'");
}

VectorField build_field(const RunConfig& c, int n) {
  const FieldKind kind = parse_field(c.field);
  FieldParams p;
  p.n = n;
  p.degree = c.d;
  p.chain_length = c.m;
  p.twist = c.twist;
  p.lift_amplitude = c.amplitude;
  p.constant = Value::Zero(static_cast<int>(c.value.size()));
  for (std::size_t i = 0; i < c.value.size(); ++i) p.constant(static_cast<int>(i)) = c.value[i];
  return make_example_field(kind, p);
}

int field_dim(const RunConfig& c) {
  if (c.n > 0) return c.n;
  if (!c.domain.empty() && std::isdigit(static_cast<unsigned char>(c.domain.back()))) return c.domain.back() - '0';
  return natural_dim(parse_field(c.field));
}

QuadratureOptions quad_options(const RunConfig& c) {
  if (!(c.tol >= 1e-10 && c.tol <= 1e-2)) throw Error(ErrorCode::InvalidParams, "--tol must lie in [1e-10, 1e-2]");
  QuadratureOptions o;
  o.tol = c.tol;
  o.execution = c.serial ? Execution::serial : Execution::parallel;
  return o;
}

Execution exec(const RunConfig& c) { return c.serial ? Execution::serial : Execution::parallel; }

std::vector<double> as_doubles(const std::vector<int>& ks) { return {ks.begin(), ks.end()}; }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

void write_summary(const RunConfig& c, const std::string& text) {
  std::string path = c.json_out;
  if (path.empty() && !c.out.empty()) {
    const auto dot = c.out.find_last_of('.');
    path = (dot == std::string::npos ? c.out : c.out.substr(0, dot)) + ".json";
  }
  if (!path.empty()) write_text(path, text);
}

// ---- subcommands ------------------------------------------------------------------------

int cmd_area(const RunConfig& c, std::ostream& out) {
  const int n = field_dim(c);
  const VectorField u = build_field(c, n);
  const Domain dom = parse_domain(c.domain, n, c.radius);
  QuadratureOptions o = quad_options(c);
  o.throw_on_failure = false;
  const EnergyMetrics e = energy_metrics(u, dom, o);
  if (!c.out.empty())
    write_text(c.out, nlohmann::json({{"field", u.name()}, {"area", e.area.value}, {"error", e.area.error_estimate},
                                      {"converged", e.area.converged}})
                              .dump(2) +
                          "\n");
  out << "area " << format_double(e.area.value) << " +- " << fmt(e.area.error_estimate) << " (" << u.name() << ")\n";
  return e.area.converged ? kExitOk : kExitNoConvergence;
}

int cmd_energy(const RunConfig& c, std::ostream& out) {
  const int n = field_dim(c);
  const VectorField u = build_field(c, n);
  const Domain dom = parse_domain(c.domain, n, c.radius);
  QuadratureOptions o = quad_options(c);
  o.throw_on_failure = false;
  const EnergyMetrics e = energy_metrics(u, dom, o);
  nlohmann::json j{{"field", u.name()},
                   {"A", e.area.value},
                   {"TV", e.tv.value},
                   {"graph_bv", e.graph_bv.value},
                   {"M2", e.minors.value}};
  std::string rhs_text;
  if (u.target_dim() == 2 && u.sphere_valued()) {
    const SingularChain chain = restrict_chain(analytic_chain(u), dom);
    const double mass = chain_mass(chain);
    j["relaxed_rhs"] = e.graph_bv.value + kPi * mass;
    rhs_text = " rhs=" + fmt(e.graph_bv.value + kPi * mass);
  }
  if (!c.out.empty()) write_text(c.out, j.dump(2) + "\n");
  out << "A=" << fmt(e.area.value) << " TV=" << fmt(e.tv.value) << " graphBV=" << fmt(e.graph_bv.value)
      << " M2=" << fmt(e.minors.value) << rhs_text << "\n";
  const bool ok = e.area.converged && e.tv.converged && e.graph_bv.converged && e.minors.converged;
  return ok ? kExitOk : kExitNoConvergence;
}

int cmd_jacobian(const RunConfig& c, std::ostream& out) {
  const int n = field_dim(c);
  const VectorField u = build_field(c, n);
  if (c.grid < 2) throw Error(ErrorCode::InvalidParams, "--grid must be at least 2");
  const GridSpec grid = GridSpec::cube(n, c.radius, c.grid);
  SingularChain chain;
  if (n == 2)
    chain = extract_vortices_2d(u, grid, exec(c));
  else if (n == 3)
    chain = extract_lines_3d(u, grid, exec(c));
  else
    throw Error(ErrorCode::InvalidParams, "jacobian extraction supports n = 2 and n = 3");
  const SingularChain boundary = n == 3 ? interior_boundary(chain, grid) : SingularChain{};
  if (!c.out.empty()) write_chain_csv(chain, c.out);
  out << "cells=" << chain.cells.size() << " mass=" << fmt(chain_mass(chain))
      << " interior_boundary=" << boundary.cells.size() << "\n";
  return kExitOk;
}

int cmd_recover(const RunConfig& c, std::ostream& out) {
  const QuadratureOptions o = quad_options(c);
  const double eps = c.eps.empty() ? 0.1 : c.eps.front();
  const int k = c.k.empty() ? 8 : c.k.front();
  Recovered rec = [&]() -> Recovered {
    if (c.construction == "smoothing") {
      FieldParams p;
      p.degree = c.d;
      return vortex_smoothing_2d(make_example_field(FieldKind::vortex, p), Point::Zero(2), c.d, eps);
    }
    if (c.construction == "dipole") {
      FieldParams p;
      p.n = 3;
      return cone_dipole(make_example_field(FieldKind::planar_vortex, p), make_point({0, 0, -1}),
                         make_point({0, 0, 1}), 1, eps);
    }
    if (c.construction == "removal") {
      FieldParams p;
      p.n = 3;
      return remove_point_singularity(make_example_field(FieldKind::hedgehog_projection, p), Point::Zero(3), eps,
                                      eps * eps);
    }
    if (c.construction == "extension") {
      FieldParams p;
      p.n = 4;
      return homogeneous_cone_extension(make_example_field(FieldKind::hedgehog_projection, p),
                                        make_point({0, 0, 0, -1}), make_point({0, 0, 0, 1}), eps, eps * eps);
    }
    if (c.construction == "ball") return counterexample_sequence(CounterexampleVariant::ball, k);
    if (c.construction == "cylinder") return counterexample_sequence(CounterexampleVariant::cylinder, k);
    if (c.construction == "analogue") return cylinder_analogue_2d(k);
    throw Error(ErrorCode::InvalidParams, "unknown construction '" + c.construction + "'");
  }();
  const EnergyMetrics v = piece_energies(rec, o, false);
  const EnergyMetrics u = piece_energies(rec, o, true);
  nlohmann::json j{{"construction", c.construction},
                   {"field", rec.field.name()},
                   {"pieces", rec.pieces.size()},
                   {"A", v.area.value},
                   {"TV", v.tv.value},
                   {"M2", v.minors.value},
                   {"A_input", u.area.value},
                   {"TV_input", u.tv.value},
                   {"M2_input", u.minors.value}};
  if (!c.out.empty()) write_text(c.out, j.dump(2) + "\n");
  out << rec.field.name() << ": A=" << fmt(v.area.value) << " TV=" << fmt(v.tv.value) << " M2=" << fmt(v.minors.value)
      << " (input A=" << fmt(u.area.value) << ")\n";
  return kExitOk;
}

struct StudyPlan {
  std::string parameter = "eps";
  StudyBuilder builder;
  std::vector<double> schedule;
  std::optional<double> reference_tv;
  std::optional<double> relaxed_rhs;
};

StudyPlan plan_study(const RunConfig& c, const QuadratureOptions& o) {
  StudyPlan p;
  const std::vector<double> eps = c.eps.empty() ? std::vector<double>{0.2, 0.1, 0.05, 0.025} : c.eps;
  auto ks = [&](std::vector<int> def) { return as_doubles(c.k.empty() ? def : c.k); };
  if (c.study == "smoothing") {
    p.builder = smoothing_builder(c.d);
    p.schedule = eps;
    FieldParams fp;
    fp.degree = c.d;
    const VectorField u = make_example_field(FieldKind::vortex, fp);
    const Domain b2 = Domain::ball(2, 1.0, Point::Zero(2));
    p.reference_tv = kTwoPi * std::abs(c.d);
    p.relaxed_rhs = relaxed_area_rhs(u, b2, restrict_chain(analytic_chain(u), b2), o.tol).value;
  } else if (c.study == "dipole" || c.study == "dipole_local") {
    const bool full = c.study == "dipole";
    p.builder = dipole_builder(DipoleProfile::model, full ? Localization::full : Localization::pieces);
    p.schedule = eps;
    if (full) {
      FieldParams fp;
      fp.n = 3;
      const VectorField u = make_example_field(FieldKind::planar_vortex, fp);
      const Domain b3 = Domain::ball(3, 1.0, Point::Zero(3));
      p.relaxed_rhs = relaxed_area_rhs(u, b3, restrict_chain(analytic_chain(u), b3), o.tol).value;
    }
  } else if (c.study == "constant") {
    FieldParams fp;
    fp.constant = make_point({1.0, 0.0});
    p.builder = fixed_field_builder(make_example_field(FieldKind::constant, fp), Domain::ball(2, 1.0, Point::Zero(2)));
    p.schedule = eps;
    p.reference_tv = 0.0;
  } else if (c.study == "chain") {
    p.builder = chain_disk_builder(c.m, c.disk);
    p.schedule = eps;
  } else if (c.study == "counterexample_ball" || c.study == "counterexample_cylinder") {
    const auto v = c.study == "counterexample_ball" ? CounterexampleVariant::ball : CounterexampleVariant::cylinder;
    p.parameter = "k";
    p.builder = counterexample_builder(v, c.radius, Localization::full);
    p.schedule = ks(v == CounterexampleVariant::ball ? std::vector<int>{2, 4, 8, 16} : std::vector<int>{4, 8, 16, 32});
  } else if (c.study == "analogue") {
    p.parameter = "k";
    p.builder = analogue_builder();
    p.schedule = ks({4, 8, 16, 32});
    p.reference_tv = kTwoPi;
  } else {
    throw Error(ErrorCode::InvalidParams, "unknown study '" + c.study + "'");
  }
  return p;
}

int emit_report(const RunConfig& c, const ConvergenceReport& rep, const StudyPlan& plan, std::ostream& out) {
  std::map<std::string, std::string> labels{{"study", c.study}};
  std::map<std::string, double> numbers;
  std::string verdict_text;
  if (plan.reference_tv) {
    const double ref = *plan.reference_tv;
    // A zero reference (constant maps) is judged on the absolute scale.
    const StrictVerdict v = ref > 0.0 ? strict_bv_check(rep, ref, 0.01)
                                      : (rep.tv.available && std::abs(rep.tv.limit) <= 1e-9 ? StrictVerdict::strict
                                                                                            : StrictVerdict::inconclusive);
    labels["verdict"] = to_string(v);
    numbers["reference_tv"] = ref;
    verdict_text = std::string(" verdict=") + to_string(v);
  }
  if (plan.relaxed_rhs) {
    numbers["relaxed_rhs"] = *plan.relaxed_rhs;
    verdict_text += " rhs=" + fmt(*plan.relaxed_rhs);
  }
  if (!c.out.empty()) write_report_csv(rep, c.out);
  write_summary(c, report_summary_json(rep, labels, numbers));
  if (!rep.area.available) {
    out << c.study << ": fewer than three converged rows\n";
    return kExitNoConvergence;
  }
  out << c.study << ": A->" << fmt(rep.area.limit) << " TV->" << fmt(rep.tv.limit) << " M2->" << fmt(rep.minors.limit);
  if (rep.area.rate) out << " rate(A)=" << fmt(*rep.area.rate);
  out << verdict_text << "\n";
  return kExitOk;
}

int cmd_relax(const RunConfig& c, std::ostream& out) {
  const QuadratureOptions o = quad_options(c);
  const StudyPlan plan = plan_study(c, o);
  const ConvergenceReport rep = convergence_study(plan.parameter, plan.builder, plan.schedule, o, exec(c));
  return emit_report(c, rep, plan, out);
}

int cmd_counterexample(const RunConfig& c, std::ostream& out) {
  RunConfig cc = c;
  if (c.variant != "ball" && c.variant != "cylinder")
    throw Error(ErrorCode::InvalidParams, "--variant must be ball or cylinder");
  cc.study = "counterexample_" + c.variant;
  const QuadratureOptions o = quad_options(cc);
  StudyPlan plan = plan_study(cc, o);
  FieldParams fp;
  fp.n = 3;
  const double base =
      energy_metrics(make_example_field(FieldKind::sphere_vortex, fp), Domain::ball(3, c.radius, Point::Zero(3)), o)
          .area.value;
  const ConvergenceReport rep = convergence_study(plan.parameter, plan.builder, plan.schedule, o, exec(cc));
  const double expected = base + (c.variant == "ball" ? 4.0 * kPi / 3.0 : 4.0 * kPi * c.radius);
  out << "A(x/|x|)=" << fmt(base) << " expected limit=" << fmt(expected) << "\n";
  return emit_report(cc, rep, plan, out);
}

int cmd_subadd(const RunConfig& c, std::ostream& out) {
  const QuadratureOptions o = quad_options(c);
  const std::vector<int> ks = c.k.empty() ? std::vector<int>{8, 16, 32, 64} : c.k;
  const SubadditivityReport rep = subadditivity_experiment(c.radii, ks, o, exec(c));
  if (!c.out.empty()) write_subadditivity_csv(rep, c.out);
  write_summary(c, subadditivity_summary_json(rep));
  for (const auto& r : rep.rows)
    out << "r=" << fmt(r.radius) << " ball=" << fmt(r.ball_bound) << " cylinder=" << fmt(r.cylinder_bound) << "\n";
  out << "violation_witnessed=" << (rep.violation_witnessed ? "true" : "false");
  if (rep.witness)
    out << " (R=" << fmt(rep.witness->r_big) << ", r=" << fmt(rep.witness->r_small) << ": " << fmt(rep.witness->lhs)
        << " > " << fmt(rep.witness->rhs) << ")";
  out << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const QuadratureOptions o = quad_options(c);
  std::vector<double> grid = c.eps;
  if (grid.empty())
    for (int j = 0; j <= 6; ++j) grid.push_back(0.2 * std::pow(0.5, j));
  StudyBuilder b;
  if (c.construction == "removal")
    b = removal_builder();
  else if (c.construction == "extension")
    b = extension_builder();
  else
    throw Error(ErrorCode::InvalidParams, "sweep supports --construction removal or extension");
  const ConvergenceReport rep = convergence_study("eps", b, grid, o, exec(c));
  if (!c.out.empty()) write_report_csv(rep, c.out);
  double min_a = std::numeric_limits<double>::infinity(), min_tv = min_a;
  for (const auto& r : rep.rows) {
    if (!r.converged) continue;
    min_a = std::min(min_a, r.metrics.area.value);
    min_tv = std::min(min_tv, r.metrics.tv.value);
  }
  write_summary(c, report_summary_json(rep, {{"construction", c.construction}},
                                       {{"min_area", min_a}, {"min_tv", min_tv}}));
  out << c.construction << ": min A=" << fmt(min_a) << " min TV=" << fmt(min_tv) << " over " << rep.rows.size()
      << " scales\n";
  return kExitOk;
}

// Values from the JSON config file fill options not given on the command line.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParams, std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidParams, "config must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw Error(ErrorCode::InvalidParams, "unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (val.is_array()) {
      for (const auto& e : val) opt->add_result(text(e));
    } else if (val.is_boolean()) {
      if (val.get<bool>()) opt->add_result("true");
    } else {
      opt->add_result(text(val));
    }
    opt->run_callback();
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"relaxarea: relaxed area experiments for maps into the circle and the sphere"};
  app.require_subcommand(1);
  if (const char* env = std::getenv("RELAXAREA_THREADS")) c.threads = std::atoi(env);

  auto common = [&](CLI::App* s) {
    s->add_option("--config", c.config_path, "JSON file with option values (flags win)");
    s->add_option("--tol", c.tol, "relative quadrature tolerance in [1e-10, 1e-2]");
    s->add_option("--threads", c.threads, "worker thread cap (default: RELAXAREA_THREADS)");
    s->add_option("--seed", c.seed, "seed recorded with the run (all kernels are deterministic)");
    s->add_flag("--serial", c.serial, "use the serial reference kernels");
    s->add_option("--out", c.out, "output file");
  };
  auto field_opts = [&](CLI::App* s) {
    s->add_option("--field", c.field, "vortex|planar_vortex|vortex_chain|sphere_vortex|constant|smooth_lift|"
                                      "hedgehog_projection");
    s->add_option("--n", c.n, "source dimension");
    s->add_option("--d", c.d, "vortex degree");
    s->add_option("--m", c.m, "number of disks of vortex_chain");
    s->add_option("--twist", c.twist, "hedgehog target rotation rate");
    s->add_option("--amplitude", c.amplitude, "smooth_lift amplitude");
    s->add_option("--value", c.value, "constant value")->delimiter(',');
  };

  CLI::App* area = app.add_subcommand("area", "area functional of an example field");
  common(area);
  field_opts(area);
  area->add_option("--domain", c.domain, "ball<n> or cube<n>");
  area->add_option("--radius", c.radius, "domain radius / half side");

  CLI::App* energy = app.add_subcommand("energy", "area, total variation, graph BV and minor energies");
  common(energy);
  field_opts(energy);
  energy->add_option("--domain", c.domain, "ball<n> or cube<n>");
  energy->add_option("--radius", c.radius, "domain radius / half side");

  CLI::App* jac = app.add_subcommand("jacobian", "lattice extraction of the singular chain");
  common(jac);
  field_opts(jac);
  jac->add_option("--grid", c.grid, "lattice cells per axis");
  jac->add_option("--radius", c.radius, "half side of the sampled cube");

  CLI::App* rec = app.add_subcommand("recover", "energies of one recovery construction");
  common(rec);
  rec->add_option("--construction", c.construction,
                  "smoothing|dipole|removal|extension|ball|cylinder|analogue");
  rec->add_option("--eps", c.eps, "scale (first value used)")->delimiter(',');
  rec->add_option("--k", c.k, "sequence index (first value used)")->delimiter(',');
  rec->add_option("--d", c.d, "vortex degree");

  CLI::App* relax = app.add_subcommand("relax", "convergence study with extrapolated limits");
  common(relax);
  relax->add_option("--study", c.study,
                    "smoothing|dipole|dipole_local|constant|chain|counterexample_ball|counterexample_cylinder|"
                    "analogue");
  relax->add_option("--eps", c.eps, "scale schedule")->delimiter(',');
  relax->add_option("--k", c.k, "index schedule")->delimiter(',');
  relax->add_option("--d", c.d, "vortex degree");
  relax->add_option("--m", c.m, "chain length");
  relax->add_option("--disk", c.disk, "chain disk index");
  relax->add_option("--radius", c.radius, "localization radius for counterexample studies");
  relax->add_option("--json", c.json_out, "JSON summary path (default: --out with .json)");

  CLI::App* cex = app.add_subcommand("counterexample", "ball and cylinder fillings of x/|x|");
  common(cex);
  cex->add_option("--variant", c.variant, "ball|cylinder");
  cex->add_option("--k", c.k, "index schedule")->delimiter(',');
  cex->add_option("--radius", c.radius, "localization radius");
  cex->add_option("--json", c.json_out, "JSON summary path");

  CLI::App* sub = app.add_subcommand("subadd", "subadditivity experiment");
  common(sub);
  sub->add_option("--radii", c.radii, "radii in (0, 1]")->delimiter(',');
  sub->add_option("--k", c.k, "index schedule")->delimiter(',');
  sub->add_option("--json", c.json_out, "JSON summary path");

  CLI::App* sweep = app.add_subcommand("sweep", "scale scan of a removal construction");
  common(sweep);
  sweep->add_option("--construction", c.construction, "removal|extension");
  sweep->add_option("--eps", c.eps, "scale grid (default 0.2 * 2^-j, j = 0..6)")->delimiter(',');
  sweep->add_option("--json", c.json_out, "JSON summary path");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadArgs;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    if (!c.config_path.empty()) {
      try {
        apply_config(chosen, c.config_path);
      } catch (const CLI::ParseError& e) {
        err << "config: " << e.what() << "\n";
        return kExitBadArgs;
      }
    }
    set_thread_count(c.threads);
    const std::string name = chosen->get_name();
    if (name == "area") return cmd_area(c, out);
    if (name == "energy") return cmd_energy(c, out);
    if (name == "jacobian") return cmd_jacobian(c, out);
    if (name == "recover") return cmd_recover(c, out);
    if (name == "relax") return cmd_relax(c, out);
    if (name == "counterexample") return cmd_counterexample(c, out);
    if (name == "subadd") return cmd_subadd(c, out);
    return cmd_sweep(c, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::NoConvergence:
      case ErrorCode::AmbiguousWinding:
        return kExitNoConvergence;
      case ErrorCode::IoFailure:
        return kExitIo;
      default:
        return kExitBadArgs;
    }
  }
}

}  // namespace relaxarea
