#include "airylab/config.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <set>
#include <sstream>

#include "airylab/experiments.hpp"
#include "airylab/fourier.hpp"
#include "airylab/io.hpp"
#include "airylab/operators.hpp"
#include "airylab/quadrature.hpp"

namespace airylab {
namespace {

using nlohmann::json;

// Typed access to one JSON object; remembers which keys were read so that the rest can
// be rejected.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_ + " must be an object");
  }

  [[noreturn]] static void fail(const std::string& msg) { throw ConfigError(msg); }

  const std::string& path() const { return path_; }
  bool has(const std::string& k) const { return j_.contains(k); }

  const json& raw(const std::string& k) {
    if (!j_.contains(k)) fail("missing required key " + where(k));
    used_.insert(k);
    return j_.at(k);
  }

  double number(const std::string& k) { return as_number(raw(k), where(k)); }
  double number(const std::string& k, double dflt) { return has(k) ? number(k) : dflt; }

  std::size_t count(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_number_integer() && !v.is_number_unsigned()) fail(where(k) + " must be an integer");
    if (v.get<long long>() < 0) fail(where(k) + " must be non-negative");
    return v.get<std::size_t>();
  }

  bool boolean(const std::string& k, bool dflt) {
    if (!has(k)) return dflt;
    const json& v = raw(k);
    if (!v.is_boolean()) fail(where(k) + " must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_string()) fail(where(k) + " must be a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& k, const std::string& dflt) {
    return has(k) ? string(k) : dflt;
  }

  std::vector<double> numbers(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_array() || v.empty()) fail(where(k) + " must be a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_number(v[i], where(k) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  Reader child(const std::string& k) { return Reader(raw(k), where(k)); }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) fail("unknown key " + where(k));
    }
  }

  std::string where(const std::string& k) const { return "'" + path_ + "." + k + "'"; }

 private:
  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where + " must be finite");
    return d;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

Window parse_window(Reader r) {
  const std::string kind_name = r.string("kind");
  WindowKind kind;
  try {
    kind = window_kind_from_string(kind_name);
  } catch (const std::invalid_argument& e) {
    Reader::fail(r.where("kind") + ": " + e.what());
  }
  Window w;
  w.kind = kind;
  w.interior_fraction = r.number("interior_fraction", kind == WindowKind::Rect ? 1.0 : 0.6);
  w.support_fraction =
      r.number("support_fraction", kind == WindowKind::Rect ? w.interior_fraction : 1.0);
  r.finish();
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    Reader::fail(r.path() + ": " + e.what());
  }
  return w;
}

Window optional_window(Reader& r, const std::string& k, const Window& dflt) {
  return r.has(k) ? parse_window(r.child(k)) : dflt;
}

Windows parse_windows(Reader& r) {
  Windows w;
  w.comparison = optional_window(r, "comparison", w.comparison);
  w.apodization = optional_window(r, "apodization", w.apodization);
  return w;
}

CoherentParams parse_coherent(Reader r) {
  CoherentParams c;
  c.eps = r.number("eps");
  c.xi = r.number("xi", 0.0);
  c.t = r.number("t", 0.0);
  r.finish();
  return c;
}

GaussianParams parse_gaussian(Reader r) {
  GaussianParams g;
  g.x0 = r.number("x0", 0.0);
  g.p0 = r.number("p0", 0.0);
  g.sigma = r.number("sigma", 1.0);
  if (!(g.sigma > 0)) Reader::fail(r.where("sigma") + " must be positive");
  r.finish();
  return g;
}

StateSpec parse_state(Reader r) {
  StateSpec s;
  const std::string kind = r.string("kind");
  if (kind == "perelomov") {
    s.kind = StateKind::Perelomov;
    s.coherent.eps = r.number("eps");
    s.coherent.xi = r.number("xi", 0.0);
    s.coherent.t = r.number("t", 0.0);
  } else if (kind == "gaussian") {
    s.kind = StateKind::Gaussian;
    s.gaussian.x0 = r.number("x0", 0.0);
    s.gaussian.p0 = r.number("p0", 0.0);
    s.gaussian.sigma = r.number("sigma", 1.0);
  } else if (kind == "xi_eigenstate") {
    s.kind = StateKind::XiEigenstate;
    s.coherent.eps = 0.0;
    s.coherent.xi = r.number("xi", 0.0);
    s.coherent.t = r.number("t");
    if (s.coherent.t == 0.0) Reader::fail(r.where("t") + " must be nonzero for xi_eigenstate");
  } else if (kind == "berry_balazs") {
    s.kind = StateKind::BerryBalazs;
    s.B = r.number("B");
    if (s.B == 0.0) Reader::fail(r.where("B") + " must be nonzero");
  } else {
    Reader::fail(r.where("kind") + " must be one of perelomov, gaussian, xi_eigenstate, berry_balazs");
  }
  try {
    s.rep = representation_from_string(r.string("representation", "position"));
  } catch (const std::invalid_argument& e) {
    Reader::fail(r.where("representation") + ": " + e.what());
  }
  if (r.has("apodization")) s.apodization = parse_window(r.child("apodization"));
  r.finish();
  if (s.kind == StateKind::Perelomov && s.rep == Representation::Position && s.coherent.eps == 0.0 &&
      s.coherent.t == 0.0) {
    Reader::fail(r.path() + ": eps = 0 with t = 0 has no position closed form; use representation \"momentum\"");
  }
  return s;
}

std::vector<double> parse_lattice(Reader& r, const std::string& k) {
  const json& v = r.raw(k);
  if (v.is_array()) return r.numbers(k);
  Reader l(v, r.path() + "." + k);
  const double start = l.number("start");
  const double step = l.number("step");
  const std::size_t count = l.count("count");
  l.finish();
  if (count < 2 || count > 8192) Reader::fail(l.where("count") + " must lie in [2, 8192]");
  if (!(step > 0)) Reader::fail(l.where("step") + " must be positive");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  return out;
}

Grid parse_grid(Reader r, double hbar) {
  const std::size_t n = r.count("n_points");
  const double lo = r.number("x_min");
  const double hi = r.number("x_max");
  r.finish();
  try {
    return make_grid(n, lo, hi, hbar);
  } catch (const std::invalid_argument& e) {
    Reader::fail(r.path() + ": " + e.what());
  }
}

struct Context {
  std::optional<Grid> grid;
  PhysParams phys;

  const Grid& need_grid(const std::string& experiment) const {
    if (!grid) throw ConfigError("experiment '" + experiment + "' requires a top-level 'grid'");
    return *grid;
  }
};

Job parse_job(const json& spec, const std::string& path, const Context& ctx) {
  Reader r(spec, path);
  Job job;
  job.spec = spec;
  job.name = r.string("name");
  const std::string& name = job.name;
  const PhysParams phys = ctx.phys;

  if (name == "eigenrelation") {
    const Grid grid = ctx.need_grid(name);
    const CoherentParams c = parse_coherent(r.child("state"));
    if (c.eps == 0.0 && c.t == 0.0) Reader::fail(path + ": eps = 0 requires t != 0");
    const double shift = r.number("eigenvalue_shift", 0.0);
    const double tol = r.number("tolerance", 1e-6);
    const Windows w = parse_windows(r);
    job.run = [=] { return eigenrelation_residual(c, grid, phys, w, shift, tol); };
  } else if (name == "acceleration") {
    const Grid grid = ctx.need_grid(name);
    const CoherentParams c = parse_coherent(r.child("state"));
    if (c.eps == 0.0) Reader::fail(path + ": acceleration needs eps != 0");
    const std::vector<double> taus = r.numbers("taus");
    if (taus.size() < 3) Reader::fail(r.where("taus") + " needs at least 3 times");
    const double tol = r.number("tolerance", 1e-2);
    const Windows w = parse_windows(r);
    job.run = [=] { return acceleration_fit(c, taus, grid, phys, w, tol); };
  } else if (name == "shape_distortion") {
    const Grid grid = ctx.need_grid(name);
    const CoherentParams c = parse_coherent(r.child("state"));
    if (c.eps == 0.0) Reader::fail(path + ": shape_distortion needs eps != 0");
    const double tau = r.number("tau");
    const double tol = r.number("tolerance", 1e-8);
    const Windows w = parse_windows(r);
    if (r.has("probe")) {
      const GaussianParams g = parse_gaussian(r.child("probe"));
      job.run = [=] {
        ExperimentReport rep =
            shape_distortion(gaussian_packet(g, grid, phys), c.eps, tau, phys, w, tol);
        rep.name = "shape_distortion_gaussian";
        return rep;
      };
    } else {
      job.run = [=] { return shape_distortion(c, tau, grid, phys, w, tol); };
    }
  } else if (name == "evolution_equivalence") {
    const Grid grid = ctx.need_grid(name);
    const CoherentParams c = parse_coherent(r.child("state"));
    if (c.eps == 0.0) Reader::fail(path + ": evolution_equivalence needs eps != 0");
    const double tau = r.number("tau");
    const bool drop = r.boolean("drop_phase", false);
    const double ftol = r.number("fidelity_tolerance", 1e-8);
    const double ptol = r.number("phase_tolerance", 1e-6);
    const Windows w = parse_windows(r);
    job.run = [=] { return evolution_equivalence(c, tau, grid, phys, w, drop, ftol, ptol); };
  } else if (name == "overlap_scan") {
    const double eps_ref = r.number("eps_ref");
    const std::vector<double> eps_list = r.numbers("eps_list");
    for (double e : eps_list) {
      if (e == eps_ref) Reader::fail(r.where("eps_list") + " must not contain eps_ref");
    }
    if (eps_list.size() < 2) Reader::fail(r.where("eps_list") + " needs at least 2 values");
    const double xi = r.number("xi", 0.0);
    const double t = r.number("t", 0.0);
    const double xi_alt = r.number("xi_alt", xi + 1.0);
    const double tol = r.number("exponent_tolerance", 1e-2);
    job.run = [=] { return overlap_scan(eps_ref, eps_list, xi, t, xi_alt, phys, tol); };
  } else if (name == "basis_orthonormality") {
    const Grid grid = ctx.need_grid(name);
    const double eps = r.number("eps");
    const double t = r.number("t", 0.0);
    const std::vector<double> lattice = parse_lattice(r, "xi_lattice");
    const GaussianParams g = r.has("probe") ? parse_gaussian(r.child("probe")) : GaussianParams{};
    const Window w = optional_window(r, "window", Window::rect());
    const double ftol = r.number("flatness_tolerance", 0.02);
    const double smin = r.number("suppression_min", 1e3);
    const double rtol = r.number("reconstruction_tolerance", 1e-3);
    job.run = [=] {
      return basis_orthonormality(eps, lattice, t, grid, phys, g, w, ftol, smin, rtol);
    };
  } else if (name == "k_conservation") {
    const Grid grid = ctx.need_grid(name);
    const GaussianParams g = r.has("probe") ? parse_gaussian(r.child("probe")) : GaussianParams{};
    const double v = r.number("boost_v", 0.0);
    const std::vector<double> taus = r.numbers("taus");
    const Window w = optional_window(r, "window", Window::rect());
    const double tol = r.number("tolerance", 1e-10);
    const double ltol = r.number("leakage_tolerance", 1e-12);
    job.run = [=] {
      WaveField psi = gaussian_packet(g, grid, phys);
      if (v != 0.0) psi = boost(psi, {v, 0.0}, phys);
      return k_expectation_series(psi, taus, phys, w, tol, ltol);
    };
  } else if (name == "boost_covariance") {
    const Grid grid = ctx.need_grid(name);
    const double v = r.number("v");
    const double tau = r.number("tau");
    const double tol = r.number("tolerance", 1e-8);
    const double ltol = r.number("leakage_tolerance", 1e-12);
    const Window w = optional_window(r, "window", Window::rect());
    std::optional<StateSpec> st;
    GaussianParams g;
    if (r.has("state")) {
      st = parse_state(r.child("state"));
    } else if (r.has("probe")) {
      g = parse_gaussian(r.child("probe"));
    }
    job.run = [=] {
      const WaveField psi = st ? st->build(grid, phys) : gaussian_packet(g, grid, phys);
      return boost_covariance_residual(psi, v, tau, phys, w, tol, ltol);
    };
  } else if (name == "berry_balazs") {
    const Grid grid = ctx.need_grid(name);
    const double B = r.number("B");
    if (B == 0.0) Reader::fail(r.where("B") + " must be nonzero");
    const std::vector<double> times = r.numbers("times");
    if (times.size() < 3) Reader::fail(r.where("times") + " needs at least 3 times");
    const double ctol = r.number("coefficient_tolerance", 1e-2);
    const double dtol = r.number("distortion_tolerance", 1e-8);
    const Windows w = parse_windows(r);
    job.run = [=] { return berry_balazs_trajectory(B, times, grid, phys, w, ctol, dtol); };
  } else if (name == "representation_cross_check") {
    const Grid grid = ctx.need_grid(name);
    const CoherentParams c = parse_coherent(r.child("state"));
    if (c.eps == 0.0 && c.t == 0.0) Reader::fail(path + ": eps = 0 requires t != 0");
    const Window w = optional_window(r, "window", Window::tukey(0.3, 0.5));
    const double tol = r.number("tolerance", 1e-6);
    job.run = [=] { return representation_cross_check(c, grid, phys, w, tol); };
  } else if (name == "eps_zero_limit") {
    const Grid grid = ctx.need_grid(name);
    const double xi = r.number("xi", 0.0);
    const double t = r.number("t");
    if (t == 0.0) Reader::fail(r.where("t") + " must be nonzero");
    const std::vector<double> eps_list = r.numbers("eps_list");
    Windows w{Window::tukey(0.4, 0.6), Window::planck(0.8, 0.96)};
    w.comparison = optional_window(r, "comparison", w.comparison);
    w.apodization = optional_window(r, "apodization", w.apodization);
    const double pc = r.number("momentum_cutoff", 3.0);
    if (!(pc > 0)) Reader::fail(r.where("momentum_cutoff") + " must be positive");
    job.run = [=] { return eps_zero_limit(xi, t, eps_list, grid, phys, w, pc); };
  } else if (name == "eps_infinity_limit") {
    const Grid grid = ctx.need_grid(name);
    const double xi = r.number("xi", 0.0);
    const double tau = r.number("tau");
    const std::vector<double> eps_list = r.numbers("eps_list");
    for (double e : eps_list) {
      if (e == 0.0) Reader::fail(r.where("eps_list") + " must not contain 0");
    }
    const Windows w = parse_windows(r);
    job.run = [=] { return eps_infinity_limit(xi, tau, eps_list, grid, phys, w); };
  } else if (name == "commutators") {
    const Grid grid = ctx.need_grid(name);
    const GaussianParams g = r.has("probe") ? parse_gaussian(r.child("probe")) : GaussianParams{};
    const double t = r.number("t", 0.7);
    const double tol = r.number("tolerance", 1e-7);
    job.run = [=] { return commutator_table(g, grid, phys, t, tol); };
  } else {
    Reader::fail(r.where("name") + ": unknown experiment '" + name + "'");
  }
  r.finish();
  return job;
}

Command parse_command(const std::string& s) {
  if (s == "state") return Command::State;
  if (s == "evolve") return Command::Evolve;
  if (s == "verify") return Command::Verify;
  if (s == "scan") return Command::Scan;
  throw ConfigError("'command' must be one of state, evolve, verify, scan (got '" + s + "')");
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::State: return "state";
    case Command::Evolve: return "evolve";
    case Command::Verify: return "verify";
    case Command::Scan: return "scan";
  }
  return "?";
}

// Sets doc[a][b]...[z] = value; intermediate objects must already exist.
void set_dotted(json& doc, const std::string& dotted, double value) {
  json* cur = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("'scan.parameter' has an empty path component");
    if (!cur->is_object()) throw ConfigError("'scan.parameter' path '" + dotted + "' does not name an object field");
    if (dot == std::string::npos) {
      (*cur)[key] = value;
      return;
    }
    if (!cur->contains(key)) throw ConfigError("'scan.parameter' path '" + dotted + "' is missing '" + key + "'");
    cur = &(*cur)[key];
    start = dot + 1;
  }
}

std::string file_stem(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
  return out;
}

ExperimentReport run_job(const Job& job) {
  try {
    return job.run();
  } catch (const WindowEscape& e) {
    ExperimentReport r;
    r.name = job.name;
    r.config = job.spec;
    r.judge("window_escape", 1.0, Comparison::Less, 0.5);
    r.config["error"] = e.what();
    return r;
  } catch (const QuadratureError& e) {
    ExperimentReport r;
    r.name = job.name;
    r.config = job.spec;
    r.judge("quadrature_error_estimate", e.estimate(), Comparison::Less, 0.0);
    r.config["error"] = e.what();
    return r;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("experiment '" + job.name + "': " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError("experiment '" + job.name + "': " + e.what());
  }
}

std::vector<ExperimentReport> run_jobs(const std::vector<Job>& jobs, std::size_t workers) {
  std::vector<ExperimentReport> out(jobs.size());
  if (workers <= 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = run_job(jobs[i]);
    return out;
  }
  for (std::size_t base = 0; base < jobs.size(); base += workers) {
    std::vector<std::future<ExperimentReport>> fs;
    const std::size_t end = std::min(jobs.size(), base + workers);
    for (std::size_t i = base; i < end; ++i) {
      fs.push_back(std::async(std::launch::async, [&jobs, i] { return run_job(jobs[i]); }));
    }
    // Collect everything before rethrowing so that no task outlives `jobs`.
    std::exception_ptr first;
    for (std::size_t i = base; i < end; ++i) {
      try {
        out[i] = fs[i - base].get();
      } catch (...) {
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
  }
  return out;
}

void log_report(std::ostream& log, const ExperimentReport& r) {
  log << r.name << ": " << (r.pass() ? "PASS" : "FAIL");
  for (const auto& c : r.checks) {
    log << "  " << c.metric << "=" << format_double(c.value) << " (" << to_string(c.cmp) << " "
        << format_double(c.threshold) << ")";
  }
  log << '\n';
}

// Writes the report's series as CSV, and as an SVG against the first abscissa found.
void write_series(const ExperimentReport& r, const std::string& stem,
                  const std::filesystem::path& out_dir, const OutputSpec& outputs,
                  std::vector<std::string>& artifacts) {
  if (r.series.empty()) return;
  const std::size_t len = r.series.begin()->second.size();
  for (const auto& [k, v] : r.series) {
    if (v.size() != len) return;
  }
  std::string abscissa;
  for (const char* cand : {"t", "eps", "delta_eps"}) {
    if (r.series.count(cand)) {
      abscissa = cand;
      break;
    }
  }
  if (outputs.csv) {
    CsvTable t;
    if (r.series.count("t") && r.series.count("x_peak")) {
      t = trajectory_table(r.series.at("t"), r.series.at("x_peak"));
    } else {
      if (!abscissa.empty()) {
        t.header.push_back(abscissa);
        t.columns.push_back(r.series.at(abscissa));
      }
      for (const auto& [k, v] : r.series) {
        if (k == abscissa) continue;
        t.header.push_back(k);
        t.columns.push_back(v);
      }
    }
    const std::string name = stem + ".csv";
    write_csv(t, out_dir / name);
    artifacts.push_back(name);
  }
  if (outputs.svg && !abscissa.empty() && len > 0) {
    std::vector<PlotSeries> ps;
    for (const auto& [k, v] : r.series) {
      if (k != abscissa) ps.push_back({k, r.series.at(abscissa), v});
    }
    if (ps.empty()) return;
    const std::string name = stem + ".svg";
    write_svg(ps, out_dir / name, {r.name, abscissa, ""});
    artifacts.push_back(name);
  }
}

}  // namespace

WaveField StateSpec::build(const Grid& grid, const PhysParams& phys) const {
  WaveField f = [&] {
    switch (kind) {
      case StateKind::Perelomov: return perelomov_state(coherent, rep, grid, phys);
      case StateKind::Gaussian: return gaussian_packet(gaussian, grid, phys);
      case StateKind::XiEigenstate: return xi_eigenstate_x(coherent.xi, coherent.t, grid, phys);
      case StateKind::BerryBalazs: return berry_balazs_initial(B, grid, phys);
    }
    throw std::logic_error("unhandled state kind");
  }();
  f = to_representation(f, rep);
  if (apodization) f = apply_window(to_representation(f, Representation::Position), *apodization);
  return to_representation(f, rep);
}

RunConfig parse_run_config(const json& doc) {
  Reader top(doc, "config");
  RunConfig cfg;
  cfg.raw = doc;
  cfg.command = parse_command(top.string("command"));

  if (top.has("phys")) {
    Reader p = top.child("phys");
    cfg.phys.hbar = p.number("hbar", 1.0);
    cfg.phys.m = p.number("m", 1.0);
    p.finish();
    try {
      cfg.phys.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("'config.phys': ") + e.what());
    }
  }
  if (top.has("grid")) cfg.grid = parse_grid(top.child("grid"), cfg.phys.hbar);
  if (top.has("outputs")) {
    Reader o = top.child("outputs");
    cfg.outputs.csv = o.boolean("csv", true);
    cfg.outputs.svg = o.boolean("svg", true);
    o.finish();
  }
  const Context ctx{cfg.grid, cfg.phys};

  switch (cfg.command) {
    case Command::State:
    case Command::Evolve:
      if (!cfg.grid) throw ConfigError("command '" + std::string(to_string(cfg.command)) + "' requires 'grid'");
      cfg.state = parse_state(top.child("state"));
      if (cfg.command == Command::Evolve) cfg.times = top.numbers("times");
      break;
    case Command::Verify:
      if (top.has("experiment") == top.has("experiments")) {
        throw ConfigError("command 'verify' needs exactly one of 'experiment' or 'experiments'");
      }
      if (top.has("experiment")) {
        cfg.jobs.push_back(parse_job(top.raw("experiment"), "config.experiment", ctx));
      } else {
        const json& list = top.raw("experiments");
        if (!list.is_array() || list.empty()) throw ConfigError("'config.experiments' must be a non-empty array");
        for (std::size_t i = 0; i < list.size(); ++i) {
          cfg.jobs.push_back(parse_job(list[i], "config.experiments[" + std::to_string(i) + "]", ctx));
        }
      }
      break;
    case Command::Scan: {
      const json& base = top.raw("experiment");
      Reader s = top.child("scan");
      cfg.scan_parameter = s.string("parameter");
      cfg.scan_values = s.numbers("values");
      s.finish();
      for (std::size_t i = 0; i < cfg.scan_values.size(); ++i) {
        json spec = base;
        set_dotted(spec, cfg.scan_parameter, cfg.scan_values[i]);
        Job job = parse_job(spec, "config.experiment", ctx);
        job.name += "[" + cfg.scan_parameter + "=" + format_double(cfg.scan_values[i]) + "]";
        cfg.jobs.push_back(std::move(job));
      }
      break;
    }
  }
  top.finish();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_run_config(doc);
}

std::size_t worker_count() {
  const char* v = std::getenv("AIRY_LAB_WORKERS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) return 1;
  return static_cast<std::size_t>(std::min(n, 64L));
}

int execute(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  std::vector<ExperimentReport> reports;
  std::vector<std::string> artifacts;

  if (cfg.command == Command::State || cfg.command == Command::Evolve) {
    WaveField psi0 = [&] {
      try {
        return cfg.state->build(*cfg.grid, cfg.phys);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("state: ") + e.what());
      } catch (const std::domain_error& e) {
        throw ConfigError(std::string("state: ") + e.what());
      }
    }();
    ExperimentReport r;
    r.name = std::string(to_string(cfg.command));
    r.config = cfg.raw;
    std::vector<PlotSeries> plots;
    const std::vector<double> times = cfg.command == Command::State ? std::vector<double>{0.0} : cfg.times;
    std::vector<double> peaks;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const WaveField f = cfg.command == Command::State ? psi0 : free_evolve(psi0, times[i], cfg.phys);
      const std::string suffix = cfg.command == Command::State ? "" : "_t" + std::to_string(i);
      r.set("norm" + suffix, norm(f));
      const WaveField pos = to_representation(f, Representation::Position);
      double peak = NAN;
      try {
        peak = peak_position(pos);
      } catch (const WindowEscape&) {
      }
      peaks.push_back(peak);
      r.set("peak_x" + suffix, peak);
      const std::string stem = cfg.command == Command::State ? "state" : "evolve" + suffix;
      if (cfg.outputs.csv) {
        write_csv(field_table(pos), out_dir / (stem + ".csv"));
        artifacts.push_back(stem + ".csv");
      }
      PlotSeries ps;
      ps.label = cfg.command == Command::State ? "density" : "t = " + format_double(times[i]);
      ps.x = pos.grid.x_values();
      ps.y = pos.density();
      plots.push_back(std::move(ps));
    }
    if (cfg.command == Command::Evolve && cfg.outputs.csv) {
      write_csv(trajectory_table(times, peaks), out_dir / "trajectory.csv");
      artifacts.push_back("trajectory.csv");
    }
    if (cfg.outputs.svg) {
      const std::string name = cfg.command == Command::State ? "state.svg" : "evolve.svg";
      write_svg(plots, out_dir / name, {r.name, "x", "density"});
      artifacts.push_back(name);
    }
    reports.push_back(std::move(r));
  } else {
    reports = run_jobs(cfg.jobs, worker_count());
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const std::string stem = cfg.jobs.size() == 1 ? file_stem(reports[i].name)
                                                    : file_stem(reports[i].name) + "_" + std::to_string(i);
      write_series(reports[i], stem, out_dir, cfg.outputs, artifacts);
    }
    if (cfg.command == Command::Scan && cfg.outputs.csv) {
      // One row per scanned value, one column per metric common to every report.
      CsvTable t;
      t.header.push_back("value");
      t.columns.push_back(cfg.scan_values);
      for (const auto& [k, v] : reports.front().metrics) {
        bool everywhere = true;
        for (const auto& r : reports) everywhere = everywhere && r.metrics.count(k);
        if (!everywhere) continue;
        t.header.push_back(k);
        std::vector<double> col;
        for (const auto& r : reports) col.push_back(r.metrics.at(k));
        t.columns.push_back(std::move(col));
      }
      write_csv(t, out_dir / "scan.csv");
      artifacts.push_back("scan.csv");
    }
  }

  bool pass = true;
  json out;
  out["command"] = std::string(to_string(cfg.command));
  json reps = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    reps.push_back(r.to_json());
    log_report(log, r);
  }
  out["pass"] = pass;
  out["reports"] = reps;
  out["config"] = cfg.raw;
  if (cfg.command == Command::Scan) {
    out["scan"] = {{"parameter", cfg.scan_parameter}, {"values", cfg.scan_values}};
  }
  artifacts.push_back("report.json");
  out["artifacts"] = artifacts;
  write_file_atomic(out_dir / "report.json", out.dump(2) + "\n");
  return pass ? kExitOk : kExitTolerance;
}

int run_config_file(const std::filesystem::path& path, const std::filesystem::path& out_dir,
                    std::ostream& log, std::ostream& err) {
  try {
    const RunConfig cfg = load_run_config(path);
    return execute(cfg, out_dir, log);
  } catch (const ConfigError& e) {
    err << "airy-lab: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "airy-lab: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "airy-lab: I/O error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace airylab
