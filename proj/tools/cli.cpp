#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "defourier/auto_integrator.hpp"
#include "defourier/error_model.hpp"
#include "defourier/errors.hpp"
#include "defourier/testbed.hpp"

namespace defourier::cli {
namespace {

using cplx = std::complex<double>;

std::string num(double x) { return fmt::format("{:.17g}", x); }

const char* map_name(MapKind m) { return m == MapKind::Phi1 ? "phi1" : "phi2"; }
const char* kind_name(TransformKind k) { return k == TransformKind::Cosine ? "cosine" : "sine"; }

testbed::NamedIntegrand named(const RunSpec& spec) {
  auto f = testbed::lookup(spec.integrand, spec.delta);
  if (!f) throw UsageError("unknown integrand '" + spec.integrand + "'");
  return *f;
}

// Builds rows [0, count) with make_row, in order; optionally on worker
// threads. Rows are independent, so the output does not depend on threads.
template <typename Fn>
std::vector<std::string> build_rows(std::size_t count, unsigned threads, Fn make_row) {
  std::vector<std::string> rows(count);
  if (threads == 0 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = make_row(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            rows[i] = make_row(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string join(const std::string& header, const std::vector<std::string>& rows) {
  std::string out = header + "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

APrioriPlan plan_for(MapKind map, const Integrand& f, double omega, long n) {
  return map == MapKind::Phi1 ? plan_phi1(f, omega, n) : plan_phi2(f, omega, n);
}

double try_reference(const testbed::NamedIntegrand& f, TransformKind kind, double omega,
                     bool& available) {
  try {
    available = true;
    return testbed::reference_value(f, kind, omega);
  } catch (const OracleDisagreementError&) {
    available = false;
    return 0.0;
  }
}

std::vector<double> omega_grid(const RunSpec& spec) {
  const double lo = *spec.omega_min;
  const double hi = *spec.omega_max;
  std::vector<double> grid;
  for (long i = 0; i < spec.omega_steps; ++i) {
    grid.push_back(spec.omega_steps == 1
                       ? lo
                       : lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(spec.omega_steps - 1));
  }
  return grid;
}

struct TableCase {
  int table;
  const char* integrand;
  TransformKind kind;
  long n1;
};

constexpr TableCase kTableCases[] = {
    {1, "f1", TransformKind::Cosine, 10},
    {2, "f2", TransformKind::Sine, 20},
    {3, "f3", TransformKind::Sine, 10},
    {4, "invsqrt", TransformKind::Sine, 10},
};

}  // namespace

void validate(const RunSpec& spec) {
  const auto f = named(spec);
  const bool needs_poles = spec.command == Command::Eval || spec.command == Command::Sweep;
  if (needs_poles && f.integrand.poles.empty()) {
    throw UsageError("integrand '" + spec.integrand + "' has no pole data for a priori rules");
  }
  if (!(spec.delta > 0.0)) throw UsageError("--delta must be positive");

  switch (spec.command) {
    case Command::Eval:
    case Command::Sweep:
    case Command::Auto:
    case Command::Poles:
      if (!spec.omega) throw UsageError("--omega is required");
      if (!(*spec.omega > 0.0)) throw UsageError("--omega must be positive");
      break;
    case Command::AutoSweep:
      if (!spec.omega_min || !spec.omega_max) {
        throw UsageError("--omega-min and --omega-max are required");
      }
      if (!(*spec.omega_min > 0.0) || *spec.omega_max < *spec.omega_min) {
        throw UsageError("need 0 < --omega-min <= --omega-max");
      }
      if (spec.omega_steps < 1) throw UsageError("--omega-steps must be >= 1");
      break;
    case Command::Tables:
      break;
  }
  if (spec.command == Command::Eval && spec.n < 1) throw UsageError("--n must be >= 1");
  if (spec.command == Command::Eval && spec.maps.size() != 1) {
    throw UsageError("eval takes exactly one --map");
  }
  if (spec.command == Command::Sweep && spec.n_min < 1) throw UsageError("--n-min must be >= 1");
  if (spec.command == Command::Auto || spec.command == Command::AutoSweep) {
    if (!(spec.eta > 0.0 && spec.eta < 1.0)) throw UsageError("--eta must lie in (0, 1)");
    if (spec.n1 < 4) throw UsageError("--n1 must be >= 4");
    if (!(spec.gamma > 1.0)) throw UsageError("--gamma must be > 1");
  }
  if (spec.command == Command::Poles) {
    if (!spec.z0 && f.integrand.poles.empty()) {
      throw UsageError("poles needs an integrand with pole data or --z0-re/--z0-im");
    }
    if (spec.z0 && spec.z0->imag() == 0.0) throw UsageError("--z0-im must be non-zero");
    for (double h : spec.h_grid) {
      if (!(h > 0.0 && h < std::numbers::pi)) throw UsageError("--h values must lie in (0, pi)");
    }
  }
}

std::string cmd_eval(const RunSpec& spec) {
  const auto f = named(spec);
  const double omega = *spec.omega;
  const APrioriPlan plan = plan_for(spec.maps.front(), f.integrand, omega, spec.n);
  const double value = transform(f.integrand, spec.kind, omega, plan.map, plan.params);
  bool has_ref = false;
  const double ref = try_reference(f, spec.kind, omega, has_ref);
  const auto& p = plan.params;
  return join("map,N,M,L,h,value,reference,abs_error,estimate_total",
              {fmt::format("{},{},{},{},{},{},{},{},{}", map_name(spec.maps.front()), p.n(),
                           p.m(), p.node_count(), num(p.h()), num(value),
                           has_ref ? num(ref) : "", has_ref ? num(std::abs(value - ref)) : "",
                           num(plan.estimate.total()))});
}

std::string cmd_sweep(const RunSpec& spec) {
  const auto f = named(spec);
  const double omega = *spec.omega;
  const std::string header =
      "map,N,M,L,h,abs_error,estimate_total,estimate_ED,estimate_ETL,estimate_ETR";
  if (spec.n_min > spec.n_max) return join(header, {});

  const double ref = testbed::reference_value(f, spec.kind, omega);
  const auto per_map = static_cast<std::size_t>(spec.n_max - spec.n_min + 1);
  const auto rows = build_rows(per_map * spec.maps.size(), spec.threads, [&](std::size_t i) {
    const MapKind map = spec.maps[i / per_map];
    const long n = spec.n_min + static_cast<long>(i % per_map);
    const APrioriPlan plan = plan_for(map, f.integrand, omega, n);
    const double value = transform(f.integrand, spec.kind, omega, plan.map, plan.params);
    const auto& p = plan.params;
    const auto& e = plan.estimate;
    return fmt::format("{},{},{},{},{},{},{},{},{},{}", map_name(map), p.n(), p.m(),
                       p.node_count(), num(p.h()), num(std::abs(value - ref)), num(e.total()),
                       num(e.e_d), num(e.e_tl), num(e.e_tr));
  });
  return join(header, rows);
}

std::string cmd_auto(const RunSpec& spec) {
  const auto f = named(spec);
  const double omega = *spec.omega;
  const AutoConfig config{spec.eta, spec.n1, spec.gamma};
  const AutoResult r = auto_transform(f.integrand, spec.kind, omega, config);
  if (!r.converged) {
    throw NonConvergenceError("auto: N would exceed the cap; estimated d = " + num(r.d), r.delta);
  }
  bool has_ref = false;
  const double ref = try_reference(f, spec.kind, omega, has_ref);
  return join("omega,eta,n1,gamma,ell,delta,d,N,h,value,abs_error",
              {fmt::format("{},{},{},{},{},{},{},{},{},{},{}", num(omega), num(spec.eta),
                           spec.n1, num(spec.gamma), num(r.ell), num(r.delta), num(r.d), r.n,
                           num(r.h), num(r.value), has_ref ? num(std::abs(r.value - ref)) : "")});
}

std::string cmd_autosweep(const RunSpec& spec) {
  const auto f = named(spec);
  const std::vector<double> grid = omega_grid(spec);
  const AutoConfig config{spec.eta, spec.n1, spec.gamma};
  const auto points = auto_sweep(f.integrand, spec.kind, grid, config);
  const auto rows = build_rows(points.size(), spec.threads, [&](std::size_t i) {
    bool has_ref = false;
    const double ref = try_reference(f, spec.kind, points[i].omega, has_ref);
    return fmt::format("{},{},{},{}", num(points[i].omega), num(points[i].value),
                       has_ref ? num(ref) : "",
                       has_ref ? num(std::abs(points[i].value - ref)) : "");
  });
  return join("omega,value,reference,abs_error", rows);
}

std::string cmd_poles(const RunSpec& spec) {
  const auto f = named(spec);
  const cplx z0 = spec.z0 ? *spec.z0 : f.integrand.poles.front().z0;
  const double omega = *spec.omega;
  const double theta = std::abs(std::arg(z0));
  const auto rows = build_rows(spec.h_grid.size(), spec.threads, [&](std::size_t i) {
    const double h = spec.h_grid[i];
    const PoleImage image = pole_image_phi1(z0, omega, h);
    const cplx approx = image.xi + 0.5 * h;
    const cplx numeric = testbed::find_pole_numeric(z0, omega, h, approx);
    return fmt::format("{},{},{},{},{},{},{}", num(h), num(approx.real()), num(approx.imag()),
                       num(numeric.real()), num(numeric.imag()),
                       num(d_estimate_phi1(theta, h)), image.branch.n);
  });
  return join("h,re_approx,im_approx,re_numeric,im_numeric,d_jap,branch", rows);
}

std::string cmd_tables(const RunSpec& spec) {
  struct Cell {
    const TableCase* table;
    double omega;
    double eta;
  };
  std::vector<Cell> cells;
  for (const TableCase& t : kTableCases) {
    for (double omega : {1.0, 5.0, 10.0}) {
      for (double eta : {1e-7, 1e-10, 1e-13}) cells.push_back({&t, omega, eta});
    }
  }
  const auto rows = build_rows(cells.size(), spec.threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    const auto f = *testbed::lookup(c.table->integrand, 1.5);
    const AutoResult r =
        auto_transform(f.integrand, c.table->kind, c.omega, AutoConfig{c.eta, c.table->n1});
    const double ref = testbed::reference_value(f, c.table->kind, c.omega);
    return fmt::format("{},{},{},{},{},{},{},{},{}", c.table->table, c.table->integrand,
                       kind_name(c.table->kind), c.table->n1, num(c.omega), num(c.eta), r.n,
                       num(r.h), num(std::abs(r.value - ref)));
  });
  return join("table,integrand,kind,n1,omega,eta,N,h,abs_error", rows);
}

std::string run_command(const RunSpec& spec) {
  validate(spec);
  switch (spec.command) {
    case Command::Eval:
      return cmd_eval(spec);
    case Command::Sweep:
      return cmd_sweep(spec);
    case Command::Auto:
      return cmd_auto(spec);
    case Command::AutoSweep:
      return cmd_autosweep(spec);
    case Command::Poles:
      return cmd_poles(spec);
    case Command::Tables:
      return cmd_tables(spec);
  }
  throw UsageError("unknown command");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  CLI::App app{"Double-exponential quadrature for cosine and sine transforms"};
  app.require_subcommand(1);
  // -h is reserved for the mesh size of the poles command.
  app.set_help_flag("--help", "Print this help message and exit");

  std::string kind = "cosine";
  std::string map = "both";
  std::optional<double> z0_re;
  std::optional<double> z0_im;
  std::vector<double> h_grid;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--integrand", spec.integrand, "f1, f2, f3, f4 or invsqrt");
    sub->add_option("--delta", spec.delta, "Decay rate of f3");
    sub->add_option("--kind", kind, "cosine or sine")
        ->check(CLI::IsMember({"cosine", "sine"}));
    sub->add_option("--out", spec.out, "Write CSV here instead of stdout");
  };

  auto* eval = app.add_subcommand("eval", "One a priori rule at a given N");
  add_common(eval);
  eval->add_option("--map", map, "phi1 or phi2")->check(CLI::IsMember({"phi1", "phi2"}));
  eval->add_option("--omega", spec.omega, "Frequency");
  eval->add_option("--n", spec.n, "Right truncation index N");

  auto* sweep = app.add_subcommand("sweep", "Error and estimate over a range of N");
  add_common(sweep);
  sweep->add_option("--map", map, "phi1, phi2 or both")
      ->check(CLI::IsMember({"phi1", "phi2", "both"}));
  sweep->add_option("--omega", spec.omega, "Frequency");
  sweep->add_option("--n-min", spec.n_min, "First N");
  sweep->add_option("--n-max", spec.n_max, "Last N");

  auto* autocmd = app.add_subcommand("auto", "Automatic integration to tolerance eta");
  add_common(autocmd);
  autocmd->add_option("--omega", spec.omega, "Frequency");
  autocmd->add_option("--eta", spec.eta, "Target tolerance");
  autocmd->add_option("--n1", spec.n1, "Pilot size N1");
  autocmd->add_option("--gamma", spec.gamma, "Pilot inflation factor");

  auto* autosweep = app.add_subcommand("autosweep", "Automatic parameters reused over omega");
  add_common(autosweep);
  autosweep->add_option("--omega-min", spec.omega_min, "Smallest frequency");
  autosweep->add_option("--omega-max", spec.omega_max, "Largest frequency");
  autosweep->add_option("--omega-steps", spec.omega_steps, "Number of frequencies");
  autosweep->add_option("--eta", spec.eta, "Target tolerance");
  autosweep->add_option("--n1", spec.n1, "Pilot size N1");
  autosweep->add_option("--gamma", spec.gamma, "Pilot inflation factor");

  auto* poles = app.add_subcommand("poles", "Pole images against a Newton pole finder");
  add_common(poles);
  poles->add_option("--omega", spec.omega, "Frequency");
  poles->add_option("--h", h_grid, "Mesh sizes (repeatable)");
  poles->add_option("--z0-re", z0_re, "Real part of a custom pole");
  poles->add_option("--z0-im", z0_im, "Imaginary part of a custom pole");

  auto* tables = app.add_subcommand("tables", "Automatic integrator on the benchmark tables");
  tables->add_option("--out", spec.out, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*eval) spec.command = Command::Eval;
  if (*sweep) spec.command = Command::Sweep;
  if (*autocmd) spec.command = Command::Auto;
  if (*autosweep) spec.command = Command::AutoSweep;
  if (*poles) spec.command = Command::Poles;
  if (*tables) spec.command = Command::Tables;

  spec.kind = kind == "sine" ? TransformKind::Sine : TransformKind::Cosine;
  if (spec.command == Command::Eval && map == "both") map = "phi1";
  if (map == "phi1") spec.maps = {MapKind::Phi1};
  if (map == "phi2") spec.maps = {MapKind::Phi2};
  if (!h_grid.empty()) spec.h_grid = h_grid;
  if (z0_re || z0_im) spec.z0 = cplx(z0_re.value_or(0.0), z0_im.value_or(0.0));

  if (const char* env = std::getenv("DEFOURIER_THREADS")) {
    char* end = nullptr;
    const long threads = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || threads < 0) {
      err << "error: DEFOURIER_THREADS must be a non-negative integer\n";
      return kExitUsage;
    }
    spec.threads = static_cast<unsigned>(threads);
  }

  std::string csv;
  try {
    csv = run_command(spec);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  if (spec.out.empty()) {
    out << csv;
    out.flush();
  } else {
    std::ofstream file(spec.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << spec.out << "\n";
      return kExitUsage;
    }
    file << csv;
  }
  return kExitOk;
}

}  // namespace defourier::cli
