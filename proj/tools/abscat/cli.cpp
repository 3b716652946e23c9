#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "abscat/amplitude.hpp"
#include "abscat/errors.hpp"
#include "abscat/oracle.hpp"
#include "abscat/phase_shift.hpp"
#include "abscat/special_fn.hpp"

namespace abscat::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::phase: return "phase";
    case Subcommand::smatrix: return "smatrix";
    case Subcommand::xsec: return "xsec";
    case Subcommand::figure: return "figure";
    case Subcommand::verify: return "verify";
  }
  return "?";
}

// Runs body(i) for i in [0, n) on a small pool; each index writes only its
// own output slot, so the result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::string> config_echo(const RunConfig& c) {
  std::vector<std::string> lines{
      std::string("subcommand=") + subcommand_name(c.subcommand),
      "alpha=" + fmt(c.alpha),
      "a=" + fmt(c.a),
      "bc=" + c.bc,
      "k=" + c.k,
      std::string("k_spacing=") + (c.log_k ? "log" : "linear"),
      "theta=" + c.theta,
      "m=" + c.m,
      "tol=" + fmt(c.tol)};
  if (c.subcommand == Subcommand::figure) lines.push_back("id=" + std::to_string(c.id));
  if (c.subcommand == Subcommand::verify) lines.push_back("suite=" + c.suite);
  return lines;
}

std::vector<double> theta_grid(const RunConfig& c) {
  const std::vector<double> t = expand_grid(parse_grid(c.theta), false);
  for (double v : t) {
    if (!(v > 0.0 && v < 2.0 * kPi)) {
      throw DomainError("theta values must lie in (0, 2 pi); got " + fmt(v));
    }
  }
  return t;
}

std::vector<double> k_grid(const RunConfig& c) {
  const std::vector<double> k = expand_grid(parse_grid(c.k), c.log_k);
  for (double v : k) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("k values must be positive; got " + fmt(v));
    }
  }
  return k;
}

void check_common(const RunConfig& c) {
  if (!(c.a > 0.0) || !std::isfinite(c.a)) {
    throw DomainError("radius a must be positive");
  }
  if (!(c.tol > 0.0)) throw DomainError("tol must be positive");
  if (!std::isfinite(c.alpha)) throw DomainError("alpha must be finite");
}

CsvTable sector_table(const RunConfig& c, bool smatrix) {
  check_common(c);
  const BoundaryCondition bc = parse_bc(c.bc);
  const std::vector<double> ks = k_grid(c);
  const std::vector<int> ms = parse_m_range(c.m);
  std::vector<SectorParams> sectors;
  for (int m : ms) sectors.emplace_back(m, c.alpha, c.a, bc);

  CsvTable table;
  table.metadata = config_echo(c);
  if (smatrix) {
    table.header = {"k[1/L]", "m", "re_S", "im_S", "abs_S"};
  } else {
    table.header = {"k[1/L]", "m", "delta[rad]", "theta_lambda[rad]"};
  }
  table.rows.resize(ks.size() * ms.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      auto& row = table.rows[i * ms.size() + j];
      const double m = ms[j];
      if (smatrix) {
        const std::complex<double> s = s_matrix(sectors[j], ks[i]);
        row = {ks[i], m, s.real(), s.imag(), std::abs(s)};
      } else {
        const double th = theta_lambda(sectors[j], ks[i]);
        row = {ks[i], m, delta_m(ms[j], c.alpha) + th, th};
      }
    }
  });
  return table;
}

CsvTable xsec_table(const RunConfig& c) {
  check_common(c);
  const BoundaryCondition bc = parse_bc(c.bc);
  const std::vector<double> ks = k_grid(c);
  const std::vector<double> ts = theta_grid(c);
  const CanonicalFlux flux = canonicalize_flux(c.alpha);
  const CrossSectionTable xs =
      cross_section_table(ks, ts, flux.alpha, c.a, bc, c.tol);

  CsvTable table;
  table.metadata = config_echo(c);
  table.metadata.push_back("alpha_canonical=" + fmt(flux.alpha));
  table.metadata.push_back("m_max=" + std::to_string(xs.metadata.m_max));
  table.header = {"k[1/L]", "theta[rad]", "dsigma_dtheta[L]"};
  for (const auto& r : xs.rows) table.rows.push_back({r.k, r.theta, r.dsigma});
  return table;
}

const BoundaryCondition kTrio[3] = {BoundaryCondition::dirichlet(),
                                    BoundaryCondition::neumann(),
                                    BoundaryCondition::robin(1.0)};

CsvTable figure_table(const RunConfig& c) {
  constexpr double alpha = 0.5;
  constexpr double a = 1.0;
  CsvTable table;
  table.metadata = {"figure=" + std::to_string(c.id), "alpha=0.5", "a=1",
                    "tol=" + fmt(c.tol)};
  auto log_k = [] { return expand_grid({0.05, 20.0, 500}, true); };
  auto theta_sweep = [] { return expand_grid({0.01, kPi, 600}, false); };

  // Cross sections for Dirichlet, Neumann and one Robin parameter over a grid
  // that varies in either k or theta.
  auto xsec_columns = [&](const std::vector<double>& ks,
                          const std::vector<double>& ts, double lambda,
                          bool sweep_k) {
    const BoundaryCondition bcs[3] = {BoundaryCondition::dirichlet(),
                                      BoundaryCondition::neumann(),
                                      BoundaryCondition::robin(lambda)};
    CrossSectionTable cols[3];
    int m_max = 0;
    for (int b = 0; b < 3; ++b) {
      cols[b] = cross_section_table(ks, ts, alpha, a, bcs[b], c.tol);
      m_max = std::max(m_max, cols[b].metadata.m_max);
    }
    table.metadata.push_back("lambda_robin=" + fmt(lambda));
    table.metadata.push_back("m_max=" + std::to_string(m_max));
    table.header = {sweep_k ? "k[1/L]" : "theta[rad]", "dsigma_dirichlet[L]",
                    "dsigma_neumann[L]", "dsigma_robin[L]"};
    for (std::size_t i = 0; i < cols[0].rows.size(); ++i) {
      const auto& r = cols[0].rows[i];
      table.rows.push_back({sweep_k ? r.k : r.theta, r.dsigma,
                            cols[1].rows[i].dsigma, cols[2].rows[i].dsigma});
    }
  };

  switch (c.id) {
    case 1: {
      const std::vector<double> ks = log_k();
      table.metadata.insert(table.metadata.end(),
                            {"m=1", "lambda_robin=1", "k=0.05:20:500 log"});
      table.header = {"k[1/L]", "re_S_dirichlet", "re_S_neumann",
                      "re_S_robin"};
      table.rows.resize(ks.size());
      parallel_for(ks.size(), [&](std::size_t i) {
        std::vector<double> row{ks[i]};
        for (const auto& bc : kTrio) {
          row.push_back(s_matrix(SectorParams(1, alpha, a, bc), ks[i]).real());
        }
        table.rows[i] = std::move(row);
      });
      return table;
    }
    case 2:
      table.metadata.insert(table.metadata.end(),
                            {"k=30", "theta=0.01:pi:600 linear"});
      xsec_columns({30.0}, theta_sweep(), 0.1, false);
      return table;
    case 3:
      table.metadata.insert(table.metadata.end(),
                            {"theta=pi/2", "k=0.05:20:500 log"});
      xsec_columns(log_k(), {0.5 * kPi}, 1.0, true);
      return table;
    case 4:
      table.metadata.insert(table.metadata.end(),
                            {"k=0.1", "theta=0.01:pi:600 linear"});
      xsec_columns({0.1}, theta_sweep(), 1.0, false);
      return table;
    case 5:
      table.metadata.insert(table.metadata.end(),
                            {"k=1.5", "theta=0.01:pi:600 linear"});
      xsec_columns({1.5}, theta_sweep(), 1.0, false);
      return table;
    default:
      throw UsageError("--id must be 1..5");
  }
}

struct Check {
  std::string name;
  double measured;
  double tolerance;
};

void unitarity_checks(std::vector<Check>& out) {
  double worst = 0.0;
  const double alphas[] = {0.0, 0.25, 0.5, 0.9};
  for (double alpha : alphas) {
    for (int m = -5; m <= 5; ++m) {
      for (const auto& bc : kTrio) {
        for (int i = 0; i < 20; ++i) {
          const double k = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
          const double s = std::abs(s_matrix(SectorParams(m, alpha, 1.0, bc), k));
          worst = std::max(worst, std::abs(s - 1.0));
        }
      }
    }
  }
  out.push_back({"unitarity_max_dev", worst, 1e-12});
}

void special_checks(std::vector<Check>& out) {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double nu = 30.0 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double x = std::pow(10.0, -2.0 + 4.0 * j / 49.0);
      BesselQuad q;
      try {
        q = bessel_quad(nu, x);
      } catch (const OverflowError&) {
        continue;
      }
      const double w = q.j * q.yp - q.jp * q.y;
      const double ref = 2.0 / (kPi * x);
      worst = std::max(worst, std::abs(w - ref) / ref);
    }
  }
  out.push_back({"wronskian_max_rel_dev", worst, 1e-10});
}

void oracle_checks(std::vector<Check>& out) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_m(-5, 5);
  std::vector<double> dev(30);
  std::vector<std::pair<SectorParams, double>> draws;
  for (int i = 0; i < 30; ++i) {
    const int m = pick_m(rng);
    const double alpha = unit(rng);
    const double ka = 0.5 + 19.5 * unit(rng);
    const double u = unit(rng);
    const BoundaryCondition bc =
        u < 0.2 ? BoundaryCondition::dirichlet()
                : (u < 0.4 ? BoundaryCondition::neumann()
                           : BoundaryCondition::robin(5.0 * unit(rng)));
    draws.emplace_back(SectorParams(m, alpha, 1.0, bc), ka);
  }
  parallel_for(draws.size(), [&](std::size_t i) {
    const auto& [sector, k] = draws[i];
    dev[i] = distance_mod_pi(phase_shift(sector, k),
                             ode_phase_shift(sector, k).delta);
  });
  out.push_back({"ode_phase_max_dev", *std::max_element(dev.begin(), dev.end()),
                 1e-4});

  const TestFunction bump = bump_function(2.5, 1.0);
  const double exact = bump.f(2.5);
  const double rec = completeness_check(bump, 0.5, BoundaryCondition::robin(1.0),
                                        1.0, 2.5, 60.0);
  out.push_back({"completeness_rel_dev", std::abs(rec - exact) / exact, 1e-3});
}

CsvTable verify_table(const RunConfig& c, bool& passed) {
  std::vector<Check> checks;
  const std::string& s = c.suite;
  if (s != "all" && s != "oracle" && s != "unitarity" && s != "special") {
    throw UsageError("--suite must be one of all, oracle, unitarity, special");
  }
  if (s == "all" || s == "special") special_checks(checks);
  if (s == "all" || s == "unitarity") unitarity_checks(checks);
  if (s == "all" || s == "oracle") oracle_checks(checks);

  CsvTable table;
  table.metadata = config_echo(c);
  table.header = {"check", "measured", "tolerance", "passed"};
  passed = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const bool ok = checks[i].measured <= checks[i].tolerance;
    passed = passed && ok;
    table.metadata.push_back("check_" + std::to_string(i) + "=" + checks[i].name);
    table.rows.push_back({static_cast<double>(i), checks[i].measured,
                          checks[i].tolerance, ok ? 1.0 : 0.0});
  }
  return table;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  GridSpec g;
  if (parts.size() == 1) {
    g.start = g.stop = parse_number(parts[0], "grid value");
    return g;
  }
  if (parts.size() != 3) {
    throw UsageError("grid must be 'value' or 'start:stop:count', got '" +
                     text + "'");
  }
  g.start = parse_number(parts[0], "grid start");
  g.stop = parse_number(parts[1], "grid stop");
  g.count = parse_int(parts[2], "grid count");
  if (g.count < 1) throw UsageError("grid count must be at least 1");
  if (!(g.start <= g.stop)) throw UsageError("grid start must not exceed stop");
  return g;
}

std::vector<double> expand_grid(const GridSpec& spec, bool log_spacing) {
  if (spec.count == 1) return {spec.start};
  std::vector<double> v(static_cast<std::size_t>(spec.count));
  const double n = spec.count - 1;
  if (log_spacing) {
    if (!(spec.start > 0.0)) throw DomainError("log grid needs start > 0");
    const double l0 = std::log(spec.start);
    const double l1 = std::log(spec.stop);
    for (int i = 0; i < spec.count; ++i) v[i] = std::exp(l0 + (l1 - l0) * i / n);
  } else {
    for (int i = 0; i < spec.count; ++i) {
      v[i] = spec.start + (spec.stop - spec.start) * i / n;
    }
  }
  v.front() = spec.start;
  v.back() = spec.stop;
  return v;
}

BoundaryCondition parse_bc(const std::string& text) {
  if (text == "dirichlet") return BoundaryCondition::dirichlet();
  if (text == "neumann" || text == "robin:inf") {
    return BoundaryCondition::neumann();
  }
  if (text.rfind("robin:", 0) == 0) {
    return BoundaryCondition::robin(parse_number(text.substr(6), "lambda"));
  }
  throw UsageError("--bc must be dirichlet, neumann, robin:<lambda> or "
                   "robin:inf; got '" + text + "'");
}

std::vector<int> parse_m_range(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() == 1) return {parse_int(parts[0], "m")};
  if (parts.size() != 2) throw UsageError("--m must be 'm' or 'lo:hi'");
  const int lo = parse_int(parts[0], "m");
  const int hi = parse_int(parts[1], "m");
  if (lo > hi) throw UsageError("--m range must be ascending");
  std::vector<int> ms;
  for (int m = lo; m <= hi; ++m) ms.push_back(m);
  return ms;
}

bool parse_args(const std::vector<std::string>& args, RunConfig& config,
                std::ostream& out) {
  CLI::App app{"Scattering observables outside a finite-radius flux tube"};
  app.name("abscat");
  app.require_subcommand(1);

  struct Entry {
    Subcommand kind;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {Subcommand::phase, "phase", "phase shifts per sector over a k grid"},
      {Subcommand::smatrix, "smatrix", "S-matrix entries per sector over a k grid"},
      {Subcommand::xsec, "xsec", "differential cross section over k x theta"},
      {Subcommand::figure, "figure", "data behind one of the five preset figures"},
      {Subcommand::verify, "verify", "run verification checks"}};

  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--alpha", config.alpha, "flux (default 0.5)");
    sub->add_option("--a", config.a, "solenoid radius (default 1)");
    sub->add_option("--bc", config.bc,
                    "dirichlet | neumann | robin:<lambda> | robin:inf");
    sub->add_option("--k", config.k, "wavenumber or start:stop:count");
    sub->add_option("--theta", config.theta, "angle or start:stop:count, in (0, 2pi)");
    sub->add_option("--m", config.m, "sector m or lo:hi");
    sub->add_option("--tol", config.tol, "series truncation tolerance");
    sub->add_option("--out", config.out, "output CSV path (default stdout)");
    sub->add_flag("--log-k,!--lin-k", config.log_k,
                  "logarithmic (default) or linear k spacing");
    if (e.kind == Subcommand::figure) {
      sub->add_option("--id", config.id, "figure number 1..5")->required();
    }
    if (e.kind == Subcommand::verify) {
      sub->add_option("--suite", config.suite,
                      "all | oracle | unitarity | special");
    }
    subs.emplace_back(sub, e.kind);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& [sub, kind] : subs) {
    if (sub->parsed()) config.subcommand = kind;
  }
  return true;
}

std::string render_csv(const CsvTable& table) {
  std::string text;
  for (const auto& m : table.metadata) text += "# " + m + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) text += ',';
    text += table.header[i];
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += fmt(row[i]);
    }
    text += '\n';
  }
  return text;
}

void emit_csv(const CsvTable& table, const std::string& path,
              std::ostream& fallback) {
  if (table.rows.empty()) throw DomainError("refusing to write an empty table");
  const std::string text = render_csv(table);
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::ios_base::failure("cannot open '" + path + "' for writing");
  }
  file << text;
  file.close();
  if (!file) throw std::ios_base::failure("write to '" + path + "' failed");
}

CsvTable build_table(const RunConfig& config, bool& passed) {
  passed = true;
  switch (config.subcommand) {
    case Subcommand::phase: return sector_table(config, false);
    case Subcommand::smatrix: return sector_table(config, true);
    case Subcommand::xsec: return xsec_table(config);
    case Subcommand::figure: return figure_table(config);
    case Subcommand::verify: return verify_table(config, passed);
  }
  throw UsageError("unknown subcommand");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    RunConfig config;
    if (!parse_args(args, config, out)) return kExitOk;
    bool passed = true;
    const CsvTable table = build_table(config, passed);
    emit_csv(table, config.out, out);
    if (!passed) {
      err << "abscat: verification failed\n";
      return kExitVerify;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "abscat: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "abscat: domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "abscat: numerical error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::ios_base::failure& e) {
    err << "abscat: i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace abscat::cli
