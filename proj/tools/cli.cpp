#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "magprop/eigensolver.hpp"
#include "magprop/errors.hpp"
#include "magprop/propagator.hpp"
#include "magprop/spectrum.hpp"
#include "magprop/verify.hpp"

namespace magprop::cli {

namespace {

using nlohmann::json;

/// Anything wrong with the command line, config file or query file (exit 2).
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  System system = System::landau;
  GaugeKind gauge = GaugeKind::symmetric;
  PhysParams params{1.0, 1.0, 1.0, 1.0, 0.0};
  bool natural = true;
  GridSpec grid{12.0, 96};
  std::string output = "csv";
  std::uint64_t seed = 20240617;
};

struct Flags {
  std::optional<std::string> config, system, gauge, units, output;
  std::optional<double> mass, charge, hbar, B, omega0, grid_L;
  std::optional<int> grid_n;
  std::optional<std::uint64_t> seed;
  bool natural_units = false;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

json num_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

System to_system(const std::string& s) {
  if (auto v = parse_system(s)) return *v;
  throw ParseFailure("unknown system '" + s + "' (free|landau|osc_b)");
}

GaugeKind to_gauge(const std::string& s) {
  auto v = parse_gauge_kind(s);
  if (!v || *v == GaugeKind::custom) throw ParseFailure("unknown gauge '" + s + "' (symmetric|landau-x|landau-y)");
  return *v;
}

template <class T>
std::optional<T> json_get(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw ParseFailure(std::string("config key '") + key + "': " + ex.what());
  }
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return it.key() == k; }))
      throw ParseFailure("unknown key '" + it.key() + "' in " + where);
  }
}

/// Config file first, command-line flags on top.
RunConfig resolve(const Flags& f) {
  Flags merged;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw ParseFailure("cannot open config file " + *f.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& ex) {
      throw ParseFailure(std::string("config file: ") + ex.what());
    }
    if (!j.is_object()) throw ParseFailure("config file must hold a JSON object");
    reject_unknown_keys(j, {"system", "gauge", "units", "output", "seed", "params", "grid"}, "config");
    merged.system = json_get<std::string>(j, "system");
    merged.gauge = json_get<std::string>(j, "gauge");
    merged.units = json_get<std::string>(j, "units");
    merged.output = json_get<std::string>(j, "output");
    merged.seed = json_get<std::uint64_t>(j, "seed");
    if (j.contains("params")) {
      const json& p = j.at("params");
      if (!p.is_object()) throw ParseFailure("config 'params' must be an object");
      reject_unknown_keys(p, {"m", "e", "hbar", "B", "omega0"}, "config params");
      merged.mass = json_get<double>(p, "m");
      merged.charge = json_get<double>(p, "e");
      merged.hbar = json_get<double>(p, "hbar");
      merged.B = json_get<double>(p, "B");
      merged.omega0 = json_get<double>(p, "omega0");
    }
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      if (!g.is_object()) throw ParseFailure("config 'grid' must be an object");
      reject_unknown_keys(g, {"L", "n"}, "config grid");
      merged.grid_L = json_get<double>(g, "L");
      merged.grid_n = json_get<int>(g, "n");
    }
  }
  auto over = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  over(merged.system, f.system);
  over(merged.gauge, f.gauge);
  over(merged.units, f.units);
  over(merged.output, f.output);
  over(merged.seed, f.seed);
  over(merged.mass, f.mass);
  over(merged.charge, f.charge);
  over(merged.hbar, f.hbar);
  over(merged.B, f.B);
  over(merged.omega0, f.omega0);
  over(merged.grid_L, f.grid_L);
  over(merged.grid_n, f.grid_n);
  if (f.natural_units) {
    if (f.units && *f.units != "natural") throw ParseFailure("--natural-units conflicts with --units " + *f.units);
    merged.units = "natural";
  }

  RunConfig c;
  if (merged.system) c.system = to_system(*merged.system);
  if (merged.gauge) c.gauge = to_gauge(*merged.gauge);
  if (merged.output) {
    if (*merged.output != "csv" && *merged.output != "json") throw ParseFailure("--output must be csv or json");
    c.output = *merged.output;
  }
  if (merged.seed) c.seed = *merged.seed;
  const std::string units = merged.units.value_or("natural");
  if (units != "natural" && units != "explicit") throw ParseFailure("--units must be natural or explicit");
  c.natural = units == "natural";
  if (c.natural) {
    for (auto [name, v] : {std::pair{"mass", merged.mass}, {"charge", merged.charge}, {"hbar", merged.hbar}})
      if (v && *v != 1.0) throw ParseFailure(std::string("natural units fix ") + name + " = 1; use --units explicit");
  } else {
    c.params.m = merged.mass.value_or(1.0);
    c.params.e = merged.charge.value_or(1.0);
    c.params.hbar = merged.hbar.value_or(1.0);
  }
  c.params.B = merged.B.value_or(1.0);
  c.params.omega0 = merged.omega0.value_or(0.0);
  c.grid.L = merged.grid_L.value_or(12.0);
  c.grid.n = merged.grid_n.value_or(96);
  try {
    c.params.validate();
    c.grid.validate();
  } catch (const DomainError& ex) {
    throw ParseFailure(ex.what());
  }
  return c;
}

json config_json(const RunConfig& c) {
  return json{{"system", to_string(c.system)},
              {"gauge", to_string(c.gauge)},
              {"units", c.natural ? "natural" : "explicit"},
              {"params", {{"m", c.params.m}, {"e", c.params.e}, {"hbar", c.params.hbar}, {"B", c.params.B}, {"omega0", c.params.omega0}}},
              {"grid", {{"L", c.grid.L}, {"n", c.grid.n}}},
              {"output", c.output},
              {"seed", c.seed}};
}

void echo_csv(std::ostream& out, const std::string& command, const RunConfig& c) {
  out << "# magprop " << command << "\n# config " << config_json(c).dump() << "\n";
}

/// Kernel parameters for a system: landau ignores omega0, free ignores both B and omega0.
PhysParams params_for(const RunConfig& c) {
  PhysParams p = c.params;
  if (c.system == System::landau) p.omega0 = 0.0;
  if (c.system == System::free) p.B = p.omega0 = 0.0;
  return p;
}

GaugeField gauge_for(const RunConfig& c, const PhysParams& p) { return GaugeField::builtin(c.gauge, p.B); }

// ---------------------------------------------------------------- eval

struct QueryRow {
  double v[8];  // x1, x2, x3, x1p, x2p, x3p, tau_re, tau_im
};

constexpr const char* kQueryHeader = "x1,x2,x3,x1p,x2p,x3p,tau_re,tau_im";

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

std::vector<QueryRow> read_queries(std::istream& in) {
  std::vector<QueryRow> rows;
  std::string line;
  int line_no = 0;
  bool seen_data_or_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!seen_data_or_header) {
      seen_data_or_header = true;
      if (t == kQueryHeader) continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!t.empty() && t.back() == ',') fields.emplace_back();
    const std::string where = "query row " + std::to_string(rows.size() + 1) + " (line " + std::to_string(line_no) + ")";
    if (fields.size() != 8)
      throw ParseFailure(where + ": expected 8 fields, found " + std::to_string(fields.size()));
    QueryRow r;
    for (int k = 0; k < 8; ++k)
      if (!parse_double(fields[k], r.v[k]) || !std::isfinite(r.v[k]))
        throw ParseFailure(where + ": field " + std::to_string(k + 1) + " is not a finite number: '" + trim(fields[k]) + "'");
    rows.push_back(r);
  }
  return rows;
}

Vec2 parse_point(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  Vec2 v;
  if (comma == std::string::npos || !parse_double(text.substr(0, comma), v.x1) ||
      !parse_double(text.substr(comma + 1), v.x2))
    throw ParseFailure(std::string(flag) + " expects 'x,y', got '" + text + "'");
  return v;
}

struct EvalFlags {
  std::optional<std::string> r, rp, queries;
  double x3 = 0.0, x3p = 0.0;
  std::optional<double> tau;
  double tau_im = 0.0;
  bool keep_going = false;
  bool transverse = false;
};

int cmd_eval(const RunConfig& c, const EvalFlags& f, std::ostream& out, std::ostream& err) {
  std::vector<QueryRow> rows;
  if (f.queries) {
    if (f.r || f.rp || f.tau) throw ParseFailure("--queries cannot be combined with --r/--rp/--tau");
    std::ifstream in(*f.queries);
    if (!in) throw ParseFailure("cannot open query file " + *f.queries);
    rows = read_queries(in);
  } else {
    if (!f.r || !f.rp || !f.tau) throw ParseFailure("eval needs --r, --rp and --tau, or --queries FILE");
    const Vec2 r = parse_point(*f.r, "--r"), rp = parse_point(*f.rp, "--rp");
    rows.push_back({{r.x1, r.x2, f.x3, rp.x1, rp.x2, f.x3p, *f.tau, f.tau_im}});
  }

  const PhysParams p = params_for(c);
  const GaugeField g = gauge_for(c, p);
  const long n = long(rows.size());
  std::vector<cplx> value(rows.size());
  std::vector<int> status(rows.size(), ok);
  std::vector<std::string> message(rows.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    const auto& v = rows[i].v;
    const KernelQuery q{{v[0], v[1]}, {v[3], v[4]}, v[2], v[5], cplx(v[6], v[7])};
    try {
      value[i] = f.transverse ? TransverseKernel(c.system, p, g, q.tau)(q.r, q.r_prime) : full_3d(q, c.system, p, g).amplitude;
    } catch (const CausticError& ex) {
      status[i] = caustic;
      message[i] = ex.what();
    } catch (const std::exception& ex) {
      status[i] = parse_error;
      message[i] = ex.what();
    }
  }

  int code = ok;
  std::size_t emit = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (status[i] == ok) continue;
    err << "row " << (i + 1) << ": " << message[i] << "\n";
    if (status[i] == caustic || code == ok) code = status[i];
    if (!f.keep_going) {
      emit = i;
      break;
    }
  }

  if (c.output == "json") {
    json recs = json::array();
    for (std::size_t i = 0; i < emit; ++i) {
      const auto& v = rows[i].v;
      json rec{{"x1", v[0]}, {"x2", v[1]}, {"x3", v[2]}, {"x1p", v[3]}, {"x2p", v[4]}, {"x3p", v[5]},
               {"tau_re", v[6]}, {"tau_im", v[7]}};
      rec["K_re"] = status[i] == ok ? num_json(value[i].real()) : json(nullptr);
      rec["K_im"] = status[i] == ok ? num_json(value[i].imag()) : json(nullptr);
      if (status[i] != ok) rec["error"] = message[i];
      recs.push_back(rec);
    }
    out << json{{"config", config_json(c)}, {"kernel", f.transverse ? "transverse" : "full_3d"}, {"records", recs}}.dump(2)
        << "\n";
  } else {
    echo_csv(out, std::string("eval kernel=") + (f.transverse ? "transverse" : "full_3d"), c);
    out << kQueryHeader << ",K_re,K_im\n";
    for (std::size_t i = 0; i < emit; ++i) {
      for (double x : rows[i].v) out << num(x) << ",";
      const double nan = std::nan("");
      out << num(status[i] == ok ? value[i].real() : nan) << "," << num(status[i] == ok ? value[i].imag() : nan) << "\n";
    }
  }
  return code;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumFlags {
  int l_max = 2;
  int n_max = 2;
  bool oracle = false;
};

std::string labels_text(const std::vector<int>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? ";" : "") + std::to_string(labels[i]);
  return s;
}

int cmd_spectrum(const RunConfig& c, const SpectrumFlags& f, std::ostream& out) {
  if (f.l_max < 0 || f.n_max < 0) throw ParseFailure("--l-max and --n-max must be >= 0");
  const PhysParams p = params_for(c);
  SpectrumTable table;
  std::vector<double> oracle;
  try {
    if (c.system == System::landau) {
      table = landau_levels(f.n_max, p);
      if (f.oracle) oracle = landau_grid_summary(p, gauge_for(c, p), c.grid, f.n_max + 1).cluster_means;
    } else if (c.system == System::osc_b) {
      table = energy_levels_osc_b(f.l_max, f.n_max, p);
      table.sort_by_energy();
      if (f.oracle) {
        // Match each entry to its rank among all levels, then read off that grid eigenvalue.
        const double top = table.entries.back().energy;
        const auto all = levels_below_osc_b(top * (1.0 + 1e-12), p, 100000);
        const auto ev = lowest_eigenvalues(build_hamiltonian_grid(p, gauge_for(c, p), c.grid), int(all.size()));
        std::vector<bool> used(all.size(), false);
        for (const auto& e : table.entries) {
          double v = std::nan("");
          for (std::size_t k = 0; k < all.size(); ++k) {
            if (!used[k] && std::abs(all[k] - e.energy) <= 1e-12 * std::abs(e.energy)) {
              used[k] = true;
              v = ev[k];
              break;
            }
          }
          oracle.push_back(v);
        }
      }
    } else {
      throw ParseFailure("spectrum needs --system landau or osc_b");
    }
  } catch (const DomainError& ex) {
    throw ParseFailure(ex.what());
  } catch (const TruncationError& ex) {
    throw ParseFailure(ex.what());
  }

  if (c.output == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      const auto& e = table.entries[i];
      json row{{"labels", e.labels}, {"energy", e.energy}};
      row["degeneracy_per_area"] = e.degeneracy_per_area ? json(*e.degeneracy_per_area) : json(nullptr);
      if (f.oracle) row["oracle_energy"] = i < oracle.size() ? num_json(oracle[i]) : json(nullptr);
      rows.push_back(row);
    }
    out << json{{"config", config_json(c)}, {"entries", rows}}.dump(2) << "\n";
  } else {
    echo_csv(out, "spectrum", c);
    out << "labels,energy,degeneracy_per_area" << (f.oracle ? ",oracle_energy" : "") << "\n";
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      const auto& e = table.entries[i];
      out << labels_text(e.labels) << "," << num(e.energy) << ","
          << (e.degeneracy_per_area ? num(*e.degeneracy_per_area) : std::string());
      if (f.oracle) out << "," << num(i < oracle.size() ? oracle[i] : std::nan(""));
      out << "\n";
    }
  }
  return ok;
}

// ---------------------------------------------------------------- trace

struct TraceFlags {
  std::optional<double> beta, tau;
  double tau_im = 0.0;
};

int cmd_trace(const RunConfig& c, const TraceFlags& f, std::ostream& out) {
  const PhysParams p = params_for(c);
  if (f.beta && f.tau) throw ParseFailure("give either --beta or --tau/--tau-im");
  cplx tau;
  if (f.beta) {
    tau = cplx(0.0, -*f.beta * p.hbar);
  } else if (f.tau || f.tau_im != 0.0) {
    tau = cplx(f.tau.value_or(0.0), f.tau_im);
  } else {
    throw ParseFailure("trace needs --beta or --tau/--tau-im");
  }
  const bool euclidean = tau.real() == 0.0 && tau.imag() < 0.0;
  const double beta = -tau.imag() / p.hbar;
  std::vector<std::pair<std::string, cplx>> rows;
  try {
    if (c.system == System::landau) {
      if (!euclidean) throw ParseFailure("landau trace is per unit area and needs Euclidean time (--beta)");
      rows.emplace_back("partition_function_per_area", partition_function_per_area(beta, p));
      rows.emplace_back("partition_function_per_area_series", partition_function_per_area_geometric(beta, p));
    } else if (c.system == System::osc_b) {
      check_time(tau, KernelOptions{});
      rows.emplace_back("trace_transverse", trace_transverse_osc_b(tau, p));
      rows.emplace_back("trace_transverse_product_form", trace_transverse_osc_b_product(tau, p));
      if (euclidean) rows.emplace_back("spectral_sum", spectral_partition_sum_osc_b(beta, p));
    } else {
      throw ParseFailure("trace needs --system landau or osc_b");
    }
  } catch (const DomainError& ex) {
    throw ParseFailure(ex.what());
  } catch (const DegenerateTraceError& ex) {
    throw ParseFailure(ex.what());
  }
  if (c.output == "json") {
    json j{{"config", config_json(c)}, {"tau_re", tau.real()}, {"tau_im", tau.imag()}};
    for (const auto& [k, v] : rows) j[k] = {{"re", num_json(v.real())}, {"im", num_json(v.imag())}};
    out << j.dump(2) << "\n";
  } else {
    echo_csv(out, "trace", c);
    out << "quantity,tau_re,tau_im,value_re,value_im\n";
    for (const auto& [k, v] : rows)
      out << k << "," << num(tau.real()) << "," << num(tau.imag()) << "," << num(v.real()) << "," << num(v.imag()) << "\n";
  }
  return ok;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& c, const std::string& suite_name, std::ostream& out) {
  const auto suite = parse_suite(suite_name);
  if (!suite) throw ParseFailure("unknown suite '" + suite_name + "'");
  VerifyConfig vc;
  vc.seed = c.seed;
  vc.grid = c.grid;
  const auto reports = run_verify(*suite, vc);
  bool all = true;
  json suites = json::array();
  for (const auto& r : reports) {
    json checks = json::array();
    for (const auto& ch : r.checks) {
      json cj{{"name", ch.name}, {"value", num_json(ch.value)}, {"tolerance", ch.tolerance}, {"pass", ch.pass}};
      if (!ch.detail.empty()) cj["detail"] = ch.detail;
      checks.push_back(cj);
    }
    all = all && r.all_pass();
    suites.push_back({{"suite", r.suite}, {"seconds", r.seconds}, {"pass", r.all_pass()}, {"checks", checks}});
  }
  out << json{{"config", config_json(c)}, {"suites", suites}, {"pass", all}}.dump(2) << "\n";
  return all ? ok : verify_failed;
}

// ---------------------------------------------------------------- oracle-diag

int cmd_oracle_diag(const RunConfig& c, int k, int max_iterations, std::ostream& out) {
  if (k < 1) throw ParseFailure("--k must be >= 1");
  const PhysParams p = params_for(c);
  const SparseOperator H = build_hamiltonian_grid(p, gauge_for(c, p), c.grid);
  if (std::size_t(k) > H.dim()) throw ParseFailure("--k exceeds the grid dimension");
  if (max_iterations < 1) throw ParseFailure("--max-iterations must be >= 1");
  EigenOptions eo;
  eo.max_iterations = max_iterations;
  const auto ep = lowest_eigenpairs(H, k, eo);
  std::vector<double> frame(k);
  for (int i = 0; i < k; ++i) {
    std::vector<cplx> v(ep.vectors.col(i).data(), ep.vectors.col(i).data() + H.dim());
    frame[i] = frame_mass_fraction(c.grid, v);
  }
  if (c.output == "json") {
    json rows = json::array();
    for (int i = 0; i < k; ++i)
      rows.push_back({{"index", i}, {"energy", ep.values[i]}, {"boundary_mass_fraction", frame[i]}, {"residual", ep.residuals[i]}});
    out << json{{"config", config_json(c)}, {"method", ep.method}, {"eigenvalues", rows}}.dump(2) << "\n";
  } else {
    echo_csv(out, "oracle-diag method=" + ep.method, c);
    out << "index,energy,boundary_mass_fraction\n";
    for (int i = 0; i < k; ++i) out << i << "," << num(ep.values[i]) << "," << num(frame[i]) << "\n";
  }
  return ok;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_option("--system", f.system, "free|landau|osc_b");
  sub->add_option("--gauge", f.gauge, "symmetric|landau-x|landau-y");
  sub->add_option("--B", f.B, "magnetic field (signed)");
  sub->add_option("--omega0", f.omega0, "oscillator frequency");
  sub->add_option("--mass", f.mass, "particle mass (explicit units)");
  sub->add_option("--charge", f.charge, "particle charge (explicit units)");
  sub->add_option("--hbar", f.hbar, "reduced Planck constant (explicit units)");
  sub->add_flag("--natural-units", f.natural_units, "hbar = m = e = 1 (default)");
  sub->add_option("--units", f.units, "natural|explicit");
  sub->add_option("--grid-n", f.grid_n, "grid points per axis (oracle commands)");
  sub->add_option("--grid-L", f.grid_L, "grid box side (oracle commands)");
  sub->add_option("--output", f.output, "csv|json");
  sub->add_option("--seed", f.seed, "seed for randomised checks");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form magnetic propagators with numerical oracles", "magprop"};
  app.require_subcommand(1);
  Flags flags;
  EvalFlags ef;
  SpectrumFlags sf;
  TraceFlags tf;
  std::string suite = "all";
  int k = 12;
  int max_iterations = EigenOptions{}.max_iterations;

  auto* eval = app.add_subcommand("eval", "evaluate kernels for inline or file queries");
  add_common(eval, flags);
  eval->add_option("--r", ef.r, "transverse end point 'x1,x2'");
  eval->add_option("--rp", ef.rp, "transverse start point 'x1,x2'");
  eval->add_option("--x3", ef.x3, "longitudinal end point");
  eval->add_option("--x3p", ef.x3p, "longitudinal start point");
  eval->add_option("--tau", ef.tau, "real part of the time");
  eval->add_option("--tau-im", ef.tau_im, "imaginary part of the time (<= 0)");
  eval->add_option("--queries", ef.queries, "CSV file: " + std::string(kQueryHeader));
  eval->add_flag("--keep-going", ef.keep_going, "report failing rows as NaN and continue");
  eval->add_flag("--transverse", ef.transverse, "emit the transverse kernel only");

  auto* spectrum = app.add_subcommand("spectrum", "analytic energy levels, optionally with grid eigenvalues");
  add_common(spectrum, flags);
  spectrum->add_option("--l-max", sf.l_max, "largest l (osc_b)");
  spectrum->add_option("--n-max", sf.n_max, "largest n");
  spectrum->add_flag("--oracle", sf.oracle, "append grid eigenvalues");

  auto* trace = app.add_subcommand("trace", "traced kernels and partition functions");
  add_common(trace, flags);
  trace->add_option("--beta", tf.beta, "inverse temperature, tau = -i hbar beta");
  trace->add_option("--tau", tf.tau, "real part of the time");
  trace->add_option("--tau-im", tf.tau_im, "imaginary part of the time");

  auto* verify = app.add_subcommand("verify", "run self-check suites, JSON report");
  add_common(verify, flags);
  verify->add_option("--suite", suite, "algebra|gauge|pde|compose|delta|spectrum|all");

  auto* diag = app.add_subcommand("oracle-diag", "lowest grid eigenvalues");
  add_common(diag, flags);
  diag->add_option("--k", k, "number of eigenvalues");
  diag->add_option("--max-iterations", max_iterations, "subspace iteration limit");

  std::vector<const char*> argv{"magprop"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : parse_error;
  }

  try {
    const RunConfig cfg = resolve(flags);
    if (eval->parsed()) return cmd_eval(cfg, ef, out, err);
    if (spectrum->parsed()) return cmd_spectrum(cfg, sf, out);
    if (trace->parsed()) return cmd_trace(cfg, tf, out);
    if (verify->parsed()) return cmd_verify(cfg, suite, out);
    if (diag->parsed()) return cmd_oracle_diag(cfg, k, max_iterations, out);
  } catch (const ParseFailure& ex) {
    err << "error: " << ex.what() << "\n";
    return parse_error;
  } catch (const ConvergenceError& ex) {
    err << "error: " << ex.what() << " (iterations " << ex.iterations() << ", worst residual " << ex.worst_residual()
        << ")\n";
    return no_convergence;
  } catch (const CausticError& ex) {
    err << "error: " << ex.what() << "\n";
    return caustic;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return parse_error;
  }
  return parse_error;
}

}  // namespace magprop::cli
