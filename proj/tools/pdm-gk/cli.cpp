#include "cli.hpp"

#include "pdmgk/pdmgk.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>

namespace pdmgk::cli {

namespace {

using nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string &message) {
  throw Failure{kUsage, message};
}

void check(pdmgk_status status) {
  if (status == PDMGK_OK)
    return;
  const int code = (status == PDMGK_INVALID_ARGUMENT || status == PDMGK_DOMAIN)
                       ? kUsage
                       : kNumerical;
  throw Failure{code, std::string(pdmgk_status_name(status)) + ": " +
                          pdmgk_last_error()};
}

using ModelPtr = std::unique_ptr<pdmgk_model, decltype(&pdmgk_model_destroy)>;
using StatePtr = std::unique_ptr<pdmgk_state, decltype(&pdmgk_state_destroy)>;
using GridPtr =
    std::unique_ptr<pdmgk_wigner_grid, decltype(&pdmgk_wigner_grid_destroy)>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Grid {
  double lo;
  double hi;
  std::size_t npts;

  std::vector<double> points() const {
    std::vector<double> g(npts);
    const double step = (hi - lo) / static_cast<double>(npts - 1);
    for (std::size_t i = 0; i < npts; ++i)
      g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
  }
};

Grid parse_grid(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');)
    parts.push_back(item);
  if (parts.size() != 3)
    usage("--grid expects lo:hi:npts, got '" + text + "'");
  Grid g{};
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size())
      throw std::invalid_argument(parts[0]);
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size())
      throw std::invalid_argument(parts[1]);
    const long long n = std::stoll(parts[2], &used);
    if (used != parts[2].size() || n < 2 || n > 1000000)
      throw std::invalid_argument(parts[2]);
    g.npts = static_cast<std::size_t>(n);
  } catch (const std::exception &) {
    usage("--grid: cannot parse '" + text + "' (npts must be in [2, 1e6])");
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.lo < g.hi))
    usage("--grid: need finite lo < hi");
  return g;
}

struct Options {
  std::vector<double> alpha{0.2};
  double m0 = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  std::string convention = "eigenvalue";
  double J = 1.0;
  double gamma = 0.0;
  std::optional<long long> n_max;
  std::string grid;
  std::string kernel = "paper";
  std::string format;
  std::string config;
  std::string out;
  std::optional<long long> peak_at;
  std::string level = "fast";
  bool corrupt_spectrum = false;
};

// Table with per-alpha footer records.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<std::pair<std::string, double>>> footer;
};

struct Output {
  std::string body;
  ordered_json meta; // null when the command has no sidecar
};

std::string render_csv(const Table &t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      s += (i ? "," : "") + fmt(row[i]);
    s += "\n";
  }
  for (const auto &rec : t.footer) {
    s += "#";
    for (std::size_t i = 0; i < rec.size(); ++i)
      s += (i ? ", " : " ") + rec[i].first + "=" + fmt(rec[i].second);
    s += "\n";
  }
  return s;
}

std::string render_json(const Table &t) {
  ordered_json doc;
  doc["columns"] = t.columns;
  doc["rows"] = t.rows;
  ordered_json footer = ordered_json::array();
  for (const auto &rec : t.footer) {
    ordered_json o;
    for (const auto &[k, v] : rec)
      o[k] = v;
    footer.push_back(std::move(o));
  }
  doc["footer"] = std::move(footer);
  return doc.dump(2) + "\n";
}

class Runner {
public:
  Runner(Options opts, std::string command)
      : o_(std::move(opts)), command_(std::move(command)) {}

  Output spectrum();
  Output mass();
  Output pn();
  Output stats();
  Output weight();
  Output wigner();
  Output verify(int &exit_code);

private:
  pdmgk_params params(double alpha) const {
    pdmgk_params p;
    pdmgk_params_default(&p);
    p.m0 = o_.m0;
    p.omega = o_.omega;
    p.hbar = o_.hbar;
    p.alpha = alpha;
    p.convention = o_.convention == "printed" ? PDMGK_ENERGY_PRINTED
                                              : PDMGK_ENERGY_EIGENVALUE;
    return p;
  }

  ModelPtr model(double alpha) const {
    const pdmgk_params p = params(alpha);
    pdmgk_model *m = nullptr;
    check(pdmgk_model_create(&p, &m));
    return ModelPtr(m, &pdmgk_model_destroy);
  }

  double single_alpha() const {
    if (o_.alpha.size() != 1)
      usage(command_ + " takes exactly one --alpha");
    return o_.alpha.front();
  }

  Grid grid_or(const std::string &fallback) const {
    return parse_grid(o_.grid.empty() ? fallback : o_.grid);
  }

  void require_table_format() const {
    if (o_.format != "csv" && o_.format != "json")
      usage(command_ + ": --format must be csv or json");
  }

  Output table_output(const Table &t, const std::string &x_label,
                      const std::string &y_label) const {
    require_table_format();
    Output out;
    out.body = o_.format == "json" ? render_json(t) : render_csv(t);
    out.meta = meta(x_label, y_label, t.columns);
    return out;
  }

  ordered_json meta(const std::string &x_label, const std::string &y_label,
                    const std::vector<std::string> &columns) const {
    ordered_json m;
    m["command"] = command_;
    m["x_label"] = x_label;
    m["y_label"] = y_label;
    m["columns"] = columns;
    ordered_json legend = ordered_json::array();
    for (double a : o_.alpha)
      legend.push_back("alpha = " + fmt(a));
    m["legend"] = legend;
    m["params"] = {{"m0", o_.m0},
                   {"omega", o_.omega},
                   {"hbar", o_.hbar},
                   {"alpha", o_.alpha},
                   {"energy_convention", o_.convention}};
    return m;
  }

  Options o_;
  std::string command_;
};

Output Runner::spectrum() {
  const long long n_max = o_.n_max.value_or(10);
  if (n_max < 0 || n_max > 100000)
    usage("--n-max must lie in [0, 100000]");
  Table t;
  t.columns = {"alpha", "n", "E_n", "e_n"};
  for (double a : o_.alpha) {
    const ModelPtr m = model(a);
    for (long long n = 0; n <= n_max; ++n) {
      double E = 0.0;
      double e = 0.0;
      check(pdmgk_energy(m.get(), static_cast<size_t>(n), &E, &e));
      t.rows.push_back({a, static_cast<double>(n), E, e});
    }
  }
  return table_output(t, "n", "E_n");
}

Output Runner::mass() {
  const Grid g = grid_or("0:0.5:51");
  Table t;
  t.columns = {"alpha", "x", "m"};
  for (double a : o_.alpha) {
    const ModelPtr m = model(a);
    for (double x : g.points()) {
      double v = 0.0;
      check(pdmgk_mass(m.get(), x, &v));
      t.rows.push_back({a, x, v});
    }
  }
  return table_output(t, "x", "m(x)");
}

Output Runner::pn() {
  if (o_.n_max && (*o_.n_max < 0 || *o_.n_max > 2000))
    usage("--n-max must lie in [0, 2000]");
  if (o_.peak_at && (*o_.peak_at < 0 || *o_.peak_at > 500))
    usage("--peak-at must lie in [0, 500]");
  Table t;
  t.columns = {"alpha", "J", "n", "P_n"};
  for (double a : o_.alpha) {
    const ModelPtr m = model(a);
    double J = o_.J;
    if (o_.peak_at)
      check(pdmgk_solve_peak_j(m.get(), static_cast<size_t>(*o_.peak_at), &J));
    std::size_t count = 0;
    check(pdmgk_photon_distribution(m.get(), J, nullptr, 0, &count));
    std::vector<double> P(count);
    check(pdmgk_photon_distribution(m.get(), J, P.data(), P.size(), &count));
    double sum = 0.0;
    std::size_t peak = 0;
    for (std::size_t n = 0; n < count; ++n) {
      sum += P[n];
      if (P[n] > P[peak])
        peak = n;
    }
    const std::size_t shown =
        o_.n_max ? std::min<std::size_t>(count, static_cast<std::size_t>(*o_.n_max) + 1)
                 : count;
    for (std::size_t n = 0; n < shown; ++n)
      t.rows.push_back({a, J, static_cast<double>(n), P[n]});
    t.footer.push_back({{"alpha", a},
                        {"J", J},
                        {"sum_P", sum},
                        {"peak_n", static_cast<double>(peak)}});
  }
  return table_output(t, "n", "P_n");
}

Output Runner::stats() {
  const Grid g = grid_or("0.1:20:200");
  if (g.lo < 0.0)
    usage("stats: J grid must be non-negative");
  Table t;
  t.columns = {"alpha", "J", "g2", "Q", "mean_N"};
  for (double a : o_.alpha) {
    const ModelPtr m = model(a);
    double worst = 0.0;
    for (double J : g.points()) {
      pdmgk_statistics s;
      check(pdmgk_statistics_at(m.get(), J, &s));
      worst = std::max(worst, s.residual);
      t.rows.push_back({a, J, s.g2, s.mandel_q, s.mean_n});
    }
    t.footer.push_back({{"alpha", a}, {"max_series_gap", worst}});
  }
  return table_output(t, "J", "g2, Q");
}

Output Runner::weight() {
  const Grid g = grid_or("0:5:101");
  if (g.lo < 0.0)
    usage("weight: J grid must be non-negative");
  Table t;
  t.columns = {"alpha", "J", "W", "Wbar"};
  for (double a : o_.alpha) {
    const ModelPtr m = model(a);
    for (double J : g.points()) {
      double W = 0.0;
      double Wbar = 0.0;
      check(pdmgk_weight(m.get(), J, &W, &Wbar));
      t.rows.push_back({a, J, W, Wbar});
    }
    double integral = 0.0;
    check(pdmgk_weight_moment(m.get(), 0, &integral, nullptr));
    t.footer.push_back({{"alpha", a}, {"int_Wbar", integral}});
  }
  return table_output(t, "J", "W(J)");
}

Output Runner::wigner() {
  const double a = single_alpha();
  const Grid g = grid_or("-3:3:201");
  if (g.lo != -g.hi)
    usage("wigner: grid must be symmetric, lo = -hi");
  if (g.npts < 16 || g.npts > 2001)
    usage("wigner: npts must lie in [16, 2001]");
  int kernel = PDMGK_KERNEL_PAPER;
  if (o_.kernel == "fock")
    kernel = PDMGK_KERNEL_FOCK;
  else if (o_.kernel != "paper")
    usage("--kernel must be paper or fock");

  const ModelPtr m = model(a);
  pdmgk_state *raw_state = nullptr;
  check(pdmgk_state_create(m.get(), o_.J, o_.gamma, &raw_state));
  const StatePtr state(raw_state, &pdmgk_state_destroy);
  pdmgk_wigner_grid *raw_grid = nullptr;
  check(pdmgk_wigner_grid_create(state.get(), g.hi, g.npts, kernel, &raw_grid));
  const GridPtr grid(raw_grid, &pdmgk_wigner_grid_destroy);

  const std::size_t n = pdmgk_wigner_grid_npts(grid.get());
  const double *axis = pdmgk_wigner_grid_axis(grid.get());
  const double *values = pdmgk_wigner_grid_values(grid.get());
  pdmgk_wigner_summary sum;
  pdmgk_wigner_grid_summary(grid.get(), &sum);
  const std::vector<double> ax(axis, axis + n);

  Output out;
  out.meta = meta("Re z", "Im z", {"re_z", "im_z", "W"});
  out.meta["kernel"] = o_.kernel;
  out.meta["J"] = o_.J;
  out.meta["gamma"] = o_.gamma;
  const std::string format = o_.format.empty() ? "json" : o_.format;
  if (format == "json") {
    ordered_json doc;
    doc["kernel"] = o_.kernel;
    doc["alpha"] = a;
    doc["J"] = o_.J;
    doc["gamma"] = o_.gamma;
    doc["re_z"] = ax;
    doc["im_z"] = ax;
    doc["values"] = std::vector<double>(values, values + n * n);
    doc["min_value"] = sum.min_value;
    doc["max_value"] = sum.max_value;
    doc["negative_fraction"] = sum.negative_fraction;
    doc["integral"] = sum.integral;
    out.body = doc.dump() + "\n";
  } else if (format == "csv") {
    Table t;
    t.columns = {"re_z", "im_z", "W"};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t.rows.push_back({ax[j], ax[i], values[i * n + j]});
    t.footer.push_back({{"min_value", sum.min_value},
                        {"max_value", sum.max_value},
                        {"negative_fraction", sum.negative_fraction},
                        {"integral", sum.integral}});
    out.body = render_csv(t);
  } else {
    usage("wigner: --format must be csv or json");
  }
  return out;
}

Output Runner::verify(int &exit_code) {
  const double a = single_alpha();
  if (!o_.format.empty() && o_.format != "json")
    usage("verify: reports are JSON only");
  int level = PDMGK_LEVEL_FAST;
  if (o_.level == "full")
    level = PDMGK_LEVEL_FULL;
  else if (o_.level != "fast")
    usage("--level must be fast or full");
  const pdmgk_params p = params(a);
  char *json = nullptr;
  int overall = 0;
  check(pdmgk_verify_run(&p, level, o_.corrupt_spectrum ? 1 : 0, &json, &overall));
  Output out;
  out.body = json;
  pdmgk_string_free(json);
  exit_code = overall ? kSuccess : kVerificationFailed;
  return out;
}

void apply_config(Options &o, const CLI::App &sub) {
  std::ifstream in(o.config);
  if (!in)
    usage("--config: cannot open " + o.config);
  ordered_json cfg;
  try {
    in >> cfg;
  } catch (const std::exception &e) {
    usage(std::string("--config: ") + e.what());
  }
  if (!cfg.is_object())
    usage("--config: top level must be an object");
  auto given = [&](const char *flag) { return sub.count(flag) > 0; };
  try {
    for (const auto &[key, value] : cfg.items()) {
      if (key == "alpha") {
        if (given("--alpha"))
          continue;
        o.alpha = value.is_array() ? value.get<std::vector<double>>()
                                   : std::vector<double>{value.get<double>()};
      } else if (key == "m0") {
        if (!given("--m0"))
          o.m0 = value.get<double>();
      } else if (key == "omega") {
        if (!given("--omega"))
          o.omega = value.get<double>();
      } else if (key == "hbar") {
        if (!given("--hbar"))
          o.hbar = value.get<double>();
      } else if (key == "energy_convention") {
        if (!given("--energy-convention"))
          o.convention = value.get<std::string>();
      } else if (key == "J") {
        if (!given("--J"))
          o.J = value.get<double>();
      } else if (key == "gamma") {
        if (!given("--gamma"))
          o.gamma = value.get<double>();
      } else if (key == "n_max") {
        if (!given("--n-max"))
          o.n_max = value.get<long long>();
      } else if (key == "grid") {
        if (!given("--grid"))
          o.grid = value.get<std::string>();
      } else if (key == "kernel") {
        if (!given("--kernel"))
          o.kernel = value.get<std::string>();
      } else if (key == "format") {
        if (!given("--format"))
          o.format = value.get<std::string>();
      } else if (key == "peak_at") {
        if (!given("--peak-at"))
          o.peak_at = value.get<long long>();
      } else if (key == "level") {
        if (!given("--level"))
          o.level = value.get<std::string>();
      } else {
        usage("--config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception &e) {
    usage(std::string("--config: ") + e.what());
  }
}

void validate(const Options &o) {
  if (o.alpha.empty())
    usage("--alpha needs at least one value");
  for (double a : o.alpha)
    if (!(a > 0.0 && a < 1.0))
      usage("alpha must lie in (0, 1), got " + fmt(a));
  for (auto [name, v] : {std::pair{"m0", o.m0}, {"omega", o.omega}, {"hbar", o.hbar}})
    if (!(v > 0.0) || !std::isfinite(v))
      usage(std::string("--") + name + " must be positive");
  if (o.convention != "eigenvalue" && o.convention != "printed")
    usage("--energy-convention must be eigenvalue or printed");
  if (!(o.J >= 0.0) || !(o.J <= 1e6))
    usage("--J must lie in [0, 1e6]");
  if (!std::isfinite(o.gamma))
    usage("--gamma must be finite");
}

void add_common(CLI::App *sub, Options &o) {
  sub->add_option("--alpha", o.alpha, "deformation parameter(s), 0 < alpha < 1")
      ->expected(1, 64)
      ->delimiter(',');
  sub->add_option("--m0", o.m0, "mass scale");
  sub->add_option("--omega", o.omega, "angular frequency");
  sub->add_option("--hbar", o.hbar, "reduced Planck constant");
  sub->add_option("--energy-convention", o.convention, "eigenvalue | printed");
  sub->add_option("--config", o.config, "JSON config; flags override it");
  sub->add_option("--out", o.out, "output file (plus a .meta.json sidecar)");
  sub->add_option("--format", o.format, "csv | json");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Position-dependent-mass oscillator and its coherent states",
               "pdm-gk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand help for all commands");

  Options o;
  CLI::App *spectrum = app.add_subcommand("spectrum", "E_n and e_n per alpha");
  CLI::App *mass = app.add_subcommand("mass", "mass profile m(x)");
  CLI::App *pn = app.add_subcommand("pn", "photon-number distribution");
  CLI::App *stats = app.add_subcommand("stats", "g2, Q and <N> over a J grid");
  CLI::App *weight = app.add_subcommand("weight", "resolution-of-unity weight W(J)");
  CLI::App *wigner = app.add_subcommand("wigner", "Wigner function on a grid");
  CLI::App *verify = app.add_subcommand("verify", "run the verification battery");
  for (CLI::App *sub : {spectrum, mass, pn, stats, weight, wigner, verify})
    add_common(sub, o);

  spectrum->add_option("--n-max", o.n_max, "highest level");
  mass->add_option("--grid", o.grid, "x grid lo:hi:npts");
  pn->add_option("--J", o.J, "J label");
  pn->add_option("--n-max", o.n_max, "highest n printed");
  pn->add_option("--peak-at", o.peak_at, "solve J so that P_n peaks at this n");
  stats->add_option("--grid", o.grid, "J grid lo:hi:npts");
  weight->add_option("--grid", o.grid, "J grid lo:hi:npts");
  wigner->add_option("--J", o.J, "J label");
  wigner->add_option("--gamma", o.gamma, "gamma label");
  wigner->add_option("--grid", o.grid, "symmetric grid -h:h:npts per axis");
  wigner->add_option("--kernel", o.kernel, "paper | fock");
  verify->add_option("--level", o.level, "fast | full");
  verify->add_flag("--corrupt-spectrum", o.corrupt_spectrum,
                   "negative control: perturb e_1");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError &e) {
    err << "pdm-gk: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App *sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    if (!o.config.empty())
      apply_config(o, *sub);
    validate(o);
    const bool table = command != "wigner" && command != "verify";
    if (table && o.format.empty())
      o.format = "csv";
    Runner runner(o, command);
    int code = kSuccess;
    Output result;
    if (command == "spectrum")
      result = runner.spectrum();
    else if (command == "mass")
      result = runner.mass();
    else if (command == "pn")
      result = runner.pn();
    else if (command == "stats")
      result = runner.stats();
    else if (command == "weight")
      result = runner.weight();
    else if (command == "wigner")
      result = runner.wigner();
    else
      result = runner.verify(code);

    if (o.out.empty()) {
      out << result.body;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file)
        throw Failure{kUsage, "--out: cannot write " + o.out};
      file << result.body;
      if (!result.meta.is_null()) {
        std::ofstream side(o.out + ".meta.json", std::ios::binary);
        side << result.meta.dump(2) << "\n";
      }
    }
    return code;
  } catch (const Failure &f) {
    err << "pdm-gk " << command << ": " << f.message << "\n";
    return f.code;
  }
}

} // namespace pdmgk::cli
