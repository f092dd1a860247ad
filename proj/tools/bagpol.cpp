// Command-line front end: spectrum listings, second-order shift reports by
// method, ma sweeps, series-rearrangement demos, and polarizability values.
// Exit codes: 0 success, 1 usage/validation error, 2 numerical failure.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bagpol/dalgarno_lewis.hpp"
#include "bagpol/perturbation.hpp"

using json = nlohmann::ordered_json;
using namespace bagpol;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes to stdout, or atomically (temp file + rename) when a path is given.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  const bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size();
  if (std::fclose(f) != 0 || !ok) {
    std::remove(tmp.c_str());
    throw std::invalid_argument("cannot write output file: " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::invalid_argument("cannot move output into place: " + path);
  }
}

std::string csv_preamble(const std::vector<std::pair<std::string, std::string>>& meta) {
  std::string s = "# bagpol csv v1\n";
  for (const auto& [k, v] : meta) s += "# " + k + " " + v + "\n";
  return s;
}

struct CommonOpts {
  double ma = 0.0;
  double a = 1.0;
  double lambda = 1.0;
  int n_max = 200;
  double tail_tol = 1e-10;
  std::string format = "text";
  std::string out;

  BagModel model() const { return BagModel(ma / a, a); }
  Truncation trunc() const { return Truncation{n_max, tail_tol, TailStrategy::power_law}; }
  void add_model_flags(CLI::App* cmd, bool ma_required) {
    auto* o = cmd->add_option("--ma", ma, "dimensionless mass m*a");
    if (ma_required) o->required();
    cmd->add_option("--a", a, "bag half-width")->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", lambda, "linear-potential coupling");
  }
  void add_trunc_flags(CLI::App* cmd) {
    cmd->add_option("--nmax", n_max, "levels kept per tower")->check(CLI::PositiveNumber);
    cmd->add_option("--tail-tol", tail_tol, "tail tolerance in lambda^2 a^3 units")
        ->check(CLI::PositiveNumber);
  }
  void add_io_flags(CLI::App* cmd) {
    cmd->add_option("--format", format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--out", out, "write to this file instead of stdout");
  }
};

ShiftReport compute_report(Method method, const BagModel& model, const Perturbation& pert,
                           const Truncation& trunc) {
  switch (method) {
    case Method::pauli: return method_I_total(model, pert, trunc);
    case Method::free: return method_II_total(model, pert, trunc);
    case Method::dalgarno_lewis: return dl_total(model, pert, trunc);
    default: throw std::invalid_argument("no report for this method");
  }
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::pauli, Method::free, Method::dalgarno_lewis, Method::nonrel})
    if (name == method_name(m)) return m;
  throw std::invalid_argument("unknown method: " + name);
}

std::string render_report(const ShiftReport& r, bool per_level, const std::string& format) {
  std::vector<std::pair<std::string, std::string>> meta = {
      {"method", method_name(r.method)},
      {"ma", fmt(r.ma)},
      {"a", fmt(r.a)},
      {"lambda", fmt(r.lambda)},
      {"n_max", fmt(r.n_max)},
      {"tail_tol", fmt(r.tail_tol)},
      {"w_bound", fmt(r.w_bound)},
      {"w_vac", fmt(r.w_vac)},
      {"w_total", fmt(r.w_total)},
      {"inner_tail", fmt(r.inner_tail)},
      {"outer_tail", fmt(r.outer_tail)},
      {"tail_estimate", fmt(r.tail_estimate)},
      {"tail_ok", r.tail_ok ? "yes" : "no"},
  };
  if (r.method == Method::dalgarno_lewis)
    meta.emplace_back("dl_max_disagreement", fmt(r.dl_max_disagreement));

  if (format == "json") {
    json j;
    j["method"] = method_name(r.method);
    j["ma"] = r.ma;
    j["a"] = r.a;
    j["lambda"] = r.lambda;
    j["n_max"] = r.n_max;
    j["tail_tol"] = r.tail_tol;
    j["w_bound"] = r.w_bound;
    j["w_vac"] = r.w_vac;
    j["w_total"] = r.w_total;
    j["inner_tail"] = r.inner_tail;
    j["outer_tail"] = r.outer_tail;
    j["tail_estimate"] = r.tail_estimate;
    j["tail_ok"] = r.tail_ok;
    if (r.method == Method::dalgarno_lewis) j["dl_max_disagreement"] = r.dl_max_disagreement;
    if (per_level) {
      json levels = json::array();
      for (const auto& [lab, w] : r.per_level) levels.push_back({{"level", lab}, {"shift", w}});
      j["per_level"] = levels;
    }
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string s = csv_preamble(meta);
    if (per_level) {
      s += "level,shift\n";
      for (const auto& [lab, w] : r.per_level) s += lab + "," + fmt(w) + "\n";
    } else {
      s += "w_bound,w_vac,w_total,tail_estimate\n";
      s += fmt(r.w_bound) + "," + fmt(r.w_vac) + "," + fmt(r.w_total) + "," +
           fmt(r.tail_estimate) + "\n";
    }
    return s;
  }
  std::string s;
  for (const auto& [k, v] : meta) s += k + ": " + v + "\n";
  if (per_level)
    for (const auto& [lab, w] : r.per_level) s += "level " + lab + " " + fmt(w) + "\n";
  return s;
}

int run_spectrum(const CommonOpts& opt, int count, const std::string& sign, bool pi_units) {
  const BagModel model = opt.model();
  std::vector<Level> levels;
  if (sign == "positive" || sign == "both")
    for (const Level& lv : enumerate_levels(model, count, Sign::positive)) levels.push_back(lv);
  if (sign == "negative" || sign == "both")
    for (const Level& lv : enumerate_levels(model, count, Sign::negative)) levels.push_back(lv);

  const std::string kcol = pi_units ? "ka_over_pi" : "ka";
  const auto kval = [&](const Level& lv) { return lv.k * model.a / (pi_units ? pi : 1.0); };

  if (opt.format == "json") {
    json rows = json::array();
    for (const Level& lv : levels)
      rows.push_back({{"level", label(lv)},
                      {kcol, kval(lv)},
                      {"eps_a", lv.eps * model.a},
                      {"norm", lv.norm}});
    json j = {{"ma", opt.ma}, {"a", opt.a}, {"levels", rows}};
    emit(opt.out, j.dump(2) + "\n");
  } else if (opt.format == "csv") {
    std::string s = csv_preamble({{"ma", fmt(opt.ma)}, {"a", fmt(opt.a)}});
    s += "level," + kcol + ",eps_a,norm\n";
    for (const Level& lv : levels)
      s += label(lv) + "," + fmt(kval(lv)) + "," + fmt(lv.eps * model.a) + "," + fmt(lv.norm) +
           "\n";
    emit(opt.out, s);
  } else {
    std::string s = "ma: " + fmt(opt.ma) + "\na: " + fmt(opt.a) + "\n";
    s += "level  " + kcol + "  eps_a  norm\n";
    for (const Level& lv : levels)
      s += label(lv) + "  " + fmt(kval(lv)) + "  " + fmt(lv.eps * model.a) + "  " +
           fmt(lv.norm) + "\n";
    emit(opt.out, s);
  }
  return 0;
}

int run_shift(const CommonOpts& opt, const std::string& method_str, bool per_level) {
  const Method method = parse_method(method_str);
  const BagModel model = opt.model();
  const Perturbation pert = Perturbation::from_lambda(opt.lambda);
  if (method == Method::nonrel) {
    const double scale = opt.lambda == 0.0 ? 1.0 : opt.lambda * opt.lambda;
    const double w = nonrel_shift(model, pert) / (scale * opt.a * opt.a * opt.a);
    if (opt.format == "json") {
      json j = {{"method", "nonrel"}, {"ma", opt.ma}, {"a", opt.a},
                {"lambda", opt.lambda}, {"w_total", w}};
      emit(opt.out, j.dump(2) + "\n");
    } else if (opt.format == "csv") {
      std::string s = csv_preamble({{"method", "nonrel"},
                                    {"ma", fmt(opt.ma)},
                                    {"a", fmt(opt.a)},
                                    {"lambda", fmt(opt.lambda)}});
      s += "w_total\n" + fmt(w) + "\n";
      emit(opt.out, s);
    } else {
      emit(opt.out, "method: nonrel\nma: " + fmt(opt.ma) + "\na: " + fmt(opt.a) +
                        "\nlambda: " + fmt(opt.lambda) + "\nw_total: " + fmt(w) + "\n");
    }
    return 0;
  }
  const ShiftReport r = compute_report(method, model, pert, opt.trunc());
  emit(opt.out, render_report(r, per_level, opt.format));
  return 0;
}

int run_sweep(const CommonOpts& opt, double ma_min, double ma_max, int steps,
              const std::string& methods_csv) {
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  if (!(ma_max > ma_min)) throw std::invalid_argument("sweep needs ma-max > ma-min");
  std::vector<Method> methods;
  std::stringstream ss(methods_csv);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) methods.push_back(parse_method(tok));
  if (methods.empty()) throw std::invalid_argument("sweep needs at least one method");

  const Perturbation pert = Perturbation::from_lambda(opt.lambda);
  const Truncation trunc = opt.trunc();

  std::vector<std::string> cols;
  for (Method m : methods) {
    std::string name = method_name(m);
    for (char& c : name)
      if (c == '-') c = '_';
    cols.push_back("w_" + name);
  }

  std::vector<std::vector<double>> rows;
  for (int i = 0; i < steps; ++i) {
    const double ma = ma_min + (ma_max - ma_min) * i / (steps - 1);
    const BagModel model(ma / opt.a, opt.a);
    std::vector<double> row = {ma};
    for (Method m : methods) {
      if (m == Method::nonrel) {
        const double scale = (opt.lambda == 0.0 ? 1.0 : opt.lambda * opt.lambda) * opt.a *
                             opt.a * opt.a;
        row.push_back(ma == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                : nonrel_shift(model, pert) / scale);
      } else {
        row.push_back(compute_report(m, model, pert, trunc).w_total);
      }
    }
    rows.push_back(std::move(row));
  }

  if (opt.format == "json") {
    json out = json::array();
    for (const auto& row : rows) {
      json obj = {{"ma", row[0]}};
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const double v = row[c + 1];
        if (std::isnan(v))
          obj[cols[c]] = nullptr;
        else
          obj[cols[c]] = v;
      }
      out.push_back(obj);
    }
    emit(opt.out, out.dump(2) + "\n");
    return 0;
  }
  // text falls back to the CSV table, which is the natural shape here.
  std::string s = csv_preamble({{"a", fmt(opt.a)},
                                {"lambda", fmt(opt.lambda)},
                                {"n_max", fmt(opt.n_max)},
                                {"tail_tol", fmt(opt.tail_tol)}});
  s += "ma";
  for (const std::string& c : cols) s += "," + c;
  s += "\n";
  for (const auto& row : rows) {
    s += fmt(row[0]);
    for (std::size_t c = 0; c < cols.size(); ++c)
      s += "," + (std::isnan(row[c + 1]) ? std::string("nan") : fmt(row[c + 1]));
    s += "\n";
  }
  emit(opt.out, s);
  return 0;
}

int run_rearrange(const CommonOpts& opt, const std::string& scheme_str, int terms, int band) {
  PairingScheme scheme;
  if (scheme_str == "row-pairs") scheme.kind = PairingKind::row_pairs;
  else if (scheme_str == "column-pairs") scheme.kind = PairingKind::column_pairs;
  else if (scheme_str == "n-prime-first") scheme.kind = PairingKind::n_prime_first;
  else if (scheme_str == "n-first") scheme.kind = PairingKind::n_first;
  else if (scheme_str == "diagonal-band") scheme.kind = PairingKind::diagonal_band;
  else throw std::invalid_argument("unknown scheme: " + scheme_str);
  scheme.band = band;

  const BagModel model = opt.model();
  const Perturbation pert = Perturbation::from_lambda(opt.lambda);
  const auto tr = rearrangement_demo(pert, model, scheme, terms);
  const double scale =
      (opt.lambda == 0.0 ? 1.0 : opt.lambda * opt.lambda) * opt.a * opt.a * opt.a;

  if (opt.format == "json") {
    json sums = json::array();
    for (double s : tr.partial_sums) sums.push_back(s / scale);
    json j = {{"scheme", scheme_str},
              {"terms", terms},
              {"convergent", tr.convergent},
              {"limit_estimate", tr.convergent ? json(tr.limit_estimate / scale) : json(nullptr)},
              {"tail_estimate", tr.convergent ? json(tr.tail_estimate / scale) : json(nullptr)},
              {"partial_sums", sums}};
    emit(opt.out, j.dump(2) + "\n");
    return 0;
  }
  std::vector<std::pair<std::string, std::string>> meta = {
      {"scheme", scheme_str},
      {"terms", fmt(terms)},
      {"convergent", tr.convergent ? "yes" : "no"},
      {"limit_estimate", tr.convergent ? fmt(tr.limit_estimate / scale) : "nan"},
      {"tail_estimate", tr.convergent ? fmt(tr.tail_estimate / scale) : "nan"},
  };
  if (opt.format == "csv") {
    std::string s = csv_preamble(meta);
    s += "step,partial_sum\n";
    for (std::size_t i = 0; i < tr.partial_sums.size(); ++i)
      s += fmt(static_cast<double>(i)) + "," + fmt(tr.partial_sums[i] / scale) + "\n";
    emit(opt.out, s);
    return 0;
  }
  std::string s;
  for (const auto& [k, v] : meta) s += k + ": " + v + "\n";
  for (std::size_t i = 0; i < tr.partial_sums.size(); ++i)
    s += "step " + fmt(static_cast<double>(i)) + " " + fmt(tr.partial_sums[i] / scale) + "\n";
  emit(opt.out, s);
  return 0;
}

int run_polarizability(const CommonOpts& opt, double q, double efield,
                       const std::string& method_str) {
  const Method method = parse_method(method_str);
  if (method == Method::nonrel)
    throw std::invalid_argument("polarizability reports use pauli, free, or dalgarno-lewis");
  const Perturbation pert = Perturbation::from_field(q, efield);
  const BagModel model(opt.ma / opt.a, opt.a);
  const ShiftReport r = compute_report(method, model, pert, opt.trunc());
  const double p = polarizability(r, pert);

  if (opt.format == "json") {
    json j = {{"method", method_name(method)}, {"ma", opt.ma}, {"a", opt.a},
              {"q", q},      {"e_field", efield}, {"polarizability", p}};
    emit(opt.out, j.dump(2) + "\n");
  } else if (opt.format == "csv") {
    std::string s = csv_preamble({{"method", method_name(method)},
                                  {"ma", fmt(opt.ma)},
                                  {"a", fmt(opt.a)},
                                  {"q", fmt(q)},
                                  {"e_field", fmt(efield)}});
    s += "polarizability\n" + fmt(p) + "\n";
    emit(opt.out, s);
  } else {
    emit(opt.out, "method: " + std::string(method_name(method)) + "\nma: " + fmt(opt.ma) +
                      "\na: " + fmt(opt.a) + "\nq: " + fmt(q) + "\ne_field: " + fmt(efield) +
                      "\npolarizability: " + fmt(p) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order level shifts of a 1D confined Dirac particle in a linear potential"};
  app.require_subcommand(1);

  CommonOpts opt;

  auto* spectrum = app.add_subcommand("spectrum", "list bound levels");
  int count = 8;
  std::string sign = "both";
  bool pi_units = false;
  opt.add_model_flags(spectrum, true);
  opt.add_io_flags(spectrum);
  spectrum->add_option("--count", count, "levels per sign")->check(CLI::PositiveNumber);
  spectrum->add_option("--sign", sign, "positive, negative, or both")
      ->check(CLI::IsMember({"positive", "negative", "both"}));
  spectrum->add_flag("--pi-units", pi_units, "print ka/pi instead of ka");

  auto* shift = app.add_subcommand("shift", "second-order shift report");
  std::string method = "pauli";
  bool per_level = false;
  opt.add_model_flags(shift, true);
  opt.add_trunc_flags(shift);
  opt.add_io_flags(shift);
  shift->add_option("--method", method, "pauli, free, dalgarno-lewis, or nonrel")
      ->check(CLI::IsMember({"pauli", "free", "dalgarno-lewis", "nonrel"}));
  shift->add_flag("--per-level", per_level, "include every level's contribution");

  auto* sweep = app.add_subcommand("sweep", "w_total vs ma table");
  double ma_min = 0.0, ma_max = 3.0;
  int steps = 31;
  std::string methods_csv = "pauli,free,dalgarno-lewis,nonrel";
  opt.add_model_flags(sweep, false);
  opt.add_trunc_flags(sweep);
  opt.add_io_flags(sweep);
  sweep->add_option("--ma-min", ma_min, "sweep start");
  sweep->add_option("--ma-max", ma_max, "sweep end");
  sweep->add_option("--steps", steps, "sample count");
  sweep->add_option("--methods", methods_csv, "comma-separated method list");

  auto* rearrange = app.add_subcommand("rearrange", "conditional-series traversal demo");
  std::string scheme = "row-pairs";
  int terms = 100;
  int band = 1;
  opt.add_model_flags(rearrange, false);
  opt.add_io_flags(rearrange);
  rearrange->add_option("--scheme", scheme,
                        "row-pairs, column-pairs, n-prime-first, n-first, diagonal-band");
  rearrange->add_option("--terms", terms, "partial sums to record");
  rearrange->add_option("--band", band, "diagonal offset for diagonal-band");

  auto* polar = app.add_subcommand("polarizability", "electric polarizability");
  double q = 1.0, efield = 1.0;
  std::string pmethod = "pauli";
  opt.add_model_flags(polar, true);
  opt.add_trunc_flags(polar);
  opt.add_io_flags(polar);
  polar->add_option("--q", q, "particle charge")->required();
  polar->add_option("--efield", efield, "external field")->required();
  polar->add_option("--method", pmethod, "pauli, free, or dalgarno-lewis");

  try {
    app.parse(argc, argv);
    if (spectrum->parsed()) return run_spectrum(opt, count, sign, pi_units);
    if (shift->parsed()) return run_shift(opt, method, per_level);
    if (sweep->parsed()) return run_sweep(opt, ma_min, ma_max, steps, methods_csv);
    if (rearrange->parsed()) return run_rearrange(opt, scheme, terms, band);
    if (polar->parsed()) return run_polarizability(opt, q, efield, pmethod);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  }
}
