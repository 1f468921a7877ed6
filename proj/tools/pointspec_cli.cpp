// pointspec: command-line front end over the C API.
//
//   pointspec classify       --xi .. --alpha-re .. --alpha-im .. --beta-re .. --beta-im ..
//   pointspec spectrum       [--levels N | --k-max K]
//   pointspec eigenstate     [--levels N] [--grid G]
//   pointspec kernel-compare [--tau T] [--grid G] [--tol T]
//   pointspec scan           --sweep name:start:stop:count [--sweep ...]
//   pointspec oracle-check   [--levels N] [--grid N_POINTS] [--tol T]
//
// Exit status: 0 success, 2 validation error, 3 numerical contradiction.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pointspec/pointspec.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Failure {
  int exit_code;
  std::string message;
};

void check(ps_status s) {
  if (s == PS_OK) return;
  const bool numerical = s == PS_INTERNAL_CONTRADICTION ||
                         s == PS_EIGENSOLVER_FAILURE ||
                         s == PS_NO_NULLSPACE || s == PS_UNKNOWN;
  throw Failure{numerical ? kExitNumerical : kExitValidation,
                std::string(ps_status_name(s)) + ": " + ps_last_error()};
}

[[noreturn]] void invalid(const std::string& msg) {
  throw Failure{kExitValidation, msg};
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Point = std::unique_ptr<ps_point, Deleter<ps_point, ps_point_destroy>>;
using SpectrumHandle =
    std::unique_ptr<ps_spectrum, Deleter<ps_spectrum, ps_spectrum_destroy>>;
using Modes = std::unique_ptr<ps_modes, Deleter<ps_modes, ps_modes_destroy>>;
using Kernel = std::unique_ptr<ps_kernel, Deleter<ps_kernel, ps_kernel_destroy>>;

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON text with every float at 17 significant digits.
void dump(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        dump(v, out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += num(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json complex_json(const double z[2]) { return Json{{"re", z[0]}, {"im", z[1]}}; }

// Accepts key=value files and JSON documents written by this tool.
class PointConfig : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream again(text);
      return CLI::ConfigBase::from_config(again);
    }
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw CLI::ConversionError(std::string("config JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    auto add = [&](const std::string& key, const Json& v) {
      CLI::ConfigItem item;
      item.name = key;
      item.inputs = {num(v.get<double>())};
      items.push_back(std::move(item));
    };
    if (doc.contains("point")) {
      const Json& p = doc["point"];
      add("xi", p.at("xi"));
      add("alpha-re", p.at("alpha").at("re"));
      add("alpha-im", p.at("alpha").at("im"));
      add("beta-re", p.at("beta").at("re"));
      add("beta-im", p.at("beta").at("im"));
      add("L0", p.at("L0"));
    }
    if (doc.contains("geometry")) {
      const Json& g = doc["geometry"];
      add("length", g.at("l"));
      add("hbar", g.at("hbar"));
      add("mass", g.at("mass"));
    }
    return items;
  }
};

struct Options {
  double xi = 0.0;
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  double beta_re = 0.0;
  double beta_im = 0.0;
  double L0 = 1.0;
  double length = 1.0;
  double hbar = 1.0;
  double mass = 1.0;
  int levels = 10;
  std::optional<double> k_max;
  std::optional<double> tau;
  std::optional<int> grid;
  std::vector<std::string> sweep;
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
};

ps_geometry geometry(const Options& o) { return {o.length, o.hbar, o.mass}; }

Point make_point(double xi, double are, double aim, double bre, double bim,
                 double L0) {
  ps_point* raw = nullptr;
  check(ps_point_create(xi, are, aim, bre, bim, L0, &raw));
  return Point(raw);
}

Point make_point(const Options& o) {
  return make_point(o.xi, o.alpha_re, o.alpha_im, o.beta_re, o.beta_im, o.L0);
}

Json point_json(const ps_point* p) {
  double c[6];
  check(ps_point_components(p, c));
  return Json{{"xi", c[0]},
              {"alpha", {{"re", c[1]}, {"im", c[2]}}},
              {"beta", {{"re", c[3]}, {"im", c[4]}}},
              {"L0", c[5]}};
}

Json geometry_json(const Options& o) {
  return Json{{"l", o.length}, {"hbar", o.hbar}, {"mass", o.mass}};
}

Json header(const std::string& command, const ps_point* p, const Options& o) {
  return Json{{"command", command},
              {"point", point_json(p)},
              {"geometry", geometry_json(o)}};
}

const char* sector_name(ps_sector s) {
  switch (s) {
    case PS_SECTOR_POSITIVE: return "positive";
    case PS_SECTOR_ZERO: return "zero";
    case PS_SECTOR_NEGATIVE: return "negative";
  }
  return "positive";
}

struct Output {
  Json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

SpectrumHandle make_spectrum(const ps_point* p, const ps_geometry& g,
                             const Options& o) {
  ps_spectrum* raw = nullptr;
  if (o.k_max) {
    check(ps_spectrum_up_to(p, &g, *o.k_max, &raw));
  } else {
    check(ps_spectrum_create(p, &g, o.levels, &raw));
  }
  return SpectrumHandle(raw);
}

std::vector<ps_level> levels_of(const ps_spectrum* s) {
  std::vector<ps_level> out(ps_spectrum_size(s));
  for (std::size_t i = 0; i < out.size(); ++i) {
    check(ps_spectrum_level(s, i, &out[i]));
  }
  return out;
}

std::vector<double> energies_of(const ps_spectrum* s) {
  std::size_t n = 0;
  check(ps_spectrum_energies(s, nullptr, 0, &n));
  std::vector<double> e(n);
  check(ps_spectrum_energies(s, e.data(), n, &n));
  return e;
}

Output run_classify(const Options& o) {
  const Point p = make_point(o);
  ps_flags f;
  check(ps_classify(p.get(), o.tol.value_or(0.0), &f));
  Output out;
  out.json = header("classify", p.get(), o);
  Json families = Json::array();
  if (f.f1) families.push_back("F1");
  if (f.f2) families.push_back("F2");
  if (f.f3) families.push_back("F3");
  if (f.f4) families.push_back("F4");
  if (f.f5_plus) families.push_back("F5+");
  if (f.f5_minus) families.push_back("F5-");
  out.json["families"] = families;
  out.json["flags"] = {{"F1", bool(f.f1)},       {"F2", bool(f.f2)},
                       {"F3", bool(f.f3)},       {"F4", bool(f.f4)},
                       {"F5+", bool(f.f5_plus)}, {"F5-", bool(f.f5_minus)}};
  double theta = NAN;
  if (f.f2) {
    check(ps_f2_theta(p.get(), &theta));
    out.json["theta"] = theta;
  }
  if (f.f1) {
    double lp, lm;
    int ip, im;
    check(ps_separated_lengths(p.get(), &lp, &ip, &lm, &im));
    out.json["separated_lengths"] = {
        {"l_plus", ip ? Json("inf") : Json(lp)},
        {"l_minus", im ? Json("inf") : Json(lm)}};
  }
  double fp[3];
  check(ps_fingerprint(p.get(), fp));
  out.json["fingerprint"] = {{"xi", fp[0]}, {"alpha_re", fp[1]}, {"beta_im", fp[2]}};

  double c[6];
  check(ps_point_components(p.get(), c));
  out.csv_header = {"xi", "alpha_re", "alpha_im", "beta_re", "beta_im", "L0",
                    "F1", "F2",       "F3",       "F4",      "F5_plus", "F5_minus",
                    "theta"};
  out.csv_rows.push_back({num(c[0]), num(c[1]), num(c[2]), num(c[3]), num(c[4]),
                          num(c[5]), std::to_string(f.f1), std::to_string(f.f2),
                          std::to_string(f.f3), std::to_string(f.f4),
                          std::to_string(f.f5_plus), std::to_string(f.f5_minus),
                          f.f2 ? num(theta) : ""});
  return out;
}

Output run_spectrum(const Options& o) {
  const Point p = make_point(o);
  const ps_geometry g = geometry(o);
  const SpectrumHandle s = make_spectrum(p.get(), g, o);
  Output out;
  out.json = header("spectrum", p.get(), o);
  Json levels = Json::array();
  out.csv_header = {"index", "sector", "parameter", "energy", "multiplicity"};
  int negatives = 0;
  bool zero = false;
  const std::vector<ps_level> lv = levels_of(s.get());
  for (std::size_t i = 0; i < lv.size(); ++i) {
    levels.push_back({{"sector", sector_name(lv[i].sector)},
                      {"parameter", lv[i].parameter},
                      {"energy", lv[i].energy},
                      {"multiplicity", lv[i].multiplicity}});
    out.csv_rows.push_back({std::to_string(i), sector_name(lv[i].sector),
                            num(lv[i].parameter), num(lv[i].energy),
                            std::to_string(lv[i].multiplicity)});
    if (lv[i].sector == PS_SECTOR_NEGATIVE) negatives += lv[i].multiplicity;
    if (lv[i].sector == PS_SECTOR_ZERO) zero = true;
  }
  out.json["levels"] = levels;
  out.json["energies"] = energies_of(s.get());
  out.json["zero_mode"] = zero;
  out.json["negative_count"] = negatives;
  return out;
}

Output run_eigenstate(const Options& o) {
  const Point p = make_point(o);
  const ps_geometry g = geometry(o);
  const SpectrumHandle s = make_spectrum(p.get(), g, o);
  const int samples = o.grid.value_or(11);
  if (samples < 2) invalid("grid must be >= 2 for eigenstate samples");
  Output out;
  out.json = header("eigenstate", p.get(), o);
  out.csv_header = {"level", "mode", "x", "psi_re", "psi_im"};
  Json modes = Json::array();
  const std::vector<ps_level> lv = levels_of(s.get());
  for (std::size_t i = 0; i < lv.size(); ++i) {
    ps_modes* raw = nullptr;
    check(ps_modes_for_level(p.get(), &g, &lv[i], &raw));
    const Modes m(raw);
    for (std::size_t j = 0; j < ps_modes_size(m.get()); ++j) {
      double ab[4], nrm, res;
      check(ps_mode_coefficients(m.get(), j, ab));
      check(ps_mode_norm(m.get(), j, &nrm));
      check(ps_mode_residual(m.get(), j, p.get(), &res));
      Json pts = Json::array();
      for (int k = 0; k < samples; ++k) {
        const double x = o.length * k / (samples - 1);
        double v[2];
        check(ps_mode_value(m.get(), j, x, v));
        pts.push_back({{"x", x}, {"psi", complex_json(v)}});
        out.csv_rows.push_back({std::to_string(i), std::to_string(j), num(x),
                                num(v[0]), num(v[1])});
      }
      modes.push_back({{"level", i},
                       {"mode", j},
                       {"sector", sector_name(lv[i].sector)},
                       {"parameter", lv[i].parameter},
                       {"energy", lv[i].energy},
                       {"A", complex_json(ab)},
                       {"B", complex_json(ab + 2)},
                       {"norm", nrm},
                       {"boundary_residual", res},
                       {"samples", pts}});
    }
  }
  out.json["modes"] = modes;
  return out;
}

Output run_kernel_compare(const Options& o) {
  const Point p = make_point(o);
  const ps_geometry g = geometry(o);
  const int n = o.grid.value_or(5);
  if (n < 2) invalid("grid must be >= 2 for kernel-compare");
  const double tol = o.tol.value_or(1e-8);
  // Default times in units of 2 m l^2 / hbar.
  std::vector<double> taus;
  if (o.tau) {
    taus = {*o.tau};
  } else {
    for (double s : {0.01, 0.03, 0.1, 0.3}) {
      taus.push_back(s * 2.0 * o.mass * o.length * o.length / o.hbar);
    }
  }
  Output out;
  out.json = header("kernel-compare", p.get(), o);
  out.json["grid"] = n;
  out.csv_header = {"tau", "prefactor", "max_abs_diff", "max_rel_diff",
                    "spectral_tail_bound"};
  Json rows = Json::array();
  double worst = 0.0;
  for (double tau : taus) {
    double pref, tail;
    check(ps_free_prefactor(&g, tau, &pref));
    ps_kernel* raw = nullptr;
    check(ps_spectral_kernel_create(p.get(), &g, tau, 1e-12, &raw));
    const Kernel k(raw);
    check(ps_kernel_tail_bound(k.get(), &tail));
    double max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double a = o.length * i / (n - 1);
        const double b = o.length * j / (n - 1);
        double ks[2], ki[2];
        check(ps_kernel_eval(k.get(), a, b, ks));
        check(ps_image_kernel(p.get(), &g, a, b, tau, ki));
        max_abs = std::max(max_abs, std::hypot(ks[0] - ki[0], ks[1] - ki[1]));
      }
    }
    worst = std::max(worst, max_abs / pref);
    rows.push_back({{"tau", tau},
                    {"prefactor", pref},
                    {"max_abs_diff", max_abs},
                    {"max_rel_diff", max_abs / pref},
                    {"spectral_tail_bound", tail}});
    out.csv_rows.push_back(
        {num(tau), num(pref), num(max_abs), num(max_abs / pref), num(tail)});
  }
  out.json["times"] = rows;
  out.json["max_rel_diff"] = worst;
  out.json["tolerance"] = tol;
  out.json["agree"] = worst < tol;
  return out;
}

struct Axis {
  int component;  // 0 xi, 1 alpha_re, 2 alpha_im, 3 beta_re, 4 beta_im, 5 L0
  std::string name;
  double start, stop;
  int count;

  double at(int i) const {
    return count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
};

Axis parse_axis(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  if (parts.size() != 4) invalid("sweep must be name:start:stop:count, got " + spec);
  static const std::pair<const char*, int> names[] = {
      {"xi", 0},       {"alpha_R", 1},  {"alpha_I", 2},  {"beta_R", 3},
      {"beta_I", 4},   {"L0", 5},       {"alpha-re", 1}, {"alpha-im", 2},
      {"beta-re", 3},  {"beta-im", 4},  {"alpha_re", 1}, {"alpha_im", 2},
      {"beta_re", 3},  {"beta_im", 4}};
  Axis a{-1, parts[0], 0.0, 0.0, 0};
  for (const auto& [n, c] : names) {
    if (parts[0] == n) a.component = c;
  }
  if (a.component < 0) {
    invalid("sweep axis must be one of xi, alpha_R, alpha_I, beta_R, beta_I, L0");
  }
  try {
    a.start = std::stod(parts[1]);
    a.stop = std::stod(parts[2]);
    a.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    invalid("sweep bounds are not numbers: " + spec);
  }
  if (a.count < 1) invalid("sweep count must be >= 1");
  return a;
}

// Restores |alpha|^2 + |beta|^2 = 1 after the swept components are set.
// Rescales the unswept alpha_I, beta_R first and falls back to every unswept
// alpha/beta component. Returns the factor applied.
double reproject(double c[6], const bool swept[6]) {
  auto attempt = [&](const std::vector<int>& free) -> std::optional<double> {
    double fixed = 0.0, movable = 0.0;
    for (int i = 1; i <= 4; ++i) {
      const bool moves = std::find(free.begin(), free.end(), i) != free.end();
      (moves ? movable : fixed) += c[i] * c[i];
    }
    const double target = 1.0 - fixed;
    if (target < -1e-15) return std::nullopt;
    if (movable == 0.0) {
      return std::abs(target) < 1e-15 ? std::optional<double>(1.0) : std::nullopt;
    }
    const double f = std::sqrt(std::max(0.0, target) / movable);
    for (int i : free) c[i] *= f;
    return f;
  };
  std::vector<int> preferred, fallback;
  for (int i : {2, 3}) {
    if (!swept[i]) preferred.push_back(i);
  }
  for (int i = 1; i <= 4; ++i) {
    if (!swept[i]) fallback.push_back(i);
  }
  double saved[6];
  std::copy(c, c + 6, saved);
  if (auto f = attempt(preferred)) return *f;
  std::copy(saved, saved + 6, c);
  if (auto f = attempt(fallback)) return *f;
  invalid("sweep point cannot satisfy |alpha|^2 + |beta|^2 = 1");
}

unsigned thread_cap() {
  if (const char* env = std::getenv("POINTSPEC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      invalid("POINTSPEC_THREADS must be a positive integer");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct ScanRow {
  double c[6];
  double rescale = 1.0;
  double fp[3];
  std::vector<double> energies;
  double k_lowest = NAN;
  bool zero_mode = false;
  int negative_count = 0;
};

ScanRow scan_row(double c[6], const bool swept[6], const ps_geometry& g) {
  ScanRow r;
  r.rescale = reproject(c, swept);
  std::copy(c, c + 6, r.c);
  const Point p = make_point(c[0], c[1], c[2], c[3], c[4], c[5]);
  check(ps_fingerprint(p.get(), r.fp));
  ps_spectrum* raw = nullptr;
  check(ps_spectrum_create(p.get(), &g, 8, &raw));
  const SpectrumHandle s(raw);
  r.energies = energies_of(s.get());
  r.energies.resize(8, NAN);
  for (const ps_level& lv : levels_of(s.get())) {
    if (lv.sector == PS_SECTOR_NEGATIVE) r.negative_count += lv.multiplicity;
    if (lv.sector == PS_SECTOR_ZERO) {
      r.zero_mode = true;
      if (std::isnan(r.k_lowest)) r.k_lowest = 0.0;
    }
    if (lv.sector == PS_SECTOR_POSITIVE && std::isnan(r.k_lowest)) {
      r.k_lowest = lv.parameter;
    }
  }
  return r;
}

Output run_scan(const Options& o) {
  if (o.sweep.empty() || o.sweep.size() > 2) {
    invalid("scan needs one or two --sweep axes");
  }
  std::vector<Axis> axes;
  for (const std::string& s : o.sweep) axes.push_back(parse_axis(s));
  bool swept[6] = {};
  for (const Axis& a : axes) {
    if (swept[a.component]) invalid("sweep axes must be distinct");
    swept[a.component] = true;
  }
  const ps_geometry g = geometry(o);
  const double base[6] = {o.xi, o.alpha_re, o.alpha_im, o.beta_re, o.beta_im, o.L0};
  const int n0 = axes[0].count;
  const int n1 = axes.size() > 1 ? axes[1].count : 1;
  const int total = n0 * n1;

  std::vector<std::optional<ScanRow>> rows(static_cast<std::size_t>(total));
  std::vector<std::optional<Failure>> errors(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int idx = next++; idx < total; idx = next++) {
      double c[6];
      std::copy(base, base + 6, c);
      c[axes[0].component] = axes[0].at(idx / n1);
      if (axes.size() > 1) c[axes[1].component] = axes[1].at(idx % n1);
      try {
        rows[idx] = scan_row(c, swept, g);
      } catch (const Failure& f) {
        errors[idx] = f;
      }
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(thread_cap(), static_cast<unsigned>(total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) throw *e;
  }

  Output out;
  out.json = Json{{"command", "scan"}, {"geometry", geometry_json(o)}};
  Json ax = Json::array();
  for (const Axis& a : axes) {
    ax.push_back({{"name", a.name}, {"start", a.start}, {"stop", a.stop},
                  {"count", a.count}});
  }
  out.json["axes"] = ax;
  out.json["reprojection"] =
      "after setting swept components, unswept alpha_im and beta_re are "
      "rescaled by a common factor to restore |alpha|^2+|beta|^2=1; if that "
      "fails all unswept alpha/beta components are rescaled; the factor is "
      "the rescale column";
  out.csv_header = {"xi",        "alpha_re",  "alpha_im",      "beta_re",
                    "beta_im",   "L0",        "rescale",       "fp_xi",
                    "fp_alpha_re", "fp_beta_im", "E1", "E2", "E3", "E4",
                    "E5",        "E6",        "E7",            "E8",
                    "k_lowest",  "zero_mode", "negative_count"};
  Json jrows = Json::array();
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (double v : r->c) line.push_back(num(v));
    line.push_back(num(r->rescale));
    for (double v : r->fp) line.push_back(num(v));
    for (double v : r->energies) line.push_back(num(v));
    line.push_back(num(r->k_lowest));
    line.push_back(r->zero_mode ? "1" : "0");
    line.push_back(std::to_string(r->negative_count));
    out.csv_rows.push_back(std::move(line));
    jrows.push_back(
        {{"point",
          {{"xi", r->c[0]},
           {"alpha", {{"re", r->c[1]}, {"im", r->c[2]}}},
           {"beta", {{"re", r->c[3]}, {"im", r->c[4]}}},
           {"L0", r->c[5]}}},
         {"rescale", r->rescale},
         {"fingerprint",
          {{"xi", r->fp[0]}, {"alpha_re", r->fp[1]}, {"beta_im", r->fp[2]}}},
         {"energies", r->energies},
         {"k_lowest", r->k_lowest},
         {"zero_mode", r->zero_mode},
         {"negative_count", r->negative_count}});
  }
  out.json["rows"] = jrows;
  return out;
}

Output run_oracle_check(const Options& o) {
  const Point p = make_point(o);
  const ps_geometry g = geometry(o);
  const int n_points = o.grid.value_or(4000);
  const int n_levels = o.levels;
  const double tol = o.tol.value_or(5e-3);
  ps_spectrum* raw = nullptr;
  check(ps_spectrum_create(p.get(), &g, n_levels, &raw));
  const SpectrumHandle s(raw);
  std::vector<double> exact = energies_of(s.get());
  exact.resize(static_cast<std::size_t>(n_levels));
  std::vector<double> fd(static_cast<std::size_t>(n_levels));
  std::vector<double> fd2(static_cast<std::size_t>(n_levels));
  check(ps_fd_spectrum(p.get(), &g, n_points, 0.0, n_levels, fd.data()));
  check(ps_fd_spectrum(p.get(), &g, 2 * n_points, 0.0, n_levels, fd2.data()));

  const double unit = o.hbar * o.hbar / (2.0 * o.mass * o.length * o.length);
  Output out;
  out.json = header("oracle-check", p.get(), o);
  out.json["n_points"] = n_points;
  out.csv_header = {"level", "exact", "fd", "fd_2n", "rel_error", "ratio"};
  Json rows = Json::array();
  double worst = 0.0;
  for (int i = 0; i < n_levels; ++i) {
    const double scale = std::max(std::abs(exact[i]), unit);
    const double e1 = std::abs(fd[i] - exact[i]);
    const double e2 = std::abs(fd2[i] - exact[i]);
    const double rel = e1 / scale;
    const double ratio = e2 > 0.0 ? e1 / e2 : NAN;
    worst = std::max(worst, rel);
    rows.push_back({{"level", i},
                    {"exact", exact[i]},
                    {"fd", fd[i]},
                    {"fd_2n", fd2[i]},
                    {"rel_error", rel},
                    {"richardson_ratio", ratio}});
    out.csv_rows.push_back({std::to_string(i), num(exact[i]), num(fd[i]),
                            num(fd2[i]), num(rel), num(ratio)});
  }
  out.json["levels"] = rows;
  out.json["max_rel_error"] = worst;
  out.json["tolerance"] = tol;
  out.json["agree"] = worst < tol;
  return out;
}

void write(const Output& out, const Options& o) {
  std::string text;
  if (o.format == "json") {
    dump(out.json, text, 0);
    text += "\n";
  } else {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text += ",";
        text += cells[i];
      }
      text += "\n";
    };
    line(out.csv_header);
    for (const auto& r : out.csv_rows) line(r);
  }
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) invalid("cannot open output file " + o.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, eigenfunctions and kernels of a box with a point interaction"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(false);
  app.config_formatter(std::make_shared<PointConfig>());
  app.set_config("--config", "", "key=value file, or a JSON output document");

  Options o;
  app.add_option("--xi", o.xi, "xi in [0, pi)");
  app.add_option("--alpha-re", o.alpha_re);
  app.add_option("--alpha-im", o.alpha_im);
  app.add_option("--beta-re", o.beta_re);
  app.add_option("--beta-im", o.beta_im);
  app.add_option("--L0", o.L0, "length constant, > 0");
  app.add_option("--length", o.length, "interval length l");
  app.add_option("--hbar", o.hbar);
  app.add_option("--mass", o.mass);
  app.add_option("--levels", o.levels, "number of levels");
  app.add_option("--k-max", o.k_max, "momentum cutoff instead of --levels");
  app.add_option("--tau", o.tau, "Euclidean time");
  app.add_option("--grid", o.grid, "grid size (samples, kernel grid or n_points)");
  app.add_option("--sweep", o.sweep, "name:start:stop:count")->take_all();
  app.add_option("--out", o.out, "output path (default stdout)");
  app.add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", o.tol, "tolerance");

  using Runner = Output (*)(const Options&);
  const std::pair<const char*, Runner> commands[] = {
      {"classify", run_classify},
      {"spectrum", run_spectrum},
      {"eigenstate", run_eigenstate},
      {"kernel-compare", run_kernel_compare},
      {"scan", run_scan},
      {"oracle-check", run_oracle_check}};
  std::vector<std::pair<CLI::App*, Runner>> subs;
  for (const auto& [name, fn] : commands) subs.emplace_back(app.add_subcommand(name), fn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    for (const auto& [sub, fn] : subs) {
      if (sub->parsed()) write(fn(o), o);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
  return 0;
}
