#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "finsleroid/angle.hpp"
#include "finsleroid/check.hpp"
#include "finsleroid/cospace.hpp"
#include "finsleroid/geodesic.hpp"
#include "finsleroid/quasieuclid.hpp"
#include "finsleroid/shape.hpp"
#include "finsleroid/tensors.hpp"

namespace finsleroid::cli {

using json = nlohmann::ordered_json;

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double g = 0.0;
  int dim = 0;  // 0: infer from the vectors, else 2
  std::vector<double> r;
  std::vector<double> vec, vec2;
  int samples = 0;  // 0: command default
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = default_check_seed;
  std::map<std::string, double> tol;
  bool json = false;
  double fault_h = 0.0;
};

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double x = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() || !std::isfinite(x))
      throw Error(ErrorKind::BadInput, std::string("cannot parse ") + what + ": '" + s + "'");
    v.push_back(x);
  }
  if (v.empty()) throw Error(ErrorKind::BadInput, std::string("empty ") + what);
  return v;
}

std::pair<std::string, double> parse_tol(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::BadInput, "--tol expects KEY=VAL, got '" + kv + "'");
  const auto v = parse_list(kv.substr(eq + 1), "tolerance");
  if (v.size() != 1 || !(v[0] > 0)) throw Error(ErrorKind::BadInput, "tolerance must be one positive number");
  return {kv.substr(0, eq), v[0]};
}

void apply_json(RunConfig& c, const json& j) {
  try {
    if (j.contains("g")) c.g = j.at("g").get<double>();
    if (j.contains("dim")) c.dim = j.at("dim").get<int>();
    if (j.contains("r")) c.r = j.at("r").get<std::vector<double>>();
    if (j.contains("vec")) c.vec = j.at("vec").get<std::vector<double>>();
    if (j.contains("vec2")) c.vec2 = j.at("vec2").get<std::vector<double>>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("json")) c.json = j.at("json").get<bool>();
    if (j.contains("tol"))
      for (const auto& [k, v] : j.at("tol").items()) c.tol[k] = v.get<double>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("bad config document: ") + e.what());
  }
}

struct Context {
  RunConfig cfg;
  Param p;
  Space sp;
  std::optional<Vec> R1, R2;
};

Context make_context(const RunConfig& cfg) {
  Context ctx{cfg, make_param(cfg.g), Space(), std::nullopt, std::nullopt};
  int N = cfg.dim;
  for (const auto* v : {&cfg.vec, &cfg.vec2}) {
    if (v->empty()) continue;
    const int n = static_cast<int>(v->size());
    if (N == 0) N = n;
    if (n != N) throw Error(ErrorKind::BadInput, "vector length does not match the dimension");
  }
  if (N == 0) N = 2;
  if (N < 2) throw Error(ErrorKind::BadInput, "dimension must be at least 2");
  if (cfg.r.empty()) {
    ctx.sp = Space(N);
  } else {
    const int n = N - 1;
    if (static_cast<int>(cfg.r.size()) != n * n) throw Error(ErrorKind::BadInput, "--r needs (N-1)^2 entries");
    ctx.sp = Space(Mat(Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(cfg.r.data(), n, n)));
  }
  if (!cfg.vec.empty()) ctx.R1 = Eigen::Map<const Vec>(cfg.vec.data(), N);
  if (!cfg.vec2.empty()) ctx.R2 = Eigen::Map<const Vec>(cfg.vec2.data(), N);
  return ctx;
}

const Vec& need(const std::optional<Vec>& v, const char* flag) {
  if (!v) throw Error(ErrorKind::BadInput, std::string("missing ") + flag);
  return *v;
}

bool want_json(const RunConfig& c) { return c.json || c.format == "json"; }

// writes either to --out or to the given stream
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw IoError("cannot open " + c.out);
  f << text;
  if (!f) throw IoError("write failed: " + c.out);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

using Record = std::vector<std::pair<std::string, double>>;

std::string render_record(const RunConfig& c, const Record& rec) {
  if (want_json(c)) {
    json j = json::object();
    for (const auto& [k, v] : rec) {
      if (k == "N") j[k] = static_cast<int>(v);
      else j[k] = v;
    }
    return j.dump(2) + "\n";
  }
  std::string s;
  for (const auto& [k, v] : rec) s += k + ": " + shortest(v) + "\n";
  return s;
}

void angle_fields(const Context& ctx, Record& rec) {
  const auto& R1 = need(ctx.R1, "--vec");
  const auto& R2 = need(ctx.R2, "--vec2");
  const auto ap = fins_angle(ctx.p, ctx.sp, R1, R2);
  rec.emplace_back("alpha", ap.alpha);
  rec.emplace_back("scalar_product", ap.scalar_product);
  rec.emplace_back("ominus_sq", ap.ominus_sq);
  rec.emplace_back("alpha_max", std::numbers::pi / ctx.p.h);
}

int cmd_eval(const Context& ctx, std::ostream& out) {
  const auto& p = ctx.p;
  const auto& R = need(ctx.R1, "--vec");
  const auto f = scalar_forms(p, ctx.sp, R);
  Record rec = {{"g", p.g}, {"h", p.h}, {"N", static_cast<double>(ctx.sp.N())}, {"K", f.K}, {"H_dual", fhf(p, ctx.sp, to_costate(p, ctx.sp, R))},
                {"Phi", f.Phi}, {"B", f.B}, {"A", f.A}, {"q", f.q}, {"Z", f.Z}, {"J", f.J}};
  if (f.q > 0 || p.g == 0.0) rec.emplace_back("metric_det", metric(p, ctx.sp, R).determinant());
  rec.emplace_back("metric_det_closed", metric_det(p, ctx.sp, R));
  rec.emplace_back("indicatrix_curvature", 1.0 - p.g * p.g / 4);
  if (ctx.sp.N() >= 3 && f.q > 0) rec.emplace_back("indicatrix_curvature_fitted", curvature_S(p, ctx.sp, R).indicatrix_curvature());
  if (ctx.R2) angle_fields(ctx, rec);
  emit(ctx.cfg, out, render_record(ctx.cfg, rec));
  return ok;
}

int cmd_angle(const Context& ctx, std::ostream& out) {
  Record rec;
  angle_fields(ctx, rec);
  emit(ctx.cfg, out, render_record(ctx.cfg, rec));
  return ok;
}

int cmd_geodesic(const Context& ctx, std::ostream& out) {
  const auto& R1 = need(ctx.R1, "--vec");
  const auto& R2 = need(ctx.R2, "--vec2");
  const int n = ctx.cfg.samples > 0 ? ctx.cfg.samples : 11;
  if (n < 2) throw Error(ErrorKind::BadInput, "geodesic needs at least 2 samples");
  const auto bd = finsleroid_boundary(ctx.p, ctx.sp, R1, R2);
  const int N = ctx.sp.N();

  std::vector<std::pair<double, Vec>> rows;
  for (int i = 0; i < n; ++i) {
    const double s = bd.delta_s * i / (n - 1);
    rows.emplace_back(s, finsleroid_geodesic_at(ctx.sp, bd, s));
  }
  if (want_json(ctx.cfg)) {
    json j;
    j["a"] = bd.a;
    j["b"] = bd.b;
    j["delta_s"] = bd.delta_s;
    j["alpha"] = bd.alpha;
    j["samples"] = json::array();
    for (const auto& [s, R] : rows)
      j["samples"].push_back({{"s", s}, {"R", std::vector<double>(R.data(), R.data() + N)}, {"K", fmf(ctx.p, ctx.sp, R)}});
    emit(ctx.cfg, out, j.dump(2) + "\n");
    return ok;
  }
  std::string s = "# a=" + sig17(bd.a) + ",b=" + sig17(bd.b) + ",delta_s=" + sig17(bd.delta_s) + ",alpha=" + sig17(bd.alpha) + "\n";
  s += "s";
  for (int k = 1; k <= N; ++k) s += ",R_" + std::to_string(k);
  s += ",K\n";
  for (const auto& [sv, R] : rows) {
    s += sig17(sv);
    for (int k = 0; k < N; ++k) s += "," + sig17(R(k));
    s += "," + sig17(fmf(ctx.p, ctx.sp, R)) + "\n";
  }
  emit(ctx.cfg, out, s);
  return ok;
}

std::string profile_csv(const std::vector<ProfilePoint>& prof) {
  std::string s = "f,q,Z\n";
  for (const auto& pt : prof) s += sig17(pt.f) + "," + sig17(pt.q) + "," + sig17(pt.Z) + "\n";
  return s;
}

// closed generatrix: right half then its mirror
std::string svg_points(const std::vector<ProfilePoint>& prof) {
  std::string s;
  for (const auto& pt : prof) s += fixed6(pt.q) + "," + fixed6(-pt.Z) + " ";
  for (auto it = prof.rbegin(); it != prof.rend(); ++it) s += fixed6(-it->q) + "," + fixed6(-it->Z) + " ";
  s.pop_back();
  return s;
}

std::string profile_svg(const std::vector<ProfilePoint>& prof, double g) {
  const auto circle = indicatrix_profile(make_param(0.0), static_cast<int>(prof.size()));
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2.500000 -2.500000 5.000000 5.000000\">\n";
  s += "<!-- indicatrix generatrix, g=" + shortest(g) + "; y axis is -Z -->\n";
  s += "<line x1=\"-2.500000\" y1=\"0.000000\" x2=\"2.500000\" y2=\"0.000000\" stroke=\"gray\" stroke-width=\"0.005\"/>\n";
  s += "<line x1=\"0.000000\" y1=\"-2.500000\" x2=\"0.000000\" y2=\"2.500000\" stroke=\"gray\" stroke-width=\"0.005\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"0.03\" stroke-width=\"0.01\" points=\"" + svg_points(circle) + "\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.015\" points=\"" + svg_points(prof) + "\"/>\n";
  s += "</svg>\n";
  return s;
}

int cmd_indicatrix(const Context& ctx, std::ostream& out) {
  const int n = ctx.cfg.samples > 0 ? ctx.cfg.samples : 181;
  const auto prof = indicatrix_profile(ctx.p, n);
  const auto& fmt = ctx.cfg.format;
  if (ctx.cfg.json || fmt == "json") {
    json j = json::array();
    for (const auto& pt : prof) j.push_back({{"f", pt.f}, {"q", pt.q}, {"Z", pt.Z}});
    emit(ctx.cfg, out, j.dump(2) + "\n");
  } else if (fmt == "svg") {
    emit(ctx.cfg, out, profile_svg(prof, ctx.p.g));
  } else {
    emit(ctx.cfg, out, profile_csv(prof));
  }
  return ok;
}

std::string g_tag(double g) {
  std::string v = shortest(std::abs(g));
  return (g < 0 ? "m" : "p") + v;
}

int cmd_figures(const Context& ctx, std::ostream& out) {
  const std::filesystem::path dir = ctx.cfg.out.empty() ? "figures" : ctx.cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const int n = ctx.cfg.samples > 0 ? ctx.cfg.samples : 361;

  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    write_file(dir / name, text);
    written.push_back(name);
  };
  for (double g : {-0.6, -0.4, -0.2, 0.2, 0.4, 0.6}) {
    const auto prof = indicatrix_profile(make_param(g), n);
    put("indicatrix_g" + g_tag(g) + ".csv", profile_csv(prof));
    put("indicatrix_g" + g_tag(g) + ".svg", profile_svg(prof, g));
  }
  put("unit_circle.csv", profile_csv(indicatrix_profile(make_param(0.0), n)));

  std::string qs = "g,q_star\n", zs = "g,Z_2star\n";
  for (int i = 0; i <= 190; ++i) {
    const double g = (i - 95) / 50.0;
    qs += sig17(g) + "," + sig17(q_star_of(g)) + "\n";
    zs += sig17(g) + "," + sig17(z_2star_of(g)) + "\n";
  }
  put("q_star.csv", qs);
  put("z_2star.csv", zs);
  for (const auto& w : written) out << (dir / w).string() << "\n";
  return ok;
}

int cmd_check(const Context& ctx, std::ostream& out) {
  CheckConfig cc;
  cc.seed = ctx.cfg.seed;
  if (ctx.cfg.samples > 0) cc.samples = ctx.cfg.samples;
  cc.tol = ctx.cfg.tol;
  cc.fault_h = ctx.cfg.fault_h;
  const auto rep = run_checks(cc);
  if (want_json(ctx.cfg)) {
    json j;
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    j["passed"] = rep.all_passed();
    j["results"] = json::array();
    for (const auto& r : rep.results)
      j["results"].push_back({{"name", r.name}, {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
                              {"tol", r.tol}, {"passed", r.passed}});
    emit(ctx.cfg, out, j.dump(2) + "\n");
  } else {
    std::string s = "seed " + std::to_string(rep.seed) + ", samples " + std::to_string(rep.samples) + "\n";
    for (const auto& r : rep.results) {
      char line[256];
      std::snprintf(line, sizeof line, "%-34s %-12.3e %-10.1e %s\n", r.name.c_str(), r.residual, r.tol, r.passed ? "PASS" : "FAIL");
      s += line;
    }
    emit(ctx.cfg, out, s);
  }
  return rep.all_passed() ? ok : check_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finsleroid geometry toolkit"};
  app.require_subcommand(1, 1);

  RunConfig flags;
  std::string g_s, r_s, vec_s, vec2_s, config_path;
  std::vector<std::string> tol_s;
  app.add_option("--g", g_s, "characteristic parameter, |g| < 2");
  app.add_option("--dim", flags.dim, "dimension N");
  app.add_option("--r", r_s, "row-major (N-1)x(N-1) matrix, comma separated");
  app.add_option("--vec", vec_s, "vector components, comma separated, axial last");
  app.add_option("--vec2", vec2_s, "second vector");
  app.add_option("--samples", flags.samples, "sample count");
  app.add_option("--format", flags.format, "csv|json|svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", flags.out, "output file (directory for figures)");
  app.add_option("--seed", flags.seed, "random seed for check");
  app.add_option("--tol", tol_s, "tolerance override KEY=VAL");
  app.add_flag("--json", flags.json, "JSON output");
  app.add_option("--config", config_path, "JSON config document; flags win");
  app.add_option("--fault-h", flags.fault_h, "test hook: relative perturbation of h")->group("");

  const char* names[][2] = {{"eval", "evaluate K, H, Phi, B, metric determinant, curvature"},
                            {"angle", "angle and scalar product of --vec, --vec2"},
                            {"geodesic", "sample the geodesic from --vec to --vec2"},
                            {"indicatrix", "indicatrix generatrix"},
                            {"figures", "write figure data files"},
                            {"check", "run the invariant suite"}};
  for (auto& nm : names) app.add_subcommand(nm[0], nm[1])->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw Error(ErrorKind::BadInput, "cannot read config " + config_path);
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::BadInput, std::string("bad config document: ") + e.what());
      }
      apply_json(cfg, j);
    }
    auto given = [&](const char* name) { return app.get_option(name)->count() > 0; };
    if (given("--g")) {
      const auto v = parse_list(g_s, "--g");
      if (v.size() != 1) throw Error(ErrorKind::BadInput, "--g takes one number");
      cfg.g = v[0];
    }
    if (given("--dim")) cfg.dim = flags.dim;
    if (given("--r")) cfg.r = parse_list(r_s, "--r");
    if (given("--vec")) cfg.vec = parse_list(vec_s, "--vec");
    if (given("--vec2")) cfg.vec2 = parse_list(vec2_s, "--vec2");
    if (given("--samples")) cfg.samples = flags.samples;
    if (given("--format")) cfg.format = flags.format;
    if (given("--out")) cfg.out = flags.out;
    if (given("--seed")) cfg.seed = flags.seed;
    if (given("--json")) cfg.json = flags.json;
    if (given("--fault-h")) cfg.fault_h = flags.fault_h;
    for (const auto& t : tol_s) cfg.tol.insert_or_assign(parse_tol(t).first, parse_tol(t).second);
    if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "svg")
      throw Error(ErrorKind::BadInput, "format must be csv, json or svg");

    const Context ctx = make_context(cfg);
    if (cmd == "eval") return cmd_eval(ctx, out);
    if (cmd == "angle") return cmd_angle(ctx, out);
    if (cmd == "geodesic") return cmd_geodesic(ctx, out);
    if (cmd == "indicatrix") return cmd_indicatrix(ctx, out);
    if (cmd == "figures") return cmd_figures(ctx, out);
    return cmd_check(ctx, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return io_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_geometric(e.kind()) ? geometric : bad_input;
  }
}

}  // namespace finsleroid::cli
