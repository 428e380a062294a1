// Batch CLI: configuration in, CSV/JSON out. The only module with I/O.

#include "tilecocycle/config.hpp"
#include "tilecocycle/deform.hpp"
#include "tilecocycle/twisted.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tc;

namespace {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << content;
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int worker_count(int cli_workers) {
  if (cli_workers > 0) return cli_workers;
  if (const char* env = std::getenv("TILECOCYCLE_WORKERS"))
    if (const int n = std::atoi(env); n > 0) return n;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(int n_items, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || n_items <= 1) {
    for (int i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int w = 0; w < std::min(workers, n_items); ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

struct Context {
  RunConfig cfg;
  fs::path out_dir;
  int workers = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> written;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void emit(const std::string& name, const std::string& content) {
    atomic_write(out_dir / name, content);
    written.push_back(name);
  }

  void manifest(const std::string& command) {
    json m;
    m["command"] = command;
    m["config_hash"] = fnv1a_hex(cfg.config_text);
    m["seed"] = seed;
    m["workers"] = workers;
    m["outputs"] = written;
    m["version"] = "0.1.0";
    m["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    atomic_write(out_dir / "manifest.json", m.dump(2) + "\n");
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

SymbolSequence sampled_sequence(const Context& ctx, int K) {
  MeasureSampler s = ctx.cfg.sampler;
  if (ctx.seed != 0) s.seed = ctx.seed;
  return sample_sequence(s, K);
}

GeomTables geom_for_radius(const SubstitutionSystem& sys, const std::vector<int>& x,
                           double R) {
  for (int n = 1; n <= static_cast<int>(x.size()); ++n) {
    GeomTables g = build_geom(sys, x, n);
    try {
      covering_level(g, R);
      return g;
    } catch (const std::exception&) {
      continue;
    }
  }
  throw std::runtime_error("sequence horizon too short for R = " + fmt(R));
}

TLCFunction parse_function(const json& j, const SubstitutionSystem& sys) {
  const int m = sys.num_types();
  const std::string kind = j.value("kind", "dirac");
  TLCFunction f = (kind == "indicator") ? TLCFunction::indicator(m) : TLCFunction::dirac(m);
  if (kind != "indicator" && kind != "dirac")
    throw std::runtime_error("experiment.function.kind must be 'indicator' or 'dirac'");
  if (j.contains("weights")) {
    const auto w = j["weights"].get<std::vector<double>>();
    if (static_cast<int>(w.size()) != m)
      throw std::runtime_error("experiment.function.weights: one weight per prototile");
    for (int i = 0; i < m; ++i) f.per_type[i].weight = Cplx(w[i], 0.0);
  }
  return f;
}

std::vector<double> parse_r_grid(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  const double lo = j.value("min", 16.0), hi = j.value("max", 1024.0);
  const int ppd = j.value("points_per_decade", 8);
  std::vector<double> out;
  for (double lg = std::log10(lo); lg <= std::log10(hi) + 1e-9; lg += 1.0 / ppd)
    out.push_back(std::pow(10.0, lg));
  return out;
}

std::vector<Eigen::VectorXd> parse_lambda_grid(const json& j, int dim, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  if (j.is_array()) {
    for (const auto& row : j) {
      Eigen::VectorXd l(dim);
      if (row.is_number() && dim == 1) {
        l(0) = row.get<double>();
      } else {
        const auto v = row.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != dim) throw std::runtime_error("lambda dimension mismatch");
        for (int a = 0; a < dim; ++a) l(a) = v[a];
      }
      out.push_back(l);
    }
    return out;
  }
  const int count = j.value("count", 16);
  const double lo = j.value("min", 0.0), hi = j.value("max", 1.0);
  std::mt19937_64 rng(seed ^ 0xabcdef12u);
  std::uniform_real_distribution<double> u(lo, hi);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd l(dim);
    for (int a = 0; a < dim; ++a) l(a) = u(rng);
    out.push_back(l);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(Context& ctx) {
  const ValidationReport rep =
      validate_system(ctx.cfg.system, ctx.cfg.sampler.support());
  json out;
  out["ok"] = rep.ok();
  out["primitivity_window"] = rep.primitivity_window;
  out["checks"] = json::array();
  for (const auto& c : rep.checks)
    out["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  ctx.emit("report.json", out.dump(2) + "\n");
  ctx.manifest("validate");
  if (!rep.ok()) {
    json err{{"error", "validation failed"}};
    for (const auto& c : rep.checks)
      if (!c.pass) err["failures"].push_back({{"name", c.name}, {"detail", c.detail}});
    std::cerr << err.dump(2) << std::endl;
    return 1;
  }
  return 0;
}

int cmd_exponents(Context& ctx) {
  const SubstitutionSystem& sys = ctx.cfg.system;
  const json& e = ctx.cfg.experiment;
  const long long n_steps = e.value("n_steps", 10000LL);
  const SymbolSequence x = sampled_sequence(ctx, static_cast<int>(n_steps) + 8);

  json out = json::array();
  {
    auto factor = [&](long long k) {
      return substitution_matrix(sys, x.plus[static_cast<size_t>(k)]).cast<double>().eval();
    };
    const LyapunovEstimate est = lyapunov_top(factor, n_steps);
    out.push_back({{"name", "trace_top"},
                   {"value", est.exponents[0]},
                   {"stderr", est.stderrs[0]},
                   {"n", est.n}});
  }
  try {
    const int k_ret = e.value("return_level", 6);
    const auto rv = enumerate_return_vectors(sys, x.plus, k_ret, e.value("return_radius", 64.0));
    const ReturnGroup grp = group_basis(sys, rv);
    std::vector<Eigen::MatrixXd> gs;
    for (int l = 0; l < sys.num_rules(); ++l)
      gs.push_back(to_double(g_matrix(sys, l, grp, grp)));
    auto factor = [&](long long k) { return gs[x.plus[static_cast<size_t>(k)]]; };
    const LyapunovEstimate est = lyapunov_spectrum(factor, n_steps);
    for (size_t i = 0; i < est.exponents.size(); ++i)
      out.push_back({{"name", "return_vector_" + std::to_string(i + 1)},
                     {"value", est.exponents[i]},
                     {"stderr", est.stderrs[i]},
                     {"minus_inf", static_cast<bool>(est.minus_inf[i])},
                     {"n", est.n}});
    out.push_back({{"name", "group_rank"}, {"value", static_cast<double>(grp.rank)}, {"n", 1}});
  } catch (const std::exception& ex) {
    out.push_back({{"name", "return_vector_spectrum"}, {"error", ex.what()}});
  }
  ctx.emit("exponents.json", out.dump(2) + "\n");
  ctx.manifest("exponents");
  return 0;
}

void twist_series_csv(Context& ctx, const SubstitutionSystem& sys, const GeomTables& g,
                      const TLCFunction& f, const std::vector<Eigen::VectorXd>& lambdas,
                      const std::vector<double>& radii, const std::string& method_req,
                      const std::string& csv_name, const std::string& fit_name) {
  const int d = sys.dim();
  std::vector<std::string> methods;
  if (method_req == "both") {
    methods = {"cocycle", "brute"};
  } else {
    methods = {method_req};
  }

  struct Row {
    Eigen::VectorXd lambda;
    double R;
    Cplx v;
    std::string method;
  };
  std::vector<std::vector<Row>> rows(lambdas.size());
  std::vector<json> fits(lambdas.size());

  parallel_for(static_cast<int>(lambdas.size()), ctx.workers, [&](int li) {
    PatchCache cache(g);
    const Eigen::VectorXd& lambda = lambdas[static_cast<size_t>(li)];
    TwistedIntegralSeries series;
    series.lambda = lambda;
    for (const std::string& method : methods) {
      for (double R : radii) {
        const int n = covering_level(g, R);
        const Eigen::VectorXd shift = centering_shift(g, n, 0);
        // Evaluate inside the level-n supertile of type 0, window centered.
        GeomTables sub = g;
        sub.n = n;
        sub.x.resize(n);
        Region reg{Eigen::VectorXd::Zero(d), R};
        const Cplx v = twisted_integral_region(
            sub, cache, 0, shift, f, lambda, reg,
            method == "brute" ? TwistedMethod::Brute : TwistedMethod::Cocycle);
        rows[static_cast<size_t>(li)].push_back({lambda, R, v, method});
        if (method == methods.front()) {
          series.radii.push_back(R);
          series.values.push_back(v);
        }
      }
    }
    try {
      const GrowthFit fit = growth_fit(series, d);
      fits[static_cast<size_t>(li)] = {{"slope", fit.slope},
                                       {"alpha_hat", fit.alpha_hat},
                                       {"residual", fit.residual},
                                       {"points_used", fit.points_used}};
    } catch (const std::exception& ex) {
      fits[static_cast<size_t>(li)] = {{"error", ex.what()}};
    }
    json& jf = fits[static_cast<size_t>(li)];
    jf["lambda"] = std::vector<double>(lambda.data(), lambda.data() + d);
  });

  std::ostringstream csv;
  for (int a = 1; a <= d; ++a) csv << "lambda_" << a << ",";
  csv << "R,re,im,abs,method,seed\n";
  for (const auto& lam_rows : rows)
    for (const auto& r : lam_rows) {
      for (int a = 0; a < d; ++a) csv << fmt(r.lambda(a)) << ",";
      csv << fmt(r.R) << "," << fmt(r.v.real()) << "," << fmt(r.v.imag()) << ","
          << fmt(std::abs(r.v)) << "," << r.method << "," << ctx.seed << "\n";
    }
  ctx.emit(csv_name, csv.str());
  ctx.emit(fit_name, json(fits).dump(2) + "\n");
}

int cmd_twist(Context& ctx) {
  const SubstitutionSystem& sys = ctx.cfg.system;
  const json& e = ctx.cfg.experiment;
  const std::vector<double> radii = parse_r_grid(e.value("r_grid", json::object()));
  const double rmax = *std::max_element(radii.begin(), radii.end());
  const SymbolSequence x = sampled_sequence(ctx, 96);
  const GeomTables g = geom_for_radius(sys, x.plus, rmax);
  const TLCFunction f = parse_function(e.value("function", json::object()), sys);
  const auto lambdas =
      parse_lambda_grid(e.value("lambda_grid", json::object()), sys.dim(), ctx.seed);
  twist_series_csv(ctx, sys, g, f, lambdas, radii, e.value("method", "cocycle"),
                   "twist.csv", "fit.json");
  ctx.manifest("twist");
  return 0;
}

int cmd_veech(Context& ctx) {
  const SubstitutionSystem& sys = ctx.cfg.system;
  const json& e = ctx.cfg.experiment;
  const auto w = e.at("word").get<std::vector<int>>();
  const int split = e.value("split", static_cast<int>(w.size()) / 2);
  const long long n = e.value("n", 1000LL);
  const double rho = e.value("rho", 0.25);
  const std::string route = e.value("route", "group");

  const SymbolSequence x = sampled_sequence(ctx, static_cast<int>(n) + static_cast<int>(w.size()) + 8);
  const auto returns = return_times(x, w, split, n);
  if (returns.empty()) throw std::runtime_error("veech: no returns of the word within n");

  std::vector<ZMat> gs;
  Eigen::VectorXd v0;
  Eigen::MatrixXd v_real_for_exact;
  if (route == "composition") {
    gs = composition_g(sys);
    std::vector<double> lengths;
    for (int i = 0; i < sys.num_types(); ++i) lengths.push_back(sys.tile_width(i));
    v0 = composition_v0(lengths, e.at("lambda").get<std::vector<double>>()[0]);
  } else {
    const auto rv = enumerate_return_vectors(sys, x.plus, e.value("return_level", 6), 64.0);
    const ReturnGroup grp = group_basis(sys, rv);
    for (int l = 0; l < sys.num_rules(); ++l) gs.push_back(g_matrix(sys, l, grp, grp));
    const auto lv = e.at("lambda").get<std::vector<double>>();
    Eigen::VectorXd lambda(sys.dim());
    for (int a = 0; a < sys.dim(); ++a) lambda(a) = lv[static_cast<size_t>(a)];
    v0 = grp.v_real.transpose() * lambda;
    v_real_for_exact = grp.v_real;
  }

  VeechDensitySeries series;
  if (e.value("exact", false)) {
    // Rational transport; needs integer generator embeddings and rational lambda.
    if (route != "group")
      throw std::runtime_error("veech: exact mode is available on the group route only");
    const auto num = e.at("lambda_rational").at("num").get<std::vector<long long>>();
    const long long den = e.at("lambda_rational").at("den").get<long long>();
    if (static_cast<int>(num.size()) != sys.dim() || den == 0)
      throw std::runtime_error("veech: lambda_rational needs d numerators and a nonzero den");
    for (Eigen::Index i = 0; i < v_real_for_exact.size(); ++i)
      if (std::abs(v_real_for_exact(i) - std::round(v_real_for_exact(i))) > 1e-9)
        throw std::runtime_error("veech: exact mode needs integer generator embeddings");
    std::vector<BigRational> v0q;
    for (Eigen::Index i = 0; i < v_real_for_exact.cols(); ++i) {
      BigRational s(0);
      for (int a = 0; a < sys.dim(); ++a)
        s += BigRational(BigInt(static_cast<long long>(std::llround(v_real_for_exact(a, i))) *
                                num[static_cast<size_t>(a)]),
                         BigInt(den));
      v0q.push_back(s);
    }
    const long long rho_num = e.value("rho_num", 1LL), rho_den = e.value("rho_den", 4LL);
    series = veech_density_exact(x.plus, returns, gs, v0q, BigRational(BigInt(rho_num), BigInt(rho_den)));
  } else {
    series = veech_density(x.plus, returns, gs, v0, rho);
  }

  std::ostringstream csv;
  csv << "j,k_j,dist,indicator,D_N\n";
  for (size_t j = 0; j < series.k_j.size(); ++j)
    csv << j + 1 << "," << series.k_j[j] << "," << fmt(series.dist[j]) << ","
        << series.indicator[j] << "," << fmt(series.d_n[j]) << "\n";
  ctx.emit("veech.csv", csv.str());
  ctx.manifest("veech");
  return 0;
}

int cmd_spectral_bound(Context& ctx) {
  const SubstitutionSystem& sys = ctx.cfg.system;
  const json& e = ctx.cfg.experiment;
  const auto lv = e.at("lambda").get<std::vector<double>>();
  Eigen::VectorXd lambda(sys.dim());
  for (int a = 0; a < sys.dim(); ++a) lambda(a) = lv[static_cast<size_t>(a)];
  const auto r_grid = e.value("r_grid", std::vector<double>{1.0 / 64, 1.0 / 128, 1.0 / 256});
  const int samples = e.value("samples", 16);
  const TLCFunction f = parse_function(e.value("function", json::object()), sys);

  double max_R = 0;
  for (double r : r_grid) max_R = std::max(max_R, 1.0 / (4.0 * r));
  const SymbolSequence x = sampled_sequence(ctx, 96);
  const GeomTables g = geom_for_radius(sys, x.plus, 2.0 * max_R + 2.0);

  std::ostringstream csv;
  csv << "r,R,l2_estimate,bound,c2,samples\n";
  for (double r : r_grid) {
    const SpectralBound b = spectral_bound(g, f, lambda, r, samples, ctx.seed + 1);
    csv << fmt(b.r) << "," << fmt(b.big_r) << "," << fmt(b.l2_estimate) << ","
        << fmt(b.bound) << "," << fmt(b.c2) << "," << b.samples << "\n";
  }
  ctx.emit("spectral_bound.csv", csv.str());
  ctx.manifest("spectral-bound");
  return 0;
}

int cmd_deform(Context& ctx) {
  const SubstitutionSystem& sys = ctx.cfg.system;
  const json& e = ctx.cfg.experiment;
  DeformationParameter d;
  const std::string mode = e.value("mode", "lengths");
  if (mode == "lengths") {
    d.mode = DeformationParameter::Mode::Lengths;
    d.lengths = e.at("lengths").get<std::vector<double>>();
  } else if (mode == "global-linear") {
    d.mode = DeformationParameter::Mode::GlobalLinear;
    const auto dg = e.at("diag").get<std::vector<double>>();
    d.diag = Eigen::Map<const Eigen::VectorXd>(dg.data(), static_cast<Eigen::Index>(dg.size()));
  } else {
    throw std::runtime_error("deform: CLI supports modes 'lengths' and 'global-linear'");
  }

  const std::vector<double> radii = parse_r_grid(e.value("r_grid", json::object()));
  const double rmax = *std::max_element(radii.begin(), radii.end());
  const SymbolSequence x = sampled_sequence(ctx, 96);
  GeomTables base = geom_for_radius(sys, x.plus, rmax * 2.0);
  const GeomTables def = apply_deformation(sys, x.plus, base.n, d);
  // The deformed supertiles may be smaller; re-check coverage.
  (void)covering_level(def, rmax);

  const TLCFunction f = parse_function(e.value("function", json::object()), sys);
  const auto lambdas =
      parse_lambda_grid(e.value("lambda_grid", json::object()), sys.dim(), ctx.seed);
  twist_series_csv(ctx, sys, def, f, lambdas, radii, e.value("method", "cocycle"),
                   "twist_deformed.csv", "fit_deformed.json");

  // Combinatorial invariance record.
  json inv;
  inv["asymptotic_cycle_det"] = asymptotic_cycle(sys, x.plus, d).det;
  bool same = true;
  for (int m = 1; m <= def.n; ++m)
    for (int i = 0; i < sys.num_types(); ++i)
      if (def.offsets[m][i].size() != base.offsets[m][i].size()) same = false;
  inv["combinatorics_identical"] = same;
  ctx.emit("deform.json", inv.dump(2) + "\n");
  ctx.manifest("deform");
  return 0;
}

int cmd_decompose(Context& ctx) {
  const SubstitutionSystem& sys = ctx.cfg.system;
  const json& e = ctx.cfg.experiment;
  const double R = e.value("R", 64.0);
  const SymbolSequence x = sampled_sequence(ctx, 96);
  const GeomTables g = geom_for_radius(sys, x.plus, R);
  PatchCache cache(g);
  const int n = covering_level(g, R);
  GeomTables sub = g;
  sub.n = n;
  sub.x.resize(n);
  const Eigen::VectorXd shift = centering_shift(sub, n, 0);
  Region reg{Eigen::VectorXd::Zero(sys.dim()), R};
  const SupertileDecomposition dec = supertile_decomposition(sub, 0, shift, reg, cache);

  std::ostringstream csv;
  csv << "level,type";
  for (int a = 1; a <= sys.dim(); ++a) csv << ",t_" << a;
  csv << ",count\n";
  for (const auto& p : dec.pieces) {
    csv << p.level << "," << p.type;
    for (int a = 0; a < sys.dim(); ++a) csv << "," << fmt(p.position(a));
    csv << ",1\n";
  }
  for (const auto& t : dec.remainder) {
    csv << 0 << "," << t.type;
    for (int a = 0; a < sys.dim(); ++a) csv << "," << fmt(t.pos(a));
    csv << ",1\n";
  }
  ctx.emit("decompose.csv", csv.str());

  json summary;
  summary["total_tiles"] = dec.total_tiles;
  summary["remainder_tiles"] = dec.remainder.size();
  for (const auto& [key, count] : dec.kappa)
    summary["kappa"].push_back({{"level", key.first}, {"type", key.second}, {"count", count}});
  ctx.emit("decompose.json", summary.dump(2) + "\n");
  ctx.manifest("decompose");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"substitution-tiling renormalization cocycles and twisted integrals"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  int workers = 0;
  std::uint64_t seed = 0;

  const std::vector<std::string> commands = {"validate", "exponents",      "twist", "veech",
                                             "spectral-bound", "deform", "decompose"};
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : commands) {
    CLI::App* s = app.add_subcommand(name);
    s->add_option("--config", config_path, "JSON configuration file")->required();
    s->add_option("--out", out_dir, "output directory");
    s->add_option("--workers", workers, "worker thread count");
    s->add_option("--seed", seed, "seed override");
    subs[name] = s;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    Context ctx;
    ctx.cfg = parse_config(read_file(config_path));
    ctx.out_dir = out_dir;
    ctx.workers = worker_count(workers);
    ctx.seed = seed ? seed : ctx.cfg.sampler.seed;
    fs::create_directories(ctx.out_dir);

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "validate") return cmd_validate(ctx);
    if (cmd == "exponents") return cmd_exponents(ctx);
    if (cmd == "twist") return cmd_twist(ctx);
    if (cmd == "veech") return cmd_veech(ctx);
    if (cmd == "spectral-bound") return cmd_spectral_bound(ctx);
    if (cmd == "deform") return cmd_deform(ctx);
    if (cmd == "decompose") return cmd_decompose(ctx);
    return 2;
  } catch (const ConfigParseError& e) {
    json err{{"error", "config"}, {"details", json::array()}};
    for (const auto& d : e.errors())
      err["details"].push_back({{"pointer", d.pointer}, {"message", d.message}});
    std::cerr << err.dump(2) << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump(2) << std::endl;
    return 1;
  }
}
