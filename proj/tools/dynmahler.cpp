// dynmahler: command-line front end.
//
// Exit codes: 0 success, 1 domain error, 2 usage or malformed input.
// Every run that writes a result file also writes <out>.manifest.json
// (or the path given by --manifest) recording argv, the resolved options,
// the seed, the version, wall time and the files written.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynmahler/acceptance.hpp"
#include "dynmahler/io.hpp"
#include "dynmahler/raster.hpp"

#ifndef DYNMAHLER_VERSION
#define DYNMAHLER_VERSION "dev"
#endif

using namespace dynmahler;

namespace {

struct Run {
  std::vector<std::string> argv;
  std::string command;
  std::string out;       // primary result file; empty means stdout
  std::string manifest;  // explicit manifest path
  std::uint64_t seed = 0;
  bool seeded = false;
  std::vector<std::string> outputs;
  CLI::App* sub = nullptr;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(Run& run, const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << text;
  if (!os) throw Error("write failed: " + path);
  run.outputs.push_back(path);
}

// Result text goes to --out when given, stdout otherwise.
void emit(Run& run, const std::string& text) {
  if (run.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text(run, run.out, text.back() == '\n' ? text : text + "\n");
  }
}

void emit(Run& run, const json& j) { emit(run, j.dump(2)); }

json option_config(const CLI::App& app) {
  json cfg = json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) cfg[name] = true;
      else if (res.size() == 1) cfg[name] = res.front();
      else cfg[name] = res;
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

void write_manifest(Run& run, double seconds) {
  std::string path = run.manifest;
  if (path.empty() && !run.out.empty()) path = run.out + ".manifest.json";
  if (path.empty()) return;
  json m = {{"command", run.command},
            {"argv", run.argv},
            {"config", run.sub ? option_config(*run.sub) : json::object()},
            {"version", DYNMAHLER_VERSION},
            {"wall_seconds", seconds},
            {"outputs", run.outputs}};
  m["seed"] = run.seeded ? json(run.seed) : json(nullptr);
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << m.dump(2) << "\n";
}

DynMap load_map(const std::string& arg) { return DynMap(parse_zpoly(load_json_arg(arg), "f")); }

MPoly load_poly(const std::string& arg, std::vector<std::string>* names) {
  return parse_mpoly(load_json_arg(arg), names, "poly");
}

Rational require_rational(const std::string& s) {
  auto q = parse_rational(s);
  if (!q) throw SchemaError("--point: expected an integer or p/q, got '" + s + "'");
  return *q;
}

std::pair<double, double> parse_range(const std::string& s, const char* flag) {
  const auto colon = s.find(':', 1);
  if (colon == std::string::npos) throw SchemaError(std::string(flag) + ": expected lo:hi, got '" + s + "'");
  try {
    std::size_t i = 0, j = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    const double lo = std::stod(a, &i);
    const double hi = std::stod(b, &j);
    if (i != a.size() || j != b.size()) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw SchemaError(std::string(flag) + ": expected lo:hi, got '" + s + "'");
  }
}

// Smallest k dividing n with f^k(z) = z to within tol.
unsigned exact_period(const DynMap& f, Complex z, unsigned n) {
  for (unsigned k = 1; k < n; ++k) {
    if (n % k != 0) continue;
    Complex w = z;
    for (unsigned i = 0; i < k; ++i) w = f(w);
    if (std::abs(w - z) <= 1e-6 * std::max(1.0, std::abs(z))) return k;
  }
  return n;
}

void add_common(CLI::App* sub, Run& run) {
  sub->add_option("--out", run.out, "Result file (default: stdout)");
  sub->add_option("--manifest", run.manifest, "Run manifest path (default: <out>.manifest.json)");
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  run.argv.assign(argv, argv + argc);

  CLI::App app{"Dynamical Mahler measures, heights and Julia-set tools"};
  app.set_version_flag("--version", DYNMAHLER_VERSION);
  app.require_subcommand(1);

  std::string f_arg, poly_arg, point, method = "mc", factors_arg;
  long long samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  int depth = 10, grid = 4096, burn_in = 64, max_iter = 10000, n_max = 5;
  unsigned period = 1, max_n = 3, max_m = 2;
  std::string start, alpha = "-2", beta = "2";
  double tol = 1e-8, target_error = 1e-10;
  std::size_t max_bits = std::size_t{1} << 22;
  std::function<void()> action;

  auto need_f = [&](CLI::App* s) { s->add_option("--f", f_arg, "Map f: JSON text or file")->required(); };

  // measure
  auto* measure = app.add_subcommand("measure", "Estimate m_f(P)");
  need_f(measure);
  measure->add_option("--poly", poly_arg, "Polynomial P: JSON text or file")->required();
  measure->add_option("--method", method, "mc | tree | nested | circle | segment | jensen")
      ->check(CLI::IsMember({"mc", "tree", "nested", "circle", "segment", "jensen"}))
      ->capture_default_str();
  measure->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  measure->add_option("--seed", seed, "Master seed")->capture_default_str();
  measure->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
  measure->add_option("--burn-in", burn_in, "Backward steps discarded per stream")->capture_default_str();
  measure->add_option("--depth", depth, "Preimage tree depth")->capture_default_str();
  measure->add_option("--start", start, "Tree root (default: repelling fixed point)");
  measure->add_option("--grid", grid, "Points per circle or segment")->capture_default_str();
  measure->add_option("--alpha", alpha, "Segment start")->capture_default_str();
  measure->add_option("--beta", beta, "Segment end")->capture_default_str();
  add_common(measure, run);
  measure->callback([&] {
    action = [&] {
      const DynMap f = load_map(f_arg);
      std::vector<std::string> names;
      const MPoly P = load_poly(poly_arg, &names);
      QuadratureResult r;
      McOptions mo;
      mo.n_samples = samples;
      mo.seed = seed;
      mo.threads = threads;
      mo.burn_in = burn_in;
      if (method == "mc") {
        run.seed = seed, run.seeded = true;
        r = mahler_mc(f, P, mo);
      } else if (method == "nested") {
        run.seed = seed, run.seeded = true;
        r = mahler_nested(f, P, mo);
      } else if (method == "tree") {
        std::optional<Complex> s;
        if (!start.empty()) s = parse_complex(start);
        r = mahler_tree(f, P, depth, s);
      } else if (method == "circle") {
        r = mahler_circle(P, grid);
      } else if (method == "segment") {
        r = mahler_segment(P, parse_complex(alpha), parse_complex(beta), grid);
      } else {
        std::optional<ZPoly> u;
        for (std::size_t v = 0; v < P.nvars() && !u; ++v) u = P.as_univariate(v);
        if (!u) throw InputError("--method jensen needs a polynomial in one variable");
        r.method = Method::Jensen;
        r.estimate = mahler_univariate_jensen(f, *u);
      }
      json j = to_json(r);
      j["poly"] = to_string(P, names);
      j["f"] = to_string(f.exact());
      emit(run, j);
    };
  });

  // green
  auto* green_cmd = app.add_subcommand("green", "Green function g_f(z)");
  need_f(green_cmd);
  green_cmd->add_option("--point", point, "Complex point, e.g. 1.5+0.5i")->required();
  green_cmd->add_option("--max-iter", max_iter, "Iteration budget")->capture_default_str();
  add_common(green_cmd, run);
  green_cmd->callback([&] {
    action = [&] {
      GreenOptions go;
      go.max_iter = max_iter;
      emit(run, to_json(green(load_map(f_arg), parse_complex(point), go)));
    };
  });

  // height
  auto* height = app.add_subcommand("height", "Canonical height of a rational point");
  need_f(height);
  height->add_option("--point", point, "Integer or p/q")->required();
  height->add_option("--target-error", target_error, "Stop once the error bound is below this")
      ->capture_default_str();
  height->add_option("--max-bits", max_bits, "Cap on numerator/denominator size")->capture_default_str();
  add_common(height, run);
  height->callback([&] {
    action = [&] {
      HeightOptions ho;
      ho.target_error = target_error;
      ho.max_bits = max_bits;
      const DynMap f = load_map(f_arg);
      emit(run, to_json(canonical_height(f.exact(), require_rational(point), ho)));
    };
  });

  // preper
  auto* preper = app.add_subcommand("preper", "Is a point preperiodic?");
  need_f(preper);
  preper->add_option("--point", point, "Rational (exact test) or complex (numeric test)")->required();
  preper->add_option("--tol", tol, "Numeric cycle tolerance")->capture_default_str();
  preper->add_option("--max-iter", max_iter, "Numeric iteration budget")->capture_default_str();
  add_common(preper, run);
  preper->callback([&] {
    action = [&] {
      const DynMap f = load_map(f_arg);
      if (auto q = parse_rational(point)) {
        const ExactPreperiodicity e = is_preperiodic_exact(f.exact(), *q);
        emit(run, json{{"mode", "exact"},
                       {"verdict", e.preperiodic ? "Preperiodic" : "Wandering"},
                       {"tail", e.tail},
                       {"period", e.period},
                       {"by_denominator", e.by_denominator}});
      } else {
        const NumericPreperiodicity n = is_preperiodic_numeric(f, parse_complex(point), tol, max_iter);
        emit(run, json{{"mode", "numeric"},
                       {"verdict", to_string(n.verdict)},
                       {"tail", n.tail},
                       {"period", n.period},
                       {"steps", n.steps},
                       {"heuristic", n.heuristic}});
      }
    };
  });

  // cycles
  auto* cycles = app.add_subcommand("cycles", "Periodic points of period dividing n, classified (CSV)");
  need_f(cycles);
  cycles->add_option("--period", period, "n")->required()->check(CLI::PositiveNumber);
  add_common(cycles, run);
  cycles->callback([&] {
    action = [&] {
      const DynMap f = load_map(f_arg);
      PeriodicPointOptions po;
      po.distinct = true;
      std::ostringstream os;
      os << "re,im,multiplier_re,multiplier_im,abs_multiplier,class,period\n";
      for (const Complex& z : periodic_points(f, period, po)) {
        const unsigned k = exact_period(f, z, period);
        const CycleReport c = classify_cycle(f, z, k);
        os << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(c.multiplier.real()) << ','
           << fmt17(c.multiplier.imag()) << ',' << fmt17(c.abs_multiplier) << ',' << to_string(c.cls) << ','
           << k << '\n';
      }
      emit(run, os.str());
    };
  });

  // kronecker
  auto* kron = app.add_subcommand("kronecker", "Decide or certify m_f(P) = 0");
  need_f(kron);
  kron->add_option("--poly", poly_arg, "Polynomial P")->required();
  kron->add_option("--factors", factors_arg, "Factor specs (bivariate certification)");
  kron->add_option("--max-n", max_n, "Candidate search: largest n in f^n - f^m")->capture_default_str();
  kron->add_option("--max-m", max_m, "Candidate search: largest m")->capture_default_str();
  add_common(kron, run);
  kron->callback([&] {
    action = [&] {
      const DynMap f = load_map(f_arg);
      std::vector<std::string> names;
      const MPoly P = load_poly(poly_arg, &names);
      std::optional<ZPoly> u;
      if (P.nvars() == 1) u = P.as_univariate(0);
      if (u) {
        emit(run, to_json(certify_zero_univariate(f, *u), names));
        return;
      }
      if (P.nvars() != 2) throw InputError("kronecker: P must have one or two variables");
      if (!factors_arg.empty()) {
        const auto specs = parse_factor_specs(load_json_arg(factors_arg), f.exact());
        emit(run, to_json(certify_zero_bivariate(f, P, specs), names));
        return;
      }
      KroneckerVerdict v;
      v.note = "no factor specs given; reporting preperiodic pairs on the zero locus";
      json j = to_json(v, names);
      const PreperiodicPairs pp = find_preperiodic_pairs(f, P, max_n, max_m);
      json pairs = json::array();
      for (const auto& [a, b] : pp.pairs) pairs.push_back({complex_to_json(a), complex_to_json(b)});
      json lines = json::array();
      for (const Complex& a : pp.vertical_lines) lines.push_back(complex_to_json(a));
      j["preperiodic_pairs"] = pairs;
      j["vertical_lines"] = lines;
      emit(run, j);
    };
  });

  // boyd-lawton
  auto* bl = app.add_subcommand("boyd-lawton", "m_f(P(x, f^n(x))) for n = 1..n_max (CSV)");
  need_f(bl);
  bl->add_option("--poly", poly_arg, "Bivariate P")->required();
  bl->add_option("--n-max", n_max, "Last n")->capture_default_str()->check(CLI::PositiveNumber);
  add_common(bl, run);
  bl->callback([&] {
    action = [&] {
      const DynMap f = load_map(f_arg);
      const MPoly P = load_poly(poly_arg, nullptr);
      std::ostringstream os;
      os << "n,degree,estimate\n";
      for (const BoydLawtonTerm& t : boyd_lawton_sequence(f, P, n_max)) {
        os << t.n << ',' << t.specialized.degree() << ',' << fmt17(t.result.estimate) << '\n';
      }
      emit(run, os.str());
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Does every preperiodic point lie in J_f?");
  need_f(classify);
  add_common(classify, run);
  classify->callback([&] {
    action = [&] { emit(run, to_json(preper_in_julia(parse_zpoly(load_json_arg(f_arg), "f")))); };
  });

  // multibrot
  int mb_d = 2, resolution = 800, raster_iter = 200;
  std::string re_range = "-2:2", im_range = "-2:2", pgm;
  auto* mb = app.add_subcommand("multibrot", "Render the Multibrot set M_d (PPM)");
  mb->add_option("--d", mb_d, "Degree")->capture_default_str()->check(CLI::Range(2, 64));
  mb->add_option("--re-range", re_range, "lo:hi")->capture_default_str();
  mb->add_option("--im-range", im_range, "lo:hi")->capture_default_str();
  mb->add_option("--resolution", resolution, "Width in pixels")->capture_default_str()->check(CLI::PositiveNumber);
  mb->add_option("--max-iter", raster_iter, "Iteration budget")->capture_default_str();
  mb->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
  mb->add_option("--pgm", pgm, "Also write an escape-time PGM");
  add_common(mb, run);
  mb->callback([&] {
    action = [&] {
      RasterConfig cfg;
      std::tie(cfg.re_min, cfg.re_max) = parse_range(re_range, "--re-range");
      std::tie(cfg.im_min, cfg.im_max) = parse_range(im_range, "--im-range");
      cfg.width = resolution;
      cfg.height = std::max(1, static_cast<int>(std::lround(resolution * (cfg.im_max - cfg.im_min) /
                                                            (cfg.re_max - cfg.re_min))));
      cfg.max_iter = raster_iter;
      cfg.mode = RasterMode::Multibrot;
      cfg.multibrot_degree = mb_d;
      cfg.threads = threads;
      const Image img = render(std::nullopt, cfg);
      if (run.out.empty()) run.out = "multibrot_d" + std::to_string(mb_d) + ".ppm";
      write_ppm(img, run.out);
      run.outputs.push_back(run.out);
      if (!pgm.empty()) {
        write_pgm(img, cfg, pgm);
        run.outputs.push_back(pgm);
      }
      std::cout << run.out << " (" << cfg.width << "x" << cfg.height << ")\n";
    };
  });

  // render
  RasterConfig rc;
  std::string mode = "filled";
  auto* rend = app.add_subcommand("render", "Render a filled Julia set, its boundary, or M_d (PPM)");
  rend->add_option("--f", f_arg, "Map f (Julia modes)");
  rend->add_option("--mode", mode, "filled | boundary | multibrot")
      ->check(CLI::IsMember({"filled", "boundary", "multibrot"}))
      ->capture_default_str();
  rend->add_option("--re-min", rc.re_min)->capture_default_str();
  rend->add_option("--re-max", rc.re_max)->capture_default_str();
  rend->add_option("--im-min", rc.im_min)->capture_default_str();
  rend->add_option("--im-max", rc.im_max)->capture_default_str();
  rend->add_option("--width", rc.width)->capture_default_str();
  rend->add_option("--height", rc.height)->capture_default_str();
  rend->add_option("--max-iter", rc.max_iter)->capture_default_str();
  rend->add_option("--degree", rc.multibrot_degree, "Multibrot degree")->capture_default_str();
  rend->add_option("--threads", rc.threads, "Worker threads (0: all cores)")->capture_default_str();
  rend->add_option("--pgm", pgm, "Also write an escape-time PGM");
  add_common(rend, run);
  rend->callback([&] {
    action = [&] {
      std::optional<DynMap> f;
      if (mode == "multibrot") rc.mode = RasterMode::Multibrot;
      else rc.mode = mode == "boundary" ? RasterMode::JuliaBoundary : RasterMode::FilledJulia;
      if (rc.mode != RasterMode::Multibrot) {
        if (f_arg.empty()) throw SchemaError("--f is required for Julia modes");
        f = load_map(f_arg);
      }
      const Image img = render(f, rc);
      if (run.out.empty()) run.out = "render.ppm";
      write_ppm(img, run.out);
      run.outputs.push_back(run.out);
      if (!pgm.empty()) {
        write_pgm(img, rc, pgm);
        run.outputs.push_back(pgm);
      }
      std::cout << run.out << " (" << rc.width << "x" << rc.height << ")\n";
    };
  });

  // selftest
  int criterion = 0;
  std::uint64_t st_seed = acceptance::Options{}.seed;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--criterion", criterion, "Run one criterion (1-14)");
  selftest->add_option("--seed", st_seed, "Master seed")->capture_default_str();
  selftest->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
  selftest->callback([&] {
    action = [&] {
      acceptance::Options o;
      o.seed = st_seed;
      o.threads = threads;
      run.seed = st_seed, run.seeded = true;
      int failed = 0;
      for (int id = 1; id <= acceptance::kCriterionCount; ++id) {
        if (criterion != 0 && id != criterion) continue;
        const auto r = acceptance::run_criterion(id, o);
        std::cout << acceptance::format_line(r) << std::endl;
        failed += r.passed ? 0 : 1;
      }
      if (failed) throw Error(std::to_string(failed) + " criterion(s) failed");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (CLI::App* s : app.get_subcommands()) {
    run.sub = s;
    run.command = s->get_name();
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    action();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(run, secs);
  } catch (const SchemaError& e) {
    std::cerr << "dynmahler " << run.command << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dynmahler " << run.command << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
