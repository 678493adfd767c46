// quasilattice: command-line front end.
#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quasilattice/correlation.hpp"
#include "quasilattice/diffraction.hpp"
#include "quasilattice/elliptic.hpp"
#include "quasilattice/environment.hpp"
#include "quasilattice/errors.hpp"
#include "quasilattice/ising.hpp"
#include "quasilattice/pentagrid.hpp"
#include "quasilattice/raster.hpp"
#include "quasilattice/sequences.hpp"
#include "quasilattice/structure.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, end};
}

// Every option is registered through here so the fully resolved argument
// list can be written next to the outputs and replayed.
class Recorder {
 public:
  template <class T>
  CLI::Option* opt(CLI::App* app, const std::string& name, T& var, const std::string& help) {
    auto* o = app->add_option(name, var, help)->capture_default_str();
    auto key = long_name(name);
    entries_[app].push_back({key, [&var, key]() -> std::vector<std::string> { return {"--" + key, text(var)}; },
                             [&var]() { return to_json(var); }});
    return o;
  }
  CLI::Option* flag(CLI::App* app, const std::string& name, bool& var, const std::string& help) {
    auto* o = app->add_flag(name, var, help);
    auto key = long_name(name);
    entries_[app].push_back({key,
                             [&var, key]() -> std::vector<std::string> {
                               return var ? std::vector<std::string>{"--" + key} : std::vector<std::string>{};
                             },
                             [&var]() { return json(var); }});
    return o;
  }

  std::vector<std::string> argv(const std::vector<CLI::App*>& path) const {
    std::vector<std::string> out;
    for (auto* app : path) {
      if (app->get_parent() != nullptr) out.push_back(app->get_name());
      if (auto it = entries_.find(app); it != entries_.end()) {
        for (const auto& e : it->second) {
          auto v = e.args();
          out.insert(out.end(), v.begin(), v.end());
        }
      }
    }
    return out;
  }

  json parameters(const std::vector<CLI::App*>& path) const {
    json j = json::object();
    for (auto* app : path) {
      if (auto it = entries_.find(app); it != entries_.end()) {
        for (const auto& e : it->second) j[e.key] = e.value();
      }
    }
    return j;
  }

 private:
  struct Entry {
    std::string key;
    std::function<std::vector<std::string>()> args;
    std::function<json()> value;
  };

  static std::string long_name(const std::string& spec) {
    std::string best;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part.erase(0, part.find_first_not_of('-'));
      if (part.size() > best.size()) best = part;
    }
    return best;
  }
  static std::string text(const std::string& s) { return s; }
  static std::string text(double x) { return num(x); }
  static std::string text(int x) { return std::to_string(x); }
  static std::string text(long long x) { return std::to_string(x); }
  static std::string text(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
  }
  template <class T>
  static json to_json(const T& v) {
    return json(v);
  }

  std::map<CLI::App*, std::vector<Entry>> entries_;
};

struct Globals {
  int threads = 0;
  unsigned long long seed = 1;
  std::vector<CLI::App*> path;
  const Recorder* recorder = nullptr;
};

Globals globals;

void write_text(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ql::InvalidArgument("cannot open " + path + " for writing");
  f << data;
}

void write_config(const std::string& output) {
  json j;
  j["program"] = "quasilattice";
  j["version"] = QUASILATTICE_VERSION;
  std::string command;
  for (auto* app : globals.path) {
    if (app->get_parent() != nullptr) command += (command.empty() ? "" : " ") + app->get_name();
  }
  j["command"] = command;
  j["seed"] = globals.seed;
  j["parameters"] = globals.recorder->parameters(globals.path);
  auto args = globals.recorder->argv(globals.path);
  args.insert(args.begin(), {"--seed", std::to_string(globals.seed)});
  j["argv"] = args;
  write_text(output + ".config.json", j.dump(2) + "\n");
}

std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

std::string sidecar(const std::string& path) {
  return std::filesystem::path(path).replace_extension(".json").string();
}

template <class T>
void print_values(const std::vector<T>& v, bool as_json) {
  if (as_json) {
    std::cout << json(v).dump() << "\n";
    return;
  }
  for (const auto& x : v) {
    if constexpr (std::is_floating_point_v<T>) {
      std::cout << num(x) << "\n";
    } else {
      std::cout << x << "\n";
    }
  }
}

ql::Regime regime_of(const std::string& s) { return ql::parse_regime(s.c_str()); }

// ---- tiling ---------------------------------------------------------------

struct TilingArgs {
  double radius = 10.0;
  std::vector<double> gamma{0.17, 0.23, -0.37, 0.11, -0.14};
  std::string out;
  std::string svg;
  bool ammann = false;
};

void run_tiling(const TilingArgs& a) {
  const auto patch = ql::multigrid_patch(a.gamma, a.radius);
  write_text(a.out, ql::patch_to_json(patch) + "\n");
  if (!a.svg.empty()) write_text(a.svg, ql::patch_to_svg(patch, a.ammann));
  write_config(a.out);
  std::cout << "vertices " << patch.vertices.size() << "\nrhombi " << patch.rhombi.size() << "\n";
  if (patch.grid.order() == 5) {
    const auto fat = patch.count(ql::Shape::fat);
    const auto skinny = patch.count(ql::Shape::skinny);
    std::cout << "fat " << fat << "\nskinny " << skinny << "\n";
    if (skinny > 0) std::cout << "fat/skinny " << num(static_cast<double>(fat) / skinny) << "\n";
  }
}

// ---- sequences ------------------------------------------------------------

struct SeqArgs {
  int count = 10;
  int n = 5;
  double theta = ql::golden_ratio();
  double gamma = 0.0;
  std::string variant = "floor";
  long long from = 0;
  long long to = 20;
  double slope = 1.0 / ql::golden_ratio();
  double width = 0.0;
  int range = 30;
  bool gaps = false;
  bool as_json = false;
  double x = ql::golden_ratio();
  long long samples = 100000;
  int bins = 100;
  std::string out;
};

// ---- ising ----------------------------------------------------------------

struct IsingArgs {
  double k = 0.5;
  std::string regime = "low";
  int l = 0;
  int samples = 100;
  std::vector<double> rapidities;
};

void run_couplings(const IsingArgs& a) {
  const auto p = ql::EllipticParams::make(a.k, regime_of(a.regime));
  std::cout << "l betaJ sinh2betaJ\n";
  for (int l = 1; l <= 4; ++l) {
    if (a.l != 0 && l != a.l) continue;
    const double j = ql::diagonal_coupling(p, l);
    std::cout << l << " " << num(j) << " " << num(std::sinh(2.0 * j)) << "\n";
  }
}

void run_check_st(const IsingArgs& a) {
  std::mt19937_64 rng(globals.seed);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  for (auto r : {ql::Regime::low_temperature, ql::Regime::high_temperature}) {
    if (a.regime != "both" && regime_of(a.regime) != r) continue;
    const auto p = ql::EllipticParams::make(a.k, r);
    double residual = 0.0, spread = 0.0;
    for (int i = 0; i < a.samples; ++i) {
      std::array<double, 3> u{unit(rng), unit(rng), unit(rng)};
      std::sort(u.begin(), u.end(), std::greater<>());
      const auto res = ql::star_triangle_check(p, u[0] * p.quarter_period, u[1] * p.quarter_period,
                                               u[2] * p.quarter_period);
      residual = std::max(residual, res.residual);
      spread = std::max(spread, res.r_spread);
    }
    std::cout << ql::to_string(r) << " max_residual " << num(residual) << " max_R_spread " << num(spread) << "\n";
  }
}

void run_g(const IsingArgs& a) {
  ql::CorrelationTable table(a.k);
  const double kk = table.quarter_period();
  std::vector<double> rap;
  for (double u : a.rapidities) rap.push_back(u * kk);
  const auto r = regime_of(a.regime);
  std::cout << "g " << num(table.g(r, rap)) << "\n";
  std::cout << "g* " << num(table.g(r, rap, true)) << "\n";
  std::cout << "seed_error " << num(table.max_base_error()) << "\n";
}

// ---- environment ----------------------------------------------------------

struct ProbArgs {
  long long samples = 100000;
  int resolution = 512;
  int dk0 = 0;
  int dk1 = 0;
  std::string out;
  std::string pgm;
};

void run_configs(const ProbArgs& a) {
  const auto grid = ql::Pentagrid::penrose();
  const auto regions = ql::config_regions(a.resolution);
  std::mt19937_64 rng(globals.seed);
  std::uniform_int_distribution<int> pick(-1000000, 1000000);
  std::array<long long, ql::kConfigCount> counts{};
  std::array<int, ql::kConfigCount> meshes{};
  std::array<bool, ql::kConfigCount> inside{};
  inside.fill(true);
  for (long long i = 0; i < a.samples; ++i) {
    const auto cfg = ql::classify(grid, pick(rng), pick(rng));
    ++counts[cfg.id - 1];
    meshes[cfg.id - 1] = cfg.mesh_count;
    inside[cfg.id - 1] = inside[cfg.id - 1] && cfg.reference_inside;
  }
  std::ostringstream csv;
  csv << "class,signature,mesh_count,area,frequency,reference_inside\n";
  for (int c = 0; c < ql::kConfigCount; ++c) {
    const auto sig = ql::class_table()[c];
    csv << c + 1 << "," << sig << "," << meshes[c] << "," << num(regions.areas[c]) << ","
        << num(static_cast<double>(counts[c]) / static_cast<double>(a.samples)) << ","
        << (counts[c] > 0 ? (inside[c] ? "yes" : "no") : "") << "\n";
  }
  write_text(a.out, csv.str());
  if (!a.pgm.empty()) {
    const auto img = regions.image();
    ql::write_pgm(a.pgm, img, {0.0, static_cast<double>(ql::kConfigCount)});
    json meta{{"kind", "configuration regions"},
              {"resolution", a.resolution},
              {"x", "{alpha}"},
              {"y", "{beta}, increasing upwards"},
              {"grey", "class id * 255 / 24"}};
    write_text(sidecar(a.pgm), meta.dump(2) + "\n");
  }
  write_config(a.out);
  int seen = 0;
  for (auto c : counts) seen += c > 0;
  std::cout << "classes_seen " << seen << "\n";
}

void run_joint(const ProbArgs& a) {
  const auto m = ql::joint_probability(a.dk0, a.dk1, a.resolution);
  std::ostringstream csv;
  csv << "row_class,column_class,probability\n";
  for (int i = 0; i < ql::kConfigCount; ++i) {
    for (int j = 0; j < ql::kConfigCount; ++j) csv << i + 1 << "," << j + 1 << "," << num(m.probs[i][j]) << "\n";
  }
  write_text(a.out, csv.str());
  write_config(a.out);
  std::cout << "total " << num(m.total()) << "\nresolution_error " << num(m.resolution_error) << "\n";
}

// ---- chi ------------------------------------------------------------------

struct ChiArgs {
  double k = 0.7;
  std::string regime = "high";
  double patch_radius = 25.0;
  double truncation = 8.0;
  double qmin = -4.0 * std::numbers::pi;
  double qmax = 4.0 * std::numbers::pi;
  int grid = 128;
  bool bragg = false;
  std::string out;
};

void write_map(const std::string& path, const ql::ChiMap& m, json meta) {
  const int n = m.grid.n;
  if (extension(path) == ".pgm") {
    ql::Raster img{n, n, std::vector<double>(m.values.size())};
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) img.at(n - 1 - iy, ix) = m.at(ix, iy);
    }
    const auto scale = ql::write_pgm(path, img);
    meta["normalization"] = {{"min", scale.lo}, {"max", scale.hi}};
    meta["orientation"] = "row 0 is q_y = qmax, column 0 is q_x = qmin; white = max";
    write_text(sidecar(path), meta.dump(2) + "\n");
    return;
  }
  std::ostringstream csv;
  csv << "q_x,q_y,value\n";
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) csv << num(m.grid.node(ix)) << "," << num(m.grid.node(iy)) << "," << num(m.at(ix, iy)) << "\n";
  }
  write_text(path, csv.str());
}

void run_chi(const ChiArgs& a) {
  const auto r = regime_of(a.regime);
  const auto patch = ql::patch_covering(ql::Pentagrid::penrose(), a.patch_radius);
  const auto spins = ql::select_spins(patch, a.patch_radius);
  const ql::QGrid grid{a.grid, a.qmin, a.qmax};
  ql::CorrelationTable table(a.k);
  ql::ChiMap m;
  json meta{{"quantity", a.bragg ? "Bragg F(q)" : "beta chi(q)"},
            {"k", a.k},
            {"regime", ql::to_string(r)},
            {"patch_radius", a.patch_radius},
            {"spins", spins.spins.size()},
            {"q_range", {a.qmin, a.qmax}},
            {"grid", a.grid}};
  if (a.bragg) {
    m = ql::bragg_map(spins, table.params(r), grid);
  } else {
    m = ql::chi_map(spins, table, r, {a.truncation, grid});
    meta["truncation"] = a.truncation;
    meta["taper"] = "(1 - r/T)^4 (4 r/T + 1)";
    meta["truncation_error"] = m.truncation_error;
    meta["pair_classes"] = m.classes;
    meta["seed_error"] = table.max_base_error();
  }
  write_map(a.out, m, meta);
  write_config(a.out);
  const auto [lo, hi] = std::minmax_element(m.values.begin(), m.values.end());
  std::cout << "spins " << spins.spins.size() << "\nmin " << num(*lo) << "\nmax " << num(*hi) << "\n";
  if (!a.bragg) std::cout << "truncation_error " << num(m.truncation_error) << "\n";
}

// ---- diffraction ----------------------------------------------------------

struct DiffArgs {
  double d = 50.0;
  int grid = 400;
  int count = 5;
  bool repetitions = false;
  std::string out;
};

void run_diffraction(const DiffArgs& a) {
  const ql::PinholeSpec spec{a.count, a.d, a.grid};
  const auto img = ql::intensity_map(spec);
  const auto scale = ql::write_pgm(a.out, img);
  json meta{{"function", "-log |A(x,y)|^2, floored at 1e-300"},
            {"pinholes", a.count},
            {"d", a.d},
            {"grid", a.grid},
            {"sampling", "closed square, x_i = -d + 2 d i / (grid - 1)"},
            {"normalization", {{"min", scale.lo}, {"max", scale.hi}}},
            {"convention", "darker = higher intensity"}};
  if (a.repetitions) {
    json reps = json::array();
    for (const auto& r : ql::near_repetitions(spec)) reps.push_back({{"x", r.x}, {"y", r.y}, {"correlation", r.correlation}});
    meta["near_repetitions"] = reps;
    std::cout << "near_repetitions " << reps.size() << "\n";
  }
  write_text(sidecar(a.out), meta.dump(2) + "\n");
  write_config(a.out);
  std::cout << "wrote " << a.out << " (" << a.grid << "x" << a.grid << ")\n";
}

int set_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("QUASILATTICE_THREADS")) n = std::atoi(env);
  }
  if (n > 0) omp_set_num_threads(n);
  return n > 0 ? n : omp_get_max_threads();
}

int run(int argc, char** argv) {
  CLI::App app{"Penrose tilings, the pentagrid Ising model and quasicrystal diffraction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("quasilattice ") + QUASILATTICE_VERSION + " (OpenMP " +
                                        std::to_string(_OPENMP) + ", " + __VERSION__ + ")");
  app.add_option("--threads", globals.threads, "worker threads (default: QUASILATTICE_THREADS or all cores)");
  app.add_option("--seed", globals.seed, "seed of every sampling step")->capture_default_str();
  Recorder rec;
  globals.recorder = &rec;
  std::function<void()> action;

  TilingArgs tiling;
  auto* tiling_cmd = app.add_subcommand("tiling", "rhombus tilings from pentagrids and multigrids");
  tiling_cmd->require_subcommand(1);
  auto* gen = tiling_cmd->add_subcommand("generate", "dualize a multigrid patch");
  rec.opt(gen, "--radius", tiling.radius, "grid-space radius of included intersections");
  rec.opt(gen, "--gamma", tiling.gamma, "grid offsets; their count is the symmetry order")->delimiter(',');
  rec.opt(gen, "--out", tiling.out, "tiling JSON")->required();
  rec.opt(gen, "--svg", tiling.svg, "SVG drawing");
  rec.flag(gen, "--ammann", tiling.ammann, "add the Ammann bar layer to the SVG");
  gen->callback([&] { action = [&] { run_tiling(tiling); }; });

  SeqArgs seq;
  auto* seq_cmd = app.add_subcommand("seq", "one-dimensional quasiperiodic sequences");
  seq_cmd->require_subcommand(1);
  auto* fib = seq_cmd->add_subcommand("fibonacci", "Fibonacci numbers F_1..F_count");
  rec.opt(fib, "--count", seq.count, "number of terms")->check(CLI::Range(1, 93));
  rec.flag(fib, "--json", seq.as_json, "JSON array instead of one value per line");
  fib->callback([&] {
    action = [&] {
      const auto f = ql::fibonacci_numbers(seq.count);
      print_values(std::vector<std::uint64_t>(f.begin(), f.end()), seq.as_json);
    };
  });
  auto* word = seq_cmd->add_subcommand("fibonacci-word", "the word F_n over {A, B}");
  rec.opt(word, "--n", seq.n, "generation")->check(CLI::Range(1, 40));
  word->callback([&] { action = [&] { std::cout << ql::fibonacci_word(seq.n) << "\n"; }; });
  auto* beatty = seq_cmd->add_subcommand("beatty", "floor/ceil difference sequence of n*theta + gamma");
  rec.opt(beatty, "--theta", seq.theta, "slope");
  rec.opt(beatty, "--gamma", seq.gamma, "phase");
  rec.opt(beatty, "--variant", seq.variant, "floor or ceil")->check(CLI::IsMember({"floor", "ceil"}));
  rec.opt(beatty, "--from", seq.from, "first n");
  rec.opt(beatty, "--to", seq.to, "last n");
  rec.flag(beatty, "--json", seq.as_json, "JSON array");
  beatty->callback([&] {
    action = [&] {
      const ql::BeattySpec spec{seq.theta, seq.gamma,
                                seq.variant == "ceil" ? ql::BeattyVariant::ceil : ql::BeattyVariant::floor};
      print_values(ql::beatty_sequence(spec, seq.from, seq.to), seq.as_json);
    };
  });
  auto* cp = seq_cmd->add_subcommand("cut-project", "one-dimensional cut-and-project point set");
  rec.opt(cp, "--slope", seq.slope, "slope of the physical line");
  rec.opt(cp, "--width", seq.width, "window width (0: the two-gap canonical window)");
  rec.opt(cp, "--range", seq.range, "lattice range |m|, |n| <= range");
  rec.flag(cp, "--gaps", seq.gaps, "print the gap word instead of the positions");
  rec.flag(cp, "--json", seq.as_json, "JSON array");
  cp->callback([&] {
    action = [&] {
      const double w = seq.width > 0.0 ? seq.width : ql::canonical_window(seq.slope);
      const auto pts = ql::cut_and_project_1d(seq.slope, w, seq.range);
      if (seq.gaps) {
        std::cout << ql::gap_word(pts) << "\n";
      } else {
        print_values(pts, seq.as_json);
      }
    };
  });
  auto* kron = seq_cmd->add_subcommand("kronecker", "histogram of {n x}");
  rec.opt(kron, "--x", seq.x, "the multiplier");
  rec.opt(kron, "--count", seq.samples, "n runs over 1..count");
  rec.opt(kron, "--bins", seq.bins, "histogram bins")->check(CLI::PositiveNumber);
  rec.opt(kron, "--out", seq.out, "histogram CSV (bin_lo,bin_hi,count)")->required();
  kron->callback([&] {
    action = [&] {
      if (seq.samples < 1) throw ql::InvalidArgument("count must be positive");
      const auto st = ql::kronecker_stats(seq.x, static_cast<std::uint64_t>(seq.samples), seq.bins);
      std::ostringstream csv;
      csv << "bin_lo,bin_hi,count\n";
      for (int b = 0; b < seq.bins; ++b) {
        csv << num(static_cast<double>(b) / seq.bins) << "," << num(static_cast<double>(b + 1) / seq.bins) << ","
            << st.histogram[b] << "\n";
      }
      write_text(seq.out, csv.str());
      write_config(seq.out);
      std::cout << "max_deviation " << num(st.max_deviation) << "\n";
    };
  });

  double eu = 0.5, em = 0.5;
  auto* ell = app.add_subcommand("elliptic", "Jacobi elliptic functions");
  ell->require_subcommand(1);
  auto* eval = ell->add_subcommand("eval", "print sn, cn, dn, sc, cs and K");
  rec.opt(eval, "--u", eu, "argument");
  rec.opt(eval, "--m", em, "modulus in [0, 1)");
  eval->callback([&] {
    action = [&] {
      const auto j = ql::jacobi(eu, em);
      auto guarded = [](auto f) {
        try {
          return num(f());
        } catch (const ql::PoleAt&) {
          return std::string("pole");
        }
      };
      std::cout << "sn " << num(j.sn) << "\ncn " << num(j.cn) << "\ndn " << num(j.dn) << "\nsc "
                << guarded([&] { return ql::sc(eu, em); }) << "\ncs " << guarded([&] { return ql::cs(eu, em); })
                << "\nK " << num(ql::complete_K(em)) << "\n";
    };
  });

  IsingArgs ising;
  auto* ising_cmd = app.add_subcommand("ising", "the pentagrid Ising model");
  ising_cmd->require_subcommand(1);
  auto* coup = ising_cmd->add_subcommand("couplings", "beta J on the four diagonal classes");
  rec.opt(coup, "--k", ising.k, "elliptic modulus")->check(CLI::Range(0.0, 1.0));
  rec.opt(coup, "--regime", ising.regime, "low or high");
  rec.opt(coup, "--l", ising.l, "only this class (1..4)")->check(CLI::Range(0, 4));
  coup->callback([&] { action = [&] { run_couplings(ising); }; });
  auto* st = ising_cmd->add_subcommand("check-st", "star-triangle residual on random rapidities");
  rec.opt(st, "--k", ising.k, "elliptic modulus")->check(CLI::Range(0.0, 1.0));
  rec.opt(st, "--samples", ising.samples, "random triples per regime")->check(CLI::PositiveNumber);
  rec.opt(st, "--regime", ising.regime, "low, high or both");
  st->callback([&] { action = [&] { run_check_st(ising); }; });
  auto* g = ising_cmd->add_subcommand("g", "pair correlation for crossing rapidities");
  rec.opt(g, "--k", ising.k, "elliptic modulus")->check(CLI::Range(0.0, 1.0));
  rec.opt(g, "--regime", ising.regime, "low or high");
  rec.opt(g, "--rapidities", ising.rapidities, "comma-separated, in units of K(k')")->delimiter(',');
  g->callback([&] { action = [&] { run_g(ising); }; });

  ProbArgs prob;
  auto* prob_cmd = app.add_subcommand("prob", "parallelogram configuration statistics");
  prob_cmd->require_subcommand(1);
  auto* configs = prob_cmd->add_subcommand("configs", "single-configuration areas and sampled frequencies");
  rec.opt(configs, "--samples", prob.samples, "random parallelograms")->check(CLI::PositiveNumber);
  rec.opt(configs, "--resolution", prob.resolution, "unit-square raster")->check(CLI::Range(256, 16384));
  rec.opt(configs, "--out", prob.out, "areas CSV")->required();
  rec.opt(configs, "--pgm", prob.pgm, "region map image");
  configs->callback([&] { action = [&] { run_configs(prob); }; });
  auto* joint = prob_cmd->add_subcommand("joint", "24 x 24 joint configuration probabilities");
  rec.opt(joint, "--dk0", prob.dk0, "shift of k0");
  rec.opt(joint, "--dk1", prob.dk1, "shift of k1");
  rec.opt(joint, "--resolution", prob.resolution, "unit-square raster")->check(CLI::Range(256, 16384));
  rec.opt(joint, "--out", prob.out, "CSV (row class, column class, probability)")->required();
  joint->callback([&] { action = [&] { run_joint(prob); }; });

  ChiArgs chi;
  auto* chi_cmd = app.add_subcommand("chi", "wavevector-dependent susceptibility");
  chi_cmd->require_subcommand(1);
  auto* map = chi_cmd->add_subcommand("map", "beta chi(q) (or the Bragg term) over a q grid");
  rec.opt(map, "--k", chi.k, "elliptic modulus")->check(CLI::Range(0.0, 1.0));
  rec.opt(map, "--regime", chi.regime, "low or high");
  rec.opt(map, "--patch-radius", chi.patch_radius, "spins with |r| <= this (side lengths)");
  rec.opt(map, "--truncation", chi.truncation, "pair distance cutoff T");
  rec.opt(map, "--qmin", chi.qmin, "lower q bound (both axes)");
  rec.opt(map, "--qmax", chi.qmax, "upper q bound (both axes)");
  rec.opt(map, "--grid", chi.grid, "nodes per axis")->check(CLI::Range(1, 4096));
  rec.flag(map, "--bragg", chi.bragg, "the Bragg term instead of chi");
  rec.opt(map, "--out", chi.out, "chi.csv or chi.pgm")->required();
  map->callback([&] { action = [&] { run_chi(chi); }; });

  DiffArgs diff;
  auto* dcmd = app.add_subcommand("diffraction", "Fraunhofer pattern of pinholes on a regular polygon");
  rec.opt(dcmd, "--d", diff.d, "window half-width");
  rec.opt(dcmd, "--grid", diff.grid, "raster size")->check(CLI::Range(2, 8192));
  rec.opt(dcmd, "--pinholes", diff.count, "number of pinholes")->check(CLI::Range(2, 64));
  rec.flag(dcmd, "--repetitions", diff.repetitions, "scan for near-repetitions of the central disk");
  rec.opt(dcmd, "--out", diff.out, "PGM image")->required();
  dcmd->callback([&] { action = [&] { run_diffraction(diff); }; });

  std::string replay;
  auto* rcmd = app.add_subcommand("replay", "re-run the command recorded in a .config.json file");
  rcmd->add_option("config", replay, "config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!replay.empty()) {
    std::ifstream f(replay);
    if (!f) {
      std::cerr << "error: cannot read " << replay << "\n";
      return 2;
    }
    json cfg;
    try {
      cfg = json::parse(f);
    } catch (const json::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::vector<std::string> args{argv[0]};
    for (const auto& a : cfg.at("argv")) args.push_back(a.get<std::string>());
    std::vector<char*> ptrs;
    for (auto& a : args) ptrs.push_back(a.data());
    return run(static_cast<int>(ptrs.size()), ptrs.data());
  }

  set_threads(globals.threads);
  globals.path.clear();
  for (CLI::App* a = &app; a != nullptr;) {
    globals.path.push_back(a);
    auto subs = a->get_subcommands();
    a = subs.empty() ? nullptr : subs.front();
  }
  try {
    if (action) action();
  } catch (const ql::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
