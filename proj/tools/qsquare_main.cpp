// Command-line front end for the qsquare library. Links only the C API.
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsquare.h"

using nlohmann::json;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

[[noreturn]] void die(int status, const std::string& context) {
  std::cerr << "error: " << context << ": " << qsq_last_error() << "\n";
  std::exit(status == QSQ_OK ? 1 : 2);
}

void check(int status, const std::string& context) {
  if (status != QSQ_OK) die(status, context);
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      std::cerr << "error: cannot parse number '" << tok << "'\n";
      std::exit(1);
    }
  }
  return out;
}

struct Range {
  double lo = -2.0, hi = 2.0;
  int res = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &r.lo, &r.hi, &r.res) != 3 ||
      r.res < 2) {
    std::cerr << "error: --range expects lo:hi:res with res >= 2\n";
    std::exit(1);
  }
  return r;
}

int default_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("QSQUARE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // library picks hardware concurrency
}

struct SectionFlags {
  bool werner2 = false, ti3 = false, tinv3 = false;
  int werner_n = 0;

  void add(CLI::App* cmd) {
    cmd->add_flag("--werner2", werner2, "two-qubit Werner section");
    cmd->add_flag("--ti3", ti3, "translation-invariant 3-qubit section");
    cmd->add_flag("--tinv3", tinv3, "transposition-invariant 3-qubit section");
    cmd->add_option("--werner", werner_n,
                    "N-qubit Werner commutant section (2..5)");
  }

  std::optional<std::string> name() const {
    int picked = (werner2 ? 1 : 0) + (ti3 ? 1 : 0) + (tinv3 ? 1 : 0) +
                 (werner_n ? 1 : 0);
    if (picked > 1) {
      std::cerr << "error: pick at most one section flag\n";
      std::exit(1);
    }
    if (werner2) return "werner2";
    if (ti3) return "ti3";
    if (tinv3) return "tinv3";
    if (werner_n) return "werner" + std::to_string(werner_n);
    return std::nullopt;
  }
};

qsq_basis* open_basis(int qubits, int gell_mann) {
  if ((qubits > 0) == (gell_mann > 0)) {
    std::cerr << "error: pick exactly one of --qubits or --gell-mann\n";
    std::exit(1);
  }
  qsq_basis* b = nullptr;
  if (qubits > 0)
    check(qsq_basis_pauli(qubits, &b), "pauli basis");
  else
    check(qsq_basis_gell_mann(gell_mann, &b), "gell-mann basis");
  return b;
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open output file " << path << "\n";
    std::exit(1);
  }
  out << body;
  if (!body.empty() && body.back() != '\n') out << "\n";
}

// Hamiltonian file schema:
// { "dim": D, "matrix": [ [ [re, im], ... D pairs ... ], ... D rows ... ] }
std::vector<double> read_matrix_file(const std::string& path, int expect_dim) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open matrix file " << path << "\n";
    std::exit(1);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1 + std::count(text.begin(), text.begin() +
                                 std::min<size_t>(e.byte, text.size()), '\n');
    std::cerr << "error: " << path << " line " << line << ": " << e.what() << "\n";
    std::exit(1);
  }
  if (!j.contains("dim") || !j.contains("matrix")) {
    std::cerr << "error: " << path << ": expected keys \"dim\" and \"matrix\"\n";
    std::exit(1);
  }
  int dim = j["dim"].get<int>();
  if (dim != expect_dim) {
    std::cerr << "error: " << path << ": dim " << dim << " does not match basis dim "
              << expect_dim << "\n";
    std::exit(1);
  }
  const auto& rows = j["matrix"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    std::cerr << "error: " << path << ": \"matrix\" must have " << dim << " rows\n";
    std::exit(1);
  }
  std::vector<double> out;
  out.reserve(2 * dim * dim);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      std::cerr << "error: " << path << ": each row needs " << dim
                << " [re, im] pairs\n";
      std::exit(1);
    }
    for (const auto& ent : row) {
      if (!ent.is_array() || ent.size() != 2) {
        std::cerr << "error: " << path << ": entries must be [re, im] pairs\n";
        std::exit(1);
      }
      out.push_back(ent[0].get<double>());
      out.push_back(ent[1].get<double>());
    }
  }
  return out;
}

const char* class_name(int cls) {
  switch (cls) {
    case QSQ_POINT_INTERIOR: return "Interior";
    case QSQ_POINT_BOUNDARY: return "Boundary";
    case QSQ_POINT_CRITICAL_INTERIOR: return "CriticalButInterior";
  }
  return "Unknown";
}

// ---- subcommands -----------------------------------------------------

int cmd_basis(int qubits, int gell_mann, bool structure, const std::string& out) {
  qsq_basis* b = open_basis(qubits, gell_mann);
  char* text = nullptr;
  check(qsq_basis_json(b, structure ? 1 : 0, &text), "basis json");
  write_output(out, text);
  qsq_string_free(text);
  qsq_basis_free(b);
  return 0;
}

int cmd_map(const SectionFlags& sec, int qubits, int gell_mann,
            const std::string& btext, const std::string& out) {
  std::vector<double> b = parse_vector(btext);
  json result;
  result["config"] = {{"command", "map"}, {"b", b}};

  if (auto name = sec.name()) {
    qsq_section* s = nullptr;
    check(qsq_section_create(name->c_str(), &s), "section");
    int m = qsq_section_coord_dim(s);
    if (static_cast<int>(b.size()) != m) {
      std::cerr << "error: section " << *name << " expects " << m
                << " coordinates, got " << b.size() << "\n";
      return 1;
    }
    std::vector<double> a(m);
    double min_eig = 0;
    check(qsq_section_map(s, b.data(), a.data(), &min_eig), "section map");
    result["config"]["section"] = *name;
    result["a"] = a;
    result["min_eig"] = min_eig;
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back(qsq_section_op_name(s, i));
    result["coord_names"] = names;
    qsq_section_free(s);
  } else {
    qsq_basis* bb = open_basis(qubits, gell_mann);
    int n = qsq_basis_count(bb), dim = qsq_basis_dim(bb);
    if (static_cast<int>(b.size()) != n) {
      std::cerr << "error: basis has " << n << " generators, got " << b.size()
                << " components\n";
      return 1;
    }
    std::vector<double> a(n), rho(2 * dim * dim), eigs(dim);
    check(qsq_aux_to_bloch(bb, b.data(), a.data()), "aux to bloch");
    check(qsq_aux_to_density(bb, b.data(), rho.data()), "aux to density");
    double purity = 0, min_eig = 0;
    int rank = 0;
    check(qsq_spectral_report(rho.data(), dim, 0, eigs.data(), &purity, &rank,
                              &min_eig),
          "spectral report");
    result["config"]["dim"] = dim;
    result["a"] = a;
    result["spectrum"] = eigs;
    result["purity"] = purity;
    result["rank"] = rank;
    result["min_eig"] = min_eig;
    int cls = 0;
    double det = 0;
    check(qsq_classify_point(bb, b.data(), 1e-8, &cls, nullptr, &det), "classify");
    result["class"] = class_name(cls);
    result["det"] = det;
    qsq_basis_free(bb);
  }
  write_output(out, result.dump(2));
  return 0;
}

struct ScanSink {
  std::ostringstream& csv;
  int coord_dim;
  bool keep_all;
  long count = 0;
};

void scan_emit(void* user, const double* bvec, const double* avec, double det,
               double min_eig, int cls, int refined) {
  auto* sink = static_cast<ScanSink*>(user);
  if (!sink->keep_all && cls == QSQ_POINT_INTERIOR && !refined) return;
  int m = sink->coord_dim;
  for (int i = 0; i < m; ++i) sink->csv << fmt(bvec[i]) << ",";
  for (int i = 0; i < m; ++i) sink->csv << fmt(avec[i]) << ",";
  sink->csv << fmt(det) << "," << fmt(min_eig) << "," << class_name(cls) << ","
            << refined << "\n";
  sink->count++;
}

int cmd_boundary(const SectionFlags& sec, const std::string& range_text, int res,
                 double det_tol, double eig_tol, bool no_refine, bool keep_all,
                 int threads, const std::string& out) {
  auto name = sec.name();
  if (!name) {
    std::cerr << "error: boundary needs a section flag\n";
    return 1;
  }
  qsq_section* s = nullptr;
  check(qsq_section_create(name->c_str(), &s), "section");
  int m = qsq_section_coord_dim(s);

  std::vector<double> lo(m), hi(m);
  std::vector<int> resv(m);
  if (!range_text.empty()) {
    Range r = parse_range(range_text);
    for (int i = 0; i < m; ++i) {
      lo[i] = r.lo;
      hi[i] = r.hi;
      resv[i] = r.res;
    }
  } else {
    for (int i = 0; i < m; ++i) {
      lo[i] = -2.0;
      hi[i] = 2.0;
      resv[i] = res;
    }
  }

  qsq_scan_spec spec{};
  spec.lo = lo.data();
  spec.hi = hi.data();
  spec.res = resv.data();
  spec.det_tol = det_tol;
  spec.eig_tol = eig_tol;
  spec.refine = no_refine ? 0 : 1;
  spec.threads = default_threads(threads);

  std::ostringstream csv;
  csv << "# section=" << *name << "\n";
  for (int i = 0; i < m; ++i)
    csv << "# axis" << i << " name=" << qsq_section_op_name(s, i + 1)
        << " lo=" << fmt(lo[i]) << " hi=" << fmt(hi[i]) << " res=" << resv[i]
        << "\n";
  csv << "# det_tol=" << fmt(det_tol) << " eig_tol=" << fmt(eig_tol)
      << " refine=" << spec.refine << " keep_all=" << (keep_all ? 1 : 0) << "\n";
  csv << "# columns: b_0..b_" << m - 1 << ", a_0..a_" << m - 1
      << ", det, min_eig, class, refined\n";
  for (int i = 0; i < m; ++i) csv << "b_" << i << ",";
  for (int i = 0; i < m; ++i) csv << "a_" << i << ",";
  csv << "det,min_eig,class,refined\n";

  ScanSink sink{csv, m, keep_all};
  check(qsq_boundary_scan(s, &spec, scan_emit, &sink), "boundary scan");
  csv << "# points=" << sink.count << "\n";
  write_output(out, csv.str());
  qsq_section_free(s);
  return 0;
}

int cmd_extremes(const SectionFlags& sec, int seeds, uint64_t rng_seed,
                 int family_res, const std::string& out) {
  auto name = sec.name();
  if (!name) {
    std::cerr << "error: extremes needs a section flag\n";
    return 1;
  }
  qsq_section* s = nullptr;
  check(qsq_section_create(name->c_str(), &s), "section");

  qsq_solve_config cfg{};
  cfg.seeds = seeds;
  cfg.rng_seed = rng_seed;
  char* text = nullptr;
  check(qsq_solve_extremes(s, &cfg, &text), "solve extremes");
  json result;
  result["config"] = {{"command", "extremes"},
                      {"section", *name},
                      {"seeds", seeds},
                      {"rng_seed", rng_seed}};
  result["solutions"] = json::parse(text);
  qsq_string_free(text);

  if (family_res > 1 && *name == "tinv3") {
    result["config"]["family_res"] = family_res;
    json families = json::object();
    struct Fam {
      const char* name;
      double lo, hi;
    } fams[] = {{"Pi3", -1.0, 1.0 / 3.0}, {"Pi4", -1.0 / 9.0, 1.0 / 3.0}};
    for (const auto& f : fams) {
      json samples = json::array();
      for (int i = 0; i < family_res; ++i) {
        double x = f.lo + (f.hi - f.lo) * i / (family_res - 1);
        for (int branch : {+1, -1}) {
          double a[3], c;
          int r;
          check(qsq_family_trace(s, f.name, x, branch, a, &c, &r), "family trace");
          samples.push_back({{"param", x},
                             {"branch", branch},
                             {"coords", {a[0], a[1], a[2]}},
                             {"c", c},
                             {"r", r}});
        }
      }
      families[f.name] = std::move(samples);
    }
    result["families"] = std::move(families);
  }
  write_output(out, result.dump(2));
  qsq_section_free(s);
  return 0;
}

int cmd_verify(bool identities, bool positivity, bool jacobian_check, int qubits,
               int gell_mann, int samples, uint64_t seed) {
  int failures = 0;
  if (!identities && !positivity && !jacobian_check) {
    std::cerr << "error: pick at least one of --identities, --positivity,"
                 " --jacobian\n";
    return 1;
  }

  if (identities) {
    char* report = nullptr;
    double max_err = 0;
    check(qsq_verify_identities(&report, &max_err), "verify identities");
    std::cout << report;
    qsq_string_free(report);
    bool ok = max_err < 1e-12;
    std::cout << "identities: max error " << fmt(max_err) << " "
              << (ok ? "pass" : "FAIL") << "\n";
    if (!ok) failures++;
  }

  if (positivity || jacobian_check) {
    qsq_basis* b = open_basis(qubits, gell_mann);
    int n = qsq_basis_count(b), dim = qsq_basis_dim(b);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);

    if (positivity) {
      double worst = 0;
      std::vector<double> bv(n), rho(2 * dim * dim);
      for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) bv[i] = uni(rng);
        check(qsq_aux_to_density(b, bv.data(), rho.data()), "aux to density");
        double min_eig = 0;
        check(qsq_spectral_report(rho.data(), dim, 0, nullptr, nullptr, nullptr,
                                  &min_eig),
              "spectral report");
        worst = std::min(worst, min_eig);
      }
      bool ok = worst >= -1e-10;
      std::cout << "positivity: samples=" << samples << " seed=" << seed
                << " min eigenvalue " << fmt(worst) << " "
                << (ok ? "pass" : "FAIL") << "\n";
      if (!ok) failures++;
    }

    if (jacobian_check) {
      const double h = 1e-5;
      double worst = 0;
      std::vector<double> bv(n), jac(n * n), ap(n), am(n);
      int checks = std::min(samples, 20);
      for (int s = 0; s < checks; ++s) {
        for (int i = 0; i < n; ++i) bv[i] = 0.5 * uni(rng);
        check(qsq_jacobian(b, bv.data(), jac.data()), "jacobian");
        for (int j = 0; j < n; ++j) {
          std::vector<double> bp(bv), bm(bv);
          bp[j] += h;
          bm[j] -= h;
          check(qsq_aux_to_bloch(b, bp.data(), ap.data()), "aux to bloch");
          check(qsq_aux_to_bloch(b, bm.data(), am.data()), "aux to bloch");
          for (int i = 0; i < n; ++i) {
            double fd = (ap[i] - am[i]) / (2 * h);
            worst = std::max(worst, std::abs(fd - jac[i * n + j]));
          }
        }
      }
      bool ok = worst < 1e-6;
      std::cout << "jacobian: points=" << checks << " seed=" << seed
                << " max |analytic - fd| " << fmt(worst) << " "
                << (ok ? "pass" : "FAIL") << "\n";
      if (!ok) failures++;
    }
    qsq_basis_free(b);
  }
  return failures == 0 ? 0 : 1;
}

int cmd_optimize(int qubits, int gell_mann, const std::string& hfile,
                 uint64_t seed, int max_iters, double grad_tol,
                 const std::string& out) {
  qsq_basis* b = open_basis(qubits, gell_mann);
  int n = qsq_basis_count(b), dim = qsq_basis_dim(b);
  std::vector<double> h = read_matrix_file(hfile, dim);

  qsq_opt_config cfg{};
  cfg.max_iters = max_iters;
  cfg.grad_tol = grad_tol;
  cfg.seed = seed;
  std::vector<double> bv(n);
  double energy = 0;
  int converged = 0;
  check(qsq_minimize_expectation(b, h.data(), &cfg, bv.data(), &energy, &converged),
        "minimize expectation");

  json result;
  result["config"] = {{"command", "optimize"}, {"h", hfile},   {"seed", seed},
                      {"max_iters", max_iters}, {"grad_tol", grad_tol},
                      {"dim", dim}};
  result["b"] = bv;
  result["energy"] = energy;
  result["converged"] = converged != 0;
  write_output(out, result.dump(2));
  qsq_basis_free(b);
  return converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squaring parametrization toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qsq_version()));

  int qubits = 0, gell_mann = 0;
  std::string out_path;

  auto* basis = app.add_subcommand("basis", "emit generator basis as JSON");
  bool no_structure = false;
  basis->add_option("--qubits", qubits, "Pauli tensor basis on N qubits");
  basis->add_option("--gell-mann", gell_mann, "generalized Gell-Mann basis, dim D");
  basis->add_flag("--no-structure", no_structure, "skip the f/d tensors");
  basis->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* map = app.add_subcommand("map", "evaluate the squaring map at one point");
  SectionFlags map_sec;
  map_sec.add(map);
  std::string btext;
  map->add_option("--qubits", qubits, "Pauli tensor basis on N qubits");
  map->add_option("--gell-mann", gell_mann, "generalized Gell-Mann basis, dim D");
  map->add_option("--b", btext, "comma-separated auxiliary vector")->required();
  map->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* boundary =
      app.add_subcommand("boundary", "scan the Jacobian determinant zero set;"
                                     " CSV columns: b coords, a coords, det,"
                                     " min_eig, class, refined");
  SectionFlags bd_sec;
  bd_sec.add(boundary);
  std::string range_text;
  int res = 100, threads = 0;
  double det_tol = 1e-8, eig_tol = 1e-8;
  bool no_refine = false;
  boundary->add_option("--range", range_text, "lo:hi:res applied to every axis");
  boundary->add_option("--res", res, "per-axis resolution on [-2, 2]");
  boundary->add_option("--det-tol", det_tol, "|det| threshold for hits");
  boundary->add_option("--eig-tol", eig_tol, "eigenvalue threshold for class");
  boundary->add_flag("--no-refine", no_refine, "skip bisection refinement");
  bool keep_all = false;
  boundary->add_flag("--all", keep_all,
                     "emit every grid point, not just boundary hits");
  boundary->add_option("--threads", threads,
                       "worker threads (default: QSQUARE_THREADS or hardware)");
  boundary->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* extremes = app.add_subcommand("extremes", "enumerate projector solutions");
  SectionFlags ex_sec;
  ex_sec.add(extremes);
  int seeds = 1000, family_res = 0;
  uint64_t rng_seed = 20240901;
  extremes->add_option("--seeds", seeds, "Newton seed count");
  extremes->add_option("--seed", rng_seed, "RNG seed");
  extremes->add_option("--family-res", family_res,
                       "sample closed-form families at this many parameters");
  extremes->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run self checks");
  bool v_identities = false, v_positivity = false, v_jacobian = false;
  int samples = 10000;
  uint64_t v_seed = 20240901;
  verify->add_flag("--identities", v_identities, "sigma-product identity table");
  verify->add_flag("--positivity", v_positivity, "mapped states stay positive");
  verify->add_flag("--jacobian", v_jacobian, "analytic vs finite differences");
  verify->add_option("--qubits", qubits, "Pauli tensor basis on N qubits");
  verify->add_option("--gell-mann", gell_mann, "generalized Gell-Mann basis");
  verify->add_option("--samples", samples, "random sample count");
  verify->add_option("--seed", v_seed, "RNG seed");

  auto* optimize = app.add_subcommand("optimize", "minimize tr(rho H)");
  optimize->set_help_flag("--help", "print help");
  std::string hfile;
  int max_iters = 0;
  double grad_tol = 0;
  uint64_t o_seed = 0;
  optimize->add_option("--qubits", qubits, "Pauli tensor basis on N qubits");
  optimize->add_option("--gell-mann", gell_mann, "generalized Gell-Mann basis");
  optimize
      ->add_option("--h", hfile,
                   "Hamiltonian JSON: {\"dim\": D, \"matrix\": [[[re,im],..],..]}")
      ->required();
  optimize->add_option("--seed", o_seed, "RNG seed for the start point");
  optimize->add_option("--max-iters", max_iters, "iteration cap");
  optimize->add_option("--grad-tol", grad_tol, "gradient norm stop tolerance");
  optimize->add_option("-o,--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (basis->parsed()) return cmd_basis(qubits, gell_mann, !no_structure, out_path);
  if (map->parsed()) return cmd_map(map_sec, qubits, gell_mann, btext, out_path);
  if (boundary->parsed())
    return cmd_boundary(bd_sec, range_text, res, det_tol, eig_tol, no_refine,
                        keep_all, threads, out_path);
  if (extremes->parsed())
    return cmd_extremes(ex_sec, seeds, rng_seed, family_res, out_path);
  if (verify->parsed())
    return cmd_verify(v_identities, v_positivity, v_jacobian, qubits, gell_mann,
                      samples, v_seed);
  if (optimize->parsed())
    return cmd_optimize(qubits, gell_mann, hfile, o_seed, max_iters, grad_tol,
                        out_path);
  return 1;
}
