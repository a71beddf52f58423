// Command-line front end: validate algebra files, compute curvature
// invariants, construct classical algebras, run the Einstein deformation and
// the nilpotent certificate.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jordanis/io.hpp"
#include "jordanis/jordanis.hpp"

namespace {

using jordanis::Mat;
using jordanis::Vec;
using json = nlohmann::json;

constexpr uint64_t kDefaultSeed = 20240607ULL;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void print_matrix(const std::string& name, const Mat& m) {
  std::cout << name << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (int r = 0; r < m.rows(); ++r) {
    std::cout << "  ";
    for (int c = 0; c < m.cols(); ++c) std::cout << (c ? "  " : "") << fmt17(m(r, c));
    std::cout << "\n";
  }
}

struct Options {
  bool json_output = false;
  double tol = jordanis::kDefaultTol;
  uint64_t seed = kDefaultSeed;
};

json report_header(const std::string& command, const std::string& digest, const Options& opt) {
  json rep;
  rep["command"] = command;
  rep["input_digest"] = digest;
  rep["tolerances"] = {{"tol", opt.tol}};
  rep["seed"] = opt.seed;
  return rep;
}

void emit(const json& rep, const Options& opt) {
  if (opt.json_output) {
    std::cout << rep.dump(2) << "\n";
    return;
  }
  std::cout << "command: " << rep["command"].get<std::string>() << "\n";
  std::cout << "input_digest: " << rep["input_digest"].get<std::string>() << "\n";
  std::cout << "seed: " << rep["seed"].get<uint64_t>() << "  tol: "
            << fmt17(rep["tolerances"]["tol"].get<double>()) << "\n";
  if (rep.contains("error")) std::cout << "error: " << rep["error"].get<std::string>() << "\n";
  if (rep.contains("verdicts"))
    for (const auto& [k, v] : rep["verdicts"].items()) {
      std::cout << k << ": ";
      if (v.is_number_float())
        std::cout << fmt17(v.get<double>());
      else
        std::cout << v.dump();
      std::cout << "\n";
    }
  if (rep.contains("lines"))
    for (const auto& line : rep["lines"]) std::cout << line.get<std::string>() << "\n";
  if (rep.contains("tensors"))
    for (const auto& [k, t] : rep["tensors"].items()) {
      std::cout << k << " shape=" << t["shape"].dump() << " data=[";
      bool first = true;
      for (const auto& x : t["data"]) {
        if (!first) std::cout << ", ";
        std::cout << fmt17(x.get<double>());
        first = false;
      }
      std::cout << "]\n";
    }
}

jordanis::InnerProduct metric_of(const jordanis::AlgebraFile& file) {
  if (file.metric) return jordanis::InnerProduct(*file.metric);
  return jordanis::InnerProduct::standard(file.algebra.dim());
}

int cmd_validate(const std::string& path, const Options& opt) {
  jordanis::AlgebraFile file;
  try {
    file = jordanis::load_algebra_file(path);
  } catch (const jordanis::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  const jordanis::Algebra& a = file.algebra;
  json rep = report_header("validate " + path, jordanis::file_digest(path), opt);
  json& v = rep["verdicts"];

  const auto jc = jordanis::check_jordan(a, opt.tol);
  v["is_jordan"] = jc.is_jordan;
  v["commutator_residual"] = jc.commutator_residual;
  v["jordan_residual"] = jc.jordan_residual;
  if (jc.is_jordan) {
    const auto fc = jordanis::check_fundamental_identities(a, opt.tol);
    v["fundamental_identities"] = fc.pass;
    v["fundamental_residuals"] = {fc.residual_linearized, fc.residual_cyclic,
                                  fc.residual_quadratic};
    const auto nil = jordanis::is_nilpotent(a, opt.tol);
    v["nilpotent"] = nil.nilpotent;
    if (nil.nilpotent) v["nilpotency_degree"] = nil.degree;
    v["semisimple"] = jordanis::is_semisimple(a, opt.tol);
    v["formally_real"] = jordanis::is_formally_real(a, opt.tol);
    const auto rad = jordanis::radical(a, opt.tol);
    v["radical_dim"] = static_cast<int>(rad.size());
    if (!rad.empty()) {
      jordanis::Mat basis(a.dim(), static_cast<int>(rad.size()));
      for (size_t c = 0; c < rad.size(); ++c) basis.set_col(static_cast<int>(c), rad[c]);
      rep["tensors"]["radical_basis"] = jordanis::matrix_to_json(basis);
    }
    if (v["formally_real"].get<bool>()) {
      try {
        const auto frame = jordanis::jordan_frame(a, opt.tol, opt.seed);
        const auto pd = jordanis::peirce_decompose(a, frame, opt.tol);
        v["rank"] = pd.rank;
        v["peirce_d"] = pd.d;
      } catch (const jordanis::Error& e) {
        v["frame_error"] = e.what();
      }
    } else if (v["semisimple"].get<bool>()) {
      try {
        v["rank"] = jordanis::rank_and_trace(a, 16, opt.seed, opt.tol).rank;
      } catch (const jordanis::Error&) {
        // rank is reported only when the reduced trace is well defined
      }
    }
  }
  emit(rep, opt);
  return jc.is_jordan ? 0 : 1;
}

int cmd_curvature(const std::string& path, bool want_ricci, bool want_scalar, bool want_moment,
                  const std::string& sectional, const Options& opt) {
  jordanis::AlgebraFile file;
  try {
    file = jordanis::load_algebra_file(path);
  } catch (const jordanis::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  const jordanis::Algebra& a = file.algebra;
  const int n = a.dim();
  json rep = report_header("curvature " + path, jordanis::file_digest(path), opt);
  try {
    const jordanis::InnerProduct g = metric_of(file);
    const auto r4 = jordanis::curvature(a, g);
    const auto rd = jordanis::ricci(a, g);
    json& v = rep["verdicts"];
    v["curvature_max"] = r4.max_abs();
    v["flat"] = r4.max_abs() <= 1e-9 * a.scale();
    v["scalar_curvature"] = rd.sc;
    v["einstein"] = rd.einstein_constant.has_value();
    if (rd.einstein_constant) v["einstein_constant"] = *rd.einstein_constant;
    v["einstein_residual"] = rd.einstein_residual;

    double cyclic_max = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            cyclic_max = std::max(std::abs(r4.at(i, j, k, l) + r4.at(j, k, i, l) +
                                           r4.at(k, i, j, l)),
                                  cyclic_max);
    v["cyclic_sum_max"] = cyclic_max;
    v["cyclic_sum_vanishes"] = cyclic_max <= 1e-9 * a.scale();

    if (n <= 6) {
      json t;
      t["shape"] = {n, n, n, n};
      json data = json::array();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) data.push_back(r4.at(i, j, k, l));
      t["data"] = std::move(data);
      rep["tensors"]["R"] = std::move(t);
    }

    json lines = json::array();
    if (n <= 4) {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            Vec img(n, 0.0);
            for (int l = 0; l < n; ++l) img[l] = r4.at(i, j, k, l);
            if (jordanis::max_abs(img) <= 1e-12) continue;
            std::string s = "R(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                            ")e" + std::to_string(k + 1) + " =";
            const Vec alg = r4.basis * img;
            for (double x : alg) s += " " + fmt17(x);
            lines.push_back(s);
          }
      if (!lines.empty()) rep["lines"] = lines;
    }

    if (want_ricci) {
      rep["tensors"]["Ric"] = jordanis::matrix_to_json(rd.Ric);
      rep["tensors"]["ric"] = jordanis::matrix_to_json(rd.ric);
    }
    if (want_scalar) v["sc"] = rd.sc;
    if (want_moment) {
      const auto mm = jordanis::moment_map(a, g);
      rep["tensors"]["moment_map"] = jordanis::matrix_to_json(mm.operator_form);
      rep["tensors"]["moment_map_normalized"] = jordanis::matrix_to_json(mm.normalized);
      v["mu_norm2"] = mm.mu_norm2;
    }
    if (!sectional.empty()) {
      const auto comma = sectional.find(',');
      if (comma == std::string::npos) throw jordanis::ParseError("--sectional expects i,j");
      const int i = std::stoi(sectional.substr(0, comma));
      const int j = std::stoi(sectional.substr(comma + 1));
      if (i < 1 || i > n || j < 1 || j > n)
        throw jordanis::ParseError("--sectional indices out of range");
      v["sectional"] = jordanis::jordan_sectional(r4, g, jordanis::basis_vector(n, i - 1),
                                                  jordanis::basis_vector(n, j - 1));
    }
  } catch (const jordanis::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const jordanis::Error& e) {
    rep["error"] = e.what();
    emit(rep, opt);
    return 1;
  }
  emit(rep, opt);
  return 0;
}

int cmd_einstein(const std::string& family_name, int n_param,
                 const std::vector<double>& scan, const Options& opt) {
  json rep = report_header("einstein " + family_name + " " + std::to_string(n_param), "none", opt);
  const auto family = jordanis::family_from_name(family_name);
  if (!family) {
    std::cerr << "unknown family '" << family_name << "' (sym-r, herm-c, herm-h, spin)\n";
    return 2;
  }
  try {
    const auto ca = jordanis::build_classical({*family, n_param, std::nullopt});
    if (ca.rank < 2)
      throw jordanis::RankOne("rank-one algebras admit no identity-direction deformation");
    const auto def = jordanis::deform_to_einstein(ca.algebra, ca.frame, opt.tol);
    json& v = rep["verdicts"];
    v["dim"] = ca.algebra.dim();
    v["rank"] = ca.rank;
    v["peirce_d"] = ca.d;
    v["t_star"] = def.t_star;
    v["einstein_constant"] = def.einstein_constant;
    v["einstein_residual"] = def.ricci_at_t_star.einstein_residual;
    v["scalar_curvature"] = def.ricci_at_t_star.sc;
    v["block_residual_t0"] = def.block_residual_t0;
    v["block_residual_t_star"] = def.block_residual_tstar;
    if (scan.size() == 3) {
      json rows = json::array();
      const int steps = static_cast<int>(scan[2]);
      for (int s = 0; s <= steps; ++s) {
        const double t = scan[0] + (scan[1] - scan[0]) * s / std::max(steps, 1);
        const auto rd = jordanis::ricci(ca.algebra, def.metric_at(t));
        rows.push_back({t, rd.einstein_residual, rd.sc});
      }
      rep["scan"] = rows;
      if (!opt.json_output) {
        std::cout << "# t  einstein_residual  sc\n";
        for (const auto& row : rep["scan"])
          std::cout << fmt17(row[0].get<double>()) << "  " << fmt17(row[1].get<double>()) << "  "
                    << fmt17(row[2].get<double>()) << "\n";
      }
    }
  } catch (const jordanis::Error& e) {
    rep["error"] = e.what();
    emit(rep, opt);
    return 1;
  }
  emit(rep, opt);
  return 0;
}

int cmd_nilcert(const std::string& path, const Options& opt) {
  jordanis::AlgebraFile file;
  try {
    file = jordanis::load_algebra_file(path);
  } catch (const jordanis::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  json rep = report_header("nilcert " + path, jordanis::file_digest(path), opt);
  try {
    const auto cert =
        jordanis::nilpotent_no_einstein_certificate(file.algebra, metric_of(file), opt.tol);
    json& v = rep["verdicts"];
    v["tr_ric"] = cert.tr_ric;
    v["nilpotency_degree"] = cert.nilpotency_degree;
    v["annihilator_dim"] = static_cast<int>(cert.annihilator.size());
    v["conclusive"] = cert.conclusive;
    if (cert.conclusive) {
      v["ric_on_annihilator"] = cert.ric_on_annihilator;
      v["no_einstein_for_any_metric"] = cert.no_einstein;
    }
  } catch (const jordanis::Error& e) {
    rep["error"] = e.what();
    emit(rep, opt);
    return 1;
  }
  emit(rep, opt);
  return 0;
}

int cmd_classical(const std::string& family_name, int n_param, const std::string& emit_path,
                  const Options& opt) {
  const auto family = jordanis::family_from_name(family_name);
  if (!family) {
    std::cerr << "unknown family '" << family_name << "' (sym-r, herm-c, herm-h, spin)\n";
    return 2;
  }
  json rep = report_header("classical " + family_name + " " + std::to_string(n_param), "none", opt);
  try {
    const auto ca = jordanis::build_classical({*family, n_param, std::nullopt});
    std::vector<std::string> names;
    for (int i = 0; i < ca.algebra.dim(); ++i) names.push_back("e" + std::to_string(i + 1));
    const auto g0 = jordanis::canonical_metric(ca.algebra, ca.rank);
    jordanis::save_algebra_file(emit_path, ca.algebra, g0.gram(), names);
    json& v = rep["verdicts"];
    v["dim"] = ca.algebra.dim();
    v["rank"] = ca.rank;
    v["peirce_d"] = ca.d;
    v["written"] = emit_path;
  } catch (const jordanis::Error& e) {
    rep["error"] = e.what();
    emit(rep, opt);
    return 1;
  }
  emit(rep, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants of metric Jordan algebras"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("JORDANIS_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
  app.add_flag("--json", opt.json_output, "machine-readable report");
  app.add_option("--tol", opt.tol, "relative tolerance (default 1e-9)");
  app.add_option("--seed", opt.seed, "RNG seed (default from JORDANIS_SEED)");

  std::string path, sectional, family, emit_path;
  int n_param = 0;
  bool want_ricci = false, want_scalar = false, want_moment = false;
  std::vector<double> scan;

  auto* validate = app.add_subcommand("validate", "structural report for an algebra file");
  validate->add_option("file", path)->required();

  auto* curv = app.add_subcommand("curvature", "curvature invariants of an algebra file");
  curv->add_option("file", path)->required();
  curv->add_flag("--ricci", want_ricci, "include the Ricci tensors");
  curv->add_flag("--scalar", want_scalar, "include the scalar curvature");
  curv->add_flag("--moment-map", want_moment, "include the moment map");
  curv->add_option("--sectional", sectional, "basis pair i,j (1-based)");

  auto* einstein = app.add_subcommand("einstein", "Einstein deformation of a classical family");
  einstein->add_option("family", family)->required();
  einstein->add_option("n", n_param)->required();
  einstein->add_option("--scan", scan, "t0 t1 steps")->expected(3);

  auto* nilcert = app.add_subcommand("nilcert", "no-Einstein certificate for nilpotent algebras");
  nilcert->add_option("file", path)->required();

  auto* classical = app.add_subcommand("classical", "emit a classical algebra as a file");
  classical->add_option("family", family)->required();
  classical->add_option("n", n_param)->required();
  classical->add_option("--emit", emit_path, "output path")->required();

  for (auto* sub : {validate, curv, einstein, nilcert, classical}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, opt);
    if (curv->parsed()) return cmd_curvature(path, want_ricci, want_scalar, want_moment, sectional, opt);
    if (einstein->parsed()) return cmd_einstein(family, n_param, scan, opt);
    if (nilcert->parsed()) return cmd_nilcert(path, opt);
    if (classical->parsed()) return cmd_classical(family, n_param, emit_path, opt);
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
