// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run end to end against the library surface, with every
// tolerance pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace jordanis;
using namespace testalg;

namespace {

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Check> g_checks;

void check(const std::string& name, bool pass, double value = 0.0, double bound = 0.0) {
  std::ostringstream os;
  if (bound != 0.0) os << value << " vs " << bound;
  g_checks.push_back({name, pass, os.str()});
}

bool flush_criterion(int id, const std::string& title) {
  bool all = true;
  for (const Check& c : g_checks) all = all && c.pass;
  std::printf("[%s] criterion %d: %s\n", all ? "PASS" : "FAIL", id, title.c_str());
  for (const Check& c : g_checks)
    if (!c.pass)
      std::printf("         failed: %s%s%s\n", c.name.c_str(), c.detail.empty() ? "" : " — ",
                  c.detail.c_str());
  g_checks.clear();
  return all;
}

double max_entry_dev(const Mat& m, const Mat& target) { return (m - target).max_abs(); }

// ---------------------------------------------------------------------------

struct GoldenTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start).count();
    start = now;
    return s;
  }
};

void criterion1() {
  // Worked-example goldens at 1e-9 absolute on tensor entries, each within
  // one second.
  GoldenTimer timer;
  double slowest = 0.0;
  {
    const RicciData rd = ricci(split_two(), InnerProduct::standard(2));
    check("split two-dimensional: Ric = 0", rd.Ric.max_abs() <= 1e-9, rd.Ric.max_abs(), 1e-9);
    slowest = std::max(slowest, timer.lap());
  }
  {
    const RicciData rd = ricci(complex_two(), InnerProduct::standard(2));
    const Mat target = 0.25 * Mat::identity(2);
    const double dev = max_entry_dev(rd.Ric, target);
    check("complex field: Ric = g/4", dev <= 1e-9, dev, 1e-9);
    slowest = std::max(slowest, timer.lap());
  }
  for (int n = 2; n <= 6; ++n) {
    const RicciData rd = ricci(semidirect(n), InnerProduct::standard(n));
    check("semidirect n=" + std::to_string(n) + ": Ric = 0", rd.Ric.max_abs() <= 1e-9,
          rd.Ric.max_abs(), 1e-9);
    slowest = std::max(slowest, timer.lap());
  }
  {
    const Algebra a = semidirect(2);
    const Connection conn = levi_civita(a, InnerProduct::standard(2));
    double dev = std::abs(conn.at(0, 0, 0) - 0.5) + std::abs(conn.at(0, 0, 1));
    dev = std::max(dev, std::abs(conn.at(0, 1, 1) - 1.0) + std::abs(conn.at(0, 1, 0)));
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) dev = std::max(dev, std::abs(conn.at(1, j, k)));
    check("plane: covariant table (e1/2, e2, 0, 0)", dev <= 1e-9, dev, 1e-9);

    const Curvature4 r4 = curvature(a, InnerProduct::standard(2));
    Vec r112(2), cyc(2);
    for (int l = 0; l < 2; ++l) {
      r112[l] = r4.at(0, 0, 1, l);
      cyc[l] = r4.at(0, 0, 1, l) + r4.at(0, 1, 0, l) + r4.at(1, 0, 0, l);
    }
    check("plane: R(e1,e1)e2 = -e2", max_abs(r112 - Vec{0, -1}) <= 1e-9);
    check("plane: cyclic sum = -e2 (nonzero)", max_abs(cyc - Vec{0, -1}) <= 1e-9);
    slowest = std::max(slowest, timer.lap());
  }
  check("each golden under 1 s", slowest <= 1.0, slowest, 1.0);
}

void criterion2() {
  // 50 seeded random Jordan algebras (dim <= 5) with random SPD metrics.
  const auto start = std::chrono::steady_clock::now();
  double worst_torsion = 0.0, worst_metric = 0.0, worst_ric = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::split(0xC2, static_cast<uint64_t>(trial));
    const Algebra a = random_jordan(2 + static_cast<int>(rng.next_below(4)), rng);
    const int n = a.dim();
    const InnerProduct g{random_spd(n, rng)};
    const Connection conn = levi_civita(a, g);
    const double scale = a.scale();
    // The self-adjointness residual carries a factor of the Gram magnitude.
    const double metric_unit = scale * std::max(1.0, g.gram().max_abs());
    for (int i = 0; i < n; ++i) {
      const Mat gn = g.gram() * conn.operator_of(basis_vector(n, i));
      worst_metric = std::max(worst_metric, (gn - gn.transposed()).max_abs() / metric_unit);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          worst_torsion = std::max(
              worst_torsion, std::abs(conn.at(i, j, k) + conn.at(j, i, k) - a.c(i, j, k)) / scale);
    }
    const RicciData rd = ricci(a, g);
    worst_ric = std::max(worst_ric, rd.ric_vs_closed / std::max(1.0, rd.Ric.max_abs()));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check("torsion-free residual <= 1e-10 * scale", worst_torsion <= 1e-10, worst_torsion, 1e-10);
  check("self-adjointness residual <= 1e-10 * scale * ||g||", worst_metric <= 1e-10,
        worst_metric, 1e-10);
  check("trace Ric vs closed formula <= 1e-8 relative", worst_ric <= 1e-8, worst_ric, 1e-8);
  check("runtime < 10 s", secs < 10.0, secs, 10.0);
}

void criterion3() {
  double worst_mm = 0.0, worst_op = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::split(0xC3, static_cast<uint64_t>(trial));
    const Algebra a = random_jordan(2 + static_cast<int>(rng.next_below(4)), rng);
    const InnerProduct g{random_spd(a.dim(), rng)};
    const MomentMap mm = moment_map(a, g);
    worst_mm = std::max(worst_mm, (mm.operator_form - mm.bilinear_form).max_abs() /
                                      std::max(1.0, mm.operator_form.max_abs()));
    const RicciData rd = ricci(a, g);
    worst_op = std::max(worst_op, rd.operator_identity_residual / std::max(1.0, rd.Ric.max_abs()));
  }
  check("moment map operator vs bilinear <= 1e-10", worst_mm <= 1e-10, worst_mm, 1e-10);
  check("Ric = M + B/2 - S_H/4 <= 1e-9", worst_op <= 1e-9, worst_op, 1e-9);
}

std::vector<ClassicalSpec> classical_specs() {
  std::vector<ClassicalSpec> specs;
  for (int n = 2; n <= 5; ++n) specs.push_back({Family::SymR, n, std::nullopt});
  for (int n = 2; n <= 4; ++n) specs.push_back({Family::HermC, n, std::nullopt});
  specs.push_back({Family::HermH, 2, std::nullopt});
  for (int n = 3; n <= 8; ++n) specs.push_back({Family::Spin, n, std::nullopt});
  return specs;
}

void criterion4() {
  const auto start = std::chrono::steady_clock::now();
  double worst_half = 0.0, worst_bianchi = 0.0, worst_ineq = -1.0, worst_sec = -1.0;
  for (const auto& spec : classical_specs()) {
    const auto ca = build_classical(spec);
    const InnerProduct g0 = canonical_metric(ca.algebra, ca.rank);
    const Connection conn = levi_civita(ca.algebra, g0);
    const int n = ca.algebra.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          worst_half = std::max(worst_half,
                                std::abs(conn.at(i, j, k) - 0.5 * ca.algebra.c(i, j, k)));
    const auto rep = sample_nonpositivity(ca.algebra, g0, 10000, 0xC4);
    worst_bianchi = std::max(worst_bianchi, rep.bianchi_residual);
    worst_ineq = std::max(worst_ineq, rep.max_inequality_violation);
    worst_sec = std::max(worst_sec, rep.max_sectional);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check("covariant derivative = product/2 <= 1e-10", worst_half <= 1e-10, worst_half, 1e-10);
  check("cyclic curvature sum on basis triples <= 1e-10", worst_bianchi <= 1e-10, worst_bianchi,
        1e-10);
  check("product inequality violations <= 1e-9 (1e4 pairs each)", worst_ineq <= 1e-9, worst_ineq,
        1e-9);
  check("sectional values <= 1e-9 (1e4 pairs each)", worst_sec <= 1e-9, worst_sec, 1e-9);
  check("runtime < 60 s", secs < 60.0, secs, 60.0);
}

void criterion5() {
  for (const auto& spec : classical_specs()) {
    const auto ca = build_classical(spec);
    const auto rep = ric0_check(ca.algebra, canonical_metric(ca.algebra, ca.rank), ca.frame, 1e-8);
    check(ca.algebra.label() + ": H = (n/r) E", rep.h_residual <= 1e-8, rep.h_residual, 1e-8);
    check(ca.algebra.label() + ": Ric0 closed form", rep.ric_formula_residual <= 1e-8,
          rep.ric_formula_residual, 1e-8);
    check(ca.algebra.label() + ": Ric0(E, .) = 0", rep.ric_e_residual <= 1e-8, rep.ric_e_residual,
          1e-8);
  }
}

void criterion6() {
  for (const auto& spec : classical_specs()) {
    const auto ca = build_classical(spec);
    const auto def = deform_to_einstein(ca.algebra, ca.frame);
    const std::string label = ca.algebra.label();
    if (spec.family == Family::SymR && spec.n_param == 2) {
      const double dev = std::abs(def.t_star - 0.5 * std::log(5.0 / 6.0));
      check(label + ": t* = log(5/6)/2", dev <= 1e-15, dev, 1e-15);
    }
    check(label + ": einstein residual <= 1e-8", def.ricci_at_t_star.einstein_residual <= 1e-8,
          def.ricci_at_t_star.einstein_residual, 1e-8);
    const SignReport sign = einstein_constant_sign(def);
    check(label + ": constant and sc negative", sign.negative);
    check(label + ": block values at t=0 <= 1e-8", def.block_residual_t0 <= 1e-8,
          def.block_residual_t0, 1e-8);
    check(label + ": block values at t* <= 1e-8", def.block_residual_tstar <= 1e-8,
          def.block_residual_tstar, 1e-8);
  }
}

void criterion7() {
  std::vector<Algebra> tables = {nil_square()};
  for (int i = 0; i < 5; ++i) {
    Rng rng = Rng::split(0xC7, static_cast<uint64_t>(i));
    std::vector<Algebra> parts;
    switch (i % 3) {
      case 0: parts = {nil_square(), trivial(1)}; break;
      case 1: parts = {nil_chain3()}; break;
      case 2: parts = {nil_square(), nil_square()}; break;
    }
    const Algebra sum = direct_sum(parts);
    tables.push_back(base_change(sum, random_well_conditioned(sum.dim(), rng)));
  }
  bool all = true;
  double worst_tr = -1.0;
  for (size_t ti = 0; ti < tables.size(); ++ti) {
    for (int mi = 0; mi < 10; ++mi) {
      Rng rng = Rng::split(0xC70 + ti, static_cast<uint64_t>(mi));
      const InnerProduct g{random_spd(tables[ti].dim(), rng)};
      const auto cert = nilpotent_no_einstein_certificate(tables[ti], g);
      all = all && cert.conclusive && cert.tr_ric < 0.0 && cert.ric_on_annihilator >= -1e-12 &&
            cert.no_einstein;
      worst_tr = std::max(worst_tr, cert.tr_ric);
    }
  }
  check("Tr Ric < 0 and Ric(z,z) >= 0 on all 60 metric draws", all, worst_tr, 0.0);
}

void criterion8() {
  for (int n = 3; n <= 5; ++n) {
    for (const Algebra& a : {diagonal_idempotents(n), half_action(n)}) {
      const auto rep = check_flat_lssa(a, InnerProduct::standard(n));
      check(a.label() + " n=" + std::to_string(n) + ": flat", rep.curvature_max <= 1e-10,
            rep.curvature_max, 1e-10);
      check(a.label() + ": derivative product is left skew-symmetric",
            rep.lssa_pass.value_or(false) && rep.lssa_residual <= 1e-10, rep.lssa_residual, 1e-10);
      check(a.label() + ": symmetrization recovers the product",
            rep.symmetrize_recovers.value_or(false) && rep.symmetrize_residual <= 1e-12,
            rep.symmetrize_residual, 1e-12);
    }
  }
  Algebra mat2(4);
  auto idx = [](int i, int j) { return 2 * i + j; };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (j == k) mat2.c(idx(i, j), idx(k, l), idx(i, l)) += 1.0;
  const JordanCheck jc = check_jordan(symmetrize_product(mat2));
  check("symmetrized 2x2 matrix algebra is Jordan", jc.is_jordan, jc.jordan_residual, 1e-9);
}

void criterion9() {
  for (const auto& spec : classical_specs()) {
    const auto ca = build_classical(spec);
    const std::string label = ca.algebra.label();
    const int n = ca.algebra.dim(), r = ca.rank, d = ca.d;
    const bool dims_ok = (r >= 3) ? (n == r + r * (r - 1) * d / 2) : (d == n - 2 || (r == 1 && d == 0));
    check(label + ": (r, d, n) bookkeeping", dims_ok);

    // Killing form vs alpha tr(xy) + (d/4) tr x tr y.
    const Mat bk = killing_form(ca.algebra);
    const Mat g0 = canonical_metric(ca.algebra, r).gram();
    const Vec tr = reduced_trace_functional(ca.algebra, r);
    const double alpha = 1.0 + (r - 2) * d / 4.0;
    double kdev = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        kdev = std::max(kdev, std::abs(bk(i, j) - alpha * g0(i, j) - (d / 4.0) * tr[i] * tr[j]));
    check(label + ": Killing trace formula <= 1e-8", kdev <= 1e-8, kdev, 1e-8);

    const PeirceData pd = peirce_decompose(ca.algebra, ca.frame);
    check(label + ": Peirce d matches", pd.d == d && pd.rank == r);
    check(label + ": Peirce multiplication rules <= 1e-8",
          pd.multiplication_rule_residual <= 1e-8, pd.multiplication_rule_residual, 1e-8);
    double trdev = 0.0;
    for (const auto& [key, block] : pd.blocks) {
      if (key.first == key.second) continue;
      for (const Element& b : block) trdev = std::max(trdev, std::abs(dot(tr, b)));
    }
    check(label + ": reduced trace vanishes off-diagonally <= 1e-9", trdev <= 1e-9, trdev, 1e-9);
  }
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::string title;
    std::function<void()> run;
  };
  const std::vector<Entry> entries = {
      {1, "worked-example goldens (1e-9 absolute)", criterion1},
      {2, "connection axioms and Ricci equivalence on 50 random metric algebras", criterion2},
      {3, "moment-map consistency and the Ricci operator identity", criterion3},
      {4, "half-product rule, cyclic identity, non-positivity on classical families", criterion4},
      {5, "canonical-metric mean curvature and Ricci closed form", criterion5},
      {6, "Einstein deformation pipeline with closed-form parameter", criterion6},
      {7, "nilpotent no-Einstein certificates under random metrics", criterion7},
      {8, "flat structures and left skew-symmetric correspondence", criterion8},
      {9, "classification data, Killing formula, Peirce structure", criterion9},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    try {
      e.run();
    } catch (const std::exception& ex) {
      g_checks.push_back({std::string("exception: ") + ex.what(), false, ""});
    }
    if (!flush_criterion(e.id, e.title)) ++failures;
  }
  std::printf("%d of %zu criteria failed\n", failures, entries.size());
  return failures;
}
