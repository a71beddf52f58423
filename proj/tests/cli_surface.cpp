// Exercises the command-line surface of the built binary: exit codes, report
// fields, file emission, and determinism. Usage: cli_surface <path-to-binary>.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    std::cerr << "[FAIL] " << what << "\n";
    ++g_failures;
  }
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (size_t got = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_surface <jordanis binary>\n";
    return 1;
  }
  const std::string bin = argv[1];
  const std::string dir = "/tmp/jordanis_cli";
  if (std::system(("mkdir -p " + dir).c_str()) != 0) {
    std::cerr << "cannot create scratch directory\n";
    return 1;
  }

  const std::string psi1 = dir + "/psi1.json";
  write_file(psi1, R"({"dim":2,"products":[{"i":1,"j":1,"coeffs":[1,0]},{"i":2,"j":2,"coeffs":[0,1]}]})");
  const std::string psi2 = dir + "/psi2.json";
  write_file(psi2, R"({"dim":2,"products":[{"i":1,"j":1,"coeffs":[1,0]},{"i":2,"j":2,"coeffs":[-1,0]},{"i":1,"j":2,"coeffs":[0,1]}],"commutative_close":true})");
  const std::string plane = dir + "/plane.json";
  write_file(plane, R"({"dim":2,"products":[{"i":1,"j":1,"coeffs":[1,0]},{"i":1,"j":2,"coeffs":[0,1]}],"commutative_close":true})");
  const std::string nil = dir + "/nil.json";
  write_file(nil, R"({"dim":2,"products":[{"i":1,"j":1,"coeffs":[0,1]}]})");
  const std::string triv = dir + "/trivial.json";
  write_file(triv, R"({"dim":3,"products":[]})");
  const std::string noncomm = dir + "/noncomm.json";
  write_file(noncomm, R"({"dim":2,"products":[{"i":1,"j":1,"coeffs":[1,0]},{"i":1,"j":2,"coeffs":[0,1]}]})");
  const std::string sym2 = dir + "/sym2.json";
  write_file(sym2, R"({"dim":3,"products":[{"i":1,"j":1,"coeffs":[1,0,0]},{"i":2,"j":2,"coeffs":[0,1,0]},{"i":3,"j":3,"coeffs":[1,1,0]},{"i":1,"j":3,"coeffs":[0,0,0.5]},{"i":2,"j":3,"coeffs":[0,0,0.5]}],"commutative_close":true})");

  // validate: verdicts and exit codes
  {
    const auto r = run(bin + " validate " + psi2);
    expect(r.exit_code == 0, "validate psi2 exits 0: got " + std::to_string(r.exit_code));
    expect(contains(r.output, "is_jordan: true"), "psi2 is reported Jordan");
    expect(contains(r.output, "semisimple: true"), "psi2 is reported semisimple");
    expect(contains(r.output, "formally_real: false"), "psi2 is not formally real");
  }
  {
    const auto r = run(bin + " validate " + triv);
    expect(r.exit_code == 0, "validate trivial exits 0");
    expect(contains(r.output, "nilpotent: true"), "trivial algebra is nilpotent");
    expect(contains(r.output, "nilpotency_degree: 1"), "trivial degree is 1");
  }
  {
    const auto r = run(bin + " validate " + sym2);
    expect(r.exit_code == 0, "validate sym2 exits 0");
    expect(contains(r.output, "formally_real: true"), "sym2 is formally real");
    expect(contains(r.output, "rank: 2"), "sym2 rank 2");
    expect(contains(r.output, "peirce_d: 1"), "sym2 d = 1");
  }
  {
    const auto r = run(bin + " validate " + noncomm);
    expect(r.exit_code == 1, "validate non-commutative exits 1: got " + std::to_string(r.exit_code));
  }
  {
    const auto r = run(bin + " validate " + dir + "/absent.json");
    expect(r.exit_code == 2, "validate missing file exits 2");
    const std::string garbled = dir + "/garbled.json";
    write_file(garbled, "{ not json");
    expect(run(bin + " validate " + garbled).exit_code == 2, "validate bad JSON exits 2");
  }

  // curvature
  {
    const auto r = run(bin + " curvature " + psi1 + " --ricci");
    expect(r.exit_code == 0, "curvature psi1 exits 0");
    expect(contains(r.output, "einstein: true"), "psi1 metric is Einstein");
    expect(contains(r.output, "einstein_constant: 0"), "psi1 constant 0");
  }
  {
    const auto r = run(bin + " curvature " + psi2 + " --ricci --scalar");
    expect(r.exit_code == 0, "curvature psi2 exits 0");
    expect(contains(r.output, "einstein: false"), "psi2 coordinate metric is not Einstein");
    expect(contains(r.output, "scalar_curvature: -1"), "psi2 scalar curvature -1");
  }
  {
    const auto r = run(bin + " curvature " + plane);
    expect(r.exit_code == 0, "curvature plane exits 0");
    expect(contains(r.output, "R(e1,e1)e2 = 0 -1") || contains(r.output, "R(e1,e1)e2 = -0 -1"),
           "plane prints R(e1,e1)e2 = -e2; got:\n" + r.output);
    expect(contains(r.output, "cyclic_sum_vanishes: false"), "plane flags nonzero cyclic sum");
  }
  {
    const auto r = run(bin + " curvature " + sym2 + " --sectional 1,3");
    expect(r.exit_code == 0, "sectional exits 0");
    expect(contains(r.output, "sectional:"), "sectional value reported");
  }

  // einstein
  {
    const auto r = run(bin + " einstein sym-r 2");
    expect(r.exit_code == 0, "einstein sym-r 2 exits 0");
    expect(contains(r.output, "t_star: -0.091160778"), "t_star printed: got\n" + r.output);
  }
  {
    const auto r = run(bin + " einstein spin 4");
    expect(r.exit_code == 0, "einstein spin 4 exits 0");
    expect(contains(r.output, "t_star: -0.14384103"), "spin 4 t_star value");
  }
  {
    const auto r = run(bin + " einstein sym-r 1");
    expect(r.exit_code == 1, "einstein sym-r 1 exits 1 (rank one)");
    expect(contains(r.output, "RankOne"), "rank-one error reported");
  }
  {
    const auto r = run(bin + " einstein nosuch 3");
    expect(r.exit_code == 2, "unknown family exits 2");
  }
  {
    const auto r = run(bin + " einstein sym-r 2 --scan -0.2 0 4");
    expect(r.exit_code == 0, "scan exits 0");
    expect(contains(r.output, "# t  einstein_residual  sc"), "scan header present");
    int rows = 0;
    std::istringstream lines(r.output);
    for (std::string line; std::getline(lines, line);)
      if (!line.empty() && (line[0] == '-' || line[0] == '0')) ++rows;
    expect(rows == 5, "scan emits 5 rows: got " + std::to_string(rows));
  }

  // nilcert
  {
    const auto r = run(bin + " nilcert " + nil);
    expect(r.exit_code == 0, "nilcert exits 0");
    expect(contains(r.output, "tr_ric: -0.5"), "certificate trace value");
    expect(contains(r.output, "no_einstein_for_any_metric: true"), "certificate verdict");
  }
  expect(run(bin + " nilcert " + psi1).exit_code == 1, "nilcert on semisimple exits 1");
  expect(run(bin + " nilcert " + triv).exit_code == 1, "nilcert on trivial exits 1");

  // classical emission round trip
  {
    const std::string out = dir + "/emitted.json";
    const auto r = run(bin + " classical sym-r 2 --emit " + out);
    expect(r.exit_code == 0, "classical emit exits 0");
    const auto v = run(bin + " validate " + out);
    expect(v.exit_code == 0, "emitted file validates");
    expect(contains(v.output, "rank: 2"), "emitted file has rank 2");
    expect(contains(v.output, "peirce_d: 1"), "emitted file has d 1");
    const auto c = run(bin + " curvature " + out + " --scalar");
    expect(c.exit_code == 0, "curvature on emitted file exits 0");
  }

  // determinism: identical seeds give byte-identical reports
  {
    const auto a = run(bin + " --json --seed 7 curvature " + psi2 + " --ricci --moment-map");
    const auto b = run(bin + " --json --seed 7 curvature " + psi2 + " --ricci --moment-map");
    expect(a.exit_code == 0 && a.output == b.output, "JSON reports are deterministic");
    const auto c = run("JORDANIS_SEED=123 " + bin + " validate " + psi1);
    expect(contains(c.output, "seed: 123"), "environment seed is honored");
  }

  if (g_failures == 0) std::printf("cli surface: all checks passed\n");
  return g_failures == 0 ? 0 : 1;
}
