#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "abundle/connection.hpp"
#include "abundle/error.hpp"
#include "abundle/fixture.hpp"
#include "abundle/random.hpp"
#include "abundle/report.hpp"

using namespace abundle;

namespace {

constexpr std::size_t kGrid = 8;
constexpr int kRandomForms = 20;

struct Outcome {
  bool ok = true;
  std::string notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes += (notes.empty() ? "" : "; ") + what;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

const std::vector<std::string> kBundleFixtures = {
    "trivial-line",         "phase-two-chart",  "mixed-rank-grassmann",
    "nonunitary-two-chart", "random-form-line", "degenerate-form"};

// Entry residual, or infinity when missing.
double residual(const VerificationReport& r, const std::string& id) {
  const ReportEntry* e = r.find(id);
  return e == nullptr ? std::numeric_limits<double>::infinity() : e->residual;
}

bool entry_passed(const VerificationReport& r, const std::string& id) {
  const ReportEntry* e = r.find(id);
  return e != nullptr && e->passed;
}

MatrixOverA random_positive(Rng& rng, std::size_t m) {
  MatrixOverA b(m, m, kGrid);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) b(r, c) = rng.element(kGrid);
  }
  return b * adjoint(b) + Complex(0.1) * MatrixOverA::identity(m, kGrid);
}

Outcome hermitian_axioms() {
  Outcome out;
  double worst = 0.0;
  for (const char* name : {"trivial-line", "phase-two-chart", "mixed-rank-grassmann"}) {
    const VerificationReport r = run_suite(build_fixture(name), "axioms");
    out.require(r.passed(), std::string(name) + " axioms fail");
    for (const auto& e : r.entries) worst = std::max(worst, e.residual);
  }
  Rng rng(2024);
  for (int i = 0; i < kRandomForms; ++i) {
    const PModule m = PModule::free(3, kGrid);
    const HermitianForm beta(m, random_positive(rng, 3));
    FormSamples s;
    for (int j = 0; j < 16; ++j) s.elements.push_back(project(m, rng.vector(3, kGrid)));
    for (int j = 0; j < 4; ++j) s.scalars.push_back(rng.element(kGrid));
    const AxiomReport a = verify_axioms(beta, s, kAxiomTol);
    out.require(a.passed(), "random form " + std::to_string(i) + " fails");
    worst = std::max({worst, a.linearity, a.symmetry, a.positivity, a.nondegeneracy});
  }
  const VerificationReport d = run_suite(build_fixture("degenerate-form"), "axioms");
  out.require(!entry_passed(d, "axioms.nondegeneracy"), "degenerate control passes (iv)");
  out.require(entry_passed(d, "axioms.linearity") && entry_passed(d, "axioms.symmetry") &&
                  entry_passed(d, "axioms.positivity"),
              "degenerate control fails (i)-(iii)");
  out.notes += (out.notes.empty() ? "" : "; ") + std::string("worst residual ") + sci(worst) +
               ", degenerate control rejected on nondegeneracy";
  return out;
}

Outcome isometry_reconstruction() {
  Outcome out;
  double iso = 0.0;
  double gs = 0.0;
  for (int seed = 1; seed <= kRandomForms; ++seed) {
    const VerificationReport r =
        run_suite(build_fixture("random-form-line", static_cast<std::uint64_t>(seed)), "isometry");
    out.require(r.passed(), "seed " + std::to_string(seed) + " fails");
    iso = std::max(iso, residual(r, "isometry.reconstruction"));
    gs = std::max(gs, residual(r, "isometry.gram-schmidt"));
  }
  out.require(iso <= 1e-8, "isometry residual too large");
  out.require(gs <= 1e-10, "orthonormality residual too large");
  out.notes += "isometry " + sci(iso) + " over 100 pairs x 20 forms, Gram-Schmidt " + sci(gs);
  return out;
}

Outcome partition_suite() {
  Outcome out;
  const VerificationReport r = run_suite(build_fixture("phase-two-chart"), "partition");
  out.require(r.passed(), "partition suite fails");
  out.notes += "sum " + sci(residual(r, "partition.sum")) + ", positivity " +
               sci(residual(r, "partition.positivity")) + ", support violations " +
               std::to_string(static_cast<long>(residual(r, "partition.support")));
  return out;
}

Outcome reduction() {
  Outcome out;
  const VerificationReport r = run_suite(build_fixture("phase-two-chart"), "reduction");
  out.require(residual(r, "reduction.unitarity") <= 1e-10, "phase cocycle not unitary");
  out.require(residual(r, "reduction.chart-independence") <= 1e-10, "chart dependence");
  bool rejected = false;
  try {
    const Fixture f = build_fixture("nonunitary-two-chart");
    hermitian_structure_by_reduction(f.atlas(), f.form());
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotReduced;
  }
  out.require(rejected, "diag(2,1) cocycle not rejected with NotReduced");
  out.notes += "unitarity " + sci(residual(r, "reduction.unitarity")) + ", chart independence " +
               sci(residual(r, "reduction.chart-independence")) + ", diag(2,1) -> NotReduced";
  return out;
}

Outcome gluing() {
  Outcome out;
  for (const char* name : {"phase-two-chart", "nonunitary-two-chart"}) {
    const VerificationReport r = run_suite(build_fixture(name), "gluing");
    out.require(r.passed(), std::string(name) + " gluing fails");
    out.notes += (out.notes.empty() ? "" : ", ") + std::string(name) + " axioms " +
                 sci(residual(r, "gluing.axioms"));
  }
  return out;
}

Outcome leibniz() {
  Outcome out;
  double worst = 0.0;
  double lo = 1e300;
  double hi = 0.0;
  for (const auto& name : kBundleFixtures) {
    const VerificationReport r = run_suite(build_fixture(name), "leibniz");
    out.require(r.passed(), name + " leibniz fails");
    worst = std::max(worst, residual(r, "leibniz.rule"));
    const double ratio = residual(r, "leibniz.convergence");
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  out.require(worst <= 1e-6, "residual too large");
  out.require(lo >= 3.0 && hi <= 5.0, "convergence ratio outside [3,5]");
  out.notes += "worst residual " + sci(worst) + " at step 1e-4, halving ratio in [" + sci(lo) +
               ", " + sci(hi) + "]";
  return out;
}

Outcome compatibility() {
  Outcome out;
  for (const char* name : {"phase-two-chart", "mixed-rank-grassmann"}) {
    const VerificationReport r = run_suite(build_fixture(name), "compatibility");
    const double diag = std::max(residual(r, "compatibility.diagonal"),
                                 residual(r, "compatibility.glued-diagonal"));
    out.require(diag <= 1e-6, std::string(name) + " diagonal residual too large");
    out.notes += (out.notes.empty() ? "" : ", ") + std::string(name) + " diagonal " + sci(diag) +
                 " (generic " + sci(residual(r, "compatibility.generic")) + ", informative)";
  }
  return out;
}

Outcome calculus() {
  Outcome out;
  const VerificationReport r = run_suite(build_fixture("trivial-line"), "calculus");
  out.require(r.passed(), "calculus suite fails");
  const double oracle = std::max({residual(r, "calculus.square"), residual(r, "calculus.conjugation"),
                                  residual(r, "calculus.modulus")});
  out.require(oracle <= 1e-6, "symbolic oracle mismatch");
  out.require(residual(r, "calculus.split-linearity") <= 1e-7, "split linearity");
  out.notes += "symbolic " + sci(oracle) + ", scalar probes " +
               sci(residual(r, "calculus.split-linearity"));
  return out;
}

Outcome chart_consistency() {
  Outcome out;
  double trip = 0.0;
  double conn = 0.0;
  for (const char* name : {"phase-two-chart", "mixed-rank-grassmann", "nonunitary-two-chart"}) {
    const VerificationReport r = run_suite(build_fixture(name), "transport");
    out.require(r.passed(), std::string(name) + " transport fails");
    trip = std::max(trip, residual(r, "transport.round-trip"));
    conn = std::max(conn, residual(r, "transport.connection"));
  }
  out.require(trip <= 1e-12 && conn <= 1e-8, "residual too large");
  out.notes += "round trip " + sci(trip) + ", connection " + sci(conn);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "hermitian axioms", hermitian_axioms},
      {2, "isometry to the standard form and Gram-Schmidt", isometry_reconstruction},
      {3, "partition of unity", partition_suite},
      {4, "reduction of the structure group", reduction},
      {5, "hermitian structure by gluing", gluing},
      {6, "Leibniz rule", leibniz},
      {7, "metric compatibility", compatibility},
      {8, "L/S calculus", calculus},
      {9, "chart consistency", chart_consistency},
  };

  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes = std::string("exception: ") + e.what();
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s criterion %d (%s): %s\n", o.ok ? "PASS" : "FAIL", c.number, c.title,
                o.notes.c_str());
    std::fflush(stdout);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool fast = seconds < 60.0;
  std::printf("%s runtime: %.1fs (target < 60s)\n", fast ? "PASS" : "FAIL", seconds);
  return failures == 0 && fast ? 0 : 1;
}
