#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "abundle/connection.hpp"
#include "abundle/error.hpp"
#include "abundle/random.hpp"
#include "abundle/report.hpp"

namespace abundle {

namespace {

constexpr double kIsometryTol = 1e-8;
constexpr double kOrthonormalTol = 1e-10;
constexpr double kSplitProbeTol = 1e-7;
constexpr double kAdditivityTol = 1e-10;
constexpr double kRoundTripTol = 1e-12;
constexpr double kChartConsistencyTol = 1e-8;
constexpr double kGluingTol = 1e-9;
constexpr std::size_t kIsometryPairs = 100;
constexpr std::pair<double, double> kConvergenceBounds{3.0, 5.0};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Context {
  const Fixture& fixture;
  const RunOptions& options;
  std::vector<ReportEntry>& out;
  std::string suite;

  double fd_tol(double fallback) const { return options.tol.value_or(fallback); }

  ReportEntry& check(std::string id, std::string anchor, double residual, double tol,
                     std::string detail = {}) {
    ReportEntry e;
    e.suite = suite;
    e.id = suite + "." + std::move(id);
    e.anchor = std::move(anchor);
    e.residual = residual;
    e.tolerance = tol;
    e.passed = std::isfinite(residual) && residual <= tol;
    e.detail = std::move(detail);
    out.push_back(std::move(e));
    return out.back();
  }

  ReportEntry& within(std::string id, std::string anchor, double value,
                      std::pair<double, double> bounds, std::string detail = {}) {
    ReportEntry e;
    e.suite = suite;
    e.id = suite + "." + std::move(id);
    e.anchor = std::move(anchor);
    e.residual = value;
    e.bounds = bounds;
    e.passed = std::isfinite(value) && value >= bounds.first && value <= bounds.second;
    e.detail = std::move(detail);
    out.push_back(std::move(e));
    return out.back();
  }

  ReportEntry& info(std::string id, std::string anchor, double value, std::string detail = {}) {
    ReportEntry e;
    e.suite = suite;
    e.id = suite + "." + std::move(id);
    e.anchor = std::move(anchor);
    e.residual = value;
    e.passed = true;
    e.informative = true;
    e.detail = std::move(detail);
    out.push_back(std::move(e));
    return out.back();
  }

  void error(const std::string& what) {
    ReportEntry e;
    e.suite = suite;
    e.id = suite + ".error";
    e.anchor = "suite completed without raising";
    e.residual = std::numeric_limits<double>::infinity();
    e.passed = false;
    e.detail = what;
    out.push_back(std::move(e));
  }
};

std::size_t grid(const Context& ctx) { return ctx.fixture.atlas()->grid_size(); }

// p (c0 + c1 x + c2 x x* + c3 x^2) in the coordinates of chart 0.
AMap random_section_map(Rng& rng, const PModule& fiber, std::size_t dim) {
  const std::size_t m = fiber.ambient_rank();
  const std::size_t n = fiber.grid_size();
  std::vector<AVector> c;
  for (int i = 0; i < 4; ++i) c.push_back(fiber.idempotent() * rng.vector(m, n, 0.5));
  return AMap(dim, m, [c](const AVector& x) {
    const AlgebraElement& a = x[0];
    return c[0] + a * c[1] + (a * star(a)) * c[2] + (a * a) * c[3];
  });
}

// b0 + b1 x + b2 x^2 + b3 x*
AMap random_scalar_map(Rng& rng, std::size_t n, std::size_t dim) {
  std::vector<AlgebraElement> b;
  for (int i = 0; i < 4; ++i) b.push_back(rng.element(n, 0.5));
  return AMap::scalar(dim, [b](const AVector& x) {
    const AlgebraElement& a = x[0];
    return b[0] + b[1] * a + b[2] * a * a + b[3] * star(a);
  });
}

std::vector<ConnectionSample> connection_samples(const Context& ctx, Rng& rng) {
  const BundleAtlas& atlas = *ctx.fixture.atlas();
  const auto& plan = atlas.base().samples();
  const std::size_t k = atlas.base().dim();
  const std::size_t n = atlas.grid_size();
  std::vector<ConnectionSample> out;
  const std::size_t points = std::max<std::size_t>(ctx.options.samples, 1);
  for (std::size_t s = 0; s < points; ++s) {
    const SamplePoint& sp = plan[(s * plan.size()) / points];
    const auto charts = atlas.base().charts_at(sp.x);
    const std::size_t chart = charts[s % charts.size()];
    for (std::size_t d = 0; d < std::max<std::size_t>(ctx.options.directions, 1); ++d) {
      AVector h = rng.vector(k, n, 0.5);
      AVector kk = rng.vector(k, n, 0.5);
      out.push_back({sp.x, {std::move(h), std::move(kk)}, chart});
    }
  }
  return out;
}

std::vector<ModuleElement> random_elements(Rng& rng, const PModule& fiber, std::size_t count) {
  std::vector<ModuleElement> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(project(fiber, rng.vector(fiber.ambient_rank(), fiber.grid_size())));
  }
  return out;
}

// A connection whose frames are orthonormal for the standard form; any frame
// yields a connection, and the standard form is always nondegenerate.
ConnectionOperator any_connection(const Fixture& f, double step) {
  return frame_connection(f.atlas(), standard_form(f.atlas()->fiber()), f.partition(), step);
}

void run_axioms(Context& ctx) {
  Rng rng(ctx.options.seed);
  FormSamples samples;
  samples.elements = random_elements(rng, ctx.fixture.form().module(),
                                     std::max<std::size_t>(ctx.options.samples, 3));
  for (int i = 0; i < 4; ++i) samples.scalars.push_back(rng.element(grid(ctx)));
  const AxiomReport r = verify_axioms(ctx.fixture.form(), samples, kAxiomTol);
  ctx.check("linearity", "b(a x + y, z) = a b(x, z) + b(y, z)", r.linearity, kAxiomTol);
  ctx.check("symmetry", "b(y, x) = b(x, y)*", r.symmetry, kAxiomTol);
  ctx.check("positivity", "sp b(x, x) in [0, +inf)", r.positivity, kAxiomTol);
  auto& e = ctx.check("nondegeneracy", "x -> b(., x) is an isomorphism M -> L_A(M, A)_*",
                      r.nondegeneracy, kAxiomTol,
                      "min compressed eigenvalue " + sci(r.min_eigenvalue));
  e.passed = e.passed && r.nondegeneracy_ok;
}

void run_isometry(Context& ctx) {
  const HermitianForm& beta = ctx.fixture.form();
  const PModule& fiber = beta.module();
  const std::size_t n = grid(ctx);
  const std::size_t m = fiber.ambient_rank();
  Rng rng(ctx.options.seed);

  const ModuleMap f = isometry_to_standard(beta);
  const MatrixOverA identity = MatrixOverA::identity(m, n);
  double worst = 0.0;
  std::vector<double> residuals;
  for (std::size_t s = 0; s < kIsometryPairs; ++s) {
    const ModuleElement x = project(fiber, rng.vector(m, n));
    const ModuleElement y = project(fiber, rng.vector(m, n));
    const double res = seminorm(evaluate(beta, f(x), f(y)) - pair(identity, x.coords(), y.coords()));
    residuals.push_back(res);
    worst = std::max(worst, res);
  }
  ctx.check("reconstruction", "b(f x, f y) = sum_i x_i y_i*", worst, kIsometryTol).samples =
      residuals;

  if (!fiber.is_free()) {
    ctx.info("gram-schmidt", "b(u_i, u_j) = delta_ij", 0.0,
             "not applicable: fiber is projective but not free");
    return;
  }
  std::vector<ModuleElement> frame;
  for (std::size_t j = 0; j < m; ++j) {
    AVector v = AVector::basis(m, j, n);
    for (std::size_t i = 0; i < j; ++i) v += rng.element(n) * AVector::basis(m, i, n);
    frame.emplace_back(fiber, v);
  }
  const auto basis = gram_schmidt(frame, beta);
  double ortho = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const AlgebraElement delta = AlgebraElement::constant(n, i == j ? 1.0 : 0.0);
      ortho = std::max(ortho, seminorm(evaluate(beta, basis[i], basis[j]) - delta));
    }
  }
  ctx.check("gram-schmidt", "b(u_i, u_j) = delta_ij", ortho, kOrthonormalTol);
}

void run_partition(Context& ctx) {
  const BaseRegion& base = ctx.fixture.atlas()->base();
  const PartitionReport r = verify_partition(base, ctx.fixture.partition(), kPartitionTol);
  const std::string points = std::to_string(r.points) + " sample points";
  ctx.check("sum", "sum_i psi_i(x) = 1", r.sum_residual, kPartitionTol, points);
  ctx.check("positivity", "psi_i(x) positive in A",
            std::max({0.0, -r.min_spectral_value, r.max_imaginary}), kPartitionTol,
            "min spectral value " + sci(r.min_spectral_value));
  ctx.check("support", "supp psi_i in U_i", static_cast<double>(r.support_violations), 0.0,
            "violations counted on the finite sample plan");
}

void run_cocycle(Context& ctx) {
  const CocycleReport r = verify_cocycle(*ctx.fixture.atlas(), kCocycleTol);
  ctx.check("identity", "g_ii = 1", r.identity_residual, kCocycleTol);
  ctx.check("triple", "g_ij g_jk = g_ik", r.triple_residual, kCocycleTol);
}

void run_reduction(Context& ctx) {
  const AtlasPtr& atlas = ctx.fixture.atlas();
  const double unitarity = reduction_residual(*atlas, ctx.fixture.form());
  ctx.check("unitarity", "tau_jx o tau_ix^-1 in GL(M, alpha)", unitarity, kCocycleTol);
  try {
    const HermitianStructure s =
        hermitian_structure_by_reduction(atlas, ctx.fixture.form(), kCocycleTol);
    ctx.check("chart-independence", "alpha o (tau_ix x tau_ix) independent of i",
              chart_independence_residual(s), kCocycleTol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotReduced) throw;
    ctx.check("chart-independence", "alpha o (tau_ix x tau_ix) independent of i",
              std::numeric_limits<double>::infinity(), kCocycleTol,
              std::string("NotReduced: ") + e.what());
  }
}

void run_gluing(Context& ctx) {
  const HermitianStructure s = hermitian_structure_by_gluing(
      ctx.fixture.atlas(), ctx.fixture.form(), ctx.fixture.partition());
  const AxiomReport r = verify_structure_axioms(s, 4, ctx.options.seed, kGluingTol);
  const double worst = std::max({r.linearity, r.symmetry, r.positivity, r.nondegeneracy});
  auto& e = ctx.check("axioms", "g_x = sum_i psi_i(x) alpha(tau_ix ., tau_ix .) is hermitian",
                      worst, kGluingTol,
                      "min fiber eigenvalue " + sci(r.min_eigenvalue));
  e.passed = e.passed && r.passed();
  ctx.check("chart-independence", "g_x independent of the chart", chart_independence_residual(s),
            kGluingTol);
}

void run_leibniz(Context& ctx) {
  const Fixture& f = ctx.fixture;
  const AtlasPtr& atlas = f.atlas();
  const std::size_t k = atlas->base().dim();
  const double tol = ctx.fd_tol(kConnectionTol);
  const double step = ctx.options.step;
  Rng rng(ctx.options.seed);
  const Section xi = Section::from_reference(atlas, 0, random_section_map(rng, atlas->fiber(), k));
  const Section eta = Section::from_reference(atlas, 0, random_section_map(rng, atlas->fiber(), k));
  const AMap fn = random_scalar_map(rng, grid(ctx), k);
  const auto samples = connection_samples(ctx, rng);

  const ConnectionOperator d = any_connection(f, step);
  const IdentityReport rule = verify_leibniz(d, xi, fn, samples, tol, step);
  ctx.check("rule", "D(f xi) = Tf . xi + f . D xi", rule.residual, tol).samples = rule.residuals;

  const ConnectionOperator d_half = any_connection(f, step / 2);
  const IdentityReport half = verify_leibniz(d_half, xi, fn, samples, tol, step / 2);
  ctx.within("convergence", "Leibniz residual is O(step^2)", rule.residual / half.residual,
             kConvergenceBounds,
             "residual " + sci(rule.residual) + " at step, " +
                 sci(half.residual) + " at step/2");

  const AlgebraElement a = rng.element(grid(ctx));
  const IdentityReport constant =
      verify_leibniz(d, xi, AMap::constant(k, AVector{a}), samples, tol, step);
  ctx.check("constant-scalar", "D(a xi) = a D xi", constant.residual, tol);

  double additivity = 0.0;
  double twisted = 0.0;
  const Section sum = xi + eta;
  for (const auto& s : samples) {
    const AVector lhs = d(sum, s.x, s.v, s.chart);
    additivity = std::max(
        additivity, seminorm(lhs - d(xi, s.x, s.v, s.chart) - d(eta, s.x, s.v, s.chart)));
    twisted = std::max(twisted, seminorm(d(xi, s.x, act(a, s.v), s.chart) -
                                         a * d(xi, s.x, s.v, s.chart)));
  }
  ctx.check("additivity", "D(xi + eta) = D xi + D eta", additivity, kAdditivityTol);
  ctx.check("tangent-linearity", "D xi(x)(a.v) = a D xi(x)(v)", twisted, tol);

  const IdentityReport corrupted = verify_leibniz(d.scaled(2.0), xi, fn, samples, tol, step);
  auto& e = ctx.check("corrupted-rejected", "2 D violates the Leibniz rule",
                      corrupted.passed ? corrupted.residual : 0.0, tol,
                      "corrupted residual " + sci(corrupted.residual));
  e.passed = !corrupted.passed;
}

void run_compatibility(Context& ctx) {
  const Fixture& f = ctx.fixture;
  const AtlasPtr& atlas = f.atlas();
  const std::size_t k = atlas->base().dim();
  const double tol = ctx.fd_tol(kConnectionTol);
  const double step = ctx.options.step;
  Rng rng(ctx.options.seed + 1);
  const Section xi = Section::from_reference(atlas, 0, random_section_map(rng, atlas->fiber(), k));
  const Section eta = Section::from_reference(atlas, 0, random_section_map(rng, atlas->fiber(), k));
  const auto samples = connection_samples(ctx, rng);

  const ConnectionOperator d = frame_connection(atlas, f.form(), f.partition(), step);
  const std::string anchor = "g(D xi(v), eta) + g(xi, D eta(v)) = T(g(xi, eta))(v)";

  auto record = [&](const std::string& prefix, const HermitianStructure& g) {
    const CompatibilityReport r =
        verify_compatibility(d, g, xi, eta, samples, tol, ctx.options.diagonal_only, step);
    ctx.check(prefix + "diagonal", anchor + ", v = (h, h)", r.diagonal.residual, tol).samples =
        r.diagonal.residuals;
    if (ctx.options.diagonal_only) {
      ctx.info(prefix + "generic", anchor + ", v = (h, k)", r.generic.residual,
               "reported only; the identity is exact on diagonal tangent vectors")
          .samples = r.generic.residuals;
    } else {
      ctx.check(prefix + "generic", anchor + ", v = (h, k)", r.generic.residual, tol).samples =
          r.generic.residuals;
    }
  };

  try {
    record("", hermitian_structure_by_reduction(atlas, f.form(), kCocycleTol));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotReduced) throw;
    ctx.check("diagonal", anchor + ", v = (h, h)", std::numeric_limits<double>::infinity(), tol,
              std::string("no reduced structure to test against: ") + e.what());
    return;
  }
  // With an alpha-unitary cocycle the glued structure coincides with the
  // reduced one, so the same connection must be compatible with it too.
  record("glued-", hermitian_structure_by_gluing(atlas, f.form(), f.partition()));
}

void run_calculus(Context& ctx) {
  const std::size_t n = grid(ctx);
  const double tol = ctx.fd_tol(kDefaultCalculusTol);
  const double step = ctx.options.step;
  Rng rng(ctx.options.seed + 2);
  const AMap square = AMap::scalar(1, [](const AVector& x) { return x[0] * x[0]; });
  const AMap conj = AMap::scalar(1, [](const AVector& x) { return star(x[0]); });
  const AMap modulus = AMap::scalar(1, [](const AVector& x) { return x[0] * star(x[0]); });
  const AMap sup = AMap::scalar(1, [n](const AVector& x) {
    return AlgebraElement::constant(n, seminorm(x[0]));
  });

  double r_square = 0.0;
  double r_conj = 0.0;
  double r_modulus = 0.0;
  double probe = 0.0;
  bool sup_rejected = true;
  std::vector<AlgebraElement> scalars = {AlgebraElement::constant(n, Complex(0.0, 1.0)),
                                         AlgebraElement::constant(n, Complex(0.3, -0.7)),
                                         AlgebraElement::constant(n, 2.0)};
  for (int i = 0; i < 2; ++i) scalars.push_back(rng.element(n));

  for (std::size_t s = 0; s < std::max<std::size_t>(ctx.options.samples, 1); ++s) {
    const AVector x{rng.element(n)};
    const AVector h{rng.element(n)};
    const AlgebraElement& a = x[0];
    const LSValue sq = differential_ls(square, x, h, step);
    r_square = std::max({r_square, seminorm(sq.linear[0] - Complex(2.0) * a * h[0]),
                         seminorm(sq.skew[0])});
    const LSValue cj = differential_ls(conj, x, h, step);
    r_conj = std::max({r_conj, seminorm(cj.linear[0]), seminorm(cj.skew[0] - star(h[0]))});
    const LSValue md = differential_ls(modulus, x, h, step);
    r_modulus = std::max({r_modulus, seminorm(md.linear[0] - star(a) * h[0]),
                          seminorm(md.skew[0] - a * star(h[0]))});
    for (const AMap* fn : {&square, &conj, &modulus}) {
      const LinearitySplitReport lr = check_linearity_split(*fn, x, {h}, scalars, kSplitProbeTol, step);
      probe = std::max({probe, lr.linear_residual, lr.skew_residual});
    }
    if (s < 4) {
      sup_rejected =
          sup_rejected && !check_linearity_split(sup, x, {h}, scalars, tol, step).passed;
    }
  }
  ctx.check("square", "L(a^2)(h) = 2 a h, S(a^2) = 0", r_square, tol);
  ctx.check("conjugation", "L(a*) = 0, S(a*)(h) = h*", r_conj, tol);
  ctx.check("modulus", "L(a a*)(h) = a* h, S(a a*)(h) = a h*", r_modulus, tol);
  ctx.check("split-linearity", "L(a h) = a L(h), S(a h) = a* S(h)", probe, kSplitProbeTol);
  auto& e = ctx.check("non-differentiable-rejected", "sup-norm map has no L/S split", 0.0, tol);
  e.passed = sup_rejected;
}

void run_transport(Context& ctx) {
  const Fixture& f = ctx.fixture;
  const AtlasPtr& atlas = f.atlas();
  const std::size_t k = atlas->base().dim();
  const std::size_t m = atlas->fiber().ambient_rank();
  const std::size_t n = grid(ctx);
  Rng rng(ctx.options.seed + 3);

  double round_trip = 0.0;
  std::size_t overlap_points = 0;
  for (const auto& sp : atlas->base().samples()) {
    const auto charts = atlas->base().charts_at(sp.x);
    if (charts.size() < 2) continue;
    ++overlap_points;
    MatrixOverA lin(m, k, n);
    MatrixOverA skw(m, k, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        lin(r, c) = rng.element(n);
        skw(r, c) = rng.element(n);
      }
    }
    const MatrixOverA& p = atlas->fiber().idempotent();
    const HomTrivialization hom{charts[0], sp.x, p * lin, p * skw};
    const HomTrivialization back = transport(*atlas, transport(*atlas, hom, charts[1]), charts[0]);
    round_trip = std::max({round_trip, seminorm(back.linear - hom.linear),
                           seminorm(back.skew - hom.skew)});
  }
  ctx.check("round-trip", "f -> tau_ix o f o phi_i^-1 round trip", round_trip, kRoundTripTol,
            std::to_string(overlap_points) + " overlap points");

  const Section xi = Section::from_reference(atlas, 0, random_section_map(rng, atlas->fiber(), k));
  const ConnectionOperator d = any_connection(f, ctx.options.step);
  double consistency = 0.0;
  for (const auto& s : connection_samples(ctx, rng)) {
    const auto charts = atlas->base().charts_at(s.x);
    if (charts.size() < 2) continue;
    const AVector in_first = d(xi, s.x, s.v, charts[0]);
    const AVector in_second = d(xi, s.x, s.v, charts[1]);
    consistency = std::max(
        consistency, seminorm(in_first - atlas->transition(charts[0], charts[1], s.x) * in_second));
  }
  ctx.check("connection", "D xi(x) transforms as a section of L(TX, E)", consistency,
            kChartConsistencyTol);
}

const std::map<std::string, std::function<void(Context&)>>& suite_table() {
  static const std::map<std::string, std::function<void(Context&)>> table = {
      {"axioms", run_axioms},       {"calculus", run_calculus},
      {"cocycle", run_cocycle},     {"compatibility", run_compatibility},
      {"gluing", run_gluing},       {"isometry", run_isometry},
      {"leibniz", run_leibniz},     {"partition", run_partition},
      {"reduction", run_reduction}, {"transport", run_transport},
  };
  return table;
}

std::vector<std::string> parse_selector(std::string_view selector) {
  std::vector<std::string> names;
  if (selector.empty() || selector == "all") {
    for (const auto& [name, fn] : suite_table()) names.push_back(name);
    return names;
  }
  std::size_t start = 0;
  while (start <= selector.size()) {
    const std::size_t end = std::min(selector.find(',', start), selector.size());
    std::string name(selector.substr(start, end - start));
    if (!name.empty()) {
      if (!suite_table().contains(name)) {
        fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
      }
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    }
    start = end + 1;
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suite_table()) v.push_back(name);
    return v;
  }();
  return names;
}

VerificationReport run_suite(const Fixture& fixture, std::string_view selector,
                             const RunOptions& options) {
  if (!(options.step > 0.0)) fail(ErrorCode::InvalidArgument, "step must be positive");
  if (options.tol && !(*options.tol >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "tolerance must be non-negative");
  }
  const auto names = parse_selector(selector);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.fixture = fixture.name();
  for (const auto& name : names) {
    std::vector<ReportEntry> entries;
    Context ctx{fixture, options, entries, name};
    try {
      suite_table().at(name)(ctx);
    } catch (const Error& e) {
      ctx.error(std::string(to_string(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
      ctx.error(e.what());
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ReportEntry& a, const ReportEntry& b) { return a.id < b.id; });
    for (auto& e : entries) report.entries.push_back(std::move(e));
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace abundle
