#include "abundle/fixture.hpp"

#include <algorithm>

#include "abundle/error.hpp"
#include "abundle/random.hpp"
#include "json_io.hpp"

namespace abundle {

namespace {

using json_io::json;

PModule make_fiber(const FiberSpec& spec, std::size_t n) {
  if (spec.kind == "free") return PModule::free(spec.rank, n);
  if (spec.kind == "mixed-rank") return PModule::mixed_rank(n);
  fail(ErrorCode::InvalidArgument, "unknown fiber kind '" + spec.kind + "'");
}

MatrixOverA make_gram(const FormSpec& spec, std::size_t m, std::size_t n) {
  if (spec.kind == "standard") return MatrixOverA::identity(m, n);
  if (spec.kind == "degenerate") {
    MatrixOverA h = MatrixOverA::identity(m, n);
    h(m - 1, m - 1) = AlgebraElement::zero(n);
    return h;
  }
  if (spec.kind == "random-positive") {
    Rng rng(spec.seed);
    MatrixOverA b(m, m, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) b(r, c) = rng.element(n);
    }
    return b * adjoint(b) + Complex(0.1) * MatrixOverA::identity(m, n);
  }
  fail(ErrorCode::InvalidArgument, "unknown form kind '" + spec.kind + "'");
}

CocycleGenerator make_cocycle(const CocycleSpec& spec, const PModule& fiber,
                              std::size_t chart_count) {
  auto need_omega = [&] {
    if (spec.omega.size() != chart_count) {
      fail(ErrorCode::InvalidArgument, "phase cocycle needs one omega per chart");
    }
  };
  if (spec.generator == "trivial") return trivial_cocycle(fiber);
  if (spec.generator == "phase") {
    need_omega();
    return phase_cocycle(fiber, spec.omega);
  }
  if (spec.generator == "broken-phase") {
    need_omega();
    return broken_phase_cocycle(fiber, spec.omega, spec.factor);
  }
  if (spec.generator == "diagonal") return diagonal_cocycle(fiber, spec.scales);
  fail(ErrorCode::InvalidArgument, "unknown cocycle generator '" + spec.generator + "'");
}

Chart constant_chart(std::size_t n, Complex center, double r, double r_prime) {
  return Chart{AVector{AlgebraElement::constant(n, center)}, r, r_prime};
}

}  // namespace

Fixture::Fixture(FixtureDescriptor descriptor)
    : Fixture(descriptor, make_fiber(descriptor.fiber, descriptor.grid.size),
              MatrixOverA()) {}

Fixture::Fixture(FixtureDescriptor descriptor, PModule fiber, MatrixOverA gram)
    : descriptor_(std::move(descriptor)),
      form_(fiber, gram.rows() == 0
                       ? make_gram(descriptor_.form, fiber.ambient_rank(), fiber.grid_size())
                       : gram) {
  BaseRegion base(descriptor_.dim, descriptor_.grid.size, descriptor_.charts, descriptor_.plan);
  CocycleGenerator cocycle = make_cocycle(descriptor_.cocycle, fiber, descriptor_.charts.size());
  atlas_ = std::make_shared<const BundleAtlas>(std::move(base), fiber, std::move(cocycle));
}

PartitionOfUnity Fixture::partition() const {
  return make_bump_partition(atlas_->base(), descriptor_.partition_delta);
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "trivial-line",         "phase-two-chart", "mixed-rank-grassmann", "nonunitary-two-chart",
      "broken-cocycle",       "random-form-line", "degenerate-form"};
  return names;
}

FixtureDescriptor describe_fixture(std::string_view name, std::uint64_t seed,
                                   std::size_t grid_size) {
  if (std::find(fixture_names().begin(), fixture_names().end(), name) == fixture_names().end()) {
    fail(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
  }
  if (grid_size == 0) fail(ErrorCode::InvalidArgument, "grid size must be positive");

  FixtureDescriptor d;
  d.name = std::string(name);
  d.seed = seed;
  d.grid = GridSpec{grid_size, "grid" + std::to_string(grid_size)};
  d.dim = 1;
  d.plan.seed = seed;

  const std::size_t n = grid_size;
  const bool one_chart = name == "trivial-line" || name == "random-form-line" ||
                         name == "degenerate-form";
  d.charts.push_back(constant_chart(n, 0.0, 1.2, 1.3));
  if (!one_chart) d.charts.push_back(constant_chart(n, 1.0, 1.2, 1.3));

  Rng rng(seed);
  const double omega = 0.5 + rng.uniform();

  if (name == "trivial-line") {
    d.fiber = {"free", 1};
  } else if (name == "phase-two-chart") {
    d.fiber = {"free", 2};
    d.cocycle = {"phase", {0.0, omega}, {}, 1.0};
  } else if (name == "mixed-rank-grassmann") {
    d.fiber = {"mixed-rank", 2};
    d.cocycle = {"phase", {0.0, omega}, {}, 1.0};
  } else if (name == "nonunitary-two-chart") {
    d.fiber = {"free", 2};
    d.cocycle = {"diagonal", {}, {2.0, 1.0}, 1.0};
  } else if (name == "broken-cocycle") {
    d.fiber = {"free", 2};
    d.cocycle = {"broken-phase", {0.0, omega}, {}, 2.0};
  } else if (name == "random-form-line") {
    d.fiber = {"free", 2};
    d.form = {"random-positive", seed};
  } else if (name == "degenerate-form") {
    d.fiber = {"free", 2};
    d.form = {"degenerate", 0};
  }
  return d;
}

Fixture build_fixture(std::string_view name, std::uint64_t seed, std::size_t grid_size) {
  return Fixture(describe_fixture(name, seed, grid_size));
}

std::string serialize_fixture(const Fixture& fixture) {
  const FixtureDescriptor& d = fixture.descriptor();
  json charts = json::array();
  for (const auto& c : d.charts) {
    charts.push_back({{"center", json_io::to_json(c.center)},
                      {"bump_radius", c.bump_radius},
                      {"chart_radius", c.chart_radius}});
  }
  json out = {
      {"version", std::string(kFixtureVersion)},
      {"name", d.name},
      {"seed", d.seed},
      {"grid", {{"size", d.grid.size}, {"label", d.grid.label}}},
      {"base",
       {{"dim", d.dim},
        {"charts", charts},
        {"sample_plan",
         {{"seed", d.plan.seed},
          {"per_chart", d.plan.per_chart},
          {"per_overlap", d.plan.per_overlap},
          {"value_radius", d.plan.value_radius}}}}},
      {"fiber",
       {{"kind", d.fiber.kind},
        {"rank", d.fiber.rank},
        {"idempotent", json_io::to_json(fixture.atlas()->fiber().idempotent())}}},
      {"cocycle",
       {{"generator", d.cocycle.generator},
        {"omega", d.cocycle.omega},
        {"scales", d.cocycle.scales},
        {"factor", d.cocycle.factor}}},
      {"form",
       {{"kind", d.form.kind},
        {"seed", d.form.seed},
        {"gram", json_io::to_json(fixture.form().gram())}}},
      {"partition", {{"delta", d.partition_delta}}},
  };
  return out.dump(2) + "\n";
}

Fixture parse_fixture(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("fixture is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("version", std::string()) != kFixtureVersion) {
      fail(ErrorCode::ParseError, "fixture version must be '" + std::string(kFixtureVersion) + "'");
    }
    FixtureDescriptor d;
    d.name = j.at("name").get<std::string>();
    d.seed = j.at("seed").get<std::uint64_t>();
    d.grid.size = j.at("grid").at("size").get<std::size_t>();
    d.grid.label = j.at("grid").value("label", std::string("grid"));
    if (d.grid.size == 0) fail(ErrorCode::ParseError, "grid size must be positive");
    const std::size_t n = d.grid.size;

    const json& base = j.at("base");
    d.dim = base.at("dim").get<std::size_t>();
    for (const auto& c : base.at("charts")) {
      d.charts.push_back(Chart{json_io::vector_from_json(c.at("center"), n),
                               c.at("bump_radius").get<double>(),
                               c.at("chart_radius").get<double>()});
    }
    const json& plan = base.at("sample_plan");
    d.plan.seed = plan.at("seed").get<std::uint64_t>();
    d.plan.per_chart = plan.at("per_chart").get<std::size_t>();
    d.plan.per_overlap = plan.at("per_overlap").get<std::size_t>();
    d.plan.value_radius = plan.at("value_radius").get<double>();

    const json& fiber = j.at("fiber");
    d.fiber.kind = fiber.at("kind").get<std::string>();
    d.fiber.rank = fiber.at("rank").get<std::size_t>();
    PModule module(json_io::matrix_from_json(fiber.at("idempotent"), n));

    const json& cocycle = j.at("cocycle");
    d.cocycle.generator = cocycle.at("generator").get<std::string>();
    d.cocycle.omega = cocycle.value("omega", std::vector<double>{});
    d.cocycle.scales = cocycle.value("scales", std::vector<double>{});
    d.cocycle.factor = cocycle.value("factor", 1.0);

    const json& form = j.at("form");
    d.form.kind = form.at("kind").get<std::string>();
    d.form.seed = form.value("seed", std::uint64_t{0});
    MatrixOverA gram = json_io::matrix_from_json(form.at("gram"), n);

    d.partition_delta = j.at("partition").value("delta", kCoveringDelta);
    return Fixture(std::move(d), std::move(module), std::move(gram));
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed fixture: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(ErrorCode::ParseError, std::string("invalid fixture: ") + e.what());
  }
}

}  // namespace abundle
