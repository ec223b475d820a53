#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "abundle/bundle.hpp"
#include "abundle/hermitian.hpp"

namespace abundle {

inline constexpr std::string_view kFixtureVersion = "abundle-fixture/1";
inline constexpr std::uint64_t kDefaultSeed = 7;

struct FiberSpec {
  std::string kind = "free";  // free | mixed-rank
  std::size_t rank = 1;
};

struct CocycleSpec {
  std::string generator = "trivial";  // trivial | phase | diagonal | broken-phase
  std::vector<double> omega;
  std::vector<double> scales;
  double factor = 1.0;
};

struct FormSpec {
  std::string kind = "standard";  // standard | random-positive | degenerate
  std::uint64_t seed = 0;
};

/// Everything needed to rebuild a fixture. Named fixtures are total
/// functions of (name, seed, grid size).
struct FixtureDescriptor {
  std::string name;
  std::uint64_t seed = kDefaultSeed;
  GridSpec grid;
  std::size_t dim = 1;
  std::vector<Chart> charts;
  SamplePlanSpec plan;
  FiberSpec fiber;
  CocycleSpec cocycle;
  FormSpec form;
  double partition_delta = kCoveringDelta;
};

class Fixture {
 public:
  explicit Fixture(FixtureDescriptor descriptor);
  // Uses explicit fiber and Gram matrices instead of regenerating them.
  Fixture(FixtureDescriptor descriptor, PModule fiber, MatrixOverA gram);

  const FixtureDescriptor& descriptor() const noexcept { return descriptor_; }
  const std::string& name() const noexcept { return descriptor_.name; }
  const AtlasPtr& atlas() const noexcept { return atlas_; }
  const HermitianForm& form() const noexcept { return form_; }

  // Throws NormalizerNotInvertible if the charts do not cover the plan.
  PartitionOfUnity partition() const;

 private:
  FixtureDescriptor descriptor_;
  AtlasPtr atlas_;
  HermitianForm form_;
};

const std::vector<std::string>& fixture_names();

// Throws UnknownFixture.
FixtureDescriptor describe_fixture(std::string_view name, std::uint64_t seed = kDefaultSeed,
                                   std::size_t grid_size = kDefaultGridSize);

Fixture build_fixture(std::string_view name, std::uint64_t seed = kDefaultSeed,
                      std::size_t grid_size = kDefaultGridSize);

std::string serialize_fixture(const Fixture& fixture);
// Throws ParseError on malformed text or a wrong version tag.
Fixture parse_fixture(std::string_view text);

}  // namespace abundle
