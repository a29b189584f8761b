#pragma once

// Named verification suites over a fixture. A report is a list of records
//
//   CHECK <name> <fixture> PASS|FAIL <witness>
//
// followed by one SUMMARY line. Records appear in a fixed order and all
// randomness comes from one LCG per suite, seeded from (seed, suite name),
// so a suite prints the same records whether run alone or inside "all".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matlis/io/fixture.hpp"

namespace matlis::io {

struct CheckRecord {
  std::string name;
  std::string fixture;
  bool pass = false;
  std::string witness;
};

struct Report {
  std::string suite;
  std::string fixture;
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  std::string text() const;
  std::string json() const;
};

struct VerifyOptions {
  std::optional<int> trials;          // suite default when empty
  std::optional<std::uint64_t> seed;  // fixture seed when empty
  int budget = 500;                   // extension constructions for satz25
};

/// lemma11 satz22 satz25 satz31 folg32 folg33 satz35 folg36 duality closure
const std::vector<std::string>& suite_names();

bool is_suite(const std::string& name);

/// The LCG seed a suite starts from.
std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite);

/// `suite` is one of suite_names() or "all".
Report run_suite(const Fixture& fixture, const std::string& suite, const VerifyOptions& options);

}  // namespace matlis::io
