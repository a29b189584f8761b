#pragma once

// Fixture files: a presentation, an ideal, a seed and named modules.
//
//   {
//     "name": "R3",
//     "field": "Q",                       // or "Fp:5"
//     "vars": ["x"],
//     "relations": [ [[1, 1, [3]]] ],      // term = [num, den, [e_1..e_n]]
//     "nilpotency": 3,
//     "ideal": [ [[1, 1, [1]]] ],          // generators, as term lists
//     "seed": 1,
//     "modules": {
//       "R-mod-x2": {"presentation": {"rank": 1, "relations": [ [ [[1, 1, [2]]] ] ]}},
//       "k2": {"dim": 2, "actions": [ [[0, 0], [0, 0]] ]}
//     }
//   }
//
// Matrix entries are [num, den] or plain integers (residues over F_p).
// Besides the named modules every fixture knows the references
// regular, E, k, zero, I, I-dual, and any of them suffixed ^j for a direct power.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "matlis/algebra.hpp"
#include "matlis/module.hpp"
#include "matlis/scalar.hpp"

namespace matlis::io {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

template <typename S>
struct FixtureData {
  using Scalar = S;

  std::string name;
  std::string source;  // path or "<string>"
  Presentation<S> presentation;
  AlgebraPtr<S> algebra;
  std::vector<Vector<S>> ideal_generators;
  Ideal<S> ideal;
  std::uint64_t seed = 1;
  std::vector<std::pair<std::string, FModule<S>>> modules;
};

using Fixture = std::variant<FixtureData<Rational>, FixtureData<Fp>>;

/// Throws ParseError (malformed JSON or wrong shape, with line:column) or
/// ValidationError (well-formed but violates an invariant).
Fixture parse_fixture(const std::string& text, const std::string& source);

/// `ref` is a path to a file, or a fixture name looked up as <name>.json in
/// $MATLIS_LAB_FIXTURE_DIR and then in the bundled fixture directory.
Fixture load_fixture(const std::string& ref);

std::string resolve_fixture_path(const std::string& ref);

const std::string& fixture_name(const Fixture& f);

/// Throws UnknownModuleRef.
template <typename Scalar>
FModule<Scalar> resolve_module(const FixtureData<Scalar>& f, const std::string& ref);

template <typename Scalar>
std::vector<std::string> module_refs(const FixtureData<Scalar>& f);

}  // namespace matlis::io
