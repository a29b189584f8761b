#pragma once

// Single computations behind `matlis-lab compute` and `matlis-lab ring check`.

#include <string>
#include <vector>

#include "matlis/io/fixture.hpp"

namespace matlis::io {

/// gamma kappa dual trace-basis member-P member-S uniserial-s
const std::vector<std::string>& compute_commands();

/// Canonical text, newline-terminated. Throws UnknownModuleRef, NotUniserial,
/// ValidationError (unknown command).
std::string run_compute(const Fixture& fixture, const std::string& command, const std::string& module_ref);

/// Summary of the algebra and the fixture ideal after all build checks.
std::string ring_check(const Fixture& fixture);

}  // namespace matlis::io
