#include "matlis/io/compute.hpp"

#include <sstream>

#include "matlis/classes.hpp"
#include "matlis/io/format.hpp"

namespace matlis::io {

const std::vector<std::string>& compute_commands() {
  static const std::vector<std::string> names{"gamma",    "kappa",    "dual",       "trace-basis",
                                              "member-P", "member-S", "uniserial-s"};
  return names;
}

namespace {

template <typename Scalar>
std::string compute(const FixtureData<Scalar>& f, const std::string& cmd, const std::string& ref) {
  const ClassContext<Scalar> ctx(f.ideal);
  const auto m = resolve_module(f, ref);
  std::ostringstream os;
  if (cmd == "gamma") {
    os << format_submodule(gamma(ctx, m)) << '\n';
  } else if (cmd == "kappa") {
    os << format_submodule(kappa(ctx, m)) << '\n';
  } else if (cmd == "dual") {
    os << format_module(matlis_dual(m)) << '\n';
  } else if (cmd == "trace-basis") {
    const auto h = hom_space(ctx.ideal_module(), m);
    os << "dim=" << h.basis.size() << '\n';
    for (const auto& map : h.basis) os << format_rows(map.matrix) << '\n';
    os << "trace=" << format_submodule(trace(ctx, m)) << '\n';
  } else if (cmd == "member-P") {
    os << (is_p_member(ctx, m) ? "true" : "false") << '\n';
  } else if (cmd == "member-S") {
    os << (is_s_member(ctx, m) ? "true" : "false") << '\n';
  } else if (cmd == "uniserial-s") {
    const auto u = uniserial_s(ctx, m);
    os << "s=" << u.s << " gamma=M_" << (u.length - u.s) << " kappa=M_" << u.s << '\n';
  } else {
    throw Error(Errc::ValidationError, "unknown compute command '" + cmd + "'");
  }
  return os.str();
}

template <typename Scalar>
std::string check_ring(const FixtureData<Scalar>& f) {
  const auto& a = *f.algebra;
  std::ostringstream os;
  os << "fixture=" << f.name << '\n';
  os << "field=" << a.field().name() << '\n';
  os << "vars=";
  for (std::size_t i = 0; i < a.variables().size(); ++i) os << (i ? "," : "") << a.variables()[i];
  os << '\n' << "dim=" << a.dim() << '\n' << "basis=";
  for (std::size_t i = 0; i < a.basis().size(); ++i) os << (i ? " " : "") << monomial_text(a.variables(), a.basis()[i]);
  const auto mx = maximal_ideal(f.algebra);
  os << '\n' << "nilpotency=" << a.nilpotency() << " certified=" << (ideal_power(mx, a.nilpotency()).is_zero() ? "true" : "false")
     << '\n';
  const ClassContext<Scalar> ctx(f.ideal);
  os << "ideal=" << ideal_text(f.ideal) << '\n';
  os << "ann=" << ideal_text(ctx.ann()) << '\n';
  os << "closure=" << ideal_text(ctx.closure()) << '\n';
  os << "annihilator_closed=" << (ctx.closure() == f.ideal ? "true" : "false") << '\n';
  os << "iso_to_regular=" << (is_iso_to_regular(f.ideal) ? "true" : "false") << '\n';
  os << "epi_onto_R/AnnI=" << (epi_onto_r_mod_ann_exists(ctx) ? "true" : "false") << '\n';
  for (const auto& [name, m] : f.modules) os << "module " << name << " dim=" << m.dim() << '\n';
  return os.str();
}

}  // namespace

std::string run_compute(const Fixture& fixture, const std::string& command, const std::string& module_ref) {
  return std::visit([&](const auto& f) { return compute(f, command, module_ref); }, fixture);
}

std::string ring_check(const Fixture& fixture) {
  return std::visit([](const auto& f) { return check_ring(f); }, fixture);
}

}  // namespace matlis::io
