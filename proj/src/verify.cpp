#include "matlis/io/verify.hpp"

#include <functional>
#include <sstream>

#include "json.hpp"

#include "matlis/classes.hpp"
#include "matlis/ext.hpp"
#include "matlis/io/format.hpp"
#include "matlis/random.hpp"

namespace matlis::io {

int Report::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass;
  return n;
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << "CHECK " << c.name << ' ' << c.fixture << ' ' << (c.pass ? "PASS" : "FAIL") << ' ' << c.witness << '\n';
  os << "SUMMARY " << suite << ' ' << fixture << " pass=" << passed() << " fail=" << failed() << '\n';
  return os.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["fixture"] = fixture;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"fixture", c.fixture}, {"status", c.pass ? "PASS" : "FAIL"}, {"witness", c.witness}});
  j["summary"] = {{"pass", passed()}, {"fail", failed()}};
  return j.dump(2) + "\n";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma11", "satz22", "satz25", "satz31", "folg32",
                                              "folg33",  "satz35", "folg36", "duality", "closure"};
  return names;
}

bool is_suite(const std::string& name) {
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : suite) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h ^ (seed * 0x9e3779b97f4a7c15ULL);
}

namespace {

template <typename Scalar>
class SuiteRunner {
 public:
  SuiteRunner(const FixtureData<Scalar>& f, const VerifyOptions& opt, Report& report)
      : f_(f), opt_(opt), report_(report), ctx_(f.ideal, true) {}

  void run(const std::string& suite) {
    rng_ = Lcg(suite_seed(opt_.seed.value_or(f_.seed), suite));
    if (suite == "lemma11") lemma11();
    else if (suite == "satz22") satz22();
    else if (suite == "satz25") satz25();
    else if (suite == "satz31") satz31();
    else if (suite == "folg32") folg32();
    else if (suite == "folg33") folg33();
    else if (suite == "satz35") satz35();
    else if (suite == "folg36") folg36();
    else if (suite == "duality") duality();
    else if (suite == "closure") closure();
  }

 private:
  using Module = FModule<Scalar>;
  using Sub = Submodule<Scalar>;
  using Ctx = ClassContext<Scalar>;

  // One record. `body` returns the witness and sets pass; exceptions are failures.
  void check(const std::string& name, const std::function<std::string(bool&)>& body) {
    CheckRecord r{name, f_.name, false, ""};
    try {
      r.witness = body(r.pass);
    } catch (const std::exception& e) {
      r.pass = false;
      r.witness = std::string("exception: ") + e.what();
    }
    report_.checks.push_back(std::move(r));
  }

  int trials(int fallback) const { return opt_.trials.value_or(fallback); }

  static std::string idx(const std::string& base, int i) { return base + "[" + std::to_string(i) + "]"; }

  static std::string b(bool v) { return v ? "1" : "0"; }

  std::string replay(const Ideal<Scalar>& i, const Module& m) const {
    return "I=" + format_ideal(i) + " M=" + format_module(m);
  }

  const AlgebraPtr<Scalar>& alg() const { return f_.algebra; }

  Module regular() const { return regular_module(alg()); }
  Module injective_hull() const { return matlis_dual(regular()); }

  /// A P-member: a quotient of I^j by a random submodule, or a trace.
  Module random_p_member(const Ctx& ctx) {
    if (coin(rng_)) {
      const int j = 1 + static_cast<int>(draw(rng_, 2));
      const auto x = direct_power(ctx.ideal_module(), j);
      return quotient_module(x, random_submodule(x, rng_)).module;
    }
    const auto m = random_module(alg(), rng_);
    return submodule_as_module(m, trace(ctx, m)).module;
  }

  std::vector<std::pair<std::string, Ideal<Scalar>>> named_ideals() const {
    return {{"I", f_.ideal}, {"zero", zero_ideal(alg())}, {"unit", unit_ideal(alg())}, {"m", maximal_ideal(alg())}};
  }

  // ---- lemma11 ------------------------------------------------------------
  // IM = M  =>  M in P  =>  Ann(I) M = 0; for M = E^j all three are
  // equivalent to M[I-bar] = 0. An ideal isomorphic to R is R itself.
  void lemma11() {
    const int n = trials(200);
    for (int t = 0; t < n; ++t) {
      const auto m = random_module(alg(), rng_);
      check(idx("lemma11.chain", t), [&](bool& pass) {
        const bool a = ideal_times_module(ctx_.ideal(), m).dim() == m.dim();
        const bool p = trace(ctx_, m).dim() == m.dim();
        const bool c = ideal_times_module(ctx_.ann(), m).is_zero();
        pass = (!a || p) && (!p || c);
        std::string w = "IM=M:" + b(a) + " P:" + b(p) + " AnnI*M=0:" + b(c) + " dim=" + std::to_string(m.dim());
        return pass ? w : w + " " + replay(ctx_.ideal(), m);
      });
    }
    for (const auto& [label, ideal] : named_ideals()) {
      const Ctx ctx(ideal, true);
      for (int j = 1; j <= 3; ++j) {
        check("lemma11.injective." + label + "[" + std::to_string(j) + "]", [&](bool& pass) {
          const auto m = direct_power(injective_hull(), j);
          const bool a = ideal_times_module(ctx.ideal(), m).dim() == m.dim();
          const bool p = trace(ctx, m).dim() == m.dim();
          const bool c = ideal_times_module(ctx.ann(), m).is_zero();
          const bool d = annihilator_submodule(m, ctx.closure()).is_zero();
          pass = a == p && p == c && c == d;
          return "IM=M:" + b(a) + " P:" + b(p) + " AnnI*M=0:" + b(c) + " M[Ibar]=0:" + b(d) + " I=" + format_ideal(ideal);
        });
      }
      check("lemma11.regular." + label, [&](bool& pass) {
        const bool iso = is_iso_to_regular(ideal);
        pass = iso == ideal.is_unit();
        return "iso_to_R:" + b(iso) + " I=R:" + b(ideal.is_unit());
      });
    }
  }

  // ---- satz22 -------------------------------------------------------------
  void satz22() {
    const int n = trials(100);
    const auto epi = find_epi_onto_r_mod_ann(ctx_);
    const bool crit = epi.has_value();
    check("satz22.criterion", [&](bool& pass) {
      // cyclic or semisimple nonzero ideals always admit the epimorphism
      const bool cyclic = minimal_generators(ctx_.ideal()).size() == 1;
      const bool semisimple = !ctx_.ideal().is_zero() &&
                              ideal_product(maximal_ideal(alg()), ctx_.ideal()).is_zero();
      pass = !(cyclic || semisimple) || crit;
      return std::string("criterion=") + (crit ? "true" : "false") + " cyclic=" + b(cyclic) +
             " semisimple=" + b(semisimple) + (crit ? " epi=" + format_rows(epi->matrix) : "");
    });
    if (crit) {
      for (int t = 0; t < n; ++t) {
        const auto x = random_p_member(ctx_);
        const auto u = random_submodule(x, rng_);
        check(idx("satz22.submodule", t), [&](bool& pass) {
          const auto um = submodule_as_module(x, u).module;
          pass = trace(ctx_, x).dim() == x.dim() && trace(ctx_, um).dim() == um.dim();
          return "dim X=" + std::to_string(x.dim()) + " U=" + format_submodule(u) +
                 (pass ? "" : " X=" + format_module(x));
        });
      }
    } else {
      check("satz22.counterexample", [&](bool& pass) {
        const auto ce = submodule_counterexample(ctx_);
        if (!ce) return std::string("no counterexample produced");
        const auto sub = submodule_as_module(ce->ambient, ce->submodule).module;
        const bool annihilated = ideal_times_module(ctx_.ann(), sub).is_zero();
        const auto quotient = quotient_module(regular(), Sub(ctx_.ann().space())).module;
        const auto iso = find_isomorphism(sub, quotient, opt_.seed.value_or(f_.seed)).first;
        pass = ce->ambient_in_p && !ce->submodule_in_p && annihilated && iso != IsoResult::NotIsomorphic;
        std::string gens;
        for (const auto& g : ce->ideal_generators) gens += (gens.empty() ? "" : ", ") + element_text(*alg(), g);
        return "criterion-false branch: R*(" + gens + ") in I^" + std::to_string(ce->ideal_generators.size()) +
               " generator=" + format_vector(ce->generator) + " submodule=" + format_submodule(ce->submodule) +
               " ambient_in_P=" + (ce->ambient_in_p ? "true" : "false") +
               " submodule_in_P=" + (ce->submodule_in_p ? "true" : "false") + " R/AnnI:" + iso_result_name(iso);
      });
    }
    // P = S = {M : Ann(I) M = 0} exactly when the criterion holds; in general
    // both classes lie inside that set.
    for (int t = 0; t < n; ++t) {
      auto m = random_module(alg(), rng_);
      if (coin(rng_)) m = quotient_module(m, ideal_times_module(ctx_.ann(), m)).module;
      check(idx("satz22.classes", t), [&](bool& pass) {
        const bool p = trace(ctx_, m).dim() == m.dim();
        const bool s = reject(ctx_, m).is_zero();
        const bool c = ideal_times_module(ctx_.ann(), m).is_zero();
        pass = (!p || c) && (!s || c) && (!crit || (p == c && s == c));
        std::string w = "P:" + b(p) + " S:" + b(s) + " AnnI*M=0:" + b(c);
        return pass ? w : w + " " + replay(ctx_.ideal(), m);
      });
    }
  }

  // ---- satz25 -------------------------------------------------------------
  std::string verify_witness(const Ctx& ctx, ClassKind kind, const ExtensionSearchResult<Scalar>& r, bool& pass) {
    const auto& w = *r.witness;
    auto member = [&](const Module& m) {
      return kind == ClassKind::P ? trace(ctx, m).dim() == m.dim() : reject(ctx, m).is_zero();
    };
    const auto& e = w.extension;
    const bool exact = is_injective(e.iota) && is_surjective(e.pi) && image(e.iota) == kernel(e.pi) &&
                       is_equivariant(e.iota, w.a, e.b) && is_equivariant(e.pi, e.b, w.c);
    pass = exact && member(w.a) && member(w.c) && !member(e.b);
    return std::string("Witness after ") + std::to_string(r.constructions) + " constructions: dim A=" +
           std::to_string(w.a.dim()) + " C=" + std::to_string(w.c.dim()) + " B=" + std::to_string(e.b.dim()) +
           " exact=" + b(exact) + " A=" + format_module(w.a) + " C=" + format_module(w.c) +
           " B=" + format_module(e.b) + " iota=" + format_rows(e.iota.matrix) + " pi=" + format_rows(e.pi.matrix);
  }

  void satz25() {
    ExtensionSearchOptions so;
    so.budget = opt_.budget;
    so.seed = suite_seed(opt_.seed.value_or(f_.seed), "satz25.search");
    const bool trivial = ctx_.ideal().is_zero() || is_iso_to_regular(ctx_.ideal());
    for (const auto kind : {ClassKind::P, ClassKind::S}) {
      const std::string label = kind == ClassKind::P ? "P" : "S";
      check("satz25.search." + label, [&](bool& pass) {
        const auto r = search_extension_counterexample(ctx_, kind, so);
        if (r.verdict == ExtensionVerdict::ClosedTrivially) {
          pass = trivial;
          return std::string("ClosedTrivially");
        }
        if (r.verdict == ExtensionVerdict::SearchExhausted) {
          pass = false;
          return "SearchExhausted after " + std::to_string(r.constructions) + " constructions I=" +
                 format_ideal(ctx_.ideal());
        }
        return verify_witness(ctx_, kind, r, pass);
      });
    }
    for (const auto& [label, ideal] : {std::pair{std::string("zero"), zero_ideal(alg())},
                                       std::pair{std::string("unit"), unit_ideal(alg())}}) {
      check("satz25.trivial." + label, [&, &ideal = ideal](bool& pass) {
        const Ctx ctx(ideal, true);
        const auto rp = search_extension_counterexample(ctx, ClassKind::P, so);
        const auto rs = search_extension_counterexample(ctx, ClassKind::S, so);
        pass = rp.verdict == ExtensionVerdict::ClosedTrivially && rs.verdict == ExtensionVerdict::ClosedTrivially;
        return std::string("P:") + verdict_name(rp.verdict) + " S:" + verdict_name(rs.verdict);
      });
    }
    // Ext^1 does not depend on the cover, and the zero class splits.
    const int n = trials(20);
    for (int t = 0; t < n; ++t) {
      const auto c = random_module(alg(), rng_);
      const auto a = random_module(alg(), rng_);
      check(idx("satz25.ext", t), [&](bool& pass) {
        const auto e = ext1(c, a);
        std::vector<Vector<Scalar>> gens = free_cover(c).generators;
        gens.push_back(random_vector<Scalar>(alg()->field(), c.dim(), rng_));
        const auto e2 = ext1(c, a, cover_from_generators(c, gens));
        const Matrix<Scalar> zero = Matrix<Scalar>::Zero(a.dim(), e.syzygy.module.dim());
        const auto split = extension_from_class(e, ModuleMap<Scalar>{zero});
        const bool retracts = find_retraction(split, a).has_value();
        bool nonsplit_ok = true;
        for (const auto& z : e.representatives) nonsplit_ok = nonsplit_ok && !find_retraction(extension_from_class(e, z), a);
        pass = e.dim() == e2.dim() && retracts && nonsplit_ok;
        std::string w = "dim Ext1=" + std::to_string(e.dim()) + " (cover rank " + std::to_string(e.cover.rank()) +
                        ") =" + std::to_string(e2.dim()) + " (cover rank " + std::to_string(e2.cover.rank()) +
                        ") split=" + b(retracts) + " classes_nonsplit=" + b(nonsplit_ok);
        return pass ? w : w + " C=" + format_module(c) + " A=" + format_module(a);
      });
    }
  }

  // ---- satz31 -------------------------------------------------------------
  // I M <= gamma(M) <= M[Ann I], Ann(I) M <= kappa(M) <= M[I], gamma(M)
  // essential in M[Ann I], kappa(M)/Ann(I)M small in M/Ann(I)M, and
  // Ass(M) = Koass(M) = {m} for M != 0 (a nonzero socle and a proper radical).
  void satz31() {
    const int n = trials(200);
    for (int t = 0; t < n; ++t) {
      const auto ideal = random_ideal(alg(), rng_);
      const auto m = random_module(alg(), rng_);
      check(idx("satz31", t), [&](bool& pass) {
        const Ctx ctx(ideal, false);
        const auto g = trace(ctx, m);
        const auto k = reject(ctx, m);
        const auto im = ideal_times_module(ideal, m);
        const auto upper_g = annihilator_submodule(m, ctx.ann());
        const auto lower_k = ideal_times_module(ctx.ann(), m);
        const auto upper_k = annihilator_submodule(m, ideal);
        const bool chain_g = g.contains(im) && upper_g.contains(g);
        const bool chain_k = k.contains(lower_k) && upper_k.contains(k);
        const bool essential = chain_g && is_essential_in(g, upper_g, m);
        const bool small = chain_k && is_small_modulo(k, lower_k, m);
        const bool ass = m.dim() == 0 || (!socle(m).is_zero() && radical(m).dim() < m.dim());
        pass = chain_g && chain_k && essential && small && ass;
        std::string w = "dim M=" + std::to_string(m.dim()) + " IM=" + std::to_string(im.dim()) +
                        " gamma=" + std::to_string(g.dim()) + " M[AnnI]=" + std::to_string(upper_g.dim()) +
                        " AnnI*M=" + std::to_string(lower_k.dim()) + " kappa=" + std::to_string(k.dim()) +
                        " M[I]=" + std::to_string(upper_k.dim());
        if (!pass)
          w += " chain_g=" + b(chain_g) + " chain_k=" + b(chain_k) + " essential=" + b(essential) +
               " small=" + b(small) + " ass=" + b(ass) + " " + replay(ideal, m);
        return w;
      });
    }
  }

  // ---- folg32 / folg33 -----------------------------------------------------
  std::vector<std::pair<std::string, Ideal<Scalar>>> ideals_with_random(int n) {
    auto out = named_ideals();
    for (int t = 0; t < n; ++t) out.emplace_back("rand" + std::to_string(t), random_ideal(alg(), rng_));
    return out;
  }

  // E^j: I M = gamma(M) = M[Ann I] and M[I-bar] <= kappa(M) <= M[I].
  // R^j: Ann(I) M = kappa(M) = M[I] and I M <= gamma(M) <= I-bar M.
  void folg32() {
    for (const auto& [label, ideal] : ideals_with_random(trials(10))) {
      const Ctx ctx(ideal, true);
      for (int j = 1; j <= 3; ++j) {
        check("folg32.E." + label + "[" + std::to_string(j) + "]", [&](bool& pass) {
          const auto m = direct_power(injective_hull(), j);
          const auto g = trace(ctx, m);
          const auto k = reject(ctx, m);
          const auto im = ideal_times_module(ideal, m);
          const auto ann_part = annihilator_submodule(m, ctx.ann());
          const auto bar_part = annihilator_submodule(m, ctx.closure());
          const auto i_part = annihilator_submodule(m, ideal);
          pass = im == g && g == ann_part && k.contains(bar_part) && i_part.contains(k);
          return "IM=" + std::to_string(im.dim()) + " gamma=" + std::to_string(g.dim()) + " M[AnnI]=" +
                 std::to_string(ann_part.dim()) + " M[Ibar]=" + std::to_string(bar_part.dim()) + " kappa=" +
                 std::to_string(k.dim()) + " M[I]=" + std::to_string(i_part.dim()) + " I=" + format_ideal(ideal);
        });
        check("folg32.R." + label + "[" + std::to_string(j) + "]", [&](bool& pass) {
          const auto m = free_module(alg(), j);
          const auto g = trace(ctx, m);
          const auto k = reject(ctx, m);
          const auto im = ideal_times_module(ideal, m);
          const auto bar_m = ideal_times_module(ctx.closure(), m);
          const auto ann_m = ideal_times_module(ctx.ann(), m);
          const auto i_part = annihilator_submodule(m, ideal);
          pass = ann_m == k && k == i_part && g.contains(im) && bar_m.contains(g);
          return "AnnI*M=" + std::to_string(ann_m.dim()) + " kappa=" + std::to_string(k.dim()) + " M[I]=" +
                 std::to_string(i_part.dim()) + " IM=" + std::to_string(im.dim()) + " gamma=" +
                 std::to_string(g.dim()) + " Ibar*M=" + std::to_string(bar_m.dim()) + " I=" + format_ideal(ideal);
        });
      }
    }
  }

  // For I = I-bar: E^j in P => E^j in S, and R^j in S => R^j in P.
  void folg33() {
    std::vector<std::pair<std::string, Ideal<Scalar>>> ideals;
    for (const auto& [label, ideal] : named_ideals())
      if (annihilator(annihilator(ideal)) == ideal) ideals.emplace_back(label, ideal);
    const int n = trials(10);
    for (int t = 0; t < n; ++t) ideals.emplace_back("ann" + std::to_string(t), annihilator(random_ideal(alg(), rng_)));
    for (const auto& [label, ideal] : ideals) {
      const Ctx ctx(ideal, true);
      for (int j = 1; j <= 3; ++j) {
        check("folg33." + label + "[" + std::to_string(j) + "]", [&](bool& pass) {
          const auto e = direct_power(injective_hull(), j);
          const auto r = free_module(alg(), j);
          const bool closed = ctx.closure() == ideal;
          const bool ep = trace(ctx, e).dim() == e.dim();
          const bool es = reject(ctx, e).is_zero();
          const bool rp = trace(ctx, r).dim() == r.dim();
          const bool rs = reject(ctx, r).is_zero();
          pass = closed && (!ep || es) && (!rs || rp);
          return "I=Ibar:" + b(closed) + " E^j P:" + b(ep) + " S:" + b(es) + " R^j P:" + b(rp) + " S:" + b(rs) +
                 " I=" + format_ideal(ideal);
        });
      }
    }
  }

  // ---- satz35 / folg36 -----------------------------------------------------
  std::vector<std::pair<std::string, Ideal<Scalar>>> uniserial_ideals() const {
    auto out = named_ideals();
    const auto mx = maximal_ideal(alg());
    auto power = ideal_product(mx, mx);
    for (int j = 2; !power.is_zero(); ++j) {
      out.emplace_back("m" + std::to_string(j), power);
      power = ideal_product(mx, power);
    }
    return out;
  }

  std::vector<std::pair<std::string, Module>> uniserial_modules(int random_candidates) {
    std::vector<std::pair<std::string, Module>> cand;
    const auto r = regular();
    const auto mx = maximal_ideal(alg());
    auto power = mx;
    for (int i = 1; i <= 64; ++i) {
      cand.emplace_back("R/m" + std::to_string(i), quotient_module(r, Sub(power.space())).module);
      if (power.is_zero()) break;
      power = ideal_product(mx, power);
    }
    cand.emplace_back("regular", r);
    cand.emplace_back("E", injective_hull());
    for (const auto& [name, m] : f_.modules) cand.emplace_back(name, m);
    for (int t = 0; t < random_candidates; ++t) {
      const auto i = random_ideal(alg(), rng_);
      cand.emplace_back("R/rand" + std::to_string(t), quotient_module(r, Sub(i.space())).module);
    }
    std::vector<std::pair<std::string, Module>> out;
    for (auto& [name, m] : cand)
      if (m.dim() > 0 && is_uniserial(m)) out.emplace_back(name, std::move(m));
    return out;
  }

  void satz35() {
    const auto mods = uniserial_modules(trials(20));
    for (const auto& [ilabel, ideal] : uniserial_ideals()) {
      const Ctx ctx(ideal, true);
      for (const auto& [mlabel, m] : mods) {
        check("satz35." + ilabel + "." + mlabel, [&](bool& pass) {
          const auto u = uniserial_s(ctx, m);
          const auto g = trace(ctx, m);
          const auto k = reject(ctx, m);
          pass = u.gamma == g && u.kappa == k;
          std::string w = "s=" + std::to_string(u.s) + " n=" + std::to_string(u.length) + " gamma=M_" +
                          std::to_string(u.length - u.s) + " kappa=M_" + std::to_string(u.s);
          if (!pass)
            w += " trace=" + format_submodule(g) + " reject=" + format_submodule(k) + " " + replay(ideal, m);
          return w;
        });
      }
    }
  }

  void folg36() {
    const auto mods = uniserial_modules(trials(20));
    for (const auto& [ilabel, ideal] : uniserial_ideals()) {
      const Ctx ctx(ideal, true);
      for (const auto& [mlabel, m] : mods) {
        check("folg36." + ilabel + "." + mlabel, [&](bool& pass) {
          const auto [first, second] = uniserial_duality(ctx, m);
          pass = first && second;
          std::string w = "gamma(M°)=Ann(kappa(M)):" + b(first) + " kappa(M°)=Ann(gamma(M)):" + b(second);
          return pass ? w : w + " " + replay(ideal, m);
        });
      }
    }
  }

  // ---- duality ------------------------------------------------------------
  void duality() {
    check("duality.E", [&](bool& pass) {
      const auto e = injective_hull();
      pass = socle(e).dim() == 1 && e.dim() == alg()->dim() && is_injective_module(e);
      return "dim E=" + std::to_string(e.dim()) + " soc=" + std::to_string(socle(e).dim());
    });
    const int n = trials(100);
    for (int t = 0; t < n; ++t) {
      const auto m = random_module(alg(), rng_);
      const auto nmod = random_module(alg(), rng_);
      const auto u = random_submodule(m, rng_);
      const auto v = submodule_sum(u, random_submodule(m, rng_));
      const auto h = hom_space(m, nmod);
      std::vector<Scalar> coeffs;
      for (std::size_t i = 0; i < h.basis.size(); ++i) coeffs.push_back(random_scalar(alg()->field(), rng_));
      check(idx("duality", t), [&](bool& pass) {
        const auto d = matlis_dual(m);
        const auto ev = evaluation_map(m);
        const bool iso = is_injective(ev) && is_surjective(ev) && is_equivariant(ev, m, matlis_dual(d));
        const bool dims = d.dim() == m.dim();
        const auto [tp, ts] = duality_transfer(ctx_, m);
        const auto au = annihilator_in_dual(m, u);
        const auto av = annihilator_in_dual(m, v);
        const bool complement = au.dim() == m.dim() - u.dim();
        const bool reversal = au.contains(av);
        // Ann_{M°°}(Ann_{M°}(U)) is ev(U)
        const auto back = annihilator_in_dual(d, au);
        const bool galois = back == image(ModuleMap<Scalar>{Matrix<Scalar>(ev.matrix * u.basis().transpose())});
        const auto f = combine(h, coeffs, nmod.dim(), m.dim());
        const auto ff = dual_map(dual_map(f));
        const bool natural = equal_matrices(Matrix<Scalar>(evaluation_map(nmod).matrix * f.matrix),
                                            Matrix<Scalar>(ff.matrix * ev.matrix));
        const auto incl = submodule_as_module(m, u).inclusion;
        const bool exact = rank(dual_map(incl).matrix) == u.dim();
        pass = iso && dims && tp && ts && complement && reversal && galois && natural && exact;
        std::string w = "dim=" + std::to_string(m.dim()) + " ev_iso=" + b(iso) + " transfer=" + b(tp) + b(ts) +
                        " ann_dims=" + b(complement) + " reversal=" + b(reversal) + " galois=" + b(galois) +
                        " natural=" + b(natural) + " dual_onto=" + b(exact);
        return pass ? w : w + " " + replay(ctx_.ideal(), m) + " U=" + format_submodule(u);
      });
    }
    // gamma(M) = I (M :_W I) inside an injective W, kappa(A/B) = (IB :_A I)/B for A free.
    for (int t = 0; t < n; ++t) {
      const auto m = random_module(alg(), rng_);
      check(idx("duality.lower-star", t), [&](bool& pass) {
        const auto emb = embed_into_injective(m);
        const auto low = lower_star(ctx_, m, emb.injective, emb.embedding);
        const auto g = gamma(ctx_, m);
        pass = low == g;
        std::string w = "copies=" + std::to_string(emb.copies) + " dim=" + std::to_string(g.dim());
        return pass ? w : w + " lower=" + format_submodule(low) + " gamma=" + format_submodule(g) + " " + replay(ctx_.ideal(), m);
      });
    }
    for (int t = 0; t < n; ++t) {
      const int rank_a = 1 + static_cast<int>(draw(rng_, 3));
      const auto a = free_module(alg(), rank_a);
      const auto bsub = random_submodule(a, rng_);
      check(idx("duality.upper-star", t), [&](bool& pass) {
        const auto up = upper_star(ctx_, a, bsub);
        const auto q = quotient_module(a, bsub);
        const auto img = image(ModuleMap<Scalar>{Matrix<Scalar>(q.projection.matrix * up.basis().transpose())});
        const auto k = kappa(ctx_, q.module);
        pass = up.contains(bsub) && img == k;
        std::string w = "rank=" + std::to_string(rank_a) + " dimB=" + std::to_string(bsub.dim()) + " dim=" + std::to_string(k.dim());
        return pass ? w : w + " B=" + format_submodule(bsub) + " upper=" + format_submodule(up);
      });
    }
  }

  // ---- closure ------------------------------------------------------------
  void closure() {
    const int n = trials(100);
    for (int t = 0; t < n; ++t) {
      const auto a = random_p_member(ctx_);
      const auto c = random_p_member(ctx_);
      const auto u = random_submodule(a, rng_);
      const auto m = random_module(alg(), rng_);
      const auto k = random_module(alg(), rng_);
      check(idx("closure", t), [&](bool& pass) {
        auto in_p = [&](const Module& x) { return trace(ctx_, x).dim() == x.dim(); };
        const bool members = in_p(a) && in_p(c);
        const bool sums = in_p(direct_sum(a, c).module);
        const bool quotients = in_p(quotient_module(a, u).module);
        const bool mk = in_p(direct_sum(m, k).module);
        const bool summands = !mk || (in_p(m) && in_p(k));
        pass = members && sums && quotients && summands;
        std::string w = "members=" + b(members) + " sum=" + b(sums) + " quotient=" + b(quotients) +
                        " M+N_in_P=" + b(mk) + " summands=" + b(summands);
        return pass ? w : w + " A=" + format_module(a) + " C=" + format_module(c);
      });
    }
    // With I = R and Ann(M) = R, i.e. M = 0: gamma(M) = M, kappa(M) = 0, IM = 0, M[I] = M.
    check("closure.unit-ideal-zero-module", [&](bool& pass) {
      const Ctx ctx(unit_ideal(alg()), true);
      const auto z = zero_module(alg());
      pass = gamma(ctx, z).dim() == 0 && kappa(ctx, z).is_zero() && ideal_times_module(ctx.ideal(), z).is_zero() &&
             annihilator_submodule(z, ctx.ideal()).dim() == z.dim() && ann_ring(z).is_unit();
      return "Ann(0)=R:" + b(ann_ring(z).is_unit());
    });
  }

  const FixtureData<Scalar>& f_;
  const VerifyOptions& opt_;
  Report& report_;
  Ctx ctx_;
  Lcg rng_;
};

}  // namespace

Report run_suite(const Fixture& fixture, const std::string& suite, const VerifyOptions& options) {
  if (suite != "all" && !is_suite(suite)) throw Error(Errc::ValidationError, "unknown suite '" + suite + "'");
  Report report;
  report.suite = suite;
  report.fixture = fixture_name(fixture);
  std::visit(
      [&](const auto& f) {
        using Scalar = typename std::decay_t<decltype(f)>::Scalar;
        SuiteRunner<Scalar> runner(f, options, report);
        if (suite == "all")
          for (const auto& s : suite_names()) runner.run(s);
        else
          runner.run(suite);
      },
      fixture);
  return report;
}

}  // namespace matlis::io
