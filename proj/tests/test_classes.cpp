#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace matlis;
using namespace testing;

namespace {

// Values from tests/oracles/derive.py (Groebner normal forms, independent
// elimination): dim M, dim gamma, dim kappa, dim Hom(I, M), dim Hom(M, I°), P, S.
struct Row {
  const char* ring;
  const char* module;
  Index dim, gamma, kappa, hom_in, hom_out;
  bool p, s;
};

template <typename S>
FModule<S> named_module(const ClassContext<S>& ctx, const std::string& name) {
  const auto& a = ctx.parent();
  if (name == "regular") return regular_module(a);
  if (name == "E") return injective_hull_of_residue_field(a);
  if (name == "k") return residue_field(a);
  if (name == "I") return ctx.ideal_module();
  if (name == "R-mod-x") return cyclic(a, {a->num_variables() == 1 ? std::vector<int>{1} : std::vector<int>{1, 0}});
  if (name == "R-mod-x2") return cyclic(a, {{2}});
  if (name == "R-mod-x3") return cyclic(a, {{3}});
  if (name == "R-mod-xy") return cyclic(a, {{1, 1}});
  throw std::invalid_argument(name);
}

template <typename S>
void check_rows(const ClassContext<S>& ctx, const std::vector<Row>& rows, const char* ring_name) {
  for (const auto& row : rows) {
    if (std::string(row.ring) != ring_name) continue;
    CAPTURE(row.ring);
    CAPTURE(row.module);
    const auto m = named_module(ctx, row.module);
    CHECK(m.dim() == row.dim);
    CHECK(gamma(ctx, m).dim() == row.gamma);
    CHECK(kappa(ctx, m).dim() == row.kappa);
    CHECK(hom_space(ctx.ideal_module(), m).dim() == row.hom_in);
    CHECK(hom_space(m, ctx.ideal_dual()).dim() == row.hom_out);
    CHECK(is_p_member(ctx, m) == row.p);
    CHECK(is_s_member(ctx, m) == row.s);
  }
}

const std::vector<Row> kOracle = {
    {"R3 (x)", "regular", 3, 2, 1, 2, 2, false, false},
    {"R3 (x)", "E", 3, 2, 1, 2, 2, false, false},
    {"R3 (x)", "k", 1, 1, 0, 1, 1, true, true},
    {"R3 (x)", "R-mod-x2", 2, 2, 0, 2, 2, true, true},
    {"R3 (x)", "I", 2, 2, 0, 2, 2, true, true},
    {"R4 (x)", "regular", 4, 3, 1, 3, 3, false, false},
    {"R4 (x)", "E", 4, 3, 1, 3, 3, false, false},
    {"R4 (x)", "k", 1, 1, 0, 1, 1, true, true},
    {"R4 (x)", "R-mod-x2", 2, 2, 0, 2, 2, true, true},
    {"R4 (x)", "R-mod-x3", 3, 3, 0, 3, 3, true, true},
    {"R4 (x^3)", "R-mod-x2", 2, 1, 1, 1, 1, false, false},
    {"R4 (x^3)", "regular", 4, 1, 3, 1, 1, false, false},
    {"KXY (x,y)", "regular", 4, 3, 1, 3, 3, false, false},
    {"KXY (x,y)", "E", 4, 3, 1, 3, 3, false, false},
    {"KXY (x,y)", "k", 1, 1, 0, 2, 2, true, true},
    {"KXY (x,y)", "R-mod-xy", 3, 2, 0, 4, 3, false, true},
    {"KXY (x,y)", "R-mod-x", 2, 1, 1, 2, 2, false, false},
    {"KXY (x,y)", "I", 3, 3, 1, 3, 4, true, false},
    {"KXY (x)", "regular", 4, 2, 2, 2, 2, false, false},
    {"KXY (x)", "E", 4, 2, 2, 2, 2, false, false},
    {"KXY (x)", "R-mod-x", 2, 2, 0, 2, 2, true, true},
    {"V2 (x)", "regular", 3, 2, 2, 2, 1, false, false},
    {"V2 (x)", "E", 3, 1, 1, 1, 2, false, false},
    {"V2 (x)", "k", 1, 1, 0, 1, 1, true, true},
    {"V2 (x)", "R-mod-x", 2, 1, 1, 1, 1, false, false},
};

// ---------------------------------------------------------------------------
// Brute force over a small prime field: enumerate every k-linear map, keep
// the equivariant ones, and take the span of images / common kernel.

using IntMat = std::vector<std::vector<long>>;

long mod(long v, long p) { return ((v % p) + p) % p; }

IntMat to_int(const Matrix<Fp>& m, long p) {
  IntMat out(static_cast<std::size_t>(m.rows()), std::vector<long>(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mod(m(i, j).residue(), p);
  return out;
}

IntMat mul(const IntMat& a, const IntMat& b, std::size_t inner, std::size_t rows, std::size_t cols, long p) {
  IntMat c(rows, std::vector<long>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < cols; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
  return c;
}

std::size_t rank_mod(std::vector<std::vector<long>> rows, std::size_t ncols, long p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    long inv = 1;
    while (rows[r][c] * inv % p != 1) ++inv;
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c]) {
        const long f = rows[i][c];
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = mod(rows[i][j] - f * rows[r][j], p);
      }
    ++r;
  }
  return r;
}

struct Brute {
  std::vector<std::vector<long>> image_rows;   // columns of all maps I -> M
  std::vector<std::vector<long>> kernel_rows;  // rows of all maps M -> I°
};

/// All equivariant X: src -> dst (dst x src) over F_p.
std::vector<IntMat> all_maps(const std::vector<IntMat>& src, std::size_t ds, const std::vector<IntMat>& dst,
                             std::size_t dd, long p) {
  std::vector<IntMat> out;
  const std::size_t cells = ds * dd;
  std::size_t total = 1;
  for (std::size_t c = 0; c < cells; ++c) total *= static_cast<std::size_t>(p);
  for (std::size_t code = 0; code < total; ++code) {
    IntMat x(dd, std::vector<long>(ds));
    std::size_t c = code;
    for (std::size_t i = 0; i < dd; ++i)
      for (std::size_t j = 0; j < ds; ++j, c /= static_cast<std::size_t>(p)) x[i][j] = static_cast<long>(c % static_cast<std::size_t>(p));
    bool ok = true;
    for (std::size_t v = 0; v < src.size() && ok; ++v)
      ok = mul(x, src[v], ds, dd, ds, p) == mul(dst[v], x, dd, dd, ds, p);
    if (ok) out.push_back(std::move(x));
  }
  return out;
}

std::vector<IntMat> actions(const FModule<Fp>& m, long p) {
  std::vector<IntMat> out;
  for (const auto& a : m.variable_actions()) out.push_back(to_int(a, p));
  return out;
}

std::vector<std::vector<long>> rows_of(const Matrix<Fp>& m, long p) { return to_int(m, p); }

/// dim of span(a) + span(b) - both must equal dim a = dim b for equality.
bool same_span(std::vector<std::vector<long>> a, const std::vector<std::vector<long>>& b, std::size_t n, long p) {
  const auto ra = rank_mod(a, n, p);
  const auto rb = rank_mod(b, n, p);
  a.insert(a.end(), b.begin(), b.end());
  return ra == rb && rank_mod(a, n, p) == ra;
}

void brute_compare(const ClassContext<Fp>& ctx, const FModule<Fp>& m, long p) {
  const auto& im = ctx.ideal_module();
  const auto& id = ctx.ideal_dual();
  const std::size_t di = static_cast<std::size_t>(im.dim());
  const std::size_t dm = static_cast<std::size_t>(m.dim());
  // gamma
  std::vector<std::vector<long>> img;
  for (const auto& x : all_maps(actions(im, p), di, actions(m, p), dm, p))
    for (std::size_t j = 0; j < di; ++j) {
      std::vector<long> col(dm);
      for (std::size_t i = 0; i < dm; ++i) col[i] = x[i][j];
      img.push_back(col);
    }
  const auto g = gamma(ctx, m);
  CHECK(same_span(rows_of(g.basis(), p), img, dm, p));
  // kappa: common kernel of all maps M -> I°
  std::vector<std::vector<long>> stacked;
  for (const auto& x : all_maps(actions(m, p), dm, actions(id, p), di, p))
    for (const auto& r : x) stacked.push_back(r);
  const auto k = kappa(ctx, m);
  const std::size_t ker_dim = dm - (stacked.empty() ? 0 : rank_mod(stacked, dm, p));
  CHECK(static_cast<std::size_t>(k.dim()) == ker_dim);
  // kappa is annihilated by every row
  for (const auto& r : stacked)
    for (Index b = 0; b < k.dim(); ++b) {
      long s = 0;
      for (std::size_t i = 0; i < dm; ++i) s += r[i] * mod(k.basis()(b, static_cast<Index>(i)).residue(), p);
      CHECK(mod(s, p) == 0);
    }
}

}  // namespace

TEST_CASE("frozen oracle values") {
  {
    const auto a = r3();
    check_rows(ClassContext<Q>(ideal(a, {{1}}), true), kOracle, "R3 (x)");
    check_rows(ClassContext<Q>(ideal(a, {{1}}), false), kOracle, "R3 (x)");
  }
  {
    const auto a = r4();
    check_rows(ClassContext<Fp>(ideal(a, {{1}}), true), kOracle, "R4 (x)");
    check_rows(ClassContext<Fp>(ideal(a, {{3}}), true), kOracle, "R4 (x^3)");
    check_rows(ClassContext<Fp>(ideal(a, {{3}}), false), kOracle, "R4 (x^3)");
  }
  {
    const auto a = kxy();
    check_rows(ClassContext<Q>(ideal(a, {{1, 0}, {0, 1}}), true), kOracle, "KXY (x,y)");
    check_rows(ClassContext<Q>(ideal(a, {{1, 0}, {0, 1}}), false), kOracle, "KXY (x,y)");
    check_rows(ClassContext<Q>(ideal(a, {{1, 0}}), true), kOracle, "KXY (x)");
  }
  {
    const auto a = v2();
    check_rows(ClassContext<Q>(ideal(a, {{1, 0}}), true), kOracle, "V2 (x)");
    check_rows(ClassContext<Q>(ideal(a, {{1, 0}}), false), kOracle, "V2 (x)");
  }
}

TEST_CASE("explicit trace and reject on k[x]/(x^3)") {
  const auto a = r3();
  const ClassContext<Q> ctx(ideal(a, {{1}}), true);
  const auto r = regular_module(a);
  CHECK(gamma(ctx, r) == Submodule<Q>(ideal(a, {{1}}).space()));
  CHECK(kappa(ctx, r) == Submodule<Q>(ideal(a, {{2}}).space()));
  // unit ideal: everything is in P, nothing nonzero is in S
  const ClassContext<Q> unit(unit_ideal(a));
  CHECK(is_p_member(unit, r));
  CHECK(kappa(unit, r).is_zero());
  // zero ideal: gamma = 0, kappa = M
  const ClassContext<Q> zero(zero_ideal(a));
  CHECK(gamma(zero, r).is_zero());
  CHECK(kappa(zero, r).dim() == 3);
  CHECK(is_p_member(zero, zero_module(a)));
  CHECK(is_s_member(zero, zero_module(a)));
}

TEST_CASE("brute force over F_2 and F_3") {
  struct Case {
    AlgebraPtr<Fp> a;
    std::vector<std::vector<int>> ideal;
    long p;
  };
  const auto f2x = truncated<Fp>(PrimeField{2}, 3);
  const auto f2xy = ring<Fp>(PrimeField{2}, {mono<Fp>({2, 0}), mono<Fp>({0, 2})}, 2, 3);
  const auto f2v = ring<Fp>(PrimeField{2}, {mono<Fp>({2, 0}), mono<Fp>({1, 1}), mono<Fp>({0, 2})}, 2, 2);
  const auto f3x = truncated<Fp>(PrimeField{3}, 3);
  const std::vector<Case> cases = {
      {f2x, {{1}}, 2},       {f2x, {{2}}, 2},          {f2xy, {{1, 0}}, 2}, {f2xy, {{1, 0}, {0, 1}}, 2},
      {f2xy, {{1, 1}}, 2},   {f2v, {{1, 0}}, 2},       {f2v, {{1, 0}, {0, 1}}, 2},
      {f3x, {{1}}, 3},
  };
  Lcg rng(99);
  int compared = 0;
  for (const auto& c : cases) {
    const auto i = ideal(c.a, c.ideal);
    const ClassContext<Fp> ctx(i, true);
    const ClassContext<Fp> fast(i, false);
    std::vector<FModule<Fp>> mods = {regular_module(c.a), injective_hull_of_residue_field(c.a), residue_field(c.a),
                                     ctx.ideal_module(), ctx.ideal_dual()};
    for (int t = 0; t < 12; ++t) mods.push_back(random_module(c.a, rng));
    std::size_t budget = c.p == 2 ? 16 : 9;
    for (const auto& m : mods) {
      if (static_cast<std::size_t>(m.dim() * i.dim()) > budget) continue;
      brute_compare(ctx, m, c.p);
      CHECK(gamma(fast, m) == gamma(ctx, m));
      CHECK(kappa(fast, m) == kappa(ctx, m));
      ++compared;
    }
  }
  CHECK(compared > 60);
}

TEST_CASE_TEMPLATE_DEFINE("class laws", S, class_laws) {
  std::vector<AlgebraPtr<S>> rings;
  if constexpr (std::is_same_v<S, Q>) {
    rings = {r3(), kxy(), v2()};
  } else {
    rings = {r4(), ring<Fp>(PrimeField{2}, {mono<Fp>({2, 0}), mono<Fp>({0, 2})}, 2, 3)};
  }
  Lcg rng(31);
  for (const auto& a : rings) {
    for (int t = 0; t < 30; ++t) {
      const ClassContext<S> ctx(random_ideal(a, rng), true);
      const auto m = random_module(a, rng);
      const auto g = gamma(ctx, m);
      const auto k = kappa(ctx, m);
      // gamma(M) in P, M/kappa(M) in S
      CHECK(is_p_member(ctx, submodule_as_module(m, g).module));
      CHECK(is_s_member(ctx, quotient_module(m, k).module));
      // duality: gamma(M°) = Ann(kappa M), kappa(M°) = Ann(gamma M)
      const auto d = matlis_dual(m);
      CHECK(gamma(ctx, d) == annihilator_in_dual(m, k));
      CHECK(kappa(ctx, d) == annihilator_in_dual(m, g));
      const auto [tp, ts] = duality_transfer(ctx, m);
      CHECK(tp);
      CHECK(ts);
      // idempotent
      CHECK(gamma(ctx, submodule_as_module(m, g).module).dim() == g.dim());
      CHECK(kappa(ctx, quotient_module(m, k).module).is_zero());
    }
  }
}
TEST_CASE_TEMPLATE_INVOKE(class_laws, Q, Fp);

TEST_CASE("epimorphism criterion") {
  const auto a = r3();
  CHECK(epi_onto_r_mod_ann_exists(ClassContext<Q>(ideal(a, {{1}}))));
  CHECK_FALSE(submodule_counterexample(ClassContext<Q>(ideal(a, {{1}}))).has_value());

  const auto b = kxy();
  const ClassContext<Q> ctx(maximal_ideal(b));
  CHECK_FALSE(epi_onto_r_mod_ann_exists(ctx));
  const auto ce = submodule_counterexample(ctx);
  REQUIRE(ce.has_value());
  CHECK(ce->ideal_generators.size() == 2);
  CHECK(ce->ambient.dim() == 6);
  CHECK(ce->submodule.dim() == 3);
  CHECK(ce->ambient_in_p);
  CHECK_FALSE(ce->submodule_in_p);
}

TEST_CASE("uniserial formula") {
  const auto a = r4();
  const ClassContext<Fp> ctx(ideal(a, {{1}}));
  const auto f = uniserial_s(ctx, regular_module(a));
  CHECK(f.length == 4);
  CHECK(f.s == 3);
  CHECK(f.gamma == gamma(ctx, regular_module(a)));
  CHECK(f.kappa == kappa(ctx, regular_module(a)));
  const auto [g, k] = uniserial_duality(ctx, regular_module(a));
  CHECK(g);
  CHECK(k);
  CHECK_THROWS_WITH_AS(uniserial_s(ClassContext<Q>(maximal_ideal(kxy())), regular_module(kxy())),
                       doctest::Contains("NotUniserial"), Error);
}

TEST_CASE("star operators") {
  const auto a = kxy();
  const ClassContext<Q> ctx(maximal_ideal(a));
  const auto m = cyclic(a, {{1, 1}});
  const auto emb = embed_into_injective(m);
  CHECK(is_injective_module(emb.injective));
  CHECK(is_injective(emb.embedding));
  const auto low = lower_star(ctx, m, emb.injective, emb.embedding);
  CHECK(gamma(ctx, m).contains(low));
  const auto r = regular_module(a);
  CHECK_THROWS_AS(lower_star(ctx, m, m, ModuleMap<Q>{Matrix<Q>::Identity(3, 3)}), Error);
  const auto up = upper_star(ctx, r, socle(r));
  CHECK(up.contains(socle(r)));
  CHECK_THROWS_AS(upper_star(ctx, m, whole_module(m)), Error);
}
