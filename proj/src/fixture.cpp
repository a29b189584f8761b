#include "matlis/io/fixture.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "matlis/duality.hpp"

#ifndef MATLIS_FIXTURE_DIR
#define MATLIS_FIXTURE_DIR "fixtures"
#endif

namespace matlis::io {

namespace {

using json = nlohmann::ordered_json;

// RFC 6901 escaping of one reference token.
std::string escape_key(const std::string& k) {
  std::string out;
  for (char c : k) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Input iterator that publishes how many bytes the parser has consumed.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, const char* base, std::size_t* counter) : p_(p), base_(base), counter_(counter) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (counter_) *counter_ = static_cast<std::size_t>(p_ - base_);
    return *this;
  }
  CountingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const CountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_ = nullptr;
  const char* base_ = nullptr;
  std::size_t* counter_ = nullptr;
};

// Builds the DOM while recording the start offset of every value by JSON pointer.
class PositionedSax {
 public:
  PositionedSax(json& root, const std::string& text, const std::size_t* consumed, std::map<std::string, std::size_t>* offsets)
      : dom_(root, true), text_(text), consumed_(consumed), offsets_(offsets) {}

  bool null() { return scalar([&] { return dom_.null(); }); }
  bool boolean(bool v) { return scalar([&] { return dom_.boolean(v); }); }
  bool number_integer(json::number_integer_t v) { return scalar([&] { return dom_.number_integer(v); }); }
  bool number_unsigned(json::number_unsigned_t v) { return scalar([&] { return dom_.number_unsigned(v); }); }
  bool number_float(json::number_float_t v, const std::string& s) { return scalar([&] { return dom_.number_float(v, s); }); }
  bool string(std::string& v) { return scalar([&] { return dom_.string(v); }); }
  bool binary(json::binary_t& v) { return scalar([&] { return dom_.binary(v); }); }

  bool start_object(std::size_t n) {
    open(*consumed_ > 0 ? *consumed_ - 1 : 0, true);
    return dom_.start_object(n);
  }
  bool key(std::string& k) {
    frames_.back().key = k;
    last_ = *consumed_;
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    last_ = *consumed_;
    return dom_.end_object();
  }
  bool start_array(std::size_t n) {
    open(*consumed_ > 0 ? *consumed_ - 1 : 0, false);
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    last_ = *consumed_;
    return dom_.end_array();
  }
  bool parse_error(std::size_t position, const std::string& /*last_token*/, const nlohmann::detail::exception& ex) {
    error_position = position;
    error_message = ex.what();
    return false;
  }

  std::size_t error_position = 0;
  std::string error_message;

 private:
  struct Frame {
    std::string pointer;
    bool object = false;
    std::string key;
    std::size_t index = 0;
  };

  std::string child_pointer() {
    if (frames_.empty()) return "";
    auto& f = frames_.back();
    if (f.object) return f.pointer + "/" + escape_key(f.key);
    return f.pointer + "/" + std::to_string(f.index++);
  }

  void record(std::size_t offset) { (*offsets_)[current_] = offset; }

  void open(std::size_t offset, bool object) {
    current_ = child_pointer();
    record(offset);
    frames_.push_back(Frame{current_, object, {}, 0});
    last_ = *consumed_;
  }

  template <typename F>
  bool scalar(F&& f) {
    current_ = child_pointer();
    std::size_t start = last_;
    while (start < text_.size() && (std::isspace(static_cast<unsigned char>(text_[start])) || text_[start] == ',' ||
                                    text_[start] == ':'))
      ++start;
    record(start);
    last_ = *consumed_;
    return f();
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
  const std::string& text_;
  const std::size_t* consumed_;
  std::map<std::string, std::size_t>* offsets_;
  std::vector<Frame> frames_;
  std::string current_;
  std::size_t last_ = 0;
};

SourcePos position_of(const std::string& text, std::size_t offset) {
  SourcePos p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

class Document {
 public:
  Document(std::string text, std::string source) : text_(std::move(text)), source_(std::move(source)) {
    std::size_t consumed = 0;
    CountingIterator first(text_.data(), text_.data(), &consumed);
    CountingIterator last(text_.data() + text_.size(), text_.data(), nullptr);
    PositionedSax sax(root_, text_, &consumed, &offsets_);
    if (!json::sax_parse(first, last, &sax)) {
      const auto pos = position_of(text_, sax.error_position > 0 ? sax.error_position - 1 : 0);
      std::string msg = sax.error_message;
      // drop the library prefix "[json.exception.parse_error.101] parse error at line 1, column 2: "
      if (auto c = msg.find(": "); c != std::string::npos) msg = msg.substr(c + 2);
      throw Error(Errc::ParseError, where(pos) + msg);
    }
  }

  const json& root() const { return root_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(Errc code, const std::string& pointer, const std::string& msg) const {
    std::string p = pointer;
    auto it = offsets_.find(p);
    while (it == offsets_.end() && !p.empty()) {
      p = p.substr(0, p.rfind('/'));
      it = offsets_.find(p);
    }
    const auto pos = position_of(text_, it == offsets_.end() ? 0 : it->second);
    throw Error(code, where(pos) + msg + (pointer.empty() ? "" : " (at " + pointer + ")"));
  }

 private:
  std::string where(const SourcePos& p) const {
    return source_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + ": ";
  }

  std::string text_;
  std::string source_;
  json root_;
  std::map<std::string, std::size_t> offsets_;
};

// Typed readers; all shape problems are parse errors at the offending value.

struct Reader {
  const Document& doc;

  const json& at(const json& obj, const std::string& ptr, const std::string& key) const {
    if (!obj.is_object()) doc.fail(Errc::ParseError, ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) doc.fail(Errc::ParseError, ptr, "missing field \"" + key + "\"");
    return *it;
  }

  std::int64_t integer(const json& v, const std::string& ptr) const {
    if (v.is_number_unsigned()) {
      if (v.get<std::uint64_t>() <= static_cast<std::uint64_t>(INT64_MAX))
        return static_cast<std::int64_t>(v.get<std::uint64_t>());
    } else if (v.is_number_integer()) {
      return v.get<std::int64_t>();
    }
    doc.fail(Errc::ParseError, ptr, "expected an integer");
  }

  const json& array(const json& v, const std::string& ptr) const {
    if (!v.is_array()) doc.fail(Errc::ParseError, ptr, "expected an array");
    return v;
  }

  std::string string(const json& v, const std::string& ptr) const {
    if (!v.is_string()) doc.fail(Errc::ParseError, ptr, "expected a string");
    return v.get<std::string>();
  }
};

std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }
std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + escape_key(key); }

template <typename Scalar>
Scalar make_scalar(const Reader& r, const typename Scalar::Field& field, std::int64_t num, std::int64_t den,
                   const std::string& ptr) {
  if (den == 0) r.doc.fail(Errc::ValidationError, ptr, "zero denominator");
  if constexpr (requires { field.p; }) {
    if (den != 1) r.doc.fail(Errc::ValidationError, ptr, "denominators must be 1 over " + field.name());
  }
  return field.make(num, den);
}

template <typename Scalar>
Polynomial<Scalar> read_polynomial(const Reader& r, const typename Scalar::Field& field, int nvars, const json& v,
                                   const std::string& ptr) {
  Polynomial<Scalar> out;
  const auto& terms = r.array(v, ptr);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto tp = child(ptr, t);
    const auto& term = terms[t];
    if (!term.is_array() || term.size() != 3) r.doc.fail(Errc::ParseError, tp, "term must be [numerator, denominator, [exponents]]");
    const auto num = r.integer(term[0], child(tp, 0));
    const auto den = r.integer(term[1], child(tp, 1));
    const auto ep = child(tp, 2);
    const auto& exps = term[2];
    if (!exps.is_array() || static_cast<int>(exps.size()) != nvars)
      r.doc.fail(Errc::ParseError, ep, "exponent tuple must list " + std::to_string(nvars) + " non-negative integers");
    Exponent e;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      const auto x = r.integer(exps[k], child(ep, k));
      if (x < 0 || x > 1000) r.doc.fail(Errc::ParseError, child(ep, k), "exponent out of range");
      e.push_back(static_cast<int>(x));
    }
    out.push_back(Term<Scalar>{make_scalar<Scalar>(r, field, num, den, tp), std::move(e)});
  }
  return out;
}

template <typename Scalar>
Scalar read_entry(const Reader& r, const typename Scalar::Field& field, const json& v, const std::string& ptr) {
  if (v.is_array()) {
    if (v.size() != 2) r.doc.fail(Errc::ParseError, ptr, "matrix entry must be an integer or [numerator, denominator]");
    return make_scalar<Scalar>(r, field, r.integer(v[0], child(ptr, 0)), r.integer(v[1], child(ptr, 1)), ptr);
  }
  return make_scalar<Scalar>(r, field, r.integer(v, ptr), 1, ptr);
}

template <typename Scalar>
Matrix<Scalar> read_matrix(const Reader& r, const typename Scalar::Field& field, Index dim, const json& v,
                           const std::string& ptr) {
  const auto& rows = r.array(v, ptr);
  if (static_cast<Index>(rows.size()) != dim) r.doc.fail(Errc::ParseError, ptr, "expected " + std::to_string(dim) + " rows");
  Matrix<Scalar> m(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const auto rp = child(ptr, static_cast<std::size_t>(i));
    const auto& row = r.array(rows[static_cast<std::size_t>(i)], rp);
    if (static_cast<Index>(row.size()) != dim) r.doc.fail(Errc::ParseError, rp, "expected " + std::to_string(dim) + " entries");
    for (Index j = 0; j < dim; ++j)
      m(i, j) = read_entry<Scalar>(r, field, row[static_cast<std::size_t>(j)], child(rp, static_cast<std::size_t>(j)));
  }
  return m;
}

template <typename Scalar>
FModule<Scalar> read_module(const Reader& r, const FixtureData<Scalar>& f, const json& v, const std::string& ptr) {
  const auto& alg = *f.algebra;
  const auto& field = alg.field();
  const int nv = alg.num_variables();
  if (!v.is_object()) r.doc.fail(Errc::ParseError, ptr, "module must be an object");
  try {
    if (v.contains("presentation")) {
      const auto pp = child(ptr, "presentation");
      const auto& p = v["presentation"];
      const auto rank = r.integer(r.at(p, pp, "rank"), child(pp, "rank"));
      if (rank < 0 || rank > 64) r.doc.fail(Errc::ValidationError, child(pp, "rank"), "rank out of range");
      const auto free = free_module(f.algebra, static_cast<int>(rank));
      const auto rp = child(pp, "relations");
      const auto& rels = r.array(r.at(p, pp, "relations"), rp);
      std::vector<Vector<Scalar>> cols;
      for (std::size_t j = 0; j < rels.size(); ++j) {
        const auto cp = child(rp, j);
        const auto& col = r.array(rels[j], cp);
        if (static_cast<std::int64_t>(col.size()) != rank)
          r.doc.fail(Errc::ParseError, cp, "relation must list " + std::to_string(rank) + " ring elements");
        Vector<Scalar> c(free.dim());
        for (std::size_t g = 0; g < col.size(); ++g)
          c.segment(static_cast<Index>(g) * alg.dim(), alg.dim()) =
              alg.element(read_polynomial<Scalar>(r, field, nv, col[g], child(cp, g)));
        cols.push_back(std::move(c));
      }
      return quotient_module(free, generated_submodule(free, cols)).module;
    }
    const auto dim = r.integer(r.at(v, ptr, "dim"), child(ptr, "dim"));
    if (dim < 0 || dim > 4096) r.doc.fail(Errc::ValidationError, child(ptr, "dim"), "dimension out of range");
    const auto ap = child(ptr, "actions");
    const auto& acts = r.array(r.at(v, ptr, "actions"), ap);
    if (static_cast<int>(acts.size()) != nv)
      r.doc.fail(Errc::ParseError, ap, "expected one action matrix per variable (" + std::to_string(nv) + ")");
    std::vector<Matrix<Scalar>> mats;
    for (std::size_t k = 0; k < acts.size(); ++k) mats.push_back(read_matrix<Scalar>(r, field, dim, acts[k], child(ap, k)));
    return FModule<Scalar>::from_variable_actions(f.algebra, dim, mats);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::ValidationError) {
      if (std::string(e.what()).find(r.doc.source() + ":") != std::string::npos) throw;
    }
    r.doc.fail(Errc::ValidationError, ptr, e.what());
  }
}

template <typename Scalar>
FixtureData<Scalar> build_fixture(const Reader& r, typename Scalar::Field field) {
  const auto& root = r.doc.root();
  FixtureData<Scalar> f;
  f.source = r.doc.source();
  f.name = root.contains("name") ? r.string(root["name"], "/name")
                                 : std::filesystem::path(f.source).stem().string();
  f.presentation.field = field;
  const auto& vars = r.array(r.at(root, "", "vars"), "/vars");
  if (vars.empty()) r.doc.fail(Errc::ValidationError, "/vars", "at least one variable is required");
  for (std::size_t i = 0; i < vars.size(); ++i) f.presentation.variables.push_back(r.string(vars[i], child("/vars", i)));
  const int nv = static_cast<int>(vars.size());
  const auto& rels = r.array(r.at(root, "", "relations"), "/relations");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const auto p = child("/relations", i);
    auto poly = read_polynomial<Scalar>(r, field, nv, rels[i], p);
    for (std::size_t t = 0; t < poly.size(); ++t)
      if (total_degree(poly[t].exponent) == 0 && !is_zero(poly[t].coeff))
        r.doc.fail(Errc::ValidationError, child(p, t), "residue field: relation has a term of degree 0");
    f.presentation.relations.push_back(std::move(poly));
  }
  const auto n = r.integer(r.at(root, "", "nilpotency"), "/nilpotency");
  if (n < 1 || n > 64) r.doc.fail(Errc::ValidationError, "/nilpotency", "nilpotency bound must lie in 1..64");
  f.presentation.nilpotency = static_cast<int>(n);
  try {
    f.algebra = Algebra<Scalar>::build(f.presentation);
  } catch (const Error& e) {
    r.doc.fail(e.code() == Errc::ValidationError ? Errc::ValidationError : e.code(), "/relations", e.what());
  }
  if (root.contains("ideal")) {
    const auto& gens = r.array(root["ideal"], "/ideal");
    for (std::size_t i = 0; i < gens.size(); ++i)
      f.ideal_generators.push_back(
          f.algebra->element(read_polynomial<Scalar>(r, field, nv, gens[i], child("/ideal", i))));
  }
  f.ideal = ideal_from_generators(f.algebra, f.ideal_generators);
  if (root.contains("seed")) {
    const auto s = r.integer(root["seed"], "/seed");
    if (s < 0) r.doc.fail(Errc::ValidationError, "/seed", "seed must be non-negative");
    f.seed = static_cast<std::uint64_t>(s);
  }
  if (root.contains("modules")) {
    const auto& mods = root["modules"];
    if (!mods.is_object()) r.doc.fail(Errc::ParseError, "/modules", "expected an object of named modules");
    for (auto it = mods.begin(); it != mods.end(); ++it) {
      const auto p = child("/modules", it.key());
      if (it.key().empty() || it.key().find('^') != std::string::npos)
        r.doc.fail(Errc::ValidationError, p, "module names must be non-empty and must not contain '^'");
      f.modules.emplace_back(it.key(), read_module(r, f, it.value(), p));
    }
  }
  return f;
}

}  // namespace

Fixture parse_fixture(const std::string& text, const std::string& source) {
  const Document doc(text, source);
  const Reader r{doc};
  const auto& root = doc.root();
  if (!root.is_object()) doc.fail(Errc::ParseError, "", "fixture must be a JSON object");
  const auto field = r.string(r.at(root, "", "field"), "/field");
  if (field == "Q") return build_fixture<Rational>(r, RationalField{});
  if (field.rfind("Fp:", 0) == 0) {
    const auto digits = field.substr(3);
    if (digits.empty() || digits.size() > 10 || digits.find_first_not_of("0123456789") != std::string::npos)
      doc.fail(Errc::ValidationError, "/field", "field must be \"Q\" or \"Fp:<prime>\"");
    const auto p = std::stoull(digits);
    if (p >= (1ULL << 31) || !is_prime(p)) doc.fail(Errc::ValidationError, "/field", "modulus must be a prime below 2^31");
    return build_fixture<Fp>(r, PrimeField{static_cast<std::uint32_t>(p)});
  }
  doc.fail(Errc::ValidationError, "/field", "field must be \"Q\" or \"Fp:<prime>\"");
}

std::string resolve_fixture_path(const std::string& ref) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(ref)) return ref;
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("MATLIS_LAB_FIXTURE_DIR"); env && *env) dirs.emplace_back(env);
  dirs.emplace_back(MATLIS_FIXTURE_DIR);
  for (const auto& d : dirs) {
    for (const auto& candidate : {d / ref, d / (ref + ".json")})
      if (fs::is_regular_file(candidate)) return candidate.string();
  }
  throw Error(Errc::ParseError, "fixture not found: " + ref);
}

Fixture load_fixture(const std::string& ref) {
  const auto path = resolve_fixture_path(ref);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str(), path);
}

const std::string& fixture_name(const Fixture& f) {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, f);
}

template <typename Scalar>
FModule<Scalar> resolve_module(const FixtureData<Scalar>& f, const std::string& ref) {
  std::string base = ref;
  int power = 1;
  if (const auto caret = ref.rfind('^'); caret != std::string::npos) {
    const auto digits = ref.substr(caret + 1);
    if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::UnknownModuleRef, "bad power in module reference '" + ref + "'");
    base = ref.substr(0, caret);
    power = std::stoi(digits);
    if (power < 1) throw Error(Errc::UnknownModuleRef, "module powers start at 1: '" + ref + "'");
  }
  FModule<Scalar> m;
  if (base == "regular" || base == "R") {
    m = regular_module(f.algebra);
  } else if (base == "E") {
    m = matlis_dual(regular_module(f.algebra));
  } else if (base == "k") {
    m = residue_field(f.algebra);
  } else if (base == "zero") {
    m = zero_module(f.algebra);
  } else if (base == "I") {
    m = ideal_as_module(f.ideal);
  } else if (base == "I-dual") {
    m = matlis_dual(ideal_as_module(f.ideal));
  } else {
    bool found = false;
    for (const auto& [name, mod] : f.modules)
      if (name == base) {
        m = mod;
        found = true;
      }
    if (!found) throw Error(Errc::UnknownModuleRef, "no module named '" + base + "' in fixture " + f.name);
  }
  return power == 1 ? m : direct_power(m, power);
}

template <typename Scalar>
std::vector<std::string> module_refs(const FixtureData<Scalar>& f) {
  std::vector<std::string> out{"regular", "E", "k", "I", "I-dual"};
  for (const auto& [name, mod] : f.modules) out.push_back(name);
  return out;
}

template FModule<Rational> resolve_module(const FixtureData<Rational>&, const std::string&);
template FModule<Fp> resolve_module(const FixtureData<Fp>&, const std::string&);
template std::vector<std::string> module_refs(const FixtureData<Rational>&);
template std::vector<std::string> module_refs(const FixtureData<Fp>&);

}  // namespace matlis::io
