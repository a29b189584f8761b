#pragma once

// Canonical text for reports and CLI output. Everything printed here is a
// function of canonical data (RREF bases, graded-lex coordinates), so equal
// objects print identically.

#include <sstream>
#include <string>
#include <vector>

#include "matlis/algebra.hpp"
#include "matlis/module.hpp"

namespace matlis::io {

template <typename Scalar>
std::string format_scalar(const Scalar& s) {
  return s.str();
}

/// Matrix entry in the fixture format: an integer, or [num, den] over Q.
template <typename Scalar>
std::string format_entry(const Scalar& s) {
  if constexpr (requires { s.denominator_str(); }) {
    if (s.denominator_str() != "1") return "[" + s.numerator_str() + ", " + s.denominator_str() + "]";
    return s.numerator_str();
  } else {
    return s.str();
  }
}

template <typename Scalar>
std::string format_vector(const Vector<Scalar>& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_scalar(v(i));
  }
  return out + "]";
}

/// Rows of a matrix, each row as a vector.
template <typename Scalar>
std::string format_rows(const Matrix<Scalar>& m) {
  std::string out = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += format_vector<Scalar>(m.row(i).transpose());
  }
  return out + "]";
}

/// Canonical basis rows of a submodule.
template <typename Scalar>
std::string format_submodule(const Submodule<Scalar>& u) {
  return format_rows(u.basis());
}

template <typename Scalar>
std::string format_exponent(const Exponent& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(e[i]);
  }
  return out + "]";
}

/// Algebra element as a term list [[num, den, [e_1..e_n]], ...] in basis order.
template <typename Scalar>
std::string format_element(const Algebra<Scalar>& a, const Vector<Scalar>& v) {
  std::string out = "[";
  bool first = true;
  for (Index i = 0; i < v.size(); ++i) {
    if (is_zero(v(i))) continue;
    if (!first) out += ", ";
    first = false;
    std::string num = v(i).str();
    std::string den = "1";
    if constexpr (requires { v(i).denominator_str(); }) {
      num = v(i).numerator_str();
      den = v(i).denominator_str();
    }
    out += "[" + num + ", " + den + ", " + format_exponent<Scalar>(a.basis()[static_cast<std::size_t>(i)]) + "]";
  }
  return out + "]";
}

/// Ideal as the list of its reduced basis elements.
template <typename Scalar>
std::string format_ideal(const Ideal<Scalar>& i) {
  std::string out = "[";
  for (Index r = 0; r < i.dim(); ++r) {
    if (r) out += ", ";
    out += format_element(i.algebra(), Vector<Scalar>(i.basis().row(r).transpose()));
  }
  return out + "]";
}

/// Monomial in variable names, e.g. x^2*y; "1" for the empty monomial.
inline std::string monomial_text(const std::vector<std::string>& vars, const Exponent& e) {
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

/// Human-readable element, e.g. "x^2 - 1/2*x*y".
template <typename Scalar>
std::string element_text(const Algebra<Scalar>& a, const Vector<Scalar>& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (is_zero(v(i))) continue;
    std::string c = v(i).str();
    const bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const auto mono = monomial_text(a.variables(), a.basis()[static_cast<std::size_t>(i)]);
    if (mono == "1")
      out += c;
    else
      out += (c == "1" ? "" : c + "*") + mono;
  }
  return out.empty() ? "0" : out;
}

/// Ideal as (g_1, ..., g_r) over its reduced basis.
template <typename Scalar>
std::string ideal_text(const Ideal<Scalar>& i) {
  std::string out = "(";
  for (Index r = 0; r < i.dim(); ++r) {
    if (r) out += ", ";
    out += element_text(i.algebra(), Vector<Scalar>(i.basis().row(r).transpose()));
  }
  return out + ")";
}

/// Module in the fixture format: {"dim": d, "actions": [one matrix per variable]}.
template <typename Scalar>
std::string format_module(const FModule<Scalar>& m) {
  std::ostringstream os;
  os << "{\"dim\": " << m.dim() << ", \"actions\": [";
  const auto acts = m.variable_actions();
  for (std::size_t k = 0; k < acts.size(); ++k) {
    if (k) os << ", ";
    os << "[";
    for (Index i = 0; i < m.dim(); ++i) {
      if (i) os << ", ";
      os << "[";
      for (Index j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << format_entry(acts[k](i, j));
      os << "]";
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace matlis::io
