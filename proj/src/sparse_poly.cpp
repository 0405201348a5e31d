#include "sparse_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace aee {

SparsePoly::SparsePoly(const Rational& c) {
  if (!c.is_zero()) t_.emplace(Monomial{}, c);
}

SparsePoly SparsePoly::symbol(const SymbolId& s, int units) {
  Monomial m;
  m.mul(s, units);
  return term(m, Rational(1));
}

SparsePoly SparsePoly::term(const Monomial& m, const Rational& c) {
  SparsePoly p;
  p.add_term(m, c);
  return p;
}

void SparsePoly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [m, v] : t_) v *= c;
  return *this;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r(*this);
  for (auto& [m, v] : r.t_) v = -v;
  return r;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) r.add_term(ma.mul(mb), ca * cb);
  return r;
}

SparsePoly SparsePoly::mul_monomial(const Monomial& m, const Rational& c) const {
  SparsePoly r;
  for (const auto& [mo, co] : t_) r.add_term(mo.mul(m), co * c);
  return r;
}

bool SparsePoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_constant());
}

Rational SparsePoly::constant_value() const {
  if (t_.empty()) return Rational(0);
  if (!is_constant()) throw std::invalid_argument("poly: not a constant");
  return t_.begin()->second;
}

SparsePoly SparsePoly::substitute(const SymbolId& sym, const Rational& value) const {
  SparsePoly r;
  for (const auto& [m, c] : t_) {
    int e = m.exp_of(sym);
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    if (sym.kind == Sym::A) {
      if (e % 2 != 0)
        throw std::invalid_argument("poly: substituting A across a half-integer power");
      e /= 2;
    }
    Monomial stripped;
    for (const auto& f : m.factors()) {
      if (f.sym == sym) continue;
      if (f.sym.kind == Sym::A)
        stripped.mul_A_halves(f.exp);
      else
        stripped.mul(f.sym, f.exp);
    }
    r.add_term(stripped, c * value.pow(e));
  }
  return r;
}

SparsePoly SparsePoly::substitute(const SymbolId& sym, const SparsePoly& p) const {
  SparsePoly r;
  std::map<int, SparsePoly> pows;
  for (const auto& [m, c] : t_) {
    int e = m.exp_of(sym);
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    if (sym.kind == Sym::A) {
      if (e % 2 != 0)
        throw std::invalid_argument("poly: substituting A across a half-integer power");
      e /= 2;
    }
    if (e < 0) throw std::invalid_argument("poly: polynomial substitution into negative power");
    Monomial stripped;
    for (const auto& f : m.factors()) {
      if (f.sym == sym) continue;
      if (f.sym.kind == Sym::A)
        stripped.mul_A_halves(f.exp);
      else
        stripped.mul(f.sym, f.exp);
    }
    auto it = pows.find(e);
    if (it == pows.end()) it = pows.emplace(e, pow(p, e)).first;
    r += it->second.mul_monomial(stripped, c);
  }
  return r;
}

SparsePoly SparsePoly::substitute_sqrt_A(const Rational& s) const {
  SparsePoly r;
  for (const auto& [m, c] : t_) {
    int h = m.exp_of(sym_A());
    if (h == 0) {
      r.add_term(m, c);
      continue;
    }
    Monomial stripped;
    for (const auto& f : m.factors()) {
      if (f.sym.kind == Sym::A) continue;
      stripped.mul(f.sym, f.exp);
    }
    r.add_term(stripped, c * s.pow(h));
  }
  return r;
}

double SparsePoly::eval(const NumericBindings& b) const {
  double sum = 0.0;
  for (const auto& [m, c] : t_) {
    double v = c.to_double();
    for (const auto& f : m.factors()) {
      auto it = b.find(f.sym);
      if (it == b.end())
        throw std::invalid_argument("poly: no binding for " + symbol_name(f.sym));
      if (f.sym.kind == Sym::A) {
        if (it->second <= 0.0)
          throw std::invalid_argument("poly: A must be positive");
        v *= std::pow(std::sqrt(it->second), f.exp);
      } else {
        v *= std::pow(it->second, f.exp);
      }
    }
    sum += v;
  }
  return sum;
}

Rational SparsePoly::eval_exact(const ExactBindings& b,
                                const std::optional<Rational>& sqrt_a) const {
  Rational sum(0);
  for (const auto& [m, c] : t_) {
    Rational v = c;
    for (const auto& f : m.factors()) {
      if (f.sym.kind == Sym::A) {
        if (!sqrt_a) throw std::invalid_argument("poly: exact eval needs sqrt(A)");
        v *= sqrt_a->pow(f.exp);
        continue;
      }
      auto it = b.find(f.sym);
      if (it == b.end())
        throw std::invalid_argument("poly: no binding for " + symbol_name(f.sym));
      v *= it->second.pow(f.exp);
    }
    sum += v;
  }
  return sum;
}

void SparsePoly::for_each_term(
    const std::function<void(const Monomial&, const Rational&)>& fn) const {
  for (const auto& [m, c] : t_) fn(m, c);
}

Rational SparsePoly::content() const {
  Rational g(0);
  for (const auto& [m, c] : t_) g = rational_gcd(g, c);
  return g;
}

std::string SparsePoly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : t_) {
    bool neg = c.sign() < 0;
    Rational mag = c.abs();
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string coeff;
    if (!(mag.is_one() && !m.is_constant())) {
      coeff = mag.is_integer() ? mag.str() : "(" + mag.str() + ")";
    }
    if (m.is_constant()) {
      out += coeff;
    } else if (coeff.empty()) {
      out += m.str();
    } else {
      out += coeff + "*" + m.str();
    }
  }
  return out;
}

SparsePoly pow(const SparsePoly& p, int e) {
  if (e < 0) throw std::invalid_argument("poly: negative power");
  SparsePoly r = SparsePoly::constant(Rational(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

}  // namespace aee
