#include "symbols.hpp"

#include <algorithm>
#include <stdexcept>

namespace aee {

SymbolId sym_A() { return {Sym::A, 0}; }
SymbolId sym_B(Sample s) { return {s == Sample::X ? Sym::Bx : Sym::By, 0}; }
SymbolId sym_b(Sample s) { return {s == Sample::X ? Sym::bx : Sym::by, 0}; }
SymbolId sym_sigma2(Sample s) { return {s == Sample::X ? Sym::Sigma2X : Sym::Sigma2Y, 0}; }

SymbolId sym_mu(Sample s, int j) {
  if (j < 2) throw std::invalid_argument("moment symbol needs order >= 2");
  return {s == Sample::X ? Sym::MuX : Sym::MuY, j};
}

SymbolId sym_lambda(int j) {
  if (j < 3) throw std::invalid_argument("lambda symbol needs order >= 3");
  return {Sym::Lambda, j};
}

std::string symbol_name(const SymbolId& s) {
  switch (s.kind) {
    case Sym::A: return "A";
    case Sym::Bx: return "B_x";
    case Sym::By: return "B_y";
    case Sym::bx: return "b_x";
    case Sym::by: return "b_y";
    case Sym::Sigma2X: return "sigma2_x";
    case Sym::Sigma2Y: return "sigma2_y";
    case Sym::MuX: return "mu_x[" + std::to_string(s.order) + "]";
    case Sym::MuY: return "mu_y[" + std::to_string(s.order) + "]";
    case Sym::Lambda: return "l" + std::to_string(s.order);
  }
  return "?";
}

void Monomial::insert(const SymbolId& s, int exp_delta) {
  if (exp_delta == 0) return;
  auto it = std::lower_bound(f_.begin(), f_.end(), s,
                             [](const Factor& f, const SymbolId& k) { return f.sym < k; });
  if (it != f_.end() && it->sym == s) {
    it->exp += exp_delta;
    if (it->exp == 0) f_.erase(it);
  } else {
    f_.insert(it, {s, exp_delta});
  }
}

Monomial& Monomial::mul(const SymbolId& s, int units) {
  insert(s, s.kind == Sym::A ? 2 * units : units);
  return *this;
}

Monomial& Monomial::mul_A_halves(int halves) {
  insert(sym_A(), halves);
  return *this;
}

int Monomial::exp_of(const SymbolId& s) const {
  auto it = std::lower_bound(f_.begin(), f_.end(), s,
                             [](const Factor& f, const SymbolId& k) { return f.sym < k; });
  if (it != f_.end() && it->sym == s) return it->exp;
  return 0;
}

Monomial Monomial::mul(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() || b != o.f_.end()) {
    if (b == o.f_.end() || (a != f_.end() && a->sym < b->sym)) {
      r.f_.push_back(*a++);
    } else if (a == f_.end() || b->sym < a->sym) {
      r.f_.push_back(*b++);
    } else {
      int e = a->exp + b->exp;
      if (e != 0) r.f_.push_back({a->sym, e});
      ++a;
      ++b;
    }
  }
  return r;
}

std::string Monomial::str() const {
  if (f_.empty()) return "1";
  std::string out;
  for (const auto& f : f_) {
    if (!out.empty()) out += "*";
    out += symbol_name(f.sym);
    if (f.sym.kind == Sym::A) {
      if (f.exp == 2) continue;  // plain "A"
      if (f.exp % 2 == 0) {
        out += "^" + std::to_string(f.exp / 2);
      } else {
        out += "^(" + std::to_string(f.exp) + "/2)";
      }
    } else if (f.exp != 1) {
      out += "^" + std::to_string(f.exp);
    }
  }
  return out;
}

}  // namespace aee
