#include "expansion.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "cumulant_recursion.hpp"
#include "hermite.hpp"
#include "special_functions.hpp"

namespace aee {

ExpansionSet build_q_polynomials(const KTable& kt) {
  int K = kt.order();
  ExpansionSet out;
  out.arity = kt.arity();
  out.K = K;
  out.r2 = kt.at(2, 1);
  out.q.assign(K, {});
  if (K == 0) return out;

  UniPolySeries s(K);
  for (const auto& [jl, poly] : kt.entries()) {
    auto [j, l] = jl;
    if (j == 2 && l == 1) continue;  // the Gaussian factor stays exact
    if (poly.is_zero()) continue;
    int p = KTable::power_of(j, l);
    s.add(p, UniPoly<SparsePoly>::monomial(j, poly * (Rational(1) / factorial(j))));
  }
  UniPoly<SparsePoly> unit = UniPoly<SparsePoly>::monomial(0, SparsePoly::constant(Rational(1)));
  UniPolySeries e = series_exp(s, unit);

  for (int k = 1; k <= K; ++k) {
    UniPoly<SparsePoly> pk = e.at(k);
    for (int m = 0; m <= pk.degree(); ++m) {
      const SparsePoly& c = pk[m];
      if (c.is_zero()) continue;
      if (m == 0) throw std::logic_error("q build: constant term in a correction polynomial");
      if (((m - k) % 2) != 0) {
        std::ostringstream os;
        os << "q build: u^" << m << " breaks parity in the order-" << k << " polynomial";
        throw std::logic_error(os.str());
      }
      out.q[k - 1].push_back(QTerm{m - 1, m, c * Rational(-1)});
    }
  }
  return out;
}

const ExpansionSet& expansion_set(Arity arity, int K) {
  static std::map<std::pair<int, int>, ExpansionSet> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(arity), K);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto [pos, inserted] = cache.emplace(key, build_q_polynomials(k_table(arity, K)));
  (void)inserted;
  return pos->second;
}

NumericExpansion bind_expansion(const ExpansionSet& es, const NumericBindings& b) {
  NumericExpansion out;
  out.K = es.K;
  out.r2 = es.r2.eval(b);
  if (!(out.r2 > 0.0)) throw std::domain_error("expansion: bound r^2 must be positive");
  out.q.assign(es.K, {});
  for (int k = 1; k <= es.K; ++k) {
    for (const QTerm& t : es.q[k - 1]) {
      double c = t.coeff.eval(b);
      if (c == 0.0) continue;
      out.q[k - 1].push_back(NumericQTerm{t.he, t.r_pow, c});
    }
  }
  return out;
}

double evaluate_cdf(const NumericExpansion& ne, double n, double x, int terms) {
  if (terms < 0 || terms > ne.K) throw std::invalid_argument("evaluate_cdf: terms outside [0, K]");
  if (!(n > 0.0)) throw std::domain_error("evaluate_cdf: n must be positive");
  double r = std::sqrt(ne.r2);
  double y = x / r;
  double acc = norm_cdf(y);
  if (terms == 0) return acc;
  double density = norm_pdf(y);
  for (int k = 1; k <= terms; ++k) {
    double qk = 0.0;
    for (const NumericQTerm& t : ne.q[k - 1]) {
      qk += t.coeff * std::pow(r, -t.r_pow) * hermite_eval(t.he, y);
    }
    acc += std::pow(n, -0.5 * k) * qk * density;
  }
  return acc;
}

double evaluate_cdf(const NumericExpansion& ne, double n, double x) {
  return evaluate_cdf(ne, n, x, ne.K);
}

namespace {

// Standardized central moments m_2..m_max as polynomials in the standardized
// cumulants lambda_3, lambda_4, ...: the moment recursion applied to the
// cumulant list (0, 1, lambda_3, ..., lambda_max). g[j-1] is m_j.
std::vector<SparsePoly> standardized_moment_polys(int max_order) {
  std::vector<SparsePoly> kappa;
  kappa.push_back(SparsePoly());
  if (max_order >= 2) kappa.push_back(SparsePoly::constant(Rational(1)));
  for (int j = 3; j <= max_order; ++j) kappa.push_back(SparsePoly::symbol(sym_lambda(j)));
  return cumulants_to_raw(kappa);
}

// sigma-degree bookkeeping for the ordinary one-sample statistic: A -> sigma^2,
// B -> 1, mu_j -> sigma^j m_j(lambda). Total sigma power must vanish monomial
// by monomial; anything outside the {A, B, mu_x} alphabet disqualifies the set.
SparsePoly to_lambda_poly(const SparsePoly& p, const std::vector<SparsePoly>& g) {
  SparsePoly out;
  p.for_each_term([&](const Monomial& m, const Rational& c) {
    int sigma_power = 0;
    SparsePoly prod = SparsePoly::constant(c);
    for (const auto& f : m.factors()) {
      switch (f.sym.kind) {
        case Sym::A:
          sigma_power += f.exp;  // halves of A are whole powers of sigma
          break;
        case Sym::Bx:
          break;
        case Sym::MuX:
          sigma_power += f.sym.order * f.exp;
          prod = prod * pow(g[f.sym.order - 1], f.exp);
          break;
        default:
          throw std::logic_error("lambda form: symbol outside the ordinary one-sample alphabet");
      }
    }
    if (sigma_power != 0) {
      throw std::logic_error("lambda form: sigma powers fail to cancel");
    }
    out = out + prod;
  });
  return out;
}

int max_moment_order(const ExpansionSet& es) {
  int top = 2;
  for (const auto& qk : es.q) {
    for (const QTerm& t : qk) {
      t.coeff.for_each_term([&](const Monomial& m, const Rational&) {
        for (const auto& f : m.factors()) {
          if (f.sym.kind == Sym::MuX) top = std::max(top, f.sym.order);
        }
      });
    }
  }
  return top;
}

}  // namespace

LambdaExpansion special_case_lambda_form(const ExpansionSet& es) {
  if (es.arity != Arity::OneSample) {
    throw std::invalid_argument("lambda form: defined for the one-sample ordinary statistic only");
  }
  LambdaExpansion out;
  out.K = es.K;
  out.q.assign(es.K, {});
  std::vector<SparsePoly> g = standardized_moment_polys(max_moment_order(es));
  for (int k = 1; k <= es.K; ++k) {
    UniPoly<SparsePoly> qk;
    for (const QTerm& t : es.q[k - 1]) {
      SparsePoly lc = to_lambda_poly(t.coeff, g);
      if (lc.is_zero()) continue;
      UniPoly<Rational> h = hermite(t.he);
      for (int d = 0; d <= h.degree(); ++d) {
        if (h[d].is_zero()) continue;
        qk.add(d, lc * h[d]);
      }
    }
    out.q[k - 1] = std::move(qk);
  }
  return out;
}

double eval_lambda_poly(const UniPoly<SparsePoly>& q, const NumericBindings& b, double y) {
  double acc = 0.0;
  for (int d = q.degree(); d >= 0; --d) {
    acc = acc * y + (q[d].is_zero() ? 0.0 : q[d].eval(b));
  }
  return acc;
}

}  // namespace aee
