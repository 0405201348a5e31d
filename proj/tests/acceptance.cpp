// Acceptance gate. Runs nine end-to-end checks, prints exactly one
// [PASS]/[FAIL] line per criterion, and exits nonzero if any fail. Every
// tolerance is pinned here, next to the check that uses it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cumulant_recursion.hpp"
#include "diagnostics.hpp"
#include "estimators.hpp"
#include "expansion.hpp"
#include "hermite.hpp"
#include "k_table.hpp"
#include "mc.hpp"
#include "moment_expectations.hpp"
#include "rng.hpp"
#include "sampling_moments.hpp"
#include "special_functions.hpp"

#include "oracles.hpp"

using namespace aee;

namespace {

int g_failures = 0;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::runtime_error(msg);
}

// budget_s == 0 disables the runtime check.
void run_criterion(int id, const std::string& label, double budget_s,
                   const std::function<std::string()>& body) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::string note;
  bool ok = true;
  std::string why;
  try {
    note = body();
  } catch (const std::exception& e) {
    ok = false;
    why = e.what();
  }
  double secs = std::chrono::duration<double>(clock::now() - t0).count();
  if (ok && budget_s > 0.0 && secs > budget_s) {
    ok = false;
    std::ostringstream ss;
    ss << "runtime " << secs << "s exceeds the " << budget_s << "s budget";
    why = ss.str();
  }
  if (!ok) ++g_failures;
  std::printf("[%s] %d. %s%s%s  (%.2fs)\n", ok ? "PASS" : "FAIL", id, label.c_str(),
              note.empty() && why.empty() ? "" : ": ", ok ? note.c_str() : why.c_str(), secs);
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// Shared builders.

SparsePoly lam(int j, int e = 1) { return pow(SparsePoly::symbol(sym_lambda(j)), e); }

void add_block(UniPoly<SparsePoly>& acc, const Rational& scale, const SparsePoly& l,
               std::initializer_list<std::pair<int, long>> powers) {
  for (const auto& [d, c] : powers) acc.add(d, l * (scale * Rational(c)));
}

Monomial mono_one(int a_halves, int b_units, std::initializer_list<std::pair<int, int>> mus) {
  Monomial m;
  if (a_halves != 0) m.mul_A_halves(a_halves);
  if (b_units != 0) m.mul(sym_B(Sample::X), b_units);
  for (const auto& [j, e] : mus) m.mul(sym_mu(Sample::X, j), e);
  return m;
}

Monomial mono_two(int a_halves, int bx, int by, int sx, int sy,
                  std::initializer_list<std::pair<int, int>> mux,
                  std::initializer_list<std::pair<int, int>> muy) {
  Monomial m;
  if (a_halves != 0) m.mul_A_halves(a_halves);
  if (bx != 0) m.mul(sym_B(Sample::X), bx);
  if (by != 0) m.mul(sym_B(Sample::Y), by);
  if (sx != 0) m.mul(sym_b(Sample::X), sx);
  if (sy != 0) m.mul(sym_b(Sample::Y), sy);
  for (const auto& [j, e] : mux) m.mul(sym_mu(Sample::X, j), e);
  for (const auto& [j, e] : muy) m.mul(sym_mu(Sample::Y, j), e);
  return m;
}

// ---------------------------------------------------------------------------
// 1. Frozen lambda-form golden polynomials, one-sample, orders 1..4.

std::string criterion_lambda_goldens() {
  LambdaExpansion le = special_case_lambda_form(expansion_set(Arity::OneSample, 4));
  require(le.K == 4, "expected a 4-term lambda form");
  SparsePoly one = SparsePoly::constant(Rational(1));

  UniPoly<SparsePoly> q1;
  add_block(q1, Rational(1, 6), lam(3), {{2, 2}, {0, 1}});

  UniPoly<SparsePoly> q2;
  add_block(q2, Rational(1, 12), lam(4), {{3, 1}, {1, -3}});
  add_block(q2, Rational(-1, 18), lam(3, 2), {{5, 1}, {3, 2}, {1, -3}});
  add_block(q2, Rational(-1, 4), one, {{3, 1}, {1, 3}});

  UniPoly<SparsePoly> q3;
  add_block(q3, Rational(-1, 40), lam(5), {{4, 2}, {2, 8}, {0, 1}});
  add_block(q3, Rational(-1, 144), lam(3) * lam(4), {{6, 4}, {4, -30}, {2, -90}, {0, -15}});
  add_block(q3, Rational(1, 1296), lam(3, 3), {{8, 8}, {6, 28}, {4, -210}, {2, -525}, {0, -105}});
  add_block(q3, Rational(1, 24), lam(3), {{6, 2}, {4, -3}, {2, -6}});

  UniPoly<SparsePoly> q4;
  add_block(q4, Rational(-1, 90), lam(6), {{5, 2}, {3, -5}, {1, -15}});
  add_block(q4, Rational(1, 60), lam(3) * lam(5), {{7, 1}, {5, 8}, {3, -5}, {1, -30}});
  add_block(q4, Rational(-1, 288), lam(4, 2), {{7, 1}, {5, -21}, {3, 33}, {1, 111}});
  add_block(q4, Rational(1, 216), lam(3, 2) * lam(4),
            {{9, 1}, {7, -12}, {5, -90}, {3, 36}, {1, 261}});
  add_block(q4, Rational(-1, 1944), lam(3, 4),
            {{11, 1}, {9, 5}, {7, -90}, {5, -450}, {3, 45}, {1, 945}});
  add_block(q4, Rational(1, 48), lam(4), {{7, 1}, {5, -7}, {3, 9}, {1, 21}});
  add_block(q4, Rational(-1, 72), lam(3, 2), {{9, 1}, {7, -6}, {5, -12}, {3, -18}, {1, -9}});
  add_block(q4, Rational(-1, 96), one, {{7, 3}, {5, 5}, {3, 7}, {1, 21}});

  require(le.q[0] == q1, "q1 differs from its golden transcription");
  require(le.q[1] == q2, "q2 differs from its golden transcription");
  require(le.q[2] == q3, "q3 differs from its golden transcription");
  require(le.q[3] == q4, "q4 differs from its golden transcription");
  return "q1..q4 exact";
}

// ---------------------------------------------------------------------------
// 2. Frozen cumulant-coefficient goldens, canonical equality plus agreement
// at 20 random exact rational bindings.

struct KGolden {
  Arity arity;
  int j;
  int l;
  SparsePoly expect;
};

std::vector<KGolden> k_goldens() {
  std::vector<KGolden> g;
  auto one = [&](int j, int l, SparsePoly p) { g.push_back({Arity::OneSample, j, l, std::move(p)}); };
  auto two = [&](int j, int l, SparsePoly p) { g.push_back({Arity::TwoSample, j, l, std::move(p)}); };

  one(2, 1, SparsePoly::term(mono_one(-2, 0, {{2, 1}}), Rational(1)));
  one(1, 2, SparsePoly::term(mono_one(-3, 1, {{3, 1}}), Rational(-1, 2)));
  {
    SparsePoly p;
    p += SparsePoly::term(mono_one(-5, 1, {{2, 1}, {3, 1}}), Rational(-3));
    p += SparsePoly::term(mono_one(-3, 0, {{3, 1}}), Rational(1));
    one(3, 1, p);
  }
  {
    SparsePoly p;
    p += SparsePoly::term(mono_one(-4, 1, {{2, 2}}), Rational(4));
    p += SparsePoly::term(mono_one(-4, 1, {{4, 1}}), Rational(-1));
    p += SparsePoly::term(mono_one(-6, 2, {{2, 3}}), Rational(-1));
    p += SparsePoly::term(mono_one(-6, 2, {{3, 2}}), Rational(7, 4));
    p += SparsePoly::term(mono_one(-6, 2, {{2, 1}, {4, 1}}), Rational(1));
    one(2, 2, p);
  }
  {
    SparsePoly p;
    p += SparsePoly::term(mono_one(-4, 0, {{2, 2}}), Rational(-3));
    p += SparsePoly::term(mono_one(-4, 0, {{4, 1}}), Rational(1));
    p += SparsePoly::term(mono_one(-6, 1, {{2, 3}}), Rational(18));
    p += SparsePoly::term(mono_one(-6, 1, {{3, 2}}), Rational(-6));
    p += SparsePoly::term(mono_one(-6, 1, {{2, 1}, {4, 1}}), Rational(-6));
    p += SparsePoly::term(mono_one(-8, 2, {{2, 4}}), Rational(-3));
    p += SparsePoly::term(mono_one(-8, 2, {{2, 1}, {3, 2}}), Rational(18));
    p += SparsePoly::term(mono_one(-8, 2, {{2, 2}, {4, 1}}), Rational(3));
    one(4, 1, p);
  }
  {
    SparsePoly p;
    p += SparsePoly::term(mono_one(-3, 1, {{3, 1}}), Rational(1, 2));
    p += SparsePoly::term(mono_one(-5, 2, {{2, 1}, {3, 1}}), Rational(-3));
    p += SparsePoly::term(mono_one(-5, 2, {{5, 1}}), Rational(3, 8));
    p += SparsePoly::term(mono_one(-7, 3, {{2, 2}, {3, 1}}), Rational(15, 16));
    p += SparsePoly::term(mono_one(-7, 3, {{3, 1}, {4, 1}}), Rational(-15, 16));
    one(1, 3, p);
  }

  {
    SparsePoly p;
    p += SparsePoly::term(mono_two(-2, 0, 0, 1, 0, {{2, 1}}, {}), Rational(1));
    p += SparsePoly::term(mono_two(-2, 0, 0, 0, 1, {}, {{2, 1}}), Rational(1));
    two(2, 1, p);
  }
  {
    SparsePoly p;
    p += SparsePoly::term(mono_two(-3, 1, 0, 1, 0, {{3, 1}}, {}), Rational(-1, 2));
    p += SparsePoly::term(mono_two(-3, 0, 1, 0, 1, {}, {{3, 1}}), Rational(1, 2));
    two(1, 2, p);
  }
  {
    SparsePoly p;
    p += SparsePoly::term(mono_two(-5, 1, 0, 2, 0, {{2, 1}, {3, 1}}, {}), Rational(-3));
    p += SparsePoly::term(mono_two(-5, 1, 0, 1, 1, {{3, 1}}, {{2, 1}}), Rational(-3));
    p += SparsePoly::term(mono_two(-3, 0, 0, 2, 0, {{3, 1}}, {}), Rational(1));
    p += SparsePoly::term(mono_two(-5, 0, 1, 1, 1, {{2, 1}}, {{3, 1}}), Rational(3));
    p += SparsePoly::term(mono_two(-5, 0, 1, 0, 2, {}, {{2, 1}, {3, 1}}), Rational(3));
    p += SparsePoly::term(mono_two(-3, 0, 0, 0, 2, {}, {{3, 1}}), Rational(-1));
    two(3, 1, p);
  }
  {
    SparsePoly p;
    p += SparsePoly::term(mono_two(-4, 1, 0, 2, 0, {{2, 2}}, {}), Rational(4));
    p += SparsePoly::term(mono_two(-4, 1, 0, 2, 0, {{4, 1}}, {}), Rational(-1));
    p += SparsePoly::term(mono_two(-4, 0, 1, 0, 2, {}, {{2, 2}}), Rational(4));
    p += SparsePoly::term(mono_two(-4, 0, 1, 0, 2, {}, {{4, 1}}), Rational(-1));
    p += SparsePoly::term(mono_two(-4, 1, 0, 1, 1, {{2, 1}}, {{2, 1}}), Rational(1));
    p += SparsePoly::term(mono_two(-4, 0, 1, 1, 1, {{2, 1}}, {{2, 1}}), Rational(1));
    p += SparsePoly::term(mono_two(-6, 2, 0, 2, 0, {{2, 1}, {4, 1}}, {}), Rational(1));
    p += SparsePoly::term(mono_two(-6, 2, 0, 2, 0, {{2, 3}}, {}), Rational(-1));
    p += SparsePoly::term(mono_two(-6, 0, 2, 0, 2, {}, {{2, 1}, {4, 1}}), Rational(1));
    p += SparsePoly::term(mono_two(-6, 0, 2, 0, 2, {}, {{2, 3}}), Rational(-1));
    p += SparsePoly::term(mono_two(-6, 0, 2, 1, 1, {{2, 1}}, {{4, 1}}), Rational(1));
    p += SparsePoly::term(mono_two(-6, 0, 2, 1, 1, {{2, 1}}, {{2, 2}}), Rational(-1));
    p += SparsePoly::term(mono_two(-6, 2, 0, 1, 1, {{4, 1}}, {{2, 1}}), Rational(1));
    p += SparsePoly::term(mono_two(-6, 2, 0, 1, 1, {{2, 2}}, {{2, 1}}), Rational(-1));
    p += SparsePoly::term(mono_two(-6, 2, 0, 2, 0, {{3, 2}}, {}), Rational(7, 4));
    p += SparsePoly::term(mono_two(-6, 0, 2, 0, 2, {}, {{3, 2}}), Rational(7, 4));
    p += SparsePoly::term(mono_two(-6, 1, 1, 1, 1, {{3, 1}}, {{3, 1}}), Rational(-7, 2));
    two(2, 2, p);
  }
  return g;
}

std::string criterion_k_goldens() {
  const KTable& one = k_table(Arity::OneSample, 3);
  const KTable& two = k_table(Arity::TwoSample, 2);
  std::vector<KGolden> goldens = k_goldens();

  for (const KGolden& g : goldens) {
    const KTable& t = g.arity == Arity::OneSample ? one : two;
    std::ostringstream where;
    where << (g.arity == Arity::OneSample ? "one" : "two") << "-sample k_{" << g.j << "," << g.l
          << "}";
    require(t.at(g.j, g.l) == g.expect, where.str() + " differs canonically");
  }

  Rng rng(20250818, 2);
  auto rand_rat = [&] {
    long num = static_cast<long>(rng.next() % 19) - 9;
    if (num == 0) num = 5;
    long den = 1 + static_cast<long>(rng.next() % 7);
    return Rational(num, den);
  };
  for (int trial = 0; trial < 20; ++trial) {
    Rational s = rand_rat().abs() + Rational(1, 3);  // sqrt(A) > 0
    ExactBindings b;
    b[sym_A()] = s * s;
    b[sym_B(Sample::X)] = rand_rat();
    b[sym_B(Sample::Y)] = rand_rat();
    b[sym_b(Sample::X)] = rand_rat();
    b[sym_b(Sample::Y)] = rand_rat();
    for (int j = 2; j <= 5; ++j) {
      b[sym_mu(Sample::X, j)] = rand_rat();
      b[sym_mu(Sample::Y, j)] = rand_rat();
    }
    for (const KGolden& g : k_goldens()) {
      const KTable& t = g.arity == Arity::OneSample ? one : two;
      Rational lhs = t.at(g.j, g.l).eval_exact(b, s);
      Rational rhs = g.expect.eval_exact(b, s);
      std::ostringstream where;
      where << "binding " << trial << " disagrees at k_{" << g.j << "," << g.l << "}";
      require(lhs == rhs, where.str());
    }
  }
  return "10 slots, canonical + 20 bindings";
}

// ---------------------------------------------------------------------------
// 3. Variance-law r^2 constants at n = 10, exact rational arithmetic.

std::string criterion_r2_constants() {
  using RSpec = BasicEstimatorSpec<Rational>;
  using RPrior = BasicModeratedPrior<Rational>;
  Rational s2(7, 3);

  RSpec biased = one_sample_spec<Rational>(Estimator::Biased, Rational(10), s2);
  require(biased.r2 == Rational(1), "one-sample biased r^2 != 1");

  RSpec unbiased = one_sample_spec<Rational>(Estimator::Unbiased, Rational(10), s2);
  require(unbiased.r2 == Rational(9, 10), "one-sample unbiased r^2 != 9/10");

  RSpec pooled = two_sample_spec<Rational>(Estimator::Pooled, 10, 10, s2, s2);
  require(pooled.r2 == Rational(9, 10), "pooled r^2 != 9/10");

  RSpec welch = two_sample_spec<Rational>(Estimator::WelchBiased, 10, 10, s2, Rational(11, 2));
  require(welch.r2 == Rational(1), "welch-biased r^2 != 1");

  // d0 = 3, s0^2 = 5/2, sigma^2 = 2: (d0+9)/(d0 s0^2/sigma^2 + 10) = 48/55.
  std::optional<RPrior> prior = RPrior{Rational(3), Rational(5, 2)};
  RSpec moderated = one_sample_spec<Rational>(Estimator::Moderated, Rational(10), Rational(2), prior);
  require(moderated.r2 == Rational(48, 55), "one-sample moderated r^2 != 48/55");

  // The same constants must satisfy the generic adjustment read off the
  // derived table: r^2 = (b_x mu_x2 + b_y mu_y2) / A.
  SparsePoly generic_one = k_table(Arity::OneSample, 0).r2();
  SparsePoly generic_two = k_table(Arity::TwoSample, 0).r2();
  // A enters r^2 at whole powers only, so it can be substituted exactly.
  auto check_generic_one = [&](const RSpec& spec, const Rational& sigma2, const char* name) {
    ExactBindings b;
    b[sym_mu(Sample::X, 2)] = sigma2;
    Rational got = generic_one.substitute(sym_A(), spec.A).eval_exact(b);
    require(got == spec.r2, std::string(name) + ": generic r^2 disagrees with the table row");
  };
  check_generic_one(biased, s2, "biased");
  check_generic_one(unbiased, s2, "unbiased");
  check_generic_one(moderated, Rational(2), "moderated");

  auto check_generic_two = [&](const RSpec& spec, const Rational& s2x, const Rational& s2y,
                               const char* name) {
    ExactBindings b;
    b[sym_b(Sample::X)] = spec.bx;
    b[sym_b(Sample::Y)] = spec.by;
    b[sym_mu(Sample::X, 2)] = s2x;
    b[sym_mu(Sample::Y, 2)] = s2y;
    Rational got = generic_two.substitute(sym_A(), spec.A).eval_exact(b);
    require(got == spec.r2, std::string(name) + ": generic r^2 disagrees with the table row");
  };
  check_generic_two(pooled, s2, s2, "pooled");
  check_generic_two(welch, s2, Rational(11, 2), "welch-biased");
  return "five rows exact";
}

// ---------------------------------------------------------------------------
// 4. nu/rho against exhaustive enumeration, plus the rho order range.

std::string criterion_combinatorics_oracle() {
  using test_oracle::DiscreteDist;
  std::vector<DiscreteDist> dists = test_oracle::standard_dists();

  for (size_t di = 0; di < dists.size(); ++di) {
    const DiscreteDist& d = dists[di];
    require(test_oracle::raw_moment(d, 1).is_zero(), "test distribution is not mean-zero");
    ExactBindings b;
    for (int j = 2; j <= 12; ++j) b[sym_mu(Sample::X, j)] = test_oracle::raw_moment(d, j);
    for (int n = 2; n <= 5; ++n) {
      for (int k = 0; k <= 6; ++k) {
        for (int l = 0; k + l <= 6; ++l) {
          std::ostringstream where;
          where << "dist " << di << ", n=" << n << ", (k,l)=(" << k << "," << l << ")";
          Rational nu_got = nu(k, l, Sample::X).eval_exact(b, Rational(n));
          require(nu_got == test_oracle::oracle_nu(d, k, l, n), "nu mismatch at " + where.str());
          Rational rho_got = rho(k, l, Sample::X).eval_exact(b, Rational(n));
          require(rho_got == test_oracle::oracle_rho(d, k, l, n),
                  "rho mismatch at " + where.str());
        }
      }
    }
  }

  // Order range: nonzero 1/n powers of rho(i,j) stay in [ceil((i+j)/2), i+j-1].
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; i + j <= 6; ++j) {
      if (i + j < 2) continue;
      MomentPolynomial p = rho(i, j, Sample::X);
      int lo = (i + j + 1) / 2;
      int hi = i + j - 1;
      for (const auto& [v, coeff] : p.orders()) {
        std::ostringstream where;
        where << "rho(" << i << "," << j << ") order " << v << " outside [" << lo << "," << hi
              << "]";
        require(!coeff.is_zero() && v >= lo && v <= hi, where.str());
      }
    }
  }
  return "84 pairs per distribution, orders in range";
}

// ---------------------------------------------------------------------------
// 5. Normal-population accuracy against the exact t reference.

std::string criterion_normal_accuracy() {
  EstimatorSpec spec = one_sample_spec<double>(Estimator::Unbiased, 10.0, 1.0);
  MomentSet ms = declared_moment_set({1.0, 0.0, 3.0, 0.0});
  NumericExpansion ne = bind_expansion(expansion_set(Arity::OneSample, 3),
                                       estimator_bindings(spec, ms));

  for (int k : {1, 3}) {
    for (const NumericQTerm& t : ne.q[k - 1]) {
      std::ostringstream where;
      where << "q" << k << " has a nonzero coefficient under normal moments";
      require(t.coeff == 0.0, where.str());
    }
  }

  double max0 = 0.0;
  double max2 = 0.0;
  for (int i = -20; i <= 20; ++i) {
    double x = 0.1 * i;
    double ref = student_t_cdf(x, 9.0);
    max0 = std::max(max0, std::fabs(evaluate_cdf(ne, 10.0, x, 0) - ref));
    max2 = std::max(max2, std::fabs(evaluate_cdf(ne, 10.0, x, 2) - ref));
  }
  std::ostringstream note;
  note << "max errors " << max0 << " -> " << max2;
  require(max2 * 5.0 <= max0, "2-term error is not 5x below the 0-term error (" + note.str() + ")");
  return note.str();
}

// ---------------------------------------------------------------------------
// 6. Monte Carlo reproduction, centered gamma, one-sample biased, n = 10.

std::string criterion_gamma_mc() {
  const long reps = 1000000;
  const std::uint64_t seed = 42;

  GammaGen gen{3.0, 1.0, true};
  std::vector<double> mu = generator_moments(gen, 5);
  require(mu.size() == 4 && mu[0] == 3.0 && mu[1] == 6.0 && mu[2] == 45.0 && mu[3] == 252.0,
          "gamma central moments differ from their cumulant-derived values");

  EstimatorSpec spec = one_sample_spec<double>(Estimator::Biased, 10.0, mu[0]);
  NumericExpansion ne = bind_expansion(expansion_set(Arity::OneSample, 3),
                                       estimator_bindings(spec, declared_moment_set(mu)));

  EmpiricalCdf emp = sample_statistic(gen, {Arity::OneSample, Estimator::Biased}, {10, 0}, reps,
                                      seed);

  auto devs_at = [&](double x, double d[4]) {
    double p_hat = empirical_cdf_at(emp, x);
    for (int k = 0; k <= 3; ++k) d[k] = std::fabs(p_hat - evaluate_cdf(ne, 10.0, x, k));
    return 3.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(reps));
  };

  // Frozen regression values from the first verified run of this exact
  // deterministic scenario (the stream is seed-keyed per replicate, so a
  // rerun reproduces them bit-for-bit; the window absorbs libm drift only).
  // Independent checks behind the freeze: the same deviations at 10^7
  // replicates with two other seeds, and an unrelated generator
  // implementation agreeing on P(T <= -2) to within its noise budget.
  const double kDev0At2 = 0.063993868051820779;
  const double kDev2At2 = 0.00052746881331798556;
  const double kDev3At2 = 0.0041608604327582205;
  const double kDev3At25 = 0.0042336846991009799;
  const double kFreezeWindow = 2e-4;

  double d[4];
  double noise = devs_at(-2.0, d);
  std::ostringstream note;
  note << "x=-2 dev k=0,2,3: " << d[0] << ", " << d[2] << ", " << d[3] << " (noise " << noise
       << ")";
  require(d[1] < d[0] && d[2] < d[1], "deviations not monotone through 2 terms (" + note.str() + ")");
  require(d[0] - d[2] > noise, "0 -> 2 improvement inside the noise budget (" + note.str() + ")");
  require(d[3] <= 0.01, "3-term deviation above 0.01 (" + note.str() + ")");
  require(d[3] < d[0], "3-term deviation does not beat the normal baseline (" + note.str() + ")");
  require(std::fabs(d[0] - kDev0At2) <= kFreezeWindow, "frozen dev0 regressed (" + note.str() + ")");
  require(std::fabs(d[2] - kDev2At2) <= kFreezeWindow, "frozen dev2 regressed (" + note.str() + ")");
  require(std::fabs(d[3] - kDev3At2) <= kFreezeWindow, "frozen dev3 regressed (" + note.str() + ")");

  // At x = -2 the 2-term truncation happens to cross the true distribution
  // (its deviation sits under the noise floor), so the 2 -> 3 step is only
  // resolvable away from the crossing; -2.5 is the frozen witness point.
  double e[4];
  double noise25 = devs_at(-2.5, e);
  std::ostringstream note25;
  note25 << "x=-2.5 dev k=0,1,2,3: " << e[0] << ", " << e[1] << ", " << e[2] << ", " << e[3];
  require(e[1] < e[0] && e[2] < e[1] && e[3] < e[2],
          "deviations not monotone through 3 terms (" + note25.str() + ")");
  require(e[2] - e[3] > noise25, "2 -> 3 improvement inside the noise budget (" + note25.str() + ")");
  require(std::fabs(e[3] - kDev3At25) <= kFreezeWindow,
          "frozen dev3 at -2.5 regressed (" + note25.str() + ")");

  return note.str() + "; " + note25.str();
}

// ---------------------------------------------------------------------------
// 7. Tail usability flags for the skewed case.

std::string criterion_tail_flags() {
  GammaGen gen{3.0, 1.0, true};
  std::vector<double> mu = generator_moments(gen, 5);
  EstimatorSpec spec = one_sample_spec<double>(Estimator::Biased, 10.0, mu[0]);
  NumericExpansion ne = bind_expansion(expansion_set(Arity::OneSample, 3),
                                       estimator_bindings(spec, declared_moment_set(mu)));
  TailReport rep = tail_scan(ne, 10.0);

  require(rep.left.size() == 4 && rep.right.size() == 4, "expected per-term entries for k=0..3");
  require(rep.left[0].usable && rep.right[0].usable, "0-term truncation must be usable everywhere");
  require(!rep.right[1].usable, "1-term truncation was not flagged on the right tail");
  require(rep.right[1].violation_x.has_value(), "flagged truncation carries no violation point");
  std::ostringstream note;
  note << "right-tail violation at x=" << *rep.right[1].violation_x;
  return note.str();
}

// ---------------------------------------------------------------------------
// 8. Property suites.

std::string criterion_properties() {
  // Hermite three-term recurrence, exact coefficients, He_k for k <= 12.
  for (int k = 2; k <= 12; ++k) {
    UniPoly<Rational> expect;
    const UniPoly<Rational>& h1 = hermite(k - 1);
    const UniPoly<Rational>& h2 = hermite(k - 2);
    for (int d = 0; d <= h1.degree(); ++d) expect.add(d + 1, h1[d]);
    for (int d = 0; d <= h2.degree(); ++d) expect.add(d, h2[d] * Rational(-(k - 1)));
    std::ostringstream where;
    where << "Hermite recurrence fails at k=" << k;
    require(hermite(k) == expect, where.str());
  }

  // Moment <-> cumulant round trip on random exact vectors, orders <= 6.
  Rng rng(20250818, 8);
  auto rand_rat = [&] {
    long num = static_cast<long>(rng.next() % 15) - 7;
    long den = 1 + static_cast<long>(rng.next() % 5);
    return Rational(num, den);
  };
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> raw;
    for (int j = 0; j < 6; ++j) raw.push_back(rand_rat());
    require(cumulants_to_raw(raw_to_cumulants(raw)) == raw, "moment/cumulant round trip failed");
    require(central_to_raw(raw_to_central(raw), raw[0]) == raw, "raw/central round trip failed");
  }

  // Symmetry identity at every truncation K <= 4.
  {
    MomentSet sym = declared_moment_set({Rational(2, 3).to_double(), 0.0,
                                         Rational(2, 3).to_double(), 0.0,
                                         Rational(2, 3).to_double()});
    EstimatorSpec unbiased = one_sample_spec<double>(Estimator::Unbiased, 7.0, sym.sigma2);
    std::optional<ModeratedPrior> prior = ModeratedPrior{2.0, 1.0};
    EstimatorSpec moderated =
        one_sample_spec<double>(Estimator::Moderated, 7.0, sym.sigma2, prior);
    for (const EstimatorSpec& spec : {unbiased, moderated}) {
      NumericExpansion ne = bind_expansion(expansion_set(Arity::OneSample, 4),
                                           estimator_bindings(spec, sym));
      for (int k = 0; k <= 4; ++k) {
        for (int i = 0; i <= 12; ++i) {
          double x = 0.25 * i;
          double total = evaluate_cdf(ne, 7.0, x, k) + evaluate_cdf(ne, 7.0, -x, k);
          require(std::fabs(total - 1.0) <= 1e-12, "symmetry identity violated");
        }
      }
    }
  }

  // Full-depth derivation for every statistic family; the structural zero
  // checks inside the extraction are hard failures, so surviving K=5 for
  // both arities covers all seven statistic kinds.
  require(!expansion_set(Arity::OneSample, 5).q[4].empty(), "one-sample K=5 derivation is empty");
  require(!expansion_set(Arity::TwoSample, 5).q[4].empty(), "two-sample K=5 derivation is empty");
  require(k_table(Arity::OneSample, 5).at(1, 1).is_zero(), "k_{1,1} must vanish");
  require(k_table(Arity::TwoSample, 5).at(1, 1).is_zero(), "k_{1,1} must vanish");

  // Thread-count independence of the Monte Carlo stream.
  {
    GammaGen gen{2.0, 1.5, true};
    StatisticKind kind{Arity::OneSample, Estimator::Unbiased};
    EmpiricalCdf a = sample_statistic(gen, kind, {6, 0}, 20000, 99, std::nullopt, 1);
    EmpiricalCdf b = sample_statistic(gen, kind, {6, 0}, 20000, 99, std::nullopt, 5);
    require(a.values == b.values, "thread count changed the one-sample replicate stream");
    StatisticKind welch{Arity::TwoSample, Estimator::WelchBiased};
    EmpiricalCdf c = sample_statistic(gen, welch, {7, 5}, 10000, 7, std::nullopt, 2);
    EmpiricalCdf d = sample_statistic(gen, welch, {7, 5}, 10000, 7, std::nullopt, 8);
    require(c.values == d.values, "thread count changed the two-sample replicate stream");
  }
  return "hermite, round trips, symmetry, K=5 derivations, MC determinism";
}

// ---------------------------------------------------------------------------
// 9. Truncation-remainder decay rate.

std::string criterion_remainder_slope() {
  // Two-point population: -1/2 with probability 4/5, 2 with probability 1/5.
  // mu_1 = 0, mu_2 = 1; every moment is exactly representable.
  const double pv = 0.2;
  auto mu_j = [&](int j) {
    return 0.8 * std::pow(-0.5, j) + 0.2 * std::pow(2.0, j);
  };
  const double A = 8.0;  // keeps the variance law positive on every outcome

  NumericBindings nb;
  nb[sym_A()] = A;
  nb[sym_B(Sample::X)] = 1.0;
  for (int j = 2; j <= 14; ++j) nb[sym_mu(Sample::X, j)] = mu_j(j);

  const std::vector<int> ns = {4, 6, 8, 12, 16};
  // E[theta^m] by direct enumeration over the count of "2"-outcomes.
  auto exact_moment = [&](int n, int m) {
    long double total = 0.0L;
    for (int c = 0; c <= n; ++c) {
      long double prob = binomial(n, c).to_double() * std::pow((long double)pv, c) *
                         std::pow((long double)(1.0 - pv), n - c);
      long double sum1 = 2.0L * c - 0.5L * (n - c);
      long double sum2 = 4.0L * c + 0.25L * (n - c);
      long double xbar = sum1 / n;
      long double xbars = (sum2 - n * 1.0L) / n;  // mu_2 = 1
      long double s2 = A + (xbars - xbar * xbar);
      long double theta = std::sqrt((long double)n) * xbar / std::sqrt(s2);
      total += prob * std::pow(theta, (long double)m);
    }
    return static_cast<double>(total);
  };

  std::ostringstream note;
  // The first omitted series term must sit at power K+1, so m and K+1 share
  // parity.
  const std::pair<int, int> cases[] = {{1, 2}, {2, 1}, {2, 3}, {3, 2}};
  for (const auto& [K, m] : cases) {
    HalfPowerSeries series = sampling_moment_one(m, K);
    std::vector<double> logn;
    std::vector<double> logerr;
    for (int n : ns) {
      double approx = eval_series(series, nb, static_cast<double>(n));
      double err = std::fabs(exact_moment(n, m) - approx);
      require(err > 1e-13, "remainder vanished; the slope fit is meaningless");
      logn.push_back(std::log(static_cast<double>(n)));
      logerr.push_back(std::log(err));
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < logn.size(); ++i) {
      mx += logn[i];
      my += logerr[i];
    }
    mx /= static_cast<double>(logn.size());
    my /= static_cast<double>(logn.size());
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < logn.size(); ++i) {
      sxy += (logn[i] - mx) * (logerr[i] - my);
      sxx += (logn[i] - mx) * (logn[i] - mx);
    }
    double slope = sxy / sxx;
    double want = -0.5 * (K + 1);
    std::ostringstream where;
    where << "K=" << K << ", m=" << m << ": slope " << slope << " not within 0.3 of " << want;
    require(std::fabs(slope - want) <= 0.3, where.str());
    note << (note.str().empty() ? "" : "; ") << "K" << K << "/m" << m << " slope "
         << static_cast<int>(slope * 100) / 100.0;
  }
  return note.str();
}

}  // namespace

int main() {
  run_criterion(1, "one-sample lambda-form q1..q4 equal the frozen goldens", 60.0,
                criterion_lambda_goldens);
  run_criterion(2, "cumulant coefficients equal the frozen goldens", 0.0, criterion_k_goldens);
  run_criterion(3, "variance-law r^2 constants at n=10 are exact", 0.0, criterion_r2_constants);
  run_criterion(4, "nu/rho match exhaustive enumeration and the order range", 0.0,
                criterion_combinatorics_oracle);
  run_criterion(5, "normal case: 2-term error beats the base error 5x; q1=q3=0", 10.0,
                criterion_normal_accuracy);
  run_criterion(6, "centered-gamma Monte Carlo deviations shrink with order", 300.0,
                criterion_gamma_mc);
  run_criterion(7, "skewed right tail: 1-term flagged, 0-term usable", 0.0, criterion_tail_flags);
  run_criterion(8, "property suites hold", 0.0, criterion_properties);
  run_criterion(9, "series remainder decays at slope -(K+1)/2", 0.0, criterion_remainder_slope);

  if (g_failures > 0) {
    std::printf("%d of 9 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
