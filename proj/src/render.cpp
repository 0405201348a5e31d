#include "render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sampling_moments.hpp"
#include "symbols.hpp"

namespace aee {

namespace {

using nlohmann::json;

const std::pair<const char*, StatisticKind> kKindTokens[] = {
    {"one-biased", {Arity::OneSample, Estimator::Biased}},
    {"one-unbiased", {Arity::OneSample, Estimator::Unbiased}},
    {"one-moderated", {Arity::OneSample, Estimator::Moderated}},
    {"two-pooled", {Arity::TwoSample, Estimator::Pooled}},
    {"welch-biased", {Arity::TwoSample, Estimator::WelchBiased}},
    {"welch-unbiased", {Arity::TwoSample, Estimator::WelchUnbiased}},
    {"two-moderated", {Arity::TwoSample, Estimator::Moderated}},
};

double parse_number(const std::string& s, const char* what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": bad number \"" + s + "\"");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_double(double v) {
  json j = v;
  return j.dump();
}

json parse_json_or_throw(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument(std::string(what) + ": malformed JSON");
  return j;
}

double need_number(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string(what) + ": missing numeric \"" + key + "\"");
  }
  return j.at(key).get<double>();
}

SampleSpec parse_sample(const json& j) {
  const char* what = "moment spec";
  if (!j.is_object()) throw std::invalid_argument("moment spec: sample entry is not an object");
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw std::invalid_argument("moment spec: missing integer \"n\"");
  long n = j.at("n").get<long>();
  if (n < 2) throw std::invalid_argument("moment spec: n must be at least 2");
  double sigma2 = need_number(j, "sigma2", what);
  if (!j.contains("mu") || !j.at("mu").is_array() || j.at("mu").empty())
    throw std::invalid_argument("moment spec: missing moment array \"mu\"");
  std::vector<double> mu;
  for (const auto& v : j.at("mu")) {
    if (!v.is_number()) throw std::invalid_argument("moment spec: non-numeric entry in \"mu\"");
    mu.push_back(v.get<double>());
  }
  if (std::abs(mu[0] - sigma2) > 1e-9 * std::max(1.0, std::abs(sigma2)))
    throw std::invalid_argument("moment spec: sigma2 disagrees with mu[0]");
  std::string source = j.value("source", std::string());
  if (source != "data" && source != "declared")
    throw std::invalid_argument("moment spec: \"source\" must be \"data\" or \"declared\"");
  SampleSpec s;
  s.ms = declared_moment_set(mu, source == "data" ? n : 0);
  s.n = n;
  s.source = source;
  return s;
}

json sample_json(const SampleSpec& s) {
  json j;
  j["n"] = s.n;
  j["sigma2"] = s.ms.sigma2;
  j["mu"] = s.ms.mu;
  j["source"] = s.source;
  return j;
}

// Table-row r^2 as a function of the declared inputs; constant rows fold to 1.
json bound_r2_form(const StatisticKind& kind) {
  switch (kind.estimator) {
    case Estimator::Biased:
    case Estimator::WelchBiased:
      return 1;
    case Estimator::Unbiased:
    case Estimator::Pooled:
      return "(n-1)/n";
    case Estimator::WelchUnbiased:
      return "(b_x*sigma2_x+b_y*sigma2_y)/(C_x*b_x*sigma2_x+C_y*b_y*sigma2_y)";
    case Estimator::Moderated:
      return kind.arity == Arity::OneSample ? "(d0+n-1)/(d0*s02/sigma2+n)"
                                            : "(d0+dg)/(d0*s02/sigma2+2*n)";
  }
  return json();
}

long lambda_weight(const Monomial& m) {
  long w = 0;
  for (const auto& f : m.factors()) w += static_cast<long>(f.sym.order) * f.exp;
  return w;
}

std::string power_text(int deg) {
  if (deg == 0) return "1";
  if (deg == 1) return "x";
  return "x^" + std::to_string(deg);
}

// Magnitude rendering of one block; the caller splices signs between blocks.
std::string block_body(const LambdaBlock& b) {
  std::string out;
  Rational mag = b.scale.abs();
  if (!mag.is_one()) {
    out += mag.is_integer() ? mag.str() : "(" + mag.str() + ")";
    out += "*";
  }
  if (!b.lam.is_constant()) out += b.lam.str() + "*";
  bool lone = b.poly.size() == 1 && b.poly.front().second.is_one();
  if (lone) {
    out += power_text(b.poly.front().first);
    return out;
  }
  std::string inner;
  for (const auto& [deg, c] : b.poly) {
    if (!inner.empty()) inner += c.sign() < 0 ? " - " : " + ";
    Rational a = c.abs();
    if (deg == 0) {
      inner += a.str();
    } else if (a.is_one()) {
      inner += power_text(deg);
    } else {
      inner += a.str() + "*" + power_text(deg);
    }
  }
  out += "(" + inner + ")";
  return out;
}

json q_terms_json(const std::vector<QTerm>& terms) {
  json arr = json::array();
  for (const QTerm& t : terms) {
    json e;
    e["he"] = t.he;
    e["r_pow"] = t.r_pow;
    e["coeff"] = t.coeff.str();
    arr.push_back(e);
  }
  return arr;
}

json k_table_json(const KTable& kt) {
  json arr = json::array();
  for (const auto& [jl, poly] : kt.entries()) {
    json e;
    e["j"] = jl.first;
    e["l"] = jl.second;
    e["half_power"] = KTable::power_of(jl.first, jl.second);
    e["coeff"] = poly.str();
    arr.push_back(e);
  }
  return arr;
}

json side_json(const char* name, const std::vector<TermUsability>& flags) {
  json per = json::array();
  for (std::size_t k = 0; k < flags.size(); ++k) {
    json e;
    e["terms"] = static_cast<int>(k);
    e["usable"] = flags[k].usable;
    if (flags[k].violation_x)
      e["violation_x"] = *flags[k].violation_x;
    else
      e["violation_x"] = nullptr;
    per.push_back(e);
  }
  json s;
  s["side"] = name;
  s["per_term"] = per;
  return s;
}

}  // namespace

StatisticKind parse_kind_token(const std::string& token) {
  for (const auto& [name, kind] : kKindTokens) {
    if (token == name) return kind;
  }
  throw std::invalid_argument("statistic: unknown test token \"" + token + "\"");
}

std::string kind_token(const StatisticKind& kind) {
  for (const auto& [name, k] : kKindTokens) {
    if (kind == k) return name;
  }
  throw std::invalid_argument("statistic: estimator not valid for arity");
}

GeneratorSpec parse_generator_token(const std::string& token) {
  std::vector<std::string> f = split(token, ':');
  if (f.empty()) throw std::invalid_argument("generator: empty token");
  GeneratorSpec gen;
  if (f[0] == "gamma") {
    if (f.size() != 3 && f.size() != 4)
      throw std::invalid_argument("generator: gamma wants gamma:shape:scale[:centered]");
    bool centered = false;
    if (f.size() == 4) {
      if (f[3] != "centered")
        throw std::invalid_argument("generator: unknown gamma suffix \"" + f[3] + "\"");
      centered = true;
    }
    gen = GammaGen{parse_number(f[1], "generator"), parse_number(f[2], "generator"), centered};
  } else if (f[0] == "normal") {
    if (f.size() != 3) throw std::invalid_argument("generator: normal wants normal:mean:sd");
    gen = NormalGen{parse_number(f[1], "generator"), parse_number(f[2], "generator")};
  } else if (f[0] == "discrete") {
    if (f.size() < 5 || f.size() % 2 == 0)
      throw std::invalid_argument("generator: discrete wants discrete:x1:p1:x2:p2[...]");
    DiscreteGen d;
    for (std::size_t i = 1; i + 1 < f.size(); i += 2) {
      d.support.push_back(parse_number(f[i], "generator"));
      d.probs.push_back(Rational::parse(f[i + 1]));
    }
    gen = d;
  } else {
    throw std::invalid_argument("generator: unknown family \"" + f[0] + "\"");
  }
  validate_generator(gen);
  return gen;
}

std::string generator_token(const GeneratorSpec& gen) {
  if (const auto* g = std::get_if<GammaGen>(&gen)) {
    std::string t = "gamma:" + format_double(g->shape) + ":" + format_double(g->scale);
    if (g->centered) t += ":centered";
    return t;
  }
  if (const auto* n = std::get_if<NormalGen>(&gen)) {
    return "normal:" + format_double(n->mean) + ":" + format_double(n->sd);
  }
  const auto& d = std::get<DiscreteGen>(gen);
  std::string t = "discrete";
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    t += ":" + format_double(d.support[i]) + ":" + d.probs[i].str();
  }
  return t;
}

MomentSpecDoc parse_moment_spec(const std::string& json_text) {
  json j = parse_json_or_throw(json_text, "moment spec");
  if (!j.is_object()) throw std::invalid_argument("moment spec: document is not an object");
  MomentSpecDoc doc;
  if (j.contains("x") || j.contains("y")) {
    if (!j.contains("x") || !j.contains("y"))
      throw std::invalid_argument("moment spec: two-sample document needs both \"x\" and \"y\"");
    doc.arity = Arity::TwoSample;
    doc.x = parse_sample(j.at("x"));
    doc.y = parse_sample(j.at("y"));
  } else {
    doc.arity = Arity::OneSample;
    doc.x = parse_sample(j);
  }
  return doc;
}

std::string moment_spec_json(const MomentSpecDoc& doc) {
  if (doc.arity == Arity::OneSample) return sample_json(doc.x).dump();
  json j;
  j["x"] = sample_json(doc.x);
  j["y"] = sample_json(doc.y);
  return j.dump();
}

SampleSpec sample_spec_from_data(const std::vector<double>& data, int M) {
  SampleSpec s;
  s.ms = central_moments_from_data(data, M);
  s.n = static_cast<long>(data.size());
  s.source = "data";
  return s;
}

ModeratedPrior parse_prior_json(const std::string& json_text) {
  json j = parse_json_or_throw(json_text, "prior");
  if (!j.is_object()) throw std::invalid_argument("prior: document is not an object");
  ModeratedPrior p{need_number(j, "d0", "prior"), need_number(j, "s02", "prior")};
  return p;
}

std::string prior_json(const ModeratedPrior& prior) {
  json j;
  j["d0"] = prior.d0;
  j["s02"] = prior.s02;
  return j.dump();
}

BoundExpansion bind_moment_spec(const StatisticKind& kind, int K, const MomentSpecDoc& doc,
                                const std::optional<ModeratedPrior>& prior) {
  require_valid(kind);
  if (K < 0 || K > kHardMaxOrder) throw std::invalid_argument("expansion: order out of range");
  if (kind.arity != doc.arity)
    throw std::invalid_argument("moment spec: sample count does not match the statistic");
  std::size_t need = static_cast<std::size_t>(K) + 1;  // mu_2 .. mu_{K+2}
  if (doc.x.ms.mu.size() < need ||
      (kind.arity == Arity::TwoSample && doc.y.ms.mu.size() < need)) {
    throw std::invalid_argument("moment spec: order " + std::to_string(K) +
                                " needs moments through mu_" + std::to_string(K + 2));
  }
  BoundExpansion out;
  out.kind = kind;
  out.K = K;
  if (kind.arity == Arity::OneSample) {
    EstimatorSpec spec = one_sample_spec(kind.estimator, static_cast<double>(doc.x.n),
                                         doc.x.ms.sigma2, prior);
    out.n = spec.n;
    out.ne = bind_expansion(expansion_set(kind.arity, K), estimator_bindings(spec, doc.x.ms));
  } else {
    EstimatorSpec spec =
        two_sample_spec(kind.estimator, static_cast<int>(doc.x.n), static_cast<int>(doc.y.n),
                        doc.x.ms.sigma2, doc.y.ms.sigma2, prior);
    out.n = spec.n;
    out.ne = bind_expansion(expansion_set(kind.arity, K),
                            estimator_bindings(spec, doc.x.ms, &doc.y.ms));
  }
  return out;
}

std::vector<LambdaBlock> lambda_blocks(const UniPoly<SparsePoly>& q) {
  std::map<Monomial, std::map<int, Rational>> groups;
  for (int d = 0; d <= q.degree(); ++d) {
    q[d].for_each_term([&](const Monomial& m, const Rational& c) { groups[m][d] += c; });
  }
  std::vector<LambdaBlock> blocks;
  for (const auto& [m, coeffs] : groups) {
    LambdaBlock b;
    b.lam = m;
    Rational g;
    for (const auto& [deg, c] : coeffs) g = rational_gcd(g, c);
    if (g.is_zero()) continue;
    int top = coeffs.rbegin()->first;
    if (coeffs.at(top).sign() < 0) g = -g;
    b.scale = g;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      Rational c = it->second / g;
      if (!c.is_zero()) b.poly.emplace_back(it->first, c);
    }
    blocks.push_back(std::move(b));
  }
  std::stable_sort(blocks.begin(), blocks.end(), [](const LambdaBlock& a, const LambdaBlock& c) {
    return lambda_weight(a.lam) > lambda_weight(c.lam);
  });
  return blocks;
}

std::string lambda_blocks_text(const std::vector<LambdaBlock>& blocks) {
  if (blocks.empty()) return "0";
  std::string out;
  for (const LambdaBlock& b : blocks) {
    if (out.empty()) {
      if (b.scale.sign() < 0) out += "-";
    } else {
      out += b.scale.sign() < 0 ? " - " : " + ";
    }
    out += block_body(b);
  }
  return out;
}

std::string render_expansion(const StatisticKind& kind, int K, bool lambda_form,
                             bool with_k_table, const std::string& format) {
  require_valid(kind);
  if (format != "json" && format != "text")
    throw std::invalid_argument("expand: format must be json or text");
  bool ordinary_one =
      kind.arity == Arity::OneSample && kind.estimator != Estimator::Moderated;
  if (lambda_form && !ordinary_one) {
    throw std::invalid_argument(
        "expand: the lambda form applies to the ordinary one-sample statistic only");
  }
  const ExpansionSet& es = expansion_set(kind.arity, K);
  const KTable& kt = k_table(kind.arity, K);

  std::vector<std::vector<LambdaBlock>> lam;
  if (lambda_form) {
    LambdaExpansion le = special_case_lambda_form(es);
    for (const auto& qk : le.q) lam.push_back(lambda_blocks(qk));
  }

  if (format == "json") {
    json j;
    j["kind"] = kind_token(kind);
    j["arity"] = arity_name(kind.arity);
    j["order"] = K;
    j["r2"] = bound_r2_form(kind);
    j["r2_symbolic"] = es.r2.str();
    json qs = json::array();
    for (int k = 1; k <= es.K; ++k) {
      json e;
      e["k"] = k;
      e["terms"] = q_terms_json(es.q[k - 1]);
      qs.push_back(e);
    }
    j["q"] = qs;
    if (lambda_form) {
      json ls = json::array();
      for (std::size_t i = 0; i < lam.size(); ++i) {
        json e;
        e["k"] = static_cast<int>(i + 1);
        json bs = json::array();
        for (const LambdaBlock& b : lam[i]) {
          json be;
          be["scale"] = b.scale.str();
          be["lambda"] = b.lam.is_constant() ? "1" : b.lam.str();
          json poly = json::array();
          for (const auto& [deg, c] : b.poly) poly.push_back({{"deg", deg}, {"c", c.str()}});
          be["poly"] = poly;
          bs.push_back(be);
        }
        e["blocks"] = bs;
        e["text"] = "q" + std::to_string(i + 1) + "(x) = " + lambda_blocks_text(lam[i]);
        ls.push_back(e);
      }
      j["lambda_form"] = ls;
    }
    if (with_k_table) j["k_table"] = k_table_json(kt);
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "kind: " << kind_token(kind) << "\n";
  out << "order: " << K << "\n";
  json r2form = bound_r2_form(kind);
  out << "r2 = " << (r2form.is_string() ? r2form.get<std::string>() : r2form.dump()) << "\n";
  out << "r2 (generic) = " << es.r2.str() << "\n";
  for (int k = 1; k <= es.K; ++k) {
    out << "q" << k << "(x;r) =";
    if (es.q[k - 1].empty()) out << " 0";
    bool first = true;
    for (const QTerm& t : es.q[k - 1]) {
      out << (first ? std::string(" ") : "\n" + std::string(9, ' ') + "+ ");
      out << "(" << t.coeff.str() << ") * r^(-" << t.r_pow << ") * He_" << t.he << "(x/r)";
      first = false;
    }
    out << "\n";
  }
  if (lambda_form) {
    out << "lambda form (y = x/r):\n";
    for (std::size_t i = 0; i < lam.size(); ++i) {
      out << "q" << (i + 1) << "(x) = " << lambda_blocks_text(lam[i]) << "\n";
    }
  }
  if (with_k_table) {
    out << "cumulant coefficients k[j,l] (coefficient of n^(-half_power/2)):\n";
    for (const auto& [jl, poly] : kt.entries()) {
      out << "k[" << jl.first << "," << jl.second << "] = " << poly.str() << "\n";
    }
  }
  return out.str();
}

std::string tail_report_json(const TailReport& rep) {
  json j;
  j["n"] = rep.n;
  j["grid"] = {{"lo", rep.grid.lo}, {"hi", rep.grid.hi}, {"step", rep.grid.step}};
  j["sides"] = json::array({side_json("left", rep.left), side_json("right", rep.right)});
  j["usable_order"] = {{"left", rep.usable_left}, {"right", rep.usable_right}};
  return j.dump(2) + "\n";
}

}  // namespace aee
