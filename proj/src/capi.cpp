#include "aee/aee.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>

#include "diagnostics.hpp"
#include "expansion.hpp"
#include "mc.hpp"
#include "render.hpp"
#include "sampling_moments.hpp"

using namespace aee;

struct aee_expansion {
  StatisticKind kind;
  int K;
};

struct aee_bound {
  BoundExpansion be;
};

struct aee_empirical {
  EmpiricalCdf e;
};

namespace {

thread_local std::string g_error;

template <class F>
int guarded(F&& f) {
  try {
    f();
    g_error.clear();
    return AEE_OK;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return AEE_EINVAL;
  } catch (const std::domain_error& e) {
    g_error = e.what();
    return AEE_EDOMAIN;
  } catch (const std::runtime_error& e) {
    g_error = e.what();
    return AEE_EDOMAIN;
  } catch (const std::exception& e) {
    g_error = e.what();
    return AEE_EDERIVE;
  } catch (...) {
    g_error = "unknown failure";
    return AEE_EDERIVE;
  }
}

const char* require(const char* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " is null");
  return p;
}

template <class T>
T* require_handle(T* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " handle is null");
  return p;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::optional<ModeratedPrior> optional_prior(const char* prior_json) {
  if (prior_json == nullptr || *prior_json == '\0') return std::nullopt;
  return parse_prior_json(prior_json);
}

}  // namespace

extern "C" {

const char* aee_error_message(void) { return g_error.c_str(); }

void aee_string_free(char* s) { std::free(s); }

int aee_expansion_create(const char* kind_token, int order, aee_expansion** out) {
  return guarded([&] {
    require_handle(out, "output");
    StatisticKind kind = parse_kind_token(require(kind_token, "kind token"));
    if (order < 0 || order > kHardMaxOrder)
      throw std::invalid_argument("expansion: order out of range");
    expansion_set(kind.arity, order);  // derive now so later calls cannot fail
    *out = new aee_expansion{kind, order};
  });
}

void aee_expansion_free(aee_expansion* e) { delete e; }

int aee_expansion_render(const aee_expansion* e, const char* format, int lambda_form,
                         int with_k_table, char** out) {
  return guarded([&] {
    require_handle(e, "expansion");
    require_handle(out, "output");
    std::string text = render_expansion(e->kind, e->K, lambda_form != 0, with_k_table != 0,
                                        require(format, "format"));
    *out = copy_out(text);
  });
}

int aee_bound_create(const aee_expansion* e, const char* moments_json, const char* prior_json,
                     aee_bound** out) {
  return guarded([&] {
    require_handle(e, "expansion");
    require_handle(out, "output");
    MomentSpecDoc doc = parse_moment_spec(require(moments_json, "moment spec"));
    *out = new aee_bound{bind_moment_spec(e->kind, e->K, doc, optional_prior(prior_json))};
  });
}

void aee_bound_free(aee_bound* b) { delete b; }

int aee_bound_info(const aee_bound* b, double* n, double* r2, int* order) {
  return guarded([&] {
    require_handle(b, "bound");
    if (n != nullptr) *n = b->be.n;
    if (r2 != nullptr) *r2 = b->be.ne.r2;
    if (order != nullptr) *order = b->be.K;
  });
}

int aee_eval_cdf(const aee_bound* b, double x, int terms, double* out) {
  return guarded([&] {
    require_handle(b, "bound");
    require_handle(out, "output");
    int t = terms < 0 ? b->be.K : terms;
    *out = evaluate_cdf(b->be.ne, b->be.n, x, t);
  });
}

int aee_tail_report(const aee_bound* b, double lo, double hi, double step, char** json_out) {
  return guarded([&] {
    require_handle(b, "bound");
    require_handle(json_out, "output");
    TailReport rep = step <= 0.0 ? tail_scan(b->be.ne, b->be.n)
                                 : tail_scan(b->be.ne, b->be.n, GridSpec{lo, hi, step});
    *json_out = copy_out(tail_report_json(rep));
  });
}

int aee_invert(const aee_bound* b, double p, const char* side, int terms, double* out) {
  return guarded([&] {
    require_handle(b, "bound");
    require_handle(out, "output");
    std::string s = require(side, "side");
    Side which;
    if (s == "left") {
      which = Side::Left;
    } else if (s == "right") {
      which = Side::Right;
    } else {
      throw std::invalid_argument("invert: side must be \"left\" or \"right\"");
    }
    int t = terms < 0 ? b->be.K : terms;
    *out = invert_cdf(b->be.ne, b->be.n, p, which, t);
  });
}

int aee_moments_from_data(const double* xs, size_t len, int max_order, char** moments_json) {
  return guarded([&] {
    require_handle(moments_json, "output");
    if (xs == nullptr && len > 0) throw std::invalid_argument("data pointer is null");
    std::vector<double> data(xs, xs + len);
    MomentSpecDoc doc;
    doc.arity = Arity::OneSample;
    doc.x = sample_spec_from_data(data, max_order);
    *moments_json = copy_out(moment_spec_json(doc));
  });
}

int aee_generator_moments(const char* gen_token, int n, int max_order, char** moments_json) {
  return guarded([&] {
    require_handle(moments_json, "output");
    GeneratorSpec gen = parse_generator_token(require(gen_token, "generator token"));
    if (n < 2) throw std::invalid_argument("generator moments: n must be at least 2");
    MomentSpecDoc doc;
    doc.arity = Arity::OneSample;
    doc.x.ms = declared_moment_set(generator_moments(gen, max_order));
    doc.x.n = n;
    doc.x.source = "declared";
    *moments_json = copy_out(moment_spec_json(doc));
  });
}

int aee_simulate(const char* gen_token, const char* kind_token, int nx, int ny, long reps,
                 uint64_t seed, const char* prior_json, int threads, aee_empirical** out) {
  return guarded([&] {
    require_handle(out, "output");
    GeneratorSpec gen = parse_generator_token(require(gen_token, "generator token"));
    StatisticKind kind = parse_kind_token(require(kind_token, "kind token"));
    EmpiricalCdf e = sample_statistic(gen, kind, SimSizes{nx, ny}, reps, seed,
                                      optional_prior(prior_json), threads);
    *out = new aee_empirical{std::move(e)};
  });
}

void aee_empirical_free(aee_empirical* e) { delete e; }

int aee_empirical_at(const aee_empirical* e, double x, double* out) {
  return guarded([&] {
    require_handle(e, "empirical");
    require_handle(out, "output");
    *out = empirical_cdf_at(e->e, x);
  });
}

long aee_empirical_reps(const aee_empirical* e) { return e == nullptr ? 0 : e->e.reps; }

long aee_empirical_resampled(const aee_empirical* e) {
  return e == nullptr ? 0 : e->e.resampled;
}

const double* aee_empirical_values(const aee_empirical* e, long* len) {
  if (e == nullptr) {
    if (len != nullptr) *len = 0;
    return nullptr;
  }
  if (len != nullptr) *len = static_cast<long>(e->e.values.size());
  return e->e.values.data();
}

}  // extern "C"
