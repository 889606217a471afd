// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include "hardylab/hardylab.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/error.hpp"
#include "hardylab/report.hpp"
#include "hardylab/symbol_json.hpp"
#include "hardylab/witness.hpp"

struct hl_config {
  hardylab::ReportConfig cfg;
};

struct hl_report {
  hardylab::Report report;
};

struct hl_classification {
  hardylab::ClassificationResult result;
  std::vector<hardylab::SymbolExpr> inputs;
};

namespace {

using namespace hardylab;
using nlohmann::json;

thread_local std::string last_error;

hl_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return HL_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return HL_ERR_PARSE;
    case ErrorCode::undecidable: return HL_ERR_UNDECIDABLE;
    case ErrorCode::ill_conditioned: return HL_ERR_ILL_CONDITIONED;
    case ErrorCode::incompatible_spaces: return HL_ERR_INCOMPATIBLE_SPACES;
    case ErrorCode::io: return HL_ERR_IO;
    case ErrorCode::unknown_suite: return HL_ERR_UNKNOWN_SUITE;
  }
  return HL_ERR_INTERNAL;
}

template <class F>
hl_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return HL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return HL_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return HL_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ReportFormat format_of(const char* f) {
  need(f, "format");
  const auto fmt = report_format_from_string(f);
  if (!fmt) fail(ErrorCode::invalid_argument, std::string("unknown report format '") + f + "'");
  return *fmt;
}

SymbolExpr symbol_at(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::parse, std::string("input lacks symbol '") + key + "'");
  return symbol_from_json(j.at(key));
}

double resolved_tol(double tol, double scale, std::initializer_list<const CertifiedTruncation*> syms, int n) {
  if (tol > 0.0) return tol;
  require(scale > 0.0, "tolerance scale must be positive");
  return tolerance_schedule(syms, n, scale).value;
}

}  // namespace

extern "C" {

const char* hl_version(void) { return artifact_version(); }

const char* hl_status_name(hl_status s) {
  switch (s) {
    case HL_OK: return "ok";
    case HL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case HL_ERR_PARSE: return "parse";
    case HL_ERR_UNDECIDABLE: return "undecidable";
    case HL_ERR_ILL_CONDITIONED: return "ill_conditioned";
    case HL_ERR_INCOMPATIBLE_SPACES: return "incompatible_spaces";
    case HL_ERR_IO: return "io";
    case HL_ERR_UNKNOWN_SUITE: return "unknown_suite";
    case HL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* hl_last_error(void) { return last_error.c_str(); }

void hl_string_free(char* s) { std::free(s); }

hl_status hl_config_create(hl_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hl_config{};
  });
}

void hl_config_free(hl_config* c) { delete c; }

hl_status hl_config_set_n(hl_config* c, int n) {
  return guarded([&] {
    need(c, "config");
    require(n >= 8 && n <= 512, "N must lie in 8..512");
    c->cfg.n = n;
    c->cfg.m = n + 8;
  });
}

hl_status hl_config_set_seed(hl_config* c, uint64_t seed) {
  return guarded([&] {
    need(c, "config");
    c->cfg.seed = seed;
  });
}

hl_status hl_config_set_tol_scale(hl_config* c, double scale) {
  return guarded([&] {
    need(c, "config");
    require(scale > 0.0, "tolerance scale must be positive");
    c->cfg.tol_scale = scale;
  });
}

hl_status hl_config_set_instances(hl_config* c, int instances) {
  return guarded([&] {
    need(c, "config");
    require(instances >= 0, "instance count must be nonnegative");
    c->cfg.instances = instances;
  });
}

hl_status hl_config_set_timings(hl_config* c, int enabled) {
  return guarded([&] {
    need(c, "config");
    c->cfg.timings = enabled != 0;
  });
}

hl_status hl_config_set_threads(hl_config* c, int threads) {
  return guarded([&] {
    need(c, "config");
    require(threads >= 0, "thread count must be nonnegative");
    c->cfg.threads = threads;
  });
}

size_t hl_suite_count(void) { return suite_names().size(); }

const char* hl_suite_name(size_t i) { return i < suite_names().size() ? suite_names()[i].c_str() : nullptr; }

hl_status hl_run_suite(const char* suite, const hl_config* c, hl_report** out) {
  return guarded([&] {
    need(suite, "suite");
    need(c, "config");
    need(out, "out");
    *out = new hl_report{run_suite(suite, c->cfg)};
  });
}

hl_status hl_report_from_json(const char* text, hl_report** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = new hl_report{report_from_json(json::parse(text))};
  });
}

void hl_report_free(hl_report* r) { delete r; }

hl_status hl_report_summary(const hl_report* r, int* total, int* passed, int* failed, int* undecidable) {
  return guarded([&] {
    need(r, "report");
    const ReportSummary s = r->report.summary();
    if (total) *total = s.total;
    if (passed) *passed = s.passed;
    if (failed) *failed = s.failed;
    if (undecidable) *undecidable = s.undecidable;
  });
}

int hl_report_exit_status(const hl_report* r) { return r ? exit_status(r->report) : 2; }

hl_status hl_report_emit(const hl_report* r, const char* format, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(emit_report(r->report, format_of(format)));
  });
}

hl_status hl_report_write(const hl_report* r, const char* path, const char* format) {
  return guarded([&] {
    need(r, "report");
    need(path, "path");
    write_report(r->report, path, format_of(format));
  });
}

hl_status hl_classify(const char* command, const char* symbols_json, int n, double tol, double tol_scale,
                      double tail, hl_classification** out) {
  return guarded([&] {
    need(command, "command");
    need(symbols_json, "symbols");
    need(out, "out");
    require(n >= 1 && n <= 4096, "N must lie in 1..4096");
    json j;
    try {
      j = json::parse(symbols_json);
    } catch (const json::exception& e) {
      fail(ErrorCode::parse, std::string("symbol JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::parse, "symbol JSON must be an object");
    const double target = tail > 0.0 ? tail : 1e-12;
    const std::string cmd = command;
    auto res = std::make_unique<hl_classification>();
    if (cmd == "product" || cmd == "hankel") {
      const SymbolExpr fe = symbol_at(j, "f"), ge = symbol_at(j, "g");
      const CertifiedTruncation f = truncate_to_tail(fe, target), g = truncate_to_tail(ge, target);
      const double t = resolved_tol(tol, tol_scale, {&f, &g}, n);
      res->result = cmd == "product" ? toeplitz_product_classify(f, g, n, t) : hankel_product_classify(f, g, n, t);
      res->inputs = {fe, ge};
    } else if (cmd == "selfcommutator") {
      const SymbolExpr pe = symbol_at(j, "phi");
      const CertifiedTruncation phi = truncate_to_tail(pe, target);
      std::optional<Case2Metadata> meta;
      if (j.contains("u") || j.contains("v")) {
        const SymbolExpr ue = symbol_at(j, "u"), ve = symbol_at(j, "v");
        meta = Case2Metadata{truncate_to_tail(ue, target), truncate_to_tail(ve, target),
                             j.contains("c") ? complex_from_json(j.at("c")) : cplx(0.0), std::nullopt};
        if (ue.kind() == SymbolExpr::Kind::blaschke) meta->u_blaschke = ue.blaschke();
      }
      const double t = resolved_tol(tol, tol_scale, {&phi}, n);
      res->result = self_commutator_classify(phi, n, t, meta);
      res->inputs = {pe};
    } else {
      fail(ErrorCode::invalid_argument, "unknown classify command '" + cmd + "'");
    }
    *out = res.release();
  });
}

void hl_classification_free(hl_classification* c) { delete c; }

const char* hl_classification_tag(const hl_classification* c) { return c ? to_string(c->result.tag) : nullptr; }

hl_status hl_classification_json(const hl_classification* c, char** out) {
  return guarded([&] {
    need(c, "classification");
    need(out, "out");
    *out = dup(classification_to_json(c->result, c->inputs).dump(1) + "\n");
  });
}

hl_status hl_witness_json(const char* theorem, uint64_t seed, uint64_t index, const char* family,
                          const char* perturb_param, double factor, char** out) {
  return guarded([&] {
    need(theorem, "theorem");
    need(out, "out");
    const auto tag = theorem_from_string(theorem);
    if (!tag) fail(ErrorCode::invalid_argument, std::string("unknown theorem '") + theorem + "'");
    WitnessSpec s;
    s.theorem = *tag;
    s.seed = seed;
    s.index = index;
    if (family) s.family = family;
    if (perturb_param && *perturb_param) s.perturbation = Perturbation{perturb_param, factor};
    *out = dup(witness_to_json(make_case(s)).dump(1) + "\n");
  });
}

}  // extern "C"
