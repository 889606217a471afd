// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "hardylab/hardylab.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kUndecidable = 3 };

int exit_for(hl_status s) {
  switch (s) {
    case HL_OK: return kPass;
    case HL_ERR_UNDECIDABLE:
    case HL_ERR_ILL_CONDITIONED: return kUndecidable;
    case HL_ERR_INVALID_ARGUMENT:
    case HL_ERR_PARSE:
    case HL_ERR_IO:
    case HL_ERR_UNKNOWN_SUITE: return kUsage;
    default: return kFail;
  }
}

int report_error(hl_status s) {
  std::cerr << "hardylab: " << hl_status_name(s) << ": " << hl_last_error() << "\n";
  return exit_for(s);
}

struct CString {
  char* p = nullptr;
  ~CString() { hl_string_free(p); }
};

struct RunOptions {
  std::string suite = "all";
  int n = 64;
  double tol_scale = 1.0;
  std::uint64_t seed = 0;
  int instances = 0;
  int threads = 0;
  std::string out = "-";
  std::string format = "json";
  bool timings = false;
};

int run(const RunOptions& o) {
  hl_config* raw = nullptr;
  if (hl_status s = hl_config_create(&raw)) return report_error(s);
  std::unique_ptr<hl_config, decltype(&hl_config_free)> cfg(raw, hl_config_free);
  for (hl_status s : {hl_config_set_n(raw, o.n), hl_config_set_tol_scale(raw, o.tol_scale),
                      hl_config_set_seed(raw, o.seed), hl_config_set_instances(raw, o.instances),
                      hl_config_set_threads(raw, o.threads), hl_config_set_timings(raw, o.timings ? 1 : 0)})
    if (s != HL_OK) return report_error(s);

  hl_report* rep = nullptr;
  if (hl_status s = hl_run_suite(o.suite.c_str(), raw, &rep)) return report_error(s);
  std::unique_ptr<hl_report, decltype(&hl_report_free)> report(rep, hl_report_free);

  if (o.out == "-") {
    CString text;
    if (hl_status s = hl_report_emit(rep, o.format.c_str(), &text.p)) return report_error(s);
    std::fwrite(text.p, 1, std::char_traits<char>::length(text.p), stdout);
  } else if (hl_status s = hl_report_write(rep, o.out.c_str(), o.format.c_str())) {
    return report_error(s);
  }
  int total = 0, passed = 0, failed = 0, undecidable = 0;
  hl_report_summary(rep, &total, &passed, &failed, &undecidable);
  std::cerr << o.suite << ": " << total << " cases, " << passed << " passed, " << failed << " failed, "
            << undecidable << " undecidable\n";
  return hl_report_exit_status(rep);
}

struct ClassifyOptions {
  std::string command;
  std::string input = "-";
  std::string inline_json;
  int n = 64;
  double tol = 0.0;
  double tol_scale = 1.0;
  double tail = 1e-12;
};

int classify(const ClassifyOptions& o) {
  std::string text = o.inline_json;
  if (text.empty()) {
    if (o.input == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(o.input, std::ios::binary);
      if (!in) {
        std::cerr << "hardylab: cannot read '" << o.input << "'\n";
        return kUsage;
      }
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
  }
  hl_classification* raw = nullptr;
  if (hl_status s = hl_classify(o.command.c_str(), text.c_str(), o.n, o.tol, o.tol_scale, o.tail, &raw))
    return report_error(s);
  std::unique_ptr<hl_classification, decltype(&hl_classification_free)> res(raw, hl_classification_free);
  CString out;
  if (hl_status s = hl_classification_json(raw, &out.p)) return report_error(s);
  std::cout << out.p;
  return kPass;
}

struct WitnessOptions {
  std::string theorem;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::string family;
  std::string perturb;
  double factor = 1.1;
};

int witness(const WitnessOptions& o) {
  CString out;
  if (hl_status s = hl_witness_json(o.theorem.c_str(), o.seed, o.index, o.family.c_str(), o.perturb.c_str(),
                                    o.factor, &out.p))
    return report_error(s);
  std::cout << out.p;
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-section verification of Toeplitz and Hankel product identities"};
  app.set_version_flag("--version", std::string(hl_version()));
  app.require_subcommand(1);

  RunOptions ro;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a verification suite and emit a report");
  std::string suites;
  for (size_t i = 0; i < hl_suite_count(); ++i) suites += (i ? ", " : "") + std::string(hl_suite_name(i));
  run_cmd->add_option("--suite", ro.suite, "One of: " + suites)->envname("HARDYLAB_SUITE")->capture_default_str();
  run_cmd->add_option("--n", ro.n, "Section size N")
      ->envname("HARDYLAB_N")
      ->check(CLI::Range(8, 512))
      ->capture_default_str();
  run_cmd->add_option("--tol-scale", ro.tol_scale, "Multiplier on every tolerance")
      ->envname("HARDYLAB_TOL_SCALE")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--seed", ro.seed, "Generator seed")->envname("HARDYLAB_SEED")->capture_default_str();
  run_cmd->add_option("--instances", ro.instances, "Instances per family (0: suite default)")
      ->envname("HARDYLAB_INSTANCES")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run_cmd->add_option("--threads", ro.threads, "Worker threads (0: hardware concurrency)")
      ->envname("HARDYLAB_THREADS")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out", ro.out, "Report path, - for stdout")->envname("HARDYLAB_OUT")->capture_default_str();
  run_cmd->add_option("--format", ro.format, "json or csv")
      ->envname("HARDYLAB_FORMAT")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  run_cmd->add_flag("--timings", ro.timings, "Record per-case runtimes (reports are then not byte-stable)")
      ->envname("HARDYLAB_TIMINGS");

  ClassifyOptions co;
  CLI::App* cls = app.add_subcommand("classify", "Classify user-supplied symbols");
  cls->add_option("command", co.command, "product, hankel or selfcommutator")
      ->required()
      ->check(CLI::IsMember({"product", "hankel", "selfcommutator"}));
  cls->add_option("--input", co.input, "Symbol JSON file, - for stdin")->capture_default_str();
  cls->add_option("--json", co.inline_json, "Symbol JSON given inline");
  cls->add_option("--n", co.n, "Window size")->envname("HARDYLAB_N")->check(CLI::Range(1, 4096))->capture_default_str();
  cls->add_option("--tol", co.tol, "Absolute tolerance (0: schedule)")->check(CLI::NonNegativeNumber);
  cls->add_option("--tol-scale", co.tol_scale, "Multiplier on the tolerance schedule")
      ->envname("HARDYLAB_TOL_SCALE")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cls->add_option("--tail", co.tail, "Truncation budget for Blaschke leaves")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  WitnessOptions wo;
  CLI::App* wit = app.add_subcommand("witness", "Print a generated instance as JSON");
  wit->add_option("--theorem", wo.theorem, "main1, thm2H, main3_case1, main3_case2, lemma1T or lemma2Ts")->required();
  wit->add_option("--seed", wo.seed, "Generator seed")->envname("HARDYLAB_SEED");
  wit->add_option("--index", wo.index, "Instance index");
  wit->add_option("--family", wo.family, "Family (default: chosen from the index)");
  wit->add_option("--perturb", wo.perturb, "Parameter to perturb");
  wit->add_option("--factor", wo.factor, "Perturbation factor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*run_cmd) return run(ro);
  if (*cls) return classify(co);
  return witness(wo);
}
