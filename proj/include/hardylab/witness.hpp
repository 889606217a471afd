// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardylab/projection_lab.hpp"
#include "hardylab/symbol.hpp"

namespace hardylab {

/// Counter-based stream: every draw is SplitMix64 of (key, counter), with the
/// key hashed from (seed, stream name, index). Streams never share state.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index);
  std::uint64_t next();
  double uniform();                 // [0, 1) with 53 bits
  double uniform(double lo, double hi);
  int integer(int lo, int hi);      // inclusive
  double normal();
  cplx unit();                      // uniform on the circle
  cplx disk(double radius);         // uniform in the disk

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Zeros i.i.d. uniform in the disk of radius max_radius, unimodular factor
/// uniform on the circle.
BlaschkeProduct random_blaschke(Rng& rng, int degree, double max_radius);
BlaschkeProduct random_blaschke(std::uint64_t seed, int degree, double max_radius);

struct FejerRiesz {
  LaurentPoly v;                 // analytic, no zeros in the closed disk
  std::vector<cplx> inner_roots; // roots of z^d w inside the disk
  double residual = 0.0;         // sup-grid | |v|^2 - w |
  double threshold = 0.0;        // 100 * structural tolerance
};

/// Factors a strictly positive trigonometric polynomial w = |v|^2.
FejerRiesz fejer_riesz(const LaurentPoly& w, double tol);

struct Perturbation {
  std::string parameter;
  double factor = 1.0;
};

struct WitnessSpec {
  TheoremTag theorem = TheoremTag::main1;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::string family;         // empty picks one from the index
  int max_degree = 3;         // Blaschke degree (<= 4)
  double max_radius = 0.8;
  int max_bandwidth = 3;      // Laurent bandwidth of free polynomials (<= 4)
  double tail_target = 1e-10; // truncation budget per Blaschke-backed symbol
  std::optional<Perturbation> perturbation;
};

struct Expected {
  TheoremTag tag = TheoremTag::none;
  std::string subcase;
  std::optional<int> degree;  // degree of the inner factor behind the projection
  bool complement = false;    // trace is n - degree (range theta H^2) instead of degree
  std::map<std::string, cplx> constants;
  std::optional<SymbolExpr> theta;  // gauge-fixed as the classifier reports it
  std::optional<LaurentPoly> h;
};

struct Witness {
  TheoremTag theorem = TheoremTag::main1;
  std::string family;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  bool band_limited = true;
  std::map<std::string, SymbolExpr> symbols;  // f, g | f, g, phi, psi | phi, u, v
  std::map<std::string, cplx> params;
  std::optional<Perturbation> perturbation;
  Expected expected;
  double tail_target = 1e-10;

  double expected_trace(int n) const;
  CertifiedTruncation truncated(const std::string& name) const;
  std::optional<Case2Metadata> case2_metadata() const;
};

/// Families per theorem:
///   main1, thm2H, main3_case1: "monomial" (theta = kappa z^m) or "blaschke"
///   main3_case2: "monomial" (u = z^m, h from a fixed grid)
///   lemma1T: "(1)", "(2)"
///   lemma2Ts: "(1)", "(2)", "(3)(a)(i)", "(3)(a)(ii)", "(3)(b)"
/// Perturbable parameters: main1 "a", thm2H "mu", main3_case1 "b",
/// main3_case2 "v", lemma1T "lambda" (family (2)). lemma2Ts accepts
/// "imag_shift", which adds i (factor - 1) to the family's first constant and
/// so breaks its reality or unit condition.
Witness make_case(const WitnessSpec& spec);

std::vector<std::string> witness_families(TheoremTag t);

/// Runs the classifier for the witness's theorem at window n.
ClassificationResult classify_witness(const Witness& w, int n, double tol);

nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

}  // namespace hardylab
