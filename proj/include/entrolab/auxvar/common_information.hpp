#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entrolab/distribution.hpp"
#include "entrolab/network/aux_spec.hpp"
#include "entrolab/network/problem.hpp"

namespace entrolab::auxvar {

/// Gacs-Korner common part of (X, Y): connected components of the bipartite
/// support graph, K = component label.
struct GkDecomposition {
  std::vector<int> x_component;  // per X symbol; -1 when the symbol has zero mass
  std::vector<int> y_component;
  int components = 0;
  std::vector<Rational> component_mass;
  Rational entropy;  // H(K), bits
  bool exact = true;
};

/// Requires exactly two variables (DomainError otherwise).
GkDecomposition gk_common_information(const JointDistribution& dist);

struct DeltaSearchOptions {
  int k_alphabet = 0;  // 0: |supp X| * |supp Y|, capped at 16
  int resolution = 8;  // conditionals are multiples of 1/r, for every r in 2..resolution
  int restarts = 4;    // random starts per resolution, on top of the fixed starts
  std::uint64_t seed = 0;
};

struct DeltaSearchResult {
  int k_alphabet = 0;
  int resolution = 0;  // grid of the winning candidate
  std::string start;   // which start produced it, e.g. "K=X" or "random 3"
  /// P(K = k | X, Y) for each outcome of `dist` in stored order.
  std::vector<std::vector<Rational>> conditional;
  Rational h_k_given_x;
  Rational h_k_given_y;
  Rational i_xy_given_k;
  Rational delta;  // max of the three
  JointDistribution joint;  // (X, Y, K)
};

/// Upper bound on min over K of max(H(K|X), H(K|Y), I(X;Y|K)) by multi-start
/// coordinate descent over quantized conditionals. Deterministic in the seed;
/// larger resolution or more restarts never give a worse result. The three
/// components of the result are re-evaluated with the entropy oracle.
DeltaSearchResult delta_star_search(const JointDistribution& dist, const DeltaSearchOptions& options);

enum class PairwiseMode { Gk, Delta };

struct PairInfo {
  std::string aux_id;
  std::size_t first = 0;  // source indices
  std::size_t second = 0;
  Rational entropy;       // H(K) for gk mode
  Rational delta;         // bound used in delta mode
};

struct PairwiseAux {
  network::AuxSpec spec;
  std::vector<PairInfo> pairs;
};

struct PairwiseOptions {
  PairwiseMode mode = PairwiseMode::Gk;
  DeltaSearchOptions delta;
  /// Delta mode: one delta per pair, or the largest one for every pair.
  bool per_pair_delta = true;
};

/// One auxiliary per unordered source pair, named K<i><j> by 1-based source
/// position. Gk mode: K is the common part, a function of either source,
/// with all joint entropies fixed and H(K|Y_i) = H(K|Y_j) = 0 rows. Delta
/// mode: rows H(K|Y_i) <= d, H(K|Y_j) <= d, I(Y_i;Y_j|K) <= d.
PairwiseAux pairwise_aux_for_network(const network::NetworkProblem& p, const PairwiseOptions& options = {});

}  // namespace entrolab::auxvar
