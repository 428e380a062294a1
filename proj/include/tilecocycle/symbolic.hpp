#pragma once

#include "tilecocycle/substitution.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tc {

// Two-sided symbol sequence over {0..N-1}: plus[k] = x_{k+1}, minus[k] = x_{-(k+1)}.
struct SymbolSequence {
  std::vector<int> plus;
  std::vector<int> minus;
  std::string sampler_id;
  std::uint64_t seed = 0;

  int sym(long long m) const;  // flattened: m >= 1 -> x+_m; m <= 0 -> x-_{1-m}
};

struct MeasureSampler {
  enum class Kind { Bernoulli, Markov, Explicit };
  Kind kind = Kind::Bernoulli;
  std::vector<double> p;                   // bernoulli
  std::vector<std::vector<double>> trans;  // markov row-stochastic
  std::vector<double> initial;             // markov
  std::vector<int> word;                   // explicit, repeated
  std::uint64_t seed = 0;

  void validate() const;
  std::vector<int> support() const;  // letters with positive probability
};

SymbolSequence sample_sequence(const MeasureSampler& s, int K);

struct WordCheck {
  std::vector<int> word;
  int split = 0;
  bool simple = false;
  Eigen::MatrixXi q_minus, q_plus;
  bool positively_simple = false;
};

WordCheck word_check(const SubstitutionSystem& sys, const std::vector<int>& w, int split);

// All k in [0, n_horizon] such that the word w straddles position k of the
// flattened sequence with its split at k: sym(k+1 .. k+|w+|) = w+ and
// sym(k+1-|w-| .. k) = w-.
std::vector<long long> return_times(const SymbolSequence& x, const std::vector<int>& w,
                                    int split, long long n_horizon);

}  // namespace tc
