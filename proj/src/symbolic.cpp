#include "tilecocycle/symbolic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tc {

int SymbolSequence::sym(long long m) const {
  if (m >= 1) {
    if (m > static_cast<long long>(plus.size())) throw std::out_of_range("sequence horizon (plus)");
    return plus[static_cast<size_t>(m - 1)];
  }
  const long long idx = -m;  // m <= 0 -> x-_{1-m}, index 1-m-1 = -m
  if (idx >= static_cast<long long>(minus.size())) throw std::out_of_range("sequence horizon (minus)");
  return minus[static_cast<size_t>(idx)];
}

void MeasureSampler::validate() const {
  auto check_prob = [](const std::vector<double>& v, const char* what) {
    if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty");
    double s = 0;
    for (double q : v) {
      if (q < 0) throw std::invalid_argument(std::string(what) + ": negative entry");
      s += q;
    }
    if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument(std::string(what) + ": does not sum to 1");
  };
  switch (kind) {
    case Kind::Bernoulli:
      check_prob(p, "bernoulli p");
      break;
    case Kind::Markov:
      check_prob(initial, "markov initial");
      for (const auto& row : trans) check_prob(row, "markov row");
      if (trans.size() != initial.size()) throw std::invalid_argument("markov: shape mismatch");
      break;
    case Kind::Explicit:
      if (word.empty()) throw std::invalid_argument("explicit word: empty");
      break;
  }
}

std::vector<int> MeasureSampler::support() const {
  std::vector<int> out;
  switch (kind) {
    case Kind::Bernoulli:
      for (size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0) out.push_back(static_cast<int>(i));
      break;
    case Kind::Markov: {
      std::vector<bool> seen(initial.size(), false);
      for (size_t i = 0; i < initial.size(); ++i)
        if (initial[i] > 0) seen[i] = true;
      // Closure under positive transitions.
      for (size_t pass = 0; pass < initial.size(); ++pass)
        for (size_t i = 0; i < trans.size(); ++i)
          if (seen[i])
            for (size_t j = 0; j < trans[i].size(); ++j)
              if (trans[i][j] > 0) seen[j] = true;
      for (size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(static_cast<int>(i));
      break;
    }
    case Kind::Explicit: {
      std::vector<bool> seen;
      for (int l : word) {
        if (l >= static_cast<int>(seen.size())) seen.resize(l + 1, false);
        seen[l] = true;
      }
      for (size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(static_cast<int>(i));
      break;
    }
  }
  return out;
}

namespace {

std::vector<int> draw_one_sided(const MeasureSampler& s, int K, std::uint64_t stream) {
  std::mt19937_64 rng(s.seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  std::vector<int> out;
  out.reserve(K);
  switch (s.kind) {
    case MeasureSampler::Kind::Bernoulli: {
      std::discrete_distribution<int> d(s.p.begin(), s.p.end());
      for (int k = 0; k < K; ++k) out.push_back(d(rng));
      break;
    }
    case MeasureSampler::Kind::Markov: {
      std::discrete_distribution<int> init(s.initial.begin(), s.initial.end());
      int state = init(rng);
      out.push_back(state);
      for (int k = 1; k < K; ++k) {
        std::discrete_distribution<int> step(s.trans[state].begin(), s.trans[state].end());
        state = step(rng);
        out.push_back(state);
      }
      break;
    }
    case MeasureSampler::Kind::Explicit:
      for (int k = 0; k < K; ++k) out.push_back(s.word[k % s.word.size()]);
      break;
  }
  return out;
}

}  // namespace

SymbolSequence sample_sequence(const MeasureSampler& s, int K) {
  if (K < 1) throw std::invalid_argument("sample_sequence: K >= 1 required");
  s.validate();
  SymbolSequence x;
  x.plus = draw_one_sided(s, K, 0);
  x.minus = draw_one_sided(s, K, 1);
  x.seed = s.seed;
  switch (s.kind) {
    case MeasureSampler::Kind::Bernoulli: x.sampler_id = "bernoulli"; break;
    case MeasureSampler::Kind::Markov: x.sampler_id = "markov"; break;
    case MeasureSampler::Kind::Explicit: x.sampler_id = "explicit"; break;
  }
  return x;
}

WordCheck word_check(const SubstitutionSystem& sys, const std::vector<int>& w, int split) {
  const int n = static_cast<int>(w.size());
  if (split < 1 || split >= n) throw std::invalid_argument("word_check: 1 <= split < |w| required");
  WordCheck out;
  out.word = w;
  out.split = split;

  // Simple: the word never overlaps a shift of itself.
  out.simple = true;
  for (int i = 2; i <= n; ++i) {
    bool equal = true;
    for (int t = 0; t + i - 1 < n; ++t)
      if (w[t + i - 1] != w[t]) { equal = false; break; }
    if (equal) { out.simple = false; break; }
  }

  const int m = sys.num_types();
  Eigen::MatrixXi qm = Eigen::MatrixXi::Identity(m, m);
  Eigen::MatrixXi qp = Eigen::MatrixXi::Identity(m, m);
  // Q- = A_{w_split} ... A_{w_1}; Q+ = A_{w_n} ... A_{w_{split+1}}.
  for (int k = 0; k < split; ++k) qm = substitution_matrix(sys, w[k]) * qm;
  for (int k = split; k < n; ++k) qp = substitution_matrix(sys, w[k]) * qp;
  out.q_minus = qm;
  out.q_plus = qp;
  out.positively_simple = out.simple && (qm.array() >= 2).all() && (qp.array() >= 2).all();
  return out;
}

std::vector<long long> return_times(const SymbolSequence& x, const std::vector<int>& w,
                                    int split, long long n_horizon) {
  const long long wm = split;                                  // |w-|
  const long long wp = static_cast<long long>(w.size()) - wm;  // |w+|
  if (n_horizon + wp > static_cast<long long>(x.plus.size()))
    throw std::out_of_range("return_times: horizon exceeds sequence length");
  std::vector<long long> out;
  for (long long k = 0; k <= n_horizon; ++k) {
    bool match = true;
    for (long long t = 0; t < wp && match; ++t)
      if (x.sym(k + 1 + t) != w[static_cast<size_t>(wm + t)]) match = false;
    for (long long t = 0; t < wm && match; ++t)
      if (x.sym(k - t) != w[static_cast<size_t>(wm - 1 - t)]) match = false;
    if (match) out.push_back(k);
  }
  return out;
}

}  // namespace tc
