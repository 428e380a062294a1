#include "tilecocycle/returns.hpp"

#include <map>
#include <set>

namespace tc {

namespace {

std::vector<long long> key_of(const IVec& v) {
  return std::vector<long long>(v.data(), v.data() + v.size());
}

}  // namespace

ReturnVectorSet enumerate_return_vectors(const SubstitutionSystem& sys,
                                         const std::vector<int>& x, int k_max, double R) {
  ReturnVectorSet out;
  if (k_max > static_cast<int>(x.size())) {
    k_max = static_cast<int>(x.size());
    out.complete = false;
  }
  std::set<std::vector<long long>> seen;
  for (int top = 0; top < sys.num_types(); ++top) {
    const Patch p = canonical_patch(sys, x, k_max, top);
    // Bucket tile positions by type.
    std::map<int, std::vector<IVec>> by_type;
    for (const auto& t : p.tiles) by_type[t.label].push_back(t.translation);
    for (const auto& [type, positions] : by_type)
      for (size_t a = 0; a < positions.size(); ++a)
        for (size_t b = 0; b < positions.size(); ++b) {
          if (a == b) continue;
          const IVec tau = positions[a] - positions[b];
          if (tau.isZero()) continue;
          if (sys.basis.embed(tau).lpNorm<Eigen::Infinity>() > R) continue;
          if (seen.insert(key_of(tau)).second)
            out.vectors.push_back({tau, type, k_max});
        }
  }
  return out;
}

ReturnGroup group_basis(const SubstitutionSystem& sys, const ReturnVectorSet& vectors) {
  if (vectors.vectors.empty()) throw std::invalid_argument("group_basis: empty return set");
  const Index rb = sys.basis.rank_b;
  ZMat m(rb, static_cast<Index>(vectors.vectors.size()));
  for (size_t c = 0; c < vectors.vectors.size(); ++c)
    for (Index r = 0; r < rb; ++r) m(r, static_cast<Index>(c)) = vectors.vectors[c].tau(r);
  ReturnGroup g;
  g.v_coords = hermite_basis(m);
  g.rank = g.v_coords.cols();
  g.v_real = sys.basis.embedding * to_double(g.v_coords);
  return g;
}

std::vector<BigInt> address(const ReturnGroup& group, const IVec& tau) {
  std::vector<BigInt> b(tau.size());
  for (Eigen::Index i = 0; i < tau.size(); ++i) b[static_cast<size_t>(i)] = tau(i);
  auto sol = solve_integer(group.v_coords, b);
  if (!sol) throw std::invalid_argument("address: vector outside the return group");
  return *sol;
}

ZMat g_matrix(const SubstitutionSystem& sys, int l, const ReturnGroup& at_x,
              const ReturnGroup& at_shift) {
  const IMat& mt = sys.mtheta(l);
  const Index rb = sys.basis.rank_b;
  if (at_x.rank != at_shift.rank)
    throw std::invalid_argument("g_matrix: rank mismatch between windows");
  ZMat g(at_shift.rank, at_x.rank);
  for (Index c = 0; c < at_x.rank; ++c) {
    // Column c of Mtheta_l * V.
    std::vector<BigInt> b(rb);
    for (Index r = 0; r < rb; ++r) {
      BigInt acc = 0;
      for (Index s = 0; s < rb; ++s) acc += BigInt(mt(r, s)) * at_x.v_coords(s, c);
      b[static_cast<size_t>(r)] = acc;
    }
    auto sol = solve_integer(at_shift.v_coords, b);
    if (!sol)
      throw std::invalid_argument("g_matrix: inclusion theta*Gamma into Gamma' fails");
    for (Index r = 0; r < at_shift.rank; ++r) g(r, c) = (*sol)[static_cast<size_t>(r)];
  }
  return g;
}

PostalResult postal_check(const SubstitutionSystem& sys, const std::vector<int>& w_plus,
                          const ReturnGroup& group) {
  PostalResult out;
  const int k = static_cast<int>(w_plus.size());
  std::set<std::vector<long long>> seen;
  std::vector<std::vector<BigInt>> addresses;
  for (int top = 0; top < sys.num_types(); ++top) {
    const Patch p = canonical_patch(sys, w_plus, k, top);
    std::map<int, std::vector<IVec>> by_type;
    for (const auto& t : p.tiles) by_type[t.label].push_back(t.translation);
    for (const auto& [type, positions] : by_type)
      for (size_t a = 0; a < positions.size(); ++a)
        for (size_t b = 0; b < positions.size(); ++b) {
          if (a == b) continue;
          const IVec tau = positions[a] - positions[b];
          if (tau.isZero() || !seen.insert(key_of(tau)).second) continue;
          addresses.push_back(address(group, tau));
        }
  }
  if (addresses.empty()) return out;
  ZMat m(group.rank, static_cast<Index>(addresses.size()));
  for (size_t c = 0; c < addresses.size(); ++c)
    for (Index r = 0; r < group.rank; ++r) m(r, static_cast<Index>(c)) = addresses[c][static_cast<size_t>(r)];
  out.divisors = smith_divisors(m);
  out.rank = static_cast<Index>(out.divisors.size());
  out.postal = (out.rank == group.rank);
  for (const auto& d : out.divisors)
    if (d != 1) out.postal = false;
  return out;
}

}  // namespace tc
