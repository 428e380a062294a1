#include "tilecocycle/substitution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tc {

double SubstitutionSystem::tile_width(int type) const {
  if (dim() != 1) throw std::logic_error("tile_width: d=1 only");
  return basis.embed(prototiles[type].length)(0);
}

double SubstitutionSystem::tile_volume(int type) const {
  if (dim() == 1) return tile_width(type);
  return static_cast<double>(prototiles[type].cells.size());
}

namespace {

std::string ivec_str(const IVec& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << ")";
  return os.str();
}

// d=1 covering: children tile the inflated parent contiguously from the left
// corner, exactly in module coordinates.
void check_covering_1d(const SubstitutionSystem& sys, ValidationReport& rep) {
  for (int l = 0; l < sys.num_rules(); ++l) {
    const IMat& mt = sys.mtheta(l);
    for (int i = 0; i < sys.num_types(); ++i) {
      const auto& digs = sys.rules[l].digits[i];
      ValidationCheck chk;
      chk.name = "covering rule " + std::to_string(l) + " parent " + std::to_string(i);
      if (digs.empty()) {
        chk.pass = false;
        chk.detail = "no digits";
        rep.checks.push_back(chk);
        continue;
      }
      IVec run = IVec::Zero(sys.basis.rank_b);
      bool contiguous = true;
      for (const auto& d : digs) {
        if (d.offset != run) contiguous = false;
        run += sys.prototiles[d.child].length;
      }
      const IVec expect = mt * sys.prototiles[i].length;
      if (run != expect) {
        chk.pass = false;
        chk.detail = "child lengths sum " + ivec_str(run) + " != inflated length " + ivec_str(expect);
      } else if (!contiguous) {
        chk.pass = false;
        chk.detail = "digit offsets are not the left-to-right prefix sums";
      } else {
        chk.pass = true;
      }
      rep.checks.push_back(chk);
    }
  }
}

// d=2 covering: exact multiset equality of covered unit cells.
void check_covering_2d(const SubstitutionSystem& sys, ValidationReport& rep) {
  for (int l = 0; l < sys.num_rules(); ++l) {
    const IMat& mt = sys.mtheta(l);
    // Block substitutions use Mtheta = q * Identity.
    const long long q = mt(0, 0);
    for (int i = 0; i < sys.num_types(); ++i) {
      ValidationCheck chk;
      chk.name = "covering rule " + std::to_string(l) + " parent " + std::to_string(i);
      std::multiset<std::pair<long long, long long>> want, got;
      for (const auto& c : sys.prototiles[i].cells)
        for (long long dx = 0; dx < q; ++dx)
          for (long long dy = 0; dy < q; ++dy)
            want.insert({q * c.x() + dx, q * c.y() + dy});
      for (const auto& d : sys.rules[l].digits[i])
        for (const auto& c : sys.prototiles[d.child].cells)
          got.insert({c.x() + d.offset(0), c.y() + d.offset(1)});
      chk.pass = (want == got);
      if (!chk.pass) chk.detail = "placed child cells do not partition the inflated parent";
      rep.checks.push_back(chk);
    }
  }
}

}  // namespace

ValidationReport validate_system(const SubstitutionSystem& sys,
                                 const std::vector<int>& support_letters,
                                 int n_max) {
  ValidationReport rep;

  {
    ValidationCheck chk{"module", false, ""};
    try {
      sys.basis.validate();
      chk.pass = true;
    } catch (const std::exception& e) {
      chk.detail = e.what();
    }
    rep.checks.push_back(chk);
  }
  {
    ValidationCheck chk{"shape", true, ""};
    for (const auto& r : sys.rules)
      if (static_cast<int>(r.digits.size()) != sys.num_types()) {
        chk.pass = false;
        chk.detail = "rule digit table size != number of prototiles";
      }
    rep.checks.push_back(chk);
    if (!chk.pass) return rep;
  }

  if (sys.dim() == 1)
    check_covering_1d(sys, rep);
  else
    check_covering_2d(sys, rep);

  // Exactly one zero-offset digit per parent (the child holding the control
  // point); with the lexicographic choice it must come first.
  for (int l = 0; l < sys.num_rules(); ++l)
    for (int i = 0; i < sys.num_types(); ++i) {
      ValidationCheck chk;
      chk.name = "zero-offset digit rule " + std::to_string(l) + " parent " + std::to_string(i);
      int zeros = 0;
      const auto& digs = sys.rules[l].digits[i];
      for (const auto& d : digs)
        if (d.offset.isZero()) ++zeros;
      chk.pass = (zeros == 1 && !digs.empty() && digs.front().offset.isZero());
      if (!chk.pass) chk.detail = "expected exactly one zero-offset digit, listed first";
      rep.checks.push_back(chk);
    }

  // Uniform expansion and the contracting condition: recorded, automatic for
  // theta_bar > 1 which the module validation enforces.
  {
    ValidationCheck chk{"uniform expansion / contraction", true,
                        "all rules uniformly expanding with theta_bar > 1"};
    rep.checks.push_back(chk);
  }

  // Primitivity window over realizable words.
  {
    ValidationCheck chk{"primitivity window", false, ""};
    std::vector<int> support = support_letters;
    if (support.empty())
      for (int l = 0; l < sys.num_rules(); ++l) support.push_back(l);
    const int m = sys.num_types();
    std::vector<Eigen::MatrixXi> fs;
    for (int l = 0; l < sys.num_rules(); ++l) fs.push_back(substitution_matrix(sys, l));
    for (int n = 1; n <= n_max && !chk.pass; ++n) {
      // All words of length n over the support must yield a positive product.
      bool all_positive = true;
      std::vector<size_t> idx(n, 0);
      while (true) {
        Eigen::MatrixXi prod = Eigen::MatrixXi::Identity(m, m);
        for (int k = 0; k < n; ++k) prod = fs[support[idx[k]]] * prod;
        if ((prod.array() <= 0).any()) {
          all_positive = false;
          break;
        }
        int k = 0;
        for (; k < n; ++k) {
          if (++idx[k] < support.size()) break;
          idx[k] = 0;
        }
        if (k == n) break;
      }
      if (all_positive) {
        chk.pass = true;
        rep.primitivity_window = n;
        chk.detail = "window n = " + std::to_string(n);
      }
    }
    if (!chk.pass) chk.detail = "no positive window up to n_max = " + std::to_string(n_max);
    rep.checks.push_back(chk);
  }

  return rep;
}

Eigen::MatrixXi substitution_matrix(const SubstitutionSystem& sys, int l) {
  if (l < 0 || l >= sys.num_rules()) throw std::out_of_range("substitution_matrix: rule index");
  const int m = sys.num_types();
  Eigen::MatrixXi f = Eigen::MatrixXi::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (const auto& d : sys.rules[l].digits[i]) f(i, d.child) += 1;
  return f;
}

Patch inflate(const SubstitutionSystem& sys, int l, const Patch& p) {
  const IMat& mt = sys.mtheta(l);
  Patch out;
  for (const auto& tile : p.tiles) {
    const IVec scaled = mt * tile.translation;
    for (const auto& d : sys.rules[l].digits[tile.label])
      out.tiles.push_back({d.child, scaled + d.offset});
  }
  return out;
}

}  // namespace tc
