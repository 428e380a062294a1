#include "tilecocycle/deform.hpp"

namespace tc {

namespace {

std::vector<double> raw_mode_lengths(const SubstitutionSystem& sys,
                                     const DeformationParameter& d,
                                     const ReturnGroup* group) {
  if (!group) throw std::invalid_argument("deformation: Raw mode requires a return group");
  if (d.v_d.rows() != sys.dim() || d.v_d.cols() != group->rank)
    throw std::invalid_argument("deformation: V^d shape mismatch with the group");
  std::vector<double> lengths;
  for (int i = 0; i < sys.num_types(); ++i) {
    std::vector<BigInt> alpha;
    try {
      alpha = address(*group, sys.prototiles[i].length);
    } catch (const std::exception&) {
      throw std::invalid_argument(
          "deformation: tile length of prototile " + std::to_string(i) +
          " has no address in the return group");
    }
    double v = 0;
    for (Index c = 0; c < group->rank; ++c)
      v += d.v_d(0, c) * alpha[static_cast<size_t>(c)].convert_to<double>();
    lengths.push_back(v);
  }
  return lengths;
}

std::vector<double> deformed_lengths(const SubstitutionSystem& sys,
                                     const DeformationParameter& d,
                                     const ReturnGroup* group) {
  switch (d.mode) {
    case DeformationParameter::Mode::Lengths:
      if (static_cast<int>(d.lengths.size()) != sys.num_types())
        throw std::invalid_argument("deformation: one length per prototile required");
      for (double l : d.lengths)
        if (l <= 0) throw std::invalid_argument("deformation: lengths must be positive");
      return d.lengths;
    case DeformationParameter::Mode::Raw:
      return raw_mode_lengths(sys, d, group);
    case DeformationParameter::Mode::GlobalLinear:
      throw std::invalid_argument("deformation: GlobalLinear mode is for d >= 2");
  }
  throw std::logic_error("deformation: unreachable");
}

}  // namespace

AsymptoticCycle asymptotic_cycle(const SubstitutionSystem& sys, const std::vector<int>& x,
                                 const DeformationParameter& d, const ReturnGroup* group) {
  AsymptoticCycle out;
  if (d.mode == DeformationParameter::Mode::GlobalLinear) {
    out.c = d.diag.asDiagonal();
    out.det = d.diag.prod();
  } else {
    const auto lengths = deformed_lengths(sys, d, group);
    const int depth = std::min<int>(40, static_cast<int>(x.size()));
    const VertexWeights w = invariant_weights(sys, x, 0, depth);
    double mean = 0;
    for (int i = 0; i < sys.num_types(); ++i) mean += w.w[i] * lengths[i];
    out.c = Eigen::MatrixXd::Constant(1, 1, mean);
    out.det = mean;
  }
  out.invertible = std::abs(out.det) > 1e-10;
  return out;
}

GeomTables apply_deformation(const SubstitutionSystem& sys, const std::vector<int>& x,
                             int n, const DeformationParameter& d,
                             const ReturnGroup* group) {
  const AsymptoticCycle cyc = asymptotic_cycle(sys, x, d, group);
  if (!cyc.invertible)
    throw std::invalid_argument("deformation: degenerate asymptotic cycle (outside M_x)");

  GeomTables g = build_geom(sys, x, n);
  g.deformed = true;

  if (d.mode == DeformationParameter::Mode::GlobalLinear) {
    if (sys.dim() != 2) throw std::invalid_argument("deformation: GlobalLinear needs d = 2");
    if (d.diag.size() != 2) throw std::invalid_argument("deformation: diag size mismatch");
    g.axis_scale = d.diag;
    for (int m = 1; m <= n; ++m)
      for (auto& parent : g.offsets[m])
        for (auto& off : parent) off = off.cwiseProduct(d.diag);
    rebuild_bboxes(g);
    return g;
  }

  // d = 1: re-derive every level offset from the deformed tile lengths via the
  // tile composition to the left of each child (prefix sums of deformed
  // supertile widths). Combinatorics are untouched by construction.
  const auto lengths = deformed_lengths(sys, d, group);
  g.widths = lengths;
  std::vector<std::vector<double>> level_width(n + 1,
                                               std::vector<double>(sys.num_types(), 0.0));
  for (int i = 0; i < sys.num_types(); ++i) level_width[0][i] = lengths[i];
  for (int m = 1; m <= n; ++m) {
    const int rule = x[m - 1];
    for (int i = 0; i < sys.num_types(); ++i) {
      double run = 0;
      const auto& digs = sys.rules[rule].digits[i];
      for (size_t e = 0; e < digs.size(); ++e) {
        g.offsets[m][i][e](0) = run;
        run += level_width[m - 1][digs[e].child];
      }
      level_width[m][i] = run;
    }
  }
  rebuild_bboxes(g);
  return g;
}

Eigen::MatrixXcd deformed_fourier(const GeomTables& deformed, const Eigen::VectorXd& lambda) {
  return level_factor(deformed, 1, lambda);
}

std::vector<ZMat> composition_g(const SubstitutionSystem& sys) {
  std::vector<ZMat> out;
  for (int l = 0; l < sys.num_rules(); ++l) {
    const Eigen::MatrixXi f = substitution_matrix(sys, l);
    ZMat m(f.cols(), f.rows());
    for (int i = 0; i < f.rows(); ++i)
      for (int j = 0; j < f.cols(); ++j) m(j, i) = f(i, j);
    out.push_back(m);
  }
  return out;
}

Eigen::VectorXd composition_v0(const std::vector<double>& lengths, double lambda) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(lengths.size()));
  for (size_t i = 0; i < lengths.size(); ++i) v(static_cast<Eigen::Index>(i)) = lambda * lengths[i];
  return v;
}

}  // namespace tc
