#pragma once

#include "tilecocycle/cocycles.hpp"
#include "tilecocycle/returns.hpp"

#include <complex>

namespace tc {

using Cplx = std::complex<double>;

// Level-y TLC profile on a canonical supertile of one type.
//  - Indicator: one complex weight on the whole supertile geometry.
//  - Step: one complex weight per constituent tile (canonical patch order).
//  - Dirac: point mass of the given weight at every constituent tile corner
//    (a unit comb for y = 0); its transform is a pure phase sum, which keeps
//    integer spectral parameters from collapsing to zero the way whole-tile
//    indicators do.
struct TLCProfile {
  enum class Kind { Indicator, Step, Dirac };
  Kind kind = Kind::Indicator;
  Cplx weight{1.0, 0.0};
  std::vector<Cplx> tile_weights;  // step profiles
};

struct TLCFunction {
  int level = 0;
  std::vector<TLCProfile> per_type;

  static TLCFunction indicator(int types, Cplx weight = {1.0, 0.0});
  static TLCFunction dirac(int types, Cplx weight = {1.0, 0.0});
};

// Closed-form transform of a single tile's geometry, corner at origin.
Cplx tile_transform(const GeomTables& g, int type, const Eigen::VectorXd& lambda);

// psi-hat of the level-y profile of the given type (Fourier transform of the
// weighted canonical supertile profile, corner at origin).
Cplx profile_transform(const GeomTables& g, PatchCache& cache, const TLCFunction& f,
                       int type, const Eigen::VectorXd& lambda);

// Closed-form sum over the type-j level-k supertile: sum_l M^{(y,k)}(lambda)_{j,l}
// * psi-hat_l(lambda), corner at origin.
Cplx twisted_integral_supertile(const GeomTables& g, PatchCache& cache, int k, int j,
                                const Eigen::VectorXd& lambda, const TLCFunction& f);

enum class TwistedMethod { Cocycle, Brute };

// S_R(f, lambda) over the region, for the tiling given by the level-n
// canonical supertile of top_type with corner at shift (must cover r).
Cplx twisted_integral_region(const GeomTables& g, PatchCache& cache, int top_type,
                             const Eigen::VectorXd& shift, const TLCFunction& f,
                             const Eigen::VectorXd& lambda, const Region& r,
                             TwistedMethod method);

struct TwistedIntegralSeries {
  Eigen::VectorXd lambda;
  std::vector<double> radii;
  std::vector<Cplx> values;
  std::string method;
};

struct GrowthFit {
  double slope = 0;
  double alpha_hat = 0;  // d - slope
  double residual = 0;
  int points_used = 0;
};

GrowthFit growth_fit(const TwistedIntegralSeries& series, int dim);

// Smallest level whose supertile boxes, centered, cover C_{R}(0) for every
// top type; throws when the geometry horizon is too short.
int covering_level(const GeomTables& g, double R);

// Shift placing the bbox center of the level-n type supertile at the origin.
Eigen::VectorXd centering_shift(const GeomTables& g, int level, int type);

struct VeechDensitySeries {
  std::vector<long long> k_j;
  std::vector<double> dist;
  std::vector<int> indicator;
  std::vector<double> d_n;  // running density
};

// Transport v <- G^T_{x_m} v (mod Z^r) along the letters, recording the
// sup-norm distance to the lattice at each return time.
VeechDensitySeries veech_density(const std::vector<int>& letters,
                                 const std::vector<long long>& returns,
                                 const std::vector<ZMat>& g_per_rule,
                                 const Eigen::VectorXd& v0, double rho);

// Exact-arithmetic variant for rational data.
VeechDensitySeries veech_density_exact(const std::vector<int>& letters,
                                       const std::vector<long long>& returns,
                                       const std::vector<ZMat>& g_per_rule,
                                       const std::vector<BigRational>& v0,
                                       const BigRational& rho);

struct SpectralBound {
  double bound = 0;       // upper bound on mu_f(B_r(lambda))
  double l2_estimate = 0; // averaged |S_R|^2 over the transversal samples
  double r = 0;
  double big_r = 0;       // window radius R = 1/(4r)
  double c2 = 0;          // kernel constant
  int samples = 0;
};

// Kernel-based bound via transversal-sampled L^2 mass of S_R(f, lambda).
SpectralBound spectral_bound(const GeomTables& g, const TLCFunction& f,
                             const Eigen::VectorXd& lambda, double r, int n_samples,
                             std::uint64_t seed);

// Monte Carlo estimate of the absolute correlation integral
// int_{C_R} |<f o phi_t, f>| dt with spatially averaged inner products.
double correlation_integral(const GeomTables& g, const TLCFunction& f, double R,
                            int n_samples, std::uint64_t seed);

// Value of the level-y TLC function at an embedded point of the canonical
// level-n supertile (corner at shift); zero outside, zero a.e. for Dirac.
Cplx point_eval(const GeomTables& g, int top_type, const Eigen::VectorXd& shift,
                const TLCFunction& f, PatchCache& cache, const Eigen::VectorXd& point);

}  // namespace tc
