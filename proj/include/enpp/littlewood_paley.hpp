#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "enpp/field.hpp"
#include "enpp/random.hpp"
#include "enpp/spectral.hpp"

namespace enpp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Regularity s, Lebesgue exponent p and summation exponent r of B^s_{p,r}.
struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;
};

/// Nonhomogeneous dyadic partition of unity sampled on a grid's wavenumber lattice.
///
/// chi is a C-infinity radial bump equal to 1 on |k| <= 1 and vanishing for
/// |k| >= rho, and phi(k) = chi(k/2) - chi(k), so supp chi lies in the ball of
/// radius 4/3 and supp phi in the annulus 3/4 <= |k| <= 8/3. The transition
/// radius rho = sqrt(1 + 4^-j_max / 2) is chosen so that no lattice point lies
/// strictly inside any rescaled transition band 2^j (1, rho), j <= j_max. On
/// the lattice every cutoff is therefore exactly 0 or 1, which makes both the
/// partition of unity and Plancherel (B^0_{2,2} = L^2) hold to rounding.
///
/// Blocks run over j = -1 .. j_max, where j_max is the largest j with
/// 2^j * 8/3 <= N/2. The top block is Id - S_{j_max}: it carries the whole tail
/// |k| > 2^j_max so that the blocks always reconstruct the field.
class DyadicFamily {
 public:
  /// Throws GridTooSmall when n_points < 16.
  explicit DyadicFamily(GridSpec grid);

  const GridSpec& grid() const noexcept { return grid_; }
  static constexpr int j_min() noexcept { return -1; }
  int j_max() const noexcept { return j_max_; }
  int block_count() const noexcept { return j_max_ + 2; }
  double transition_radius() const noexcept { return rho_; }

  /// Continuous radial profiles.
  double chi(double radius) const;
  double phi(double radius) const;

  /// Multiplier of block j on the half-plane spectrum layout.
  std::span<const double> block_multiplier(int j) const;
  /// Multiplier of S_j = sum_{j' <= j-1} Delta_j'.
  std::vector<double> low_freq_multiplier(int j) const;

  /// max over the lattice of |sum_j multiplier_j(k) - 1|.
  double partition_residual() const;

 private:
  void check_block(int j) const;

  GridSpec grid_;
  int j_max_;
  double rho_;
  std::vector<std::vector<double>> blocks_;  // index j + 1
};

DyadicFamily build_family(GridSpec grid);

/// How pointwise products inside paraproducts are formed.
enum class ProductMode { dealiased, exact };

ScalarField dyadic_block(const ScalarField& f, int j, const DyadicFamily& fam);
VectorField dyadic_block(const VectorField& v, int j, const DyadicFamily& fam);
/// Throws BlockOutOfRange outside -1 <= j <= j_max.
Spectrum dyadic_block(const Spectrum& s, int j, const DyadicFamily& fam);

/// S_j f for j >= 0; equals f once j > j_max.
ScalarField low_freq(const ScalarField& f, int j, const DyadicFamily& fam);

/// ||f||_{B^s_{p,r}} over blocks -1..j_max with the discrete L^p norm.
double besov_norm(const ScalarField& f, const BesovParams& params, const DyadicFamily& fam);
/// Vector version, using the pointwise Euclidean magnitude in L^p.
double besov_norm(const VectorField& v, const BesovParams& params, const DyadicFamily& fam);

/// (sum_j 2^{2js} ||Delta_j f||_{L^2}^2)^{1/2}, evaluated through Parseval.
double sobolev_norm(const ScalarField& f, double s, const DyadicFamily& fam);
double sobolev_norm(const VectorField& v, double s, const DyadicFamily& fam);
double sobolev_norm(const Spectrum& s_hat, double s, const DyadicFamily& fam);
/// Convenience overload that builds the family for f's grid.
double sobolev_norm(const ScalarField& f, double s);

/// T_u v = sum_{j >= 1} S_{j-1} u * Delta_j((Id - Delta_{-1}) v).
ScalarField bony_paraproduct(const ScalarField& u, const ScalarField& v, const DyadicFamily& fam,
                             ProductMode mode = ProductMode::dealiased);
/// R(u, v) = sum_{|k - j| <= 1} Delta_k u * Delta_j v.
ScalarField bony_remainder(const ScalarField& u, const ScalarField& v, const DyadicFamily& fam,
                           ProductMode mode = ProductMode::dealiased);

/// A real field given by finitely many Fourier modes, so the same function can
/// be sampled on several grids.
struct BandLimitedField {
  struct Mode {
    int k1;
    int k2;  // >= 0; for k2 == 0 the conjugate mode at (-k1, 0) is implied
    Complex coeff;
  };
  std::vector<Mode> modes;

  ScalarField sample(const GridSpec& grid) const;
  bool is_zero() const;
};

/// Random field with modes 0 < max(|k1|, |k2|) <= band and decaying amplitudes.
BandLimitedField random_band_limited(Rng& rng, int band);

struct RatioStats {
  std::string name;
  double max_coarse = 0.0;  // max ratio over the corpus on the base grid
  double max_fine = 0.0;    // same on the doubled grid
  int evaluated = 0;
  int skipped = 0;          // pairs whose denominator vanished
  bool finite = true;
  /// Both maxima finite and within a factor 2 of each other.
  bool stable() const;
};

struct ContinuityReport {
  int base_n = 0;
  double s = 0.0;
  std::vector<RatioStats> ratios;
  const RatioStats& find(const std::string& name) const;
};

struct SweepParams {
  int base_n = 32;
  double s = 1.3;  // needs s > 1/2 for the H^{s+1/2} x H^s product law
  int band = 5;
  std::uint64_t seed = 1;
};

using FieldPair = std::pair<BandLimitedField, BandLimitedField>;

/// Measures the paraproduct, remainder and product-law ratios over the corpus on
/// grids base_n and 2*base_n.
ContinuityReport continuity_sweep(const std::vector<FieldPair>& corpus, const SweepParams& params);
/// Same, on a seeded random corpus of the given size.
ContinuityReport continuity_sweep(int corpus_size, const SweepParams& params);

struct BernsteinResolution {
  int n_points = 0;
  double min_ratio = kInfinity;
  double max_ratio = 0.0;
  /// Smallest C with every ratio in [1/C, C].
  double constant() const;
};

struct BernsteinReport {
  std::vector<BernsteinResolution> resolutions;
  double worst_constant() const;
  /// Largest constant over smallest constant across resolutions.
  double stability_factor() const;
};

/// For block-restricted random fields at every j >= 0, records
/// ||grad f||_{L^p} / (2^j ||f||_{L^p}) for p in {1, 2, inf}.
BernsteinReport bernstein_sweep(int corpus_size, std::uint64_t seed,
                                const std::vector<int>& resolutions);

}  // namespace enpp
