#include "enpp/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "enpp/errors.hpp"

namespace enpp {
namespace {

// 0 for x <= 0, 1 for x >= 1, C-infinity in between.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double lattice_radius(int k1, int k2) { return std::sqrt(static_cast<double>(k1 * k1 + k2 * k2)); }

// Number of times a half-plane coefficient appears in the full plane.
double half_plane_weight(int col, int n) { return (col == 0 || col == n / 2) ? 1.0 : 2.0; }

double lr_norm(const std::vector<double>& terms, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  double sum = 0.0;
  for (double t : terms) sum += std::pow(t, r);
  return std::pow(sum, 1.0 / r);
}

Spectrum apply_multiplier(const Spectrum& s, std::span<const double> m) {
  Spectrum out = s;
  auto data = out.data();
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= m[k];
  return out;
}

ScalarField product(const ScalarField& a, const ScalarField& b, ProductMode mode) {
  return mode == ProductMode::dealiased ? dealiased_product(a, b) : pointwise_product(a, b);
}

}  // namespace

DyadicFamily::DyadicFamily(GridSpec grid) : grid_(grid), j_max_(0), rho_(1.0) {
  const int n = grid.n_points();
  if (n < 16) {
    throw GridTooSmall("dyadic family needs n_points >= 16, got " + std::to_string(n));
  }
  while (std::ldexp(8.0 / 3.0, j_max_ + 1) <= n / 2.0) ++j_max_;
  rho_ = std::sqrt(1.0 + 0.5 * std::ldexp(1.0, -2 * j_max_));

  blocks_.assign(block_count(), std::vector<double>(grid.spectrum_size(), 0.0));
  for_each_mode(grid, [&](int row, int col, int k1, int k2) {
    const std::size_t idx = static_cast<std::size_t>(row) * grid.half_columns() + col;
    const double r = lattice_radius(k1, k2);
    blocks_[0][idx] = chi(r);
    for (int j = 0; j < j_max_; ++j) blocks_[j + 1][idx] = phi(std::ldexp(r, -j));
    blocks_[j_max_ + 1][idx] = 1.0 - chi(std::ldexp(r, -j_max_));
  });
}

double DyadicFamily::chi(double radius) const {
  return smooth_step((rho_ - radius) / (rho_ - 1.0));
}

double DyadicFamily::phi(double radius) const { return chi(0.5 * radius) - chi(radius); }

void DyadicFamily::check_block(int j) const {
  if (j < j_min() || j > j_max_) {
    throw BlockOutOfRange("block " + std::to_string(j) + " outside [-1, " +
                          std::to_string(j_max_) + "]");
  }
}

std::span<const double> DyadicFamily::block_multiplier(int j) const {
  check_block(j);
  return blocks_[j + 1];
}

std::vector<double> DyadicFamily::low_freq_multiplier(int j) const {
  std::vector<double> m(grid_.spectrum_size(), 0.0);
  for (int jj = j_min(); jj <= std::min(j - 1, j_max_); ++jj) {
    const auto& b = blocks_[jj + 1];
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += b[k];
  }
  return m;
}

double DyadicFamily::partition_residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < grid_.spectrum_size(); ++k) {
    double sum = 0.0;
    for (const auto& b : blocks_) sum += b[k];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

DyadicFamily build_family(GridSpec grid) { return DyadicFamily(grid); }

Spectrum dyadic_block(const Spectrum& s, int j, const DyadicFamily& fam) {
  require_same_grid(s.grid(), fam.grid());
  return apply_multiplier(s, fam.block_multiplier(j));
}

ScalarField dyadic_block(const ScalarField& f, int j, const DyadicFamily& fam) {
  return from_spectrum(dyadic_block(to_spectrum(f), j, fam));
}

VectorField dyadic_block(const VectorField& v, int j, const DyadicFamily& fam) {
  return VectorField(dyadic_block(v.c1, j, fam), dyadic_block(v.c2, j, fam));
}

ScalarField low_freq(const ScalarField& f, int j, const DyadicFamily& fam) {
  require_same_grid(f.grid(), fam.grid());
  if (j < 0) throw BlockOutOfRange("low_freq needs j >= 0, got " + std::to_string(j));
  return from_spectrum(apply_multiplier(to_spectrum(f), fam.low_freq_multiplier(j)));
}

double besov_norm(const ScalarField& f, const BesovParams& params, const DyadicFamily& fam) {
  require_same_grid(f.grid(), fam.grid());
  const Spectrum s = to_spectrum(f);
  std::vector<double> terms;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const ScalarField block = from_spectrum(dyadic_block(s, j, fam));
    terms.push_back(std::pow(2.0, j * params.s) * lp_norm(block, params.p));
  }
  return lr_norm(terms, params.r);
}

double besov_norm(const VectorField& v, const BesovParams& params, const DyadicFamily& fam) {
  require_same_grid(v.grid(), fam.grid());
  const Spectrum a = to_spectrum(v.c1);
  const Spectrum b = to_spectrum(v.c2);
  std::vector<double> terms;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const VectorField block(from_spectrum(dyadic_block(a, j, fam)),
                            from_spectrum(dyadic_block(b, j, fam)));
    terms.push_back(std::pow(2.0, j * params.s) * lp_norm(block, params.p));
  }
  return lr_norm(terms, params.r);
}

double sobolev_norm(const Spectrum& s_hat, double s, const DyadicFamily& fam) {
  require_same_grid(s_hat.grid(), fam.grid());
  const int n = fam.grid().n_points();
  const int cols = fam.grid().half_columns();
  // Parseval: ||g||_{L^2}^2 = (2 pi)^2 sum_k |g_k|^2 with our normalization.
  const double area = GridSpec::domain_length * GridSpec::domain_length;
  double total = 0.0;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const auto m = fam.block_multiplier(j);
    double block = 0.0;
    for (int row = 0; row < n; ++row) {
      for (int col = 0; col < cols; ++col) {
        const std::size_t idx = static_cast<std::size_t>(row) * cols + col;
        if (m[idx] == 0.0) continue;
        block += half_plane_weight(col, n) * std::norm(m[idx] * s_hat.at(row, col));
      }
    }
    total += std::pow(2.0, 2.0 * j * s) * area * block;
  }
  return std::sqrt(total);
}

double sobolev_norm(const ScalarField& f, double s, const DyadicFamily& fam) {
  return sobolev_norm(to_spectrum(f), s, fam);
}

double sobolev_norm(const VectorField& v, double s, const DyadicFamily& fam) {
  return std::hypot(sobolev_norm(v.c1, s, fam), sobolev_norm(v.c2, s, fam));
}

double sobolev_norm(const ScalarField& f, double s) {
  return sobolev_norm(f, s, DyadicFamily(f.grid()));
}

ScalarField bony_paraproduct(const ScalarField& u, const ScalarField& v, const DyadicFamily& fam,
                             ProductMode mode) {
  require_same_grid(u.grid(), v.grid());
  require_same_grid(u.grid(), fam.grid());
  const Spectrum us = to_spectrum(u);
  Spectrum vs = to_spectrum(v);
  vs -= dyadic_block(vs, -1, fam);  // (Id - Delta_{-1}) v
  ScalarField out(u.grid());
  for (int j = 1; j <= fam.j_max(); ++j) {
    const ScalarField low = from_spectrum(apply_multiplier(us, fam.low_freq_multiplier(j - 1)));
    const ScalarField block = from_spectrum(dyadic_block(vs, j, fam));
    out += product(low, block, mode);
  }
  return out;
}

ScalarField bony_remainder(const ScalarField& u, const ScalarField& v, const DyadicFamily& fam,
                           ProductMode mode) {
  require_same_grid(u.grid(), v.grid());
  require_same_grid(u.grid(), fam.grid());
  const Spectrum us = to_spectrum(u);
  const Spectrum vs = to_spectrum(v);
  std::vector<ScalarField> ub;
  std::vector<ScalarField> vb;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    ub.push_back(from_spectrum(dyadic_block(us, j, fam)));
    vb.push_back(from_spectrum(dyadic_block(vs, j, fam)));
  }
  ScalarField out(u.grid());
  const int count = fam.block_count();
  for (int a = 0; a < count; ++a) {
    for (int b = std::max(0, a - 1); b <= std::min(count - 1, a + 1); ++b) {
      out += product(ub[a], vb[b], mode);
    }
  }
  return out;
}

ScalarField BandLimitedField::sample(const GridSpec& grid) const {
  Spectrum s(grid);
  const int n = grid.n_points();
  for (const Mode& m : modes) {
    if (std::abs(m.k1) >= n / 2 || m.k2 >= n / 2) {
      throw InvalidGrid("mode (" + std::to_string(m.k1) + ", " + std::to_string(m.k2) +
                        ") not representable on N = " + std::to_string(n));
    }
    s.set_coeff(m.k1, m.k2, s.coeff(m.k1, m.k2) + m.coeff);
    if (m.k2 == 0 && m.k1 != 0) s.set_coeff(-m.k1, 0, s.coeff(-m.k1, 0) + std::conj(m.coeff));
  }
  // The zero mode must be real.
  s.at(0, 0) = s.at(0, 0).real();
  return from_spectrum(s);
}

bool BandLimitedField::is_zero() const {
  return std::all_of(modes.begin(), modes.end(),
                     [](const Mode& m) { return m.coeff == Complex{}; });
}

BandLimitedField random_band_limited(Rng& rng, int band) {
  BandLimitedField f;
  for (int k1 = -band; k1 <= band; ++k1) {
    for (int k2 = 0; k2 <= band; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;  // (-k1, 0) is implied by (k1, 0)
      const double decay = 1.0 / (1.0 + k1 * k1 + k2 * k2);
      f.modes.push_back({k1, k2, decay * Complex(rng.normal(), rng.normal())});
    }
  }
  return f;
}

bool RatioStats::stable() const {
  if (!finite || evaluated == 0) return false;
  const double lo = std::min(max_coarse, max_fine);
  const double hi = std::max(max_coarse, max_fine);
  return lo > 0.0 && hi <= 2.0 * lo;
}

const RatioStats& ContinuityReport::find(const std::string& name) const {
  for (const auto& r : ratios) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("no ratio named " + name);
}

namespace {

struct RatioSample {
  double numerator;
  double denominator;
};

// Each entry: numerator and denominator of one continuity ratio for (u, v).
std::vector<std::pair<std::string, RatioSample>> continuity_ratios(const ScalarField& u,
                                                                   const ScalarField& v, double s,
                                                                   const DyadicFamily& fam) {
  const double inf = kInfinity;
  const ScalarField tuv = bony_paraproduct(u, v, fam);
  const ScalarField tvu = bony_paraproduct(v, u, fam);
  const ScalarField ruv = bony_remainder(u, v, fam);
  const ScalarField uv = dealiased_product(u, v);
  const double v_hs = sobolev_norm(v, s, fam);
  const double u_hs_half = sobolev_norm(u, s + 0.5, fam);
  return {
      {"paraproduct_linf", {sobolev_norm(tuv, s, fam), lp_norm(u, inf) * v_hs}},
      {"paraproduct_negative",
       {sobolev_norm(tvu, s, fam), besov_norm(v, {-0.5, inf, inf}, fam) * u_hs_half}},
      {"remainder", {sobolev_norm(ruv, s, fam), besov_norm(u, {0.0, inf, inf}, fam) * v_hs}},
      {"product_hs", {sobolev_norm(uv, s, fam), u_hs_half * v_hs}},
      {"product_hs1",
       {sobolev_norm(uv, s + 1.0, fam),
        sobolev_norm(u, s + 1.0, fam) * sobolev_norm(v, s + 1.0, fam)}},
  };
}

}  // namespace

ContinuityReport continuity_sweep(const std::vector<FieldPair>& corpus,
                                  const SweepParams& params) {
  ContinuityReport report;
  report.base_n = params.base_n;
  report.s = params.s;
  const GridSpec coarse(params.base_n);
  const GridSpec fine(2 * params.base_n);
  const DyadicFamily coarse_fam(coarse);
  const DyadicFamily fine_fam(fine);

  for (const auto& [uf, vf] : corpus) {
    const auto a = continuity_ratios(uf.sample(coarse), vf.sample(coarse), params.s, coarse_fam);
    const auto b = continuity_ratios(uf.sample(fine), vf.sample(fine), params.s, fine_fam);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (report.ratios.size() <= i) report.ratios.push_back(RatioStats{a[i].first});
      RatioStats& stats = report.ratios[i];
      const auto& ca = a[i].second;
      const auto& cb = b[i].second;
      // Below this the pair carries no signal and the ratio is 0/0.
      constexpr double tiny = 1e-300;
      if (ca.denominator <= tiny || cb.denominator <= tiny) {
        ++stats.skipped;
        continue;
      }
      const double ra = ca.numerator / ca.denominator;
      const double rb = cb.numerator / cb.denominator;
      stats.finite = stats.finite && std::isfinite(ra) && std::isfinite(rb);
      stats.max_coarse = std::max(stats.max_coarse, ra);
      stats.max_fine = std::max(stats.max_fine, rb);
      ++stats.evaluated;
    }
  }
  if (report.ratios.empty()) {
    for (const char* name : {"paraproduct_linf", "paraproduct_negative", "remainder",
                             "product_hs", "product_hs1"}) {
      report.ratios.push_back(RatioStats{name});
    }
  }
  return report;
}

ContinuityReport continuity_sweep(int corpus_size, const SweepParams& params) {
  Rng rng(params.seed);
  std::vector<FieldPair> corpus;
  for (int i = 0; i < corpus_size; ++i) {
    BandLimitedField u = random_band_limited(rng, params.band);
    BandLimitedField v = random_band_limited(rng, params.band);
    corpus.emplace_back(std::move(u), std::move(v));
  }
  return continuity_sweep(corpus, params);
}

double BernsteinResolution::constant() const {
  if (max_ratio == 0.0) return kInfinity;
  return std::max(max_ratio, 1.0 / min_ratio);
}

double BernsteinReport::worst_constant() const {
  double worst = 0.0;
  for (const auto& r : resolutions) worst = std::max(worst, r.constant());
  return worst;
}

double BernsteinReport::stability_factor() const {
  double lo = kInfinity;
  double hi = 0.0;
  for (const auto& r : resolutions) {
    lo = std::min(lo, r.constant());
    hi = std::max(hi, r.constant());
  }
  return hi / lo;
}

BernsteinReport bernstein_sweep(int corpus_size, std::uint64_t seed,
                                const std::vector<int>& resolutions) {
  BernsteinReport report;
  for (int n : resolutions) {
    const GridSpec grid(n);
    const DyadicFamily fam(grid);
    const int band = static_cast<int>(std::floor(grid.dealias_cutoff()));
    Rng rng(seed);
    BernsteinResolution res;
    res.n_points = n;
    for (int c = 0; c < corpus_size; ++c) {
      const ScalarField f = random_band_limited(rng, band).sample(grid);
      const Spectrum fs = to_spectrum(f);
      for (int j = 0; j <= fam.j_max(); ++j) {
        const Spectrum bs = dyadic_block(fs, j, fam);
        const ScalarField block = from_spectrum(bs);
        const VectorField grad(from_spectrum(derivative(bs, 1)), from_spectrum(derivative(bs, 2)));
        for (double p : {1.0, 2.0, kInfinity}) {
          const double denom = std::ldexp(lp_norm(block, p), j);
          if (denom == 0.0) continue;
          const double ratio = lp_norm(grad, p) / denom;
          res.min_ratio = std::min(res.min_ratio, ratio);
          res.max_ratio = std::max(res.max_ratio, ratio);
        }
      }
    }
    report.resolutions.push_back(res);
  }
  return report;
}

}  // namespace enpp
