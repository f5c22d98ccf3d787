#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "cars/linalg.hpp"
#include "cars/oracle.hpp"

namespace cars {

enum class DirectionKind {
  kSphereUniform,
  kGaussian,
  kCoordinateUniform,
  kRademacher,
  // Gaussian probes v_1..v_m averaged as (1/m) sum d_r(x; v_j) v_j. Needs the
  // oracle, so it is drawn through DirectionSampler::next().
  kAveragedGradient,
  // Always returns SamplerSpec::fixed. Used for forced-direction experiments
  // and the Newton-direction diagnostic.
  kFixed,
};

const char* to_string(DirectionKind kind) noexcept;
// Accepts "sphere", "gaussian", "coordinate", "rademacher", "averaged".
DirectionKind parse_direction_kind(std::string_view name);

struct SamplerSpec {
  DirectionKind kind = DirectionKind::kSphereUniform;
  std::size_t m = 1;        // probes per direction for kAveragedGradient
  bool normalize = false;   // rescale every draw to unit length
  Vector fixed;             // kFixed only
};

// Child seed for stream `index` of a master seed (SplitMix64 of
// master + (index + 1) * golden-ratio increment). Used to derive independent
// per-run seeds so that grid output does not depend on scheduling.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) noexcept;

class DirectionSampler {
 public:
  DirectionSampler(SamplerSpec spec, std::size_t dim, std::uint64_t seed);

  // Draws one direction of the configured kind. kAveragedGradient throws
  // kInvalidConfig here; use next() instead.
  Vector sample_direction();

  // Like sample_direction(), but also serves kAveragedGradient using
  // `probe_radius` for the 2m central-difference probes around x.
  Vector next(CountingOracle& oracle, const Vector& x, double probe_radius);

  Vector standard_normal();

  const SamplerSpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return dim_; }

 private:
  Vector draw_raw();
  Vector finish(Vector u) const;

  SamplerSpec spec_;
  std::size_t dim_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// (1/m) sum_j d_r(x; v_j) v_j with d_r the central difference along v_j.
// Consumes 2m queries.
Vector averaged_gradient_direction(CountingOracle& oracle, const Vector& x,
                                   double r, std::span<const Vector> probes);

// Draws m Gaussian probes from the sampler and averages as above.
Vector sample_averaged_gradient_direction(DirectionSampler& sampler,
                                          CountingOracle& oracle,
                                          const Vector& x, double r);

// Sample mean with its standard error (sample standard deviation / sqrt(n)).
struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// Fraction of n draws with |u^T g| >= gamma ||u|| ||g||.
// Throws kZeroGradient for g = 0, kInvalidConfig for n = 0 or gamma outside
// (0, 1].
MonteCarloEstimate estimate_p_gamma(DirectionSampler& sampler, const Vector& g,
                                    double gamma, std::size_t n);

// Mean of (u^T g)^2 / ((u^T H u)(g^T H^{-1} g)) over n draws. Throws
// kSingularMatrix when H is not symmetric positive definite to working
// precision.
MonteCarloEstimate estimate_eta(DirectionSampler& sampler, const Vector& g,
                                const Matrix& H, std::size_t n);

struct DistributionDiagnostics {
  MonteCarloEstimate eta;
  MonteCarloEstimate p_gamma;
};

DistributionDiagnostics diagnose_distribution(DirectionSampler& sampler,
                                              const Vector& g, const Matrix& H,
                                              double gamma, std::size_t n);

}  // namespace cars
