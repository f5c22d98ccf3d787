#include "cars/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cars/error.hpp"

namespace cars {
namespace {

// Welford accumulator for mean and standard error.
class RunningMean {
 public:
  void add(double v) {
    ++n_;
    const double delta = v - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (v - mean_);
  }

  MonteCarloEstimate result() const {
    MonteCarloEstimate out;
    out.mean = mean_;
    out.samples = n_;
    if (n_ > 1) {
      const double var = m2_ / static_cast<double>(n_ - 1);
      out.std_error = std::sqrt(var / static_cast<double>(n_));
    }
    return out;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

const char* to_string(DirectionKind kind) noexcept {
  switch (kind) {
    case DirectionKind::kSphereUniform: return "sphere";
    case DirectionKind::kGaussian: return "gaussian";
    case DirectionKind::kCoordinateUniform: return "coordinate";
    case DirectionKind::kRademacher: return "rademacher";
    case DirectionKind::kAveragedGradient: return "averaged";
    case DirectionKind::kFixed: return "fixed";
  }
  return "?";
}

DirectionKind parse_direction_kind(std::string_view name) {
  if (name == "sphere") return DirectionKind::kSphereUniform;
  if (name == "gaussian") return DirectionKind::kGaussian;
  if (name == "coordinate") return DirectionKind::kCoordinateUniform;
  if (name == "rademacher") return DirectionKind::kRademacher;
  if (name == "averaged") return DirectionKind::kAveragedGradient;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown sampler '" + std::string(name) +
                  "' (expected sphere, gaussian, coordinate, rademacher, "
                  "averaged)");
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DirectionSampler::DirectionSampler(SamplerSpec spec, std::size_t dim,
                                   std::uint64_t seed)
    : spec_(std::move(spec)), dim_(dim), engine_(seed) {
  if (dim_ == 0) {
    throw Error(ErrorCode::kInvalidConfig, "sampler dimension must be >= 1");
  }
  if (spec_.kind == DirectionKind::kAveragedGradient && spec_.m == 0) {
    throw Error(ErrorCode::kInvalidConfig, "averaged sampler needs m >= 1");
  }
  if (spec_.kind == DirectionKind::kFixed &&
      static_cast<std::size_t>(spec_.fixed.size()) != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "fixed direction length does not match dimension");
  }
}

Vector DirectionSampler::standard_normal() {
  Vector v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = normal_(engine_);
  return v;
}

Vector DirectionSampler::draw_raw() {
  switch (spec_.kind) {
    case DirectionKind::kSphereUniform: {
      Vector v = standard_normal();
      double n = v.norm();
      while (n == 0.0) {
        v = standard_normal();
        n = v.norm();
      }
      return v / n;
    }
    case DirectionKind::kGaussian:
      return standard_normal();
    case DirectionKind::kCoordinateUniform: {
      std::uniform_int_distribution<std::size_t> pick(0, dim_ - 1);
      Vector v = Vector::Zero(dim_);
      v[pick(engine_)] = 1.0;
      return v;
    }
    case DirectionKind::kRademacher: {
      Vector v(dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        v[i] = (engine_() >> 63) ? 1.0 : -1.0;
      }
      return v;
    }
    case DirectionKind::kFixed:
      return spec_.fixed;
    case DirectionKind::kAveragedGradient:
      break;
  }
  throw Error(ErrorCode::kInvalidConfig,
              "averaged-gradient directions need an oracle; use next()");
}

Vector DirectionSampler::finish(Vector u) const {
  if (spec_.normalize) {
    const double n = u.norm();
    if (n > 0.0 && std::isfinite(n)) u /= n;
  }
  return u;
}

Vector DirectionSampler::sample_direction() { return finish(draw_raw()); }

Vector DirectionSampler::next(CountingOracle& oracle, const Vector& x,
                              double probe_radius) {
  if (spec_.kind == DirectionKind::kAveragedGradient) {
    return finish(
        sample_averaged_gradient_direction(*this, oracle, x, probe_radius));
  }
  return sample_direction();
}

Vector averaged_gradient_direction(CountingOracle& oracle, const Vector& x,
                                   double r, std::span<const Vector> probes) {
  if (!(r > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "probe radius must be positive");
  }
  if (probes.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "need at least one probe");
  }
  Vector u = Vector::Zero(x.size());
  for (const Vector& v : probes) {
    const double f_plus = oracle.evaluate(x + r * v);
    const double f_minus = oracle.evaluate(x - r * v);
    const double d_r = (f_plus - f_minus) / (2.0 * r);
    u += d_r * v;
  }
  return u / static_cast<double>(probes.size());
}

Vector sample_averaged_gradient_direction(DirectionSampler& sampler,
                                          CountingOracle& oracle,
                                          const Vector& x, double r) {
  const std::size_t m = std::max<std::size_t>(sampler.spec().m, 1);
  std::vector<Vector> probes;
  probes.reserve(m);
  for (std::size_t j = 0; j < m; ++j) probes.push_back(sampler.standard_normal());
  return averaged_gradient_direction(oracle, x, r, probes);
}

MonteCarloEstimate estimate_p_gamma(DirectionSampler& sampler, const Vector& g,
                                    double gamma, std::size_t n) {
  const double g_norm = g.norm();
  if (!(g_norm > 0.0)) {
    throw Error(ErrorCode::kZeroGradient, "p_gamma needs a nonzero gradient");
  }
  if (n == 0 || !(gamma > 0.0) || gamma > 1.0) {
    throw Error(ErrorCode::kInvalidConfig,
                "p_gamma needs n >= 1 and gamma in (0, 1]");
  }
  RunningMean acc;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector u = sampler.sample_direction();
    const bool hit = std::abs(u.dot(g)) >= gamma * u.norm() * g_norm;
    acc.add(hit ? 1.0 : 0.0);
  }
  return acc.result();
}

MonteCarloEstimate estimate_eta(DirectionSampler& sampler, const Vector& g,
                                const Matrix& H, std::size_t n) {
  if (H.rows() != H.cols() || H.rows() != g.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "H must be d x d");
  }
  if (!(g.norm() > 0.0)) {
    throw Error(ErrorCode::kZeroGradient, "eta needs a nonzero gradient");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidConfig, "eta needs n >= 1");
  Eigen::LLT<Matrix> llt(H);
  if (llt.info() != Eigen::Success ||
      llt.rcond() < std::numeric_limits<double>::epsilon()) {
    throw Error(ErrorCode::kSingularMatrix,
                "H is not positive definite to working precision");
  }
  const double newton_norm = g.dot(llt.solve(g));
  RunningMean acc;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector u = sampler.sample_direction();
    const double ug = u.dot(g);
    const double uHu = u.dot(H * u);
    acc.add(ug * ug / (uHu * newton_norm));
  }
  return acc.result();
}

DistributionDiagnostics diagnose_distribution(DirectionSampler& sampler,
                                              const Vector& g, const Matrix& H,
                                              double gamma, std::size_t n) {
  DistributionDiagnostics out;
  out.eta = estimate_eta(sampler, g, H, n);
  out.p_gamma = estimate_p_gamma(sampler, g, gamma, n);
  return out;
}

}  // namespace cars
