#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>

#include "neumaps/eigensolver.hpp"
#include "neumaps/errors.hpp"
#include "neumaps/rng.hpp"

namespace neumaps {

/// Synthetic stand-in for an enhanced-sampling trajectory of a molecule with
/// one circular collective variable and three metastable wells.
///
/// Points sit on an open arc of the unit circle, parameterized by an angle
/// theta in [margin, 2*pi - margin]. The sampling density carries three mild
/// high-density arcs centered at pi/3, pi and 5*pi/3 (the gauche/anti
/// pattern after bias flattening) and one short low-density stretch, the
/// bridge, standing in for a rarely visited transition channel. The arc is
/// rotated isometrically into ambient_dim dimensions and jittered with
/// Gaussian noise.
struct SyntheticConfig {
  Index n = 10000;
  std::uint64_t seed = 0;
  Index ambient_dim = 8;
  double noise = 0.001;
  double well_mass = 0.05;    // extra sampling probability shared by the wells
  double bridge_lo = 0.45;    // sparse-channel interval in theta
  double bridge_hi = 0.75;
  double bridge_mass = 0.004; // total sampling probability of the channel
  double margin = 0.2;
};

struct SyntheticData {
  Matrix features;  // n x ambient_dim
  Vector theta;     // the collective variable
};

namespace detail {

constexpr std::array<double, 3> kWellCenters = {std::numbers::pi / 3.0, std::numbers::pi,
                                                5.0 * std::numbers::pi / 3.0};
constexpr std::array<double, 3> kWellHalfwidths = {0.1, 0.2, 0.1};

}  // namespace detail

inline SyntheticData make_three_arc_circle(const SyntheticConfig& cfg) {
  require(cfg.n >= 2, errc::degenerate_cloud, "need at least two points");
  require(cfg.ambient_dim >= 2, errc::dimension_too_large, "ambient_dim must be >= 2");
  require(cfg.well_mass >= 0.0 && cfg.well_mass < 1.0, errc::fraction_out_of_range,
          "well_mass must lie in [0, 1)");
  require(cfg.bridge_mass >= 0.0 && cfg.well_mass + cfg.bridge_mass < 1.0,
          errc::fraction_out_of_range, "well and bridge mass must leave background mass");
  require(cfg.noise >= 0.0, errc::fraction_out_of_range, "noise must be >= 0");

  const double lo = cfg.margin;
  const double hi = 2.0 * std::numbers::pi - cfg.margin;
  require(hi > lo, errc::fraction_out_of_range, "margin leaves no arc");
  require(cfg.bridge_lo >= lo && cfg.bridge_hi <= hi && cfg.bridge_hi > cfg.bridge_lo,
          errc::fraction_out_of_range, "bridge interval must sit inside the arc");
  SplitMix64 rng(cfg.seed);

  const double bridge_len = cfg.bridge_hi - cfg.bridge_lo;
  const double background_len = (hi - lo) - bridge_len;
  const double total_halfwidth =
      detail::kWellHalfwidths[0] + detail::kWellHalfwidths[1] + detail::kWellHalfwidths[2];

  Vector theta(cfg.n);
  for (Index i = 0; i < cfg.n; ++i) {
    const double mode = rng.unit();
    if (mode < cfg.well_mass) {
      // One well, picked proportionally to its halfwidth, uniform inside.
      const double pick = rng.unit() * total_halfwidth;
      std::size_t j = 0;
      double acc = detail::kWellHalfwidths[0];
      while (j + 1 < detail::kWellCenters.size() && pick > acc) {
        ++j;
        acc += detail::kWellHalfwidths[j];
      }
      theta(i) =
          detail::kWellCenters[j] + (2.0 * rng.unit() - 1.0) * detail::kWellHalfwidths[j];
    } else if (mode < cfg.well_mass + cfg.bridge_mass) {
      theta(i) = cfg.bridge_lo + rng.unit() * bridge_len;
    } else {
      // Uniform over the arc with the bridge interval excised.
      double s = lo + rng.unit() * background_len;
      if (s >= cfg.bridge_lo) s += bridge_len;
      theta(i) = s;
    }
  }

  // Isometric rotation of the 2D circle into ambient_dim dimensions.
  Matrix basis(cfg.ambient_dim, 2);
  for (Index r = 0; r < cfg.ambient_dim; ++r) {
    basis(r, 0) = rng.normal();
    basis(r, 1) = rng.normal();
  }
  basis.col(0).normalize();
  basis.col(1) -= basis.col(0).dot(basis.col(1)) * basis.col(0);
  basis.col(1).normalize();

  SyntheticData data;
  data.theta = theta;
  data.features.resize(cfg.n, cfg.ambient_dim);
  for (Index i = 0; i < cfg.n; ++i) {
    Eigen::Vector2d ring(std::cos(theta(i)), std::sin(theta(i)));
    data.features.row(i) = (basis * ring).transpose();
    for (Index c = 0; c < cfg.ambient_dim; ++c) {
      data.features(i, c) += cfg.noise * rng.normal();
    }
  }
  return data;
}

}  // namespace neumaps
