#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orad/profile.hpp"
#include "orad/radon_radial.hpp"

namespace orad {

/// An m-dimensional linear subspace of R^n, stored as an n x m frame with
/// orthonormal columns. m = 0 is allowed (the zero subspace).
struct Subspace {
  Eigen::MatrixXd frame;

  int ambient_dim() const { return static_cast<int>(frame.rows()); }
  int dim() const { return static_cast<int>(frame.cols()); }
  /// max |frame^T frame - I| entry.
  double orthonormality_residual() const;
  /// Frame of the orthogonal complement in R^n.
  Subspace complement() const;
  /// x minus its projection onto the subspace.
  Eigen::VectorXd project_out(const Eigen::VectorXd& x) const;
};

/// direction + offset, the offset orthogonal to the direction.
struct AffinePlane {
  Subspace direction;
  Eigen::VectorXd offset;

  /// Plane through x with the given direction (the offset is x projected
  /// onto the orthocomplement).
  static AffinePlane through(const Subspace& direction, const Eigen::VectorXd& x);
  /// Distance from the origin.
  double distance() const { return offset.norm(); }
};

using PlaneFunction = std::function<double(const AffinePlane&)>;

/// f(plane) = f0(distance of the plane from the origin).
PlaneFunction radial_plane_function(const RadialProfile& f0);

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_samples)
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  /// Set when a handful of samples dominate the variance (heavy-tailed weights).
  bool variance_warning = false;
};

/// Rotation-invariant subspace of dimension m in R^n: a standard normal n x m
/// matrix orthonormalized by QR with the diagonal of R made positive.
/// Rank-deficient draws are redrawn.
Subspace sample_grassmann(int n, int m, std::mt19937_64& rng);

/// Random orthonormal basis of span(frame) (a uniformly rotated frame).
Subspace rotate_within(const Subspace& s, std::mt19937_64& rng);

/// Distribution of the offset u on an l-dimensional fiber.
struct OffsetProposal {
  enum class Kind {
    gaussian,       // isotropic N(0, scale^2 I)
    cauchy_adaptive // multivariate Cauchy, scale = distance of the fiber from the origin
  };
  Kind kind = Kind::gaussian;
  double scale = 0.7071067811865476;  // matches exp(-r^2)
};

struct MCOptions {
  OffsetProposal proposal;
  /// Samples are split over this many substreams seeded by (seed, index);
  /// the split does not depend on the thread count.
  int substreams = 16;
  int threads = 0;
  /// Applied to every sampled frame and offset; empty means identity.
  Eigen::MatrixXd rotation;
};

/// Monte Carlo estimate of the orthogonal Radon transform of f at the k-plane
/// zeta: average over P in G_p(eta), Q in G_q(eta^perp) of the integral of
/// f([P, Q] + u + v) over u in the fiber P^perp cap eta.
MCEstimate mc_strichartz(const PlaneFunction& f, const AffinePlane& zeta, const GrassmannConfig& cfg,
                         std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt = {});

/// Same for the dual transform of g at the j-plane tau.
MCEstimate mc_strichartz_dual(const PlaneFunction& g, const AffinePlane& tau, const GrassmannConfig& cfg,
                              std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt = {});

struct PairingResult {
  MCEstimate forward;       // <R f, g> over affine k-planes
  MCEstimate dual;          // <f, R^* g> over affine j-planes
  double reference = 0.0;   // 1-D integral through the forward radial formula
  double reference_dual = 0.0;  // 1-D integral through the dual radial formula
};

/// Both pairings for radial f (on j-planes) and g (on k-planes).
PairingResult mc_pairing_duality(const RadialProfile& f, const RadialProfile& g, const GrassmannConfig& cfg,
                                 std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt = {});

struct MCComparisonRow {
  double radius = 0.0;
  MCEstimate estimate;
  double radial = 0.0;
  double z = 0.0;
};

struct MCComparison {
  std::vector<MCComparisonRow> rows;
  double max_abs_z = 0.0;
};

/// Compares mc_strichartz at planes at the given distances with the radial
/// formula. Radius i uses substream seed seed + i. z divides by the standard
/// error combined with a 1e-9 relative allowance for the radial value.
MCComparison mc_vs_radial(const RadialProfile& f, const GrassmannConfig& cfg, const std::vector<double>& radii,
                          std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt = {});

}  // namespace orad
