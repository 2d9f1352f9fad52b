#pragma once

#include <cstdint>
#include <utility>

#include "shilov/domain.hpp"

namespace shilov {

/// Scale factor on the cone-normalized tube metric. The underlying formula is
/// H_z(a,b) = kappa * (2n/r) * (P(2 Im z)^{-1} a | b); kappa lets callers
/// rescale to other conventions without touching the formulas.
struct MetricConfig {
  double kappa = 1.0;
};

/// Hermitian metric of the tube domain at z, evaluated on tangent vectors a,
/// b. Depends on z only through Im z, so it is invariant under real
/// translations. Requires Im z inside the cone.
Complex tube_metric(const CElem& z, const CElem& a, const CElem& b,
                    const MetricConfig& cfg = {});

/// Distance in the symmetric space of positive definite operators:
/// sqrt(sum log^2 lambda_i) over the spectrum of p^{-1} q. Invariant under
/// the congruence action p -> g p g^T.
double pv_dist(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q);

/// |log det(g)^2| / sqrt(m) for g acting on an m-dimensional space by
/// congruence; a lower bound for inf_p pv_dist(p, g p g^T), attained by
/// scalar matrices.
double pv_translation_lower_bound(const Eigen::MatrixXd& g);

/// Translation length on the hyperbolic disc of a determinant-one matrix:
/// 2 log lambda_max for hyperbolic elements, 0 otherwise.
double disc_translation(const Eigen::Matrix2d& m);

/// Virtual translation length log[fix^- : xi : fix^+ : m xi], computed from
/// the boundary action. Requires a hyperbolic element and xi away from its
/// fixed points; the value is independent of xi and equals the translation
/// length.
double disc_virtual_translation(const Eigen::Matrix2d& m, double xi);

/// Classical four-point cross ratio (a-d)(c-b) / ((c-d)(a-b)) on the real
/// projective line; slots may hold infinity.
double real_cross_ratio(double a, double b, double c, double d);

/// Boundary Moebius action (m00 x + m01) / (m10 x + m11) on the extended real
/// line.
double mobius_real(const Eigen::Matrix2d& m, double x);

/// (repelling, attracting) boundary fixed points of a hyperbolic matrix.
std::pair<double, double> disc_fixed_points(const Eigen::Matrix2d& m);

struct PowerCheck {
  bool pass = false;
  double margin = 0.0;  // smallest slack seen; negative means violation
};

/// tau(g) >= tau(g^M)/M. On the disc both sides are closed-form; equality is
/// expected for hyperbolic elements.
PowerCheck power_inequality_check(const Eigen::Matrix2d& m, int M);

/// Same inequality on the positive-operator space, verified in the sampled
/// form M * d(p, g p g^T) >= d(p, g^M p (g^M)^T) over random basepoints.
PowerCheck power_inequality_check(const Eigen::MatrixXd& g, int M,
                                  int samples, std::uint64_t seed);

}  // namespace shilov
