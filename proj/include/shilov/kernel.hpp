#pragma once

#include <array>
#include <complex>
#include <vector>

#include "shilov/conformal.hpp"
#include "shilov/domain.hpp"

namespace shilov {

/// Complex-linear operator on the complexified algebra, as a matrix in the
/// fixed trace-orthonormal coordinate basis.
using LinOpC = Eigen::MatrixXcd;

/// Multiplication operator L(z): x -> z x.
LinOpC lop(const CElem& z);

/// Box operator z [] w = L(zw) + [L(z), L(w)], complex-bilinear in both slots
/// (no hidden conjugation; callers conjugate where a formula asks for it).
LinOpC box_op(const CElem& z, const CElem& w);

/// Quadratic representation P(z) = 2 L(z)^2 - L(z^2).
LinOpC quad_rep(const CElem& z);

/// K(z,w) = I - 2 (z [] conj(w)) + P(z) P(conj(w)).
LinOpC aut_kernel(const CElem& z, const CElem& w);

/// det K(z,w). Nonzero on boundary pairs exactly when they are transverse.
Complex kdet(const CElem& z, const CElem& w);

/// Magnitude of the normalized kernel: |kdet|^(1/2n) on a simple algebra,
/// combined over ideals with weights rank_i/rank on sums. Returns 0 on
/// non-transverse boundary pairs.
double k_mag(const CElem& z, const CElem& w);

/// Word g with g(a) = -e and g(c) = e. The construction first applies a phase
/// rotation chosen from a deterministic grid so that a, c, and any `protect`
/// points stay clear of the Cayley singular set, then moves the pair to
/// (0, infinity) in the tube and returns to the ball. The word sends c
/// through the point at infinity, so it should not be re-applied to points
/// non-transverse to c.
ConformalWord normalize_pair(const ShilovPt& a, const ShilovPt& c,
                             const std::vector<CElem>& protect = {});

/// Signature of the triple: normalize (z1, z3) to (0, infinity), read off the
/// real invertible tube image x of z2, and return the number of positive
/// minus the number of negative eigenvalues of x. Values lie in
/// {-r, -r+2, ..., r}; +r on maximal triples, -r on minimal ones.
int maslov(const ShilovPt& z1, const ShilovPt& z2, const ShilovPt& z3);

enum class QuadLabel { PositiveInner, PositiveOuter, Negative, NotExtremal };

struct QuadClass {
  QuadLabel label = QuadLabel::NotExtremal;
  bool maximal_base = false;  // whether (a,b,c) is maximal (vs minimal)
  int epsilon = 0;            // sign of the cross ratio; 0 when not extremal
};

const char* to_string(QuadLabel label);

/// Extremality test plus sign classification from the four sub-triple
/// signatures. Requires pairwise transverse points.
QuadClass classify_quadruple(const ShilovPt& a, const ShilovPt& b,
                             const ShilovPt& c, const ShilovPt& d);

/// The generalized cross ratio, computed through the normal form (path B):
/// normalize (a,c) to (0, infinity), dilate the image y of b to +-e, and read
/// off B = eta * sigma * |det x'|^(1/r) from the image x' of d. Coincidence
/// patterns a=c / b=d return exactly 1 and d=a / c=b return exactly 0; all
/// other configurations must be extremal.
double cross_ratio(const ShilovPt& a, const ShilovPt& b, const ShilovPt& c,
                   const ShilovPt& d);

/// Raw kernel-determinant ratio (path A):
/// kdet(d,a) kdet(b,c) / (kdet(d,c) kdet(b,a)).
Complex cross_ratio_det(const ShilovPt& a, const ShilovPt& b,
                        const ShilovPt& c, const ShilovPt& d);

/// Magnitude of the cross ratio through normalized-kernel magnitudes; equals
/// |cross_ratio_det|^(1/2n) ideal by ideal with rank weights.
double cross_ratio_mag(const ShilovPt& a, const ShilovPt& b,
                       const ShilovPt& c, const ShilovPt& d);

/// Bergman-kernel cross ratio of interior points; the volume constants
/// cancel, leaving the same determinant ratio as cross_ratio_det.
Complex bergman_cross(const CElem& x, const CElem& y, const CElem& z,
                      const CElem& t);

/// Applies a balanced homomorphism to a complexified element (coordinates map
/// linearly) and to boundary points.
CElem apply_hom(const BalancedHom& h, const CElem& z);
ShilovPt apply_hom(const BalancedHom& h, const ShilovPt& z);

enum class Quantity { Maslov, CrossRatio, Transversal };

struct InvarianceReport {
  int trials = 0;
  int skipped = 0;            // configurations lost to singular orbits
  double max_deviation = 0.0; // |before - after| over surviving trials
  int exact_mismatches = 0;   // integer / boolean disagreements
};

/// Evaluates the quantity on sampled configurations before and after random
/// conformal words. Singular orbits are retried with a seeded phase
/// pre-rotation and counted as skipped when they persist.
InvarianceReport invariance_suite(const AlgebraPtr& alg, Quantity q,
                                  int n_words, int n_configs,
                                  std::uint64_t seed, int word_length = 4);

}  // namespace shilov
