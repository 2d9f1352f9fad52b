#pragma once

#include <cstdint>
#include <random>

#include "shilov/domain.hpp"

namespace shilov {

/// Deterministic random source.  mt19937_64 is fully specified by the
/// standard; the distributions below are hand-rolled so streams are
/// byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Derive an independent stream for trial `k` of a command seeded with
  /// `seed` (splitmix64 mixing).
  static Rng split(std::uint64_t seed, std::uint64_t k);

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // Box-Muller, no cached spare
  std::uint64_t bits() { return eng_(); }
  int uniform_int(int n);  // {0, .., n-1}

 private:
  std::mt19937_64 eng_;
};

Eigen::VectorXd normal_vector(Rng& rng, int n);
/// Haar-ish random orthogonal matrix via QR with sign fix.
Eigen::MatrixXd random_orthogonal(Rng& rng, int n);

/// Random Jordan frame: rotated eigenbasis for Sym, random axis for Spin,
/// concatenation for sums.
JordanFrame random_frame(const AlgebraPtr& a, Rng& rng);

/// Uniform phases over a random frame.
ShilovPt sample_shilov(const AlgebraPtr& a, Rng& rng);

/// Random interior point of the bounded domain, spectral norm <= radius.
CElem sample_domain_interior(const AlgebraPtr& a, Rng& rng,
                             double radius = 0.8);

/// Random element of the open cone with eigenvalues exp(sigma * normal).
Elem sample_cone(const AlgebraPtr& a, Rng& rng, double sigma = 0.5);

/// k pairwise-transverse boundary points by rejection; margin is the
/// minimum |det(z_i - z_j)| relative to 2^rank.  Throws BudgetExhausted.
std::vector<ShilovPt> sample_transverse_tuple(const AlgebraPtr& a, Rng& rng,
                                              int k, double margin = 1e-6,
                                              int budget = 1000);

enum class QuadKind { PositiveInner, PositiveOuter, Negative };

/// Extremal quadruple (a, b, c, d) over a random frame.  Phase placement
/// per component follows the cyclic pattern of the requested class:
///   PositiveInner:  a, d, b, c     PositiveOuter:  a, b, d, c
///   Negative:       a, b, c, d
/// with all components positively oriented when maximal_base, reversed
/// otherwise.  min_gap is the minimum angular separation per component.
std::array<ShilovPt, 4> sample_extremal_quadruple(
    const AlgebraPtr& a, Rng& rng, QuadKind kind, bool maximal_base = true,
    double min_gap = 0.05);

/// k boundary points diagonal over one random frame whose per-component
/// angles share a single cyclic order; every sub-triple of the result is
/// maximal or minimal, so all sub-quadruples are extremal.
std::vector<ShilovPt> sample_cyclic_tuple(const AlgebraPtr& a, Rng& rng,
                                          int k, double min_gap = 0.05);

}  // namespace shilov
