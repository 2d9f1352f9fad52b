#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "shilov/errors.hpp"

namespace shilov {

/// Default relative tolerance for algebraic predicates (idempotency,
/// orthogonality, transversality margins, ...).  Callers can override
/// per call; nothing in the library keeps mutable global state.
inline constexpr double kTol = 1e-9;

enum class Kind { RealLine, Sym, Spin, DirectSum };

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Descriptor of a Euclidean Jordan algebra.  Supported models:
///   RealLine        the reals, rank 1
///   Sym(r)          real symmetric r x r matrices, product (XY+YX)/2
///   Spin(n)         R x R^{n-1} with the spin product, rank 2, n >= 3
///   DirectSum       finite sums of the above, flattened to one level
///
/// Elements carry coordinates with respect to a fixed basis that is
/// orthonormal for the trace form (x|y) = tr(xy); see Elem.
class Algebra {
 public:
  static AlgebraPtr real_line();
  static AlgebraPtr sym(int r);
  static AlgebraPtr spin(int n);
  static AlgebraPtr direct_sum(std::vector<AlgebraPtr> parts);
  /// k-fold sum of real lines (boundary is the k-torus).
  static AlgebraPtr polydisc(int k);

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  /// Model parameter: r for Sym(r), n for Spin(n), 1 otherwise.
  int order() const { return order_; }
  bool simple() const { return kind_ != Kind::DirectSum; }

  const std::vector<AlgebraPtr>& parts() const { return parts_; }
  /// Coordinate offset of part i inside a DirectSum element.
  int part_offset(int i) const { return offsets_[i]; }

  bool same(const Algebra& other) const;
  std::string name() const;

 private:
  Algebra() = default;
  Kind kind_ = Kind::RealLine;
  int rank_ = 1;
  int dim_ = 1;
  int order_ = 1;
  std::vector<AlgebraPtr> parts_;
  std::vector<int> offsets_;
};

/// Element of a Euclidean Jordan algebra, stored as coordinates in the
/// fixed trace-orthonormal basis of its algebra.
struct Elem {
  AlgebraPtr alg;
  Eigen::VectorXd x;

  double norm() const { return x.norm(); }
};

Elem zero(const AlgebraPtr& a);
Elem unit(const AlgebraPtr& a);
Elem basis_elem(const AlgebraPtr& a, int k);
Elem from_coords(const AlgebraPtr& a, Eigen::VectorXd coords);

Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);
Elem operator*(double s, const Elem& a);

/// Jordan product.
Elem mul(const Elem& a, const Elem& b);
/// Jordan trace (sum of spectral eigenvalues).
double trace(const Elem& a);
/// Jordan determinant (product of spectral eigenvalues).
double det_jordan(const Elem& a);
/// Trace form (a|b) = trace(mul(a, b)).
double inner(const Elem& a, const Elem& b);

/// Embed/extract the Sym(r) matrix picture.  Basis order: E_ii for
/// i = 0..r-1, then (E_ij + E_ji)/sqrt(2) for i < j lexicographic.
Eigen::MatrixXd sym_matrix(const Elem& a);
Elem sym_from_matrix(const AlgebraPtr& a, const Eigen::MatrixXd& m);

/// Component of a DirectSum element in part i, as an element of that part.
Elem part_elem(const Elem& a, int i);
/// Rebuild a DirectSum element from per-part components.
Elem from_parts(const AlgebraPtr& a, const std::vector<Elem>& comps);

/// Complete system of orthogonal primitive idempotents.
struct JordanFrame {
  std::vector<Elem> idem;
  int size() const { return static_cast<int>(idem.size()); }
};

/// Largest violation of the frame axioms (idempotency, pairwise
/// orthogonality, primitivity of traces, summing to the unit).
double frame_residual(const JordanFrame& f);

/// The coordinate frame: E_ii for Sym, the first-axis pair for Spin,
/// 1 per real line, concatenation for sums.
JordanFrame canonical_frame(const AlgebraPtr& a);

struct SpectralDecomp {
  JordanFrame frame;
  Eigen::VectorXd eigenvalues;  // sorted descending, paired with frame
  Elem recompose() const;
};

/// Spectral decomposition x = sum_j lambda_j c_j.  Deterministic: ties in
/// Sym eigenvalues resolve to the solver's ordering, Spin uses the first
/// coordinate axis when the vector part vanishes.
SpectralDecomp spectral(const Elem& x);

/// Refine pairwise-orthogonal idempotents summing to the unit into a
/// full Jordan frame; partial sums of the output reproduce the inputs.
/// Validates the inputs to `tol` (relative).
JordanFrame complete_frame(std::span<const Elem> idems, double tol = kTol);

/// Positivity in the open symmetric cone (all spectral eigenvalues > 0).
bool in_cone(const Elem& x, double tol = kTol);
/// Square root through the frame; requires in_cone.
Elem sqrt_cone(const Elem& x);
/// Jordan inverse through the frame; requires invertibility.
Elem inv(const Elem& x);
/// Eigenvalue power through the frame.  Non-integer k requires the open
/// cone; integer k only needs invertibility when k < 0.
Elem power(const Elem& x, double k);

/// Unital Jordan homomorphism between algebras given by its matrix on
/// trace-orthonormal coordinates.  `multiplicity` is the common number of
/// target frame members each primitive source idempotent splits into;
/// balanced means trace(h(x)) = multiplicity * trace(x).
struct BalancedHom {
  AlgebraPtr source;
  AlgebraPtr target;
  Eigen::MatrixXd action;
  int multiplicity = 1;
};

Elem apply_hom(const BalancedHom& h, const Elem& v);

/// lambda -> lambda * unit.  Balanced with multiplicity rank(target).
BalancedHom scalar_hom(const AlgebraPtr& target);
/// Polydisc source onto the canonical frame of the target, repeating each
/// source slot rank(target)/rank(source) times.  Rejects rank mismatches
/// and unbalanced constructions.
BalancedHom diagonal_hom(const AlgebraPtr& source, const AlgebraPtr& target);
/// (lambda_1..lambda_r) -> sum lambda_j c_j over an arbitrary frame.
BalancedHom frame_hom(const AlgebraPtr& target, const JordanFrame& f);
/// Wrap an explicit coordinate matrix.  Checks that it is a unital Jordan
/// homomorphism (on basis products) but NOT that it is balanced; callers
/// must gate on is_balanced where the cross-ratio contract needs it.
BalancedHom hom_from_matrix(const AlgebraPtr& source, const AlgebraPtr& target,
                            const Eigen::MatrixXd& m);

/// Checks trace(h(x)) = multiplicity * trace(x) on the source basis and
/// that multiplicity * rank(source) = rank(target).
bool is_balanced(const BalancedHom& h, double tol = kTol);

}  // namespace shilov
