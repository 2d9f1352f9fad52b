#pragma once

#include <complex>

#include "shilov/algebra.hpp"

namespace shilov {

using Complex = std::complex<double>;

/// Element of the complexified algebra, z = re + i*im.
struct CElem {
  Elem re;
  Elem im;

  const AlgebraPtr& alg() const { return re.alg; }
  double norm() const { return std::sqrt(re.x.squaredNorm() + im.x.squaredNorm()); }
  Eigen::VectorXcd coords() const;
};

CElem complexify(const Elem& a);
CElem czero(const AlgebraPtr& a);
CElem cunit(const AlgebraPtr& a);
CElem from_ccoords(const AlgebraPtr& a, const Eigen::VectorXcd& v);

CElem operator+(const CElem& a, const CElem& b);
CElem operator-(const CElem& a, const CElem& b);
CElem operator-(const CElem& a);
CElem operator*(Complex s, const CElem& a);

/// Complex-bilinear extension of the Jordan product.
CElem cmul(const CElem& a, const CElem& b);
/// Complex polynomial extension of the Jordan determinant.
Complex cdet(const CElem& z);
/// Complex-linear extension of the Jordan trace.
Complex ctrace(const CElem& z);
/// Jordan inverse over the complexification; throws SingularElement.
CElem cinv(const CElem& z);
/// Complex conjugation with respect to the real form.
CElem conj(const CElem& z);
CElem part_celem(const CElem& z, int i);
CElem from_cparts(const AlgebraPtr& a, const std::vector<CElem>& comps);

/// Cayley transform w -> i(e + w)(e - w)^{-1}, bounded model to tube.
CElem cayley(const CElem& w);
/// Inverse Cayley transform z -> (z - ie)(z + ie)^{-1}.
CElem inv_cayley(const CElem& z);

/// Membership in the bounded symmetric domain (spectral norm < 1, via the
/// per-model closed forms).
bool in_domain(const CElem& z, double tol = kTol);
/// Membership in the tube: imaginary part in the open cone.
bool in_tube(const CElem& z, double tol = kTol);

/// Shilov-boundary membership: z invertible with z^{-1} = conj(z).
bool is_shilov(const CElem& z, double tol = 1e-7);

/// Validated point of the Shilov boundary.
struct ShilovPt {
  CElem z;

  /// Validates is_shilov; use unchecked() when construction guarantees it.
  explicit ShilovPt(CElem v, double tol = 1e-7);
  static ShilovPt unchecked(CElem v);

 private:
  struct Unchecked {};
  ShilovPt(CElem v, Unchecked) : z(std::move(v)) {}
};

/// Joint spectral form of a boundary point: s = sum_j lambda_j c_j with a
/// real frame and unimodular phases.
struct BoundarySpectral {
  JordanFrame frame;
  Eigen::VectorXcd phases;
  CElem recompose() const;
};

/// Decompose a Shilov point over a real frame co-diagonalizing its real
/// and imaginary parts.
BoundarySpectral shilov_spectral(const ShilovPt& s);

/// Build a Shilov point from a frame and unimodular phases.
ShilovPt shilov_from_frame(const JordanFrame& f, const Eigen::VectorXcd& phases);

/// Transversality margin |det(z - w)| and the margin-based predicate.
/// The margin threshold scales with det(2e) = 2^rank.
double transversality_margin(const CElem& z, const CElem& w);
bool transversal(const CElem& z, const CElem& w, double tol = 1e-8);

}  // namespace shilov
