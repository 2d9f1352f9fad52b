#include "shilov/domain.hpp"

#include <cmath>

namespace shilov {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_same_c(const CElem& a, const CElem& b) {
  if (!a.alg()->same(*b.alg()))
    throw AlgebraMismatch("complex elements belong to different algebras");
}

// Complex symmetric matrix picture of a Sym complexification.
Eigen::MatrixXcd csym_matrix(const CElem& z) {
  return sym_matrix(z.re).cast<Complex>() +
         Complex(0, 1) * sym_matrix(z.im).cast<Complex>();
}

CElem csym_from_matrix(const AlgebraPtr& a, const Eigen::MatrixXcd& m) {
  return {sym_from_matrix(a, m.real()), sym_from_matrix(a, m.imag())};
}

}  // namespace

Eigen::VectorXcd CElem::coords() const {
  return re.x.cast<Complex>() + Complex(0, 1) * im.x.cast<Complex>();
}

CElem complexify(const Elem& a) { return {a, zero(a.alg)}; }

CElem czero(const AlgebraPtr& a) { return {zero(a), zero(a)}; }

CElem cunit(const AlgebraPtr& a) { return {unit(a), zero(a)}; }

CElem from_ccoords(const AlgebraPtr& a, const Eigen::VectorXcd& v) {
  return {from_coords(a, v.real()), from_coords(a, v.imag())};
}

CElem operator+(const CElem& a, const CElem& b) {
  return {a.re + b.re, a.im + b.im};
}

CElem operator-(const CElem& a, const CElem& b) {
  return {a.re - b.re, a.im - b.im};
}

CElem operator-(const CElem& a) { return {-a.re, -a.im}; }

CElem operator*(Complex s, const CElem& a) {
  return {s.real() * a.re - s.imag() * a.im,
          s.real() * a.im + s.imag() * a.re};
}

CElem cmul(const CElem& a, const CElem& b) {
  check_same_c(a, b);
  return {mul(a.re, b.re) - mul(a.im, b.im),
          mul(a.re, b.im) + mul(a.im, b.re)};
}

Complex cdet(const CElem& z) {
  const auto& alg = z.alg();
  switch (alg->kind()) {
    case Kind::RealLine:
      return {z.re.x[0], z.im.x[0]};
    case Kind::Sym:
      return csym_matrix(z).determinant();
    case Kind::Spin: {
      const int n = alg->dim();
      Eigen::VectorXcd c = z.coords();
      Complex head = c[0] * c[0];
      Complex tail = 0;
      for (int k = 1; k < n; ++k) tail += c[k] * c[k];
      return 0.5 * (head - tail);
    }
    case Kind::DirectSum: {
      Complex d = 1;
      for (size_t i = 0; i < alg->parts().size(); ++i)
        d *= cdet(part_celem(z, int(i)));
      return d;
    }
  }
  throw Error("unreachable");
}

Complex ctrace(const CElem& z) { return {trace(z.re), trace(z.im)}; }

CElem cinv(const CElem& z) {
  const auto& alg = z.alg();
  switch (alg->kind()) {
    case Kind::RealLine: {
      // Scalar division keeps full relative precision at any magnitude, so
      // only an (effectively) exact zero is singular here.
      Complex v(z.re.x[0], z.im.x[0]);
      if (std::abs(v) < 1e-200) throw SingularElement("cinv of ~0");
      Complex w = 1.0 / v;
      return {from_coords(alg, Eigen::VectorXd::Constant(1, w.real())),
              from_coords(alg, Eigen::VectorXd::Constant(1, w.imag()))};
    }
    case Kind::Sym: {
      // Cayley maps of boundary points close to the chart pole produce tiny
      // but well-conditioned multiples of the identity, whose determinant is
      // far below any absolute cutoff. Gate on the Hadamard ratio instead:
      // |det| / prod(row norms) is scale invariant and collapses exactly when
      // the matrix loses rank relative to its own size.
      Eigen::MatrixXcd m = csym_matrix(z);
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
      double row_prod = 1.0;
      for (int i = 0; i < m.rows(); ++i) row_prod *= m.row(i).norm();
      if (std::abs(lu.determinant()) <= 1e-13 * row_prod)
        throw SingularElement("cinv of a singular Sym element");
      return csym_from_matrix(alg, lu.inverse());
    }
    case Kind::Spin: {
      // det = z0^2 - zv.zv is a difference of terms of order |z|^2, so it is
      // trustworthy (and the inverse well conditioned) exactly when it is not
      // negligible against the squared norm. No absolute floor: uniformly
      // tiny elements invert cleanly.
      Complex d = cdet(z);
      if (std::abs(d) <= 1e-13 * z.norm() * z.norm())
        throw SingularElement("cinv of a singular Spin element");
      // Inverse is (z0, -zv)/det in standard parts; the trace-orthonormal
      // scaling of the coordinates cancels between numerator and unit.
      Eigen::VectorXcd c = z.coords();
      c.tail(alg->dim() - 1) *= -1.0;
      c /= d;
      return from_ccoords(alg, c);
    }
    case Kind::DirectSum: {
      std::vector<CElem> comps;
      for (size_t i = 0; i < alg->parts().size(); ++i)
        comps.push_back(cinv(part_celem(z, int(i))));
      return from_cparts(alg, comps);
    }
  }
  throw Error("unreachable");
}

CElem conj(const CElem& z) { return {z.re, -z.im}; }

CElem part_celem(const CElem& z, int i) {
  return {part_elem(z.re, i), part_elem(z.im, i)};
}

CElem from_cparts(const AlgebraPtr& a, const std::vector<CElem>& comps) {
  std::vector<Elem> res, ims;
  for (const auto& c : comps) {
    res.push_back(c.re);
    ims.push_back(c.im);
  }
  return {from_parts(a, res), from_parts(a, ims)};
}

CElem cayley(const CElem& w) {
  CElem e = cunit(w.alg());
  // e+w and (e-w)^{-1} lie in the associative subalgebra generated by w,
  // so the product below is unambiguous.
  return Complex(0, 1) * cmul(e + w, cinv(e - w));
}

CElem inv_cayley(const CElem& z) {
  CElem ie = Complex(0, 1) * cunit(z.alg());
  return cmul(z - ie, cinv(z + ie));
}

bool in_domain(const CElem& z, double tol) {
  const auto& alg = z.alg();
  switch (alg->kind()) {
    case Kind::RealLine:
      return std::abs(Complex(z.re.x[0], z.im.x[0])) < 1.0 - tol;
    case Kind::Sym: {
      Eigen::MatrixXcd m = csym_matrix(z);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
      return es.eigenvalues().maxCoeff() < 1.0 - tol;
    }
    case Kind::Spin: {
      // Rank-2 closed form: s^2 = |z|^2 + sqrt(|z|^4 - |det|^2) in the
      // standard-coordinate Hermitian norm with |e| = 1.
      const double h = 0.5 * z.coords().squaredNorm();
      const double q = std::abs(cdet(z));  // |z0^2 - zv.zv| in standard coords
      const double disc = std::max(0.0, h * h - q * q);
      return h + std::sqrt(disc) < 1.0 - tol;
    }
    case Kind::DirectSum: {
      for (size_t i = 0; i < alg->parts().size(); ++i)
        if (!in_domain(part_celem(z, int(i)), tol)) return false;
      return true;
    }
  }
  throw Error("unreachable");
}

bool in_tube(const CElem& z, double tol) { return in_cone(z.im, tol); }

bool is_shilov(const CElem& z, double tol) {
  const double scale = std::max(1.0, std::sqrt(double(z.alg()->rank())));
  try {
    CElem zi = cinv(z);
    CElem diff = zi - conj(z);
    return diff.norm() <= tol * scale;
  } catch (const SingularElement&) {
    return false;
  }
}

ShilovPt::ShilovPt(CElem v, double tol) : z(std::move(v)) {
  if (!is_shilov(z, tol))
    throw NotBoundary("point is not on the Shilov boundary");
}

ShilovPt ShilovPt::unchecked(CElem v) { return {std::move(v), Unchecked{}}; }

CElem BoundarySpectral::recompose() const {
  CElem s = czero(frame.idem[0].alg);
  for (int j = 0; j < frame.size(); ++j)
    s = s + phases[j] * complexify(frame.idem[j]);
  return s;
}

namespace {

// Group indices of a sorted eigenvalue vector into clusters within tol.
std::vector<std::pair<int, int>> cluster(const Eigen::VectorXd& v, double tol) {
  std::vector<std::pair<int, int>> spans;
  int start = 0;
  for (int i = 1; i <= v.size(); ++i) {
    if (i == v.size() || std::abs(v[i] - v[start]) > tol) {
      spans.emplace_back(start, i);
      start = i;
    }
  }
  return spans;
}

// Simultaneous spectral frame for commuting real symmetric matrices:
// diagonalize X, then refine inside each eigenspace by Y.
BoundarySpectral sym_joint_frame(const AlgebraPtr& alg, const CElem& s) {
  Eigen::MatrixXd X = sym_matrix(s.re), Y = sym_matrix(s.im);
  const int r = alg->order();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(X);
  Eigen::MatrixXd V = ex.eigenvectors();
  const double spread = std::max(1.0, ex.eigenvalues().cwiseAbs().maxCoeff());
  BoundarySpectral out;
  out.phases.resize(r);
  int col = 0;
  for (auto [lo, hi] : cluster(ex.eigenvalues(), 1e-9 * spread)) {
    Eigen::MatrixXd W = V.middleCols(lo, hi - lo);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ey(W.transpose() * Y * W);
    Eigen::MatrixXd U = W * ey.eigenvectors();
    for (int k = 0; k < hi - lo; ++k, ++col) {
      Eigen::VectorXd v = U.col(k);
      out.frame.idem.push_back(sym_from_matrix(alg, v * v.transpose()));
      out.phases[col] = Complex(v.dot(X * v), v.dot(Y * v));
    }
  }
  return out;
}

}  // namespace

BoundarySpectral shilov_spectral(const ShilovPt& s) {
  const auto& alg = s.z.alg();
  BoundarySpectral out;
  switch (alg->kind()) {
    case Kind::RealLine:
      out.frame.idem.push_back(unit(alg));
      out.phases.resize(1);
      out.phases[0] = Complex(s.z.re.x[0], s.z.im.x[0]);
      return out;
    case Kind::Sym:
      return sym_joint_frame(alg, s.z);
    case Kind::Spin: {
      const int n = alg->dim();
      // The vector parts of re and im are parallel for a boundary point;
      // use the longer of the two as the frame direction.
      Eigen::VectorXd xv = s.z.re.x.tail(n - 1), yv = s.z.im.x.tail(n - 1);
      Eigen::VectorXd dir = xv.norm() >= yv.norm() ? xv : yv;
      if (dir.norm() > 0)
        dir.normalize();
      else {
        dir = Eigen::VectorXd::Zero(n - 1);
        dir[0] = 1.0;
      }
      Eigen::VectorXd cp = Eigen::VectorXd::Zero(n), cm = cp;
      cp[0] = cm[0] = 1.0 / kSqrt2;
      cp.tail(n - 1) = dir / kSqrt2;
      cm.tail(n - 1) = -dir / kSqrt2;
      out.frame.idem.push_back({alg, cp});
      out.frame.idem.push_back({alg, cm});
      out.phases.resize(2);
      const double xs = xv.dot(dir), ys = yv.dot(dir);
      out.phases[0] = Complex((s.z.re.x[0] + xs) / kSqrt2,
                              (s.z.im.x[0] + ys) / kSqrt2);
      out.phases[1] = Complex((s.z.re.x[0] - xs) / kSqrt2,
                              (s.z.im.x[0] - ys) / kSqrt2);
      return out;
    }
    case Kind::DirectSum: {
      std::vector<Complex> ph;
      for (size_t i = 0; i < alg->parts().size(); ++i) {
        BoundarySpectral bi =
            shilov_spectral(ShilovPt::unchecked(part_celem(s.z, int(i))));
        for (int j = 0; j < bi.frame.size(); ++j) {
          Eigen::VectorXd c = Eigen::VectorXd::Zero(alg->dim());
          c.segment(alg->part_offset(int(i)), bi.frame.idem[j].x.size()) =
              bi.frame.idem[j].x;
          out.frame.idem.push_back({alg, std::move(c)});
          ph.push_back(bi.phases[j]);
        }
      }
      out.phases = Eigen::Map<Eigen::VectorXcd>(ph.data(), ph.size());
      return out;
    }
  }
  throw Error("unreachable");
}

ShilovPt shilov_from_frame(const JordanFrame& f,
                           const Eigen::VectorXcd& phases) {
  if (phases.size() != f.size())
    throw ParseError("phase count does not match frame size");
  for (int j = 0; j < f.size(); ++j)
    if (std::abs(std::abs(phases[j]) - 1.0) > 1e-9)
      throw ParseError("phases must be unimodular");
  BoundarySpectral b{f, phases};
  return ShilovPt::unchecked(b.recompose());
}

double transversality_margin(const CElem& z, const CElem& w) {
  check_same_c(z, w);
  return std::abs(cdet(z - w));
}

bool transversal(const CElem& z, const CElem& w, double tol) {
  const double scale = std::pow(2.0, z.alg()->rank());
  return transversality_margin(z, w) > tol * scale;
}

}  // namespace shilov
