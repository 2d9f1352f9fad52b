#include "shilov/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace shilov {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_same(const Elem& a, const Elem& b) {
  if (!a.alg || !b.alg || !a.alg->same(*b.alg))
    throw AlgebraMismatch("elements belong to different algebras");
}

int sym_dim(int r) { return r * (r + 1) / 2; }

// Index of the (i,j) off-diagonal basis vector, i < j.
int sym_off_index(int r, int i, int j) {
  return r + i * (2 * r - i - 1) / 2 + (j - i - 1);
}

}  // namespace

AlgebraPtr Algebra::real_line() {
  auto a = std::shared_ptr<Algebra>(new Algebra);
  a->kind_ = Kind::RealLine;
  a->rank_ = a->dim_ = a->order_ = 1;
  return a;
}

AlgebraPtr Algebra::sym(int r) {
  if (r < 1) throw ParseError("sym(r) needs r >= 1");
  if (r == 1) return real_line();
  auto a = std::shared_ptr<Algebra>(new Algebra);
  a->kind_ = Kind::Sym;
  a->rank_ = r;
  a->order_ = r;
  a->dim_ = sym_dim(r);
  return a;
}

AlgebraPtr Algebra::spin(int n) {
  if (n < 3) throw ParseError("spin(n) needs n >= 3");
  auto a = std::shared_ptr<Algebra>(new Algebra);
  a->kind_ = Kind::Spin;
  a->rank_ = 2;
  a->order_ = n;
  a->dim_ = n;
  return a;
}

AlgebraPtr Algebra::direct_sum(std::vector<AlgebraPtr> parts) {
  if (parts.empty()) throw ParseError("direct sum needs at least one part");
  // Flatten nested sums one level so parts are always simple.
  std::vector<AlgebraPtr> flat;
  for (auto& p : parts) {
    if (!p) throw ParseError("null part in direct sum");
    if (p->kind() == Kind::DirectSum)
      flat.insert(flat.end(), p->parts().begin(), p->parts().end());
    else
      flat.push_back(p);
  }
  if (flat.size() == 1) return flat[0];
  auto a = std::shared_ptr<Algebra>(new Algebra);
  a->kind_ = Kind::DirectSum;
  a->parts_ = std::move(flat);
  a->rank_ = 0;
  a->dim_ = 0;
  a->order_ = 1;
  for (auto& p : a->parts_) {
    a->offsets_.push_back(a->dim_);
    a->rank_ += p->rank();
    a->dim_ += p->dim();
  }
  return a;
}

AlgebraPtr Algebra::polydisc(int k) {
  std::vector<AlgebraPtr> parts(k, real_line());
  return direct_sum(std::move(parts));
}

bool Algebra::same(const Algebra& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_ || order_ != other.order_) return false;
  if (kind_ != Kind::DirectSum) return true;
  if (parts_.size() != other.parts_.size()) return false;
  for (size_t i = 0; i < parts_.size(); ++i)
    if (!parts_[i]->same(*other.parts_[i])) return false;
  return true;
}

std::string Algebra::name() const {
  switch (kind_) {
    case Kind::RealLine: return "r";
    case Kind::Sym: return "sym" + std::to_string(order_);
    case Kind::Spin: return "spin" + std::to_string(order_);
    case Kind::DirectSum: {
      std::string s = "sum(";
      for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += parts_[i]->name();
      }
      return s + ")";
    }
  }
  return "?";
}

Elem zero(const AlgebraPtr& a) {
  return {a, Eigen::VectorXd::Zero(a->dim())};
}

Elem unit(const AlgebraPtr& a) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a->dim());
  switch (a->kind()) {
    case Kind::RealLine:
      x[0] = 1.0;
      break;
    case Kind::Sym:
      for (int i = 0; i < a->order(); ++i) x[i] = 1.0;
      break;
    case Kind::Spin:
      x[0] = kSqrt2;  // unit is (1, 0) in the standard picture
      break;
    case Kind::DirectSum:
      for (size_t i = 0; i < a->parts().size(); ++i) {
        const auto& p = a->parts()[i];
        x.segment(a->part_offset(int(i)), p->dim()) = unit(p).x;
      }
      break;
  }
  return {a, std::move(x)};
}

Elem basis_elem(const AlgebraPtr& a, int k) {
  if (k < 0 || k >= a->dim()) throw ParseError("basis index out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a->dim());
  x[k] = 1.0;
  return {a, std::move(x)};
}

Elem from_coords(const AlgebraPtr& a, Eigen::VectorXd coords) {
  if (coords.size() != a->dim())
    throw AlgebraMismatch("coordinate vector has wrong dimension");
  return {a, std::move(coords)};
}

Elem operator+(const Elem& a, const Elem& b) {
  check_same(a, b);
  return {a.alg, a.x + b.x};
}

Elem operator-(const Elem& a, const Elem& b) {
  check_same(a, b);
  return {a.alg, a.x - b.x};
}

Elem operator-(const Elem& a) { return {a.alg, -a.x}; }

Elem operator*(double s, const Elem& a) { return {a.alg, s * a.x}; }

Eigen::MatrixXd sym_matrix(const Elem& a) {
  const int r = a.alg->order();
  Eigen::MatrixXd m(r, r);
  for (int i = 0; i < r; ++i) m(i, i) = a.x[i];
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      m(i, j) = m(j, i) = a.x[sym_off_index(r, i, j)] / kSqrt2;
  return m;
}

Elem sym_from_matrix(const AlgebraPtr& a, const Eigen::MatrixXd& m) {
  const int r = a->order();
  Eigen::VectorXd x(a->dim());
  for (int i = 0; i < r; ++i) x[i] = m(i, i);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      x[sym_off_index(r, i, j)] = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  return {a, std::move(x)};
}

Elem part_elem(const Elem& a, int i) {
  const auto& p = a.alg->parts().at(i);
  return {p, a.x.segment(a.alg->part_offset(i), p->dim())};
}

Elem from_parts(const AlgebraPtr& a, const std::vector<Elem>& comps) {
  Eigen::VectorXd x(a->dim());
  for (size_t i = 0; i < comps.size(); ++i)
    x.segment(a->part_offset(int(i)), comps[i].x.size()) = comps[i].x;
  return {a, std::move(x)};
}

Elem mul(const Elem& a, const Elem& b) {
  check_same(a, b);
  const auto& alg = a.alg;
  switch (alg->kind()) {
    case Kind::RealLine:
      return {alg, a.x.cwiseProduct(b.x)};
    case Kind::Sym: {
      Eigen::MatrixXd ma = sym_matrix(a), mb = sym_matrix(b);
      return sym_from_matrix(alg, 0.5 * (ma * mb + mb * ma));
    }
    case Kind::Spin: {
      // Standard coordinates are coords/sqrt(2); the product
      // (x0 y0 + <xv,yv>, x0 yv + y0 xv) becomes the form below.
      const int n = alg->dim();
      Eigen::VectorXd z(n);
      z[0] = a.x.dot(b.x) / kSqrt2;
      z.tail(n - 1) =
          (a.x[0] * b.x.tail(n - 1) + b.x[0] * a.x.tail(n - 1)) / kSqrt2;
      return {alg, std::move(z)};
    }
    case Kind::DirectSum: {
      Eigen::VectorXd z(alg->dim());
      for (size_t i = 0; i < alg->parts().size(); ++i) {
        Elem zi = mul(part_elem(a, int(i)), part_elem(b, int(i)));
        z.segment(alg->part_offset(int(i)), zi.x.size()) = zi.x;
      }
      return {alg, std::move(z)};
    }
  }
  throw Error("unreachable");
}

double trace(const Elem& a) {
  switch (a.alg->kind()) {
    case Kind::RealLine: return a.x[0];
    case Kind::Sym: return a.x.head(a.alg->order()).sum();
    case Kind::Spin: return kSqrt2 * a.x[0];
    case Kind::DirectSum: {
      double t = 0;
      for (size_t i = 0; i < a.alg->parts().size(); ++i)
        t += trace(part_elem(a, int(i)));
      return t;
    }
  }
  throw Error("unreachable");
}

double det_jordan(const Elem& a) {
  switch (a.alg->kind()) {
    case Kind::RealLine: return a.x[0];
    case Kind::Sym: {
      Eigen::MatrixXd m = sym_matrix(a);
      return m.determinant();
    }
    case Kind::Spin: {
      const int n = a.alg->dim();
      return 0.5 * (a.x[0] * a.x[0] - a.x.tail(n - 1).squaredNorm());
    }
    case Kind::DirectSum: {
      double d = 1;
      for (size_t i = 0; i < a.alg->parts().size(); ++i)
        d *= det_jordan(part_elem(a, int(i)));
      return d;
    }
  }
  throw Error("unreachable");
}

double inner(const Elem& a, const Elem& b) { return trace(mul(a, b)); }

double frame_residual(const JordanFrame& f) {
  if (f.idem.empty()) return 1.0;
  double worst = 0;
  Elem s = zero(f.idem[0].alg);
  for (int i = 0; i < f.size(); ++i) {
    const Elem& c = f.idem[i];
    worst = std::max(worst, (mul(c, c) - c).norm());
    worst = std::max(worst, std::abs(trace(c) - 1.0));
    for (int j = i + 1; j < f.size(); ++j)
      worst = std::max(worst, mul(c, f.idem[j]).norm());
    s = s + c;
  }
  worst = std::max(worst, (s - unit(s.alg)).norm());
  return worst;
}

JordanFrame canonical_frame(const AlgebraPtr& a) {
  JordanFrame f;
  switch (a->kind()) {
    case Kind::RealLine:
      f.idem.push_back(unit(a));
      break;
    case Kind::Sym:
      for (int i = 0; i < a->order(); ++i) f.idem.push_back(basis_elem(a, i));
      break;
    case Kind::Spin: {
      // (1/2)(1, +-e_1) in standard coordinates.
      Eigen::VectorXd x = Eigen::VectorXd::Zero(a->dim());
      x[0] = 1.0 / kSqrt2;
      x[1] = 1.0 / kSqrt2;
      f.idem.push_back({a, x});
      x[1] = -1.0 / kSqrt2;
      f.idem.push_back({a, x});
      break;
    }
    case Kind::DirectSum:
      for (size_t i = 0; i < a->parts().size(); ++i) {
        JordanFrame g = canonical_frame(a->parts()[i]);
        for (auto& c : g.idem) {
          Eigen::VectorXd x = Eigen::VectorXd::Zero(a->dim());
          x.segment(a->part_offset(int(i)), c.x.size()) = c.x;
          f.idem.push_back({a, std::move(x)});
        }
      }
      break;
  }
  return f;
}

Elem SpectralDecomp::recompose() const {
  Elem s = zero(frame.idem[0].alg);
  for (int j = 0; j < frame.size(); ++j)
    s = s + eigenvalues[j] * frame.idem[j];
  return s;
}

namespace {

SpectralDecomp sort_descending(SpectralDecomp d) {
  const int m = d.frame.size();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return d.eigenvalues[i] > d.eigenvalues[j];
  });
  SpectralDecomp out;
  out.eigenvalues.resize(m);
  for (int k = 0; k < m; ++k) {
    out.eigenvalues[k] = d.eigenvalues[order[k]];
    out.frame.idem.push_back(std::move(d.frame.idem[order[k]]));
  }
  return out;
}

}  // namespace

SpectralDecomp spectral(const Elem& x) {
  const auto& alg = x.alg;
  SpectralDecomp d;
  switch (alg->kind()) {
    case Kind::RealLine:
      d.frame.idem.push_back(unit(alg));
      d.eigenvalues.resize(1);
      d.eigenvalues[0] = x.x[0];
      return d;
    case Kind::Sym: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym_matrix(x));
      const int r = alg->order();
      d.eigenvalues.resize(r);
      for (int j = 0; j < r; ++j) {
        d.eigenvalues[j] = es.eigenvalues()[j];
        Eigen::VectorXd v = es.eigenvectors().col(j);
        d.frame.idem.push_back(sym_from_matrix(alg, v * v.transpose()));
      }
      return sort_descending(std::move(d));
    }
    case Kind::Spin: {
      const int n = alg->dim();
      Eigen::VectorXd dir = x.x.tail(n - 1);
      const double vn = dir.norm();
      if (vn > 0)
        dir /= vn;
      else
        dir[0] = 1.0;  // degenerate vector part: first coordinate axis
      Eigen::VectorXd cp = Eigen::VectorXd::Zero(n), cm = cp;
      cp[0] = cm[0] = 1.0 / kSqrt2;
      cp.tail(n - 1) = dir / kSqrt2;
      cm.tail(n - 1) = -dir / kSqrt2;
      d.frame.idem.push_back({alg, cp});
      d.frame.idem.push_back({alg, cm});
      d.eigenvalues.resize(2);
      d.eigenvalues[0] = (x.x[0] + vn) / kSqrt2;
      d.eigenvalues[1] = (x.x[0] - vn) / kSqrt2;
      return sort_descending(std::move(d));
    }
    case Kind::DirectSum: {
      std::vector<double> ev;
      for (size_t i = 0; i < alg->parts().size(); ++i) {
        SpectralDecomp di = spectral(part_elem(x, int(i)));
        for (int j = 0; j < di.frame.size(); ++j) {
          Eigen::VectorXd c = Eigen::VectorXd::Zero(alg->dim());
          c.segment(alg->part_offset(int(i)), di.frame.idem[j].x.size()) =
              di.frame.idem[j].x;
          d.frame.idem.push_back({alg, std::move(c)});
          ev.push_back(di.eigenvalues[j]);
        }
      }
      d.eigenvalues = Eigen::Map<Eigen::VectorXd>(ev.data(), ev.size());
      return sort_descending(std::move(d));
    }
  }
  throw Error("unreachable");
}

JordanFrame complete_frame(std::span<const Elem> idems, double tol) {
  if (idems.empty()) throw ParseError("complete_frame needs idempotents");
  const auto& alg = idems[0].alg;
  const double scale = std::max(1.0, std::sqrt(double(alg->rank())));

  Elem s = zero(alg);
  for (size_t i = 0; i < idems.size(); ++i) {
    const Elem& d = idems[i];
    if (!d.alg->same(*alg)) throw AlgebraMismatch("mixed algebras in frame");
    if ((mul(d, d) - d).norm() > tol * scale)
      throw ParseError("complete_frame input is not idempotent");
    for (size_t j = i + 1; j < idems.size(); ++j)
      if (mul(d, idems[j]).norm() > tol * scale)
        throw ParseError("complete_frame inputs are not orthogonal");
    s = s + d;
  }
  if ((s - unit(alg)).norm() > tol * scale)
    throw ParseError("complete_frame inputs do not sum to the unit");

  JordanFrame out;
  for (const Elem& d : idems) {
    const double t = trace(d);
    if (std::abs(t - 1.0) <= tol * scale) {  // already primitive
      out.idem.push_back(d);
      continue;
    }
    switch (alg->kind()) {
      case Kind::RealLine:
        out.idem.push_back(d);
        break;
      case Kind::Sym: {
        // Split along the eigenvectors of the projection matrix.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym_matrix(d));
        for (int j = 0; j < alg->order(); ++j) {
          if (es.eigenvalues()[j] < 0.5) continue;
          Eigen::VectorXd v = es.eigenvectors().col(j);
          out.idem.push_back(sym_from_matrix(alg, v * v.transpose()));
        }
        break;
      }
      case Kind::Spin: {
        // The only non-primitive nonzero idempotent is the unit.
        JordanFrame f = canonical_frame(alg);
        out.idem.push_back(f.idem[0]);
        out.idem.push_back(f.idem[1]);
        break;
      }
      case Kind::DirectSum: {
        for (size_t i = 0; i < alg->parts().size(); ++i) {
          Elem di = part_elem(d, int(i));
          if (di.norm() <= tol * scale) continue;
          std::vector<Elem> sub;
          // Pad to a unit-sum family inside the part so the part-level
          // refinement below can reuse this same routine.
          Elem rest = unit(di.alg) - di;
          sub.push_back(di);
          if (rest.norm() > tol * scale) sub.push_back(rest);
          JordanFrame pf = complete_frame(sub, tol);
          for (int j = 0; j < pf.size(); ++j) {
            // Keep only the members refining di itself.
            if (std::abs(inner(pf.idem[j], di) - 1.0) > 0.5) continue;
            Eigen::VectorXd c = Eigen::VectorXd::Zero(alg->dim());
            c.segment(alg->part_offset(int(i)), pf.idem[j].x.size()) =
                pf.idem[j].x;
            out.idem.push_back({alg, std::move(c)});
          }
        }
        break;
      }
    }
  }
  return out;
}

bool in_cone(const Elem& x, double tol) {
  SpectralDecomp d = spectral(x);
  const double top = d.eigenvalues.cwiseAbs().maxCoeff();
  if (top == 0.0) return false;
  return d.eigenvalues.minCoeff() > tol * top;
}

Elem sqrt_cone(const Elem& x) {
  if (!in_cone(x)) throw NotInCone("sqrt_cone outside the open cone");
  SpectralDecomp d = spectral(x);
  for (int j = 0; j < d.frame.size(); ++j)
    d.eigenvalues[j] = std::sqrt(d.eigenvalues[j]);
  return d.recompose();
}

Elem inv(const Elem& x) {
  SpectralDecomp d = spectral(x);
  const double top = d.eigenvalues.cwiseAbs().maxCoeff();
  for (int j = 0; j < d.frame.size(); ++j) {
    if (std::abs(d.eigenvalues[j]) <= kTol * std::max(top, 1e-300))
      throw SingularElement("inv of a singular element");
    d.eigenvalues[j] = 1.0 / d.eigenvalues[j];
  }
  return d.recompose();
}

Elem power(const Elem& x, double k) {
  SpectralDecomp d = spectral(x);
  const bool integral = std::abs(k - std::round(k)) == 0.0;
  const double top = d.eigenvalues.cwiseAbs().maxCoeff();
  for (int j = 0; j < d.frame.size(); ++j) {
    double lam = d.eigenvalues[j];
    if (!integral && lam <= kTol * std::max(top, 1e-300))
      throw NotInCone("fractional power outside the open cone");
    if (integral && k < 0 && std::abs(lam) <= kTol * std::max(top, 1e-300))
      throw SingularElement("negative power of a singular element");
    d.eigenvalues[j] = integral ? std::pow(lam, std::round(k))
                                : std::pow(lam, k);
  }
  return d.recompose();
}

Elem apply_hom(const BalancedHom& h, const Elem& v) {
  if (!v.alg->same(*h.source)) throw AlgebraMismatch("hom applied off-source");
  return {h.target, h.action * v.x};
}

namespace {

// Coordinate matrix of the map sending source basis vectors through f.
Eigen::MatrixXd matrix_of(const AlgebraPtr& src,
                          const std::function<Elem(const Elem&)>& f) {
  Eigen::MatrixXd m;
  for (int k = 0; k < src->dim(); ++k) {
    Elem img = f(basis_elem(src, k));
    if (k == 0) m.resize(img.x.size(), src->dim());
    m.col(k) = img.x;
  }
  return m;
}

void check_hom_axioms(const BalancedHom& h, double tol) {
  const double scale = std::max(1.0, std::sqrt(double(h.target->rank())));
  if ((apply_hom(h, unit(h.source)) - unit(h.target)).norm() > tol * scale)
    throw ParseError("map does not preserve the unit");
  for (int i = 0; i < h.source->dim(); ++i)
    for (int j = i; j < h.source->dim(); ++j) {
      Elem a = basis_elem(h.source, i), b = basis_elem(h.source, j);
      Elem lhs = apply_hom(h, mul(a, b));
      Elem rhs = mul(apply_hom(h, a), apply_hom(h, b));
      if ((lhs - rhs).norm() > tol * scale)
        throw ParseError("map does not preserve the Jordan product");
    }
}

}  // namespace

BalancedHom scalar_hom(const AlgebraPtr& target) {
  auto src = Algebra::real_line();
  BalancedHom h{src, target, Eigen::MatrixXd(unit(target).x), target->rank()};
  return h;
}

BalancedHom diagonal_hom(const AlgebraPtr& source, const AlgebraPtr& target) {
  if (source->kind() == Kind::RealLine) return scalar_hom(target);
  if (source->kind() != Kind::DirectSum ||
      std::any_of(source->parts().begin(), source->parts().end(),
                  [](const AlgebraPtr& p) {
                    return p->kind() != Kind::RealLine;
                  }))
    throw ParseError("diagonal_hom needs a polydisc source");
  const int k = source->rank();
  if (target->rank() % k != 0)
    throw ParseError("diagonal_hom: target rank not divisible by source rank");
  const int mult = target->rank() / k;
  JordanFrame f = canonical_frame(target);
  BalancedHom h;
  h.source = source;
  h.target = target;
  h.multiplicity = mult;
  h.action = matrix_of(source, [&](const Elem& v) {
    Elem s = zero(target);
    for (int i = 0; i < k; ++i)
      for (int m = 0; m < mult; ++m)
        s = s + v.x[i] * f.idem[i * mult + m];
    return s;
  });
  check_hom_axioms(h, kTol);
  if (!is_balanced(h)) throw ParseError("diagonal_hom construction unbalanced");
  return h;
}

BalancedHom frame_hom(const AlgebraPtr& target, const JordanFrame& f) {
  if (f.size() != target->rank())
    throw ParseError("frame_hom needs a full frame of the target");
  if (frame_residual(f) > 1e-7)
    throw ParseError("frame_hom input is not a Jordan frame");
  auto src = Algebra::polydisc(f.size());
  BalancedHom h;
  h.source = f.size() == 1 ? Algebra::real_line() : src;
  h.target = target;
  h.multiplicity = 1;
  h.action = matrix_of(h.source, [&](const Elem& v) {
    Elem s = zero(target);
    for (int i = 0; i < f.size(); ++i) s = s + v.x[i] * f.idem[i];
    return s;
  });
  check_hom_axioms(h, kTol);
  return h;
}

BalancedHom hom_from_matrix(const AlgebraPtr& source, const AlgebraPtr& target,
                            const Eigen::MatrixXd& m) {
  if (m.rows() != target->dim() || m.cols() != source->dim())
    throw ParseError("hom matrix has wrong shape");
  BalancedHom h{source, target, m, 1};
  check_hom_axioms(h, kTol);
  if (source->rank() > 0 && target->rank() % source->rank() == 0)
    h.multiplicity = target->rank() / source->rank();
  return h;
}

bool is_balanced(const BalancedHom& h, double tol) {
  if (h.multiplicity * h.source->rank() != h.target->rank()) return false;
  const double scale = std::max(1.0, double(h.target->rank()));
  for (int k = 0; k < h.source->dim(); ++k) {
    Elem b = basis_elem(h.source, k);
    if (std::abs(trace(apply_hom(h, b)) - h.multiplicity * trace(b)) >
        tol * scale)
      return false;
  }
  return true;
}

}  // namespace shilov
