#include "shilov/geometry.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "shilov/errors.hpp"
#include "shilov/sampling.hpp"

namespace shilov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_spd(const Eigen::MatrixXd& p, const char* what) {
  if (p.rows() != p.cols()) throw Error(std::string(what) + ": not square");
  const double scale = p.cwiseAbs().maxCoeff();
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale))
    throw NotInCone(std::string(what) + ": not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(p);
  if (llt.info() != Eigen::Success)
    throw NotInCone(std::string(what) + ": not positive definite");
}

// The determinant of an SL(2,R) product is computed with absolute error on
// the order of the squared entry size, so strongly hyperbolic words (entries
// ~ e^{tau/2}) legitimately drift far past any fixed cutoff. Scale the
// tolerance accordingly; the guard only has to reject inputs that are not
// even meant to be unimodular.
void require_unimodular(const Eigen::Matrix2d& m, const char* what) {
  if (std::abs(m.determinant() - 1.0) > 1e-13 * (1.0 + m.squaredNorm()))
    throw Error(std::string(what) + " needs a determinant-one matrix");
}

}  // namespace

Complex tube_metric(const CElem& z, const CElem& a, const CElem& b,
                    const MetricConfig& cfg) {
  const AlgebraPtr& alg = z.alg();
  if (!a.alg()->same(*alg) || !b.alg()->same(*alg))
    throw AlgebraMismatch("tube_metric");
  if (cfg.kappa <= 0.0) throw Error("metric scale must be positive");
  if (!in_cone(z.im)) throw NotInCone("tube_metric basepoint");

  // P(2 Im z)^{-1} = P((2 Im z)^{-1}), applied to the real and imaginary
  // parts separately since the operator is real.
  const Elem u = inv(2.0 * z.im);
  const Elem uu = mul(u, u);
  const auto quad = [&](const Elem& x) {
    return 2.0 * mul(u, mul(u, x)) - mul(uu, x);
  };
  const Elem pre = quad(a.re);
  const Elem pim = quad(a.im);

  // Hermitian trace pairing (x | y) = sum x_i conj(y_i) in the orthonormal
  // coordinates.
  const double re_part = pre.x.dot(b.re.x) + pim.x.dot(b.im.x);
  const double im_part = pim.x.dot(b.re.x) - pre.x.dot(b.im.x);
  const double factor =
      cfg.kappa * 2.0 * alg->dim() / static_cast<double>(alg->rank());
  return factor * Complex(re_part, im_part);
}

double pv_dist(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q) {
  require_spd(p, "pv_dist first argument");
  require_spd(q, "pv_dist second argument");
  if (p.rows() != q.rows()) throw Error("pv_dist: size mismatch");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(q, p);
  if (es.info() != Eigen::Success)
    throw Error("pv_dist: generalized eigensolver failed");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l <= 0.0) throw NotInCone("pv_dist: relative spectrum not positive");
    const double t = std::log(l);
    sum += t * t;
  }
  return std::sqrt(sum);
}

double pv_translation_lower_bound(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols() || g.rows() == 0)
    throw Error("pv_translation_lower_bound: not square");
  const double det = g.determinant();
  const double scale = std::pow(g.cwiseAbs().maxCoeff() + 1.0,
                                static_cast<double>(g.rows()));
  if (std::abs(det) <= 1e-13 * scale)
    throw SingularElement("pv_translation_lower_bound");
  return 2.0 * std::abs(std::log(std::abs(det))) /
         std::sqrt(static_cast<double>(g.rows()));
}

double disc_translation(const Eigen::Matrix2d& m) {
  require_unimodular(m, "disc_translation");
  const double t = std::abs(m.trace());
  if (t <= 2.0) return 0.0;
  const double lmax = (t + std::sqrt(t * t - 4.0)) / 2.0;
  return 2.0 * std::log(lmax);
}

double real_cross_ratio(double a, double b, double c, double d) {
  const bool ia = std::isinf(a), ib = std::isinf(b), ic = std::isinf(c),
             id = std::isinf(d);
  if (ia + ib + ic + id > 1)
    throw Error("cross ratio: more than one point at infinity");
  if (ia) return (c - b) / (c - d);
  if (ib) return (a - d) / (c - d);
  if (ic) return (a - d) / (a - b);
  if (id) return (c - b) / (a - b);
  return ((a - d) * (c - b)) / ((c - d) * (a - b));
}

double mobius_real(const Eigen::Matrix2d& m, double x) {
  if (std::isinf(x)) {
    if (std::abs(m(1, 0)) < 1e-300) return kInf;
    return m(0, 0) / m(1, 0);
  }
  const double den = m(1, 0) * x + m(1, 1);
  const double num = m(0, 0) * x + m(0, 1);
  if (den == 0.0) return kInf;
  return num / den;
}

std::pair<double, double> disc_fixed_points(const Eigen::Matrix2d& m) {
  require_unimodular(m, "fixed points");
  if (std::abs(m.trace()) <= 2.0 + 1e-12)
    throw Error("fixed points are only computed for hyperbolic elements");
  Eigen::EigenSolver<Eigen::Matrix2d> es(m);
  const auto vals = es.eigenvalues();
  const auto vecs = es.eigenvectors();
  const int att = std::abs(vals(0)) > std::abs(vals(1)) ? 0 : 1;
  const auto to_boundary = [&](int col) {
    const Complex top = vecs(0, col);
    const Complex bot = vecs(1, col);
    if (std::abs(bot) <= 1e-14 * std::abs(top)) return kInf;
    return (top / bot).real();
  };
  return {to_boundary(1 - att), to_boundary(att)};
}

double disc_virtual_translation(const Eigen::Matrix2d& m, double xi) {
  const auto [rep, att] = disc_fixed_points(m);
  const auto near = [&](double x, double y) {
    if (std::isinf(x) || std::isinf(y)) return std::isinf(x) && std::isinf(y);
    return std::abs(x - y) <= 1e-10 * (1.0 + std::abs(x) + std::abs(y));
  };
  if (near(xi, rep) || near(xi, att))
    throw Error("virtual translation length: xi sits at a fixed point");
  const double image = mobius_real(m, xi);
  const double cr = real_cross_ratio(rep, xi, att, image);
  if (!(cr > 0.0))
    throw Error("virtual translation length: degenerate cross ratio");
  return std::log(cr);
}

PowerCheck power_inequality_check(const Eigen::Matrix2d& m, int M) {
  if (M < 1) throw Error("power must be at least 1");
  Eigen::Matrix2d mp = Eigen::Matrix2d::Identity();
  for (int i = 0; i < M; ++i) mp = mp * m;
  const double lhs = disc_translation(m);
  const double rhs = disc_translation(mp) / M;
  const double margin = lhs - rhs;
  return PowerCheck{margin >= -1e-9, margin};
}

PowerCheck power_inequality_check(const Eigen::MatrixXd& g, int M,
                                  int samples, std::uint64_t seed) {
  if (M < 1) throw Error("power must be at least 1");
  if (g.rows() != g.cols()) throw Error("power check: not square");
  const int n = static_cast<int>(g.rows());

  Eigen::MatrixXd gm = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < M; ++i) gm = gm * g;

  Rng rng(seed);
  double margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    // Random SPD basepoint p = a a^T + I.
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
    const Eigen::MatrixXd p =
        a * a.transpose() + Eigen::MatrixXd::Identity(n, n);
    const double step = pv_dist(p, g * p * g.transpose());
    const double jump = pv_dist(p, gm * p * gm.transpose());
    margin = std::min(margin, M * step - jump);
  }
  return PowerCheck{margin >= -1e-9, margin};
}

}  // namespace shilov
