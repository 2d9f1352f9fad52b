#include "shilov/sampling.hpp"

#include <cmath>
#include <numbers>

namespace shilov {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::split(std::uint64_t seed, std::uint64_t k) {
  return Rng(splitmix64(seed ^ splitmix64(k + 0x51ed270b8d5c36d5ULL)));
}

double Rng::uniform() {
  return double(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Rng::normal() {
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::uniform_int(int n) {
  return int(double(n) * uniform());
}

Eigen::VectorXd normal_vector(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

Eigen::MatrixXd random_orthogonal(Rng& rng, int n) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

JordanFrame random_frame(const AlgebraPtr& a, Rng& rng) {
  JordanFrame f;
  switch (a->kind()) {
    case Kind::RealLine:
      return canonical_frame(a);
    case Kind::Sym: {
      const int r = a->order();
      Eigen::MatrixXd q = random_orthogonal(rng, r);
      for (int j = 0; j < r; ++j) {
        Eigen::VectorXd v = q.col(j);
        f.idem.push_back(sym_from_matrix(a, v * v.transpose()));
      }
      return f;
    }
    case Kind::Spin: {
      const int n = a->dim();
      Eigen::VectorXd dir = normal_vector(rng, n - 1);
      if (dir.norm() == 0) dir[0] = 1;
      dir.normalize();
      Eigen::VectorXd cp = Eigen::VectorXd::Zero(n), cm = cp;
      cp[0] = cm[0] = 1.0 / std::numbers::sqrt2;
      cp.tail(n - 1) = dir / std::numbers::sqrt2;
      cm.tail(n - 1) = -dir / std::numbers::sqrt2;
      f.idem.push_back({a, cp});
      f.idem.push_back({a, cm});
      return f;
    }
    case Kind::DirectSum: {
      for (size_t i = 0; i < a->parts().size(); ++i) {
        JordanFrame g = random_frame(a->parts()[i], rng);
        for (auto& c : g.idem) {
          Eigen::VectorXd x = Eigen::VectorXd::Zero(a->dim());
          x.segment(a->part_offset(int(i)), c.x.size()) = c.x;
          f.idem.push_back({a, std::move(x)});
        }
      }
      return f;
    }
  }
  throw Error("unreachable");
}

ShilovPt sample_shilov(const AlgebraPtr& a, Rng& rng) {
  JordanFrame f = random_frame(a, rng);
  Eigen::VectorXcd ph(f.size());
  for (int j = 0; j < f.size(); ++j) {
    double t = rng.uniform(0, 2 * std::numbers::pi);
    ph[j] = Complex(std::cos(t), std::sin(t));
  }
  return shilov_from_frame(f, ph);
}

CElem sample_domain_interior(const AlgebraPtr& a, Rng& rng, double radius) {
  // The Euclidean coordinate norm dominates the spectral norm in every
  // model, so scaling to coordinate norm < radius stays inside.
  Eigen::VectorXd re = normal_vector(rng, a->dim());
  Eigen::VectorXd im = normal_vector(rng, a->dim());
  double n2 = std::sqrt(re.squaredNorm() + im.squaredNorm());
  if (n2 == 0) n2 = 1;
  double s = radius * rng.uniform() / n2;
  return {from_coords(a, s * re), from_coords(a, s * im)};
}

Elem sample_cone(const AlgebraPtr& a, Rng& rng, double sigma) {
  JordanFrame f = random_frame(a, rng);
  Elem u = zero(a);
  for (int j = 0; j < f.size(); ++j)
    u = u + std::exp(sigma * rng.normal()) * f.idem[j];
  return u;
}

std::vector<ShilovPt> sample_transverse_tuple(const AlgebraPtr& a, Rng& rng,
                                              int k, double margin,
                                              int budget) {
  const double scale = std::pow(2.0, a->rank());
  std::vector<ShilovPt> pts;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < k) {
    if (++attempts > budget)
      throw BudgetExhausted("transverse tuple rejection budget exhausted (" +
                            std::to_string(budget) + " attempts, have " +
                            std::to_string(pts.size()) + "/" +
                            std::to_string(k) + " points)");
    ShilovPt cand = sample_shilov(a, rng);
    bool ok = true;
    for (const auto& p : pts)
      if (transversality_margin(cand.z, p.z) <= margin * scale) {
        ok = false;
        break;
      }
    if (ok) pts.push_back(std::move(cand));
  }
  return pts;
}

namespace {

// k angles in (0, 2pi), sorted ascending, pairwise gaps >= gap including
// the wrap-around gap.  Rejection; gaps this coarse accept immediately.
std::vector<double> spaced_angles(Rng& rng, int k, double gap) {
  const double two_pi = 2 * std::numbers::pi;
  for (int tries = 0; tries < 1000; ++tries) {
    std::vector<double> t(k);
    for (auto& v : t) v = rng.uniform(0, two_pi);
    std::sort(t.begin(), t.end());
    bool ok = true;
    for (int i = 0; ok && i < k; ++i) {
      double next = i + 1 < k ? t[i + 1] : t[0] + two_pi;
      if (next - t[i] < gap) ok = false;
    }
    if (ok) return t;
  }
  throw BudgetExhausted("could not place spaced angles");
}

}  // namespace

std::vector<ShilovPt> sample_cyclic_tuple(const AlgebraPtr& a, Rng& rng,
                                          int k, double min_gap) {
  JordanFrame f = random_frame(a, rng);
  const int r = f.size();
  std::vector<Eigen::VectorXcd> phases(k, Eigen::VectorXcd(r));
  for (int j = 0; j < r; ++j) {
    std::vector<double> t = spaced_angles(rng, k, min_gap);
    for (int p = 0; p < k; ++p)
      phases[p][j] = Complex(std::cos(t[p]), std::sin(t[p]));
  }
  std::vector<ShilovPt> out;
  for (int p = 0; p < k; ++p) out.push_back(shilov_from_frame(f, phases[p]));
  return out;
}

std::array<ShilovPt, 4> sample_extremal_quadruple(const AlgebraPtr& a,
                                                  Rng& rng, QuadKind kind,
                                                  bool maximal_base,
                                                  double min_gap) {
  JordanFrame f = random_frame(a, rng);
  const int r = f.size();
  // Position of (a, b, c, d) within the positively-ordered 4-cycle.
  int slot[4] = {0, 1, 2, 3};  // Negative: a b c d
  switch (kind) {
    case QuadKind::PositiveInner:  // a d b c
      slot[3] = 1; slot[1] = 2; slot[2] = 3;
      break;
    case QuadKind::PositiveOuter:  // a b d c
      slot[3] = 2; slot[2] = 3;
      break;
    case QuadKind::Negative:
      break;
  }
  std::array<Eigen::VectorXcd, 4> phases;
  phases.fill(Eigen::VectorXcd(r));
  for (int j = 0; j < r; ++j) {
    std::vector<double> t = spaced_angles(rng, 4, min_gap);
    if (!maximal_base)
      std::reverse(t.begin(), t.end());  // flip every orientation
    for (int p = 0; p < 4; ++p)
      phases[p][j] = Complex(std::cos(t[slot[p]]), std::sin(t[slot[p]]));
  }
  return {shilov_from_frame(f, phases[0]), shilov_from_frame(f, phases[1]),
          shilov_from_frame(f, phases[2]), shilov_from_frame(f, phases[3])};
}

}  // namespace shilov
