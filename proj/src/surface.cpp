#include "shilov/surface.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <thread>
#include <utility>

#include "shilov/errors.hpp"
#include "shilov/kernel.hpp"
#include "shilov/sampling.hpp"

namespace shilov {

namespace {

using Mat2c = Eigen::Matrix2cd;
using Mat2 = Eigen::Matrix2d;

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Octagon side pairings.
//
// Regular hyperbolic octagon centered at 0 with interior angles pi/4, so the
// eight corners glue to a single smooth point. The center-to-vertex distance
// rho satisfies cosh(rho) = cot^2(pi/8) = 3 + 2 sqrt(2) (right triangle
// center / edge midpoint / vertex), giving Euclidean vertex radius
// tanh(rho/2) = 2^{-1/4}. Sides are numbered counterclockwise and carry the
// boundary word a1 b1 a1' b1' a2 b2 a2' b2'; each generator maps the side
// holding its inverse letter onto the side holding the letter, with the
// orientation reversal that makes the quotient orientable.

Complex mob2c(const Mat2c& m, const Complex& z) {
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

// Unique orientation-preserving disc isometry with p -> 0 and q -> positive
// real axis.
Mat2c base_map(const Complex& p, const Complex& q) {
  const double s = 1.0 / std::sqrt(1.0 - std::norm(p));
  Mat2c t;
  t << s, -s * p, -s * std::conj(p), s;
  const double theta = -std::arg(mob2c(t, q));
  Mat2c rot;
  rot << std::polar(1.0, theta / 2), 0.0, 0.0, std::polar(1.0, -theta / 2);
  return rot * t;
}

// Disc isometry sending the ordered pair (src0, src1) to (dst0, dst1);
// requires equal hyperbolic gaps, which regular-octagon sides provide.
Mat2c pair_map(const Complex& src0, const Complex& src1, const Complex& dst0,
               const Complex& dst1) {
  return base_map(dst0, dst1).inverse() * base_map(src0, src1);
}

std::array<Mat2, 4> octagon_generators() {
  const double radius = std::pow(2.0, -0.25);
  std::array<Complex, 8> v;
  for (int m = 0; m < 8; ++m)
    v[m] = radius * std::polar(1.0, kPi * (2 * m + 1) / 8.0);

  // Side m runs from v[m] to v[m+1]. Letter sides 0,1,4,5; inverse-letter
  // sides 2,3,6,7. The reversal pattern below is the one (unique among the
  // endpoint matchings) whose pairings keep the octagon a fundamental
  // domain: no interior point returns to the interior under any generator.
  const auto side = [&](int m) {
    return std::pair<Complex, Complex>{v[m % 8], v[(m + 1) % 8]};
  };
  const auto rev_pair = [&](int target, int source) {
    const auto [s0, s1] = side(source);
    const auto [d0, d1] = side(target);
    return pair_map(s0, s1, d1, d0);
  };
  std::array<Mat2c, 4> su;
  su[0] = rev_pair(0, 2);            // a1
  su[1] = rev_pair(1, 3).inverse();  // b1
  su[2] = rev_pair(4, 6);            // a2
  su[3] = rev_pair(5, 7).inverse();  // b2

  // Move to the upper half plane: w = i(1+z)/(1-z).
  Mat2c cay, cayi;
  cay << Complex(0, 1), Complex(0, 1), -1.0, 1.0;
  cayi = cay.inverse();
  std::array<Mat2, 4> out;
  for (int k = 0; k < 4; ++k) {
    const Mat2c h = cay * su[k] * cayi;
    Mat2 re = h.real();
    if (h.imag().cwiseAbs().maxCoeff() > 1e-12 * re.cwiseAbs().maxCoeff())
      throw Error("octagon pairing failed to conjugate into SL(2,R)");
    re /= std::sqrt(std::abs(re.determinant()));
    if (re.trace() < 0) re = -re;
    out[k] = re;
  }
  return out;
}

double relator_defect(const std::array<Mat2, 4>& g) {
  const Mat2 rel = g[0] * g[1] * g[0].inverse() * g[1].inverse() * g[2] *
                   g[3] * g[2].inverse() * g[3].inverse();
  const Mat2 id = Mat2::Identity();
  return std::min((rel - id).norm(), (rel + id).norm());
}

// ---------------------------------------------------------------------------
// Circle utilities.

int inverse_letter(int k) { return (k + 4) % 8; }

char letter_char(int k) {
  static const char tab[8] = {'a', 'b', 'c', 'd', 'A', 'B', 'C', 'D'};
  return tab[k];
}

void free_reduce_into(std::vector<int>& stack, int letter) {
  if (!stack.empty() && stack.back() == inverse_letter(letter))
    stack.pop_back();
  else
    stack.push_back(letter);
}

// Boundary point whose coordinate is t0 in the chart taking the repelling
// fixed point to 0 and the attracting one to infinity. Used to place probe
// points so that all four entries of the flow quadruple stay as far apart
// as the dynamics allow.
double axis_chart_point(double repelling, double attracting, double t0) {
  if (std::isinf(repelling)) return attracting - 1.0 / t0;
  if (std::isinf(attracting)) return repelling + t0;
  return (repelling - attracting * t0) / (1.0 - t0);
}

// Inverse of axis_chart_point: the chart coordinate of a boundary point.
double axis_chart_coord(double repelling, double attracting, double x) {
  if (std::isinf(repelling)) return 1.0 / (attracting - x);
  if (std::isinf(attracting)) return x - repelling;
  if (std::isinf(x)) return 1.0;
  return (x - repelling) / (x - attracting);
}

// Image of a boundary point under the hyperbolic element with the given axis
// and squared eigenvalue ratio. In the axis chart the action is exactly
// t -> lam2 * t. Evaluating the entries of a long product matrix instead
// would lose the point: the entries grow like lam while the geometry near
// the fixed points lives in differences of order 1/lam, so the raw Moebius
// formula carries an absolute error of order eps*lam^2 there. The chart form
// only ever works with well-scaled quantities.
double axis_flow_image(double repelling, double attracting, double lam2,
                       double x) {
  return axis_chart_point(repelling, attracting,
                          lam2 * axis_chart_coord(repelling, attracting, x));
}

// Rescales the chart coordinate until the two small gaps of the flow
// quadruple (probe to repelling point, image to attracting point) are equal
// as measured on the circle. Chart coordinates alone are not enough: the
// chart-to-circle map can compress one end quadratically when a fixed point
// sits near the image of infinity, and an unbalanced probe then loses most
// of the separation the cross-ratio value permits.
double balanced_chart_probe(double lam2, double repelling, double attracting,
                            const Complex& cm, const Complex& cp, double t0) {
  for (int it = 0; it < 2; ++it) {
    const double x = axis_chart_point(repelling, attracting, t0);
    const Complex xi = circle_from_halfplane(x);
    const Complex gxi = circle_from_halfplane(
        axis_flow_image(repelling, attracting, lam2, x));
    const double g1 = std::abs(xi - cm);
    const double g2 = std::abs(gxi - cp);
    if (!(g1 > 0.0) || !(g2 > 0.0)) break;
    t0 *= std::clamp(std::sqrt(g2 / g1), 1e-8, 1e8);
  }
  return t0;
}

double circular_angle_from(double base, double theta) {
  double d = theta - base;
  const double two_pi = 2 * kPi;
  d -= two_pi * std::floor(d / two_pi);
  return d;  // in [0, 2 pi)
}

bool positively_oriented(const Complex& x, const Complex& y,
                         const Complex& z) {
  const double ax = std::arg(x);
  const double ay = circular_angle_from(ax, std::arg(y));
  const double az = circular_angle_from(ax, std::arg(z));
  if (ay == 0.0 || az == 0.0 || ay == az)
    throw Error("orientation of a degenerate circle triple");
  return ay < az;
}

// Distinct circle points with a minimum angular gap, random order.
std::vector<Complex> circle_sample(Rng& rng, int count, double min_gap) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> ang(count);
    for (double& a : ang) a = rng.uniform(0.0, 2 * kPi);
    std::vector<double> sorted = ang;
    std::sort(sorted.begin(), sorted.end());
    bool ok = true;
    for (int i = 0; i < count; ++i) {
      const double gap = i + 1 < count
                             ? sorted[i + 1] - sorted[i]
                             : sorted[0] + 2 * kPi - sorted[count - 1];
      if (gap < min_gap) ok = false;
    }
    if (!ok) continue;
    std::vector<Complex> pts(count);
    for (int i = 0; i < count; ++i) pts[i] = std::polar(1.0, ang[i]);
    return pts;
  }
  throw BudgetExhausted("could not place separated circle points");
}

}  // namespace

SurfaceRep genus2_octagon_rep(const AlgebraPtr& target) {
  SurfaceRep rep;
  rep.generators = octagon_generators();
  rep.relator_residual = relator_defect(rep.generators);
  if (rep.relator_residual > 1e-8)
    throw Error("octagon construction lost the surface relator");
  for (const Mat2& g : rep.generators)
    if (std::abs(g.trace()) <= 2.0)
      throw Error("octagon generator is not hyperbolic");
  rep.embedding = scalar_hom(target);
  rep.embedding_tag = "scalar";
  return rep;
}

SurfaceRep genus2_octagon_rep() { return genus2_octagon_rep(Algebra::sym(3)); }

std::string GroupWord::name() const {
  std::string s;
  s.reserve(letters.size());
  for (int k : letters) s.push_back(letter_char(k));
  return s;
}

GroupWord word_from_letters(const SurfaceRep& rep,
                            const std::vector<int>& letters) {
  GroupWord w;
  w.letters = letters;
  for (int k : letters) {
    if (k < 0 || k > 7) throw ParseError("word letter out of range");
    w.m = w.m * (k < 4 ? rep.generators[k]
                       : rep.generators[k - 4].inverse().eval());
  }
  return w;
}

std::vector<GroupWord> enumerate_reduced_words(const SurfaceRep& rep,
                                               int max_len) {
  if (max_len < 0 || max_len > 8)
    throw BudgetExhausted("word enumeration supports lengths up to 8");
  std::array<Mat2, 8> gens;
  for (int k = 0; k < 4; ++k) {
    gens[k] = rep.generators[k];
    gens[k + 4] = rep.generators[k].inverse();
  }
  std::vector<GroupWord> out;
  std::size_t total = 0, pow = 8;
  for (int len = 1; len <= max_len; ++len, pow *= 7) total += pow;
  out.reserve(total);

  std::vector<int> letters;
  std::vector<Mat2> mats{Mat2::Identity()};
  const auto rec = [&](auto&& self, int target_len) -> void {
    if (static_cast<int>(letters.size()) == target_len) {
      out.push_back(GroupWord{letters, mats.back()});
      return;
    }
    for (int k = 0; k < 8; ++k) {
      if (!letters.empty() && k == inverse_letter(letters.back())) continue;
      letters.push_back(k);
      mats.push_back(mats.back() * gens[k]);
      self(self, target_len);
      mats.pop_back();
      letters.pop_back();
    }
  };
  for (int len = 1; len <= max_len; ++len) rec(rec, len);
  return out;
}

int conjugacy_reduced_length(const std::vector<int>& letters,
                             int max_conjugator) {
  // Conjugators: all reduced words up to the given length, including the
  // empty one.
  std::vector<std::vector<int>> conjugators{{}};
  for (std::size_t lo = 0, len = 1; len <= static_cast<std::size_t>(max_conjugator);
       ++len) {
    const std::size_t hi = conjugators.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (int k = 0; k < 8; ++k) {
        if (!conjugators[i].empty() &&
            k == inverse_letter(conjugators[i].back()))
          continue;
        auto ext = conjugators[i];
        ext.push_back(k);
        conjugators.push_back(std::move(ext));
      }
    lo = hi;
  }

  int best = static_cast<int>(letters.size());
  std::vector<int> stack;
  for (const auto& u : conjugators) {
    stack.clear();
    for (auto it = u.rbegin(); it != u.rend(); ++it)
      free_reduce_into(stack, inverse_letter(*it));
    for (int k : letters) free_reduce_into(stack, k);
    for (int k : u) free_reduce_into(stack, k);
    best = std::min<int>(best, static_cast<int>(stack.size()));
  }
  return best;
}

double halfplane_from_circle(const Complex& xi) {
  const double gap = std::norm(1.0 - xi);
  if (gap <= 1e-24) return std::numeric_limits<double>::infinity();
  return -2.0 * xi.imag() / gap;
}

Complex circle_from_halfplane(double x) {
  if (std::isinf(x)) return Complex(1.0, 0.0);
  return Complex(x, -1.0) / Complex(x, 1.0);
}

Complex mobius_circle(const Eigen::Matrix2d& m, const Complex& xi) {
  return circle_from_halfplane(mobius_real(m, halfplane_from_circle(xi)));
}

ShilovPt limit_curve(const SurfaceRep& rep, const Complex& xi) {
  const double r = std::abs(xi);
  if (std::abs(r - 1.0) > 1e-7)
    throw Error("limit curve takes unit-circle parameters");
  return ShilovPt((xi / r) * cunit(rep.target()));
}

CElem scalar_mobius_action(const Eigen::Matrix2d& m, const CElem& z) {
  const CElem e = cunit(z.alg());
  const CElem num = m(0, 0) * z + m(0, 1) * e;
  const CElem den = m(1, 0) * z + m(1, 1) * e;
  return cmul(num, cinv(den));
}

double b_rho(const SurfaceRep& rep, const Complex& x, const Complex& y,
             const Complex& z, const Complex& t) {
  if (std::abs(x - t) <= 1e-12 || std::abs(y - z) <= 1e-12)
    throw Error("circle cross ratio needs x != t and y != z");
  return cross_ratio(limit_curve(rep, x), limit_curve(rep, y),
                     limit_curve(rep, z), limit_curve(rep, t));
}

CircleCrossRatio pullback_cross_ratio(const SurfaceRep& rep) {
  return [rep](const Complex& x, const Complex& y, const Complex& z,
               const Complex& t) { return b_rho(rep, x, y, z, t); };
}

std::pair<double, double> compare_constant(const CircleCrossRatio& b1,
                                           const CircleCrossRatio& b2,
                                           int samples, std::uint64_t seed) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  int used = 0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i) + 1);
    const auto pts = circle_sample(rng, 4, 0.05);
    const double v1 = std::log(std::abs(b1(pts[0], pts[1], pts[2], pts[3])));
    const double v2 = std::log(std::abs(b2(pts[0], pts[1], pts[2], pts[3])));
    if (std::abs(v2) < 1e-12) continue;
    const double ratio = std::abs(v1) / std::abs(v2);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    ++used;
  }
  if (used == 0) throw Error("no usable samples for the comparison constant");
  return {lo, hi};
}

bool AxiomReport::pass(double tol) const {
  return configurations > 0 && max_flip_residual <= tol &&
         max_insert_residual <= tol && max_split_residual <= tol &&
         max_unit_residual <= tol && min_abs_value > 0.0 &&
         zero_pattern_failures == 0 && max_monotone_defect < 0.0 &&
         sign_violations == 0 && max_y_value_residual <= tol;
}

AxiomReport strict_axiom_suite(const CircleCrossRatio& b, int configurations,
                               std::uint64_t seed) {
  AxiomReport rep;
  const auto rel = [](double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
  };

  for (int i = 0; i < configurations; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i) + 1);
    const auto p = circle_sample(rng, 5, 0.03);
    const Complex &x = p[0], &y = p[1], &z = p[2], &t = p[3], &w = p[4];

    const double base = b(x, y, z, t);
    rep.min_abs_value = std::min(rep.min_abs_value, std::abs(base));
    rep.max_flip_residual =
        std::max(rep.max_flip_residual, rel(base, b(z, t, x, y)));
    rep.max_insert_residual = std::max(
        rep.max_insert_residual, rel(base, b(x, y, z, w) * b(x, w, z, t)));
    rep.max_split_residual = std::max(
        rep.max_split_residual, rel(base, b(x, y, w, t) * b(w, y, z, t)));
    rep.max_unit_residual =
        std::max({rep.max_unit_residual, std::abs(b(x, y, x, t) - 1.0),
                  std::abs(b(x, y, z, y) - 1.0)});
    try {
      const double zero = b(x, y, z, x);
      ++rep.zero_pattern_checked;
      if (zero != 0.0) ++rep.zero_pattern_failures;
    } catch (const Error&) {
      // Functional rejects the coincidence outright; the open-domain half of
      // the axiom is still covered by min_abs_value.
    }

    // Monotone sweep of t -> b(x,y,z,t) for a positively oriented triple:
    // strictly increasing from the repelling side of z, negative until x,
    // positive after.
    auto tri = circle_sample(rng, 3, 0.05);
    std::sort(tri.begin(), tri.end(), [](const Complex& u, const Complex& v) {
      return std::arg(u) < std::arg(v);
    });
    const Complex &mx = tri[0], &my = tri[1], &mz = tri[2];
    const double az = std::arg(mz);
    const double ax = circular_angle_from(az, std::arg(mx));
    const int grid = 48;
    double prev = 0.0;
    bool have_prev = false;
    for (int j = 0; j < grid; ++j) {
      const double off = 1e-3 + (2 * kPi - 2e-3) * j / (grid - 1);
      const Complex tj = std::polar(1.0, az + off);
      if (std::abs(tj - mx) < 1e-9 || std::abs(tj - my) < 1e-9) continue;
      const double g = b(mx, my, mz, tj);
      if (have_prev)
        rep.max_monotone_defect = std::max(rep.max_monotone_defect, prev - g);
      prev = g;
      have_prev = true;
      if (std::abs(off - ax) > 1e-6) {
        const bool before_x = off < ax;
        if ((before_x && g >= 0.0) || (!before_x && g <= 0.0))
          ++rep.sign_violations;
      }
      rep.min_abs_value = std::min(rep.min_abs_value, std::abs(g));
    }
    rep.max_y_value_residual =
        std::max(rep.max_y_value_residual, std::abs(b(mx, my, mz, my) - 1.0));
    ++rep.configurations;
  }
  return rep;
}

Complex flow_psi(const CircleCrossRatio& b, double s, const Complex& x,
                 const Complex& y, const Complex& z) {
  if (!positively_oriented(x, y, z))
    throw Error("flow needs a positively oriented triple");
  const double ax = std::arg(x);
  const double span = circular_angle_from(ax, std::arg(z));
  const auto eval = [&](double u) {
    return std::log(b(x, y, z, std::polar(1.0, ax + u * span)));
  };

  double lo = 1e-6, hi = 1.0 - 1e-6;
  for (int i = 0; i < 200 && eval(lo) > s; ++i) lo /= 4.0;
  for (int i = 0; i < 200 && eval(hi) < s; ++i) hi = 1.0 - (1.0 - hi) / 4.0;
  if (eval(lo) > s || eval(hi) < s)
    throw Error("flow bisection failed to bracket the target");

  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 300; ++i) {
    mid = 0.5 * (lo + hi);
    const double v = eval(mid);
    if (std::abs(v - s) <= 1e-12) break;
    (v < s ? lo : hi) = mid;
    if (hi - lo < 1e-18) break;
  }
  if (std::abs(eval(mid) - s) > 1e-10)
    throw Error("flow bisection stalled before reaching tolerance");
  return std::polar(1.0, ax + mid * span);
}

double tau_infty(const SurfaceRep& rep, const GroupWord& w, const Complex& xi) {
  const auto [p, q] = disc_fixed_points(w.m);
  const Complex gm = circle_from_halfplane(p);
  const Complex gp = circle_from_halfplane(q);
  if (std::abs(xi - gm) <= 1e-10 || std::abs(xi - gp) <= 1e-10)
    throw Error("xi must stay away from the fixed points");
  // The element acts through its axis chart rather than through the raw
  // matrix entries; see axis_flow_image for why the latter is hopeless for
  // words whose translation length pushes the entries past ~1/sqrt(eps).
  const double lam2 = std::exp(disc_translation(w.m));
  const Complex gxi = circle_from_halfplane(
      axis_flow_image(p, q, lam2, halfplane_from_circle(xi)));
  const double value = b_rho(rep, gm, xi, gp, gxi);
  if (!(value > 0.0))
    throw Error("flow quadruple produced a non-positive cross ratio");
  return std::log(value);
}

double tau_infty(const SurfaceRep& rep, const GroupWord& w) {
  const double lam = std::exp(0.5 * disc_translation(w.m));
  const auto [p, q] = disc_fixed_points(w.m);
  const double t0 =
      balanced_chart_probe(lam * lam, p, q, circle_from_halfplane(p),
                           circle_from_halfplane(q), 1.0 / lam);
  return tau_infty(rep, w,
                   circle_from_halfplane(axis_chart_point(p, q, t0)));
}

WelldispReport welldisp_experiment(const SurfaceRep& rep, int max_len) {
  const std::vector<GroupWord> words = enumerate_reduced_words(rep, max_len);
  const int r = rep.target()->rank();
  const int n = rep.target()->dim();
  const double lower_c = r / std::sqrt(double(n));
  const double upper_c = std::sqrt(n / 2.0);
  const Elem e = unit(rep.target());

  WelldispReport report;
  report.words.resize(words.size());
  std::vector<std::string> failures(words.size());

  const auto eval_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const GroupWord& w = words[i];
      try {
        WordRecord rec;
        rec.word = w.name();
        rec.l_S = w.l_S();
        rec.l_S_conj = conjugacy_reduced_length(w.letters);
        rec.tau_disc = disc_translation(w.m);
        const double lam = std::exp(0.5 * rec.tau_disc);
        const auto [fp, fq] = disc_fixed_points(w.m);
        const Complex cm = circle_from_halfplane(fp);
        const Complex cp = circle_from_halfplane(fq);

        const double t0 =
            balanced_chart_probe(lam * lam, fp, fq, cm, cp, 1.0 / lam);
        const double probes[3] = {t0, -t0, 2.0 * t0};
        double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
        for (int k = 0; k < 3; ++k) {
          const double t = tau_infty(
              rep, w,
              circle_from_halfplane(axis_chart_point(fp, fq, probes[k])));
          if (k == 0) rec.tau_infty = t;
          tmin = std::min(tmin, t);
          tmax = std::max(tmax, t);
        }
        rec.xi_spread = tmax - tmin;

        GroupWord square;
        square.m = w.m * w.m;
        const double lam4 = lam * lam * lam * lam;
        const double t0sq =
            balanced_chart_probe(lam4, fp, fq, cm, cp, 1.0 / (lam * lam));
        const double tau_sq = tau_infty(
            rep, square,
            circle_from_halfplane(axis_chart_point(fp, fq, t0sq)));
        rec.power_residual = std::abs(tau_sq - 2.0 * rec.tau_infty) /
                             std::max(1.0, std::abs(tau_sq));

        // Determinant identity for the linear representative: the word acts
        // on the tube, once its axis is moved to (0, infinity), by the
        // quadratic representation of lam * e; the Jordan determinant of
        // that square root recovers the boundary value.
        const Elem u = sqrt_cone((lam * lam) * e);
        const double vtl_rhs = std::log(std::pow(det_jordan(u), 2)) / r;
        rec.vtl_residual = std::abs(rec.tau_infty - vtl_rhs);

        rec.tau_lower = lower_c * rec.tau_infty;
        rec.tau_upper = upper_c * rec.tau_disc;
        // Linear-part chain: the full GL determinant of the same
        // representative, scaled the way the positive-matrix estimate
        // prescribes, must dominate the cross-ratio lower bound.
        const double chain =
            2.0 * n * std::log(lam * lam) / std::sqrt(double(n));
        rec.chain_margin = chain - rec.tau_lower;

        report.words[i] = std::move(rec);
      } catch (const std::exception& ex) {
        failures[i] = std::string(ex.what()) + " [word " + w.name() + "]";
      }
    }
  };

  const std::size_t count = words.size();
  std::size_t threads = std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, 16);
  if (count < 256) threads = 1;
  if (threads <= 1) {
    eval_range(0, count);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = count * t / threads;
      const std::size_t end = count * (t + 1) / threads;
      pool.emplace_back(eval_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (const std::string& f : failures)
    if (!f.empty()) throw Error("translation-length experiment failed: " + f);

  // Least-squares slope of tau_lower against word length, then lift the
  // offset until the affine bound covers every word.
  double sl = 0, st = 0, sll = 0, slt = 0;
  for (const WordRecord& rec : report.words) {
    sl += rec.l_S;
    st += rec.tau_lower;
    sll += double(rec.l_S) * rec.l_S;
    slt += rec.l_S * rec.tau_lower;
  }
  const double m = static_cast<double>(report.words.size());
  const double denom = m * sll - sl * sl;
  report.fit_A = denom > 0 ? (m * slt - sl * st) / denom : 0.0;
  double offset = -std::numeric_limits<double>::infinity();
  for (const WordRecord& rec : report.words)
    offset = std::max(offset, report.fit_A * rec.l_S - rec.tau_lower);
  // Nudge past the exact maximum so re-checking the bound below cannot trip
  // on the rounding of the subtraction that produced it.
  report.fit_B = offset + 1e-12 * (1.0 + std::abs(offset));
  for (const WordRecord& rec : report.words) {
    if (rec.tau_lower < report.fit_A * rec.l_S - report.fit_B)
      ++report.fit_violations;
    report.min_tau_infty = std::min(report.min_tau_infty, rec.tau_infty);
    report.max_xi_spread = std::max(report.max_xi_spread, rec.xi_spread);
    report.max_power_residual =
        std::max(report.max_power_residual, rec.power_residual);
    report.max_vtl_residual =
        std::max(report.max_vtl_residual, rec.vtl_residual);
    report.min_chain_margin =
        std::min(report.min_chain_margin, rec.chain_margin);
    report.min_interval_margin =
        std::min(report.min_interval_margin, rec.tau_upper - rec.tau_lower);
  }
  return report;
}

}  // namespace shilov
