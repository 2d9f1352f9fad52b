// Acceptance gate: twelve pinned criteria, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <shilov/conformal.hpp>
#include <shilov/geometry.hpp>
#include <shilov/kernel.hpp>
#include <shilov/sampling.hpp>
#include <shilov/surface.hpp>

#include "oracles.hpp"

using namespace shilov;

namespace {

const Complex kImag{0.0, 1.0};

// Pinned tolerances, one constant per criterion clause.
constexpr double kTolClassical = 1e-12;       // c1 max abs error
constexpr double kTolTwoPath = 1e-8;          // c2 relative magnitude gap
constexpr double kTolCocycle = 1e-8;          // c3 relative residual
constexpr double kTolInvariance = 1e-8;       // c4 max |delta B|
constexpr double kTolFunctorial = 1e-9;       // c5 balanced embeddings
constexpr double kMinViolation = 1e-2;        // c5 unbalanced counterexample
constexpr double kTolProduct = 1e-8;          // c6 product law
constexpr double kTolKernel = 1e-9;           // c8 polydisc kernel magnitude
constexpr double kTolPV = 1e-9;               // c10 lower-bound margin
constexpr double kTolSaturation = 1e-9;       // c10 scalar saturation
constexpr double kTolXiSpread = 1e-9;         // c11
constexpr double kTolPower = 1e-9;            // c11
constexpr double kTolVTL = 1e-8;              // c11
constexpr double kTolAxioms = 1e-8;           // c12
constexpr double kTolFlow = 1e-10;            // c12

const std::vector<AlgebraPtr>& models() {
  static const std::vector<AlgebraPtr> m = {
      Algebra::real_line(),
      Algebra::polydisc(3),
      Algebra::sym(2),
      Algebra::sym(3),
      Algebra::spin(4),
      Algebra::direct_sum({Algebra::sym(2), Algebra::real_line()}),
  };
  return m;
}

ShilovPt phase_pt(const AlgebraPtr& a, Complex phase) {
  return ShilovPt::unchecked(phase * cunit(a));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --- criterion 1 -------------------------------------------------------------

Outcome classical_agreement() {
  const auto r1 = Algebra::real_line();
  Rng rng(1001);
  double worst = 0.0;
  const int perm[4][4] = {
      {0, 1, 2, 3}, {0, 2, 1, 3}, {1, 3, 0, 2}, {2, 0, 3, 1}};
  for (int it = 0; it < 10000; ++it) {
    double ang[4];
    double base = rng.uniform() * 2 * oracle::kPi;
    for (int j = 0; j < 4; ++j) {
      ang[j] = base;
      base += 0.2 + rng.uniform() * 1.2;
    }
    if (ang[3] - ang[0] > 2 * oracle::kPi - 0.2) continue;
    const auto& p = perm[it % 4];
    Complex q[4];
    for (int j = 0; j < 4; ++j) q[j] = std::polar(1.0, ang[p[j]]);
    const Complex classical = oracle::classical_cr(q[0], q[1], q[2], q[3]);
    const double got = cross_ratio(phase_pt(r1, q[0]), phase_pt(r1, q[1]),
                                   phase_pt(r1, q[2]), phase_pt(r1, q[3]));
    worst = std::max(worst, std::abs(got - classical.real()));
  }
  return {worst <= kTolClassical, "max abs error " + fmt(worst)};
}

// --- criterion 2 -------------------------------------------------------------

Outcome two_path_agreement() {
  double worst = 0.0;
  int sign_mismatches = 0;
  const QuadKind kinds[] = {QuadKind::PositiveInner, QuadKind::PositiveOuter,
                            QuadKind::Negative};
  for (const auto& alg : models()) {
    for (int it = 0; it < 1000; ++it) {
      Rng rng = Rng::split(2000 + alg->dim(), static_cast<std::uint64_t>(it));
      const auto q = sample_extremal_quadruple(alg, rng, kinds[it % 3],
                                               (it / 3) % 2 == 0);
      const double b = cross_ratio(q[0], q[1], q[2], q[3]);
      const double mag = cross_ratio_mag(q[0], q[1], q[2], q[3]);
      worst = std::max(worst, std::abs(std::abs(b) - mag) / std::abs(b));
      const QuadClass cls = classify_quadruple(q[0], q[1], q[2], q[3]);
      if ((b > 0 ? 1 : -1) != cls.epsilon) ++sign_mismatches;
    }
  }
  return {worst <= kTolTwoPath && sign_mismatches == 0,
          "max rel gap " + fmt(worst) + ", sign mismatches " +
              std::to_string(sign_mismatches)};
}

// --- criterion 3 -------------------------------------------------------------

Outcome cocycle_identities() {
  double worst = 0.0;
  for (const auto& alg : models()) {
    for (int it = 0; it < 1000; ++it) {
      Rng rng = Rng::split(3000 + alg->dim(), static_cast<std::uint64_t>(it));
      const auto p = sample_cyclic_tuple(alg, rng, 5);
      const auto B = [&](int i, int j, int k, int l) {
        return cross_ratio(p[i], p[j], p[k], p[l]);
      };
      const double base = B(0, 1, 2, 3);
      const double rel = 1.0 / std::abs(base);
      worst = std::max(worst, std::abs(B(2, 3, 0, 1) - base) * rel);
      worst = std::max(worst, std::abs(B(1, 0, 3, 2) - base) * rel);
      worst = std::max(
          worst, std::abs(B(0, 1, 2, 4) * B(0, 4, 2, 3) - base) * rel);
      worst = std::max(
          worst, std::abs(B(0, 1, 4, 3) * B(4, 1, 2, 3) - base) * rel);
    }
  }
  return {worst <= kTolCocycle, "max rel residual " + fmt(worst)};
}

// --- criterion 4 -------------------------------------------------------------

Outcome conformal_invariance() {
  double worst = 0.0;
  int mismatches = 0, skipped = 0;
  for (const auto& alg : models()) {
    const InvarianceReport cr =
        invariance_suite(alg, Quantity::CrossRatio, 1000, 1, 4000);
    worst = std::max(worst, cr.max_deviation);
    mismatches += cr.exact_mismatches;
    skipped += cr.skipped;
    const InvarianceReport ms =
        invariance_suite(alg, Quantity::Maslov, 1000, 1, 4001);
    mismatches += ms.exact_mismatches;
    skipped += ms.skipped;
  }
  return {worst <= kTolInvariance && mismatches == 0,
          "max |dB| " + fmt(worst) + ", index mismatches " +
              std::to_string(mismatches) + ", skipped " +
              std::to_string(skipped)};
}

// --- criterion 5 -------------------------------------------------------------

Outcome functoriality() {
  double worst = 0.0;
  const auto line = Algebra::real_line();
  for (const auto& alg : models()) {
    const BalancedHom hs = scalar_hom(alg);
    const BalancedHom hd = diagonal_hom(Algebra::polydisc(alg->rank()), alg);
    for (int it = 0; it < 200; ++it) {
      Rng rng = Rng::split(5000 + alg->dim(), static_cast<std::uint64_t>(it));
      const auto p = sample_cyclic_tuple(line, rng, 4);
      const double src = cross_ratio(p[0], p[1], p[2], p[3]);
      const double img =
          cross_ratio(apply_hom(hs, p[0]), apply_hom(hs, p[1]),
                      apply_hom(hs, p[2]), apply_hom(hs, p[3]));
      worst = std::max(worst,
                       std::abs(src - img) / std::max(1.0, std::abs(src)));
      const auto q = sample_cyclic_tuple(hd.source, rng, 4);
      const double src2 = cross_ratio(q[0], q[1], q[2], q[3]);
      const double img2 =
          cross_ratio(apply_hom(hd, q[0]), apply_hom(hd, q[1]),
                      apply_hom(hd, q[2]), apply_hom(hd, q[3]));
      worst = std::max(worst,
                       std::abs(src2 - img2) / std::max(1.0, std::abs(src2)));
    }
  }

  // Unital Jordan hom with uneven multiplicities: (x, y) -> diag(x, x, y).
  // It must fail the balance predicate and visibly distort the invariant.
  const auto r2 = Algebra::polydisc(2);
  const auto s3 = Algebra::sym(3);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s3->dim(), 2);
  m(0, 0) = 1.0;
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  const BalancedHom bad = hom_from_matrix(r2, s3, m);
  double violation = 0.0;
  for (int it = 0; it < 50; ++it) {
    Rng rng = Rng::split(5100, static_cast<std::uint64_t>(it));
    const auto q = sample_cyclic_tuple(r2, rng, 4);
    const double src = cross_ratio(q[0], q[1], q[2], q[3]);
    const double img =
        cross_ratio(apply_hom(bad, q[0]), apply_hom(bad, q[1]),
                    apply_hom(bad, q[2]), apply_hom(bad, q[3]));
    violation = std::max(violation, std::abs(src - img));
  }
  const bool pass =
      worst <= kTolFunctorial && !is_balanced(bad) && violation >= kMinViolation;
  return {pass, "max rel gap " + fmt(worst) + ", unbalanced violation " +
                    fmt(violation)};
}

// --- criterion 6 -------------------------------------------------------------

Outcome product_law() {
  const auto mix = Algebra::direct_sum({Algebra::sym(2), Algebra::real_line()});
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Rng rng = Rng::split(6000, static_cast<std::uint64_t>(it));
    const auto p = sample_cyclic_tuple(mix, rng, 4);
    const double b = cross_ratio(p[0], p[1], p[2], p[3]);
    auto part_quad = [&](int i) {
      return std::array<ShilovPt, 4>{
          ShilovPt::unchecked(part_celem(p[0].z, i)),
          ShilovPt::unchecked(part_celem(p[1].z, i)),
          ShilovPt::unchecked(part_celem(p[2].z, i)),
          ShilovPt::unchecked(part_celem(p[3].z, i))};
    };
    const auto q0 = part_quad(0);
    const auto q1 = part_quad(1);
    const double b1 = cross_ratio(q0[0], q0[1], q0[2], q0[3]);
    const double b2 = cross_ratio(q1[0], q1[1], q1[2], q1[3]);
    // rank 2 + rank 1: B^3 = B1^2 * B2
    const double lhs = b * b * b;
    const double rhs = b1 * b1 * b2;
    worst = std::max(worst,
                     std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return {worst <= kTolProduct, "max rel residual " + fmt(worst)};
}

// --- criterion 7 -------------------------------------------------------------

Outcome range_and_sign() {
  int bad_range = 0, bad_coincidence = 0;
  const QuadKind kinds[] = {QuadKind::PositiveInner, QuadKind::PositiveOuter,
                            QuadKind::Negative};
  const QuadLabel labels[] = {QuadLabel::PositiveInner,
                              QuadLabel::PositiveOuter, QuadLabel::Negative};
  for (const auto& alg : models()) {
    for (int it = 0; it < 300; ++it) {
      Rng rng = Rng::split(7000 + alg->dim(), static_cast<std::uint64_t>(it));
      const int k = it % 3;
      const auto q =
          sample_extremal_quadruple(alg, rng, kinds[k], (it / 3) % 2 == 0);
      const QuadClass cls = classify_quadruple(q[0], q[1], q[2], q[3]);
      const double b = cross_ratio(q[0], q[1], q[2], q[3]);
      bool ok = cls.label == labels[k] && std::isfinite(b) && b != 0.0 &&
                b != 1.0;
      switch (labels[k]) {
        case QuadLabel::PositiveInner: ok = ok && b > 0.0 && b < 1.0; break;
        case QuadLabel::PositiveOuter: ok = ok && b > 1.0; break;
        default: ok = ok && b < 0.0; break;
      }
      if (!ok) ++bad_range;
      // coincidence patterns, evaluated on the same sampled points
      if (cross_ratio(q[0], q[1], q[0], q[3]) != 1.0) ++bad_coincidence;
      if (cross_ratio(q[0], q[1], q[2], q[1]) != 1.0) ++bad_coincidence;
      if (cross_ratio(q[0], q[1], q[2], q[0]) != 0.0) ++bad_coincidence;
      if (cross_ratio(q[0], q[1], q[1], q[3]) != 0.0) ++bad_coincidence;
    }
  }
  return {bad_range == 0 && bad_coincidence == 0,
          "range failures " + std::to_string(bad_range) +
              ", coincidence failures " + std::to_string(bad_coincidence)};
}

// --- criterion 8 -------------------------------------------------------------

Outcome kernel_laws() {
  // polydisc closed form
  const auto p3 = Algebra::polydisc(3);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Rng rng = Rng::split(8000, static_cast<std::uint64_t>(it));
    const CElem z = sample_domain_interior(p3, rng);
    const CElem w = sample_domain_interior(p3, rng);
    double expect = 1.0;
    for (int j = 0; j < 3; ++j) {
      const Complex zj(z.re.x[j], z.im.x[j]);
      const Complex wj(w.re.x[j], w.im.x[j]);
      expect *= std::abs(1.0 - zj * std::conj(wj));
    }
    expect = std::pow(expect, 1.0 / 3.0);
    worst = std::max(worst, std::abs(k_mag(z, w) - expect));
  }

  // transversality <=> nonvanishing kernel determinant
  int disagreements = 0;
  for (const auto& alg : models()) {
    for (int it = 0; it < 1000; ++it) {
      Rng rng = Rng::split(8100 + alg->dim(), static_cast<std::uint64_t>(it));
      CElem z, w;
      if (it % 3 == 2) {
        // engineered degeneracy: same frame, first phase shared
        z = sample_shilov(alg, rng).z;
        const BoundarySpectral bs = shilov_spectral(ShilovPt::unchecked(z));
        Eigen::VectorXcd phases(bs.phases.size());
        phases[0] = bs.phases[0];
        for (int j = 1; j < phases.size(); ++j)
          phases[j] = std::polar(1.0, rng.uniform(0.0, 2 * oracle::kPi));
        w = shilov_from_frame(bs.frame, phases).z;
      } else {
        const auto pair = sample_transverse_tuple(alg, rng, 2, 1e-2);
        z = pair[0].z;
        w = pair[1].z;
      }
      // Cutoffs sit in the gap between the two populations: degenerate pairs
      // have margin ~ 0 and |kdet| at the determinant noise floor (~1e-14),
      // generic pairs sampled at gap 1e-2 keep |kdet| >= ~1e-8 on every model.
      const bool by_margin = transversality_margin(z, w) > 1e-6;
      const bool by_kernel = std::abs(kdet(z, w)) > 1e-10;
      if (by_margin != by_kernel) ++disagreements;
    }
  }
  return {worst <= kTolKernel && disagreements == 0,
          "kernel magnitude error " + fmt(worst) + ", disagreements " +
              std::to_string(disagreements)};
}

// --- criterion 9 -------------------------------------------------------------

Outcome maslov_criteria() {
  int pinned_failures = 0, parity_failures = 0, oracle_failures = 0;
  for (const auto& alg : models()) {
    if (maslov(phase_pt(alg, -1.0), phase_pt(alg, -kImag),
               phase_pt(alg, 1.0)) != alg->rank())
      ++pinned_failures;
    for (int it = 0; it < 1000; ++it) {
      Rng rng = Rng::split(9000 + alg->dim(), static_cast<std::uint64_t>(it));
      const auto t = sample_transverse_tuple(alg, rng, 3, 1e-5);
      const int mu = maslov(t[0], t[1], t[2]);
      if (std::abs(mu) > alg->rank() || (mu - alg->rank()) % 2 != 0)
        ++parity_failures;
    }
  }
  // componentwise orientation oracle on the polydisc, exact agreement
  const auto p3 = Algebra::polydisc(3);
  for (int it = 0; it < 1000; ++it) {
    Rng rng = Rng::split(9100, static_cast<std::uint64_t>(it));
    const auto t = sample_transverse_tuple(p3, rng, 3, 1e-5);
    std::vector<Complex> x(3), y(3), z(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = Complex(t[0].z.re.x[j], t[0].z.im.x[j]);
      y[j] = Complex(t[1].z.re.x[j], t[1].z.im.x[j]);
      z[j] = Complex(t[2].z.re.x[j], t[2].z.im.x[j]);
    }
    if (maslov(t[0], t[1], t[2]) != oracle::polydisc_maslov(x, y, z))
      ++oracle_failures;
  }
  return {pinned_failures + parity_failures + oracle_failures == 0,
          "pinned " + std::to_string(pinned_failures) + ", parity/range " +
              std::to_string(parity_failures) + ", oracle " +
              std::to_string(oracle_failures)};
}

// --- criterion 10 ------------------------------------------------------------

Outcome geometry_bounds() {
  // translation lower bound over sampled basepoints
  double min_margin = std::numeric_limits<double>::infinity();
  Rng grng(10000);
  for (int op = 0; op < 5; ++op) {
    const int m = 2 + op % 3;
    Eigen::MatrixXd g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = grng.normal();
    g += 3.0 * Eigen::MatrixXd::Identity(m, m);
    const double bound = pv_translation_lower_bound(g);
    for (int it = 0; it < 1000; ++it) {
      Rng rng = Rng::split(10100 + op, static_cast<std::uint64_t>(it));
      Eigen::MatrixXd a(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
      const Eigen::MatrixXd p =
          a * a.transpose() + Eigen::MatrixXd::Identity(m, m);
      min_margin =
          std::min(min_margin, pv_dist(p, g * p * g.transpose()) - bound);
    }
  }

  // infinitesimal monotonicity: enlarging Im z in the cone order can only
  // shrink the metric
  int monotone_failures = 0;
  const AlgebraPtr mono_models[] = {Algebra::sym(2), Algebra::sym(3),
                                    Algebra::spin(4), Algebra::polydisc(3)};
  for (const auto& alg : mono_models) {
    for (int it = 0; it < 2500; ++it) {
      Rng rng = Rng::split(10200 + alg->dim(), static_cast<std::uint64_t>(it));
      CElem z1 = czero(alg), z2 = czero(alg);
      z1.im = sample_cone(alg, rng);
      z2.im = z1.im + sample_cone(alg, rng, 0.3);
      CElem a = czero(alg);
      a.re = from_coords(alg, normal_vector(rng, alg->dim()));
      a.im = from_coords(alg, normal_vector(rng, alg->dim()));
      const double h1 = tube_metric(z1, a, a).real();
      const double h2 = tube_metric(z2, a, a).real();
      if (h2 > h1 * (1.0 + 1e-12)) ++monotone_failures;
    }
  }

  // scalar matrices saturate the bound
  double worst_saturation = 0.0;
  for (const double s : {0.6, 1.4, 2.3}) {
    for (const int m : {2, 3, 5}) {
      const Eigen::MatrixXd g = s * Eigen::MatrixXd::Identity(m, m);
      const double bound = pv_translation_lower_bound(g);
      Rng rng(10300);
      Eigen::MatrixXd a(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
      const Eigen::MatrixXd p =
          a * a.transpose() + Eigen::MatrixXd::Identity(m, m);
      worst_saturation = std::max(
          worst_saturation,
          std::abs(pv_dist(p, g * p * g.transpose()) - bound));
    }
  }

  const bool pass = min_margin >= -kTolPV && monotone_failures == 0 &&
                    worst_saturation <= kTolSaturation;
  return {pass, "min margin " + fmt(min_margin) + ", monotone failures " +
                    std::to_string(monotone_failures) + ", saturation gap " +
                    fmt(worst_saturation)};
}

// --- criterion 11 ------------------------------------------------------------

Outcome surface_group_experiment() {
  const SurfaceRep rep = genus2_octagon_rep();
  const WelldispReport r = welldisp_experiment(rep, 6);
  const bool pass = r.min_tau_infty > 0.0 && r.max_xi_spread <= kTolXiSpread &&
                    r.max_power_residual <= kTolPower &&
                    r.max_vtl_residual <= kTolVTL &&
                    r.min_chain_margin >= 0.0 &&
                    r.min_interval_margin >= 0.0 && r.fit_A > 0.0 &&
                    r.fit_violations == 0;
  std::ostringstream d;
  d << r.words.size() << " words, min tau " << fmt(r.min_tau_infty)
    << ", xi spread " << fmt(r.max_xi_spread) << ", power "
    << fmt(r.max_power_residual) << ", vtl " << fmt(r.max_vtl_residual)
    << ", chain margin " << fmt(r.min_chain_margin) << ", fit A "
    << fmt(r.fit_A) << " violations " << r.fit_violations;
  return {pass, d.str()};
}

// --- criterion 12 ------------------------------------------------------------

Outcome strict_machinery() {
  const SurfaceRep rep = genus2_octagon_rep();
  const CircleCrossRatio b = pullback_cross_ratio(rep);
  const AxiomReport ar = strict_axiom_suite(b, 100, 12000);

  double worst_flow = 0.0;
  Rng rng(12100);
  for (int it = 0; it < 50; ++it) {
    double ang[3];
    double base = rng.uniform() * 2 * oracle::kPi;
    for (int j = 0; j < 3; ++j) {
      ang[j] = base;
      base += 0.3 + rng.uniform() * 1.5;
    }
    if (ang[2] - ang[0] > 2 * oracle::kPi - 0.3) continue;
    const Complex x = std::polar(1.0, ang[0]);
    const Complex y = std::polar(1.0, ang[1]);
    const Complex z = std::polar(1.0, ang[2]);
    const double s = (rng.uniform() - 0.5) * 4.0;
    const Complex psi = flow_psi(b, s, x, y, z);
    worst_flow = std::max(worst_flow, std::abs(std::log(b(x, y, z, psi)) - s));
  }

  const auto [lo, hi] = compare_constant(b, b, 200, 12200);
  const bool pass = ar.pass(kTolAxioms) && worst_flow <= kTolFlow &&
                    lo == 1.0 && hi == 1.0;
  std::ostringstream d;
  d << "axioms " << (ar.pass(kTolAxioms) ? "ok" : "FAIL") << ", flow residual "
    << fmt(worst_flow) << ", compare (" << lo << ", " << hi << ")";
  return {pass, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"classical agreement on the rank-1 model", classical_agreement},
      {"two-path cross ratio", two_path_agreement},
      {"cocycle identities", cocycle_identities},
      {"conformal invariance", conformal_invariance},
      {"functoriality of balanced embeddings", functoriality},
      {"product law on the mixed model", product_law},
      {"range and sign by class", range_and_sign},
      {"kernel laws", kernel_laws},
      {"triple index", maslov_criteria},
      {"metric and translation bounds", geometry_bounds},
      {"surface-group experiment", surface_group_experiment},
      {"strict cross-ratio machinery", strict_machinery},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", idx,
                c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
