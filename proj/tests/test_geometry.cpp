#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <shilov/geometry.hpp>
#include <shilov/sampling.hpp>

using namespace shilov;

namespace {

const Complex kI{0.0, 1.0};
const double kInf = std::numeric_limits<double>::infinity();

Eigen::Matrix2d diag2(double a, double d) {
  Eigen::Matrix2d m;
  m << a, 0.0, 0.0, d;
  return m;
}

}  // namespace

TEST_CASE("tube metric") {
  const auto r = Algebra::real_line();
  SUBCASE("scalar value at height one") {
    // H_i(a, a) = (2n/r) |a|^2 / (2 Im z)^2 = 2 * 1 / 4
    const CElem z = kI * cunit(r);
    const CElem a = cunit(r);
    const Complex h = tube_metric(z, a, a);
    CHECK(h.real() == doctest::Approx(0.5));
    CHECK(h.imag() == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("kappa rescales linearly") {
    const CElem z = kI * cunit(r);
    const CElem a = cunit(r);
    CHECK(tube_metric(z, a, a, {2.5}).real() ==
          doctest::Approx(2.5 * tube_metric(z, a, a).real()));
  }
  SUBCASE("depends only on the imaginary part") {
    const auto s2 = Algebra::sym(2);
    Rng rng(3);
    CElem z = kI * cunit(s2);
    z.re = sample_cone(s2, rng);  // arbitrary real shift
    const CElem a = complexify(from_coords(s2, normal_vector(rng, 3)));
    const CElem b = complexify(from_coords(s2, normal_vector(rng, 3)));
    const CElem z0 = kI * cunit(s2);
    CHECK(std::abs(tube_metric(z, a, b) - tube_metric(z0, a, b)) < 1e-12);
  }
  SUBCASE("positive definite and sesquilinear") {
    for (const auto& alg : {Algebra::sym(3), Algebra::spin(4)}) {
      CAPTURE(alg->name());
      Rng rng(5);
      for (int it = 0; it < 10; ++it) {
        CElem z = czero(alg);
        z.im = sample_cone(alg, rng);
        CElem a = czero(alg), b = czero(alg);
        a.re = from_coords(alg, normal_vector(rng, alg->dim()));
        a.im = from_coords(alg, normal_vector(rng, alg->dim()));
        b.re = from_coords(alg, normal_vector(rng, alg->dim()));
        b.im = from_coords(alg, normal_vector(rng, alg->dim()));
        const Complex haa = tube_metric(z, a, a);
        CHECK(haa.real() > 0);
        CHECK(std::abs(haa.imag()) < 1e-12 * haa.real());
        CHECK(std::abs(tube_metric(z, a, b) -
                       std::conj(tube_metric(z, b, a))) < 1e-10);
        CHECK(std::abs(tube_metric(z, kI * a, b) -
                       kI * tube_metric(z, a, b)) < 1e-10);
      }
    }
  }
  SUBCASE("grows towards the cone boundary") {
    const auto s2 = Algebra::sym(2);
    const CElem a = complexify(unit(s2));
    double last = 0.0;
    for (double t : {1.0, 0.5, 0.25, 0.125}) {
      const CElem z = Complex(0, t) * cunit(s2);
      const double h = tube_metric(z, a, a).real();
      CHECK(h > last);
      last = h;
    }
  }
  SUBCASE("rejects points outside the tube") {
    const auto s2 = Algebra::sym(2);
    CHECK_THROWS_AS(
        (void)tube_metric(cunit(s2), cunit(s2), cunit(s2)), Error);
  }
}

TEST_CASE("positive operator distance") {
  const int n = 4;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  SUBCASE("coincidence and symmetry") {
    CHECK(pv_dist(id, id) == doctest::Approx(0.0).epsilon(1e-12));
    Eigen::MatrixXd g = Eigen::MatrixXd::Random(n, n);
    // make two generic positive matrices
    Eigen::MatrixXd p = g * g.transpose() + id;
    g = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd q = g * g.transpose() + 0.5 * id;
    CHECK(pv_dist(p, q) == doctest::Approx(pv_dist(q, p)).epsilon(1e-10));
    CHECK(pv_dist(p, q) > 0);
  }
  SUBCASE("diagonal closed form") {
    Eigen::MatrixXd q = id;
    q(0, 0) = std::exp(2.0);
    q(1, 1) = std::exp(-1.0);
    CHECK(pv_dist(id, q) == doctest::Approx(std::sqrt(4.0 + 1.0)));
  }
  SUBCASE("congruence invariance") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Random(n, n);
    g += 5.0 * id;  // keep it invertible
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd p = a * a.transpose() + id;
    a = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd q = a * a.transpose() + 2.0 * id;
    CHECK(pv_dist(g * p * g.transpose(), g * q * g.transpose()) ==
          doctest::Approx(pv_dist(p, q)).epsilon(1e-8));
  }
  SUBCASE("triangle inequality on random triples") {
    for (int it = 0; it < 20; ++it) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
      Eigen::MatrixXd b = Eigen::MatrixXd::Random(n, n);
      Eigen::MatrixXd c = Eigen::MatrixXd::Random(n, n);
      Eigen::MatrixXd p = a * a.transpose() + id;
      Eigen::MatrixXd q = b * b.transpose() + id;
      Eigen::MatrixXd s = c * c.transpose() + id;
      CHECK(pv_dist(p, s) <= pv_dist(p, q) + pv_dist(q, s) + 1e-10);
    }
  }
}

TEST_CASE("translation lower bound in the operator space") {
  const int n = 3;
  SUBCASE("orthogonal matrices give zero") {
    Rng rng(17);
    const Eigen::MatrixXd o = random_orthogonal(rng, n);
    CHECK(pv_translation_lower_bound(o) == doctest::Approx(0.0));
  }
  SUBCASE("scalar matrices attain the bound") {
    const double a = 1.7;
    const Eigen::MatrixXd g = a * Eigen::MatrixXd::Identity(n, n);
    const double bound = pv_translation_lower_bound(g);
    // |log det g^2| / sqrt(n) = |2 n log a| / sqrt(n)
    CHECK(bound == doctest::Approx(2.0 * n * std::log(a) / std::sqrt(n)));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    CHECK(pv_dist(id, g * id * g.transpose()) ==
          doctest::Approx(bound).epsilon(1e-10));
  }
  SUBCASE("bound holds at sampled basepoints") {
    Rng rng(19);
    Eigen::MatrixXd g = Eigen::MatrixXd::Random(n, n);
    g += 4.0 * Eigen::MatrixXd::Identity(n, n);
    const double bound = pv_translation_lower_bound(g);
    for (int it = 0; it < 25; ++it) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
      Eigen::MatrixXd p =
          a * a.transpose() + Eigen::MatrixXd::Identity(n, n);
      CHECK(pv_dist(p, g * p * g.transpose()) >= bound - 1e-10);
    }
  }
}

TEST_CASE("disc translation length") {
  SUBCASE("hyperbolic closed form") {
    CHECK(disc_translation(diag2(3.0, 1.0 / 3.0)) ==
          doctest::Approx(2.0 * std::log(3.0)));
  }
  SUBCASE("elliptic and parabolic give zero") {
    Eigen::Matrix2d rot;
    const double th = 0.7;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    CHECK(disc_translation(rot) == 0.0);
    Eigen::Matrix2d par;
    par << 1.0, 1.0, 0.0, 1.0;
    CHECK(disc_translation(par) == 0.0);
  }
  SUBCASE("conjugation invariance") {
    Rng rng(23);
    Eigen::Matrix2d g;
    g << 1.0 + rng.normal() * 0.1, rng.normal(), rng.normal(),
        1.0 + rng.normal() * 0.1;
    g /= std::sqrt(std::abs(g.determinant()));
    const Eigen::Matrix2d m = diag2(2.0, 0.5);
    const Eigen::Matrix2d conj = g * m * g.inverse();
    CHECK(disc_translation(conj) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("virtual translation length from the boundary") {
  const Eigen::Matrix2d m = diag2(2.0, 0.5);
  SUBCASE("matches the spectral value away from the fixed points") {
    for (double xi : {1.0, -3.0, 0.2, 17.0}) {
      CHECK(disc_virtual_translation(m, xi) ==
            doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
    }
  }
  SUBCASE("independent of xi for generic words") {
    Rng rng(29);
    Eigen::Matrix2d g;
    g << 1.4, 0.3, 0.2, 1.0;
    g /= std::sqrt(g.determinant());
    const Eigen::Matrix2d w = g * diag2(3.0, 1.0 / 3.0) * g.inverse();
    const double tau = disc_translation(w);
    for (int it = 0; it < 10; ++it) {
      const double xi = std::tan((rng.uniform() - 0.5) * 3.0);
      CHECK(disc_virtual_translation(w, xi) ==
            doctest::Approx(tau).epsilon(1e-8));
    }
  }
  SUBCASE("fixed points are rejected") {
    // 0 and infinity are the fixed points of a diagonal matrix
    CHECK_THROWS_AS((void)disc_virtual_translation(m, 0.0), Error);
  }
}

TEST_CASE("real boundary utilities") {
  SUBCASE("cross ratio pinned values") {
    CHECK(real_cross_ratio(0.0, 1.0, kInf, 2.0) == doctest::Approx(2.0));
    CHECK(real_cross_ratio(0.0, 1.0, kInf, -1.0) == doctest::Approx(-1.0));
    // invariance under a common Moebius map
    Eigen::Matrix2d g;
    g << 2.0, 1.0, 1.0, 1.0;
    const double a = 0.3, b = 1.7, c = -2.0, d = 0.9;
    CHECK(real_cross_ratio(mobius_real(g, a), mobius_real(g, b),
                           mobius_real(g, c), mobius_real(g, d)) ==
          doctest::Approx(real_cross_ratio(a, b, c, d)).epsilon(1e-9));
  }
  SUBCASE("moebius action with infinity") {
    Eigen::Matrix2d g;
    g << 2.0, 1.0, 1.0, 1.0;
    CHECK(mobius_real(g, kInf) == doctest::Approx(2.0));
    CHECK(std::isinf(mobius_real(g, -1.0)));
  }
  SUBCASE("fixed points of a hyperbolic matrix") {
    // diag(2, 1/2) acts as x -> 4x: repelled from 0, attracted to infinity
    const auto [rep, att] = disc_fixed_points(diag2(2.0, 0.5));
    CHECK(rep == doctest::Approx(0.0));
    CHECK(std::isinf(att));
    Eigen::Matrix2d g;
    g << 2.0, 1.0, 1.0, 1.0;  // x^2 - x - 1 = 0 at the fixed points
    const auto [r2, a2] = disc_fixed_points(g);
    CHECK(a2 == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
    CHECK(r2 == doctest::Approx((1.0 - std::sqrt(5.0)) / 2.0));
  }
}

TEST_CASE("power inequality") {
  SUBCASE("closed form on the disc is an equality") {
    for (int M : {1, 2, 3, 5}) {
      const PowerCheck pc = power_inequality_check(diag2(2.0, 0.5), M);
      CHECK(pc.pass);
      CHECK(pc.margin == doctest::Approx(0.0).epsilon(1e-10));
    }
  }
  SUBCASE("sampled form in the operator space") {
    Eigen::MatrixXd g(3, 3);
    g << 2.0, 1.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.0, 0.5;
    const PowerCheck pc = power_inequality_check(g, 2, 40, 31);
    CHECK(pc.pass);
    CHECK(pc.margin >= 0.0);
  }
}
