#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <shilov/conformal.hpp>
#include <shilov/kernel.hpp>

using namespace shilov;

namespace {

const Complex kI{0.0, 1.0};

const std::vector<AlgebraPtr>& all_models() {
  static const std::vector<AlgebraPtr> models = {
      Algebra::real_line(),
      Algebra::polydisc(3),
      Algebra::sym(2),
      Algebra::sym(3),
      Algebra::spin(4),
      Algebra::direct_sum({Algebra::sym(2), Algebra::real_line()}),
  };
  return models;
}

ConformalWord single(const AlgebraPtr& a, ConformalGen g) {
  return ConformalWord(a, {std::move(g)});
}

}  // namespace

TEST_CASE("generator actions") {
  const auto s2 = Algebra::sym(2);
  SUBCASE("inversion") {
    CHECK((apply(single(s2, Invert{}), cunit(s2)) + cunit(s2)).norm() < 1e-12);
    CHECK((apply(single(s2, Invert{}), kI * cunit(s2)) - kI * cunit(s2))
              .norm() < 1e-12);
    CHECK_THROWS_AS((void)apply(single(s2, Invert{}), czero(s2)),
                    SingularOrbit);
  }
  SUBCASE("dilation is the quadratic representation") {
    const Elem u = 2.0 * unit(s2);
    const CElem img = apply(single(s2, Dilate{u}), kI * cunit(s2));
    CHECK((img - Complex(0.0, 4.0) * cunit(s2)).norm() < 1e-12);
  }
  SUBCASE("phase rotation") {
    const CElem img = apply(single(s2, Phase{std::numbers::pi}), cunit(s2));
    CHECK((img + cunit(s2)).norm() < 1e-10);
  }
  SUBCASE("translation shifts the real part") {
    const Elem v = unit(s2);
    const CElem img = apply(single(s2, Translate{v}), kI * cunit(s2));
    CHECK((img - (cunit(s2) + kI * cunit(s2))).norm() < 1e-12);
  }
  SUBCASE("cayley markers invert each other") {
    ConformalWord w(s2);
    w.push(ToTube{});
    w.push(ToBall{});
    CHECK(w.balanced());
    const CElem z = Complex(0.3, 0.1) * cunit(s2);
    CHECK((apply(w, z) - z).norm() < 1e-10);
  }
  SUBCASE("unbalanced words are flagged") {
    ConformalWord w(s2);
    w.push(ToTube{});
    CHECK_FALSE(w.balanced());
    w.push(Translate{unit(s2)});
    CHECK_FALSE(w.balanced());
    w.push(ToBall{});
    CHECK(w.balanced());
  }
}

TEST_CASE("word algebra") {
  const auto s3 = Algebra::sym(3);
  const ConformalWord w = random_word(s3, 99, 5);
  SUBCASE("inverse composes to the identity") {
    const ConformalWord wi = w.inverse();
    Rng rng(3);
    for (int it = 0; it < 10; ++it) {
      const CElem z = sample_domain_interior(s3, rng);
      CHECK((apply(wi, apply(w, z)) - z).norm() < 1e-8 * (1 + z.norm()));
    }
  }
  SUBCASE("composition matches sequential application") {
    const ConformalWord v = random_word(s3, 100, 4);
    const ConformalWord vw = compose(v, w);
    Rng rng(5);
    const CElem z = sample_domain_interior(s3, rng);
    CHECK((apply(vw, z) - apply(v, apply(w, z))).norm() < 1e-9);
  }
  SUBCASE("determinism and shape of the sampler") {
    const ConformalWord w2 = random_word(s3, 99, 5);
    CHECK(w.describe() == w2.describe());
    CHECK(random_word(s3, 99, 0).size() == 0);
    CHECK(w.balanced());
  }
}

TEST_CASE("domain and boundary preservation") {
  for (const auto& alg : all_models()) {
    CAPTURE(alg->name());
    Rng rng(7);
    for (int seed = 0; seed < 6; ++seed) {
      const ConformalWord w = random_word(alg, 200 + seed, 4);
      const CElem z = sample_domain_interior(alg, rng);
      try {
        CHECK(in_domain(apply(w, z), 1e-6));
      } catch (const SingularOrbit&) {
        // interior orbits cannot hit the singular set; fail loudly
        CHECK(false);
      }
      const ShilovPt s = sample_shilov(alg, rng);
      try {
        const ShilovPt img = apply(w, s);
        CHECK(is_shilov(img.z));
      } catch (const SingularOrbit&) {
        // legitimate: the boundary point may pass through infinity
      }
    }
  }
}

TEST_CASE("frame automorphisms") {
  SUBCASE("orthogonal conjugation preserves the algebra") {
    const auto s3 = Algebra::sym(3);
    Rng rng(11);
    const Eigen::MatrixXd q = random_orthogonal(rng, 3);
    const FrameAut f = sym_conjugation(s3, q);
    const Elem x = from_coords(s3, normal_vector(rng, 6));
    const Elem y = from_coords(s3, normal_vector(rng, 6));
    const auto act = [&](const Elem& e) {
      return from_coords(s3, Eigen::VectorXd(f.m * e.x));
    };
    // multiplicativity and trace preservation
    CHECK((act(mul(x, y)) - mul(act(x), act(y))).norm() < 1e-10);
    CHECK(trace(act(x)) == doctest::Approx(trace(x)));
    CHECK((act(unit(s3)) - unit(s3)).norm() < 1e-12);
  }
  SUBCASE("spin rotation fixes the unit and rotates the tail") {
    const auto sp = Algebra::spin(4);
    Rng rng(13);
    const Eigen::MatrixXd o = random_orthogonal(rng, 3);
    const FrameAut f = spin_rotation(sp, o);
    CHECK((Eigen::VectorXd(f.m * unit(sp).x) - unit(sp).x).norm() < 1e-12);
    const Elem x = from_coords(sp, normal_vector(rng, 4));
    const Elem img = from_coords(sp, Eigen::VectorXd(f.m * x.x));
    CHECK(det_jordan(img) == doctest::Approx(det_jordan(x)));
  }
  SUBCASE("part permutation swaps isomorphic summands") {
    const auto p2 = Algebra::polydisc(2);
    const FrameAut f = sum_permutation(
        p2, {1, 0}, {FrameAut{Eigen::MatrixXd::Identity(1, 1)},
                     FrameAut{Eigen::MatrixXd::Identity(1, 1)}});
    Eigen::VectorXd v(2);
    v << 2.0, 5.0;
    const Eigen::VectorXd img = f.m * v;
    CHECK(img[0] == doctest::Approx(5.0));
    CHECK(img[1] == doctest::Approx(2.0));
  }
  SUBCASE("random automorphisms preserve boundary structure") {
    for (const auto& alg : all_models()) {
      CAPTURE(alg->name());
      Rng rng(17);
      const FrameAut f = random_frame_aut(alg, rng);
      const ConformalWord w = single(alg, f);
      const ShilovPt s = sample_shilov(alg, rng);
      const ShilovPt t = sample_shilov(alg, rng);
      CHECK(is_shilov(apply(w, s).z));
      CHECK(transversality_margin(apply(w, s).z, apply(w, t).z) ==
            doctest::Approx(transversality_margin(s.z, t.z)).epsilon(1e-8));
    }
  }
}

TEST_CASE("kernel magnitude transforms with a cocycle") {
  // |K(gz, gw)| factors through the one-point magnitudes, so the combination
  // k(gz,gw)^2 / (k(gz,gz) k(gw,gw)) matches its untransformed value.
  for (const auto& alg : all_models()) {
    CAPTURE(alg->name());
    Rng rng(19);
    const auto ratio = [](const CElem& z, const CElem& w) {
      return k_mag(z, w) * k_mag(z, w) / (k_mag(z, z) * k_mag(w, w));
    };
    for (int seed = 0; seed < 5; ++seed) {
      const ConformalWord g = random_word(alg, 300 + seed, 3);
      const CElem z = sample_domain_interior(alg, rng);
      const CElem w = sample_domain_interior(alg, rng);
      const double before = ratio(z, w);
      const double after = ratio(apply(g, z), apply(g, w));
      CHECK(after == doctest::Approx(before).epsilon(1e-7));
    }
  }
}
