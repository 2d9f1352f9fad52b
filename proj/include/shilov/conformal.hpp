#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shilov/domain.hpp"
#include "shilov/sampling.hpp"

namespace shilov {

// Generators of the Mobius group of the domain. Translate, Dilate and Invert
// act in the unbounded (tube) picture, Phase acts in the bounded picture, and
// FrameAut acts the same way in either picture. ToTube / ToBall are the Cayley
// markers that switch between the two.
//
// Each generator is a concrete coordinate map on complexified elements; words
// apply them left to right without inserting conversions on their own, so a
// word that wants tube behaviour has to spell out its ToTube/ToBall markers.

struct Translate {
  Elem v;  // z -> z + v
};

struct Dilate {
  Elem u;  // z -> P(u) z, u strictly inside the cone
};

struct Invert {};  // z -> -z^{-1}

struct Phase {
  double theta;  // z -> e^{i theta} z
};

struct FrameAut {
  Eigen::MatrixXd m;  // coordinate matrix of an algebra automorphism
};

struct ToTube {};  // z -> i(e+z)(e-z)^{-1}
struct ToBall {};  // z -> (z-ie)(z+ie)^{-1}

using ConformalGen =
    std::variant<Translate, Dilate, Invert, Phase, FrameAut, ToTube, ToBall>;

// A point in the tube picture, which may sit at the single point at infinity
// (the image of the unit under the Cayley transform). Generators move points
// through infinity; only the caller-facing apply() insists on a finite result.
struct TubePt {
  std::optional<CElem> z;  // empty <=> at infinity

  bool at_infinity() const { return !z.has_value(); }
  static TubePt infinity() { return TubePt{std::nullopt}; }
  static TubePt finite(CElem p) { return TubePt{std::move(p)}; }
};

class ConformalWord {
 public:
  explicit ConformalWord(AlgebraPtr alg, std::vector<ConformalGen> gens = {});

  const AlgebraPtr& alg() const { return alg_; }
  const std::vector<ConformalGen>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  // True when the ToTube/ToBall markers are balanced, i.e. the word starts and
  // ends in the bounded picture and never unbalances in between.
  bool balanced() const;

  ConformalWord inverse() const;

  void push(ConformalGen g);

  // JSON array of tagged generator records, for reproducible reports.
  std::string describe() const;

 private:
  AlgebraPtr alg_;
  std::vector<ConformalGen> gens_;
};

// apply(compose(w1, w2), z) == apply(w1, apply(w2, z)) wherever defined.
ConformalWord compose(const ConformalWord& w1, const ConformalWord& w2);

// Single-generator step, tracking passage through infinity. Throws
// SingularOrbit when the point lands on the singular set of the generator.
TubePt apply_gen(const AlgebraPtr& alg, const ConformalGen& g, const TubePt& p);

// Folds the word over the point. Throws SingularOrbit if an intermediate point
// hits a generator's singular set or the final point is at infinity.
CElem apply(const ConformalWord& w, const CElem& z);

// Same, but the result may legitimately sit at infinity.
TubePt apply_partial(const ConformalWord& w, const TubePt& p);

// Applies and re-validates Shilov membership of the image.
ShilovPt apply(const ConformalWord& w, const ShilovPt& z);

// Model-specific automorphism factories. The parameter conventions follow the
// structure of each algebra: orthogonal conjugation x -> q x q^T for symmetric
// matrices, a rotation of the vector part for spin factors, and per-part
// automorphisms plus a permutation of mutually isomorphic parts for sums.
FrameAut sym_conjugation(const AlgebraPtr& alg, const Eigen::MatrixXd& q);
FrameAut spin_rotation(const AlgebraPtr& alg, const Eigen::MatrixXd& o);
FrameAut sum_permutation(const AlgebraPtr& alg,
                         const std::vector<int>& part_of,
                         const std::vector<FrameAut>& part_auts);
FrameAut random_frame_aut(const AlgebraPtr& alg, Rng& rng);

// Deterministic word sampler. `length` counts sampled moves; a move is either
// a phase rotation, a frame automorphism, or a Cayley-conjugated tube
// generator (translation with standard normal coordinates, dilation with
// exp-normal spectrum, or inversion), so the emitted word is balanced.
ConformalWord random_word(const AlgebraPtr& alg, std::uint64_t seed,
                          int length);

}  // namespace shilov
