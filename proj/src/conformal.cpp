#include "shilov/conformal.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "shilov/errors.hpp"

namespace shilov {

namespace {

constexpr double kOrthoTol = 1e-10;

// Scale-aware singularity test on the eigenvalue scale: |cdet z|^{1/rank}
// is comparable to the smallest spectral magnitude, so a plain determinant
// threshold would reject points that are merely uniformly small (legitimate
// images of boundary flows sit at spectral size ~1e-8 with determinants far
// below any fixed det cutoff).
bool near_singular(const CElem& z) {
  const double root =
      std::pow(std::abs(cdet(z)), 1.0 / double(z.alg()->rank()));
  return root <= 1e-12 * (1.0 + z.norm());
}

void check_gen(const AlgebraPtr& alg, const ConformalGen& g) {
  if (const auto* t = std::get_if<Translate>(&g)) {
    if (!t->v.alg->same(*alg)) throw AlgebraMismatch("translation amount");
  } else if (const auto* d = std::get_if<Dilate>(&g)) {
    if (!d->u.alg->same(*alg)) throw AlgebraMismatch("dilation spectrum");
    if (!in_cone(d->u)) throw NotInCone("dilation parameter");
  } else if (const auto* f = std::get_if<FrameAut>(&g)) {
    const int n = alg->dim();
    if (f->m.rows() != n || f->m.cols() != n)
      throw Error("frame automorphism matrix has wrong size");
    const double defect =
        (f->m.transpose() * f->m - Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (defect > kOrthoTol)
      throw Error("frame automorphism is not orthogonal (defect " +
                  std::to_string(defect) + ")");
  }
}

// Quadratic representation of a real cone element, applied coordinate-wise to
// the real and imaginary parts: P(u)x = 2u(ux) - (uu)x.
Elem quad_apply(const Elem& u, const Elem& uu, const Elem& x) {
  return 2.0 * mul(u, mul(u, x)) - mul(uu, x);
}

}  // namespace

ConformalWord::ConformalWord(AlgebraPtr alg, std::vector<ConformalGen> gens)
    : alg_(std::move(alg)), gens_(std::move(gens)) {
  for (const auto& g : gens_) check_gen(alg_, g);
}

void ConformalWord::push(ConformalGen g) {
  check_gen(alg_, g);
  gens_.push_back(std::move(g));
}

bool ConformalWord::balanced() const {
  bool tube = false;
  for (const auto& g : gens_) {
    if (std::holds_alternative<ToTube>(g)) {
      if (tube) return false;
      tube = true;
    } else if (std::holds_alternative<ToBall>(g)) {
      if (!tube) return false;
      tube = false;
    }
  }
  return !tube;
}

ConformalWord ConformalWord::inverse() const {
  std::vector<ConformalGen> out;
  out.reserve(gens_.size());
  for (auto it = gens_.rbegin(); it != gens_.rend(); ++it) {
    if (const auto* t = std::get_if<Translate>(&*it)) {
      out.push_back(Translate{-t->v});
    } else if (const auto* d = std::get_if<Dilate>(&*it)) {
      out.push_back(Dilate{inv(d->u)});
    } else if (std::holds_alternative<Invert>(*it)) {
      out.push_back(Invert{});
    } else if (const auto* p = std::get_if<Phase>(&*it)) {
      out.push_back(Phase{-p->theta});
    } else if (const auto* f = std::get_if<FrameAut>(&*it)) {
      out.push_back(FrameAut{f->m.transpose()});
    } else if (std::holds_alternative<ToTube>(*it)) {
      out.push_back(ToBall{});
    } else {
      out.push_back(ToTube{});
    }
  }
  return ConformalWord(alg_, std::move(out));
}

std::string ConformalWord::describe() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : gens_) {
    nlohmann::json rec;
    if (const auto* t = std::get_if<Translate>(&g)) {
      rec["gen"] = "translate";
      rec["v"] = std::vector<double>(t->v.x.data(), t->v.x.data() + t->v.x.size());
    } else if (const auto* d = std::get_if<Dilate>(&g)) {
      rec["gen"] = "dilate";
      rec["u"] = std::vector<double>(d->u.x.data(), d->u.x.data() + d->u.x.size());
    } else if (std::holds_alternative<Invert>(g)) {
      rec["gen"] = "invert";
    } else if (const auto* p = std::get_if<Phase>(&g)) {
      rec["gen"] = "phase";
      rec["theta"] = p->theta;
    } else if (const auto* f = std::get_if<FrameAut>(&g)) {
      rec["gen"] = "frame_aut";
      auto rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < f->m.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(f->m.cols()));
        for (Eigen::Index j = 0; j < f->m.cols(); ++j)
          row[static_cast<std::size_t>(j)] = f->m(i, j);
        rows.push_back(row);
      }
      rec["m"] = rows;
    } else if (std::holds_alternative<ToTube>(g)) {
      rec["gen"] = "to_tube";
    } else {
      rec["gen"] = "to_ball";
    }
    arr.push_back(rec);
  }
  return arr.dump();
}

ConformalWord compose(const ConformalWord& w1, const ConformalWord& w2) {
  if (!w1.alg()->same(*w2.alg())) throw AlgebraMismatch("composing words");
  std::vector<ConformalGen> gens = w2.gens();
  gens.insert(gens.end(), w1.gens().begin(), w1.gens().end());
  return ConformalWord(w1.alg(), std::move(gens));
}

TubePt apply_gen(const AlgebraPtr& alg, const ConformalGen& g,
                 const TubePt& p) {
  if (p.at_infinity()) {
    // Inversion and the inverse Cayley move the point at infinity; the linear
    // generators fix it and the forward Cayley must never see it.
    if (std::holds_alternative<Invert>(g)) return TubePt::finite(czero(alg));
    if (std::holds_alternative<ToBall>(g)) return TubePt::finite(cunit(alg));
    if (std::holds_alternative<ToTube>(g)) {
      throw SingularOrbit("Cayley transform applied to the point at infinity");
    }
    return p;
  }
  const CElem& z = *p.z;
  if (!z.alg()->same(*alg)) throw AlgebraMismatch("generator application");

  try {
    if (const auto* t = std::get_if<Translate>(&g)) {
      return TubePt::finite(CElem{z.re + t->v, z.im});
    }
    if (const auto* d = std::get_if<Dilate>(&g)) {
      const Elem uu = mul(d->u, d->u);
      return TubePt::finite(
          CElem{quad_apply(d->u, uu, z.re), quad_apply(d->u, uu, z.im)});
    }
    if (std::holds_alternative<Invert>(g)) {
      if (z.norm() <= 1e-11) return TubePt::infinity();
      if (near_singular(z))
        throw SingularOrbit("inversion at a singular point");
      return TubePt::finite(-cinv(z));
    }
    if (const auto* ph = std::get_if<Phase>(&g)) {
      const Complex s{std::cos(ph->theta), std::sin(ph->theta)};
      return TubePt::finite(s * z);
    }
    if (const auto* f = std::get_if<FrameAut>(&g)) {
      CElem out = z;
      out.re.x = f->m * z.re.x;
      out.im.x = f->m * z.im.x;
      return TubePt::finite(out);
    }
    if (std::holds_alternative<ToTube>(g)) {
      const CElem diff = cunit(alg) - z;
      if (diff.norm() <= 1e-9 * (1.0 + z.norm())) return TubePt::infinity();
      if (near_singular(diff))
        throw SingularOrbit("Cayley transform at a singular boundary point");
      return TubePt::finite(cayley(z));
    }
    // ToBall
    const CElem shift = z + Complex(0, 1) * complexify(unit(alg));
    if (near_singular(shift))
      throw SingularOrbit("inverse Cayley at a singular point");
    return TubePt::finite(inv_cayley(z));
  } catch (const SingularElement& e) {
    throw SingularOrbit(std::string("generator hit a singular point: ") +
                        e.what());
  }
}

TubePt apply_partial(const ConformalWord& w, const TubePt& p) {
  TubePt cur = p;
  for (const auto& g : w.gens()) cur = apply_gen(w.alg(), g, cur);
  return cur;
}

CElem apply(const ConformalWord& w, const CElem& z) {
  if (!z.alg()->same(*w.alg())) throw AlgebraMismatch("applying word");
  TubePt out = apply_partial(w, TubePt::finite(z));
  if (out.at_infinity())
    throw SingularOrbit("word sent the point to infinity");
  return *out.z;
}

ShilovPt apply(const ConformalWord& w, const ShilovPt& z) {
  return ShilovPt(apply(w, z.z));
}

FrameAut sym_conjugation(const AlgebraPtr& alg, const Eigen::MatrixXd& q) {
  if (alg->kind() != Kind::Sym) throw AlgebraMismatch("sym_conjugation");
  const int n = alg->dim();
  Eigen::MatrixXd m(n, n);
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXd xk = sym_matrix(basis_elem(alg, k));
    m.col(k) = sym_from_matrix(alg, q * xk * q.transpose()).x;
  }
  return FrameAut{m};
}

FrameAut spin_rotation(const AlgebraPtr& alg, const Eigen::MatrixXd& o) {
  if (alg->kind() != Kind::Spin) throw AlgebraMismatch("spin_rotation");
  const int n = alg->dim();
  if (o.rows() != n - 1 || o.cols() != n - 1)
    throw Error("spin rotation must act on the vector part");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(0, 0) = 1.0;
  m.bottomRightCorner(n - 1, n - 1) = o;
  return FrameAut{m};
}

FrameAut sum_permutation(const AlgebraPtr& alg,
                         const std::vector<int>& part_of,
                         const std::vector<FrameAut>& part_auts) {
  if (alg->kind() != Kind::DirectSum) throw AlgebraMismatch("sum_permutation");
  const auto& parts = alg->parts();
  const auto np = static_cast<std::size_t>(parts.size());
  if (part_of.size() != np || part_auts.size() != np)
    throw Error("sum_permutation needs one entry per part");

  std::vector<bool> seen(np, false);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(alg->dim(), alg->dim());
  for (std::size_t j = 0; j < np; ++j) {
    const auto src = static_cast<std::size_t>(part_of[j]);
    if (src >= np || seen[src]) throw Error("part_of is not a permutation");
    seen[src] = true;
    const auto& pj = parts[j];
    const auto& ps = parts[src];
    if (pj->kind() != ps->kind() || pj->dim() != ps->dim() ||
        pj->rank() != ps->rank())
      throw Error("sum_permutation may only exchange isomorphic parts");
    const int d = pj->dim();
    const auto& a = part_auts[src].m;
    if (a.rows() != d || a.cols() != d)
      throw Error("part automorphism has wrong size");
    m.block(alg->part_offset(static_cast<int>(j)),
            alg->part_offset(static_cast<int>(src)), d, d) = a;
  }
  return FrameAut{m};
}

FrameAut random_frame_aut(const AlgebraPtr& alg, Rng& rng) {
  switch (alg->kind()) {
    case Kind::RealLine:
      return FrameAut{Eigen::MatrixXd::Identity(1, 1)};
    case Kind::Sym:
      return sym_conjugation(alg, random_orthogonal(rng, alg->order()));
    case Kind::Spin:
      return spin_rotation(alg, random_orthogonal(rng, alg->dim() - 1));
    case Kind::DirectSum: {
      const auto& parts = alg->parts();
      const auto np = parts.size();
      std::vector<FrameAut> auts;
      auts.reserve(np);
      for (const auto& p : parts) auts.push_back(random_frame_aut(p, rng));

      // Shuffle within groups of mutually isomorphic parts.
      std::vector<int> part_of(np);
      std::iota(part_of.begin(), part_of.end(), 0);
      for (std::size_t i = 0; i < np; ++i) {
        std::vector<std::size_t> mates;
        for (std::size_t j = 0; j <= i; ++j) {
          if (parts[j]->kind() == parts[i]->kind() &&
              parts[j]->dim() == parts[i]->dim() &&
              parts[j]->rank() == parts[i]->rank())
            mates.push_back(j);
        }
        const std::size_t pick = mates[static_cast<std::size_t>(
            rng.uniform_int(static_cast<int>(mates.size())))];
        std::swap(part_of[i], part_of[pick]);
      }
      return sum_permutation(alg, part_of, auts);
    }
  }
  throw Error("unreachable algebra kind");
}

ConformalWord random_word(const AlgebraPtr& alg, std::uint64_t seed,
                          int length) {
  if (length < 0) throw Error("word length must be nonnegative");
  Rng rng(seed);
  ConformalWord w(alg);
  for (int i = 0; i < length; ++i) {
    switch (rng.uniform_int(5)) {
      case 0:
        w.push(Phase{rng.uniform(0.0, 2.0 * M_PI)});
        break;
      case 1:
        w.push(random_frame_aut(alg, rng));
        break;
      case 2:
        w.push(ToTube{});
        w.push(Translate{from_coords(alg, normal_vector(rng, alg->dim()))});
        w.push(ToBall{});
        break;
      case 3:
        w.push(ToTube{});
        w.push(Dilate{sample_cone(alg, rng)});
        w.push(ToBall{});
        break;
      default:
        w.push(ToTube{});
        w.push(Invert{});
        w.push(ToBall{});
        break;
    }
  }
  return w;
}

}  // namespace shilov
