#include "orbemb/gl2_case.hpp"

#include "orbemb/orbit.hpp"

namespace orbemb {

namespace {

using Q = GaussRat;

bool conjugate_2x2(const Matrix<Q>& a, const Matrix<Q>& b, std::optional<GroupElement<Q>>& g) {
  SymplecticContext<Q> ctx(1);
  EnhancedElement<Q> x{Vector<Q>(2), Vector<Q>(2), a};
  EnhancedElement<Q> y{Vector<Q>(2), Vector<Q>(2), b};
  auto search = find_conjugator(ctx, x, y, GroupConstraint::Full);
  g = search.conjugator;
  return g.has_value();
}

}  // namespace

std::vector<Matrix<GaussRat>> special_representatives() {
  std::vector<Matrix<Q>> reps;
  for (int a : {1, -1}) reps.push_back(Matrix<Q>{{Q(a), Q(1)}, {Q(0), Q(a)}});
  for (int a : {1, -1}) reps.push_back(Matrix<Q>{{Q(a), Q(0)}, {Q(1), Q(a)}});
  for (int a : {1, -1})
    for (int d : {1, -1}) reps.push_back(Matrix<Q>{{Q(a), Q(0)}, {Q(0), Q(d)}});
  return reps;
}

std::vector<CollapsingPair> collapsing_pairs() {
  const auto reps = special_representatives();
  std::vector<CollapsingPair> pairs;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      std::optional<GroupElement<Q>> g;
      if (!conjugate_2x2(reps[i], reps[j], g)) continue;
      if (!(g->matrix() * reps[i] * g->inverse() == reps[j])) {
        throw VerificationFailure("collapsing_pairs: conjugator check failed");
      }
      if (canonical_K_rep(reps[i]) == canonical_K_rep(reps[j])) {
        throw VerificationFailure("collapsing_pairs: representatives share a K-orbit");
      }
      pairs.push_back({reps[i], reps[j], std::move(*g)});
    }
  }
  return pairs;
}

ObstructionCertificate obstruction_check(const Matrix<GaussRat>& x, const Matrix<GaussRat>& h) {
  require_2x2(x, "obstruction_check");
  require_2x2(h, "obstruction_check");
  if (!in_X5(x)) throw PreconditionViolation("obstruction_check: x is not in X");
  if (!in_X5(h)) throw PreconditionViolation("obstruction_check: h is not sigma-fixed");
  if (!(h * x == x * h)) throw PreconditionViolation("obstruction_check: h does not commute with x");

  ObstructionCertificate cert{x, h, {}, false, std::nullopt, {}};
  const CaseFamily family = classify_X5(x);
  const Matrix<Q> one = Matrix<Q>::identity(2);
  if (family == CaseFamily::UpperUnipotent) {
    // G_x^sigma = {[[al, be], [0, al]] : al = ±1}; its squares are [[1, 2 al be], [0, 1]].
    cert.family = "unipotent";
    if (h(0, 0) == Q(1) && h(1, 1) == Q(1)) {
      cert.has_root = true;
      cert.f = Matrix<Q>{{Q(1), h(0, 1) / Q(2)}, {Q(0), Q(1)}};
      cert.reason = "h has unit diagonal";
    } else {
      cert.reason = "every square in G_x^sigma has unit diagonal, h has diagonal " + h(0, 0).str();
    }
  } else if (family == CaseFamily::Diagonal && x(0, 0) == -x(1, 1)) {
    // G_x^sigma = {diag(al, de) : al^2 = de^2 = 1}; every square is 1.
    cert.family = "diagonal";
    if (h == one) {
      cert.has_root = true;
      cert.f = one;
      cert.reason = "h = 1";
    } else {
      cert.reason = "every square in G_x^sigma is 1";
    }
  } else {
    throw PreconditionViolation("obstruction_check: x is outside the unipotent and diag(±1, ∓1) families");
  }

  if (cert.f) {
    const Matrix<Q>& f = *cert.f;
    if (!(f * f == h) || !(sigma5(GroupElement<Q>(f)).matrix() == f) || !(f * x == x * f)) {
      throw VerificationFailure("obstruction_check: square root certificate failed");
    }
  }
  return cert;
}

}  // namespace orbemb
