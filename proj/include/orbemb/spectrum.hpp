#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "orbemb/matrix.hpp"
#include "orbemb/poly.hpp"

namespace orbemb {

inline constexpr double kDefaultClusterRadius = 1e-7;

struct EigenCluster {
  Complex value;             ///< mean of the members
  std::size_t multiplicity;  ///< number of members
};

/// Single-linkage clustering: lambda, mu share a cluster when
/// |lambda - mu| <= radius * max(|lambda|, |mu|) (or both are below
/// radius * floor).  Clusters are sorted by (Re, Im) of their centers.
/// `assignment`, when given, receives the cluster index of each input.
std::vector<EigenCluster> cluster_eigenvalues(std::span<const Complex> values, double radius,
                                              double floor = 0.0,
                                              std::vector<std::size_t>* assignment = nullptr);

/// Clustered spectrum of a square approximate matrix.  No accuracy guarantee:
/// consumers verify their results through residuals.
std::vector<EigenCluster> eigen_spectrum(const Matrix<Complex>& m,
                                         double radius = kDefaultClusterRadius);

struct ExactEigenvalue {
  GaussRat value;
  std::size_t algebraic;  ///< multiplicity in the characteristic polynomial
  std::size_t index;      ///< multiplicity in the minimal polynomial
};

/// Exact spectrum when the characteristic polynomial splits over Q(i);
/// nullopt otherwise (callers then fall back to approximate mode).
std::optional<std::vector<ExactEigenvalue>> exact_eigenvalues(const Matrix<GaussRat>& m);

/// Roots in Q(i) of p with their multiplicities.  Only roots that can be
/// recovered from double-precision estimates are found.
std::vector<std::pair<GaussRat, std::size_t>> gaussian_rational_roots(const Poly<GaussRat>& p);

}  // namespace orbemb
