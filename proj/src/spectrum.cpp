#include "orbemb/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "orbemb/eigen_bridge.hpp"

namespace orbemb {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

std::vector<Complex> approximate_roots(const Poly<GaussRat>& p) {
  const std::size_t d = p.size() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  Complex lead = p.back().to_complex();
  for (std::size_t i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) companion(i, d - 1) = -p[i].to_complex() / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(d);
  for (std::size_t i = 0; i < d; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

std::optional<GaussRat> snap_root(const Poly<GaussRat>& p, Complex approx) {
  for (long max_den : {1000L, 1000000L, 1000000000L}) {
    GaussRat cand(rationalize(approx.real(), max_den), rationalize(approx.imag(), max_den));
    if (evaluate(p, cand).is_zero()) return cand;
  }
  return std::nullopt;
}

/// Exact roots of a square-free polynomial of degree <= 2.
std::vector<GaussRat> low_degree_roots(const Poly<GaussRat>& p) {
  if (p.size() == 2) return {-p[0] / p[1]};
  if (p.size() != 3) return {};
  GaussRat disc = p[1] * p[1] - GaussRat(4) * p[2] * p[0];
  auto s = exact_sqrt(disc);
  if (!s) return {};
  GaussRat two_a = GaussRat(2) * p[2];
  return {(-p[1] + *s) / two_a, (-p[1] - *s) / two_a};
}

}  // namespace

std::vector<EigenCluster> cluster_eigenvalues(std::span<const Complex> values, double radius,
                                              double floor, std::vector<std::size_t>* assignment) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double scale = std::max({std::abs(values[i]), std::abs(values[j]), floor});
      if (std::abs(values[i] - values[j]) <= radius * scale) {
        parent[find_root(parent, i)] = find_root(parent, j);
      }
    }
  }
  std::vector<std::size_t> roots;
  std::vector<std::size_t> root_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    root_of[i] = find_root(parent, i);
    if (std::find(roots.begin(), roots.end(), root_of[i]) == roots.end()) roots.push_back(root_of[i]);
  }
  std::vector<EigenCluster> clusters;
  for (std::size_t r : roots) {
    Complex sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (root_of[i] != r) continue;
      sum += values[i];
      ++count;
    }
    clusters.push_back({sum / static_cast<double>(count), count});
  }
  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Complex& x = clusters[a].value;
    const Complex& y = clusters[b].value;
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  std::vector<EigenCluster> sorted;
  std::vector<std::size_t> new_index(clusters.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted.push_back(clusters[order[k]]);
    new_index[order[k]] = k;
  }
  if (assignment) {
    assignment->assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t c = std::find(roots.begin(), roots.end(), root_of[i]) - roots.begin();
      (*assignment)[i] = new_index[c];
    }
  }
  return sorted;
}

std::vector<EigenCluster> eigen_spectrum(const Matrix<Complex>& m, double radius) {
  if (!m.is_square()) throw DimensionMismatch("eigen_spectrum: matrix is not square");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
  if (solver.info() != Eigen::Success) throw VerificationFailure("eigen_spectrum: QR iteration failed");
  std::vector<Complex> values(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) values[i] = solver.eigenvalues()(i);
  return cluster_eigenvalues(values, radius, 1e-8 * frobenius_norm(m));
}

std::vector<std::pair<GaussRat, std::size_t>> gaussian_rational_roots(const Poly<GaussRat>& p_in) {
  Poly<GaussRat> p = p_in;
  trim(p);
  if (p.size() <= 1) return {};
  Poly<GaussRat> sf = divmod(p, gcd(p, derivative(p))).first;
  sf = monic(sf);

  std::vector<GaussRat> found;
  while (sf.size() > 3) {
    bool progress = false;
    for (const Complex& r : approximate_roots(sf)) {
      if (auto exact = snap_root(sf, r)) {
        found.push_back(*exact);
        sf = divmod(sf, Poly<GaussRat>{-*exact, GaussRat(1)}).first;
        progress = true;
        break;
      }
    }
    if (!progress) break;
  }
  if (sf.size() <= 3) {
    for (auto& r : low_degree_roots(sf)) found.push_back(r);
  }

  std::vector<std::pair<GaussRat, std::size_t>> out;
  for (const auto& r : found) {
    std::size_t mult = 0;
    Poly<GaussRat> rest = p;
    Poly<GaussRat> linear{-r, GaussRat(1)};
    while (true) {
      auto [q, rem] = divmod(rest, linear);
      if (!rem.empty()) break;
      rest = std::move(q);
      ++mult;
    }
    if (mult > 0) out.emplace_back(r, mult);
  }
  return out;
}

std::optional<std::vector<ExactEigenvalue>> exact_eigenvalues(const Matrix<GaussRat>& m) {
  if (!m.is_square()) throw DimensionMismatch("exact_eigenvalues: matrix is not square");
  auto roots = gaussian_rational_roots(characteristic_polynomial(m));
  std::size_t total = 0;
  for (const auto& r : roots) total += r.second;
  if (total != m.rows()) return std::nullopt;

  Poly<GaussRat> minpoly = minimal_polynomial(m);
  std::vector<ExactEigenvalue> out;
  for (const auto& [value, algebraic] : roots) {
    std::size_t index = 0;
    Poly<GaussRat> rest = minpoly;
    Poly<GaussRat> linear{-value, GaussRat(1)};
    while (true) {
      auto [q, rem] = divmod(rest, linear);
      if (!rem.empty()) break;
      rest = std::move(q);
      ++index;
    }
    out.push_back({value, algebraic, index});
  }
  return out;
}

}  // namespace orbemb
