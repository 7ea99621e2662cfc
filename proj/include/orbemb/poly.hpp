#pragma once

#include <cstddef>
#include <vector>

#include "orbemb/linsolve.hpp"
#include "orbemb/matrix.hpp"

namespace orbemb {

/// Univariate polynomial, coefficients from the constant term upwards.
template <Field T>
using Poly = std::vector<T>;

template <Field T>
void trim(Poly<T>& p) {
  while (!p.empty() && is_zero(p.back(), 0.0)) p.pop_back();
}

template <Field T>
T evaluate(const Poly<T>& p, const T& x) {
  T acc(0);
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

/// p(M) by Horner's rule.
template <Field T>
Matrix<T> evaluate(const Poly<T>& p, const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("polynomial of non-square matrix");
  Matrix<T> acc(m.rows(), m.cols());
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * m + Matrix<T>::scalar(m.rows(), p[k]);
  return acc;
}

template <Field T>
Poly<T> derivative(const Poly<T>& p) {
  if (p.size() <= 1) return {};
  Poly<T> d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = T(static_cast<long>(k)) * p[k];
  return d;
}

template <Field T>
Poly<T> multiply(const Poly<T>& a, const Poly<T>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<T> c(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// Quotient and remainder of a / b (b nonzero after trimming).
template <Field T>
std::pair<Poly<T>, Poly<T>> divmod(Poly<T> a, Poly<T> b) {
  trim(a);
  trim(b);
  if (b.empty()) throw Error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly<T> q(a.size() - b.size() + 1, T(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    T coef = a[k + b.size() - 1] / b.back();
    q[k] = coef;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= coef * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  return {q, a};
}

template <Field T>
Poly<T> monic(Poly<T> p) {
  trim(p);
  if (p.empty()) return p;
  T lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

/// Monic gcd (exact arithmetic).
template <Field T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

/// Characteristic polynomial det(T - M), monic, by Faddeev-LeVerrier.
template <Field T>
Poly<T> characteristic_polynomial(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  Poly<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + Matrix<T>::scalar(n, c[n - k + 1]);
    c[n - k] = -trace(Matrix<T>(m * mk)) / T(static_cast<long>(k));
  }
  return c;
}

/// Monic minimal polynomial: the first linear dependency among I, M, M^2, ...
template <Field T>
Poly<T> minimal_polynomial(const Matrix<T>& m, double tol = kDefaultResidualTol) {
  if (!m.is_square()) throw DimensionMismatch("minimal polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Matrix<T>> powers{Matrix<T>::identity(n)};
  for (std::size_t d = 1; d <= n; ++d) {
    powers.push_back(powers.back() * m);
    Matrix<T> a(n * n, d);
    Vector<T> b(n * n);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t e = 0; e < n * n; ++e) a(e, k) = powers[k].entries()[e];
    for (std::size_t e = 0; e < n * n; ++e) b[e] = -powers[d].entries()[e];
    auto sol = solve_linear(a, b, tol);
    if (sol.feasible) {
      Poly<T> p(d + 1);
      for (std::size_t k = 0; k < d; ++k) p[k] = sol.particular[k];
      p[d] = T(1);
      return p;
    }
  }
  return characteristic_polynomial(m);
}

}  // namespace orbemb
