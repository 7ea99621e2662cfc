#pragma once

#include <json.hpp>

#include "orbemb/enhanced.hpp"
#include "orbemb/matrix_sqrt.hpp"
#include "orbemb/orbit.hpp"

// JSON encoding.  Exact scalars are strings ("3", "-1/2", "1/2+3/4 i");
// approximate scalars are [re, im] pairs.  Matrices are arrays of rows.
// Every parse error is reported as SchemaError.

namespace orbemb {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const GaussRat& x);
Json to_json(const Complex& x);

template <Field T>
T scalar_from_json(const Json& j);

template <Field T>
Json to_json(const Vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v.entries()) out.push_back(to_json(x));
  return out;
}

template <Field T>
Json to_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <Field T>
Json to_json(const EnhancedElement<T>& x) {
  return Json{{"u", to_json(x.u)}, {"v", to_json(x.v)}, {"A", to_json(x.A)}};
}

template <Field T>
Json to_json(const PolyCert<T>& c) {
  Json coeffs = Json::array();
  for (const auto& x : c.coeffs) coeffs.push_back(to_json(x));
  return Json{{"coeffs", std::move(coeffs)}, {"residual", c.residual}};
}

template <Field T>
Vector<T> vector_from_json(const Json& j, std::size_t dim);

template <Field T>
Matrix<T> matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

template <Field T>
EnhancedElement<T> enhanced_from_json(const Json& j, std::size_t dim);

/// Input to the witness subcommand.
template <Field T>
struct WitnessInstance {
  std::size_t n = 0;
  AlphaSign alpha = AlphaSign::minus();
  GroupConstraint constraint = GroupConstraint::Full;
  EnhancedElement<T> x;
  EnhancedElement<T> y;
  Matrix<T> g;
};

/// Reads the "mode" field of an instance document.
Mode instance_mode(const Json& j);

template <Field T>
WitnessInstance<T> witness_instance_from_json(const Json& j);

template <Field T>
Json to_json(const WitnessInstance<T>& inst) {
  return Json{{"schema", kSchemaVersion},
              {"mode", mode_name(FieldTraits<T>::mode)},
              {"n", inst.n},
              {"alpha", inst.alpha.value()},
              {"constraint", constraint_name(inst.constraint)},
              {"X", to_json(inst.x)},
              {"Y", to_json(inst.y)},
              {"g", to_json(inst.g)}};
}

template <Field T>
Json to_json(const WitnessReport<T>& r) {
  Json residuals = Json::object();
  for (const auto& [name, value] : r.residuals) residuals[name] = value;
  return Json{{"constraint", constraint_name(r.constraint)},
              {"alpha", r.alpha.value()},
              {"witness", to_json(r.witness.matrix())},
              {"h", to_json(r.h)},
              {"f", to_json(r.f)},
              {"sqrt_cert", to_json(r.sqrt_cert)},
              {"cluster_radius", r.cluster_radius},
              {"residuals", std::move(residuals)}};
}

}  // namespace orbemb
