#include "orbemb/serialize.hpp"

#include <string>

namespace orbemb {

namespace {

[[noreturn]] void schema_fail(const std::string& what) { throw SchemaError(what); }

std::size_t read_size(const Json& j, const char* key) {
  if (!j.contains(key)) schema_fail(std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) schema_fail(std::string("\"") + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json to_json(const GaussRat& x) { return x.str(); }

Json to_json(const Complex& x) { return Json::array({x.real(), x.imag()}); }

template <>
GaussRat scalar_from_json<GaussRat>(const Json& j) {
  if (j.is_string()) return GaussRat::parse(j.get<std::string>());
  if (j.is_number_integer()) return GaussRat(j.get<long long>());
  schema_fail("exact scalars must be strings such as \"1/2+3 i\" or integers");
}

template <>
Complex scalar_from_json<Complex>(const Json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return GaussRat::parse(j.get<std::string>()).to_complex();
  schema_fail("approximate scalars must be [re, im] pairs or numbers");
}

template <Field T>
Vector<T> vector_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) schema_fail("expected a vector of length " + std::to_string(dim));
  Vector<T> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = scalar_from_json<T>(j[i]);
  return v;
}

template <Field T>
Matrix<T> matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  const std::string shape = std::to_string(rows) + " x " + std::to_string(cols);
  if (!j.is_array() || j.size() != rows) schema_fail("expected a " + shape + " matrix");
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) schema_fail("expected a " + shape + " matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json<T>(j[i][k]);
  }
  return m;
}

template <Field T>
EnhancedElement<T> enhanced_from_json(const Json& j, std::size_t dim) {
  if (!j.is_object()) schema_fail("enhanced elements are objects with fields u, v, A");
  return {vector_from_json<T>(field(j, "u"), dim), vector_from_json<T>(field(j, "v"), dim),
          matrix_from_json<T>(field(j, "A"), dim, dim)};
}

Mode instance_mode(const Json& j) {
  if (!j.is_object()) schema_fail("instance must be a JSON object");
  const Json& m = field(j, "mode");
  if (m == "exact") return Mode::Exact;
  if (m == "approx") return Mode::Approx;
  schema_fail("\"mode\" must be \"exact\" or \"approx\"");
}

template <Field T>
WitnessInstance<T> witness_instance_from_json(const Json& j) {
  if (!j.is_object()) schema_fail("instance must be a JSON object");
  const Json& schema = field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion) {
    schema_fail("unsupported schema version (expected 1)");
  }
  WitnessInstance<T> inst;
  inst.n = read_size(j, "n");
  if (inst.n > 64) schema_fail("\"n\" is unreasonably large");
  const Json& alpha = field(j, "alpha");
  if (!alpha.is_number_integer() || (alpha.get<int>() != 1 && alpha.get<int>() != -1)) {
    schema_fail("\"alpha\" must be 1 or -1");
  }
  inst.alpha = AlphaSign::from_int(alpha.get<int>());
  if (j.contains("constraint")) {
    const Json& c = j.at("constraint");
    if (c == "full") {
      inst.constraint = GroupConstraint::Full;
    } else if (c == "block-diagonal") {
      inst.constraint = GroupConstraint::BlockDiagonal;
    } else {
      schema_fail("\"constraint\" must be \"full\" or \"block-diagonal\"");
    }
  }
  const std::size_t dim = 2 * inst.n;
  inst.x = enhanced_from_json<T>(field(j, "X"), dim);
  inst.y = enhanced_from_json<T>(field(j, "Y"), dim);
  inst.g = matrix_from_json<T>(field(j, "g"), dim, dim);
  return inst;
}

template Vector<GaussRat> vector_from_json<GaussRat>(const Json&, std::size_t);
template Vector<Complex> vector_from_json<Complex>(const Json&, std::size_t);
template Matrix<GaussRat> matrix_from_json<GaussRat>(const Json&, std::size_t, std::size_t);
template Matrix<Complex> matrix_from_json<Complex>(const Json&, std::size_t, std::size_t);
template EnhancedElement<GaussRat> enhanced_from_json<GaussRat>(const Json&, std::size_t);
template EnhancedElement<Complex> enhanced_from_json<Complex>(const Json&, std::size_t);
template WitnessInstance<GaussRat> witness_instance_from_json<GaussRat>(const Json&);
template WitnessInstance<Complex> witness_instance_from_json<Complex>(const Json&);

}  // namespace orbemb
