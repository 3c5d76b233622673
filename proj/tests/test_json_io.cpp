#include <doctest.h>

#include "tenrank/families.hpp"
#include "tenrank/json_io.hpp"
#include "tenrank/rng.hpp"

using namespace tenrank;

TEST_CASE("rational tensor documents round-trip bit-exactly") {
  Rng rng(12321);
  Tensor3<Rational> t(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) t.at(i, j, k) = rng.rational(99, 13);
  const std::string text = tensor_to_json(t);
  TensorVariant back = parse_tensor_json(text);
  REQUIRE(is_rational(back));
  CHECK(std::get<Tensor3<Rational>>(back) == t);
  // Serialize again: identical bytes.
  CHECK(tensor_to_json(std::get<Tensor3<Rational>>(back)) == text);
}

TEST_CASE("complex tensor documents round-trip") {
  Tensor3<Complex> t(2);
  t.at(0, 0, 0) = Complex(0.5, -1.25);
  t.at(1, 1, 1) = Complex(3.0, 0.0);
  const std::string text = tensor_to_json(t);
  TensorVariant back = parse_tensor_json(text);
  REQUIRE_FALSE(is_rational(back));
  CHECK(std::get<Tensor3<Complex>>(back) == t);
  CHECK(tensor_to_json(back) == text);
}

TEST_CASE("tensor document validation errors") {
  CHECK_THROWS_AS(parse_tensor_json("not json at all"), ParseError);
  CHECK_THROWS_AS(parse_tensor_json("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(parse_tensor_json(R"({"n": 2, "entries": []})"), ParseError);
  CHECK_THROWS_AS(parse_tensor_json(R"({"n": 2, "field": "octonion", "entries": []})"),
                  InputFormatError);
  CHECK_THROWS_AS(parse_tensor_json(R"({"n": 2, "field": "rational", "entries": [[["1"]]]})"),
                  InputFormatError);
  CHECK_THROWS_AS(
      parse_tensor_json(
          R"({"n": 1, "field": "rational", "entries": [[["1/0"]]]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_tensor_json(R"({"n": 1, "field": "complex", "entries": [[[["1", "2"]]]]})"),
      ParseError);
}

TEST_CASE("counts tables normalize to frequencies") {
  const std::string doc = R"({"counts": [[[40, 10], [5, 5]], [[10, 10], [10, 10]]]})";
  TensorInput in = parse_tensor_or_counts_json(doc);
  CHECK(in.from_counts);
  CHECK(in.min_count == 5.0);
  const auto& t = std::get<Tensor3<Complex>>(in.tensor);
  CHECK(t.at(0, 0, 0).real() == doctest::Approx(0.4));
  double total = 0;
  for (const auto& e : t.data()) total += e.real();
  CHECK(total == doctest::Approx(1.0));

  CHECK_THROWS_AS(parse_tensor_or_counts_json(R"({"counts": [[[0,0],[0,0]],[[0,0],[0,0]]]})"),
                  InputFormatError);
  CHECK_THROWS_AS(parse_tensor_or_counts_json(R"({"counts": [[[-1,1],[1,1]],[[1,1],[1,1]]]})"),
                  InputFormatError);

  TensorInput plain = parse_tensor_or_counts_json(tensor_to_json(gen_kn(3)));
  CHECK_FALSE(plain.from_counts);
}

TEST_CASE("membership report serialization is deterministic and carries stable fields") {
  auto rep = classify(gen_kn(3));
  const std::string a = membership_report_to_json(rep);
  const std::string b = membership_report_to_json(classify(gen_kn(3)));
  CHECK(a == b);
  CHECK(a.find("\"schema_version\":1") != std::string::npos);
  CHECK(a.find("\"type\":\"membership_report\"") != std::string::npos);
  CHECK(a.find("\"verdict\":\"boundary\"") != std::string::npos);
  CHECK(a.find("\"exit_code\":2") != std::string::npos);
  CHECK(a.find("\"commutation\"") != std::string::npos);
  CHECK(a.find("\"f_nonzero\"") != std::string::npos);
  CHECK(a.find("\"slice_nonsingular\"") != std::string::npos);
}

TEST_CASE("decomposition serialization marks exact factors") {
  auto dec = decompose(unit_diag_tensor<Rational>(2));
  const std::string doc = decomposition_to_json(dec);
  CHECK(doc.find("\"exact\":true") != std::string::npos);
  CHECK(doc.find("\"exact_factors\"") != std::string::npos);
  CHECK(doc.find("\"normalization\":\"leading-one-rows\"") != std::string::npos);
}

TEST_CASE("model report serialization") {
  std::vector<Rational> v(2, Rational(1, 2));
  auto rep = check_membership(diag_tensor(v));
  const std::string doc = model_report_to_json(rep);
  CHECK(doc.find("\"type\":\"model_report\"") != std::string::npos);
  CHECK(doc.find("\"overall\":\"pass\"") != std::string::npos);
  CHECK(doc.find("\"conditions\"") != std::string::npos);
  CHECK(doc.find("\"recovered\"") != std::string::npos);
}

TEST_CASE("variant helpers") {
  TensorVariant v = gen_kn(3);
  CHECK(n_of(v) == 3);
  CHECK(is_rational(v));
  auto c = as_complex(v);
  CHECK(c.at(0, 0, 0).real() == doctest::Approx(1.0));
}
