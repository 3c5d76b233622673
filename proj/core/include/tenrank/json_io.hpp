#pragma once

#include <string>
#include <variant>

#include "tenrank/latent_class.hpp"
#include "tenrank/membership.hpp"
#include "tenrank/real_classification.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

inline constexpr int kSchemaVersion = 1;

/// Malformed document (bad JSON, wrong value types). CLI exit 64.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally valid document with inconsistent dimensions or field. CLI
/// exit 65.
struct InputFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using TensorVariant = std::variant<Tensor3<Rational>, Tensor3<Complex>>;

struct TensorInput {
  TensorVariant tensor;
  bool from_counts = false;
  double min_count = 0.0;
};

/// Tensor document: {"n": N, "field": "rational"|"complex", "entries": ...}
/// with entries[i][j][k] = P(i+1, j+1, k+1); rational entries are "p/q"
/// strings, complex entries [re, im] pairs. The rational form round-trips
/// bit-exactly.
TensorVariant parse_tensor_json(const std::string& text);

/// Accepts either a tensor document or a counts table
/// {"counts": [[[...]]]}; counts are normalized to frequencies.
TensorInput parse_tensor_or_counts_json(const std::string& text);

std::string tensor_to_json(const Tensor3<Rational>& t, bool pretty = false);
std::string tensor_to_json(const Tensor3<Complex>& t, bool pretty = false);
std::string tensor_to_json(const TensorVariant& t, bool pretty = false);

std::string membership_report_to_json(const MembershipReport& rep, bool pretty = false);
std::string decomposition_to_json(const Decomposition& d, bool pretty = false);
std::string signature_report_to_json(const SignatureReport& rep, bool pretty = false);
std::string model_report_to_json(const ModelReport& rep, bool pretty = false);

int n_of(const TensorVariant& t);
bool is_rational(const TensorVariant& t);
Tensor3<Complex> as_complex(const TensorVariant& t);

}  // namespace tenrank
