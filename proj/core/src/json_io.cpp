#include "tenrank/json_io.hpp"

#include <json.hpp>

namespace tenrank {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("input is not valid JSON");
  return doc;
}

Rational rational_from_json(const json& v) {
  if (v.is_string()) {
    try {
      return Rational::from_string(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad rational entry: ") + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError("rational entries must be \"p/q\" strings or integers");
}

Complex complex_from_json(const json& v) {
  if (v.is_array()) {
    if (v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError("complex entries must be [re, im] number pairs");
    Complex c(v[0].get<double>(), v[1].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InputFormatError("complex entry is not finite");
    return c;
  }
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  throw ParseError("complex entries must be [re, im] number pairs");
}

template <typename S, typename FromJson>
Tensor3<S> tensor_from_entries(const json& entries, int n, FromJson&& from) {
  if (!entries.is_array() || static_cast<int>(entries.size()) != n)
    throw InputFormatError("entries must be an n x n x n nested array");
  Tensor3<S> t(n);
  for (int i = 0; i < n; ++i) {
    const json& plane = entries[i];
    if (!plane.is_array() || static_cast<int>(plane.size()) != n)
      throw InputFormatError("entries must be an n x n x n nested array");
    for (int j = 0; j < n; ++j) {
      const json& row = plane[j];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw InputFormatError("entries must be an n x n x n nested array");
      for (int k = 0; k < n; ++k) t.at(i, j, k) = from(row[k]);
    }
  }
  return t;
}

json rational_to_json(const Rational& r) { return json(r.str()); }

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

json tensor_doc(const Tensor3<Rational>& t) {
  json entries = json::array();
  for (int i = 0; i < t.n(); ++i) {
    json plane = json::array();
    for (int j = 0; j < t.n(); ++j) {
      json row = json::array();
      for (int k = 0; k < t.n(); ++k) row.push_back(rational_to_json(t.at(i, j, k)));
      plane.push_back(std::move(row));
    }
    entries.push_back(std::move(plane));
  }
  return json{{"n", t.n()}, {"field", "rational"}, {"entries", std::move(entries)}};
}

json tensor_doc(const Tensor3<Complex>& t) {
  json entries = json::array();
  for (int i = 0; i < t.n(); ++i) {
    json plane = json::array();
    for (int j = 0; j < t.n(); ++j) {
      json row = json::array();
      for (int k = 0; k < t.n(); ++k) row.push_back(complex_to_json(t.at(i, j, k)));
      plane.push_back(std::move(row));
    }
    entries.push_back(std::move(plane));
  }
  return json{{"n", t.n()}, {"field", "complex"}, {"entries", std::move(entries)}};
}

std::string dump(const json& doc, bool pretty) { return pretty ? doc.dump(2) : doc.dump(); }

json witness_to_json(const CommutationWitness& w) {
  return json{{"slice_j", w.slice_j}, {"slice_k", w.slice_k}, {"row", w.row},
              {"col", w.col},         {"location", w.location}, {"value", w.value}};
}

json commutation_to_json(const CommutationReport& c) {
  json j{{"axis", c.axis},
         {"exact", c.exact},
         {"status", to_string(c.status)},
         {"identically_zero", c.identically_zero},
         {"max_residual", c.max_residual}};
  j["witness"] = c.witness ? witness_to_json(*c.witness) : json(nullptr);
  return j;
}

json complex_matrix_to_json(const Mat<Complex>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json rational_matrix_to_json(const Mat<Rational>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json decomposition_doc(const Decomposition& d) {
  json j{{"schema_version", kSchemaVersion},
         {"type", "decomposition"},
         {"normalization", d.normalization},
         {"residual", d.residual},
         {"exact", d.exact_factors.has_value()},
         {"g1", complex_matrix_to_json(d.g1)},
         {"g2", complex_matrix_to_json(d.g2)},
         {"g3", complex_matrix_to_json(d.g3)},
         {"notes", d.notes}};
  if (d.exact_factors) {
    j["exact_factors"] = json{{"g1", rational_matrix_to_json((*d.exact_factors)[0])},
                              {"g2", rational_matrix_to_json((*d.exact_factors)[1])},
                              {"g3", rational_matrix_to_json((*d.exact_factors)[2])}};
  } else {
    j["exact_factors"] = json(nullptr);
  }
  return j;
}

json membership_doc(const MembershipReport& rep) {
  json commutation = json::array();
  for (const auto& c : rep.commutation) commutation.push_back(commutation_to_json(c));
  json f_states = json::array();
  for (const auto& f : rep.f_nonzero) f_states.push_back(to_string(f));
  json slices = json::array();
  for (bool s : rep.slice_nonsingular_axis) slices.push_back(s);
  json j{{"schema_version", kSchemaVersion},
         {"type", "membership_report"},
         {"n", rep.n},
         {"backend", rep.exact_backend ? "exact" : "float"},
         {"verdict", to_string(rep.verdict)},
         {"detail", rep.detail},
         {"exit_code", exit_code(rep.verdict)},
         {"commutation", std::move(commutation)},
         {"f_nonzero", std::move(f_states)},
         {"slice_nonsingular", std::move(slices)},
         {"cross_axis_consistent", rep.cross_axis_consistent},
         {"notes", rep.notes}};
  j["decomposition"] = rep.decomposition ? decomposition_doc(*rep.decomposition) : json(nullptr);
  return j;
}

json signature_doc(const SignatureReport& rep) {
  json pairs = json::array();
  for (const auto& [a, b] : rep.pairs) pairs.push_back(json::array({a, b}));
  json j{{"schema_version", kSchemaVersion},
         {"type", "signature_report"},
         {"n", rep.n},
         {"signature", json::array({rep.real_components, rep.pair_count})},
         {"r_sign", rep.r_sign > 0 ? "+" : (rep.r_sign < 0 ? "-" : "?")},
         {"pairs", std::move(pairs)},
         {"indeterminate", rep.indeterminate},
         {"note", rep.note}};
  j["descriptor"] = rep.descriptor ? json(rep.descriptor->str()) : json(nullptr);
  return j;
}

json condition_doc(int id, const ConditionResult& c) {
  json witnesses = json::array();
  for (const auto& w : c.witnesses) {
    json wj{{"matrix", w.matrix}, {"value", w.value}};
    wj["l"] = w.l > 0 ? json(w.l) : json(nullptr);
    wj["index_set"] = w.index_set;
    witnesses.push_back(std::move(wj));
  }
  return json{{"id", id},
              {"status", to_string(c.status)},
              {"witnesses", std::move(witnesses)},
              {"note", c.note}};
}

json model_doc(const ModelReport& rep) {
  json conditions = json::array();
  for (int i = 0; i < 5; ++i) conditions.push_back(condition_doc(i + 1, rep.conditions[i]));
  json j{{"schema_version", kSchemaVersion},
         {"type", "model_report"},
         {"n", rep.n},
         {"backend", rep.exact ? "exact" : "float"},
         {"strict", rep.strict},
         {"conditions", std::move(conditions)},
         {"overall", to_string(rep.overall)},
         {"notes", rep.notes}};
  if (rep.recovered_exact) {
    const auto& r = *rep.recovered_exact;
    json pi = json::array();
    for (const auto& v : r.params.pi) pi.push_back(rational_to_json(v));
    j["recovered"] = json{{"backend", "exact"},
                          {"pi", std::move(pi)},
                          {"M1", rational_matrix_to_json(r.params.m1)},
                          {"M2", rational_matrix_to_json(r.params.m2)},
                          {"M3", rational_matrix_to_json(r.params.m3)},
                          {"roundtrip_residual", r.roundtrip_residual}};
  } else if (rep.recovered_float) {
    const auto& r = *rep.recovered_float;
    auto dmat = [](const Mat<double>& m) {
      json rows = json::array();
      for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj));
        rows.push_back(std::move(row));
      }
      return rows;
    };
    j["recovered"] = json{{"backend", "float"},
                          {"pi", r.params.pi},
                          {"M1", dmat(r.params.m1)},
                          {"M2", dmat(r.params.m2)},
                          {"M3", dmat(r.params.m3)},
                          {"roundtrip_residual", r.roundtrip_residual}};
  } else {
    j["recovered"] = json(nullptr);
  }
  return j;
}

}  // namespace

TensorVariant parse_tensor_json(const std::string& text) {
  json doc = parse_or_throw(text);
  if (!doc.is_object()) throw ParseError("tensor document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("tensor document needs an integer \"n\"");
  const int n = doc["n"].get<int>();
  if (n < 1) throw InputFormatError("\"n\" must be positive");
  if (!doc.contains("field") || !doc["field"].is_string())
    throw ParseError("tensor document needs a \"field\" of \"rational\" or \"complex\"");
  const std::string field = doc["field"].get<std::string>();
  if (!doc.contains("entries")) throw ParseError("tensor document needs \"entries\"");
  if (field == "rational")
    return tensor_from_entries<Rational>(doc["entries"], n, rational_from_json);
  if (field == "complex") {
    auto t = tensor_from_entries<Complex>(doc["entries"], n, complex_from_json);
    require_finite(t);
    return t;
  }
  throw InputFormatError("unknown field \"" + field + "\"");
}

TensorInput parse_tensor_or_counts_json(const std::string& text) {
  json doc = parse_or_throw(text);
  if (doc.is_object() && doc.contains("counts")) {
    const json& counts = doc["counts"];
    if (!counts.is_array() || counts.empty())
      throw ParseError("\"counts\" must be a non-empty nested array");
    const int n = static_cast<int>(counts.size());
    double total = 0.0;
    double min_count = std::numeric_limits<double>::infinity();
    Tensor3<Complex> t = tensor_from_entries<Complex>(counts, n, [&](const json& v) {
      if (!v.is_number()) throw ParseError("counts must be numbers");
      const double c = v.get<double>();
      if (!(c >= 0.0)) throw InputFormatError("counts must be non-negative");
      total += c;
      min_count = std::min(min_count, c);
      return Complex(c, 0.0);
    });
    if (total <= 0.0) throw InputFormatError("counts sum to zero");
    Tensor3<Complex> normalized(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) normalized.at(i, j, k) = t.at(i, j, k) / total;
    return TensorInput{normalized, true, min_count};
  }
  return TensorInput{parse_tensor_json(text), false, 0.0};
}

std::string tensor_to_json(const Tensor3<Rational>& t, bool pretty) {
  return dump(tensor_doc(t), pretty);
}

std::string tensor_to_json(const Tensor3<Complex>& t, bool pretty) {
  return dump(tensor_doc(t), pretty);
}

std::string tensor_to_json(const TensorVariant& t, bool pretty) {
  return std::visit([&](const auto& tt) { return dump(tensor_doc(tt), pretty); }, t);
}

std::string membership_report_to_json(const MembershipReport& rep, bool pretty) {
  return dump(membership_doc(rep), pretty);
}

std::string decomposition_to_json(const Decomposition& d, bool pretty) {
  return dump(decomposition_doc(d), pretty);
}

std::string signature_report_to_json(const SignatureReport& rep, bool pretty) {
  return dump(signature_doc(rep), pretty);
}

std::string model_report_to_json(const ModelReport& rep, bool pretty) {
  return dump(model_doc(rep), pretty);
}

int n_of(const TensorVariant& t) {
  return std::visit([](const auto& tt) { return tt.n(); }, t);
}

bool is_rational(const TensorVariant& t) {
  return std::holds_alternative<Tensor3<Rational>>(t);
}

Tensor3<Complex> as_complex(const TensorVariant& t) {
  if (const auto* c = std::get_if<Tensor3<Complex>>(&t)) return *c;
  return to_complex_tensor(std::get<Tensor3<Rational>>(t));
}

}  // namespace tenrank
