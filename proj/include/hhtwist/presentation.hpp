#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhtwist/algebra.hpp"

namespace hht {

using Json = nlohmann::ordered_json;

/// {"kind":"Q"|"Fp"|"Qq"|"cyclotomic", "p", "r", "q"}.
FieldSpec field_spec_from_json(const Json& j);
Json field_spec_to_json(const FieldSpec& s);

/// Builds and verifies an algebra from its JSON presentation. Errors name
/// the offending field, e.g. "basis[2].degree: expected an array".
AlgebraPtr algebra_from_json(const Json& j);
Json algebra_to_json(const GradedAlgebra& a);

/// Reads a presentation file; syntax errors report line and column.
AlgebraPtr load_algebra(const std::string& path);

/// Names accepted by builtin_algebra.
std::vector<std::string> builtin_names();
AlgebraPtr builtin_algebra(const std::string& name);

/// The q for which a has the same basis, degrees and structure constants as
/// quantum_complete_intersection(field, q), if any.
std::optional<Scalar> recognize_qci(const GradedAlgebra& a);

}  // namespace hht
