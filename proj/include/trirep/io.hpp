#pragma once

// JSON and CSV forms of the library's value types.
//
// Representation files (.rep.json) carry the seed at the top level
//   {"field": "real"|"complex", "delta", "phi0", "delta0", "v0", "b0",
//    "gauge", "size", "closed", "a", "b", "c", "u", "v", "w", "kappa",
//    "X": {"sub", "diag", "sup"}, "Z": {...}}
// with complex numbers written as [re, im]. Doubles are written with 17
// significant digits so a file reproduces the in-memory values exactly.

#include "trirep/algebra.hpp"
#include "trirep/families.hpp"
#include "trirep/poly.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>

namespace trirep {

using Json = nlohmann::ordered_json;

/// Accepts "1.5", "-2e-3", "0.5+0.25i", "3-i", "2i".
Complex parse_complex(std::string_view text);

Json scalar_to_json(double x);
Json scalar_to_json(const Complex& x);
/// Numbers or [re, im] pairs.
Complex complex_from_json(const Json& j);

template <FieldScalar Scalar>
Json params_to_json(const AlgebraParams<Scalar>& p);

template <FieldScalar Scalar>
AlgebraParams<Scalar> params_from_json(const Json& j);

/// True when any seed in `j` is written as an [re, im] pair.
bool json_is_complex(const Json& j);

template <FieldScalar Scalar>
Json operator_to_json(const TridiagonalOperator<Scalar>& op);

template <FieldScalar Scalar>
TridiagonalOperator<Scalar> operator_from_json(const Json& j);

Json gauge_to_json(const GaugeChoice& g);
GaugeChoice gauge_from_json(const Json& j);

template <FieldScalar Scalar>
Json representation_to_json(const Representation<Scalar>& rep);

using AnyRepresentation = std::variant<Representation<double>, Representation<Complex>>;

AnyRepresentation representation_from_json(const Json& j);

Json spectral_to_json(const SpectralData& s);
/// Header row "node,weight", 17 significant digits.
std::string spectral_to_csv(const SpectralData& s);

Json family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const Json& j);

Json report_to_json(const FamilyReport& report);

/// Serialized text with a trailing newline; identical input gives identical bytes.
std::string dump(const Json& j);

}  // namespace trirep
