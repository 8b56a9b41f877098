#pragma once

#include "fem_accuracy/accuracy_prob.hpp"
#include "fem_accuracy/bounds.hpp"
#include "fem_accuracy/fem1d.hpp"
#include "fem_accuracy/norms.hpp"
#include "fem_accuracy/pk_basis.hpp"
#include "fem_accuracy/simplex.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace fem_accuracy {

using Json = nlohmann::ordered_json;

/// Shortest text that round-trips the double ("%.17g"); "nan"/"inf" as-is.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

Json to_json(const SimplexMesh& mesh);
/// Nodes as exact fractions and each polynomial as {exponents, coefficient} terms.
Json to_json(const PkBasis& basis);
Json to_json(const NormResult& r);
Json to_json(const BoundReport& r);
Json to_json(const ConstantBundle& b);
Json to_json(const ErrorReport& r);

}  // namespace fem_accuracy
