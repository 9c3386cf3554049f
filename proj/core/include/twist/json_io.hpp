#pragma once

#include <json.hpp>

#include "twist/bounds.hpp"
#include "twist/characters.hpp"
#include "twist/cycmat.hpp"
#include "twist/cyclotomic.hpp"
#include "twist/kernels.hpp"
#include "twist/qseries.hpp"

namespace twist {

/// Key order is preserved so that emitted documents are stable.
using Json = nlohmann::ordered_json;

/// {"order": m, "coeffs": ["p/q", ...]}
Json to_json(const Cyclotomic& x);
/// Inverse of to_json; throws std::invalid_argument on malformed input.
Cyclotomic cyclotomic_from_json(const Json& j);

Json to_json(const DirichletCharacter& chi, bool with_values = false);
Json to_json(const KernelSpec& spec);
Json to_json(const CoeffTable& table);
Json to_json(const CuspidalityCertificate& cert);
Json to_json(const BoundReport& report);
Json to_json(const CycMatrix& m);
Json to_json(const QSeries& f);

}  // namespace twist
