#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lienard/abelian.hpp"
#include "lienard/bounds.hpp"
#include "lienard/constructor.hpp"
#include "lienard/verifier.hpp"

namespace lienard {

using Json = nlohmann::ordered_json;

/// Deterministic rendering with every float at 17 significant digits.
/// Non-finite floats become null.
std::string dump(const Json& j, int indent = 2);

Json to_json(const Polynomial& p);
Json to_json(const PeriodAnnulus& a);
Json to_json(const Provenance& p);
Json to_json(const ZCertificate& c);
Json to_json(const ConstructedSystem& sys);
Json to_json(const MelnikovProfile& prof);
Json to_json(const BoundRecord& r);
Json to_json(const CycleCount& c);
Json to_json(const StableCount& s);
Json to_json(const Triple& t);

/// Reads the system format written by to_json. Only "F" and "g" are
/// required; a missing certificate defaults to Z(max(1, deg F − 1), deg g, 0).
ConstructedSystem system_from_json(const Json& j);
ConstructedSystem load_system(const std::string& path);
Json load_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// `h,M` rows.
std::string profile_csv(const MelnikovProfile& prof);
/// `n,m,bound,source` rows, bound as the integer ceiling.
std::string bounds_csv(const std::vector<BoundRecord>& table);

/// Parses "c0,c1,..." into ascending coefficients.
Polynomial parse_coefficients(const std::string& text);

}  // namespace lienard
