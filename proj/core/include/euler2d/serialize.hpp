#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "euler2d/gibbs.hpp"
#include "euler2d/integrator.hpp"
#include "json.hpp"

namespace euler2d {

inline constexpr const char* kFieldSchema = "euler2d.field/1";
inline constexpr const char* kTrajectorySchema = "euler2d.trajectory/1";
inline constexpr const char* kEnsembleSchema = "euler2d.ensemble/1";

/// {"schema", "period", "cutoff": [n1, n2], "modes": [[k1, k2, re, im], ...]}
/// with modes in lexicographic (mode_box) order.
nlohmann::json field_to_json(const SpectralField& f);

/// Inverse of field_to_json. Modes may be omitted (zero) but must be
/// positive, inside the box, unique and lexicographically ordered; throws
/// std::invalid_argument otherwise.
SpectralField field_from_json(const nlohmann::json& j);

/// One compact JSON document per line.
void write_field_jsonl(std::ostream& os, const std::vector<SpectralField>& fields);
std::vector<SpectralField> read_field_jsonl(std::istream& is);

/// {"schema": ensemble, "index", "field"}; read_field_jsonl accepts these lines.
nlohmann::json ensemble_member_to_json(std::size_t index, const SpectralField& f);

/// {"schema", "t", "E", "S", "field"}
nlohmann::json snapshot_to_json(const Snapshot& s);

nlohmann::json to_json(const GibbsParams& p);
nlohmann::json to_json(const IntegratorConfig& c);
nlohmann::json to_json(const RngStream& r);
nlohmann::json to_json(Cutoff c);

}  // namespace euler2d
