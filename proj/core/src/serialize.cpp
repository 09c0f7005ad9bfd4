#include "euler2d/serialize.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "euler2d/rng.hpp"
#include "euler2d/sobolev.hpp"

namespace euler2d {

using nlohmann::json;

json field_to_json(const SpectralField& f) {
  json modes = json::array();
  const auto ms = f.modes();
  for (std::size_t s = 0; s < f.size(); ++s) {
    modes.push_back({ms[s].k1, ms[s].k2, f[s].real(), f[s].imag()});
  }
  return {{"schema", kFieldSchema},
          {"period", f.period()},
          {"cutoff", {f.cutoff().n1, f.cutoff().n2}},
          {"modes", std::move(modes)}};
}

SpectralField field_from_json(const json& j) {
  try {
    if (j.contains("schema") && j.at("schema").get<std::string>() != kFieldSchema) {
      throw std::invalid_argument("unsupported field schema '" + j.at("schema").get<std::string>() + "'");
    }
    const double period = j.at("period").get<double>();
    const auto& cut = j.at("cutoff");
    if (!cut.is_array() || cut.size() != 2) throw std::invalid_argument("cutoff must be [n1, n2]");
    SpectralField f(period, Cutoff{cut[0].get<int>(), cut[1].get<int>()});
    bool first = true;
    ModeIndex prev{};
    for (const auto& row : j.at("modes")) {
      if (!row.is_array() || row.size() != 4) throw std::invalid_argument("mode rows are [k1, k2, re, im]");
      const ModeIndex k{row[0].get<int>(), row[1].get<int>()};
      if (!first && !(prev < k)) throw std::invalid_argument("modes must be strictly lexicographic");
      if (f.layout().slot(k) < 0) throw std::invalid_argument("mode outside the positive box");
      f.set(k, {row[2].get<double>(), row[3].get<double>()});
      prev = k;
      first = false;
    }
    return f;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed field record: ") + e.what());
  }
}

void write_field_jsonl(std::ostream& os, const std::vector<SpectralField>& fields) {
  for (const auto& f : fields) os << field_to_json(f).dump() << '\n';
}

std::vector<SpectralField> read_field_jsonl(std::istream& is) {
  std::vector<SpectralField> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("malformed JSONL line: ") + e.what());
    }
    // Ensemble and trajectory records wrap the field.
    out.push_back(field_from_json(j.contains("field") ? j.at("field") : j));
  }
  return out;
}

json ensemble_member_to_json(std::size_t index, const SpectralField& f) {
  return {{"schema", kEnsembleSchema}, {"index", index}, {"field", field_to_json(f)}};
}

json snapshot_to_json(const Snapshot& s) {
  return {{"schema", kTrajectorySchema},
          {"t", s.t},
          {"E", energy(s.field)},
          {"S", enstrophy(s.field)},
          {"field", field_to_json(s.field)}};
}

json to_json(Cutoff c) { return json::array({c.n1, c.n2}); }

json to_json(const GibbsParams& p) {
  return {{"gamma", p.gamma}, {"period", p.period}, {"cutoff", to_json(p.cutoff)}};
}

json to_json(const IntegratorConfig& c) {
  return {{"scheme", to_string(c.scheme)},
          {"dt", c.dt},
          {"t_final", c.t_final},
          {"fixed_point_tol", c.fixed_point_tol},
          {"max_fixed_point_iters", c.max_fixed_point_iters},
          {"snapshot_stride", c.snapshot_stride}};
}

json to_json(const RngStream& r) {
  return {{"algorithm", std::string(kRngAlgorithm)},
          {"master_seed", r.master_seed},
          {"stream_id", r.stream_id}};
}

}  // namespace euler2d
