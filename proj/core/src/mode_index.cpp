#include "euler2d/mode_index.hpp"

#include <stdexcept>
#include <string>

namespace euler2d {

std::vector<ModeIndex> mode_box(Cutoff cutoff) {
  if (cutoff.n1 < 1 || cutoff.n2 < 1) {
    throw std::invalid_argument("mode_box: cutoff components must be >= 1, got (" +
                                std::to_string(cutoff.n1) + ", " + std::to_string(cutoff.n2) +
                                ")");
  }
  std::vector<ModeIndex> modes;
  modes.reserve(cutoff.positive_count());
  for (int k2 = 1; k2 <= cutoff.n2; ++k2) modes.push_back({0, k2});
  for (int k1 = 1; k1 <= cutoff.n1; ++k1) {
    for (int k2 = -cutoff.n2; k2 <= cutoff.n2; ++k2) modes.push_back({k1, k2});
  }
  return modes;
}

}  // namespace euler2d
