#pragma once

#include <string>
#include <vector>

#include "rotorchan/types.hpp"

namespace rotorchan {

// What the cell values mean; recorded in CSV/raster sidecars.
enum class FieldKind { Generic, Probability, Exponent, Intensity };

const char* field_kind_name(FieldKind k);

// Scalar field over the unit torus on a G x G grid of cell centers.
// Cells are stored row-major with q fastest: value(iq, ip) = values[ip*G+iq],
// cell center (q,p) = ((iq+1/2)/G, (ip+1/2)/G).
struct PhaseSpaceField {
  int grid = 0;
  FieldKind kind = FieldKind::Generic;
  std::vector<double> values;

  PhaseSpaceField() = default;
  PhaseSpaceField(int g, FieldKind k)
      : grid(g), kind(k), values(static_cast<size_t>(g) * g, 0.0) {}

  double& at(int iq, int ip) {
    return values[static_cast<size_t>(ip) * grid + iq];
  }
  double at(int iq, int ip) const {
    return values[static_cast<size_t>(ip) * grid + iq];
  }
  double cell_q(int iq) const { return (iq + 0.5) / grid; }
  double cell_p(int ip) const { return (ip + 0.5) / grid; }
  double sum() const;
};

// CSV with header "q,p,value", one row per cell, q fastest. 17 significant
// digits so a round trip is bit-exact.
void write_field_csv(const PhaseSpaceField& field, const std::string& path);

PhaseSpaceField read_field_csv(const std::string& path);

}  // namespace rotorchan
