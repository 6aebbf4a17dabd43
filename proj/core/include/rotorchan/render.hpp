#pragma once

#include <string>

#include <rotorchan/field.hpp>

namespace rotorchan {

enum class Colormap { Gray, Viridis };

// Accepts "gray" or "viridis".
Colormap colormap_from_name(const std::string& name);
const char* colormap_name(Colormap map);

// Writes the field as a binary netpbm raster next to a JSON sidecar that
// records the grid, value range, field kind, and row order. Gray produces a
// 16-bit PGM, viridis an 8-bit RGB PPM. Rows run from p high to p low so the
// image displays with momentum upward; q grows to the right. The value map
// is linear over [min, max]; a constant field renders as all black.
// Returns the raster path (path_base + ".pgm" or ".ppm").
std::string render_field(const PhaseSpaceField& field, const std::string& path_base,
                         Colormap map);

}  // namespace rotorchan
