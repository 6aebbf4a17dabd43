#include <rotorchan/render.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include <rotorchan/types.hpp>

namespace rotorchan {

namespace {

// Matplotlib viridis anchors at 9 evenly spaced stops; intermediate values
// are linearly interpolated per channel.
constexpr double kViridis[9][3] = {
    {0.267004, 0.004874, 0.329415}, {0.281412, 0.155834, 0.469201},
    {0.244972, 0.287675, 0.537260}, {0.190631, 0.407061, 0.556089},
    {0.147607, 0.511733, 0.557049}, {0.119699, 0.618490, 0.536347},
    {0.208030, 0.718701, 0.472873}, {0.477504, 0.821444, 0.318195},
    {0.993248, 0.906157, 0.143936}};

void viridis_rgb(double u, std::uint8_t rgb[3]) {
  u = std::clamp(u, 0.0, 1.0);
  const double s = u * 8.0;
  const int lo = std::min(static_cast<int>(s), 7);
  const double w = s - lo;
  for (int ch = 0; ch < 3; ++ch) {
    const double v = kViridis[lo][ch] * (1.0 - w) + kViridis[lo + 1][ch] * w;
    rgb[ch] = static_cast<std::uint8_t>(std::lround(v * 255.0));
  }
}

void write_sidecar(const PhaseSpaceField& field, const std::string& path_base,
                   Colormap map, double lo, double hi, const std::string& raster) {
  nlohmann::json meta;
  meta["grid"] = field.grid;
  meta["kind"] = field_kind_name(field.kind);
  meta["colormap"] = colormap_name(map);
  meta["min"] = lo;
  meta["max"] = hi;
  meta["raster"] = raster;
  meta["origin"] = "lower-left";
  meta["rows"] = "p descending";
  std::ofstream out(path_base + ".json", std::ios::trunc);
  if (!out) throw ConfigError("cannot write sidecar for " + path_base);
  out << meta.dump(2) << "\n";
}

}  // namespace

Colormap colormap_from_name(const std::string& name) {
  if (name == "gray") return Colormap::Gray;
  if (name == "viridis") return Colormap::Viridis;
  throw ConfigError("unknown colormap '" + name + "' (expected gray or viridis)");
}

const char* colormap_name(Colormap map) {
  return map == Colormap::Gray ? "gray" : "viridis";
}

std::string render_field(const PhaseSpaceField& field, const std::string& path_base,
                         Colormap map) {
  const int g = field.grid;
  double lo = field.values[0], hi = field.values[0];
  for (const double v : field.values) {
    if (!std::isfinite(v))
      throw ConfigError("field contains a non-finite value, refusing to render");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo;
  const auto unit = [&](double v) { return span > 0.0 ? (v - lo) / span : 0.0; };

  const std::string path = path_base + (map == Colormap::Gray ? ".pgm" : ".ppm");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write raster " + path);
  if (map == Colormap::Gray) {
    out << "P5\n" << g << " " << g << "\n65535\n";
    for (int ip = g - 1; ip >= 0; --ip) {
      for (int iq = 0; iq < g; ++iq) {
        const auto level =
            static_cast<std::uint16_t>(std::lround(unit(field.at(iq, ip)) * 65535.0));
        // netpbm stores the most significant byte first
        const char bytes[2] = {static_cast<char>(level >> 8),
                               static_cast<char>(level & 0xff)};
        out.write(bytes, 2);
      }
    }
  } else {
    out << "P6\n" << g << " " << g << "\n255\n";
    for (int ip = g - 1; ip >= 0; --ip) {
      for (int iq = 0; iq < g; ++iq) {
        std::uint8_t rgb[3];
        viridis_rgb(unit(field.at(iq, ip)), rgb);
        out.write(reinterpret_cast<const char*>(rgb), 3);
      }
    }
  }
  if (!out) throw ConfigError("short write on raster " + path);
  out.close();
  // Sidecar references the raster by name so output trees stay relocatable.
  write_sidecar(field, path_base, map, lo, hi,
                std::filesystem::path(path).filename().string());
  return path;
}

}  // namespace rotorchan
