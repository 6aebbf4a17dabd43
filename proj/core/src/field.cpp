#include "rotorchan/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rotorchan {

const char* field_kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::Probability: return "probability";
    case FieldKind::Exponent: return "exponent";
    case FieldKind::Intensity: return "intensity";
    default: return "generic";
  }
}

double PhaseSpaceField::sum() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

void write_field_csv(const PhaseSpaceField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "q,p,value\n";
  char buf[96];
  for (int ip = 0; ip < field.grid; ++ip) {
    for (int iq = 0; iq < field.grid; ++iq) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", field.cell_q(iq),
                    field.cell_p(ip), field.at(iq, ip));
      out << buf;
    }
  }
}

PhaseSpaceField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  std::string line;
  std::getline(in, line);
  if (line != "q,p,value") throw std::runtime_error("bad field header: " + path);
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    vals.push_back(std::strtod(line.c_str() + c2 + 1, nullptr));
  }
  int g = static_cast<int>(std::llround(std::sqrt(double(vals.size()))));
  if (static_cast<size_t>(g) * g != vals.size())
    throw std::runtime_error("field is not square: " + path);
  PhaseSpaceField f(g, FieldKind::Generic);
  f.values = std::move(vals);
  return f;
}

}  // namespace rotorchan
