#include <rotorchan/storage.hpp>

#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rotorchan {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64_le(const std::string& s, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[off + i])) << (8 * i);
  return v;
}

void put_double_le(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64_le(out, bits);
}

double get_double_le(const std::string& s, std::size_t off) {
  const std::uint64_t bits = get_u64_le(s, off);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string& text) { return fnv1a64(text.data(), text.size()); }

std::uint64_t fnv1a64_file(const std::string& path) {
  const std::string bytes = read_file(path);
  return fnv1a64(bytes.data(), bytes.size());
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ConfigError("short write on " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("cannot rename " + tmp + " over " + path);
}

void save_operator(const OperatorRecord& rec, const std::string& path) {
  json header;
  header["kind"] = rec.kind;
  header["rows"] = rec.data.rows();
  header["cols"] = rec.data.cols();
  header["layout"] = "row-major";
  header["scalar"] = "complex128-le";
  header["convention"] = kVecConvention;
  json params = json::object();
  for (const auto& [key, value] : rec.params) params[key] = value;
  header["params"] = params;
  const std::string head = header.dump();

  std::string out;
  out.reserve(12 + head.size() + 16 * static_cast<std::size_t>(rec.data.size()));
  out += "RCOP";
  put_u64_le(out, head.size());
  out += head;
  for (long long i = 0; i < rec.data.rows(); ++i)
    for (long long j = 0; j < rec.data.cols(); ++j) {
      put_double_le(out, rec.data(i, j).real());
      put_double_le(out, rec.data(i, j).imag());
    }
  atomic_write_text(path, out);
}

OperatorRecord load_operator(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < 12 || bytes.compare(0, 4, "RCOP") != 0)
    throw ConfigError(path + " is not an operator container");
  const std::uint64_t hlen = get_u64_le(bytes, 4);
  if (bytes.size() < 12 + hlen) throw ConfigError(path + " has a truncated header");
  const json header = json::parse(bytes.substr(12, hlen));
  if (header.at("convention").get<std::string>() != kVecConvention)
    throw ConfigError(path + " uses an unknown vectorization convention");
  OperatorRecord rec;
  rec.kind = header.at("kind").get<std::string>();
  const auto rows = header.at("rows").get<long long>();
  const auto cols = header.at("cols").get<long long>();
  for (const auto& [key, value] : header.at("params").items())
    rec.params.emplace_back(key, value.get<double>());
  const std::size_t need = 12 + hlen + 16ull * rows * cols;
  if (bytes.size() != need) throw ConfigError(path + " has a truncated payload");
  rec.data.resize(rows, cols);
  std::size_t off = 12 + hlen;
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j) {
      rec.data(i, j) = cxd(get_double_le(bytes, off), get_double_le(bytes, off + 8));
      off += 16;
    }
  return rec;
}

void save_koopman_sparse(const KoopmanChannel& chan, const std::string& path) {
  json header;
  header["kind"] = "koopman-channel";
  header["cutoff"] = chan.cutoff;
  header["alpha"] = chan.alpha;
  header["b"] = chan.b;
  header["axis"] = axis_name(chan.axis);
  header["nnz"] = chan.matrix.nonZeros();
  header["convention"] = kVecConvention;
  std::string out = header.dump();
  out += "\n";
  for (int col = 0; col < chan.matrix.outerSize(); ++col)
    for (SparseRealMatrix::InnerIterator it(chan.matrix, col); it; ++it) {
      out += std::to_string(it.row());
      out += " ";
      out += std::to_string(it.col());
      out += " ";
      out += fmt_double(it.value());
      out += "\n";
    }
  atomic_write_text(path, out);
}

KoopmanChannel load_koopman_sparse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + " is empty");
  const json header = json::parse(line);
  if (header.at("kind").get<std::string>() != "koopman-channel" ||
      header.at("convention").get<std::string>() != kVecConvention)
    throw ConfigError(path + " is not a channel container");
  KoopmanChannel chan;
  chan.cutoff = header.at("cutoff").get<int>();
  chan.alpha = header.at("alpha").get<double>();
  chan.b = header.at("b").get<double>();
  chan.axis = header.at("axis").get<std::string>() == "R1" ? Axis::R1 : Axis::R2;
  const auto nnz = header.at("nnz").get<long long>();
  const long long dim = fourier_dim(chan.cutoff);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(nnz));
  long long row, col;
  double value;
  while (in >> row >> col >> value) trips.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
  if (static_cast<long long>(trips.size()) != nnz)
    throw ConfigError(path + " entry count disagrees with its header");
  chan.matrix.resize(dim, dim);
  chan.matrix.setFromTriplets(trips.begin(), trips.end());
  return chan;
}

void write_eigenvalue_csv(const std::string& path, const std::string& run_id,
                          const SpectralDecomposition& spec) {
  std::string out = "run_id,index,re,im,modulus,real_flag,pair_index\n";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    out += run_id;
    out += ",";
    out += std::to_string(i);
    out += ",";
    out += fmt_double(spec.values[i].real());
    out += ",";
    out += fmt_double(spec.values[i].imag());
    out += ",";
    out += fmt_double(std::abs(spec.values[i]));
    out += ",";
    out += spec.real_flag[i] ? "1" : "0";
    out += ",";
    out += std::to_string(spec.pair_index[i]);
    out += "\n";
  }
  atomic_write_text(path, out);
}

std::string format_sweep_row(const SweepRow& row) {
  std::string s = fmt_double(row.alpha);
  s += ",";
  s += fmt_double(row.lambda1_abs);
  s += ",";
  s += row.backend;
  s += ",";
  s += fmt_double(row.residual);
  return s;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::string out = "alpha,lambda1_abs,backend,residual\n";
  for (const auto& row : rows) {
    out += format_sweep_row(row);
    out += "\n";
  }
  atomic_write_text(path, out);
}

void write_radii_csv(const std::string& path, const std::vector<RadiiRow>& rows) {
  std::string out = "N,b,r_in,r_out,ep,ep_bessel\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n_dim);
    out += ",";
    out += fmt_double(row.b);
    out += ",";
    out += fmt_double(row.r_in);
    out += ",";
    out += fmt_double(row.r_out);
    out += ",";
    out += fmt_double(row.ep);
    out += ",";
    out += fmt_double(row.ep_bessel);
    out += "\n";
  }
  atomic_write_text(path, out);
}

void write_correlation_csv(const std::string& path, const std::vector<CorrelationRow>& rows) {
  std::string out = "t,re,im,abs\n";
  for (const auto& row : rows) {
    out += std::to_string(row.t);
    out += ",";
    out += fmt_double(row.value.real());
    out += ",";
    out += fmt_double(row.value.imag());
    out += ",";
    out += fmt_double(std::abs(row.value));
    out += "\n";
  }
  atomic_write_text(path, out);
}

std::vector<SweepRow> load_sweep_progress(const std::string& path,
                                          const std::string& config_hash) {
  std::ifstream in(path);
  if (!in) return {};
  json doc;
  try {
    in >> doc;
  } catch (const json::exception&) {
    return {};
  }
  if (!doc.is_object() || doc.value("config_hash", "") != config_hash) return {};
  std::vector<SweepRow> rows;
  for (const auto& item : doc.at("rows")) {
    SweepRow row;
    row.alpha = item.at("alpha").get<double>();
    row.lambda1_abs = item.at("lambda1_abs").get<double>();
    row.backend = item.at("backend").get<std::string>();
    row.residual = item.at("residual").get<double>();
    if (item.at("hash").get<std::string>() != hash_hex(fnv1a64(format_sweep_row(row))))
      return {};  // corrupt row invalidates the whole sidecar
    rows.push_back(row);
  }
  return rows;
}

void append_sweep_progress(const std::string& path, const std::string& config_hash,
                           const SweepRow& row) {
  std::vector<SweepRow> rows = load_sweep_progress(path, config_hash);
  rows.push_back(row);
  json doc;
  doc["config_hash"] = config_hash;
  doc["rows"] = json::array();
  for (const auto& r : rows) {
    json item;
    item["alpha"] = r.alpha;
    item["lambda1_abs"] = r.lambda1_abs;
    item["backend"] = r.backend;
    item["residual"] = r.residual;
    item["hash"] = hash_hex(fnv1a64(format_sweep_row(r)));
    doc["rows"].push_back(item);
  }
  atomic_write_text(path, doc.dump(2) + "\n");
}

void append_manifest(const std::string& manifest_path, const ManifestEntry& entry) {
  json doc = json::array();
  {
    std::ifstream in(manifest_path);
    if (in) {
      try {
        in >> doc;
      } catch (const json::exception&) {
        throw ConfigError(manifest_path + " exists but is not valid JSON");
      }
      if (!doc.is_array()) throw ConfigError(manifest_path + " is not a manifest array");
    }
  }
  json e;
  e["run_id"] = entry.run_id;
  e["command"] = entry.command;
  e["started"] = entry.started;
  e["finished"] = entry.finished;
  e["tool_version"] = entry.tool_version;
  e["seed"] = entry.seed;
  json cfg = json::object();
  for (const auto& [key, value] : entry.config) cfg[key] = value;
  e["config"] = cfg;
  e["outputs"] = json::array();
  for (const auto& path : entry.outputs) {
    json f;
    f["path"] = path;
    const std::string bytes = read_file(path);
    f["bytes"] = bytes.size();
    f["fnv1a64"] = hash_hex(fnv1a64(bytes.data(), bytes.size()));
    e["outputs"].push_back(f);
  }
  doc.push_back(e);
  atomic_write_text(manifest_path, doc.dump(2) + "\n");
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace rotorchan
