#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <rotorchan/koopman.hpp>
#include <rotorchan/spectral.hpp>
#include <rotorchan/types.hpp>

namespace rotorchan {

// 64-bit FNV-1a over raw bytes; the project-wide content hash.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& text);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hash_hex(std::uint64_t h);

// Writes to a sibling temp file and renames over the target, so readers
// never observe a partially written file.
void atomic_write_text(const std::string& path, const std::string& text);

// Dense operator container: magic "RCOP", little-endian u64 header length,
// JSON header, then the row-major complex128 payload in little-endian order.
// The header carries the vectorization convention tag so files are
// self-describing across tools.
inline constexpr char kVecConvention[] = "rowvec-R1R2T1T2-v1";

struct OperatorRecord {
  std::string kind;
  std::vector<std::pair<std::string, double>> params;
  Matrix data;
};

void save_operator(const OperatorRecord& rec, const std::string& path);
OperatorRecord load_operator(const std::string& path);

// Sparse channel container: one JSON header line, then "row col value"
// coordinate lines in column-major order.
void save_koopman_sparse(const KoopmanChannel& chan, const std::string& path);
KoopmanChannel load_koopman_sparse(const std::string& path);

// CSV writers. All floating point fields use %.17g so files round-trip
// and are byte-stable for identical inputs.
void write_eigenvalue_csv(const std::string& path, const std::string& run_id,
                          const SpectralDecomposition& spec);

struct SweepRow {
  double alpha = 0.0;
  double lambda1_abs = 0.0;
  std::string backend;
  double residual = 0.0;
};
std::string format_sweep_row(const SweepRow& row);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

struct RadiiRow {
  int n_dim = 0;
  double b = 0.0;
  double r_in = 0.0;
  double r_out = 0.0;
  double ep = 0.0;
  double ep_bessel = 0.0;
};
void write_radii_csv(const std::string& path, const std::vector<RadiiRow>& rows);

struct CorrelationRow {
  int t = 0;
  cxd value;
};
void write_correlation_csv(const std::string& path, const std::vector<CorrelationRow>& rows);

// Sweep progress sidecar: completed rows keyed by alpha, guarded by the
// config hash and a per-row content hash. A config change or a corrupt row
// invalidates the sidecar and the sweep starts fresh.
std::vector<SweepRow> load_sweep_progress(const std::string& path,
                                          const std::string& config_hash);
void append_sweep_progress(const std::string& path, const std::string& config_hash,
                           const SweepRow& row);

// Run manifest: a JSON array in the output directory; every run appends one
// entry listing its outputs with byte counts and content hashes. The
// manifest is rewritten atomically after outputs exist, never before.
struct ManifestEntry {
  std::string run_id;
  std::string command;
  std::string started;
  std::string finished;
  std::string tool_version;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> outputs;
};

void append_manifest(const std::string& manifest_path, const ManifestEntry& entry);

// ISO-8601 UTC wall clock, manifest timestamps only.
std::string timestamp_utc();

}  // namespace rotorchan
