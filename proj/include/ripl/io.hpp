#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ripl/certify.hpp"
#include "ripl/counterexamples.hpp"
#include "ripl/fliptest.hpp"
#include "ripl/pattern.hpp"

namespace ripl {

using json = nlohmann::json;

/// CSV exchange format for complex matrices: row-major, every entry expands
/// to two adjacent fields (re, im), so a row of an n-column matrix has 2n
/// fields. Real matrices use one field per entry.
void write_complex_csv(const std::filesystem::path& path, const cmat& A);
cmat read_complex_csv(const std::filesystem::path& path);
void write_real_csv(const std::filesystem::path& path, const rmat& A);
rmat read_real_csv(const std::filesystem::path& path);

/// Binary exchange format: 16-byte header (8-byte magic "RIPLMAT1",
/// little-endian u32 rows, u32 cols) followed by row-major interleaved
/// re/im little-endian f64 pairs.
void write_complex_binary(const std::filesystem::path& path, const cmat& A);
cmat read_complex_binary(const std::filesystem::path& path);

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  rvec pixels;  // row-major, normalized to [0,1]
};

/// Binary PGM (P5), 8-bit or 16-bit big-endian samples.
PgmImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const PgmImage& image);

/// Writes via a temporary file in the same directory and renames into
/// place, so failures never leave partial outputs.
void atomic_write(const std::filesystem::path& path, const std::string& content);
void atomic_write(const std::filesystem::path& path, const std::vector<unsigned char>& bytes);

/// FNV-1a hash of a byte string, used for config provenance.
std::string fnv1a_hex(const std::string& bytes);

json to_json(const SparsityPattern& p);
json to_json(const RatioConstant& eta);
json to_json(const CertificateReport& report);
json to_json(const FlipReport& report);
json to_json(const SweepSummary& summary);
json to_json(const ClaimCheck& claim);
json to_json(const VerificationReport& report);
json to_json(const CounterexampleInstance& instance);  // claims manifest (no matrix payload)

}  // namespace ripl
