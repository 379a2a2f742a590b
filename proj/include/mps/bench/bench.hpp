#pragma once

#include "mps/net/sim.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mps::bench {

/// Timing of one operation at one signer count and data size.
struct CryptoRow
{
  std::string op; ///< sign | aggregate | verify
  size_t n = 0;
  size_t size = 0;
  double mean_us = 0;
  double p95_us = 0;
};

/// Least-squares line y = intercept + slope * x.
struct LinearFit
{
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct CryptoBenchConfig
{
  std::vector<size_t> signer_counts{2, 4, 8, 16, 32};
  std::vector<size_t> data_sizes{16, 256, 4096, 16384, 65536};
  size_t size_sweep_signers = 3; ///< signer count for the data-size sweep
  size_t base_size = 256;        ///< data size for the signer-count sweep
  size_t iterations = 100;
};

struct CryptoReport
{
  std::vector<CryptoRow> by_signers; ///< signer-count sweep at base_size
  std::vector<CryptoRow> by_size;    ///< data-size sweep at size_sweep_signers
  LinearFit aggregate_fit;           ///< aggregate mean_us against n
  size_t signature_bytes = 0;        ///< aggregate signature size, the same for every n
  size_t public_key_bytes = 0;

  /// Largest over smallest mean of `op` within one sweep.
  static double spread(std::span<const CryptoRow> sweep, std::string_view op);
};

/// Times sign, aggregate and verify (aggregate public keys, then one pairing
/// check) over the signer-count sweep at base_size, and over the data-size
/// sweep at size_sweep_signers signers. Single-threaded.
CryptoReport bench_crypto(const CryptoBenchConfig& config = {});

/// `op,n,size,mean_us,p95_us` rows, then `#` lines with the fit and sizes.
void write_csv(std::ostream& os, const CryptoReport& report);

struct RttRow
{
  std::string scenario; ///< available | unavailable | fallback
  uint32_t rtts = 0;    ///< coordinator Interests spent on the QA requirement
  uint64_t virtual_ms = 0;
  bool completed = false;
};

/// Runs the firmware scenario on the given fabric three ways: all signers
/// up; the only QA candidate down; the first QA candidate down and the
/// second up.
std::vector<RttRow> bench_rtt(const net::FabricConfig& fabric = {.rng_seed = 7});

/// `scenario,rtts,wall_virtual_ms,completed` rows.
void write_csv(std::ostream& os, std::span<const RttRow> rows);

} // namespace mps::bench
