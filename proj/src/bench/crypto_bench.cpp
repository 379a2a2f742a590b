#include "mps/bench/bench.hpp"
#include "mps/crypto/bls.hpp"
#include "mps/crypto/hash.hpp"
#include "mps/crypto/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>

namespace mps::bench {

namespace {

constexpr size_t WarmupIterations = 5;

struct Sample
{
  double mean_us;
  double p95_us;
};

template<typename Fn>
Sample
measure(size_t iterations, Fn&& fn)
{
  for (size_t i = 0; i < WarmupIterations; ++i)
    fn();
  std::vector<double> us(iterations);
  for (auto& t : us) {
    auto start = std::chrono::steady_clock::now();
    fn();
    t = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
  }
  std::sort(us.begin(), us.end());
  double mean = std::accumulate(us.begin(), us.end(), 0.0) / static_cast<double>(us.size());
  size_t idx = static_cast<size_t>(std::ceil(0.95 * static_cast<double>(us.size()))) - 1;
  return {mean, us[std::min(idx, us.size() - 1)]};
}

std::vector<crypto::BlsKeyPair>
bench_keys(size_t n)
{
  std::vector<crypto::BlsKeyPair> keys;
  for (size_t i = 0; i < n; ++i)
    keys.push_back(crypto::bls_keygen(crypto::sha256(as_bytes("bench signer " + std::to_string(i)))));
  return keys;
}

/// One row each for sign, aggregate and verify with `keys.size()` signers over a `size`-byte message.
void
measure_point(std::vector<CryptoRow>& rows, std::span<const crypto::BlsKeyPair> keys, size_t size, size_t iterations)
{
  crypto::DeterministicRandom rng(size);
  Buffer message = rng.bytes(size);
  std::vector<Buffer> wire_pieces;
  std::vector<crypto::BlsPublicKey> pks;
  for (const auto& k : keys) {
    auto piece = crypto::bls_sign(k.sk, message);
    wire_pieces.emplace_back(piece.bytes().begin(), piece.bytes().end());
    pks.push_back(k.pk);
  }
  size_t n = keys.size();

  auto sign = measure(iterations, [&] { (void)crypto::bls_sign(keys[0].sk, message); });
  rows.push_back({"sign", n, size, sign.mean_us, sign.p95_us});

  // pieces arrive on the wire, so aggregation includes decoding and checking each point
  auto aggregate = measure(iterations, [&] {
    std::vector<crypto::BlsSignature> pieces;
    pieces.reserve(n);
    for (const auto& w : wire_pieces)
      pieces.push_back(crypto::BlsSignature::from_bytes(w));
    (void)crypto::bls_aggregate_sigs(pieces);
  });
  rows.push_back({"aggregate", n, size, aggregate.mean_us, aggregate.p95_us});

  std::vector<crypto::BlsSignature> pieces;
  for (const auto& w : wire_pieces)
    pieces.push_back(crypto::BlsSignature::from_bytes(w));
  auto signature = crypto::bls_aggregate_sigs(pieces);
  auto verify = measure(iterations, [&] {
    if (!crypto::bls_verify(crypto::bls_aggregate_pks(pks), message, signature))
      throw Error("benchmark aggregate does not verify");
  });
  rows.push_back({"verify", n, size, verify.mean_us, verify.p95_us});
}

} // namespace

LinearFit
fit_line(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2)
    throw Error("a line fit needs at least two points");
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx == 0 ? 0 : sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (sxx == 0 || syy == 0) ? 0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

double
CryptoReport::spread(std::span<const CryptoRow> sweep, std::string_view op)
{
  double lo = 0, hi = 0;
  bool any = false;
  for (const auto& r : sweep) {
    if (r.op != op)
      continue;
    lo = any ? std::min(lo, r.mean_us) : r.mean_us;
    hi = any ? std::max(hi, r.mean_us) : r.mean_us;
    any = true;
  }
  return any && lo > 0 ? hi / lo : 0;
}

CryptoReport
bench_crypto(const CryptoBenchConfig& config)
{
  size_t max_n = config.size_sweep_signers;
  for (size_t n : config.signer_counts)
    max_n = std::max(max_n, n);
  auto keys = bench_keys(max_n);

  CryptoReport report;
  for (size_t n : config.signer_counts)
    measure_point(report.by_signers, std::span(keys).first(n), config.base_size, config.iterations);
  for (size_t size : config.data_sizes)
    measure_point(report.by_size, std::span(keys).first(config.size_sweep_signers), size, config.iterations);

  std::vector<double> xs, ys;
  for (const auto& r : report.by_signers) {
    if (r.op == "aggregate") {
      xs.push_back(static_cast<double>(r.n));
      ys.push_back(r.mean_us);
    }
  }
  if (xs.size() >= 2)
    report.aggregate_fit = fit_line(xs, ys);

  std::vector<crypto::BlsSignature> pieces;
  std::vector<crypto::BlsPublicKey> pks;
  for (const auto& k : keys) {
    pieces.push_back(crypto::bls_sign(k.sk, as_bytes("size check")));
    pks.push_back(k.pk);
  }
  report.signature_bytes = crypto::bls_aggregate_sigs(pieces).bytes().size();
  report.public_key_bytes = crypto::bls_aggregate_pks(pks).bytes().size();
  return report;
}

void
write_csv(std::ostream& os, const CryptoReport& report)
{
  os << "op,n,size,mean_us,p95_us\n";
  for (const auto* sweep : {&report.by_signers, &report.by_size}) {
    for (const auto& r : *sweep)
      os << r.op << ',' << r.n << ',' << r.size << ',' << r.mean_us << ',' << r.p95_us << '\n';
  }
  os << "# aggregate_fit slope_us_per_signer=" << report.aggregate_fit.slope
     << " intercept_us=" << report.aggregate_fit.intercept << " r2=" << report.aggregate_fit.r2 << '\n';
  os << "# sizes signature_bytes=" << report.signature_bytes << " public_key_bytes=" << report.public_key_bytes
     << '\n';
}

} // namespace mps::bench
