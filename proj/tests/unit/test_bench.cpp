#include "mps/bench/bench.hpp"

#include "doctest.h"

#include <sstream>

using namespace mps;
using namespace mps::bench;

TEST_CASE("line fit")
{
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y{5, 8, 11, 14, 17};
  auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(3));
  CHECK(fit.intercept == doctest::Approx(2));
  CHECK(fit.r2 == doctest::Approx(1));

  // symmetric noise around a flat line: no linear trend at all
  std::vector<double> flat{1, 2, 1.5, 2, 1};
  CHECK(fit_line(x, flat).r2 == doctest::Approx(0));
  std::vector<double> one{1};
  CHECK_THROWS_AS(fit_line(one, one), Error);
}

TEST_CASE("crypto bench rows and sizes")
{
  CryptoBenchConfig config;
  config.signer_counts = {1, 2, 4};
  config.data_sizes = {16, 1024};
  config.iterations = 3;
  auto report = bench_crypto(config);
  CHECK(report.by_signers.size() == 3 * 3);
  CHECK(report.by_size.size() == 2 * 3);
  CHECK(report.signature_bytes == 96);
  CHECK(report.public_key_bytes == 48);
  for (const auto& r : report.by_signers) {
    CHECK(r.mean_us > 0);
    CHECK(r.p95_us >= 0);
    CHECK(r.size == config.base_size);
  }
  for (const auto& r : report.by_size)
    CHECK(r.n == config.size_sweep_signers);

  std::ostringstream csv;
  write_csv(csv, report);
  auto text = csv.str();
  CHECK(text.rfind("op,n,size,mean_us,p95_us\n", 0) == 0);
  CHECK(text.find("\nsign,1,256,") != std::string::npos);
  CHECK(text.find("\naggregate,4,256,") != std::string::npos);
  CHECK(text.find("\nverify,3,1024,") != std::string::npos);
  CHECK(text.find("# sizes signature_bytes=96 public_key_bytes=48") != std::string::npos);
}

TEST_CASE("rtt bench counts exchanges")
{
  auto rows = bench_rtt();
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].scenario == "available");
  CHECK(rows[0].rtts == 2);
  CHECK(rows[0].completed);
  CHECK(rows[1].scenario == "unavailable");
  CHECK(rows[1].rtts == 1);
  CHECK_FALSE(rows[1].completed);
  CHECK(rows[2].scenario == "fallback");
  CHECK(rows[2].rtts == 3);
  CHECK(rows[2].completed);

  // counts and virtual times do not depend on the run
  auto again = bench_rtt();
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].rtts == rows[i].rtts);
    CHECK(again[i].virtual_ms == rows[i].virtual_ms);
  }

  std::ostringstream csv;
  write_csv(csv, rows);
  CHECK(csv.str().rfind("scenario,rtts,wall_virtual_ms,completed\navailable,2,", 0) == 0);
}
