#include "mps/bench/bench.hpp"
#include "mps/bench/scenario.hpp"

#include <ostream>

namespace mps::bench {

namespace {

/// Runs one job and sums the coordinator Interests spent on the QA requirement.
RttRow
run_scenario(std::string label, const net::FabricConfig& fabric, std::set<std::string> offline, bool only_x)
{
  ScenarioOptions options;
  options.fabric = fabric;
  options.offline = std::move(offline);
  Scenario sc(options);

  auto plan = schema::plan_signers(sc.policy.rules.front(), sc.known());
  auto& qa = plan.slots.front();
  if (only_x)
    qa.candidates = {sc.signer("operatorX").key_name};

  RttRow row{std::move(label), 0, 0, true};
  auto start = sc.fabric.now_ms();
  try {
    sc.coordinator->run_job(Scenario::firmware(), plan);
  }
  catch (const rpc::JobFailed&) {
    row.completed = false;
  }
  row.virtual_ms = sc.fabric.now_ms() - start;
  for (const auto& a : sc.coordinator->last_attempts()) {
    if (a.requirement == qa.requirement)
      row.rtts += a.rtts;
  }
  return row;
}

} // namespace

std::vector<RttRow>
bench_rtt(const net::FabricConfig& fabric)
{
  return {
    run_scenario("available", fabric, {}, false),
    run_scenario("unavailable", fabric, {"operatorX"}, true),
    run_scenario("fallback", fabric, {"operatorX"}, false),
  };
}

void
write_csv(std::ostream& os, std::span<const RttRow> rows)
{
  os << "scenario,rtts,wall_virtual_ms,completed\n";
  for (const auto& r : rows)
    os << r.scenario << ',' << r.rtts << ',' << r.virtual_ms << ',' << (r.completed ? "yes" : "no") << '\n';
}

} // namespace mps::bench
