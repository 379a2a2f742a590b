#pragma once

#include "mps/bench/scenario.hpp"
#include "support/keys.hpp"

namespace mps::testing {

using bench::FirmwareRule;
using bench::Scenario;
using bench::ScenarioOptions;

} // namespace mps::testing
