#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gatekit/runtime.hpp"
#include "gatekit/workload.hpp"

namespace gatekit {

struct ScenarioResult {
  std::vector<std::string> task_ids;                 // step order
  std::map<std::string, VerifyDecision> decisions;   // last decision per task
};

// Drives one scripted step end to end: create the task, shape its packets,
// inject the named fault, verify, and walk recovery / rollback / completion
// as the kind dictates. Derailed steps (a legal path not taken) are refused.
void execute_step(TaskRuntime& rt, const ScriptStep& step, ScenarioResult* result = nullptr);

TaskRuntime make_runtime(const ScenarioScript& script, PolicyConfig policy, bool shadow);

TaskRuntime run_scenario(const ScenarioScript& script, PolicyConfig policy, bool shadow = false,
                         ScenarioResult* result = nullptr);

// Expand, run, persist. Workload specs write a full session store plus the
// expanded script; advisory specs write prediction/finalized sample files.
// A failing step persists whatever exists and a PARTIAL marker, then rethrows
// so callers can distinguish a torn run from a finished one.
void simulate_to_dir(const WorkloadSpec& spec, const std::filesystem::path& out,
                     PolicyConfig policy = {});

void write_pgv_fixture(const WorkloadSpec& spec, const std::filesystem::path& out);

}  // namespace gatekit
