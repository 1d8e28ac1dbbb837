// Copyright 2026 The ispace-nav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Decentralized multi-agent runs: every agent replans on its own potential
// field, treating the other agents as moving obstacles.

#ifndef ISPACE_MULTI_AGENT_H_
#define ISPACE_MULTI_AGENT_H_

#include <vector>

#include "ispace/netloop.h"
#include "ispace/scenario.h"

namespace ispace {

enum class Awareness { kAll, kNearestOnly };
const char* AwarenessName(Awareness awareness);
Awareness ParseAwareness(const std::string& name);

struct DmSample {
  double t = 0.0;
  double dm = 0.0;  // minimum pairwise center distance, m
};

struct MultiRunLog {
  std::vector<RunLog> agents;
  std::vector<DmSample> dm;
  double min_dm = 0.0;
  bool all_reached = false;
  double total_time = 0.0;

  void WriteDmCsv(const std::filesystem::path& path) const;
};

// Obstacle disc radius, in cells, placed around other agents: the
// configuration-space radius 2 * r_agent plus the dilation margin.
int AgentDiscRadiusCells(const Scenario& scenario);

// Requires at least two agents in scenario.multi.agents with starts more than
// 2 * r_agent apart and distinct targets; throws ScenarioError otherwise.
MultiRunLog RunMulti(const Scenario& scenario, Awareness awareness);

}  // namespace ispace

#endif  // ISPACE_MULTI_AGENT_H_
