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

// Differential-drive plant and overhead-camera observation model.

#ifndef ISPACE_PLANT_H_
#define ISPACE_PLANT_H_

#include "ispace/controller.h"
#include "ispace/hpf.h"
#include "ispace/workspace.h"

namespace ispace::plant {

struct PlantState {
  WorldPose pose;
  controller::ControlCommand applied;
  double clock = 0.0;
};

struct CameraModel {
  double rate_hz = 5.0;
  // Report the containing pixel center instead of the exact position.
  bool quantize = false;

  void Validate() const;
};

// Exact integration of a constant (v, omega) arc over dt > 0.
WorldPose Step(const WorldPose& pose, double v, double omega, double dt);

// Throws std::out_of_range if the pose is outside the workspace.
WorldPose Observe(const WorldPose& pose, const CameraModel& camera,
                  const WorkspaceFrame& frame);

// Point-robot collision: the pose's cell is an obstacle. Poses outside the
// workspace count as collisions.
bool Collides(const WorldPose& pose, const hpf::BoundaryGrid& boundary,
              const WorkspaceFrame& frame);

}  // namespace ispace::plant

#endif  // ISPACE_PLANT_H_
