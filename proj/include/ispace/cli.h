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

// Command-line front end. Exit codes: 0 reached, 1 error, 2 timeout,
// 3 unreachable.

#ifndef ISPACE_CLI_H_
#define ISPACE_CLI_H_

#include <ostream>

#include "ispace/netloop.h"

namespace ispace {

inline constexpr int kExitReached = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTimeout = 2;
inline constexpr int kExitUnreachable = 3;

int ExitCodeFor(Outcome outcome);

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ispace

#endif  // ISPACE_CLI_H_
