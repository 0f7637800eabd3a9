// Copyright 2026 The ucvrp Authors
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

// Umbrella header.

#ifndef UCVRP_UCVRP_HPP_
#define UCVRP_UCVRP_HPP_

#include "ucvrp/backend.hpp"
#include "ucvrp/baselines.hpp"
#include "ucvrp/bench.hpp"
#include "ucvrp/big_solver.hpp"
#include "ucvrp/core.hpp"
#include "ucvrp/general_solver.hpp"
#include "ucvrp/instance_io.hpp"
#include "ucvrp/parallel.hpp"
#include "ucvrp/polar_grid.hpp"
#include "ucvrp/report.hpp"
#include "ucvrp/svg.hpp"
#include "ucvrp/tsp.hpp"

#endif  // UCVRP_UCVRP_HPP_
