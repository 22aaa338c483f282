// Copyright 2026 The softrepair Authors
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

#ifndef SOFTREPAIR_HPP_
#define SOFTREPAIR_HPP_

#include "softrepair/approx_solver.hpp"
#include "softrepair/bench.hpp"
#include "softrepair/classifier.hpp"
#include "softrepair/cost.hpp"
#include "softrepair/dp_solver.hpp"
#include "softrepair/flow_solver.hpp"
#include "softrepair/io.hpp"
#include "softrepair/min_cost_flow.hpp"
#include "softrepair/model.hpp"
#include "softrepair/oracle.hpp"
#include "softrepair/rational.hpp"
#include "softrepair/solve.hpp"

#endif  // SOFTREPAIR_HPP_
