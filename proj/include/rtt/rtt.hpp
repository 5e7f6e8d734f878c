// Copyright 2026 The rtt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "rtt/decomposition.hpp"
#include "rtt/exact.hpp"
#include "rtt/harness.hpp"
#include "rtt/limit_laws.hpp"
#include "rtt/occupancy.hpp"
#include "rtt/permutation.hpp"
#include "rtt/rng.hpp"
#include "rtt/shuffle.hpp"
#include "rtt/stats.hpp"
#include "rtt/verify.hpp"
