// Copyright 2026 The robustfo Authors
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

#pragma once

#include "robustfo/common.hpp"
#include "robustfo/cones.hpp"
#include "robustfo/uncertainty.hpp"
#include "robustfo/lp.hpp"
#include "robustfo/nnls.hpp"
#include "robustfo/cutting_plane.hpp"
#include "robustfo/program.hpp"
#include "robustfo/tangential.hpp"
#include "robustfo/robust.hpp"
#include "robustfo/calculus.hpp"
#include "robustfo/golden.hpp"
#include "robustfo/io.hpp"
