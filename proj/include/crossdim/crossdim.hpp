// Copyright 2026 The crossdim Authors
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

#pragma once

#include "crossdim/csv.hpp"
#include "crossdim/dynamics.hpp"
#include "crossdim/linalg.hpp"
#include "crossdim/matrix.hpp"
#include "crossdim/projection.hpp"
#include "crossdim/quotient.hpp"
#include "crossdim/scenario.hpp"
#include "crossdim/stp.hpp"
#include "crossdim/transient.hpp"
#include "crossdim/vspace.hpp"
