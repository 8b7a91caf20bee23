// Copyright 2026 The ltiproc Authors
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

#include "ltiproc/behavior.hpp"
#include "ltiproc/errors.hpp"
#include "ltiproc/hermite.hpp"
#include "ltiproc/laurent_matrix.hpp"
#include "ltiproc/laurent_polynomial.hpp"
#include "ltiproc/process.hpp"
#include "ltiproc/rational.hpp"
#include "ltiproc/roots.hpp"
#include "ltiproc/sim.hpp"
#include "ltiproc/spectral.hpp"
#include "ltiproc/text_format.hpp"
