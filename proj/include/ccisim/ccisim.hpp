// Copyright 2026 The ccisim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "ccisim/config.hpp"
#include "ccisim/errors.hpp"
#include "ccisim/experiments.hpp"
#include "ccisim/gates.hpp"
#include "ccisim/io.hpp"
#include "ccisim/linalg.hpp"
#include "ccisim/model.hpp"
#include "ccisim/parallel.hpp"
#include "ccisim/pulses.hpp"
#include "ccisim/runner.hpp"
#include "ccisim/selftest.hpp"
#include "ccisim/spectral.hpp"
#include "ccisim/sweep_result.hpp"
#include "ccisim/version.hpp"
