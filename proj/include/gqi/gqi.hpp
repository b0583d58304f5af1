// Copyright 2026 The gaussian-qi Authors
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

#include "gqi/config.hpp"
#include "gqi/numerics.hpp"
#include "gqi/phase_space.hpp"
#include "gqi/unitaries.hpp"
#include "gqi/measurements.hpp"
#include "gqi/entanglement.hpp"
#include "gqi/discrimination.hpp"
#include "gqi/protocols.hpp"
#include "gqi/channels.hpp"
#include "gqi/qkd.hpp"
#include "gqi/cluster.hpp"
#include "gqi/fock_oracle.hpp"
#include "gqi/io.hpp"
