// Copyright 2026 The SSR Toolkit Authors
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

// Named reference states. Kets are written |Alice modes>|Bob modes> in the
// occupation basis; single-mode kets |ab> mean Alice holds a, Bob holds b.

#include "ssr/fock.hpp"

namespace ssr::states {

/// sqrt(p0)|01> + sqrt(1 - p0)|10>, one mode per side.
BlockedPureState two_coefficient(double p0);

/// sqrt(1/6)|01> + sqrt(5/6)|10>.
BlockedPureState fig1();

/// (|01> + |10>)/sqrt(2).
BlockedPureState phi_plus();

/// (|01> - |10>)/sqrt(2).
BlockedPureState phi_minus();

/// (|01>_A|10>_B + |10>_A|01>_B)/sqrt(2): one ebit with constant local
/// particle number (two modes per side).
BlockedPureState constant_number_singlet();

/// (|01>_A|01>_B + |10>_A|10>_B)/sqrt(2), also constant local number.
BlockedPureState constant_number_pair();

/// 1/4 (|00><00| + |11><11| + (|01>+|10>)(<01|+<10|)) on one mode per side.
BlockedDensity separable_ssr_example();

}  // namespace ssr::states
