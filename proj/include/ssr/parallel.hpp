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

#include <functional>

namespace ssr {

/// Worker threads to use: SSR_TOOLKIT_THREADS if set and positive, otherwise
/// the hardware concurrency (at least 1).
int worker_count();

/// Calls fn(i) for i in [0, count), spread over worker_count() threads. The
/// first exception thrown by any call is rethrown after all workers join.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace ssr
