// Copyright 2026 The srfuse Authors.
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

#include <cstddef>
#include <functional>

namespace srfuse {

// Process-wide cap on worker threads used by the pixel kernels. Values < 1
// reset to 1. Results never depend on this setting: every parallel loop
// writes disjoint outputs and all reductions run serially in index order.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [begin, end), split into contiguous chunks across at
// most thread_count() threads.
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end,
                  const std::function<void(std::ptrdiff_t)>& fn);

}  // namespace srfuse
