/* Copyright 2026 The scatser Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SCATSER_PARALLEL_HPP_
#define SCATSER_PARALLEL_HPP_

namespace scatser {

// Kernels that have an OpenMP loop take this; kSerial runs the same loop on
// the calling thread. Results are identical either way: every iteration
// writes its own output slot and no reductions cross iterations.
enum class Execution { kSerial, kParallel };

/// Worker count: SCATFEAT_THREADS if set and positive, else OpenMP's default.
int DefaultThreadCount();

/// Sets the OpenMP worker count used by kParallel kernels.
void SetThreadCount(int n);

}  // namespace scatser

#endif  // SCATSER_PARALLEL_HPP_
