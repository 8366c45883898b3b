// Copyright 2026 The distinf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DISTINF_THREAD_POOL_H_
#define DISTINF_THREAD_POOL_H_

#include <functional>

namespace distinf {

// Number of workers for a requested thread count; 0 means all hardware cores.
int resolve_threads(int requested);

// Runs fn(0), ..., fn(count - 1) on up to `threads` workers. Tasks must be
// independent and write only to their own output slots; the first exception
// thrown by any task is rethrown after all workers finish.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace distinf

#endif  // DISTINF_THREAD_POOL_H_
