// Copyright 2026 The ZNE Lab Authors
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

#ifndef ZNELAB_PARALLEL_H_
#define ZNELAB_PARALLEL_H_

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace znelab {

/// Worker count for a request of `jobs` (0 = runtime default).
inline int resolve_jobs(int jobs) {
#ifdef _OPENMP
  return jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
  return 1;
#endif
}

/// Runs body(i) for i in [0, n) on up to `jobs` OpenMP workers. Every index
/// must write only its own output slot. The first exception thrown by any
/// iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(long n, int jobs, Body &&body) {
  const int threads = resolve_jobs(jobs);
  std::exception_ptr error;
  std::mutex error_mu;
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1 && n > 1)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace znelab

#endif  // ZNELAB_PARALLEL_H_
