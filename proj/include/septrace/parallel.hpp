#pragma once
// Chunked parallel loop. SEPTRACE_THREADS caps the worker count.
// Callers must only write to per-index slots; with that discipline the
// results do not depend on scheduling.

#include <cstdint>
#include <functional>

namespace septrace {

int max_threads();

void parallel_for(int64_t count, const std::function<void(int64_t)>& fn);

}  // namespace septrace
