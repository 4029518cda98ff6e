#pragma once

namespace relaxarea {

/// How data-parallel kernels run. `serial` is the reference path used by the tests and the
/// benchmarks; both paths assemble results in the same fixed order, so they agree bitwise.
enum class Execution { serial, parallel };

/// Caps the OpenMP worker count (0 restores the runtime default).
void set_thread_count(int threads);
int thread_count();

}  // namespace relaxarea
