#pragma once

namespace dtc {

// Kernels that loop over independent work items take an Execution argument.
// Serial is the reference path used by the tests; Parallel distributes the
// loop with OpenMP and must produce identical results.
enum class Execution { Serial, Parallel };

}  // namespace dtc
