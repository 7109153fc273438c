#pragma once

namespace gaussens {

// Kernels that have an OpenMP path keep a serial reference path with the same
// slab decomposition, so both produce bit-identical results.
enum class Exec { Serial, Parallel };

int max_threads();

}  // namespace gaussens
