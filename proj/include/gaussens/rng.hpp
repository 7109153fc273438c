#pragma once

#include <cstdint>
#include <random>

namespace gaussens {

using Rng = std::mt19937_64;

// Independent stream for (master seed, stream index); used for chains and MC blocks.
Rng make_stream(std::uint64_t master_seed, std::uint64_t stream);

}  // namespace gaussens
