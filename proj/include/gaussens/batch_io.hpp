#pragma once

#include <string>

#include "json.hpp"

#include "gaussens/sampler.hpp"

namespace gaussens {

// Metadata (config hash, seed, acceptance, autocorrelation, discard counts, ESS if given).
nlohmann::json batch_metadata(const SampleBatch& batch);

// CSV dump, one sample per row:
//   sample,chain,eps_index,weight,constraint_residual,symplectic_residual,purity_residual,c_0_0,...
// with the 2N×2N covariance flattened row-major; values printed with %.17g.
std::string batch_csv(const SampleBatch& batch);
SampleBatch read_batch_csv(const std::string& csv, int n_modes);

}  // namespace gaussens
