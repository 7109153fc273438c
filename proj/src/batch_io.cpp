#include "gaussens/batch_io.hpp"

#include <cstdio>
#include <sstream>

#include "gaussens/errors.hpp"

namespace gaussens {

nlohmann::json batch_metadata(const SampleBatch& b) {
    return {{"n_modes", b.n_modes},
            {"method", to_string(b.method)},
            {"epsilon_schedule", b.epsilons},
            {"n_samples", b.samples.size()},
            {"config_sha256", b.config_hash},
            {"seed", b.seed},
            {"acceptance_rate", b.acceptance_rate},
            {"lag1_autocorrelation", b.autocorrelation},
            {"proposals", b.proposals},
            {"discarded", b.discarded},
            {"discard_fraction", b.discard_fraction},
            {"final_step_sizes", b.final_step_sizes},
            {"matrix_layout", "row-major 2N x 2N covariance per CSV row, interleaved (q1,p1,...,qN,pN)"}};
}

std::string batch_csv(const SampleBatch& b) {
    std::ostringstream os;
    const int dim = 2 * b.n_modes;
    os << "sample,chain,eps_index,weight,constraint_residual,symplectic_residual,purity_residual";
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) os << ",c_" << r << '_' << c;
    os << '\n';
    char buf[40];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << ',' << buf;
    };
    for (std::size_t k = 0; k < b.samples.size(); ++k) {
        os << k << ',' << b.chain_index[k] << ',' << b.epsilon_index[k];
        num(b.weights[k]);
        num(b.constraint_residuals[k]);
        num(b.symplectic_residuals[k]);
        num(b.purity_residuals[k]);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) num(b.samples[k](r, c));
        os << '\n';
    }
    return os.str();
}

SampleBatch read_batch_csv(const std::string& csv, int n_modes) {
    SampleBatch b;
    b.n_modes = n_modes;
    const int dim = 2 * n_modes;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty batch CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        if (static_cast<int>(v.size()) != 7 + dim * dim) throw ConfigError("batch CSV row has the wrong width");
        b.chain_index.push_back(static_cast<int>(v[1]));
        b.epsilon_index.push_back(static_cast<int>(v[2]));
        b.weights.push_back(v[3]);
        b.constraint_residuals.push_back(v[4]);
        b.symplectic_residuals.push_back(v[5]);
        b.purity_residuals.push_back(v[6]);
        Matrix c(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int cc = 0; cc < dim; ++cc) c(r, cc) = v[static_cast<std::size_t>(7 + r * dim + cc)];
        b.samples.push_back(std::move(c));
    }
    return b;
}

}  // namespace gaussens
