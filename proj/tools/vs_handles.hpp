#pragma once

// Thin C++ conveniences over the C interface: status checks and owning handles.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "vixsmile/vixsmile.h"

namespace vstool {

class StatusError : public std::runtime_error {
public:
    StatusError(vs_status status, const std::string& message)
        : std::runtime_error(message), status_(status) {}
    vs_status status() const noexcept { return status_; }

private:
    vs_status status_;
};

inline void check(vs_status status, const char* what) {
    if (status != VS_OK) {
        throw StatusError(status, std::string(what) + ": " + vs_status_string(status) + ": " + vs_last_error());
    }
}

struct SamplerDeleter {
    void operator()(vs_sampler* s) const noexcept { vs_sampler_free(s); }
};
struct BatchDeleter {
    void operator()(vs_batch* b) const noexcept { vs_batch_free(b); }
};

using SamplerPtr = std::unique_ptr<vs_sampler, SamplerDeleter>;
using BatchPtr = std::unique_ptr<vs_batch, BatchDeleter>;

inline SamplerPtr make_sampler(vs_underlying kind, const vs_model_params& p, const vs_sim_grid& grid) {
    vs_sampler* raw = nullptr;
    check(vs_sampler_create(kind, &p, &grid, &raw), "vs_sampler_create");
    return SamplerPtr(raw);
}

inline BatchPtr sample(const vs_sampler* s, std::size_t n_paths, std::uint64_t seed, unsigned workers) {
    vs_batch* raw = nullptr;
    check(vs_sampler_sample(s, n_paths, seed, workers, &raw), "vs_sampler_sample");
    return BatchPtr(raw);
}

inline std::span<const double> samples_of(const vs_batch* b) {
    std::size_t n = 0;
    const double* data = nullptr;
    check(vs_batch_size(b, &n), "vs_batch_size");
    check(vs_batch_samples(b, &data), "vs_batch_samples");
    return {data, n};
}

inline vs_asymptote_result asymptote(vs_formula f, const vs_model_params& p, double delta, double maturity) {
    vs_asymptote_result r{};
    check(vs_asymptote(f, &p, delta, maturity, &r), vs_formula_name(f));
    return r;
}

inline vs_model_params model_params(double v0, double hurst, double beta, double gamma, double nu, double eta) {
    return vs_model_params{v0, hurst, beta, gamma, nu, eta};
}

inline vs_sim_grid sim_grid(double maturity, double delta, std::size_t n_inner, std::size_t n_paths,
                            std::uint64_t seed) {
    vs_sim_grid g;
    vs_sim_grid_default(&g);
    g.maturity = maturity;
    g.delta = delta;
    g.n_inner = n_inner;
    g.n_paths = n_paths;
    g.seed = seed;
    return g;
}

}  // namespace vstool
