#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "vixsmile/model.hpp"

namespace vixsmile::mc {

struct SimGrid {
    double maturity = 0.1;
    double delta = 30.0 / 365.0;
    std::size_t n_inner = 64;
    std::size_t n_paths = 200000;
    std::uint64_t seed = 42;
    std::size_t chunk_size = 4096;

    void validate() const;
};

enum class UnderlyingKind { Vix, Rv };

const char* underlying_name(UnderlyingKind kind) noexcept;

struct PathBatch {
    UnderlyingKind kind = UnderlyingKind::Vix;
    std::vector<double> samples;
    SimGrid grid;
    model::ModelParams params;
};

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Exact joint-Gaussian sampler for either underlying. Immutable once built and
/// safe to share between threads.
class Sampler {
public:
    /// VIX_T: conditioning factors X_T(s_i) on nodes uniform in [T, T+delta].
    static Sampler build_vix(const model::ModelParams& params, const SimGrid& grid);
    /// RV_T: B_t on nodes t_i = i T / n, i = 1..n.
    static Sampler build_rv(const model::ModelParams& params, const SimGrid& grid);

    Sampler(Sampler&&) noexcept;
    Sampler& operator=(Sampler&&) noexcept;
    ~Sampler();

    UnderlyingKind kind() const noexcept;
    const SimGrid& grid() const noexcept;
    const model::ModelParams& params() const noexcept;
    std::span<const double> nodes() const noexcept;
    /// Variance of the Gaussian factor at each node (Wick correction).
    std::span<const double> node_variances() const noexcept;
    /// Covariance entry (i, j) as assembled before factorization.
    double covariance(std::size_t i, std::size_t j) const;
    /// Diagonal jitter that was needed for the Cholesky factorization (0 if none).
    double jitter() const noexcept;

    /// Draws grid().n_paths samples with grid().seed. Worker count affects speed only.
    PathBatch sample(unsigned workers = 0) const;
    PathBatch sample(std::size_t n_paths, std::uint64_t seed, unsigned workers = 0) const;

    /// Mean and standard error of the simulated variance v (RV) or forward
    /// variance E_T v_s (VIX) at every node.
    std::vector<MeanEstimate> node_moments(std::size_t n_paths, std::uint64_t seed, unsigned workers = 0) const;

private:
    struct State;
    explicit Sampler(std::unique_ptr<State> state);
    std::unique_ptr<State> state_;
};

/// Sample mean with the standard error sample_std / sqrt(n).
MeanEstimate estimate_mean(std::span<const double> values);
MeanEstimate estimate_mean(const PathBatch& batch);

/// Pairwise (cascade) summation; the result depends only on the values and their order.
double pairwise_sum(std::span<const double> values);

/// Number of workers used when 0 is requested.
unsigned default_workers() noexcept;

}  // namespace vixsmile::mc
