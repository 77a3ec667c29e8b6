#include "vixsmile/mc.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "vixsmile/error.hpp"

namespace vixsmile::mc {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kJitterLevels[] = {1e-14, 1e-12, 1e-10};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) { return splitmix64(seed ^ splitmix64(chunk)); }

// Runs job(i) for i in [0, count) on up to `workers` threads. The first exception wins.
template <class Job>
void parallel_for(std::size_t count, unsigned workers, Job&& job) {
    if (workers == 0) {
        workers = default_workers();
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            job(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto run = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) {
        threads.emplace_back(run);
    }
    run();
    for (auto& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

struct Welford {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const Welford& o) {
        if (o.n == 0.0) {
            return;
        }
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }
};

}  // namespace

void SimGrid::validate() const {
    require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain, "SimGrid: maturity must be positive");
    require(std::isfinite(delta) && delta > 0.0, ErrorCode::Domain, "SimGrid: delta must be positive");
    require(n_inner >= 2, ErrorCode::InvalidArgument, "SimGrid: n_inner must be at least 2");
    require(n_paths >= 1, ErrorCode::InvalidArgument, "SimGrid: n_paths must be at least 1");
    require(chunk_size >= 1, ErrorCode::InvalidArgument, "SimGrid: chunk_size must be at least 1");
}

const char* underlying_name(UnderlyingKind kind) noexcept { return kind == UnderlyingKind::Vix ? "vix" : "rv"; }

unsigned default_workers() noexcept {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanEstimate estimate_mean(std::span<const double> values) {
    require(values.size() >= 2, ErrorCode::Degenerate, "estimate_mean: at least two samples are required");
    const double n = static_cast<double>(values.size());
    MeanEstimate out;
    out.n = values.size();
    out.mean = pairwise_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    out.std_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
    return out;
}

MeanEstimate estimate_mean(const PathBatch& batch) { return estimate_mean(std::span<const double>(batch.samples)); }

struct Sampler::State {
    UnderlyingKind kind = UnderlyingKind::Vix;
    SimGrid grid;
    model::ModelParams params;
    std::vector<double> nodes;
    std::vector<double> variances;
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd lower;
    double jitter = 0.0;

    void factorize() {
        Eigen::LLT<Eigen::MatrixXd> llt(covariance);
        if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().allFinite()) {
            lower = llt.matrixL();
            jitter = 0.0;
            return;
        }
        for (double eps : kJitterLevels) {
            Eigen::MatrixXd bumped = covariance;
            bumped.diagonal() *= 1.0 + eps;
            llt.compute(bumped);
            if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().allFinite()) {
                lower = llt.matrixL();
                jitter = eps;
                return;
            }
        }
        throw Error(ErrorCode::NotPositiveDefinite,
                    "sampler: covariance matrix is not positive definite even with 1e-10 diagonal jitter");
    }

    // Maps one row of Gaussian factors to the underlying.
    double underlying(const double* x) const {
        const std::size_t m = nodes.size();
        double inner = 0.0;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            inner += model::wick_mixture(params, x[i], variances[i]);
        }
        const double last = model::wick_mixture(params, x[m - 1], variances[m - 1]);
        if (kind == UnderlyingKind::Vix) {
            const double first = model::wick_mixture(params, x[0], variances[0]);
            const double integral = (0.5 * first + inner + 0.5 * last) / static_cast<double>(m - 1);
            return std::sqrt(integral);
        }
        // RV nodes start at T/n; v(0) = v0 closes the trapezoid on the left.
        inner += model::wick_mixture(params, x[0], variances[0]);
        return (0.5 * params.v0 + inner + 0.5 * last) / static_cast<double>(m);
    }

    // Gaussian factors for paths [first, first + rows) of chunk `chunk`.
    RowMatrix gaussians(std::uint64_t seed, std::size_t chunk, std::size_t rows) const {
        const std::size_t m = nodes.size();
        std::mt19937_64 engine(chunk_seed(seed, chunk));
        std::normal_distribution<double> normal;
        RowMatrix z(rows, m);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                z(r, c) = normal(engine);
            }
        }
        RowMatrix x(rows, m);
        x.noalias() = z * lower.transpose();
        return x;
    }
};

Sampler::Sampler(std::unique_ptr<State> state) : state_(std::move(state)) {}
Sampler::Sampler(Sampler&&) noexcept = default;
Sampler& Sampler::operator=(Sampler&&) noexcept = default;
Sampler::~Sampler() = default;

Sampler Sampler::build_vix(const model::ModelParams& params, const SimGrid& grid) {
    params.validate();
    grid.validate();
    auto st = std::make_unique<State>();
    st->kind = UnderlyingKind::Vix;
    st->grid = grid;
    st->params = params;
    const std::size_t m = grid.n_inner;
    const double T = grid.maturity;
    st->nodes.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        st->nodes[i] = i + 1 == m ? T + grid.delta : T + grid.delta * static_cast<double>(i) / (m - 1);
    }
    st->covariance.resize(m, m);
    parallel_for(m, 0, [&](std::size_t i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double c = model::kernel_covariance(params, st->nodes[i], st->nodes[j], T);
            st->covariance(i, j) = c;
            st->covariance(j, i) = c;
        }
    });
    st->variances.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        st->variances[i] = st->covariance(i, i);
    }
    st->factorize();
    return Sampler(std::move(st));
}

Sampler Sampler::build_rv(const model::ModelParams& params, const SimGrid& grid) {
    params.validate();
    grid.validate();
    auto st = std::make_unique<State>();
    st->kind = UnderlyingKind::Rv;
    st->grid = grid;
    st->params = params;
    const std::size_t n = grid.n_inner;
    const double T = grid.maturity;
    st->nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        st->nodes[i] = i + 1 == n ? T : T * static_cast<double>(i + 1) / n;
    }
    st->covariance.resize(n, n);
    parallel_for(n, 0, [&](std::size_t i) {
        const double ti = st->nodes[i];
        st->covariance(i, i) = model::kernel_variance(params, ti);
        for (std::size_t j = 0; j < i; ++j) {
            const double tj = st->nodes[j];
            const double c = model::kernel_covariance(params, ti, tj, tj);
            st->covariance(i, j) = c;
            st->covariance(j, i) = c;
        }
    });
    st->variances.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        st->variances[i] = st->covariance(i, i);
    }
    st->factorize();
    return Sampler(std::move(st));
}

UnderlyingKind Sampler::kind() const noexcept { return state_->kind; }
const SimGrid& Sampler::grid() const noexcept { return state_->grid; }
const model::ModelParams& Sampler::params() const noexcept { return state_->params; }
std::span<const double> Sampler::nodes() const noexcept { return state_->nodes; }
std::span<const double> Sampler::node_variances() const noexcept { return state_->variances; }
double Sampler::jitter() const noexcept { return state_->jitter; }

double Sampler::covariance(std::size_t i, std::size_t j) const {
    const auto m = static_cast<std::size_t>(state_->covariance.rows());
    require(i < m && j < m, ErrorCode::OutOfBounds, "Sampler::covariance: index out of range");
    return state_->covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

PathBatch Sampler::sample(unsigned workers) const { return sample(state_->grid.n_paths, state_->grid.seed, workers); }

PathBatch Sampler::sample(std::size_t n_paths, std::uint64_t seed, unsigned workers) const {
    require(n_paths >= 1, ErrorCode::InvalidArgument, "sample: n_paths must be at least 1");
    const State& st = *state_;
    PathBatch batch;
    batch.kind = st.kind;
    batch.params = st.params;
    batch.grid = st.grid;
    batch.grid.n_paths = n_paths;
    batch.grid.seed = seed;
    batch.samples.resize(n_paths);

    const std::size_t chunk = st.grid.chunk_size;
    const std::size_t n_chunks = (n_paths + chunk - 1) / chunk;
    parallel_for(n_chunks, workers, [&](std::size_t c) {
        const std::size_t first = c * chunk;
        const std::size_t rows = std::min(chunk, n_paths - first);
        const RowMatrix x = st.gaussians(seed, c, rows);
        for (std::size_t r = 0; r < rows; ++r) {
            batch.samples[first + r] = st.underlying(x.row(static_cast<Eigen::Index>(r)).data());
        }
    });
    return batch;
}

std::vector<MeanEstimate> Sampler::node_moments(std::size_t n_paths, std::uint64_t seed, unsigned workers) const {
    require(n_paths >= 2, ErrorCode::Degenerate, "node_moments: at least two paths are required");
    const State& st = *state_;
    const std::size_t m = st.nodes.size();
    const std::size_t chunk = st.grid.chunk_size;
    const std::size_t n_chunks = (n_paths + chunk - 1) / chunk;
    std::vector<std::vector<Welford>> partial(n_chunks, std::vector<Welford>(m));
    parallel_for(n_chunks, workers, [&](std::size_t c) {
        const std::size_t first = c * chunk;
        const std::size_t rows = std::min(chunk, n_paths - first);
        const RowMatrix x = st.gaussians(seed, c, rows);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t i = 0; i < m; ++i) {
                partial[c][i].add(model::wick_mixture(st.params, x(r, i), st.variances[i]));
            }
        }
    });
    std::vector<MeanEstimate> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        Welford acc;
        for (std::size_t c = 0; c < n_chunks; ++c) {
            acc.merge(partial[c][i]);
        }
        out[i].n = n_paths;
        out[i].mean = acc.mean;
        out[i].std_error = std::sqrt(acc.m2 / (acc.n - 1.0) / acc.n);
    }
    return out;
}

}  // namespace vixsmile::mc
