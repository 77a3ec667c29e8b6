#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vixsmile/error.hpp"
#include "vixsmile/mc.hpp"

namespace vixsmile::pricing {

struct PriceEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
};

/// Mean and standard error of (A - K)+ over the samples. K = 0 gives the mean of A.
PriceEstimate price_call(std::span<const double> samples, double strike);
PriceEstimate price_call(const mc::PathBatch& batch, double strike);

struct AtmiResult {
    double vol = 0.0;
    double vol_std_error = 0.0;
    /// Set when the ATM call price is exactly zero (constant batch); vol is then 0.
    bool degenerate = false;
    double forward = 0.0;
    PriceEstimate price;
};

/// ATM implied vol with the strike set to the batch mean.
AtmiResult atmi(std::span<const double> samples, double maturity);
AtmiResult atmi(const mc::PathBatch& batch);

struct SmilePoint {
    double log_strike_offset = 0.0;
    double implied_vol = 0.0;
    double vol_std_error = 0.0;
    double strike = 0.0;
    PriceEstimate price;
    bool ok = false;
    ErrorCode error_code = ErrorCode::Internal;
    std::string error;
};

/// One point per offset, all priced from the same samples. Inversion failures are
/// reported per point. Throws Internal if call prices fail monotonicity or convexity in K.
std::vector<SmilePoint> smile(std::span<const double> samples, double maturity, std::span<const double> offsets);
std::vector<SmilePoint> smile(const mc::PathBatch& batch, std::span<const double> offsets);

struct SkewResult {
    double skew = 0.0;
    double std_error = 0.0;
    double vol_minus = 0.0;
    double vol_plus = 0.0;
    double forward = 0.0;
};

constexpr double kDefaultSkewStep = 1e-2;
constexpr std::size_t kJackknifeBlocks = 20;

/// Central difference (I(+h) - I(-h)) / (2h) of the implied vol in log-strike around
/// the batch mean. The standard error comes from a delete-one-block jackknife.
SkewResult atmi_skew(std::span<const double> samples, double maturity, double h = kDefaultSkewStep);
SkewResult atmi_skew(const mc::PathBatch& batch, double h = kDefaultSkewStep);

}  // namespace vixsmile::pricing
