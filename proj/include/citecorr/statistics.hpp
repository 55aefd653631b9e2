#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

namespace citecorr {

/// ln(count + 1). The shift keeps zero counts in the analysis (they map to
/// 0) instead of dropping them. Throws std::domain_error for negatives.
double ln_transform(std::int64_t count);

enum class CorrelationStatus {
    ok,
    insufficient, ///< fewer than two pairs
    degenerate,   ///< zero variance in either variable
};

struct PearsonResult {
    CorrelationStatus status = CorrelationStatus::insufficient;
    std::optional<double> r;
};

/// Sample Pearson product-moment coefficient, two passes (means first).
/// x and y must have equal length.
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

struct Summary {
    double sum = 0;
    double mean = 0;
    double sd = 0; ///< sample standard deviation (n - 1); 0 when n < 2
};

Summary summarize(std::span<const double> values);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
};

/// Least-squares line y = slope * x + intercept; absent when x has no
/// spread.
std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y);

} // namespace citecorr
