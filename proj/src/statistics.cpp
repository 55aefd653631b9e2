#include "citecorr/statistics.hpp"

#include <algorithm>
#include <cmath>

namespace citecorr {

namespace {

double mean_of(std::span<const double> v)
{
    double s = 0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

double ln_transform(std::int64_t count)
{
    if (count < 0)
        throw std::domain_error("ln_transform of a negative count");
    return std::log(static_cast<double>(count) + 1.0);
}

PearsonResult pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2)
        return {CorrelationStatus::insufficient, std::nullopt};

    double mx = mean_of(x), my = mean_of(y);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0 || syy == 0)
        return {CorrelationStatus::degenerate, std::nullopt};
    double r = sxy / std::sqrt(sxx * syy);
    return {CorrelationStatus::ok, std::clamp(r, -1.0, 1.0)};
}

Summary summarize(std::span<const double> values)
{
    Summary s;
    if (values.empty())
        return s;
    for (double v : values)
        s.sum += v;
    s.mean = s.sum / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("least_squares: length mismatch");
    if (x.size() < 2)
        return std::nullopt;
    double mx = mean_of(x), my = mean_of(y);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0)
        return std::nullopt;
    double slope = sxy / sxx;
    return LinearFit{slope, my - slope * mx};
}

} // namespace citecorr
