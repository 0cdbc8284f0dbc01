#include "ringtherm/linearity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "ringtherm/error.hpp"

namespace ringtherm {

std::vector<double> grid_points(const SweepGrid& grid) {
    if (!(grid.step > 0.0) || !std::isfinite(grid.step) || !std::isfinite(grid.t_min) ||
        !std::isfinite(grid.t_max))
        throw Error(ErrorKind::Precondition, "sweep step must be positive and bounds finite");
    if (!(grid.t_min < grid.t_max))
        throw Error(ErrorKind::InsufficientData, "sweep needs t_min < t_max");
    constexpr double slack = 1e-9;
    const double span = (grid.t_max - grid.t_min) / grid.step;
    const auto n = static_cast<std::size_t>(std::floor(span + slack)) + 1;
    if (n < 3)
        throw Error(ErrorKind::InsufficientData,
                    "sweep grid has " + std::to_string(n) + " points; at least 3 required");
    std::vector<double> temps(n);
    for (std::size_t i = 0; i < n; ++i)
        temps[i] = std::min(grid.t_min + static_cast<double>(i) * grid.step, grid.t_max);
    return temps;
}

namespace {

SweepResult make_result(const RingConfig& ring, const std::vector<double>& temps) {
    SweepResult result;
    result.ring = ring.name;
    result.samples.resize(temps.size());
    result.range_exceeded = std::any_of(temps.begin(), temps.end(), [](double c) {
        return !TemperatureC{c}.in_supported_range();
    });
    return result;
}

}  // namespace

SweepResult sweep(const RingConfig& ring, const SweepGrid& grid, const Library& lib) {
    validate(ring, lib);
    const auto temps = grid_points(grid);
    auto result = make_result(ring, temps);
    detail::parallel_for(temps.size(), [&](std::size_t i) {
        result.samples[i] = {temps[i], period(ring, {temps[i]}, lib).t_osc};
    });
    return result;
}

SweepResult sweep_serial(const RingConfig& ring, const SweepGrid& grid, const Library& lib) {
    validate(ring, lib);
    const auto temps = grid_points(grid);
    auto result = make_result(ring, temps);
    for (std::size_t i = 0; i < temps.size(); ++i)
        result.samples[i] = {temps[i], period(ring, {temps[i]}, lib).t_osc};
    return result;
}

SweepResult to_frequency(SweepResult periods) {
    for (auto& s : periods.samples) s.value = 1.0 / s.value;
    return periods;
}

LinearFit least_squares_fit(std::span<const Sample> samples) {
    const auto n = samples.size();
    if (n < 3)
        throw Error(ErrorKind::InsufficientData,
                    "fit needs at least 3 samples, got " + std::to_string(n));
    double t_mean = 0.0;
    double y_mean = 0.0;
    for (const auto& s : samples) {
        t_mean += s.temp_c;
        y_mean += s.value;
    }
    t_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double s_tt = 0.0;
    double s_ty = 0.0;
    for (const auto& s : samples) {
        const double dt = s.temp_c - t_mean;
        s_tt += dt * dt;
        s_ty += dt * (s.value - y_mean);
    }
    if (!(s_tt > 0.0))
        throw Error(ErrorKind::DegenerateFit, "fit temperatures have zero variance");

    LinearFit fit;
    fit.slope = s_ty / s_tt;
    fit.intercept = y_mean - fit.slope * t_mean;
    fit.residuals.resize(n);
    double y_min = samples[0].value;
    double y_max = samples[0].value;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& s = samples[j];
        // Centered form keeps the residuals accurate when y carries a large offset.
        fit.residuals[j] = (s.value - y_mean) - fit.slope * (s.temp_c - t_mean);
        fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(fit.residuals[j]));
        y_min = std::min(y_min, s.value);
        y_max = std::max(y_max, s.value);
    }
    fit.full_scale_span = y_max - y_min;
    fit.nl_percent =
        fit.full_scale_span > 0.0 ? 100.0 * fit.max_abs_residual / fit.full_scale_span : 0.0;
    return fit;
}

double nonlinearity_error(const SweepResult& sweep) {
    const auto fit = least_squares_fit(sweep.samples);
    if (!(fit.full_scale_span > 0.0))
        throw Error(ErrorKind::UndefinedMetric,
                    "sweep of '" + sweep.ring + "' has zero output span");
    return fit.nl_percent;
}

double sensitivity(const SweepResult& sweep) { return least_squares_fit(sweep.samples).slope; }

}  // namespace ringtherm
