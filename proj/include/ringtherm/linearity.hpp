#pragma once

#include <span>
#include <string>
#include <vector>

#include "ringtherm/ring_oscillator.hpp"

namespace ringtherm {

struct SweepGrid {
    double t_min = -50.0;
    double t_max = 150.0;
    double step = 5.0;
};

// Grid temperatures t_min + i*step up to t_max (inclusive when on grid).
// Throws Error{InsufficientData} for fewer than 3 points.
std::vector<double> grid_points(const SweepGrid& grid);

struct Sample {
    double temp_c = 0.0;
    double value = 0.0;  // t_osc in s, or f_osc in Hz for frequency fits
};

struct SweepResult {
    std::string ring;
    std::vector<Sample> samples;
    bool range_exceeded = false;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
    double max_abs_residual = 0.0;
    double full_scale_span = 0.0;
    double nl_percent = 0.0;
};

// OpenMP over grid temperatures. Result is identical to sweep_serial.
SweepResult sweep(const RingConfig& ring, const SweepGrid& grid, const Library& lib);
SweepResult sweep_serial(const RingConfig& ring, const SweepGrid& grid, const Library& lib);

// Replaces each t_osc by 1/t_osc.
SweepResult to_frequency(SweepResult periods);

// Ordinary least squares about the means. Throws Error{InsufficientData}
// below 3 samples and Error{DegenerateFit} for zero temperature variance.
// A flat response (zero span) reports nl_percent = 0.
LinearFit least_squares_fit(std::span<const Sample> samples);

// 100 * max|residual| / (max - min). Throws Error{UndefinedMetric} for zero span.
double nonlinearity_error(const SweepResult& sweep);

double sensitivity(const SweepResult& sweep);

}  // namespace ringtherm
