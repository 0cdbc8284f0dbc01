#pragma once

// Alpha-power-law MOSFET drive and first-order switching delay.
// All temperatures are Celsius at the interface and Kelvin internally.

namespace ringtherm {

inline constexpr double kKelvinOffset = 273.15;
inline constexpr double kRangeMinC = -50.0;
inline constexpr double kRangeMaxC = 150.0;

struct TemperatureC {
    double value = 0.0;

    constexpr double kelvin() const { return value + kKelvinOffset; }
    constexpr bool in_supported_range() const {
        return value >= kRangeMinC && value <= kRangeMaxC;
    }
    static constexpr TemperatureC from_kelvin(double k) { return {k - kKelvinOffset}; }

    friend constexpr auto operator<=>(TemperatureC, TemperatureC) = default;
};

struct DeviceParams {
    double k_prime = 0.0;   // A/V^alpha
    double vth0 = 0.0;      // V at t0
    double kappa_vt = 0.0;  // V/K, positive: Vth falls with T
    double alpha = 1.0;     // velocity-saturation index
    double k_mu = 1.0;      // mobility temperature exponent
};

struct ProcessParams {
    DeviceParams nmos;
    DeviceParams pmos;
    double vdd = 0.0;      // V
    double t0 = 300.0;     // K
    double c_gate = 0.0;   // F/um
    double c_drain = 0.0;  // F/um
    double l_min = 0.0;    // um
};

// 0.18 um-class defaults, vdd = 1.8 V, t0 = 300 K. NMOS and PMOS temperature
// laws are deliberately different; otherwise sizing would not move linearity.
ProcessParams default_process();

// Throws Error{Domain} on field invariants and Error{SubThreshold} when
// vdd - vth(T) <= 0 anywhere in -50..150 C for either device.
void validate(const DeviceParams& dev, const ProcessParams& proc);
void validate(const ProcessParams& proc);

// (T_K / t0)^(-k_mu)
double mobility_factor(TemperatureC t, const DeviceParams& dev, const ProcessParams& proc);

// vth0 - kappa_vt * (T_K - t0)
double threshold_voltage(TemperatureC t, const DeviceParams& dev, const ProcessParams& proc);

// k' * (W/L) * mobility * (vdd - vth)^alpha. Throws SubThreshold for
// non-positive overdrive.
double sat_current(const DeviceParams& dev, double w_over_l, TemperatureC t,
                   const ProcessParams& proc);

// c_load * vdd / (2 * i_drive)
double switching_delay(double i_drive, double c_load, const ProcessParams& proc);

}  // namespace ringtherm
