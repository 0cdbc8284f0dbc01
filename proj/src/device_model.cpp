#include "ringtherm/device_model.hpp"

#include <cmath>
#include <string>

#include "ringtherm/error.hpp"

namespace ringtherm {

ProcessParams default_process() {
    ProcessParams p;
    p.nmos = {300e-6, 0.45, 1.0e-3, 1.3, 1.5};
    p.pmos = {120e-6, 0.42, 1.4e-3, 1.4, 1.2};
    p.vdd = 1.8;
    p.t0 = 300.0;
    p.c_gate = 2.0e-15;
    p.c_drain = 1.0e-15;
    p.l_min = 0.18;
    return p;
}

void validate(const DeviceParams& dev, const ProcessParams& proc) {
    if (!(dev.k_prime > 0.0))
        throw Error(ErrorKind::Domain, "k_prime must be positive");
    if (!(dev.alpha >= 1.0 && dev.alpha <= 2.0))
        throw Error(ErrorKind::Domain, "alpha must lie in [1, 2]");
    if (!(dev.k_mu > 0.0))
        throw Error(ErrorKind::Domain, "k_mu must be positive");
    if (!(dev.kappa_vt >= 0.0))
        throw Error(ErrorKind::Domain, "kappa_vt must be non-negative");
    // vth is linear in T, so the endpoints bound it.
    for (double c : {kRangeMinC, kRangeMaxC}) {
        double overdrive = proc.vdd - threshold_voltage({c}, dev, proc);
        if (!(overdrive > 0.0))
            throw Error(ErrorKind::SubThreshold,
                        "gate overdrive " + std::to_string(overdrive) + " V at " +
                            std::to_string(c) + " C");
    }
}

void validate(const ProcessParams& proc) {
    if (!(proc.vdd > 0.0)) throw Error(ErrorKind::Domain, "vdd must be positive");
    if (!(proc.t0 > 0.0)) throw Error(ErrorKind::Domain, "t0 must be positive");
    if (!(proc.c_gate > 0.0)) throw Error(ErrorKind::Domain, "c_gate must be positive");
    if (!(proc.c_drain >= 0.0)) throw Error(ErrorKind::Domain, "c_drain must be non-negative");
    if (!(proc.l_min > 0.0)) throw Error(ErrorKind::Domain, "l_min must be positive");
    validate(proc.nmos, proc);
    validate(proc.pmos, proc);
}

double mobility_factor(TemperatureC t, const DeviceParams& dev, const ProcessParams& proc) {
    const double tk = t.kelvin();
    if (!(tk > 0.0))
        throw Error(ErrorKind::Domain,
                    "non-physical temperature " + std::to_string(t.value) + " C");
    return std::pow(tk / proc.t0, -dev.k_mu);
}

double threshold_voltage(TemperatureC t, const DeviceParams& dev, const ProcessParams& proc) {
    return dev.vth0 - dev.kappa_vt * (t.kelvin() - proc.t0);
}

double sat_current(const DeviceParams& dev, double w_over_l, TemperatureC t,
                   const ProcessParams& proc) {
    if (!(w_over_l > 0.0)) throw Error(ErrorKind::Domain, "W/L must be positive");
    const double overdrive = proc.vdd - threshold_voltage(t, dev, proc);
    if (!(overdrive > 0.0))
        throw Error(ErrorKind::SubThreshold,
                    "gate overdrive " + std::to_string(overdrive) + " V at " +
                        std::to_string(t.value) + " C");
    return dev.k_prime * w_over_l * mobility_factor(t, dev, proc) *
           std::pow(overdrive, dev.alpha);
}

double switching_delay(double i_drive, double c_load, const ProcessParams& proc) {
    if (!(i_drive > 0.0)) throw Error(ErrorKind::Domain, "drive current must be positive");
    if (!(c_load > 0.0)) throw Error(ErrorKind::Domain, "load capacitance must be positive");
    return c_load * proc.vdd / (2.0 * i_drive);
}

}  // namespace ringtherm
