#pragma once

#include <stdexcept>

#include "rezqu/units.hpp"

namespace rezqu {

// Static parameters of the truncated memory-qubit-bus device.
// Frequencies and couplings are linear (GHz); the qubit frequency is not
// part of the device, it is the control knob and is passed separately.
struct DeviceParams {
    double f_m_ghz = 7.0;    // memory resonator frequency
    double f_b_ghz = 6.0;    // bus resonator frequency
    double eta_ghz = 0.2;    // qubit anharmonicity
    double g_m_ghz = 0.025;  // memory-qubit coupling
    double g_b_ghz = 0.025;  // qubit-bus coupling
    bool include_gd = false; // direct memory-bus coupling term

    double omega_m() const { return angular(f_m_ghz); }
    double omega_b() const { return angular(f_b_ghz); }
    double eta() const { return angular(eta_ghz); }
    double g_m() const { return angular(g_m_ghz); }
    double g_b() const { return angular(g_b_ghz); }

    void validate() const {
        if (!(f_m_ghz > f_b_ghz) || !(f_b_ghz > 0.0))
            throw std::invalid_argument("DeviceParams: need f_m > f_b > 0");
        if (!(g_m_ghz > 0.0) || !(g_b_ghz > 0.0))
            throw std::invalid_argument("DeviceParams: couplings must be positive");
        if (!(eta_ghz > 0.0))
            throw std::invalid_argument("DeviceParams: anharmonicity must be positive");
    }
};

} // namespace rezqu
