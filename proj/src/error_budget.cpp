#include "rezqu/error_budget.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "rezqu/quadrature.hpp"

namespace rezqu {

ArchitectureParams ArchitectureParams::symmetric_ghz(double g_ghz, double delta_ghz,
                                                     int n_qubits, int n_ops) {
    ArchitectureParams a;
    a.n_qubits = n_qubits;
    a.n_ops = n_ops;
    const double g = angular(g_ghz), d = angular(delta_ghz);
    a.g_m = a.g_b = a.g_mk = a.g_bk = g;
    a.delta_m = a.delta_b = a.delta_mk = a.delta_bk = d;
    a.delta_memory = d / double(n_qubits);
    a.omega_m_minus_omega_b = a.delta_m + a.delta_b;
    return a;
}

void ArchitectureParams::validate() const {
    if (n_qubits < 1 || n_ops < 1)
        throw std::invalid_argument("ArchitectureParams: counts must be >= 1");
    if (delta_m == 0.0 || delta_b == 0.0)
        throw std::invalid_argument("ArchitectureParams: detunings must be nonzero");
}

IdlingError idling_error(double omega_zz, double t_ns,
                         std::optional<std::complex<double>> amplitude11) {
    IdlingError out;
    const double phase = omega_zz * t_ns;
    out.quadratic_regime = std::abs(phase) <= 0.3;
    if (amplitude11) {
        const double p = std::norm(*amplitude11);
        out.value = p * (1.0 - p) * phase * phase;
    } else {
        out.value = phase * phase;
    }
    return out;
}

double idle_rezqu_worstcase(const ArchitectureParams& arch, double eta) {
    arch.validate();
    const double gmin = std::min(arch.g_m, arch.g_b);
    const double gmax = std::max(arch.g_m, arch.g_b);
    if (!(gmin > 0.0))
        throw std::invalid_argument("idle_rezqu_worstcase: couplings must be positive");
    const double g3 = std::pow(arch.g_m, 3) * std::pow(arch.g_b, 3);
    const double d8 = std::pow(arch.delta_m, 4) * std::pow(arch.delta_b, 4);
    const double n2 = double(arch.n_qubits) * arch.n_qubits *
                      double(arch.n_ops) * arch.n_ops;
    return 4.0 * g3 * eta * eta * n2 / d8 * (gmax / gmin);
}

double omega_zz_conventional(double g_b, double delta_b, double eta) {
    if (delta_b == 0.0)
        throw std::invalid_argument("omega_zz_conventional: zero bus detuning");
    if (delta_b == eta)
        throw std::invalid_argument(
            "omega_zz_conventional: delta_b equals eta (1-2 transition pole)");
    return -2.0 * g_b * g_b * eta / (delta_b * (delta_b - eta));
}

double idle_conventional(const ArchitectureParams& arch, double eta) {
    arch.validate();
    const double n2 = double(arch.n_qubits) * arch.n_qubits *
                      double(arch.n_ops) * arch.n_ops;
    return arch.g_b * arch.g_b * eta * eta * n2 / std::pow(arch.delta_b, 4);
}

MemoryMemoryErrors memory_memory_errors(const ArchitectureParams& arch, double eta) {
    arch.validate();
    if (arch.omega_m_minus_omega_b == 0.0)
        throw std::invalid_argument("memory_memory_errors: omega_m - omega_b is zero");
    if (arch.delta_mk == 0.0 || arch.delta_bk == 0.0)
        throw std::invalid_argument("memory_memory_errors: k-section detunings are zero");

    MemoryMemoryErrors out;
    out.omega_xx = 2.0 * arch.g_m * arch.g_mk * arch.g_b * arch.g_bk /
                   (arch.delta_m * arch.delta_mk * arch.omega_m_minus_omega_b);

    const double n2 = double(arch.n_qubits) * arch.n_qubits *
                      double(arch.n_ops) * arch.n_ops;
    const double g4 = arch.g_m * arch.g_mk * arch.g_b * arch.g_bk;
    const double d4 = arch.delta_m * arch.delta_mk * arch.delta_b * arch.delta_bk;
    out.err_xx = n2 * (g4 / d4) * (g4 / d4);

    // symmetric-sections estimate; geometric means blend a k-th section with
    // different couplings
    const double gm_eff = std::sqrt(arch.g_m * arch.g_mk);
    const double gb_eff = std::sqrt(arch.g_b * arch.g_bk);
    const double gmin = std::min(gm_eff, gb_eff);
    const double gmax = std::max(gm_eff, gb_eff);
    const double n4 = std::pow(double(arch.n_qubits), 4) * double(arch.n_ops) * arch.n_ops;
    const double g7 = std::pow(gm_eff, 7) * std::pow(gb_eff, 7);
    const double d16 = d4 * d4 * d4 * d4;
    out.err_zz = (gmin > 0.0) ? g7 * eta * eta * n4 / d16 * (gmax / gmin) : 0.0;
    return out;
}

double lz_error_qubit_qubit(double g_b, double g_bk, double delta_b,
                            double domega_dt) {
    if (domega_dt == 0.0)
        throw std::invalid_argument("lz_error_qubit_qubit: zero sweep rate "
                                    "(adiabatic limit, estimate invalid)");
    if (delta_b == 0.0)
        throw std::invalid_argument("lz_error_qubit_qubit: zero bus detuning");
    const double g2 = g_b * g_bk / delta_b;
    return two_pi * g2 * g2 / std::abs(domega_dt);
}

double lz_error_qubit_memory(double g_b, double g_bk, double g_mk, double delta_b,
                             double delta_mk, double domega_dt) {
    if (domega_dt == 0.0)
        throw std::invalid_argument("lz_error_qubit_memory: zero sweep rate "
                                    "(adiabatic limit, estimate invalid)");
    if (delta_b == 0.0 || delta_mk == 0.0)
        throw std::invalid_argument("lz_error_qubit_memory: zero detuning");
    const double g3 = g_b * g_bk * g_mk / (delta_b * delta_mk);
    return two_pi * g3 * g3 / std::abs(domega_dt);
}

double lz_error_two_level_oracle(double g_eff, double domega_dt, double span_sigmas,
                                 double dt) {
    if (domega_dt == 0.0)
        throw std::invalid_argument("lz_error_two_level_oracle: zero sweep rate");
    const double v = std::abs(domega_dt);
    const double delta_max = span_sigmas * std::max(std::abs(g_eff), std::sqrt(v));
    const double t_total = 2.0 * delta_max / v;

    // H(t) = [[0, g], [g, delta(t)]], start in the swept level |2>.
    using C = std::complex<double>;
    const C im{0.0, 1.0};
    Eigen::Vector2cd psi(0.0, 1.0);
    const long n = std::lround(std::ceil(t_total / dt));
    const double h = t_total / double(n);
    const auto rhs = [&](double t, const Eigen::Vector2cd& y) {
        const double delta = -delta_max + v * t;
        return Eigen::Vector2cd(-im * (g_eff * y(1)),
                                -im * (g_eff * y(0) + delta * y(1)));
    };
    for (long s = 0; s < n; ++s) {
        const double t = h * double(s);
        const Eigen::Vector2cd k1 = rhs(t, psi);
        const Eigen::Vector2cd k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
        const Eigen::Vector2cd k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
        const Eigen::Vector2cd k4 = rhs(t + h, psi + h * k3);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    // project on the adiabatic branch that tracks the static level at the end
    Eigen::Matrix2cd h_end;
    h_end << 0.0, g_eff, g_eff, delta_max;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h_end);
    const int static_branch =
        std::norm(es.eigenvectors()(0, 0)) > std::norm(es.eigenvectors()(0, 1)) ? 0 : 1;
    return std::norm(es.eigenvectors().col(static_branch).dot(psi));
}

namespace {

double tail_integral(const PulseShape& ramp, double coupling,
                     const std::function<double(double)>& detuning,
                     const std::function<double(double)>& detuning_phase) {
    const double t1 = ramp.duration();
    const auto integrand = [&](double t) -> std::complex<double> {
        const double d = detuning(t);
        return coupling / (d * d) * ramp.slope(t) *
               std::exp(std::complex<double>(0.0, -detuning_phase(t)));
    };
    const std::complex<double> val =
        integrate(integrand, 0.0, t1, ramp.knots(), detuning_phase);
    return std::norm(val);
}

} // namespace

double tail_error_front_ramp(const PulseShape& front_ramp, double g_b,
                             double omega_b) {
    return tail_integral(
        front_ramp, g_b,
        [&](double t) { return front_ramp.omega(t) - omega_b; },
        [&](double t) { return front_ramp.phase(t) - omega_b * t; });
}

double tail_error_kth_qubit(const PulseShape& front_ramp, double g_b, double g_bk,
                            double omega_qk, double omega_b) {
    const double delta_bk = omega_qk - omega_b;
    if (delta_bk == 0.0)
        throw std::invalid_argument("tail_error_kth_qubit: k-th qubit resonant with bus");
    return tail_integral(
        front_ramp, g_b * g_bk / delta_bk,
        [&](double t) { return front_ramp.omega(t) - omega_qk; },
        [&](double t) { return front_ramp.phase(t) - omega_qk * t; });
}

std::vector<ErrorBudgetTerm> ErrorBudget::terms() const {
    return {
        {"idle_rezqu", idle_rezqu, "memory-bus-zz-worstcase"},
        {"idle_conventional", idle_conventional, "bus-zz-worstcase"},
        {"xx_memory_memory", xx_memory_memory, "memory-memory-xx-retrieval"},
        {"zz_memory_memory", zz_memory_memory, "memory-memory-zz-worstcase"},
        {"tail_move", tail_move, "front-ramp-bus-tail"},
        {"tail_qubit_k", tail_qubit_k, "front-ramp-kth-qubit-tail"},
        {"lz_qubit_qubit", lz_qubit_qubit, "level-crossing-qubit-qubit"},
        {"lz_qubit_memory", lz_qubit_memory, "level-crossing-qubit-memory"},
    };
}

} // namespace rezqu
