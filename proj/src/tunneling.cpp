#include "rezqu/tunneling.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rezqu/errors.hpp"

namespace rezqu {

namespace {
using C = std::complex<double>;
constexpr C imag_i{0.0, 1.0};
} // namespace

bool MeasurementParams::weak_coupling() const {
    const double g = g_m();
    return g < 0.2 * std::abs(delta_m()) && g < 0.2 * gamma_per_ns;
}

void MeasurementParams::validate() const {
    if (!(gamma_per_ns > 0.0))
        throw std::invalid_argument("MeasurementParams: Gamma must be positive");
    if (!(g_m_ghz >= 0.0))
        throw std::invalid_argument("MeasurementParams: g_m must be nonnegative");
}

Eigen::Matrix2cd tunneling_hamiltonian(const MeasurementParams& mp) {
    mp.validate();
    Eigen::Matrix2cd h;
    h << C(mp.omega_m(), 0.0), C(mp.g_m(), 0.0), C(mp.g_m(), 0.0),
        C(mp.omega_q(), -0.5 * mp.gamma_per_ns);
    return h;
}

DecayEigensystem decay_eigensystem(const MeasurementParams& mp) {
    mp.validate();
    const C a = C(mp.omega_m(), 0.0);
    const C d = C(mp.omega_q(), -0.5 * mp.gamma_per_ns);
    const C g = C(mp.g_m(), 0.0);

    const C half_sum = 0.5 * (a + d);
    const C half_diff = 0.5 * (a - d);
    const C root = std::sqrt(half_diff * half_diff + g * g);
    const C e_plus = half_sum + root;
    const C e_minus = half_sum - root;

    // Eigenvector of the complex-symmetric 2x2 for eigenvalue e.
    const auto vector_for = [&](const C& e) {
        Eigen::Vector2cd v;
        if (std::abs(e - a) > std::abs(e - d))
            v << g, e - a;
        else
            v << e - d, g;
        const double n = v.norm();
        if (!(n > 1e-300))
            throw ConvergenceError(
                "decay_eigensystem: exceptional point, eigenvectors coalesce");
        return Eigen::Vector2cd(v / n);
    };

    Eigen::Vector2cd v_plus = vector_for(e_plus);
    Eigen::Vector2cd v_minus = vector_for(e_minus);

    // Condition of the eigenbasis; near an exceptional point it blows up.
    Eigen::Matrix2cd vmat;
    vmat.col(0) = v_plus;
    vmat.col(1) = v_minus;
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(vmat);
    const double cond = svd.singularValues()(0) /
                        std::max(svd.singularValues()(1), 1e-300);
    if (cond > 1e12)
        throw ConvergenceError(
            "decay_eigensystem: eigenvector condition number above 1e12 "
            "(exceptional-point degeneracy)");

    DecayEigensystem out;
    const bool plus_is_memory = std::norm(v_plus(0)) >= std::norm(v_minus(0));
    out.energy_memory = plus_is_memory ? e_plus : e_minus;
    out.energy_qubit = plus_is_memory ? e_minus : e_plus;
    out.state_memory = plus_is_memory ? v_plus : v_minus;
    out.state_qubit = plus_is_memory ? v_minus : v_plus;
    out.gamma_m = -2.0 * out.energy_memory.imag();
    out.gamma_q = -2.0 * out.energy_qubit.imag();

    const double dm = mp.delta_m(), gamma = mp.gamma_per_ns, gm = mp.g_m();
    out.gamma_m_weak = gm * gm * gamma / (dm * dm + 0.25 * gamma * gamma);
    out.gamma_q_weak = gamma - out.gamma_m_weak;
    return out;
}

Eigen::Vector2cd initial_state(const MeasurementParams& mp, InitialState kind) {
    if (kind == InitialState::Bare) return Eigen::Vector2cd(0.0, 1.0);
    // eigenstate of the closed (Gamma = 0) system dominated by the qubit
    Eigen::Matrix2d h_closed;
    h_closed << mp.omega_m(), mp.g_m(), mp.g_m(), mp.omega_q();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h_closed);
    const int col = std::abs(es.eigenvectors()(1, 0)) >= std::abs(es.eigenvectors()(1, 1))
                        ? 0 : 1;
    Eigen::Vector2d v = es.eigenvectors().col(col);
    if (v(1) < 0.0) v = -v;
    return v.cast<C>();
}

Eigen::Vector2cd tunneling_state(const MeasurementParams& mp,
                                 const Eigen::Vector2cd& psi0, double t_ns) {
    const DecayEigensystem es = decay_eigensystem(mp);
    Eigen::Matrix2cd vmat;
    vmat.col(0) = es.state_memory;
    vmat.col(1) = es.state_qubit;
    const Eigen::Vector2cd coeff = vmat.fullPivLu().solve(psi0);
    return coeff(0) * std::exp(-imag_i * es.energy_memory * t_ns) * es.state_memory +
           coeff(1) * std::exp(-imag_i * es.energy_qubit * t_ns) * es.state_qubit;
}

double survival_probability(const MeasurementParams& mp, InitialState kind,
                            double t_ns) {
    return tunneling_state(mp, initial_state(mp, kind), t_ns).squaredNorm();
}

DecayTrajectory decay_trajectories(const MeasurementParams& mp, InitialState kind,
                                   int n_points) {
    if (n_points < 2)
        throw std::invalid_argument("decay_trajectories: need at least two points");
    DecayTrajectory out;
    const Eigen::Vector2cd psi0 = initial_state(mp, kind);
    out.t_ns.reserve(n_points);
    for (int k = 0; k < n_points; ++k) {
        const double t = mp.t_meas_ns * double(k) / double(n_points - 1);
        const Eigen::Vector2cd psi = tunneling_state(mp, psi0, t);
        out.t_ns.push_back(t);
        out.alpha2.push_back(std::norm(psi(0)));
        out.beta2.push_back(std::norm(psi(1)));
    }
    return out;
}

DecayReport survival_error(const MeasurementParams& mp, int trajectory_points) {
    DecayReport rep;
    const DecayEigensystem es = decay_eigensystem(mp);
    rep.gamma_m = es.gamma_m;
    rep.gamma_q = es.gamma_q;
    rep.err_bare = survival_probability(mp, InitialState::Bare, mp.t_meas_ns);
    rep.err_eigen = survival_probability(mp, InitialState::Eigen, mp.t_meas_ns);
    rep.ratio = rep.err_bare > 0.0 ? rep.err_eigen / rep.err_bare : 0.0;

    const double dm = mp.delta_m(), gamma = mp.gamma_per_ns, gm = mp.g_m();
    rep.ratio_weak_coupling = gamma * gamma / (4.0 * dm * dm);
    rep.err_bare_closed_form = std::exp(-es.gamma_m_weak * mp.t_meas_ns) * gm * gm /
                               (dm * dm + 0.25 * gamma * gamma);
    rep.err_eigen_closed_form = rep.ratio_weak_coupling * rep.err_bare_closed_form;
    rep.bare = decay_trajectories(mp, InitialState::Bare, trajectory_points);
    rep.eigen = decay_trajectories(mp, InitialState::Eigen, trajectory_points);
    return rep;
}

std::string measurement_csv(const DecayReport& rep) {
    std::ostringstream out;
    out << "t_ns,alpha2_bare,beta2_bare,alpha2_eigen,beta2_eigen,"
           "err_bare,err_eigen,ratio\n";
    char buf[32];
    const auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (std::size_t k = 0; k < rep.bare.t_ns.size(); ++k) {
        const double eb = rep.bare.alpha2[k] + rep.bare.beta2[k];
        const double ee = rep.eigen.alpha2[k] + rep.eigen.beta2[k];
        out << fmt(rep.bare.t_ns[k]) << "," << fmt(rep.bare.alpha2[k]) << ","
            << fmt(rep.bare.beta2[k]) << "," << fmt(rep.eigen.alpha2[k]) << ","
            << fmt(rep.eigen.beta2[k]) << "," << fmt(eb) << "," << fmt(ee) << ","
            << fmt(eb > 0.0 ? ee / eb : 0.0) << "\n";
    }
    return out.str();
}

} // namespace rezqu
