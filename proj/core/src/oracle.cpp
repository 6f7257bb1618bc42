#include "qtweezer/oracle.hpp"

#include "qtweezer/fidelity.hpp"
#include "qtweezer/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace qtweezer {

long oracle_dimension(std::size_t modes, int n_max) {
    if (modes > static_cast<std::size_t>(oracle_max_modes)) {
        throw std::invalid_argument("oracle: at most " + std::to_string(oracle_max_modes) + " modes, got " +
                                    std::to_string(modes));
    }
    if (n_max < 1) throw std::invalid_argument("oracle: n_max must be at least 1");
    long dim = 2;
    for (std::size_t q = 0; q < modes; ++q) {
        dim *= n_max + 1;
        if (dim > oracle_max_dimension) {
            throw std::invalid_argument("oracle: state dimension exceeds " + std::to_string(oracle_max_dimension) +
                                        " (n_max = " + std::to_string(n_max) + ")");
        }
    }
    return dim;
}

namespace {

struct BathLayout {
    long size = 1;
    std::vector<long> strides;

    BathLayout(std::size_t modes, int n_max) : strides(modes, 1) {
        for (std::size_t q = modes; q-- > 0;) {
            strides[q] = size;
            size *= n_max + 1;
        }
    }

    int occupation(long index, std::size_t q, int n_max) const {
        return static_cast<int>((index / strides[q]) % (n_max + 1));
    }

    long index(const std::vector<int>& occupations) const {
        long idx = 0;
        for (std::size_t q = 0; q < occupations.size(); ++q) idx += occupations[q] * strides[q];
        return idx;
    }
};

} // namespace

Eigen::MatrixXd build_hamiltonian(const std::vector<OracleMode>& modes, double omega_eff, double lambda,
                                  int n_max) {
    const long dim = oracle_dimension(modes.size(), n_max);
    const BathLayout bath(modes.size(), n_max);
    const long nb = bath.size;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    for (long b = 0; b < nb; ++b) {
        double energy = 0.0;
        for (std::size_t q = 0; q < modes.size(); ++q) energy += modes[q].omega * bath.occupation(b, q, n_max);
        h(b, b) = energy;
        h(nb + b, nb + b) = energy;
        h(b, nb + b) = 0.5 * omega_eff;
        h(nb + b, b) = 0.5 * omega_eff;
    }

    for (std::size_t q = 0; q < modes.size(); ++q) {
        const auto& m = modes[q];
        // alpha_x sigma_x + i alpha_y sigma_y + 2 alpha_z sigma_z on (|0>, |1>).
        const double spin[2][2] = {{-2.0 * m.alpha_z, m.alpha_x - m.alpha_y},
                                   {m.alpha_x + m.alpha_y, 2.0 * m.alpha_z}};
        for (long b = 0; b < nb; ++b) {
            const int n = bath.occupation(b, q, n_max);
            if (n == 0) continue;
            const long lowered = b - bath.strides[q];
            const double amp = 0.5 * lambda * std::sqrt(static_cast<double>(n));
            for (int out = 0; out < 2; ++out) {
                for (int in = 0; in < 2; ++in) {
                    const double v = amp * spin[out][in];
                    h(out * nb + lowered, in * nb + b) += v;
                    h(in * nb + b, out * nb + lowered) += v;
                }
            }
        }
    }
    return h;
}

std::vector<BathState> thermal_mixture(const std::vector<OracleMode>& modes, int n_max, double target) {
    if (!(target > 0.0 && target <= 1.0)) throw std::invalid_argument("thermal_mixture: target weight must be in (0, 1]");
    const BathLayout bath(modes.size(), n_max);
    std::vector<double> weight(bath.size, 1.0);
    for (long b = 0; b < bath.size; ++b) {
        for (std::size_t q = 0; q < modes.size(); ++q) {
            const double nbar = modes[q].occupation;
            const int n = bath.occupation(b, q, n_max);
            weight[b] *= nbar > 0.0 ? std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1) : (n == 0 ? 1.0 : 0.0);
        }
    }
    std::vector<long> order(bath.size);
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(), [&](long a, long b) { return weight[a] > weight[b]; });

    std::vector<BathState> states;
    double cumulative = 0.0;
    for (long b : order) {
        if (cumulative >= target) break;
        if (weight[b] <= 0.0) break;
        BathState s;
        s.weight = weight[b];
        for (std::size_t q = 0; q < modes.size(); ++q) {
            const int n = bath.occupation(b, q, n_max);
            if (n >= n_max) {
                throw std::invalid_argument("thermal_mixture: mode " + std::to_string(q) + " needs n_max above " +
                                            std::to_string(n_max) + " to hold its initial occupation");
            }
            s.occupations.push_back(n);
        }
        cumulative += s.weight;
        states.push_back(std::move(s));
    }
    if (cumulative < target * (1.0 - 1e-12)) {
        throw std::invalid_argument("thermal_mixture: truncation n_max = " + std::to_string(n_max) +
                                    " cannot hold the requested cumulative weight");
    }
    for (auto& s : states) s.weight /= cumulative;
    return states;
}

ExactResult evolve_and_measure(const Eigen::MatrixXd& hamiltonian, double theta, double tau,
                               const std::vector<BathState>& bath, int n_max) {
    if (tau < 0.0) throw std::invalid_argument("evolve_and_measure: tau must be non-negative");
    const long dim = hamiltonian.rows();
    const long nb = dim / 2;
    const std::size_t modes = bath.empty() ? 0 : bath.front().occupations.size();
    const BathLayout layout(modes, n_max);
    if (layout.size != nb) throw std::invalid_argument("evolve_and_measure: bath layout does not match the Hamiltonian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
    const Eigen::MatrixXd& v = solver.eigenvectors();
    const Eigen::VectorXd& e = solver.eigenvalues();
    Eigen::VectorXcd phase(dim);
    for (long i = 0; i < dim; ++i) phase[i] = std::polar(1.0, -e[i] * tau);

    const std::complex<double> c0(std::cos(theta), 0.0);
    const std::complex<double> c1(0.0, std::sin(theta));  // <theta| = cos <0| + i sin <1|

    ExactResult res;
    res.fidelity = 0.0;
    res.trace = 0.0;
    res.mixture_size = bath.size();
    for (const auto& state : bath) {
        const long start = layout.index(state.occupations);  // spin |0>
        const Eigen::VectorXcd coeff = (v.row(start).transpose().cast<std::complex<double>>()).cwiseProduct(phase);
        const Eigen::VectorXcd psi = v.cast<std::complex<double>>() * coeff;
        double p = 0.0;
        for (long b = 0; b < nb; ++b) p += std::norm(c0 * psi[b] + c1 * psi[nb + b]);
        res.fidelity += state.weight * p;
        res.trace += state.weight * psi.squaredNorm();
    }
    res.fidelity = std::clamp(res.fidelity, 0.0, 1.0);
    return res;
}

double oracle_perturbative_g(const OracleConfig& config) {
    CouplingSet set;
    set.omega_eff = config.omega_eff;
    std::vector<Mode> basis;
    for (std::size_t q = 0; q < config.modes.size(); ++q) {
        const auto& m = config.modes[q];
        CouplingRecord rec;
        rec.index = ModeIndex{static_cast<int>(q) + 1, 0, 0};
        rec.omega = m.omega;
        rec.alpha_x = config.lambda * m.alpha_x;
        rec.alpha_y = config.lambda * m.alpha_y;
        rec.alpha_z = config.lambda * m.alpha_z;
        set.records.push_back(rec);
        Mode mode;
        mode.index = rec.index;
        mode.omega = m.omega;
        mode.occupation = m.occupation;
        basis.push_back(mode);
    }
    return g_function(config.theta, set, basis, 1.0).g;
}

ExactResult oracle_exact(const OracleConfig& config) {
    const auto h = build_hamiltonian(config.modes, config.omega_eff, config.lambda, config.n_max);
    const auto bath = thermal_mixture(config.modes, config.n_max, config.thermal_weight);
    return evolve_and_measure(h, config.theta, ideal_transfer_time(config.theta, config.omega_eff), bath,
                              config.n_max);
}

std::vector<OracleMode> oracle_modes(const std::vector<CouplingRecord>& records, const std::vector<Mode>& basis,
                                     const std::vector<ModeIndex>& selection, bool normalize) {
    std::vector<OracleMode> out;
    for (const auto& want : selection) {
        auto it = std::find_if(records.begin(), records.end(), [&](const CouplingRecord& r) { return r.index == want; });
        if (it == records.end()) throw std::invalid_argument("oracle: " + to_string(want) + " is not in the basis");
        const auto& mode = basis[static_cast<std::size_t>(it - records.begin())];
        out.push_back({it->omega, it->alpha_x, it->alpha_y, it->alpha_z, mode.occupation});
    }
    if (normalize && !out.empty()) {
        double omega_min = out.front().omega;
        double alpha_max = 0.0;
        for (const auto& m : out) {
            omega_min = std::min(omega_min, m.omega);
            alpha_max = std::max({alpha_max, std::abs(m.alpha_x), std::abs(m.alpha_y), std::abs(m.alpha_z)});
        }
        if (alpha_max > 0.0) {
            const double s = omega_min / alpha_max;
            for (auto& m : out) {
                m.alpha_x *= s;
                m.alpha_y *= s;
                m.alpha_z *= s;
            }
        }
    }
    return out;
}

OracleReport convergence_check(const OracleConfig& config, const std::vector<double>& lambdas, unsigned threads) {
    if (lambdas.size() < 2) throw std::invalid_argument("convergence_check: need at least two lambda values");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0 && lambdas[i] <= 1.0)) throw std::invalid_argument("convergence_check: lambda must be in (0, 1]");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw std::invalid_argument("convergence_check: lambda grid must ascend");
    }
    if (lambdas.back() < 10.0 * lambdas.front()) {
        throw std::invalid_argument("convergence_check: lambda grid must span at least one decade");
    }

    OracleReport report;
    report.rows.resize(lambdas.size());
    parallel_for(lambdas.size(), threads, [&](std::size_t i) {
        OracleConfig c = config;
        c.lambda = lambdas[i];
        const auto exact = oracle_exact(c);
        OracleRow& row = report.rows[i];
        row.lambda = lambdas[i];
        row.exact_p = exact.fidelity;
        row.g = oracle_perturbative_g(c);
        row.perturbative_p = 1.0 - row.g;
        row.discrepancy = (1.0 - exact.fidelity) - row.g;
        row.relative = row.g > 0.0 ? std::abs(row.discrepancy) / row.g : INFINITY;
        row.trace = exact.trace;
    });

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : report.rows) {
        report.max_trace_error = std::max(report.max_trace_error, std::abs(row.trace - 1.0));
        if (row.discrepancy == 0.0) continue;
        const double x = std::log(row.lambda);
        const double y = std::log(std::abs(row.discrepancy));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.converged = report.fitted_order > 2.0 && report.rows.front().relative < 0.1;
    if (!report.converged) {
        report.notes.push_back("exact and perturbative fidelities do not converge as lambda -> 0 (fitted order " +
                               std::to_string(report.fitted_order) + ")");
    }
    if (report.max_trace_error > 1e-10) {
        report.notes.push_back("trace deviates from 1 by " + std::to_string(report.max_trace_error));
    }
    return report;
}

} // namespace qtweezer
