#include "fcp/chain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace fcp {

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols()) {
        throw InvalidMatrix("transition matrix must be square with at least one state");
    }
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < m_.cols(); ++j) {
            double v = m_(i, j);
            if (!(v >= 0.0)) {
                std::ostringstream os;
                os << "transition matrix entry (" << i << "," << j << ") = " << v
                   << " is negative";
                throw InvalidMatrix(os.str());
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kStochasticTol) {
            std::ostringstream os;
            os << "transition matrix row " << i << " sums to " << sum
               << "; must be 1 within " << kStochasticTol;
            throw InvalidMatrix(os.str());
        }
        m_.row(i) /= sum;
    }
}

StateDistribution::StateDistribution(Eigen::VectorXd w) : w_(std::move(w)) {
    if (w_.size() < 1) throw InvalidDistribution("state distribution must be nonempty");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w_.size(); ++i) {
        if (!(w_(i) >= 0.0)) {
            std::ostringstream os;
            os << "state distribution entry " << i << " = " << w_(i) << " is negative";
            throw InvalidDistribution(os.str());
        }
        sum += w_(i);
    }
    if (std::abs(sum - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "state distribution sums to " << sum << "; must be 1 within " << kNormTol;
        throw InvalidDistribution(os.str());
    }
    w_ /= sum;
}

StateDistribution StateDistribution::uniform(int n) {
    return StateDistribution(Eigen::VectorXd::Constant(n, 1.0 / n));
}

namespace chain {
namespace {

// Tarjan strongly connected components on the digraph of nonzero entries.
// Components are returned with members sorted; component order follows
// discovery, later remapped to smallest-member order.
std::vector<std::vector<int>> strongly_connected_components(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> index(n, -1), lowlink(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    std::function<void(int)> visit = [&](int v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w = 0; w < n; ++w) {
            if (m(v, w) == 0.0) continue;
            if (index[w] < 0) {
                visit(w);
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack[w]) {
                lowlink[v] = std::min(lowlink[v], index[w]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            sccs.push_back(std::move(comp));
        }
    };

    for (int v = 0; v < n; ++v) {
        if (index[v] < 0) visit(v);
    }
    return sccs;
}

// A class is closed when no edge leaves it.
bool is_closed(const Eigen::MatrixXd& m, const std::vector<int>& comp) {
    for (int v : comp) {
        for (int w = 0; w < m.cols(); ++w) {
            if (m(v, w) != 0.0 && !std::binary_search(comp.begin(), comp.end(), w)) {
                return false;
            }
        }
    }
    return true;
}

Eigen::VectorXd solve_stationary(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    // (M^T - I) pi = 0 with the first equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a = m.transpose() - Eigen::MatrixXd::Identity(n, n);
    a.row(0).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(0) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) {
        throw NumericalError("stationary-distribution system is singular");
    }
    Eigen::VectorXd pi = lu.solve(b);
    for (Eigen::Index i = 0; i < n; ++i) pi(i) = std::max(pi(i), 0.0);
    pi /= pi.sum();

    double residual = (pi.transpose() * m - pi.transpose()).cwiseAbs().maxCoeff();
    if (residual > 1e-10) {
        std::ostringstream os;
        os << "equilibrium residual " << residual << " exceeds 1e-10";
        throw NumericalError(os.str());
    }
    return pi;
}

}  // namespace

StateDistribution equilibrium(const TransitionMatrix& m) {
    const auto sccs = strongly_connected_components(m.matrix());
    int closed = 0;
    for (const auto& comp : sccs) {
        if (is_closed(m.matrix(), comp)) ++closed;
    }
    if (closed != 1) {
        std::ostringstream os;
        os << "chain has " << closed << " closed communicating classes; equilibrium needs exactly 1";
        throw NotIrreducible(os.str());
    }
    return StateDistribution(solve_stationary(m.matrix()));
}

ChainStructure decompose(const TransitionMatrix& m, const StateDistribution& init) {
    const int n = m.n_states();
    if (init.size() != n) {
        throw InvalidDistribution("initial distribution length does not match matrix size");
    }

    ChainStructure s;
    auto sccs = strongly_connected_components(m.matrix());
    std::sort(sccs.begin(), sccs.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<bool> in_block(n, false);
    for (const auto& comp : sccs) {
        if (is_closed(m.matrix(), comp)) {
            for (int v : comp) in_block[v] = true;
            s.blocks.push_back(comp);
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!in_block[v]) s.transient_states.push_back(v);
    }

    // Push the initial distribution forward N-1 steps; any path from a
    // transient state into a closed class has length at most N-1.
    Eigen::RowVectorXd eff = init.weights().transpose();
    for (int step = 0; step + 1 < n; ++step) eff = eff * m.matrix();
    s.effective_init = eff.transpose();

    for (const auto& block : s.blocks) {
        double mass = 0.0;
        for (int v : block) mass += s.effective_init(v);
        s.block_mass.push_back(mass);
        s.block_reachable.push_back(mass > kReachabilityThreshold);

        Eigen::MatrixXd sub(block.size(), block.size());
        for (std::size_t i = 0; i < block.size(); ++i) {
            for (std::size_t j = 0; j < block.size(); ++j) {
                sub(i, j) = m.matrix()(block[i], block[j]);
            }
        }
        // Rows of a closed class sum to 1 exactly, so sub is stochastic.
        s.block_equilibrium.push_back(solve_stationary(sub));
    }

    for (int v : s.transient_states) s.residual_transient_mass += s.effective_init(v);
    return s;
}

double msd_exponent(const ChainStructure& structure, const std::vector<double>& alphas) {
    std::size_t n = structure.effective_init.size();
    if (alphas.size() != n) {
        throw InvalidDistribution("need exactly one exponent per state");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) {
            std::ostringstream os;
            os << "waiting exponent " << a << " outside (0,1)";
            throw InvalidDistribution(os.str());
        }
    }
    bool any = false;
    double alpha_star = 0.0;
    for (std::size_t b = 0; b < structure.blocks.size(); ++b) {
        if (!structure.block_reachable[b]) continue;
        double block_min = 1.0;
        for (int v : structure.blocks[b]) block_min = std::min(block_min, alphas[v]);
        alpha_star = any ? std::max(alpha_star, block_min) : block_min;
        any = true;
    }
    if (!any) throw NoReachableBlock("no closed class receives initial mass");
    return alpha_star;
}

}  // namespace chain
}  // namespace fcp
