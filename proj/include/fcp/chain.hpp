#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fcp/errors.hpp"

namespace fcp {

// Row-stochastic transition matrix of the internal-state chain. Rows whose
// sum deviates from 1 by no more than the tolerance are renormalized; larger
// deviations are rejected, never rescaled.
class TransitionMatrix {
public:
    static constexpr double kStochasticTol = 1e-12;

    explicit TransitionMatrix(Eigen::MatrixXd m);

    int n_states() const { return static_cast<int>(m_.rows()); }
    double operator()(int from, int to) const { return m_(from, to); }
    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

// Probability vector over the internal states (initial or equilibrium
// distribution). Normalized within tolerance on construction.
class StateDistribution {
public:
    static constexpr double kNormTol = 1e-12;

    explicit StateDistribution(Eigen::VectorXd w);
    static StateDistribution uniform(int n);

    int size() const { return static_cast<int>(w_.size()); }
    double operator[](int i) const { return w_(i); }
    const Eigen::VectorXd& weights() const { return w_; }

private:
    Eigen::VectorXd w_;
};

// Block structure of the chain: closed communicating classes, transient
// states, and the mass each block receives from the initial distribution
// pushed forward N-1 steps.
struct ChainStructure {
    std::vector<std::vector<int>> blocks;            // closed classes, members sorted
    std::vector<int> transient_states;               // states in no closed class
    std::vector<double> block_mass;                  // effective initial mass per block
    std::vector<bool> block_reachable;               // block_mass > threshold
    std::vector<Eigen::VectorXd> block_equilibrium;  // normalized to sum 1 within the block
    Eigen::VectorXd effective_init;                  // init^T M^(N-1), full length
    double residual_transient_mass = 0.0;            // mass left on transient states

    bool irreducible() const { return blocks.size() == 1 && transient_states.empty(); }
};

namespace chain {

constexpr double kReachabilityThreshold = 1e-12;

// Left fixed vector pi with pi M = pi, sum 1. Solved as a linear system with
// the normalization row substituted in, so periodic chains (e.g. the
// alternating two-state matrix) work where power iteration would oscillate.
// Throws NotIrreducible when the chain has more than one closed class.
StateDistribution equilibrium(const TransitionMatrix& m);

ChainStructure decompose(const TransitionMatrix& m, const StateDistribution& init);

// Leading long-time MSD exponent: max over reachable blocks of the smallest
// waiting exponent inside the block; equals min(alphas) for an irreducible
// chain.
double msd_exponent(const ChainStructure& structure, const std::vector<double>& alphas);

}  // namespace chain
}  // namespace fcp
