#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fcp/chain.hpp"
#include "fcp/distributions.hpp"

namespace fcp {

// Full model: switching chain, per-state waiting laws, shared Gaussian jumps.
struct ProcessSpec {
    TransitionMatrix m;
    StateDistribution init;
    std::vector<WaitingTimeLaw> waiting;
    JumpLaw jump;

    ProcessSpec(TransitionMatrix m_, StateDistribution init_, std::vector<WaitingTimeLaw> waiting_,
                JumpLaw jump_);
    int n_states() const { return m.n_states(); }
};

// One renewal event: the particle holds its previous position in `state`
// during the waiting interval ending at `clock`, then jumps to `pos`, then
// the state switches.
struct TrajectoryEvent {
    int state;
    double tau;
    double jump;
    double clock;
    double pos;
};

struct Trajectory {
    std::vector<TrajectoryEvent> events;

    // Piecewise-constant path: position after the last event with clock <= t.
    double position_at(double t) const;
};

struct EnsembleStats {
    std::vector<double> t_grid;
    std::vector<double> values;
    std::vector<double> std_error;
    std::uint64_t n_samples = 0;
};

struct FirstPassageResult {
    std::vector<double> crossing_times;  // ascending, uncensored paths only
    std::uint64_t n_paths = 0;
    std::uint64_t n_censored = 0;
    double barrier = 0.0;
    double t_max = 0.0;

    // Fraction of paths with no crossing at or before t; valid for t <= t_max
    // (censoring only affects later times).
    std::vector<double> survival(const std::vector<double>& t_grid) const;
};

// Histogram density of crossing times: counts / (n_paths * bin width), on the
// bins defined by consecutive edges.
struct HistogramDensity {
    std::vector<double> left, right, center;  // center is the geometric mean
    std::vector<double> density;
    std::vector<std::uint64_t> count;
};
HistogramDensity fpt_density_histogram(const FirstPassageResult& r, const std::vector<double>& edges);

namespace engine {

// Renewal events until the first event whose clock passes t_max (that event
// is included, so the path is known on all of [0, t_max]).
Trajectory simulate_path(const ProcessSpec& spec, double t_max, std::uint64_t seed);

// Exactly n_events renewal events.
Trajectory simulate_events(const ProcessSpec& spec, std::size_t n_events, std::uint64_t seed);

// Ensemble mean of x^2(t) on t_grid with standard errors. Bit-identical
// output for fixed (spec, t_grid, n_paths, master_seed) at any worker count.
EnsembleStats msd_ensemble(const ProcessSpec& spec, const std::vector<double>& t_grid,
                           std::uint64_t n_paths, std::uint64_t master_seed, int n_workers = 0);

// First crossing of the barrier (position >= barrier after a jump, Gaussian
// jumps overshoot almost surely); crossings after t_max are censored.
FirstPassageResult first_passage_ensemble(const ProcessSpec& spec, double barrier,
                                          std::uint64_t n_paths, double t_max,
                                          std::uint64_t master_seed, int n_workers = 0,
                                          double x0 = 0.0);

// Fraction of [0, t] spent holding in each state (the final truncated
// interval contributes its overlap with [0, t]).
std::vector<double> occupation_fractions(const ProcessSpec& spec, double t, std::uint64_t seed);

// Per-path occupation fraction of target_state (1-based), ordered by path index.
std::vector<double> occupation_fraction_ensemble(const ProcessSpec& spec, int target_state,
                                                 double t, std::uint64_t n_paths,
                                                 std::uint64_t master_seed, int n_workers = 0);

// Exact integral of U along the piecewise-constant path of the given seed:
// each holding interval is weighted by its pre-jump position.
double path_functional(const ProcessSpec& spec, const std::function<double(double)>& potential,
                       double t, std::uint64_t seed);

}  // namespace engine
}  // namespace fcp
