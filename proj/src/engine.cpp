#include "fcp/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace fcp {

ProcessSpec::ProcessSpec(TransitionMatrix m_, StateDistribution init_,
                         std::vector<WaitingTimeLaw> waiting_, JumpLaw jump_)
    : m(std::move(m_)), init(std::move(init_)), waiting(std::move(waiting_)), jump(jump_) {
    if (init.size() != m.n_states()) {
        throw InvalidDistribution("initial distribution length does not match matrix size");
    }
    if (static_cast<int>(waiting.size()) != m.n_states()) {
        std::ostringstream os;
        os << "need one waiting law per state: got " << waiting.size() << " for "
           << m.n_states() << " states";
        throw InvalidDistribution(os.str());
    }
    for (const auto& w : waiting) w.validate();
    jump.validate();
}

double Trajectory::position_at(double t) const {
    // Last event with clock <= t.
    auto it = std::upper_bound(events.begin(), events.end(), t,
                               [](double v, const TrajectoryEvent& e) { return v < e.clock; });
    if (it == events.begin()) return 0.0;
    return std::prev(it)->pos;
}

std::vector<double> FirstPassageResult::survival(const std::vector<double>& t_grid) const {
    std::vector<double> s(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] > t_max) {
            throw DomainError("survival is only estimated up to the censoring horizon t_max");
        }
        auto crossed = std::upper_bound(crossing_times.begin(), crossing_times.end(), t_grid[i]) -
                       crossing_times.begin();
        s[i] = 1.0 - static_cast<double>(crossed) / static_cast<double>(n_paths);
    }
    return s;
}

HistogramDensity fpt_density_histogram(const FirstPassageResult& r, const std::vector<double>& edges) {
    if (edges.size() < 2) throw DomainError("histogram needs at least two bin edges");
    HistogramDensity h;
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        double lo = edges[b], hi = edges[b + 1];
        auto n = std::upper_bound(r.crossing_times.begin(), r.crossing_times.end(), hi) -
                 std::lower_bound(r.crossing_times.begin(), r.crossing_times.end(), lo);
        h.left.push_back(lo);
        h.right.push_back(hi);
        h.center.push_back(std::sqrt(lo * hi));
        h.count.push_back(static_cast<std::uint64_t>(n));
        h.density.push_back(static_cast<double>(n) / (static_cast<double>(r.n_paths) * (hi - lo)));
    }
    return h;
}

namespace engine {
namespace {

// Sampler tables and walking state for one path.
class PathWalker {
public:
    PathWalker(const ProcessSpec& spec, RngStream rng) : spec_(spec), rng_(std::move(rng)) {
        state_ = draw(spec_.init.weights());
    }

    TrajectoryEvent step() {
        TrajectoryEvent e;
        e.state = state_;
        e.tau = dist::sample_waiting(spec_.waiting[state_], rng_);
        e.jump = dist::sample_jump(spec_.jump, rng_);
        clock_ += e.tau;
        pos_ += e.jump;
        e.clock = clock_;
        e.pos = pos_;
        state_ = draw(spec_.m.matrix().row(state_));
        return e;
    }

private:
    template <typename Row>
    int draw(const Row& weights) {
        double u = rng_.uniform();
        double acc = 0.0;
        int last = 0;
        for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
            if (weights[i] == 0.0) continue;
            acc += weights[i];
            last = i;
            if (u <= acc) return i;
        }
        return last;  // u landed in the rounding gap at the top
    }

    const ProcessSpec& spec_;
    RngStream rng_;
    int state_;
    double clock_ = 0.0;
    double pos_ = 0.0;
};

void check_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw DomainError("time grid is empty");
    double prev = 0.0;
    for (double t : t_grid) {
        if (!(t > prev)) throw DomainError("time grid must be strictly increasing and positive");
        prev = t;
    }
}

// Runs fn(chunk_index, path_begin, path_end) over fixed-size chunks of the
// path index range on a small thread pool. Chunk contents are independent of
// the worker count, so per-chunk results can be reduced in chunk order to
// give bit-identical ensemble statistics for any parallelism.
constexpr std::uint64_t kChunk = 256;

template <typename Fn>
void run_chunked(std::uint64_t n_paths, int n_workers, Fn&& fn) {
    const std::uint64_t n_chunks = (n_paths + kChunk - 1) / kChunk;
    unsigned hw = std::thread::hardware_concurrency();
    std::uint64_t workers = n_workers > 0 ? static_cast<std::uint64_t>(n_workers)
                                          : (hw > 0 ? hw : 1);
    workers = std::min<std::uint64_t>(workers, n_chunks);

    std::atomic<std::uint64_t> next{0};
    auto body = [&]() {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            std::uint64_t begin = c * kChunk;
            std::uint64_t end = std::min(begin + kChunk, n_paths);
            fn(c, begin, end);
        }
    };
    if (workers <= 1) {
        body();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

}  // namespace

Trajectory simulate_path(const ProcessSpec& spec, double t_max, std::uint64_t seed) {
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    Trajectory traj;
    PathWalker walker(spec, RngStream::for_path(seed, 0));
    for (;;) {
        TrajectoryEvent e = walker.step();
        traj.events.push_back(e);
        if (e.clock > t_max) break;
    }
    return traj;
}

Trajectory simulate_events(const ProcessSpec& spec, std::size_t n_events, std::uint64_t seed) {
    Trajectory traj;
    traj.events.reserve(n_events);
    PathWalker walker(spec, RngStream::for_path(seed, 0));
    for (std::size_t i = 0; i < n_events; ++i) traj.events.push_back(walker.step());
    return traj;
}

EnsembleStats msd_ensemble(const ProcessSpec& spec, const std::vector<double>& t_grid,
                           std::uint64_t n_paths, std::uint64_t master_seed, int n_workers) {
    check_grid(t_grid);
    if (n_paths < 1) throw DomainError("n_paths must be at least 1");
    const std::size_t g = t_grid.size();
    const double t_end = t_grid.back();
    const std::uint64_t n_chunks = (n_paths + kChunk - 1) / kChunk;

    // Per-chunk partial sums of x^2 and x^4, reduced in chunk order below.
    std::vector<std::vector<double>> sum2(n_chunks), sum4(n_chunks);

    run_chunked(n_paths, n_workers, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
        std::vector<double>& s2 = sum2[c];
        std::vector<double>& s4 = sum4[c];
        s2.assign(g, 0.0);
        s4.assign(g, 0.0);
        for (std::uint64_t p = begin; p < end; ++p) {
            PathWalker walker(spec, RngStream::for_path(master_seed, p));
            double x_prev = 0.0;
            std::size_t j = 0;
            while (j < g) {
                TrajectoryEvent e = walker.step();
                while (j < g && t_grid[j] < e.clock) {
                    double v = x_prev * x_prev;
                    s2[j] += v;
                    s4[j] += v * v;
                    ++j;
                }
                x_prev = e.pos;
                if (e.clock > t_end) break;
            }
            // Grid points past the break are covered by the straddling event.
            for (; j < g; ++j) {
                double v = x_prev * x_prev;
                s2[j] += v;
                s4[j] += v * v;
            }
        }
    });

    EnsembleStats out;
    out.t_grid = t_grid;
    out.values.assign(g, 0.0);
    out.std_error.assign(g, 0.0);
    out.n_samples = n_paths;
    for (std::size_t j = 0; j < g; ++j) {
        double s2 = 0.0, s4 = 0.0;
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            s2 += sum2[c][j];
            s4 += sum4[c][j];
        }
        const double n = static_cast<double>(n_paths);
        double mean = s2 / n;
        out.values[j] = mean;
        if (n_paths > 1) {
            double var = std::max(0.0, (s4 - n * mean * mean) / (n - 1.0));
            out.std_error[j] = std::sqrt(var / n);
        }
    }
    return out;
}

FirstPassageResult first_passage_ensemble(const ProcessSpec& spec, double barrier,
                                          std::uint64_t n_paths, double t_max,
                                          std::uint64_t master_seed, int n_workers, double x0) {
    if (!(barrier > 0.0)) throw InvalidBarrier("barrier must be positive");
    if (!(x0 < barrier)) throw InvalidBarrier("start position must lie below the barrier");
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    if (n_paths < 1) throw DomainError("n_paths must be at least 1");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> per_path(n_paths, nan);

    run_chunked(n_paths, n_workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t p = begin; p < end; ++p) {
            PathWalker walker(spec, RngStream::for_path(master_seed, p));
            for (;;) {
                TrajectoryEvent e = walker.step();
                if (e.clock > t_max) break;  // censored
                if (x0 + e.pos >= barrier) {
                    per_path[p] = e.clock;
                    break;
                }
            }
        }
    });

    FirstPassageResult r;
    r.n_paths = n_paths;
    r.barrier = barrier;
    r.t_max = t_max;
    for (double t : per_path) {
        if (std::isnan(t)) {
            ++r.n_censored;
        } else {
            r.crossing_times.push_back(t);
        }
    }
    std::sort(r.crossing_times.begin(), r.crossing_times.end());
    return r;
}

std::vector<double> occupation_fractions(const ProcessSpec& spec, double t, std::uint64_t seed) {
    return occupation_fractions_stream(spec, t, RngStream::for_path(seed, 0));
}

namespace {
std::vector<double> occupation_body(const ProcessSpec& spec, double t, RngStream rng) {
    std::vector<double> occ(spec.n_states(), 0.0);
    PathWalker walker(spec, std::move(rng));
    double start = 0.0;
    for (;;) {
        TrajectoryEvent e = walker.step();
        occ[e.state] += std::min(e.clock, t) - start;
        if (e.clock > t) break;
        start = e.clock;
    }
    for (double& o : occ) o /= t;
    return occ;
}
}  // namespace

std::vector<double> occupation_fraction_ensemble(const ProcessSpec& spec, int target_state,
                                                 double t, std::uint64_t n_paths,
                                                 std::uint64_t master_seed, int n_workers) {
    if (target_state < 1 || target_state > spec.n_states()) {
        throw InvalidDistribution("target_state out of range");
    }
    if (!(t > 0.0)) throw DomainError("t must be positive");
    const int idx = target_state - 1;
    std::vector<double> samples(n_paths, 0.0);
    run_chunked(n_paths, n_workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t p = begin; p < end; ++p) {
            samples[p] = occupation_body(spec, t, RngStream::for_path(master_seed, p))[idx];
        }
    });
    return samples;
}

double path_functional(const ProcessSpec& spec, const std::function<double(double)>& potential,
                       double t, std::uint64_t seed) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    PathWalker walker(spec, RngStream::for_path(seed, 0));
    double acc = 0.0;
    double start = 0.0;
    double x_prev = 0.0;
    for (;;) {
        TrajectoryEvent e = walker.step();
        acc += potential(x_prev) * (std::min(e.clock, t) - start);
        if (e.clock > t) break;
        start = e.clock;
        x_prev = e.pos;
    }
    return acc;
}

}  // namespace engine
}  // namespace fcp
