#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "paratrial/common.hpp"
#include "paratrial/qubo.hpp"

namespace paratrial {

enum class AnnealMode { simulated_annealing, parallel_tempering };

/// How one flip is picked from the accepted candidate set. The default picks
/// uniformly; by_probability weights candidates by their acceptance
/// probability instead.
enum class RouletteWeighting { uniform, by_probability };

/// Temperature endpoints of the geometric cooling schedule. t_start is
/// pitched so sampled uphill moves are accepted with probability ~0.99,
/// t_half so they are accepted with probability ~0.01 halfway through a run.
struct ScheduleParams {
    double t_start = 1.0;
    double t_half = 0.01;
    int calibration_samples = 1000;
};

struct AnnealParams {
    AnnealMode mode = AnnealMode::simulated_annealing;
    /// Independent restarts in simulated-annealing mode.
    int runs = 16;
    /// Parallel-trial steps per run (per replica in tempering mode). May be
    /// omitted when a time limit is given.
    std::optional<std::uint64_t> iterations;
    int replica_count = 16;
    std::optional<double> time_limit_seconds;
    /// Added to the dynamic energy offset on every stalled step. Defaults to
    /// one hundredth of the mean sampled uphill energy difference.
    std::optional<double> offset_increment;
    std::optional<ScheduleParams> schedule;  // absent: calibrated per instance
    RouletteWeighting roulette = RouletteWeighting::uniform;
    std::uint64_t seed = 0;
    /// Worker threads (0 = hardware concurrency). Never affects results in
    /// iteration-budget mode, only wall time.
    int threads = 0;
    /// Tempering: steps between exchange attempts (0 = one sweep of n steps).
    std::uint64_t exchange_interval = 0;
};

/// Mutable per-worker search state. One per run or replica; never shared.
template <class T>
struct AnnealState {
    Assignment x;
    DeltaCache<T> cache;
    T energy = T{0};
    double temperature = 1.0;
    double energy_offset = 0.0;  // grows while stalled, reset on acceptance
    Rng rng;
};

template <class T>
struct RunStats {
    std::uint64_t seed = 0;
    T best_energy = T{0};
    std::uint64_t accepted_moves = 0;
};

template <class T>
struct RunOutcome {
    Assignment best_x;
    T best_energy = T{0};
    RunStats<T> stats;
};

template <class T>
struct SolveResult {
    Assignment best_x;
    T best_energy = T{0};
    double wall_seconds = 0.0;
    /// (elapsed seconds, best-so-far energy); energies are non-increasing.
    std::vector<std::pair<double, T>> progress;
    std::vector<RunStats<T>> per_run;
};

/// min{exp(-(delta - offset) / temperature), 1}.
double accept_probability(double delta, double temperature, double offset);

/// Metropolis test with dynamic offset: u < accept_probability(...).
/// Throws std::invalid_argument if temperature <= 0.
bool accept(double delta, double temperature, double offset, double u);

/// Replica-exchange acceptance: min{1, exp((1/t_a - 1/t_b)(e_a - e_b))}.
double swap_probability(double t_a, double e_a, double t_b, double e_b);

/// Samples uphill energy differences from random assignments and flips, then
/// bisects for the temperatures hitting 99% / 1% mean acceptance. A model
/// with no uphill moves gets the documented fallback {1.0, 0.01}.
template <class T>
ScheduleParams calibrate_schedule(const QuboModel<T>& model, int calibration_samples,
                                  std::uint64_t seed);

/// One parallel-trial step: evaluates the Metropolis test for all n single
/// flips with independent draws from the state's stream in index order, then
/// flips one accepted candidate (one further draw). With no accepted
/// candidate the dynamic offset grows by offset_increment instead. Returns
/// the flipped index, or -1 for a stalled step. Deterministic given the
/// stream.
template <class T>
Index parallel_trial_step(const QuboModel<T>& model, AnnealState<T>& state,
                          double offset_increment,
                          RouletteWeighting weighting = RouletteWeighting::uniform);

/// One simulated-annealing run from a uniform random start under the
/// geometric schedule; tracks the best assignment ever visited.
template <class T>
RunOutcome<T> anneal_run(const QuboModel<T>& model, const AnnealParams& params,
                         std::uint64_t run_seed);

/// Replica exchange at a geometric temperature ladder between t_start and
/// t_half. Adjacent pairs (alternating even/odd pairing) attempt swaps every
/// exchange_interval steps. Deterministic given the seed.
template <class T>
SolveResult<T> parallel_tempering_run(const QuboModel<T>& model, const AnnealParams& params,
                                      std::uint64_t seed);

/// Full solver entry point: best-of over independent runs (SA mode) or one
/// tempering run (PT mode), executed concurrently. The reported assignment
/// is deterministic given (seed, params) under an iteration budget; with a
/// time limit only the search order is reproducible, not the stopping point.
template <class T>
SolveResult<T> solve(const QuboModel<T>& model, const AnnealParams& params);

}  // namespace paratrial
