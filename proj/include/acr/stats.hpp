#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "acr/cop.hpp"

namespace acr {

/// Population summary after an epoch. Epoch 0 describes the initial population.
struct EpochStats {
    std::size_t epoch = 0;
    double best_mass = 0.0;
    double mean_mass = 0.0;
    double worst_mass = 0.0;
    std::size_t r1_count = 0;
    std::size_t r2_count = 0;
    std::size_t decay_count = 0;
    std::size_t empty_cells = 0;
};

struct RunResult {
    Molecule best;
    double best_mass = 0.0;
    std::size_t epochs = 0;
    /// trace[k] is the state after epoch k; trace[0] is the initial population.
    std::vector<EpochStats> trace;
    /// Lightest mass seen up to and including each trace entry.
    std::vector<double> best_so_far;
    /// First epoch at which the grid had no catalyst left, if it ever happened.
    std::optional<std::size_t> saturated_at;
};

/// Accumulates min/mean/max over masses.
class MassSummary {
public:
    void add(double m);
    std::size_t count() const { return count_; }
    double min() const { return min_; }
    double max() const { return max_; }
    double mean() const { return count_ == 0 ? 0.0 : sum_ / static_cast<double>(count_); }

private:
    std::size_t count_ = 0;
    double sum_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

/// `epoch,best,mean,worst,r1,r2,decays,empty` with a header row.
void write_stats_csv(std::ostream& out, std::span<const EpochStats> trace);

/// Appends stats to a run and advances the best-so-far tracker.
void record_epoch(RunResult& result, const EpochStats& stats, const Molecule* population_best);

}  // namespace acr
