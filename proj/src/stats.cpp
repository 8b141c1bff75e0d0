#include "acr/stats.hpp"

#include <limits>
#include <ostream>

namespace acr {

void MassSummary::add(double m) {
    if (count_ == 0) {
        min_ = m;
        max_ = m;
    } else {
        if (m < min_) min_ = m;
        if (m > max_) max_ = m;
    }
    sum_ += m;
    ++count_;
}

void write_stats_csv(std::ostream& out, std::span<const EpochStats> trace) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "epoch,best,mean,worst,r1,r2,decays,empty\n";
    for (const auto& s : trace) {
        out << s.epoch << ',' << s.best_mass << ',' << s.mean_mass << ',' << s.worst_mass << ',' << s.r1_count
            << ',' << s.r2_count << ',' << s.decay_count << ',' << s.empty_cells << '\n';
    }
    out.precision(old_precision);
}

void record_epoch(RunResult& result, const EpochStats& stats, const Molecule* population_best) {
    if (population_best != nullptr && (result.trace.empty() || population_best->mass() < result.best_mass)) {
        result.best = *population_best;
        result.best_mass = population_best->mass();
    }
    result.trace.push_back(stats);
    result.best_so_far.push_back(result.best_mass);
    result.epochs = stats.epoch;
}

}  // namespace acr
