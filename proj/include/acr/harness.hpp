#pragma once

// Instance generation, exact small-n solvers and the multi-run experiment
// driver that compares the grid reactor against the soup baseline.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acr/cop.hpp"
#include "acr/random.hpp"
#include "acr/reactor0d.hpp"
#include "acr/reactor2d.hpp"
#include "acr/stats.hpp"

namespace acr {

/// n cities uniform on the unit square with Euclidean costs.
TspInstance generate_instance(std::size_t n, RandomStream& rng);

struct ExactTour {
    double mass = 0.0;
    Permutation tour;  ///< starts at city 1
};

constexpr std::size_t kMaxExactCities = 15;
constexpr std::size_t kMaxEnumeratedCities = 10;

/// Held-Karp dynamic program over subsets; n <= 15.
ExactTour exact_tour(const TspInstance& instance);

/// Exhaustive search over the (n-1)!/2 distinct tours; n <= 10.
ExactTour enumerate_tour(const TspInstance& instance);

/// Welford accumulator for mean and sample standard deviation.
class RunningStats {
public:
    void add(double x);
    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    /// n-1 denominator; 0 for fewer than two samples.
    double sample_std() const;
    double min() const { return min_; }
    double max() const { return max_; }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

enum class ReactorMode : std::uint8_t { ZeroD, TwoD };
enum class ExperimentMode : std::uint8_t { ZeroD, TwoD, Both };

const char* mode_name(ReactorMode mode);

struct ExperimentSpec {
    ExperimentMode mode = ExperimentMode::Both;
    /// Instance files; when empty, `problems` instances are generated.
    std::vector<std::filesystem::path> instance_paths;
    std::size_t cities = 50;
    std::size_t problems = 5;
    /// Problem p (1-based) is generated from instance_seed + p.
    std::uint64_t instance_seed = 2006;
    std::size_t runs = 10;
    /// Run r (1-based) is seeded with base_seed + r in both modes.
    std::uint64_t base_seed = 1;
    ReactorConfig reactor;
    SoupConfig soup;
    /// Directory receiving runs.csv, summary.csv and generated instances; empty for none.
    std::filesystem::path output;
    std::size_t threads = 1;
    /// Keep per-epoch traces in the returned records.
    bool keep_traces = false;

    void validate() const;
};

/// `key = value` lines, `#` comments. Relative paths resolve against base_dir.
ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& source,
                                     const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// Seed of run `run` (1-based). Both modes share it so that they start from
/// the same initial molecules.
std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t run, ReactorMode mode);

struct RunRecord {
    std::size_t problem = 0;
    ReactorMode mode = ReactorMode::TwoD;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double best_mass = 0.0;
    std::size_t epochs = 0;
    std::vector<EpochStats> trace;  ///< only with keep_traces
};

struct ModeSummary {
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t runs = 0;
};

struct SummaryRow {
    std::size_t problem = 0;
    std::optional<ModeSummary> zero_d;
    std::optional<ModeSummary> two_d;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;  ///< sorted by (problem, mode, run)
    std::vector<SummaryRow> summary;
};

/// Runs every (problem, mode, run) job, aggregates per-mode statistics and
/// writes the CSVs when spec.output is set.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Per-mode summaries of a sorted record list.
std::vector<SummaryRow> summarize(std::span<const RunRecord> records);

/// `problem,mode,run,seed,best_mass,epochs`
void write_runs_csv(std::ostream& out, std::span<const RunRecord> records);
/// `problem,0dacr_mean,0dacr_std,2dacr_mean,2dacr_std,runs,note`
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace acr
