#include "acr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "acr/errors.hpp"

namespace acr {

TspInstance generate_instance(std::size_t n, RandomStream& rng) {
    if (n < 2) {
        throw InvalidInput("instances need at least 2 cities");
    }
    std::vector<Point> coords(n);
    for (auto& p : coords) {
        p.x = rng.unit();
        p.y = rng.unit();
    }
    return TspInstance::from_coordinates(std::move(coords));
}

ExactTour exact_tour(const TspInstance& instance) {
    const std::size_t n = instance.size();
    if (n > kMaxExactCities) {
        throw UnsupportedSize("exact solver supports at most " + std::to_string(kMaxExactCities) + " cities, got " +
                              std::to_string(n));
    }
    // City 1 is the fixed start; bit k of a subset stands for city k + 2.
    const std::size_t others = n - 1;
    const std::size_t subsets = std::size_t{1} << others;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best(subsets * others, kInf);
    std::vector<std::uint8_t> parent(subsets * others, 0xff);
    auto city = [](std::size_t bit) { return static_cast<Atom>(bit + 2); };

    for (std::size_t k = 0; k < others; ++k) {
        best[(std::size_t{1} << k) * others + k] = instance.cost(1, city(k));
    }
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t last = 0; last < others; ++last) {
            if (!(mask & (std::size_t{1} << last))) {
                continue;
            }
            const double here = best[mask * others + last];
            if (here == kInf) {
                continue;
            }
            for (std::size_t next = 0; next < others; ++next) {
                if (mask & (std::size_t{1} << next)) {
                    continue;
                }
                const std::size_t grown = mask | (std::size_t{1} << next);
                const double cand = here + instance.cost(city(last), city(next));
                if (cand < best[grown * others + next]) {
                    best[grown * others + next] = cand;
                    parent[grown * others + next] = static_cast<std::uint8_t>(last);
                }
            }
        }
    }

    const std::size_t full = subsets - 1;
    std::size_t last = 0;
    double closing = kInf;
    for (std::size_t k = 0; k < others; ++k) {
        const double cand = best[full * others + k] + instance.cost(city(k), 1);
        if (cand < closing) {
            closing = cand;
            last = k;
        }
    }

    Permutation tour;
    tour.reserve(n);
    std::size_t mask = full;
    for (std::size_t step = 0; step < others; ++step) {
        tour.push_back(city(last));
        const std::uint8_t prev = parent[mask * others + last];
        mask &= ~(std::size_t{1} << last);
        last = prev;
    }
    tour.push_back(1);
    std::reverse(tour.begin(), tour.end());
    return {tour_cost(tour, instance), std::move(tour)};
}

ExactTour enumerate_tour(const TspInstance& instance) {
    const std::size_t n = instance.size();
    if (n > kMaxEnumeratedCities) {
        throw UnsupportedSize("enumeration supports at most " + std::to_string(kMaxEnumeratedCities) +
                              " cities, got " + std::to_string(n));
    }
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), Atom{1});
    ExactTour best{std::numeric_limits<double>::infinity(), {}};
    do {
        // Each tour is listed in both directions; keep one.
        if (n > 2 && perm[1] > perm[n - 1]) {
            continue;
        }
        const double c = tour_cost(perm, instance);
        if (c < best.mass) {
            best = {c, perm};
        }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

void RunningStats::add(double x) {
    ++count_;
    if (count_ == 1) {
        min_ = max_ = x;
    } else {
        min_ = std::min(min_, x);
        max_ = std::max(max_, x);
    }
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

double RunningStats::sample_std() const {
    if (count_ < 2) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_ - 1)));
}

const char* mode_name(ReactorMode mode) { return mode == ReactorMode::TwoD ? "2d" : "0d"; }

// ---------------------------------------------------------------------------
// Spec file

void ExperimentSpec::validate() const {
    if (runs < 1) {
        throw ConfigError("runs must be at least 1");
    }
    if (instance_paths.empty()) {
        if (problems < 1) {
            throw ConfigError("problems must be at least 1");
        }
        if (cities < 2) {
            throw ConfigError("cities must be at least 2");
        }
    }
    if (threads < 1) {
        throw ConfigError("threads must be at least 1");
    }
    if (mode != ExperimentMode::ZeroD) {
        reactor.validate();
    }
    if (mode != ExperimentMode::TwoD) {
        soup.validate();
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& value, const std::string& where) {
    std::istringstream ss(value);
    T out{};
    ss >> out;
    if (!ss || !(ss >> std::ws).eof()) {
        throw ConfigError(where + ": cannot parse '" + value + "'");
    }
    return out;
}

std::size_t parse_count(const std::string& value, const std::string& where) {
    if (!value.empty() && value.front() == '-') {
        throw ConfigError(where + ": '" + value + "' must be non-negative");
    }
    return parse_number<std::size_t>(value, where);
}

std::pair<int, int> parse_dims(const std::string& value, const std::string& where) {
    const auto x = value.find('x');
    if (x == std::string::npos) {
        throw ConfigError(where + ": grid must be written IxJ, got '" + value + "'");
    }
    return {parse_number<int>(value.substr(0, x), where), parse_number<int>(value.substr(x + 1), where)};
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& source,
                                     const std::filesystem::path& base_dir) {
    ExperimentSpec spec;
    std::string raw;
    std::size_t number = 0;
    auto resolve = [&](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
    };
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const std::string where = source + ":" + std::to_string(number);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError(where + ": missing value for '" + key + "'");
        }

        if (key == "mode") {
            if (value == "2d") spec.mode = ExperimentMode::TwoD;
            else if (value == "0d") spec.mode = ExperimentMode::ZeroD;
            else if (value == "both") spec.mode = ExperimentMode::Both;
            else throw ConfigError(where + ": mode must be 2d, 0d or both");
        } else if (key == "instances") {
            std::string list = value;
            std::replace(list.begin(), list.end(), ',', ' ');
            std::istringstream ss(list);
            std::string p;
            while (ss >> p) {
                spec.instance_paths.push_back(resolve(p));
            }
        } else if (key == "cities") {
            spec.cities = parse_count(value, where);
        } else if (key == "problems") {
            spec.problems = parse_count(value, where);
        } else if (key == "instance_seed") {
            spec.instance_seed = parse_number<std::uint64_t>(value, where);
        } else if (key == "runs") {
            spec.runs = parse_count(value, where);
        } else if (key == "base_seed") {
            spec.base_seed = parse_number<std::uint64_t>(value, where);
        } else if (key == "grid") {
            const auto [r, c] = parse_dims(value, where);
            spec.reactor.rows = r;
            spec.reactor.cols = c;
        } else if (key == "molecules") {
            const std::size_t k = parse_count(value, where);
            spec.reactor.initial_molecules = k;
            spec.soup.initial_molecules = k;
            spec.soup.capacity = k;
        } else if (key == "stencil") {
            if (value == "5") spec.reactor.stencil = Stencil::FivePoint;
            else if (value == "9") spec.reactor.stencil = Stencil::NinePoint;
            else throw ConfigError(where + ": stencil must be 5 or 9");
        } else if (key == "ordering") {
            try {
                spec.reactor.ordering = parse_order_kind(value);
            } catch (const InvalidInput& e) {
                throw ConfigError(where + ": " + e.what());
            }
        } else if (key == "decay") {
            const double p = parse_number<double>(value, where);
            spec.reactor.decay_probability = p;
            spec.soup.decay_probability = p;
        } else if (key == "max_epochs") {
            const std::size_t e = parse_count(value, where);
            spec.reactor.max_epochs = e;
            spec.soup.max_epochs = e;
        } else if (key == "epsilon_mass") {
            const double eps = parse_number<double>(value, where);
            spec.reactor.epsilon_mass = eps;
            spec.soup.epsilon_mass = eps;
        } else if (key == "stop_on_saturation") {
            if (value == "true" || value == "1") spec.reactor.stop_on_saturation = true;
            else if (value == "false" || value == "0") spec.reactor.stop_on_saturation = false;
            else throw ConfigError(where + ": stop_on_saturation must be true or false");
        } else if (key == "pair_fraction") {
            spec.soup.pair_fraction = parse_number<double>(value, where);
        } else if (key == "unary_probability") {
            spec.soup.unary_probability = parse_number<double>(value, where);
        } else if (key == "output") {
            spec.output = resolve(value);
        } else if (key == "threads") {
            spec.threads = parse_count(value, where);
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open experiment spec '" + path.string() + "'");
    }
    return parse_experiment_spec(in, path.string(), path.parent_path());
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t run, ReactorMode /*mode*/) {
    return base_seed + static_cast<std::uint64_t>(run);
}

// ---------------------------------------------------------------------------
// Experiment driver

std::vector<SummaryRow> summarize(std::span<const RunRecord> records) {
    std::vector<SummaryRow> rows;
    std::size_t k = 0;
    while (k < records.size()) {
        SummaryRow row;
        row.problem = records[k].problem;
        while (k < records.size() && records[k].problem == row.problem) {
            const ReactorMode mode = records[k].mode;
            RunningStats acc;
            while (k < records.size() && records[k].problem == row.problem && records[k].mode == mode) {
                acc.add(records[k].best_mass);
                ++k;
            }
            const ModeSummary s{acc.mean(), acc.sample_std(), acc.min(), acc.max(), acc.count()};
            (mode == ReactorMode::TwoD ? row.two_d : row.zero_d) = s;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

struct Job {
    std::size_t problem;
    ReactorMode mode;
    std::size_t run;
};

RunRecord execute(const Job& job, const ExperimentSpec& spec, const TspInstance& instance) {
    RunRecord rec;
    rec.problem = job.problem;
    rec.mode = job.mode;
    rec.run = job.run;
    rec.seed = derive_seed(spec.base_seed, job.run, job.mode);
    RunResult result;
    if (job.mode == ReactorMode::TwoD) {
        ReactorConfig cfg = spec.reactor;
        cfg.seed = rec.seed;
        result = run(cfg, instance);
    } else {
        SoupConfig cfg = spec.soup;
        cfg.seed = rec.seed;
        result = run_0d(cfg, instance);
    }
    rec.best_mass = result.best_mass;
    rec.epochs = result.epochs;
    if (spec.keep_traces) {
        rec.trace = std::move(result.trace);
    }
    return rec;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << contents;
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();

    std::vector<TspInstance> instances;
    if (!spec.instance_paths.empty()) {
        for (const auto& p : spec.instance_paths) {
            instances.push_back(load_instance(p.string()));
        }
    } else {
        for (std::size_t p = 1; p <= spec.problems; ++p) {
            RandomStream rng(spec.instance_seed + p);
            instances.push_back(generate_instance(spec.cities, rng));
        }
    }
    if (!spec.output.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(spec.output, ec);
        if (ec) {
            throw IoError("cannot create output directory '" + spec.output.string() + "': " + ec.message());
        }
    }

    std::vector<ReactorMode> modes;
    if (spec.mode != ExperimentMode::TwoD) modes.push_back(ReactorMode::ZeroD);
    if (spec.mode != ExperimentMode::ZeroD) modes.push_back(ReactorMode::TwoD);

    std::vector<Job> jobs;
    for (std::size_t p = 1; p <= instances.size(); ++p) {
        for (const ReactorMode m : modes) {
            for (std::size_t r = 1; r <= spec.runs; ++r) {
                jobs.push_back({p, m, r});
            }
        }
    }

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            try {
                records[k] = execute(jobs[k], spec, instances[jobs[k].problem - 1]);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min(spec.threads, std::max<std::size_t>(jobs.size(), 1));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.problem, a.mode, a.run) < std::tie(b.problem, b.mode, b.run);
    });

    ExperimentResult result;
    result.summary = summarize(records);
    result.runs = std::move(records);

    if (!spec.output.empty()) {
        if (spec.instance_paths.empty()) {
            for (std::size_t p = 1; p <= instances.size(); ++p) {
                std::ostringstream ss;
                write_instance(ss, instances[p - 1]);
                write_file(spec.output / ("instance_" + std::to_string(p) + ".txt"), ss.str());
            }
        }
        std::ostringstream runs_csv;
        write_runs_csv(runs_csv, result.runs);
        write_file(spec.output / "runs.csv", runs_csv.str());
        std::ostringstream summary_csv;
        write_summary_csv(summary_csv, result.summary);
        write_file(spec.output / "summary.csv", summary_csv.str());
    }
    return result;
}

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "problem,mode,run,seed,best_mass,epochs\n";
    for (const auto& r : records) {
        out << r.problem << ',' << mode_name(r.mode) << ',' << r.run << ',' << r.seed << ',' << r.best_mass << ','
            << r.epochs << '\n';
    }
    out.precision(old_precision);
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "problem,0dacr_mean,0dacr_std,2dacr_mean,2dacr_std,runs,note\n";
    for (const auto& row : rows) {
        std::size_t runs = 0;
        out << row.problem;
        for (const auto* s : {&row.zero_d, &row.two_d}) {
            if (*s) {
                out << ',' << (*s)->mean << ',' << (*s)->std;
                runs = std::max(runs, (*s)->runs);
            } else {
                out << ",,";
            }
        }
        out << ',' << runs << ',' << (runs == 1 ? "single run: std reported as 0" : "") << '\n';
    }
    out.precision(old_precision);
}

}  // namespace acr
