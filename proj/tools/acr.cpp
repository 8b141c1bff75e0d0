// acr: command-line front end for the catalytic reactor library.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "acr/cop.hpp"
#include "acr/errors.hpp"
#include "acr/harness.hpp"
#include "acr/ordering.hpp"
#include "acr/reactions.hpp"
#include "acr/reactor0d.hpp"
#include "acr/reactor2d.hpp"

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfig = 2, kIo = 3, kUnsupported = 4 };

std::pair<int, int> parse_dims(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) {
        throw acr::ConfigError("dimensions must be written IxJ, got '" + text + "'");
    }
    try {
        std::size_t used_r = 0;
        std::size_t used_c = 0;
        const std::string rows = text.substr(0, x);
        const std::string cols = text.substr(x + 1);
        const int r = std::stoi(rows, &used_r);
        const int c = std::stoi(cols, &used_c);
        if (used_r != rows.size() || used_c != cols.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return {r, c};
    } catch (const std::logic_error&) {
        throw acr::ConfigError("dimensions must be written IxJ, got '" + text + "'");
    }
}

std::string mass_text(double m) {
    std::ostringstream ss;
    ss << std::setprecision(std::numeric_limits<double>::max_digits10) << m;
    return ss.str();
}

std::string omega_text(const std::vector<acr::TraceStep>& steps, std::size_t upto) {
    std::string out = "{";
    for (std::size_t k = 0; k <= upto; ++k) {
        if (k > 0) out += ',';
        out += std::to_string(steps[k].atom);
    }
    return out + "}";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw acr::IoError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw acr::IoError("failed writing '" + path + "'");
    }
}

struct RunOptions {
    std::string mode = "2d";
    std::string instance;
    std::string grid = "30x30";
    std::size_t molecules = 500;
    int stencil = 5;
    std::string ordering = "morton";
    double decay = 0.05;
    std::size_t max_epochs = 5000;
    std::uint64_t seed = 1;
    std::size_t dump_every = 0;
    std::string out;
    double pair_fraction = 0.5;
    double unary_probability = 0.05;
    double epsilon_mass = acr::kDefaultEpsilonMass;
    bool stop_on_saturation = false;
};

void print_best(const acr::RunResult& result) {
    std::cout << "best_mass " << mass_text(result.best_mass) << '\n';
    std::cout << "epochs " << result.epochs << '\n';
    if (result.saturated_at) {
        std::cout << "saturated_at " << *result.saturated_at << '\n';
    }
    std::cout << "tour " << acr::format_permutation(result.best.perm()) << '\n';
}

void command_run(const RunOptions& o) {
    const acr::TspInstance instance = acr::load_instance(o.instance);
    acr::RunResult result;
    if (o.mode == "2d") {
        acr::ReactorConfig cfg;
        std::tie(cfg.rows, cfg.cols) = parse_dims(o.grid);
        cfg.initial_molecules = o.molecules;
        cfg.stencil = o.stencil == 9 ? acr::Stencil::NinePoint : acr::Stencil::FivePoint;
        cfg.ordering = acr::parse_order_kind(o.ordering);
        cfg.decay_probability = o.decay;
        cfg.max_epochs = o.max_epochs;
        cfg.seed = o.seed;
        cfg.epsilon_mass = o.epsilon_mass;
        cfg.stop_on_saturation = o.stop_on_saturation;
        cfg.validate();
        acr::Reactor2D reactor(cfg, instance);
        auto dump = [&] {
            if (o.dump_every > 0 && reactor.grid().epoch() % o.dump_every == 0) {
                std::cout << "epoch " << reactor.grid().epoch() << '\n' << acr::render_grid(reactor.grid());
            }
        };
        dump();
        while (!reactor.finished()) {
            reactor.step();
            dump();
        }
        result = reactor.result();
    } else {
        acr::SoupConfig cfg;
        cfg.capacity = o.molecules;
        cfg.initial_molecules = o.molecules;
        cfg.pair_fraction = o.pair_fraction;
        cfg.unary_probability = o.unary_probability;
        cfg.decay_probability = o.decay;
        cfg.max_epochs = o.max_epochs;
        cfg.seed = o.seed;
        cfg.epsilon_mass = o.epsilon_mass;
        result = acr::run_0d(cfg, instance);
    }
    if (!o.out.empty()) {
        std::ostringstream csv;
        acr::write_stats_csv(csv, result.trace);
        write_text(o.out, csv.str());
    }
    print_best(result);
}

void command_exact(const std::string& path) {
    const acr::TspInstance instance = acr::load_instance(path);
    const acr::ExactTour best = acr::exact_tour(instance);
    std::cout << "optimal_mass " << mass_text(best.mass) << '\n';
    std::cout << "tour " << acr::format_permutation(best.tour) << '\n';
    if (instance.size() <= 9) {
        const acr::ExactTour check = acr::enumerate_tour(instance);
        std::cout << "enumeration " << mass_text(check.mass) << (check.mass == best.mass ? " agree" : " DISAGREE")
                  << '\n';
    }
}

void command_trace_r1(const std::string& m1_text, const std::string& m2_text, std::size_t j0,
                      const std::string& instance_path) {
    const acr::Permutation m1 = acr::parse_permutation(m1_text);
    const acr::Permutation m2 = acr::parse_permutation(m2_text);
    const acr::SelectionTrace trace = acr::trace_selection_steps(m1, m2, j0);
    std::cout << "m1 = " << acr::format_permutation(m1) << '\n';
    std::cout << "m2 = " << acr::format_permutation(m2) << '\n';
    std::cout << "j0 = " << j0 << '\n';
    std::string bits(m1.size(), '0');
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        bits[step.position - 1] = '1';
        std::cout << "step " << (k + 1) << ": j=" << step.position << " atom=" << step.atom
                  << " omega=" << omega_text(trace.steps, k) << " S=" << bits << '\n';
    }
    std::cout << "S = " << acr::format_permutation(std::vector<acr::Atom>(trace.selection.bits.begin(),
                                                                           trace.selection.bits.end()))
              << '\n';
    const auto [m3, m4] = acr::recombine(m1, m2, trace.selection);
    if (instance_path.empty()) {
        std::cout << "m3 = " << acr::format_permutation(m3) << '\n';
        std::cout << "m4 = " << acr::format_permutation(m4) << '\n';
    } else {
        const acr::TspInstance instance = acr::load_instance(instance_path);
        const acr::Molecule a(m1, instance);
        const acr::Molecule b(m2, instance);
        const acr::Molecule c(m3, instance);
        const acr::Molecule d(m4, instance);
        std::cout << "m3 = " << acr::format_permutation(m3) << " mass=" << mass_text(c.mass()) << '\n';
        std::cout << "m4 = " << acr::format_permutation(m4) << " mass=" << mass_text(d.mass()) << '\n';
        std::cout << "reactant_mean " << mass_text((a.mass() + b.mass()) / 2) << " product_mean "
                  << mass_text((c.mass() + d.mass()) / 2) << '\n';
    }
}

void command_trace_r2(const std::string& m5_text, std::size_t j, int flip, const std::string& instance_path) {
    const acr::Permutation m5 = acr::parse_permutation(m5_text);
    if (!acr::validate_permutation(m5, m5.size()) || m5.size() < 2) {
        throw acr::InvalidInput("m5 must be a permutation of 1..n with n >= 2");
    }
    const std::size_t n = m5.size();
    const acr::Permutation m6 = acr::adjacent_transposition(m5, j, flip);
    const std::size_t other = flip == 0 ? (j == n ? 1 : j + 1) : (j == 1 ? n : j - 1);
    std::cout << "m5 = " << acr::format_permutation(m5) << '\n';
    std::cout << "j = " << j << " flip = " << flip << '\n';
    std::cout << "atom " << m5[j - 1] << " moves from position " << j << " to " << other << '\n';
    std::cout << "atom " << m5[other - 1] << " moves from position " << other << " to " << j << '\n';
    if (instance_path.empty()) {
        std::cout << "m6 = " << acr::format_permutation(m6) << '\n';
    } else {
        const acr::TspInstance instance = acr::load_instance(instance_path);
        const acr::Molecule before(m5, instance);
        const acr::Molecule after(m6, instance);
        std::cout << "m6 = " << acr::format_permutation(m6) << " mass=" << mass_text(after.mass())
                  << " (reactant mass=" << mass_text(before.mass()) << ")\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-dimensional artificial catalytic reactor for permutation problems"};
    app.require_subcommand(1);

    // gen
    std::size_t gen_cities = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a random unit-square instance");
    gen->add_option("--cities", gen_cities, "Number of cities")->required()->check(CLI::Range(2, 1 << 20));
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output instance file")->required();

    // exact
    std::string exact_instance;
    auto* exact = app.add_subcommand("exact", "Exact optimum by Held-Karp (n <= 15)");
    exact->add_option("--instance", exact_instance, "Instance file")->required();

    // run
    RunOptions ro;
    auto* runc = app.add_subcommand("run", "Run one reactor");
    runc->add_option("--mode", ro.mode, "Reactor kind")->check(CLI::IsMember({"2d", "0d"}));
    runc->add_option("--instance", ro.instance, "Instance file")->required();
    runc->add_option("--grid", ro.grid, "Grid size IxJ (2d)");
    runc->add_option("--molecules", ro.molecules, "Initial molecules (0d: also capacity)");
    runc->add_option("--stencil", ro.stencil, "Direction stencil")->check(CLI::IsMember({5, 9}));
    runc->add_option("--ordering", ro.ordering, "Traversal order")->check(CLI::IsMember({"morton", "row", "col"}));
    runc->add_option("--decay", ro.decay, "Decay probability");
    runc->add_option("--max-epochs", ro.max_epochs, "Epoch budget");
    runc->add_option("--seed", ro.seed, "Random seed");
    runc->add_option("--dump-every", ro.dump_every, "Print a grid snapshot every N epochs (2d)");
    runc->add_option("--out", ro.out, "Per-epoch stats CSV");
    runc->add_option("--pair-fraction", ro.pair_fraction, "Fraction of the soup paired per epoch (0d)");
    runc->add_option("--unary-probability", ro.unary_probability, "R2 probability for heavy molecules (0d)");
    runc->add_option("--epsilon-mass", ro.epsilon_mass, "Mass equality tolerance");
    runc->add_flag("--stop-on-saturation", ro.stop_on_saturation, "Stop once no catalyst remains (2d)");

    // experiment
    std::string spec_path;
    std::string exp_out;
    std::size_t exp_threads = 0;
    auto* experiment = app.add_subcommand("experiment", "Run a multi-instance comparison");
    experiment->add_option("--spec", spec_path, "Experiment spec file")->required();
    experiment->add_option("--out", exp_out, "Override the output directory");
    experiment->add_option("--threads", exp_threads, "Override the worker count");

    // order
    std::string order_kind = "morton";
    std::string order_dims;
    auto* order = app.add_subcommand("order", "Print a grid traversal order");
    order->add_option("--kind", order_kind, "Traversal")->check(CLI::IsMember({"morton", "row", "col"}));
    order->add_option("--dims", order_dims, "Grid size IxJ")->required();

    // trace-r1
    std::string t1_m1;
    std::string t1_m2;
    std::size_t t1_j0 = 1;
    std::string t1_instance;
    auto* trace_r1 = app.add_subcommand("trace-r1", "Trace the binary reaction step by step");
    trace_r1->add_option("--m1", t1_m1, "First reactant, e.g. 1,2,3,4")->required();
    trace_r1->add_option("--m2", t1_m2, "Second reactant")->required();
    trace_r1->add_option("--j0", t1_j0, "Collision point (1-based)")->required();
    trace_r1->add_option("--instance", t1_instance, "Instance for masses");

    // trace-r2
    std::string t2_m5;
    std::size_t t2_j = 1;
    int t2_flip = 0;
    std::string t2_instance;
    auto* trace_r2 = app.add_subcommand("trace-r2", "Trace the unary reaction");
    trace_r2->add_option("--m5", t2_m5, "Reactant")->required();
    trace_r2->add_option("--j", t2_j, "Collision point (1-based)")->required();
    trace_r2->add_option("--flip", t2_flip, "0 moves the atom right, 1 left")->required()->check(CLI::Range(0, 1));
    trace_r2->add_option("--instance", t2_instance, "Instance for masses");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*gen) {
            acr::RandomStream rng(gen_seed);
            acr::save_instance(gen_out, acr::generate_instance(gen_cities, rng));
        } else if (*exact) {
            command_exact(exact_instance);
        } else if (*runc) {
            command_run(ro);
        } else if (*experiment) {
            acr::ExperimentSpec spec = acr::load_experiment_spec(spec_path);
            if (!exp_out.empty()) spec.output = exp_out;
            if (exp_threads > 0) spec.threads = exp_threads;
            const acr::ExperimentResult result = acr::run_experiment(spec);
            acr::write_summary_csv(std::cout, result.summary);
        } else if (*order) {
            const auto [rows, cols] = parse_dims(order_dims);
            for (const acr::Cell& c : acr::enumerate(acr::parse_order_kind(order_kind), rows, cols)) {
                std::cout << c.row << ' ' << c.col << '\n';
            }
        } else if (*trace_r1) {
            command_trace_r1(t1_m1, t1_m2, t1_j0, t1_instance);
        } else if (*trace_r2) {
            command_trace_r2(t2_m5, t2_j, t2_flip, t2_instance);
        }
    } catch (const acr::UnsupportedSize& e) {
        std::cerr << "acr: " << e.what() << '\n';
        return kUnsupported;
    } catch (const acr::IoError& e) {
        std::cerr << "acr: " << e.what() << '\n';
        return kIo;
    } catch (const acr::InvalidInput& e) {
        std::cerr << "acr: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "acr: " << e.what() << '\n';
        return kFailure;
    }
    std::cout.flush();
    return kOk;
}
