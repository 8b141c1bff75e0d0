#include "acr/reactor0d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acr/errors.hpp"

namespace acr {

void SoupConfig::validate() const {
    if (capacity < 1) {
        throw ConfigError("soup capacity must be positive");
    }
    if (initial_molecules < 1 || initial_molecules > capacity) {
        throw ConfigError("initial soup size must lie in 1.." + std::to_string(capacity));
    }
    if (!(pair_fraction > 0.0 && pair_fraction <= 1.0)) {
        throw ConfigError("pair fraction must lie in (0, 1]");
    }
    if (!(unary_probability >= 0.0 && unary_probability <= 1.0)) {
        throw ConfigError("unary probability must lie in [0, 1]");
    }
    if (!(decay_probability >= 0.0 && decay_probability <= 1.0)) {
        throw ConfigError("decay probability must lie in [0, 1]");
    }
    if (!(epsilon_mass > 0.0) || !std::isfinite(epsilon_mass)) {
        throw ConfigError("mass tolerance must be positive and finite");
    }
}

std::uint64_t Soup::add(Molecule m) {
    const std::uint64_t id = fresh_id();
    members_.push_back({id, std::move(m)});
    return id;
}

MassSummary Soup::masses() const {
    MassSummary s;
    for (const auto& m : members_) {
        s.add(m.molecule.mass());
    }
    return s;
}

const SoupMember* Soup::lightest() const {
    const SoupMember* best = nullptr;
    for (const auto& m : members_) {
        if (best == nullptr || m.molecule.mass() < best->molecule.mass()) {
            best = &m;
        }
    }
    return best;
}

Soup init_soup(const SoupConfig& config, const TspInstance& instance, RandomStream& rng) {
    config.validate();
    Soup soup(config);
    for (auto& m : random_population(config.initial_molecules, instance, rng)) {
        soup.add(std::move(m));
    }
    return soup;
}

std::vector<SoupMember> truncate_heaviest(std::vector<SoupMember>& members, std::size_t capacity) {
    if (members.size() <= capacity) {
        return {};
    }
    std::sort(members.begin(), members.end(), [](const SoupMember& a, const SoupMember& b) {
        if (a.molecule.mass() != b.molecule.mass()) {
            return a.molecule.mass() < b.molecule.mass();
        }
        return a.id < b.id;
    });
    std::vector<SoupMember> removed(std::make_move_iterator(members.begin() + static_cast<std::ptrdiff_t>(capacity)),
                                    std::make_move_iterator(members.end()));
    members.resize(capacity);
    return removed;
}

EpochStats soup_stats(const Soup& soup) {
    const MassSummary s = soup.masses();
    EpochStats stats;
    stats.epoch = soup.epoch();
    stats.best_mass = s.min();
    stats.mean_mass = s.mean();
    stats.worst_mass = s.max();
    stats.empty_cells = soup.config().capacity > soup.size() ? soup.config().capacity - soup.size() : 0;
    return stats;
}

EpochStats step_epoch_0d(Soup& soup, const TspInstance& instance, RandomStream& rng) {
    const SoupConfig& cfg = soup.config();
    auto& members = soup.members();
    const std::size_t n = instance.size();
    EpochStats stats;

    // (a) disjoint uniform pairs; products join the soup, reactants stay.
    const std::size_t size = members.size();
    const auto pairs = static_cast<std::size_t>(std::floor(cfg.pair_fraction * static_cast<double>(size) / 2.0));
    if (pairs > 0) {
        std::vector<std::size_t> picks(size);
        for (std::size_t k = 0; k < size; ++k) {
            picks[k] = k;
        }
        for (std::size_t k = 0; k < 2 * pairs; ++k) {
            std::swap(picks[k], picks[k + rng.below(size - k)]);
        }
        std::vector<Molecule> products;
        products.reserve(2 * pairs);
        for (std::size_t p = 0; p < pairs; ++p) {
            const Molecule& m1 = members[picks[2 * p]].molecule;
            const Molecule& m2 = members[picks[2 * p + 1]].molecule;
            BinaryProducts out = react_binary(m1, m2, rng.one_to(n), instance);
            products.push_back(std::move(out.m3));
            products.push_back(std::move(out.m4));
        }
        for (auto& m : products) {
            soup.add(std::move(m));
        }
        stats.r1_count = pairs;
    }

    // (b) R2 on heavy members, in place.
    {
        const double mean = soup.masses().mean();
        for (auto& member : members) {
            if (!(member.molecule.mass() > mean + cfg.epsilon_mass)) {
                continue;
            }
            if (rng.bernoulli(cfg.unary_probability)) {
                const std::size_t j = rng.one_to(n);
                const int flip = static_cast<int>(rng.one_to(2)) - 1;
                member.molecule = react_unary(member.molecule, j, flip, instance);
                ++stats.r2_count;
            }
        }
    }

    // (c) decay.
    if (cfg.decay_probability > 0.0) {
        const double mean = soup.masses().mean();
        for (auto& member : members) {
            if (member.molecule.mass() > mean + cfg.epsilon_mass && rng.bernoulli(cfg.decay_probability)) {
                member = {soup.fresh_id(), random_molecule(n, instance, rng)};
                ++stats.decay_count;
            }
        }
    }

    // (d) capacity.
    truncate_heaviest(members, cfg.capacity);

    soup.advance_epoch();
    const EpochStats summary = soup_stats(soup);
    stats.epoch = summary.epoch;
    stats.best_mass = summary.best_mass;
    stats.mean_mass = summary.mean_mass;
    stats.worst_mass = summary.worst_mass;
    stats.empty_cells = summary.empty_cells;
    return stats;
}

RunResult run_0d(const SoupConfig& config, const TspInstance& instance) {
    config.validate();
    RandomStream rng(config.seed);
    Soup soup = init_soup(config, instance, rng);
    RunResult result;
    auto best_of = [&]() -> const Molecule* {
        const SoupMember* m = soup.lightest();
        return m ? &m->molecule : nullptr;
    };
    record_epoch(result, soup_stats(soup), best_of());
    while (result.epochs < config.max_epochs) {
        const EpochStats stats = step_epoch_0d(soup, instance, rng);
        record_epoch(result, stats, best_of());
    }
    return result;
}

}  // namespace acr
