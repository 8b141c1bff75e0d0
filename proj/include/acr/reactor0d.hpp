#pragma once

// Topology-less baseline reactor. The same R1/R2 reactions and decay policy
// as the grid reactor, applied to an unstructured population with uniform
// random pairing and a fixed capacity.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acr/cop.hpp"
#include "acr/random.hpp"
#include "acr/reactions.hpp"
#include "acr/stats.hpp"

namespace acr {

struct SoupConfig {
    std::size_t capacity = 500;
    std::size_t initial_molecules = 500;
    double pair_fraction = 0.5;
    double unary_probability = 0.05;
    double decay_probability = 0.05;
    std::size_t max_epochs = 5000;
    std::uint64_t seed = 1;
    double epsilon_mass = kDefaultEpsilonMass;

    void validate() const;
};

struct SoupMember {
    std::uint64_t id = 0;
    Molecule molecule;
};

class Soup {
public:
    explicit Soup(const SoupConfig& config) : config_(config) {}

    const SoupConfig& config() const { return config_; }
    std::size_t size() const { return members_.size(); }
    std::size_t epoch() const { return epoch_; }
    void advance_epoch() { ++epoch_; }

    const std::vector<SoupMember>& members() const { return members_; }
    std::vector<SoupMember>& members() { return members_; }

    std::uint64_t add(Molecule m);
    std::uint64_t fresh_id() { return next_id_++; }

    MassSummary masses() const;
    const SoupMember* lightest() const;

private:
    SoupConfig config_;
    std::size_t epoch_ = 0;
    std::uint64_t next_id_ = 1;
    std::vector<SoupMember> members_;
};

/// Soup holding config.initial_molecules random molecules, drawn from rng
/// exactly as init_reactor draws its population.
Soup init_soup(const SoupConfig& config, const TspInstance& instance, RandomStream& rng);

/// Keeps the `capacity` lightest members (ties: lower id first) and returns
/// the removed ones.
std::vector<SoupMember> truncate_heaviest(std::vector<SoupMember>& members, std::size_t capacity);

/// One epoch: random disjoint R1 pairs adding both products, R2 on members
/// strictly heavier than the mean with unary_probability, decay of
/// above-mean members, then truncation to capacity.
EpochStats step_epoch_0d(Soup& soup, const TspInstance& instance, RandomStream& rng);

EpochStats soup_stats(const Soup& soup);

/// Runs exactly max_epochs epochs.
RunResult run_0d(const SoupConfig& config, const TspInstance& instance);

}  // namespace acr
