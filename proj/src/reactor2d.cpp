#include "acr/reactor2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "acr/errors.hpp"

namespace acr {

void ReactorConfig::validate() const {
    if (rows < 2 || cols < 2) {
        throw ConfigError("reactor grid must be at least 2x2, got " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
    const auto cells = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (initial_molecules < 1) {
        throw ConfigError("reactor needs at least one initial molecule");
    }
    if (initial_molecules > cells) {
        throw ConfigError(std::to_string(initial_molecules) + " molecules do not fit a grid of " +
                          std::to_string(cells) + " cells");
    }
    if (!(decay_probability >= 0.0 && decay_probability <= 1.0)) {
        throw ConfigError("decay probability must lie in [0, 1]");
    }
    if (!(epsilon_mass > 0.0) || !std::isfinite(epsilon_mass)) {
        throw ConfigError("mass tolerance must be positive and finite");
    }
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(int rows, int cols, std::size_t atoms)
    : rows_(rows), cols_(cols), atoms_(atoms),
      cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

const Resident* Grid::at(Cell c) const {
    const auto& slot = cells_[index(c)];
    return slot ? &*slot : nullptr;
}

std::optional<Cell> Grid::locate(MoleculeId id) const {
    const auto it = where_.find(id);
    if (it == where_.end()) {
        return std::nullopt;
    }
    return cell_of(it->second);
}

MoleculeId Grid::place(Cell c, Molecule m, Direction d) {
    auto& slot = cells_[index(c)];
    if (slot) {
        throw std::logic_error("place() on an occupied cell");
    }
    const MoleculeId id = next_id_++;
    slot = Resident{id, std::move(m), d};
    where_.emplace(id, index(c));
    return id;
}

MoleculeId Grid::replace(Cell c, Molecule m, Direction d) {
    auto& slot = cells_[index(c)];
    if (!slot) {
        throw std::logic_error("replace() on an empty cell");
    }
    where_.erase(slot->id);
    const MoleculeId id = next_id_++;
    slot = Resident{id, std::move(m), d};
    where_.emplace(id, index(c));
    return id;
}

void Grid::mutate(Cell c, Molecule m) {
    auto& slot = cells_[index(c)];
    if (!slot) {
        throw std::logic_error("mutate() on an empty cell");
    }
    slot->molecule = std::move(m);
}

void Grid::set_direction(Cell c, Direction d) {
    auto& slot = cells_[index(c)];
    if (!slot) {
        throw std::logic_error("set_direction() on an empty cell");
    }
    slot->direction = d;
}

void Grid::move_all(const std::vector<std::pair<Cell, Cell>>& moves) {
    std::vector<Resident> lifted;
    lifted.reserve(moves.size());
    for (const auto& [from, to] : moves) {
        auto& slot = cells_[index(from)];
        if (!slot) {
            throw std::logic_error("move_all() from an empty cell");
        }
        lifted.push_back(std::move(*slot));
        slot.reset();
    }
    for (std::size_t k = 0; k < moves.size(); ++k) {
        auto& slot = cells_[index(moves[k].second)];
        if (slot) {
            throw std::logic_error("move_all() into an occupied cell");
        }
        where_[lifted[k].id] = index(moves[k].second);
        slot = std::move(lifted[k]);
    }
}

MassSummary Grid::masses() const {
    MassSummary s;
    for (const auto& slot : cells_) {
        if (slot) {
            s.add(slot->molecule.mass());
        }
    }
    return s;
}

const Resident* Grid::lightest() const {
    const Resident* best = nullptr;
    for (const auto& slot : cells_) {
        if (slot && (best == nullptr || slot->molecule.mass() < best->molecule.mass())) {
            best = &*slot;
        }
    }
    return best;
}

void Grid::check_consistency() const {
    std::size_t occupied_cells = 0;
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (!cells_[k]) {
            continue;
        }
        ++occupied_cells;
        const auto it = where_.find(cells_[k]->id);
        if (it == where_.end() || it->second != k) {
            throw std::logic_error("grid index out of sync for molecule " + std::to_string(cells_[k]->id));
        }
        if (cells_[k]->molecule.size() != atoms_) {
            throw std::logic_error("molecule length differs from the grid's atom count");
        }
    }
    if (occupied_cells != where_.size()) {
        throw std::logic_error("grid index holds molecules that occupy no cell");
    }
}

// ---------------------------------------------------------------------------
// Collision matrix

std::size_t CollisionMatrix::pair_count() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const CollisionEntry& e) {
        return std::holds_alternative<PairCollision>(e);
    }));
}

std::size_t CollisionMatrix::wall_count() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const CollisionEntry& e) {
        return std::holds_alternative<WallCollision>(e);
    }));
}

// ---------------------------------------------------------------------------
// Reactor operations

Grid init_reactor(const ReactorConfig& config, const TspInstance& instance, RandomStream& rng) {
    config.validate();
    // Molecules are drawn first so that a soup seeded alike starts from the same set.
    auto population = random_population(config.initial_molecules, instance, rng);

    Grid grid(config.rows, config.cols, instance.size());
    const std::size_t cells = grid.capacity();
    std::vector<std::size_t> slots(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        slots[k] = k;
    }
    for (std::size_t k = 0; k < population.size(); ++k) {
        std::swap(slots[k], slots[k + rng.below(cells - k)]);
        const Cell c{static_cast<int>(slots[k] / static_cast<std::size_t>(config.cols)) + 1,
                     static_cast<int>(slots[k] % static_cast<std::size_t>(config.cols)) + 1};
        grid.place(c, std::move(population[k]), random_direction(config.stencil, rng));
    }
    return grid;
}

CollisionMatrix compute_collisions(const Grid& grid, const Traversal& order) {
    enum class State : std::uint8_t { Idle, Moving, Frozen };

    const int rows = grid.rows();
    const int cols = grid.cols();
    CollisionMatrix out(rows, cols);
    auto idx = [cols](Cell c) {
        return static_cast<std::size_t>(c.row - 1) * static_cast<std::size_t>(cols) +
               static_cast<std::size_t>(c.col - 1);
    };

    // Molecules do not move during the pass; their state is keyed by home cell.
    std::vector<State> state(grid.capacity(), State::Idle);
    // For empty cells: index into `planned` of the move claiming it.
    constexpr std::size_t kUnclaimed = static_cast<std::size_t>(-1);
    std::vector<std::size_t> claim(grid.capacity(), kUnclaimed);
    std::vector<PlannedMove> planned;
    std::vector<bool> cancelled;

    for (const Cell& cell : order.cells()) {
        const Resident* self = grid.at(cell);
        if (self == nullptr || self->direction == Direction::None || state[idx(cell)] != State::Idle) {
            continue;
        }
        const Offset step = offset_of(self->direction);
        const Cell target{cell.row + step.drow, cell.col + step.dcol};

        if (!grid.contains(target)) {
            out.at(cell) = WallCollision{self->id, self->direction};
            state[idx(cell)] = State::Frozen;
            continue;
        }

        if (grid.is_empty(target)) {
            if (!std::holds_alternative<NoCollision>(out.at(target))) {
                continue;  // already resolved this pass
            }
            const std::size_t c = claim[idx(target)];
            if (c == kUnclaimed) {
                claim[idx(target)] = planned.size();
                planned.push_back({self->id, cell, target});
                cancelled.push_back(false);
                state[idx(cell)] = State::Moving;
            } else {
                const PlannedMove& rival = planned[c];
                out.at(target) = PairCollision{self->id, rival.id};
                state[idx(cell)] = State::Frozen;
                state[idx(rival.from)] = State::Frozen;
                cancelled[c] = true;
                claim[idx(target)] = kUnclaimed;
            }
            continue;
        }

        if (state[idx(target)] == State::Idle) {
            out.at(target) = PairCollision{self->id, grid.at(target)->id};
            state[idx(cell)] = State::Frozen;
            state[idx(target)] = State::Frozen;
        }
        // Otherwise the occupant has already moved or collided: stay put.
    }

    for (std::size_t k = 0; k < planned.size(); ++k) {
        if (!cancelled[k]) {
            out.moves().push_back(planned[k]);
        }
    }
    return out;
}

ReactionCounters apply_reactions(Grid& grid, const CollisionMatrix& collisions, const Traversal& order,
                                 const TspInstance& instance, RandomStream& rng, Stencil stencil,
                                 double epsilon_mass) {
    ReactionCounters counters;
    const std::size_t n = grid.atoms();
    const double mean = grid.masses().mean();

    // Cells claimed by pending moves stay free for their movers.
    std::vector<bool> claimed(order.size(), false);
    for (const auto& mv : collisions.moves()) {
        claimed[order.rank_of(mv.to)] = true;
    }
    auto is_free = [&](Cell c) { return grid.is_empty(c) && !claimed[order.rank_of(c)]; };

    for (const Cell& cell : order.cells()) {
        const CollisionEntry& entry = collisions.at(cell);

        if (const auto* pair = std::get_if<PairCollision>(&entry)) {
            const Cell home1 = *grid.locate(pair->first);
            const Cell home2 = *grid.locate(pair->second);
            const Molecule m1 = grid.at(home1)->molecule;
            const Molecule m2 = grid.at(home2)->molecule;
            const std::size_t j0 = rng.one_to(n);
            BinaryProducts products = react_binary(m1, m2, j0, instance);
            const double average = products.average_mass();
            ++counters.r1;

            grid.set_direction(home1, direction_after_binary(m1.mass(), average, stencil, rng, epsilon_mass));
            grid.set_direction(home2, direction_after_binary(m2.mass(), average, stencil, rng, epsilon_mass));

            std::size_t placed = 0;
            if (grid.empty() > 0) {
                const std::size_t start = order.rank_of(cell);
                Molecule* pending[2] = {&products.m3, &products.m4};
                for (std::size_t step = 0; step < order.size() && placed < 2; ++step) {
                    const Cell& candidate = order[(start + step) % order.size()];
                    if (!is_free(candidate)) {
                        continue;
                    }
                    Molecule& product = *pending[placed];
                    const Direction d = direction_after_binary(product.mass(), average, stencil, rng, epsilon_mass);
                    grid.place(candidate, std::move(product), d);
                    ++placed;
                }
            }
            counters.products_placed += placed;
            if (placed == 0) {
                ++counters.suppressed;
            }
            continue;
        }

        if (const auto* wall = std::get_if<WallCollision>(&entry)) {
            const Resident* striker = grid.at(cell);
            const Molecule& m5 = striker->molecule;
            if (m5.mass() >= mean - epsilon_mass) {
                const std::size_t j = rng.one_to(n);
                const int flip = static_cast<int>(rng.one_to(2)) - 1;
                Molecule m6 = react_unary(m5, j, flip, instance);
                const Direction d = direction_after_unary(m6.mass(), m5.mass(), stencil, rng, epsilon_mass);
                grid.mutate(cell, std::move(m6));
                grid.set_direction(cell, d);
                ++counters.r2;
            } else {
                std::vector<Direction> options;
                for (const Direction d : admissible_directions(stencil)) {
                    if (d != wall->heading) {
                        options.push_back(d);
                    }
                }
                grid.set_direction(cell, options[rng.below(options.size())]);
                ++counters.reflections;
            }
        }
    }
    return counters;
}

std::size_t decay(Grid& grid, const Traversal& order, const TspInstance& instance, RandomStream& rng, double p,
                  Stencil stencil, double epsilon_mass) {
    if (p <= 0.0 || grid.occupied() == 0) {
        return 0;
    }
    const double mean = grid.masses().mean();
    std::size_t replaced = 0;
    for (const Cell& cell : order.cells()) {
        const Resident* r = grid.at(cell);
        if (r == nullptr || !(r->molecule.mass() > mean + epsilon_mass)) {
            continue;
        }
        if (rng.bernoulli(p)) {
            Molecule fresh = random_molecule(grid.atoms(), instance, rng);
            grid.replace(cell, std::move(fresh), random_direction(stencil, rng));
            ++replaced;
        }
    }
    return replaced;
}

bool is_saturated(const Grid& grid) { return grid.empty() == 0; }

EpochStats grid_stats(const Grid& grid) {
    const MassSummary s = grid.masses();
    EpochStats stats;
    stats.epoch = grid.epoch();
    stats.best_mass = s.min();
    stats.mean_mass = s.mean();
    stats.worst_mass = s.max();
    stats.empty_cells = grid.empty();
    return stats;
}

EpochStats step_epoch(Grid& grid, const Traversal& order, const ReactorConfig& config, const TspInstance& instance,
                      RandomStream& rng) {
    const CollisionMatrix collisions = compute_collisions(grid, order);
    const ReactionCounters counters =
        apply_reactions(grid, collisions, order, instance, rng, config.stencil, config.epsilon_mass);
    const std::size_t decayed =
        decay(grid, order, instance, rng, config.decay_probability, config.stencil, config.epsilon_mass);

    std::vector<std::pair<Cell, Cell>> moves;
    moves.reserve(collisions.moves().size());
    for (const auto& mv : collisions.moves()) {
        const Resident* r = grid.at(mv.from);
        if (r != nullptr && r->id == mv.id) {  // decayed movers stay put
            moves.emplace_back(mv.from, mv.to);
        }
    }
    grid.move_all(moves);
    grid.advance_epoch();

    EpochStats stats = grid_stats(grid);
    stats.r1_count = counters.r1;
    stats.r2_count = counters.r2;
    stats.decay_count = decayed;
    return stats;
}

EpochStats step_epoch(Grid& grid, const ReactorConfig& config, const TspInstance& instance, RandomStream& rng) {
    const Traversal order(config.ordering, grid.rows(), grid.cols());
    return step_epoch(grid, order, config, instance, rng);
}

std::string render_grid(const Grid& grid) {
    const MassSummary s = grid.masses();
    const double span = s.max() - s.min();
    std::string out;
    out.reserve(static_cast<std::size_t>(grid.rows()) * static_cast<std::size_t>(grid.cols() + 1));
    for (int r = 1; r <= grid.rows(); ++r) {
        for (int c = 1; c <= grid.cols(); ++c) {
            const Resident* res = grid.at({r, c});
            if (res == nullptr) {
                out += '.';
                continue;
            }
            int bucket = 0;
            if (span > 0.0) {
                bucket = static_cast<int>(16.0 * (res->molecule.mass() - s.min()) / span);
                bucket = std::clamp(bucket, 0, 15);
            }
            out += "0123456789abcdef"[bucket];
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Runs

Reactor2D::Reactor2D(const ReactorConfig& config, const TspInstance& instance)
    : config_(config),
      instance_(&instance),
      rng_(config.seed),
      order_(config.ordering, config.rows, config.cols),
      grid_(init_reactor(config_, instance, rng_)) {
    const Resident* best = grid_.lightest();
    record_epoch(result_, grid_stats(grid_), best ? &best->molecule : nullptr);
    if (is_saturated(grid_)) {
        result_.saturated_at = 0;
    }
}

bool Reactor2D::finished() const {
    if (result_.epochs >= config_.max_epochs) {
        return true;
    }
    return config_.stop_on_saturation && result_.saturated_at.has_value();
}

const EpochStats& Reactor2D::step() {
    const EpochStats stats = step_epoch(grid_, order_, config_, *instance_, rng_);
    const Resident* best = grid_.lightest();
    record_epoch(result_, stats, best ? &best->molecule : nullptr);
    if (!result_.saturated_at && is_saturated(grid_)) {
        result_.saturated_at = stats.epoch;
    }
    return result_.trace.back();
}

RunResult Reactor2D::run() {
    while (!finished()) {
        step();
    }
    return result_;
}

RunResult run(const ReactorConfig& config, const TspInstance& instance) {
    config.validate();
    Reactor2D reactor(config, instance);
    return reactor.run();
}

}  // namespace acr
