#pragma once

// The two-dimensional catalytic reactor.
//
// The reactor is an I x J matrix of cells. A cell holds one molecule or is
// empty; empty cells are the catalyst and are consumed when R1 products are
// placed, so the number of empty cells never grows. Each epoch runs
//
//   compute_collisions -> apply_reactions -> decay -> move
//
// Geometry: row 1 is the top, North decreases the row, every border is a wall.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "acr/cop.hpp"
#include "acr/ordering.hpp"
#include "acr/random.hpp"
#include "acr/reactions.hpp"
#include "acr/stats.hpp"

namespace acr {

using MoleculeId = std::uint64_t;

struct ReactorConfig {
    int rows = 30;
    int cols = 30;
    std::size_t initial_molecules = 500;
    Stencil stencil = Stencil::FivePoint;
    OrderKind ordering = OrderKind::Morton;
    double decay_probability = 0.05;
    std::size_t max_epochs = 5000;
    std::uint64_t seed = 1;
    double epsilon_mass = kDefaultEpsilonMass;
    /// End the run at the first saturated epoch instead of running to max_epochs.
    bool stop_on_saturation = false;

    /// Throws ConfigError on the first violated constraint.
    void validate() const;
};

struct Resident {
    MoleculeId id = 0;
    Molecule molecule;
    Direction direction = Direction::None;
};

/// Cell storage plus the id -> cell index. Every occupied cell holds exactly
/// one resident and every resident occupies exactly one cell.
class Grid {
public:
    Grid(int rows, int cols, std::size_t atoms);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t atoms() const { return atoms_; }
    std::size_t capacity() const { return cells_.size(); }
    std::size_t occupied() const { return where_.size(); }
    std::size_t empty() const { return capacity() - occupied(); }
    std::size_t epoch() const { return epoch_; }
    void advance_epoch() { ++epoch_; }

    bool contains(Cell c) const { return c.row >= 1 && c.row <= rows_ && c.col >= 1 && c.col <= cols_; }
    bool is_empty(Cell c) const { return !cells_[index(c)].has_value(); }

    const Resident* at(Cell c) const;
    std::optional<Cell> locate(MoleculeId id) const;

    /// Puts a new molecule on an empty cell and returns its fresh id.
    MoleculeId place(Cell c, Molecule m, Direction d);
    /// Swaps the resident of c for a new molecule with a fresh id.
    MoleculeId replace(Cell c, Molecule m, Direction d);
    /// Changes the resident's permutation; its id is kept.
    void mutate(Cell c, Molecule m);
    void set_direction(Cell c, Direction d);
    /// Moves every (from, to) pair at once. Targets must be empty or vacated by the same batch.
    void move_all(const std::vector<std::pair<Cell, Cell>>& moves);

    MassSummary masses() const;
    /// Lightest resident, or nullptr when the grid holds none.
    const Resident* lightest() const;

    /// Throws std::logic_error if the cell table and the id index disagree.
    void check_consistency() const;

private:
    std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.row - 1) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c.col - 1);
    }
    Cell cell_of(std::size_t idx) const {
        return {static_cast<int>(idx / static_cast<std::size_t>(cols_)) + 1,
                static_cast<int>(idx % static_cast<std::size_t>(cols_)) + 1};
    }

    int rows_;
    int cols_;
    std::size_t atoms_;
    std::size_t epoch_ = 0;
    MoleculeId next_id_ = 1;
    std::vector<std::optional<Resident>> cells_;
    std::unordered_map<MoleculeId, std::size_t> where_;
};

struct NoCollision {
    friend bool operator==(const NoCollision&, const NoCollision&) = default;
};
/// `first` moved into `second` (or into the cell `second` had claimed).
struct PairCollision {
    MoleculeId first = 0;
    MoleculeId second = 0;
    friend bool operator==(const PairCollision&, const PairCollision&) = default;
};
/// The molecule's heading points off the grid.
struct WallCollision {
    MoleculeId id = 0;
    Direction heading = Direction::None;
    friend bool operator==(const WallCollision&, const WallCollision&) = default;
};
using CollisionEntry = std::variant<NoCollision, PairCollision, WallCollision>;

struct PlannedMove {
    MoleculeId id = 0;
    Cell from;
    Cell to;
    friend bool operator==(const PlannedMove&, const PlannedMove&) = default;
};

/// Per-cell collision records for one epoch, plus the uncontested moves that
/// will be carried out at the end of the epoch.
class CollisionMatrix {
public:
    CollisionMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const CollisionEntry& at(Cell c) const { return entries_[index(c)]; }
    CollisionEntry& at(Cell c) { return entries_[index(c)]; }

    std::vector<PlannedMove>& moves() { return moves_; }
    const std::vector<PlannedMove>& moves() const { return moves_; }

    std::size_t pair_count() const;
    std::size_t wall_count() const;

private:
    std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.row - 1) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c.col - 1);
    }

    int rows_;
    int cols_;
    std::vector<CollisionEntry> entries_;
    std::vector<PlannedMove> moves_;
};

struct ReactionCounters {
    std::size_t r1 = 0;           ///< binary reactions run
    std::size_t r2 = 0;           ///< unary reactions run
    std::size_t reflections = 0;  ///< light wall strikers turned around
    std::size_t products_placed = 0;
    std::size_t suppressed = 0;   ///< R1 events that found no catalyst at all
};

/// Places initial_molecules random molecules on distinct random cells, each
/// with a random admissible direction.
Grid init_reactor(const ReactorConfig& config, const TspInstance& instance, RandomStream& rng);

/// Traces every moving molecule one cell along its direction, visiting cells
/// in traversal order. First come wins; each molecule takes part in at most
/// one entry.
CollisionMatrix compute_collisions(const Grid& grid, const Traversal& order);

/// Runs R1 on pair entries and R2 (or a reflection) on wall entries.
///
/// R1 products go to the nearest empty cells, scanning the traversal from the
/// collision cell and wrapping; cells claimed by pending moves are skipped.
/// R2 only fires for wall strikers at least as heavy as the grid mean taken
/// at the start of the pass.
ReactionCounters apply_reactions(Grid& grid, const CollisionMatrix& collisions, const Traversal& order,
                                 const TspInstance& instance, RandomStream& rng, Stencil stencil,
                                 double epsilon_mass = kDefaultEpsilonMass);

/// Replaces, with probability p each, molecules strictly heavier than the
/// grid mean by fresh random molecules on the same cell. Returns the count.
std::size_t decay(Grid& grid, const Traversal& order, const TspInstance& instance, RandomStream& rng, double p,
                  Stencil stencil, double epsilon_mass = kDefaultEpsilonMass);

bool is_saturated(const Grid& grid);

/// Summary of the grid as it stands; counters are left at zero.
EpochStats grid_stats(const Grid& grid);

/// One epoch; advances grid.epoch().
EpochStats step_epoch(Grid& grid, const Traversal& order, const ReactorConfig& config, const TspInstance& instance,
                      RandomStream& rng);
EpochStats step_epoch(Grid& grid, const ReactorConfig& config, const TspInstance& instance, RandomStream& rng);

/// Text snapshot: one line per row, '.' for catalyst, otherwise a hex digit
/// bucketing the mass between the lightest (0) and heaviest (f) resident.
std::string render_grid(const Grid& grid);

/// Owns one reactor run: its grid, traversal and random stream.
class Reactor2D {
public:
    Reactor2D(const ReactorConfig& config, const TspInstance& instance);

    const Grid& grid() const { return grid_; }
    const RunResult& result() const { return result_; }
    bool finished() const;

    const EpochStats& step();
    RunResult run();

private:
    ReactorConfig config_;
    const TspInstance* instance_;
    RandomStream rng_;
    Traversal order_;
    Grid grid_;
    RunResult result_;
};

/// Runs until max_epochs (or saturation when config.stop_on_saturation).
RunResult run(const ReactorConfig& config, const TspInstance& instance);

}  // namespace acr
