#pragma once

// The two catalytic reactions and the direction rules that follow them.
//
// R1 (binary): two colliding molecules yield two recombined products. The
// selection vector marks one positional cycle shared by the reactants; the
// products exchange atoms outside that cycle.
//
// R2 (unary): a molecule striking a wall has one atom relocated to a
// cyclically adjacent slot. Only the destination of that atom is prescribed,
// so the product is completed as an adjacent transposition, the one
// completion that keeps a valid permutation.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "acr/cop.hpp"
#include "acr/random.hpp"

namespace acr {

/// S: one flag per position, 1 where the first reactant donates to the first product.
struct SelectionVector {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    /// 1-based s_j.
    bool marked(std::size_t j) const { return bits[j - 1] != 0; }
    std::size_t count() const;
};

/// One iteration of the trace: position j was marked and atom m1[j] joined the visited set.
struct TraceStep {
    std::size_t position;
    Atom atom;
};

struct SelectionTrace {
    SelectionVector selection;
    std::vector<TraceStep> steps;
};

/// Builds S by following j <- index(m1, m2[j]) from j0 until m2[j] has
/// already been visited or n positions are marked. j0 is 1-based.
SelectionVector trace_selection(std::span<const Atom> m1, std::span<const Atom> m2, std::size_t j0);

/// Same as trace_selection, also reporting each marking step.
SelectionTrace trace_selection_steps(std::span<const Atom> m1, std::span<const Atom> m2, std::size_t j0);

struct BinaryProducts {
    Molecule m3;
    Molecule m4;

    double average_mass() const { return (m3.mass() + m4.mass()) / 2.0; }
};

/// R1. Reactants are left untouched; products carry fresh masses.
BinaryProducts react_binary(const Molecule& m1, const Molecule& m2, std::size_t j0, const TspInstance& instance);

/// Product positions of R1 given an already traced S.
std::pair<Permutation, Permutation> recombine(std::span<const Atom> m1, std::span<const Atom> m2,
                                              const SelectionVector& s);

/// R2. flip = 0 swaps positions j and j+1 (n and 1 when j = n);
/// flip = 1 swaps j and j-1 (1 and n when j = 1).
Molecule react_unary(const Molecule& m5, std::size_t j, int flip, const TspInstance& instance);

/// The permutation part of react_unary.
Permutation adjacent_transposition(std::span<const Atom> perm, std::size_t j, int flip);

enum class Direction : std::uint8_t { None = 0, N, NE, E, SE, S, SW, W, NW };

enum class Stencil : std::uint8_t { FivePoint, NinePoint };

/// Admissible directions of a stencil, None first.
std::span<const Direction> admissible_directions(Stencil stencil);

bool is_admissible(Direction d, Stencil stencil);

/// Row/column step of a direction; North decreases the row, East increases the column.
struct Offset {
    int drow;
    int dcol;
};
Offset offset_of(Direction d);

const char* direction_name(Direction d);

/// Uniform draw over the stencil's directions.
Direction random_direction(Stencil stencil, RandomStream& rng);

/// Mass of a molecule relative to a reference mass, with absolute tolerance.
enum class MassTrend : std::uint8_t { Heavier, Lighter, Level };

MassTrend compare_mass(double mass, double reference, double epsilon);

/// Heavier heads up ({NW,N,NE}; N on a 5-point stencil), lighter heads down
/// ({SW,S,SE}; S), level picks uniformly from {W,0,E}.
Direction direction_for_trend(MassTrend trend, Stencil stencil, RandomStream& rng);

constexpr double kDefaultEpsilonMass = 1e-9;

/// Direction of a molecule after R1, judged against the product average.
Direction direction_after_binary(double mass, double product_average, Stencil stencil, RandomStream& rng,
                                 double epsilon = kDefaultEpsilonMass);

/// Direction of the R2 product, judged against the reactant: heavier up,
/// lighter down, level sideways or still, mirroring the binary rule.
Direction direction_after_unary(double product_mass, double reactant_mass, Stencil stencil, RandomStream& rng,
                                double epsilon = kDefaultEpsilonMass);

}  // namespace acr
