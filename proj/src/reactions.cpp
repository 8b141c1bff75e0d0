#include "acr/reactions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acr/errors.hpp"

namespace acr {

std::size_t SelectionVector::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

namespace {

void check_pair(std::span<const Atom> m1, std::span<const Atom> m2) {
    if (m1.size() != m2.size()) {
        throw InvalidInput("reactants differ in length: " + std::to_string(m1.size()) + " vs " +
                           std::to_string(m2.size()));
    }
    if (!validate_permutation(m1, m1.size()) || !validate_permutation(m2, m2.size())) {
        throw InvalidInput("reactants must be permutations of 1..n");
    }
}

void check_index(std::size_t j, std::size_t n) {
    if (j < 1 || j > n) {
        throw InvalidInput("index " + std::to_string(j) + " outside 1.." + std::to_string(n));
    }
}

}  // namespace

SelectionTrace trace_selection_steps(std::span<const Atom> m1, std::span<const Atom> m2, std::size_t j0) {
    check_pair(m1, m2);
    const std::size_t n = m1.size();
    check_index(j0, n);

    // position_in_m1[a] = index(m1, a), 1-based.
    std::vector<std::size_t> position_in_m1(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        position_in_m1[static_cast<std::size_t>(m1[k])] = k + 1;
    }

    SelectionTrace trace;
    trace.selection.bits.assign(n, 0);
    std::vector<bool> visited(n + 1, false);  // omega_1, indexed by atom
    std::size_t marked = 0;
    std::size_t j = j0;
    while (marked < n) {
        ++marked;
        const Atom atom = m1[j - 1];
        visited[static_cast<std::size_t>(atom)] = true;
        trace.selection.bits[j - 1] = 1;
        trace.steps.push_back({j, atom});
        const Atom partner = m2[j - 1];
        if (visited[static_cast<std::size_t>(partner)]) {
            break;
        }
        j = position_in_m1[static_cast<std::size_t>(partner)];
    }
    return trace;
}

SelectionVector trace_selection(std::span<const Atom> m1, std::span<const Atom> m2, std::size_t j0) {
    return trace_selection_steps(m1, m2, j0).selection;
}

std::pair<Permutation, Permutation> recombine(std::span<const Atom> m1, std::span<const Atom> m2,
                                              const SelectionVector& s) {
    const std::size_t n = m1.size();
    Permutation m3(n);
    Permutation m4(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (s.bits[i] != 0) {
            m3[i] = m1[i];
            m4[i] = m2[i];
        } else {
            m3[i] = m2[i];
            m4[i] = m1[i];
        }
    }
    return {std::move(m3), std::move(m4)};
}

BinaryProducts react_binary(const Molecule& m1, const Molecule& m2, std::size_t j0, const TspInstance& instance) {
    const SelectionVector s = trace_selection(m1.perm(), m2.perm(), j0);
    auto [p3, p4] = recombine(m1.perm(), m2.perm(), s);
    return {Molecule(std::move(p3), instance), Molecule(std::move(p4), instance)};
}

Permutation adjacent_transposition(std::span<const Atom> perm, std::size_t j, int flip) {
    const std::size_t n = perm.size();
    check_index(j, n);
    if (flip != 0 && flip != 1) {
        throw InvalidInput("flip must be 0 or 1");
    }
    std::size_t other = 0;
    if (flip == 0) {
        other = (j == n) ? 1 : j + 1;
    } else {
        other = (j == 1) ? n : j - 1;
    }
    Permutation out(perm.begin(), perm.end());
    std::swap(out[j - 1], out[other - 1]);
    return out;
}

Molecule react_unary(const Molecule& m5, std::size_t j, int flip, const TspInstance& instance) {
    return Molecule(adjacent_transposition(m5.perm(), j, flip), instance);
}

namespace {

constexpr std::array<Direction, 5> kFivePoint = {Direction::None, Direction::N, Direction::E, Direction::S,
                                                 Direction::W};
constexpr std::array<Direction, 9> kNinePoint = {Direction::None, Direction::N,  Direction::NE,
                                                 Direction::E,    Direction::SE, Direction::S,
                                                 Direction::SW,   Direction::W,  Direction::NW};

constexpr std::array<Direction, 3> kUp = {Direction::NW, Direction::N, Direction::NE};
constexpr std::array<Direction, 3> kDown = {Direction::SW, Direction::S, Direction::SE};
constexpr std::array<Direction, 3> kLevel = {Direction::W, Direction::None, Direction::E};

}  // namespace

std::span<const Direction> admissible_directions(Stencil stencil) {
    if (stencil == Stencil::FivePoint) {
        return kFivePoint;
    }
    return kNinePoint;
}

bool is_admissible(Direction d, Stencil stencil) {
    const auto dirs = admissible_directions(stencil);
    return std::find(dirs.begin(), dirs.end(), d) != dirs.end();
}

Offset offset_of(Direction d) {
    switch (d) {
        case Direction::None: return {0, 0};
        case Direction::N: return {-1, 0};
        case Direction::NE: return {-1, 1};
        case Direction::E: return {0, 1};
        case Direction::SE: return {1, 1};
        case Direction::S: return {1, 0};
        case Direction::SW: return {1, -1};
        case Direction::W: return {0, -1};
        case Direction::NW: return {-1, -1};
    }
    return {0, 0};
}

const char* direction_name(Direction d) {
    switch (d) {
        case Direction::None: return "0";
        case Direction::N: return "N";
        case Direction::NE: return "NE";
        case Direction::E: return "E";
        case Direction::SE: return "SE";
        case Direction::S: return "S";
        case Direction::SW: return "SW";
        case Direction::W: return "W";
        case Direction::NW: return "NW";
    }
    return "?";
}

Direction random_direction(Stencil stencil, RandomStream& rng) {
    const auto dirs = admissible_directions(stencil);
    return dirs[rng.below(dirs.size())];
}

MassTrend compare_mass(double mass, double reference, double epsilon) {
    if (std::abs(mass - reference) <= epsilon) {
        return MassTrend::Level;
    }
    return mass > reference ? MassTrend::Heavier : MassTrend::Lighter;
}

Direction direction_for_trend(MassTrend trend, Stencil stencil, RandomStream& rng) {
    switch (trend) {
        case MassTrend::Heavier:
            return stencil == Stencil::FivePoint ? Direction::N : kUp[rng.below(3)];
        case MassTrend::Lighter:
            return stencil == Stencil::FivePoint ? Direction::S : kDown[rng.below(3)];
        case MassTrend::Level:
            break;
    }
    return kLevel[rng.below(3)];
}

Direction direction_after_binary(double mass, double product_average, Stencil stencil, RandomStream& rng,
                                 double epsilon) {
    return direction_for_trend(compare_mass(mass, product_average, epsilon), stencil, rng);
}

Direction direction_after_unary(double product_mass, double reactant_mass, Stencil stencil, RandomStream& rng,
                                double epsilon) {
    return direction_for_trend(compare_mass(product_mass, reactant_mass, epsilon), stencil, rng);
}

}  // namespace acr
