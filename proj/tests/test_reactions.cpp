#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "acr/errors.hpp"
#include "acr/reactions.hpp"
#include "oracles.hpp"

using namespace acr;

namespace {

TspInstance ring(std::size_t n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i), static_cast<double>(i * i % 7)});
    return TspInstance::from_coordinates(pts);
}

Molecule mol(Permutation p, const TspInstance& inst) { return Molecule(std::move(p), inst); }

std::vector<std::uint8_t> bits(std::initializer_list<int> xs) {
    std::vector<std::uint8_t> out;
    for (int x : xs) out.push_back(static_cast<std::uint8_t>(x));
    return out;
}

}  // namespace

TEST_CASE("trace_selection on hand-traced examples") {
    CHECK(trace_selection(Permutation{1, 2, 3, 4}, Permutation{2, 1, 4, 3}, 1).bits == bits({1, 1, 0, 0}));
    CHECK(trace_selection(Permutation{1, 2, 3}, Permutation{2, 3, 1}, 1).bits == bits({1, 1, 1}));
    CHECK(trace_selection(Permutation{1, 2, 3, 4}, Permutation{2, 1, 4, 3}, 3).bits == bits({0, 0, 1, 1}));
}

TEST_CASE("trace_selection on identical reactants marks only j0") {
    std::mt19937_64 engine(1);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + engine() % 20;
        const Permutation p = oracle::shuffled(n, engine);
        const std::size_t j0 = 1 + engine() % n;
        const SelectionVector s = trace_selection(p, p, j0);
        CHECK(s.count() == 1);
        CHECK(s.marked(j0));
    }
}

TEST_CASE("trace_selection_steps records the visited atoms in order") {
    const SelectionTrace t = trace_selection_steps(Permutation{1, 2, 3, 4}, Permutation{2, 1, 4, 3}, 1);
    REQUIRE(t.steps.size() == 2);
    CHECK(t.steps[0].position == 1);
    CHECK(t.steps[0].atom == 1);
    CHECK(t.steps[1].position == 2);
    CHECK(t.steps[1].atom == 2);
}

TEST_CASE("trace_selection errors") {
    CHECK_THROWS_AS(trace_selection(Permutation{1, 2, 3}, Permutation{1, 2}, 1), InvalidInput);
    CHECK_THROWS_AS(trace_selection(Permutation{1, 2, 3}, Permutation{3, 2, 1}, 0), InvalidInput);
    CHECK_THROWS_AS(trace_selection(Permutation{1, 2, 3}, Permutation{3, 2, 1}, 4), InvalidInput);
    CHECK_THROWS_AS(trace_selection(Permutation{1, 1, 3}, Permutation{3, 2, 1}, 1), InvalidInput);
}

TEST_CASE("react_binary examples") {
    const auto inst4 = ring(4);
    const auto inst3 = ring(3);
    {
        const auto out = react_binary(mol({1, 2, 3, 4}, inst4), mol({2, 1, 4, 3}, inst4), 1, inst4);
        CHECK(out.m3.perm() == Permutation{1, 2, 4, 3});
        CHECK(out.m4.perm() == Permutation{2, 1, 3, 4});
        CHECK(out.m3.mass() == doctest::Approx(tour_cost(out.m3.perm(), inst4)));
        CHECK(out.m4.mass() == doctest::Approx(tour_cost(out.m4.perm(), inst4)));
    }
    {
        const Molecule p = mol({3, 1, 4, 2}, inst4);
        const auto out = react_binary(p, p, 2, inst4);
        CHECK(out.m3 == p);
        CHECK(out.m4 == p);
    }
    {
        const auto out = react_binary(mol({1, 2, 3}, inst3), mol({2, 3, 1}, inst3), 1, inst3);
        CHECK(out.m3.perm() == Permutation{1, 2, 3});
        CHECK(out.m4.perm() == Permutation{2, 3, 1});
    }
}

TEST_CASE("react_binary properties over random reactants") {
    std::mt19937_64 engine(2);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 2 + engine() % 49;
        const auto inst = ring(n);
        const Permutation a = oracle::shuffled(n, engine);
        const Permutation b = oracle::shuffled(n, engine);
        const std::size_t j0 = 1 + engine() % n;
        const Molecule m1(a, inst);
        const Molecule m2(b, inst);
        const auto out = react_binary(m1, m2, j0, inst);
        REQUIRE(validate_permutation(out.m3.perm(), n));
        REQUIRE(validate_permutation(out.m4.perm(), n));
        CHECK(m1.perm() == a);  // reactants untouched
        CHECK(m2.perm() == b);

        const SelectionVector s = trace_selection(a, b, j0);
        CHECK(s.bits == oracle::cycle_mask(a, b, j0));
        for (std::size_t i = 0; i < n; ++i) {
            const std::multiset<Atom> before{a[i], b[i]};
            const std::multiset<Atom> after{out.m3.perm()[i], out.m4.perm()[i]};
            CHECK(before == after);
            if (s.bits[i]) {
                CHECK(out.m3.perm()[i] == a[i]);
                CHECK(out.m4.perm()[i] == b[i]);
            }
        }
    }
}

TEST_CASE("react_binary column conservation is exhaustive for n <= 4") {
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto inst = ring(n);
        const auto perms = oracle::all_permutations(n);
        for (const auto& a : perms) {
            for (const auto& b : perms) {
                for (std::size_t j0 = 1; j0 <= n; ++j0) {
                    const SelectionVector s = trace_selection(a, b, j0);
                    REQUIRE(s.bits == oracle::cycle_mask(a, b, j0));
                    const auto [m3, m4] = recombine(a, b, s);
                    REQUIRE(validate_permutation(m3, n));
                    REQUIRE(validate_permutation(m4, n));
                }
            }
        }
    }
}

TEST_CASE("react_unary examples") {
    const auto inst5 = ring(5);
    const Molecule m5 = mol({1, 2, 3, 4, 5}, inst5);
    CHECK(react_unary(m5, 2, 0, inst5).perm() == Permutation{1, 3, 2, 4, 5});
    CHECK(react_unary(m5, 5, 0, inst5).perm() == Permutation{5, 2, 3, 4, 1});
    CHECK(react_unary(m5, 1, 1, inst5).perm() == Permutation{5, 2, 3, 4, 1});
    CHECK(react_unary(m5, 3, 1, inst5).perm() == Permutation{1, 3, 2, 4, 5});
    CHECK(m5.perm() == Permutation{1, 2, 3, 4, 5});

    const auto inst2 = ring(2);
    const Molecule two = mol({1, 2}, inst2);
    for (std::size_t j = 1; j <= 2; ++j)
        for (int flip = 0; flip <= 1; ++flip) CHECK(react_unary(two, j, flip, inst2).perm() == Permutation{2, 1});

    CHECK_THROWS_AS(react_unary(m5, 0, 0, inst5), InvalidInput);
    CHECK_THROWS_AS(react_unary(m5, 6, 0, inst5), InvalidInput);
    CHECK_THROWS_AS(react_unary(m5, 1, 2, inst5), InvalidInput);
}

TEST_CASE("react_unary differs from its reactant by one cyclic adjacent transposition") {
    std::mt19937_64 engine(3);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 2 + engine() % 49;
        const auto inst = ring(n);
        const Molecule m5(oracle::shuffled(n, engine), inst);
        const std::size_t j = 1 + engine() % n;
        const int flip = static_cast<int>(engine() % 2);
        const Molecule m6 = react_unary(m5, j, flip, inst);
        REQUIRE(validate_permutation(m6.perm(), n));
        std::vector<std::size_t> diff;
        for (std::size_t i = 0; i < n; ++i)
            if (m5.perm()[i] != m6.perm()[i]) diff.push_back(i);
        REQUIRE(diff.size() == 2);
        const bool adjacent = diff[1] - diff[0] == 1 || (diff[0] == 0 && diff[1] == n - 1);
        CHECK(adjacent);
        const std::size_t other = flip == 0 ? (j % n) : (j == 1 ? n - 1 : j - 2);  // 0-based partner
        CHECK(std::find(diff.begin(), diff.end(), j - 1) != diff.end());
        CHECK(std::find(diff.begin(), diff.end(), other) != diff.end());
        CHECK(m6.perm()[other] == m5.perm()[j - 1]);
    }
}

TEST_CASE("direction_after_binary") {
    RandomStream rng(4);
    CHECK(direction_after_binary(10, 5, Stencil::FivePoint, rng) == Direction::N);
    CHECK(direction_after_binary(3, 5, Stencil::FivePoint, rng) == Direction::S);

    std::map<Direction, int> down;
    for (int k = 0; k < 10000; ++k) ++down[direction_after_binary(3, 5, Stencil::NinePoint, rng)];
    REQUIRE(down.size() == 3);
    for (const Direction d : {Direction::SW, Direction::S, Direction::SE}) {
        CHECK(std::abs(down[d] / 10000.0 - 1.0 / 3.0) <= 0.02);
    }

    std::map<Direction, int> up;
    for (int k = 0; k < 3000; ++k) ++up[direction_after_binary(9, 5, Stencil::NinePoint, rng)];
    CHECK(up.size() == 3);
    CHECK(up.count(Direction::NW) == 1);
    CHECK(up.count(Direction::NE) == 1);

    for (const Stencil st : {Stencil::FivePoint, Stencil::NinePoint}) {
        std::set<Direction> level;
        for (int k = 0; k < 300; ++k) level.insert(direction_after_binary(5, 5, st, rng));
        CHECK(level == std::set<Direction>{Direction::W, Direction::None, Direction::E});
    }
    // Within the tolerance counts as level.
    const Direction d = direction_after_binary(5 + 1e-12, 5, Stencil::FivePoint, rng);
    CHECK((d == Direction::W || d == Direction::None || d == Direction::E));
}

TEST_CASE("direction_after_unary") {
    RandomStream rng(5);
    CHECK(direction_after_unary(7, 4, Stencil::FivePoint, rng) == Direction::N);
    for (int k = 0; k < 100; ++k) {
        const Direction d = direction_after_unary(4, 7, Stencil::NinePoint, rng);
        CHECK((d == Direction::SW || d == Direction::S || d == Direction::SE));
        const Direction e = direction_after_unary(4, 4, Stencil::NinePoint, rng);
        CHECK((e == Direction::W || e == Direction::None || e == Direction::E));
    }
}

TEST_CASE("directions always belong to the stencil") {
    RandomStream rng(6);
    std::mt19937_64 engine(6);
    std::uniform_real_distribution<double> u(0, 10);
    for (int k = 0; k < 5000; ++k) {
        const double a = u(engine);
        const double b = k % 7 == 0 ? a : u(engine);
        CHECK(is_admissible(direction_after_binary(a, b, Stencil::FivePoint, rng), Stencil::FivePoint));
        CHECK(is_admissible(direction_after_unary(a, b, Stencil::FivePoint, rng), Stencil::FivePoint));
        CHECK(is_admissible(direction_after_binary(a, b, Stencil::NinePoint, rng), Stencil::NinePoint));
        CHECK(is_admissible(random_direction(Stencil::FivePoint, rng), Stencil::FivePoint));
    }
    CHECK(admissible_directions(Stencil::FivePoint).size() == 5);
    CHECK(admissible_directions(Stencil::NinePoint).size() == 9);
    CHECK_FALSE(is_admissible(Direction::NE, Stencil::FivePoint));
}

TEST_CASE("reactions are deterministic given the stream state") {
    const auto inst = ring(12);
    std::mt19937_64 engine(8);
    const Molecule a(oracle::shuffled(12, engine), inst);
    const Molecule b(oracle::shuffled(12, engine), inst);
    CHECK(react_binary(a, b, 5, inst).m3 == react_binary(a, b, 5, inst).m3);
    CHECK(react_unary(a, 7, 1, inst) == react_unary(a, 7, 1, inst));
    RandomStream r1(77);
    RandomStream r2(77);
    for (int k = 0; k < 100; ++k) {
        CHECK(direction_after_binary(1, 2, Stencil::NinePoint, r1) ==
              direction_after_binary(1, 2, Stencil::NinePoint, r2));
    }
}

TEST_CASE("offsets follow the row-down, column-right convention") {
    CHECK(offset_of(Direction::N).drow == -1);
    CHECK(offset_of(Direction::S).drow == 1);
    CHECK(offset_of(Direction::E).dcol == 1);
    CHECK(offset_of(Direction::W).dcol == -1);
    CHECK(offset_of(Direction::None).drow == 0);
    CHECK(offset_of(Direction::SW).drow == 1);
    CHECK(offset_of(Direction::SW).dcol == -1);
}
