#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "acr/cop.hpp"
#include "acr/errors.hpp"
#include "oracles.hpp"

using namespace acr;

namespace {

TspInstance uniform_costs(std::size_t n, double g) {
    std::vector<double> costs(n * n, g);
    for (std::size_t i = 0; i < n; ++i) costs[i * n + i] = 0.0;
    return TspInstance::from_matrix(n, costs);
}

TspInstance unit_square() { return TspInstance::from_coordinates({{0, 0}, {0, 1}, {1, 1}, {1, 0}}); }

TspInstance random_points(std::size_t n, std::mt19937_64& engine) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {u(engine), u(engine)};
    return TspInstance::from_coordinates(pts);
}

}  // namespace

TEST_CASE("tour_cost on the documented examples") {
    CHECK(tour_cost(Permutation{1, 2, 3}, uniform_costs(3, 1.0)) == doctest::Approx(3.0));
    CHECK(tour_cost(Permutation{1, 2}, TspInstance::from_matrix(2, {0, 2.5, 2.5, 0})) == doctest::Approx(5.0));
    CHECK(tour_cost(Permutation{1, 2, 3, 4}, unit_square()) == doctest::Approx(4.0));
}

TEST_CASE("tour_cost rejects bad input") {
    const auto inst = unit_square();
    CHECK_THROWS_AS(tour_cost(Permutation{1, 2, 3}, inst), InvalidInput);
    CHECK_THROWS_AS(tour_cost(Permutation{1, 2, 2, 4}, inst), InvalidInput);
    CHECK_THROWS_AS(tour_cost(Permutation{0, 1, 2, 3}, inst), InvalidInput);
}

TEST_CASE("validate_permutation") {
    CHECK(validate_permutation(Permutation{1, 2, 3}, 3));
    CHECK_FALSE(validate_permutation(Permutation{1, 1, 3}, 3));
    CHECK_FALSE(validate_permutation(Permutation{1, 2, 3}, 4));
    CHECK_FALSE(validate_permutation(Permutation{1, 2, 5}, 3));
    CHECK_FALSE(validate_permutation(Permutation{-1, 2, 3}, 3));
}

TEST_CASE("coordinate instances hold exact Euclidean distances") {
    std::mt19937_64 engine(7);
    const auto inst = random_points(20, engine);
    const auto& pts = *inst.coordinates();
    for (Atom i = 1; i <= 20; ++i) {
        CHECK(inst.cost(i, i) == 0.0);
        for (Atom j = 1; j <= 20; ++j) {
            const auto& a = pts[static_cast<std::size_t>(i - 1)];
            const auto& b = pts[static_cast<std::size_t>(j - 1)];
            const double d = std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
            CHECK(inst.cost(i, j) == inst.cost(j, i));
            CHECK(std::abs(inst.cost(i, j) - d) <= 1e-12 * std::max(1.0, d));
        }
    }
}

TEST_CASE("matrix instances must be symmetric with a zero diagonal") {
    CHECK_THROWS_AS(TspInstance::from_matrix(2, {0, 1, 2, 0}), InvalidInput);
    CHECK_THROWS_AS(TspInstance::from_matrix(2, {1, 1, 1, 0}), InvalidInput);
    CHECK_THROWS_AS(TspInstance::from_matrix(2, {0, -1, -1, 0}), InvalidInput);
    CHECK_THROWS_AS(TspInstance::from_matrix(1, {0}), InvalidInput);
}

TEST_CASE("tour cost invariants: rotation, reversal, sign") {
    std::mt19937_64 engine(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + engine() % 30;
        const auto inst = random_points(n, engine);
        Permutation p = oracle::shuffled(n, engine);
        const double base = tour_cost(p, inst);
        CHECK(base == doctest::Approx(oracle::direct_tour_cost(p, inst)));
        CHECK(base >= 0.0);

        Permutation rotated = p;
        std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(engine() % n), rotated.end());
        CHECK(tour_cost(rotated, inst) == doctest::Approx(base).epsilon(1e-12));

        Permutation reversed(p.rbegin(), p.rend());
        CHECK(tour_cost(reversed, inst) == doctest::Approx(base).epsilon(1e-12));
    }
    // Zero costs give zero tours; any positive edge gives a positive tour.
    CHECK(tour_cost(Permutation{2, 1, 3}, uniform_costs(3, 0.0)) == 0.0);
    CHECK(tour_cost(Permutation{2, 1, 3}, uniform_costs(3, 0.1)) > 0.0);
}

TEST_CASE("Molecule caches its tour cost") {
    const auto inst = unit_square();
    const Molecule m(Permutation{1, 3, 2, 4}, inst);
    CHECK(m.mass() == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)));
    CHECK(m.at(2) == 3);
    CHECK_THROWS_AS(Molecule(Permutation{1, 3, 3, 4}, inst), InvalidInput);
}

TEST_CASE("random_molecule on n = 2 is a fair coin") {
    const auto inst = TspInstance::from_matrix(2, {0, 1, 1, 0});
    RandomStream rng(2024);
    std::size_t identity = 0;
    constexpr std::size_t kDraws = 10000;
    for (std::size_t k = 0; k < kDraws; ++k) {
        const Molecule m = random_molecule(2, inst, rng);
        REQUIRE(validate_permutation(m.perm(), 2));
        if (m.perm()[0] == 1) ++identity;
    }
    const double freq = static_cast<double>(identity) / kDraws;
    CHECK(std::abs(freq - 0.5) <= 0.02);
}

TEST_CASE("random_molecule rejects n < 2 and mismatched sizes") {
    const auto inst = unit_square();
    RandomStream rng(1);
    CHECK_THROWS_AS(random_molecule(1, inst, rng), InvalidInput);
    CHECK_THROWS_AS(random_molecule(5, inst, rng), InvalidInput);
}

TEST_CASE("random_molecule is reproducible from the seed") {
    std::mt19937_64 engine(3);
    const auto inst = random_points(5, engine);
    RandomStream a(42);
    RandomStream b(42);
    CHECK(random_molecule(5, inst, a).perm() == random_molecule(5, inst, b).perm());
    CHECK(random_molecule(5, inst, a).perm() == random_molecule(5, inst, b).perm());
}

TEST_CASE("random_molecule over n = 3 is uniform (chi-square, p > 0.001)") {
    const auto inst = uniform_costs(3, 1.0);
    RandomStream rng(99);
    std::map<Permutation, std::size_t> seen;
    for (int k = 0; k < 60000; ++k) {
        ++seen[random_molecule(3, inst, rng).perm()];
    }
    REQUIRE(seen.size() == 6);
    std::vector<std::size_t> counts;
    for (const auto& [perm, c] : seen) counts.push_back(c);
    CHECK(oracle::chi_square_uniform(counts) < oracle::chi_square_critical_001(5));
}

TEST_CASE("RandomStream draws stay in range and repeat per seed") {
    RandomStream a(5);
    RandomStream b(5);
    for (int k = 0; k < 1000; ++k) {
        const auto x = a.below(7);
        CHECK(x < 7);
        CHECK(x == b.below(7));
        const double u = a.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == b.unit());
    }
    // The 10000th output of mt19937_64 seeded 5489 is fixed by the standard.
    RandomStream c(5489);
    for (int k = 1; k < 10000; ++k) c.next();
    CHECK(c.next() == 9981545732273789042ULL);
}

TEST_CASE("parse_instance: coordinate form") {
    std::istringstream in("4\n1 0 0\n2 0 1\n\n3 1 1\n4 1 0\n");
    const auto inst = parse_instance(in);
    REQUIRE(inst.size() == 4);
    REQUIRE(inst.coordinates().has_value());
    CHECK(tour_cost(Permutation{1, 2, 3, 4}, inst) == doctest::Approx(4.0));
}

TEST_CASE("parse_instance: matrix form, including the 3-city case") {
    std::istringstream in("3\n0 1 2\n1 0 3\n2 3 0\n");
    const auto inst = parse_instance(in);
    CHECK_FALSE(inst.coordinates().has_value());
    CHECK(inst.cost(2, 3) == 3.0);

    std::istringstream coords("3\n1 0 0\n2 3 0\n3 3 4\n");
    const auto tri = parse_instance(coords);
    REQUIRE(tri.coordinates().has_value());
    CHECK(tour_cost(Permutation{1, 2, 3}, tri) == doctest::Approx(12.0));
}

TEST_CASE("parse_instance diagnostics name the offending line") {
    auto message_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_instance(in, "f.txt");
        } catch (const InvalidInput& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    const std::string asym = message_of("4\n0 1 1 1\n1 0 1 1\n1 1 0 1\n1 2 1 0\n");
    CHECK(asym.find("f.txt:5") != std::string::npos);
    CHECK(asym.find("symmetric") != std::string::npos);

    const std::string dup = message_of("3\n1 0 0\n1 1 1\n3 2 2\n");
    CHECK(dup.find("f.txt:3") != std::string::npos);
    CHECK(dup.find("duplicate") != std::string::npos);

    CHECK(message_of("3\n1 0 0\n2 1 1\n").find("expected 3") != std::string::npos);
    CHECK(message_of("1\n1 0 0\n").find("at least 2") != std::string::npos);
    CHECK(message_of("3\n1 0 0\n2 x 1\n3 2 2\n").find("f.txt:3") != std::string::npos);
}

TEST_CASE("load_instance reports unreadable paths") {
    CHECK_THROWS_AS(load_instance("/nonexistent/dir/instance.txt"), IoError);
}

TEST_CASE("write_instance output parses back to the same costs") {
    std::mt19937_64 engine(17);
    for (const std::size_t n : {2, 3, 9}) {
        const auto inst = random_points(n, engine);
        std::stringstream ss;
        write_instance(ss, inst);
        const auto back = parse_instance(ss);
        for (Atom i = 1; i <= static_cast<Atom>(n); ++i)
            for (Atom j = 1; j <= static_cast<Atom>(n); ++j) CHECK(back.cost(i, j) == inst.cost(i, j));

        const auto matrix_form = TspInstance::from_matrix(n, [&] {
            std::vector<double> c(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    c[i * n + j] = inst.cost(static_cast<Atom>(i + 1), static_cast<Atom>(j + 1));
            return c;
        }());
        std::stringstream ms;
        write_instance(ms, matrix_form);
        const auto mback = parse_instance(ms);
        CHECK_FALSE(mback.coordinates().has_value());
        CHECK(mback.cost(1, 2) == inst.cost(1, 2));
    }
}

TEST_CASE("permutation text helpers") {
    CHECK(parse_permutation("1,2, 3 4") == Permutation{1, 2, 3, 4});
    CHECK(format_permutation(Permutation{3, 1, 2}) == "3 1 2");
    CHECK_THROWS_AS(parse_permutation("1,a"), InvalidInput);
}
