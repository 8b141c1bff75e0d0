#pragma once

// Problem instances, permutation molecules and the tour-cost mass function.
//
// Cities (atoms) are numbered 1..n everywhere, including file formats.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acr/random.hpp"

namespace acr {

using Atom = std::int32_t;
using Permutation = std::vector<Atom>;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Symmetric TSP instance: a dense cost matrix, optionally backed by coordinates.
class TspInstance {
public:
    /// Euclidean instance; costs are exact double-precision distances.
    static TspInstance from_coordinates(std::vector<Point> coords);

    /// Explicit matrix instance, row-major, n*n entries. Must be symmetric,
    /// non-negative and zero on the diagonal.
    static TspInstance from_matrix(std::size_t n, std::vector<double> costs);

    std::size_t size() const { return n_; }
    const std::optional<std::vector<Point>>& coordinates() const { return coords_; }

    /// g(i, j) for 1-based cities.
    double cost(Atom i, Atom j) const {
        return costs_[static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1)];
    }

private:
    TspInstance(std::size_t n, std::vector<double> costs, std::optional<std::vector<Point>> coords)
        : n_(n), costs_(std::move(costs)), coords_(std::move(coords)) {}

    std::size_t n_;
    std::vector<double> costs_;
    std::optional<std::vector<Point>> coords_;
};

/// True iff seq has length n and holds each of 1..n exactly once.
bool validate_permutation(std::span<const Atom> seq, std::size_t n);

/// Closed Hamiltonian tour cost g(p_n, p_1) + sum g(p_i, p_{i+1}).
/// Throws InvalidInput if perm is not a permutation of the instance's cities.
double tour_cost(std::span<const Atom> perm, const TspInstance& instance);

/// A permutation together with its cached mass (tour cost). Immutable.
class Molecule {
public:
    Molecule() = default;

    /// Validates perm and evaluates its mass against instance.
    Molecule(Permutation perm, const TspInstance& instance);

    const Permutation& perm() const { return perm_; }
    double mass() const { return mass_; }
    std::size_t size() const { return perm_.size(); }

    /// 1-based atom access, m_{k,j}.
    Atom at(std::size_t j) const { return perm_[j - 1]; }

    friend bool operator==(const Molecule& a, const Molecule& b) { return a.perm_ == b.perm_; }

private:
    Permutation perm_;
    double mass_ = 0.0;
};

/// Uniform random permutation of 1..n (Fisher-Yates) with its mass.
Molecule random_molecule(std::size_t n, const TspInstance& instance, RandomStream& rng);

/// `count` independent random molecules, drawn in order from rng.
std::vector<Molecule> random_population(std::size_t count, const TspInstance& instance, RandomStream& rng);

/// Reads the plain-text instance format: `n`, then either n lines of
/// `<id> <x> <y>` or n rows of n matrix entries. Diagnostics name `source`
/// and the offending line.
TspInstance parse_instance(std::istream& in, const std::string& source = "<input>");
TspInstance load_instance(const std::string& path);

/// Writes coordinate instances in `<id> <x> <y>` form and matrix instances
/// as rows; doubles are printed round-trip exact.
void write_instance(std::ostream& out, const TspInstance& instance);
void save_instance(const std::string& path, const TspInstance& instance);

std::string format_permutation(std::span<const Atom> perm, char sep = ' ');
Permutation parse_permutation(const std::string& text);

}  // namespace acr
