#include "acr/cop.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "acr/errors.hpp"

namespace acr {

TspInstance TspInstance::from_coordinates(std::vector<Point> coords) {
    const std::size_t n = coords.size();
    if (n < 2) {
        throw InvalidInput("instance needs at least 2 cities, got " + std::to_string(n));
    }
    std::vector<double> costs(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(coords[i].x) || !std::isfinite(coords[i].y)) {
            throw InvalidInput("city " + std::to_string(i + 1) + " has a non-finite coordinate");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::hypot(coords[i].x - coords[j].x, coords[i].y - coords[j].y);
            costs[i * n + j] = d;
            costs[j * n + i] = d;
        }
    }
    return TspInstance(n, std::move(costs), std::move(coords));
}

TspInstance TspInstance::from_matrix(std::size_t n, std::vector<double> costs) {
    if (n < 2) {
        throw InvalidInput("instance needs at least 2 cities, got " + std::to_string(n));
    }
    if (costs.size() != n * n) {
        throw InvalidInput("cost matrix must hold n*n entries");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (costs[i * n + i] != 0.0) {
            throw InvalidInput("diagonal entry g(" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                               ") must be zero");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double g = costs[i * n + j];
            if (!std::isfinite(g) || g < 0.0) {
                throw InvalidInput("cost entries must be finite and non-negative");
            }
            if (g != costs[j * n + i]) {
                throw InvalidInput("cost matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ")");
            }
        }
    }
    return TspInstance(n, std::move(costs), std::nullopt);
}

bool validate_permutation(std::span<const Atom> seq, std::size_t n) {
    if (seq.size() != n) {
        return false;
    }
    std::vector<bool> seen(n + 1, false);
    for (const Atom a : seq) {
        if (a < 1 || static_cast<std::size_t>(a) > n || seen[static_cast<std::size_t>(a)]) {
            return false;
        }
        seen[static_cast<std::size_t>(a)] = true;
    }
    return true;
}

double tour_cost(std::span<const Atom> perm, const TspInstance& instance) {
    const std::size_t n = instance.size();
    if (perm.size() != n) {
        throw InvalidInput("permutation length " + std::to_string(perm.size()) +
                           " does not match instance size " + std::to_string(n));
    }
    if (!validate_permutation(perm, n)) {
        throw InvalidInput("sequence is not a permutation of 1.." + std::to_string(n));
    }
    double total = instance.cost(perm[n - 1], perm[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        total += instance.cost(perm[i], perm[i + 1]);
    }
    return total;
}

Molecule::Molecule(Permutation perm, const TspInstance& instance)
    : perm_(std::move(perm)), mass_(tour_cost(perm_, instance)) {}

Molecule random_molecule(std::size_t n, const TspInstance& instance, RandomStream& rng) {
    if (n < 2) {
        throw InvalidInput("molecules need at least 2 atoms");
    }
    if (n != instance.size()) {
        throw InvalidInput("molecule length does not match instance size");
    }
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), Atom{1});
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    return Molecule(std::move(perm), instance);
}

std::vector<Molecule> random_population(std::size_t count, const TspInstance& instance, RandomStream& rng) {
    std::vector<Molecule> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(random_molecule(instance.size(), instance, rng));
    }
    return out;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) {
        out.push_back(tok);
    }
    return out;
}

double to_real(const std::string& tok, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) {
        throw InvalidInput(where + ": '" + tok + "' is not a finite number");
    }
    return v;
}

long long to_integer(const std::string& tok, const std::string& where) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size()) {
        throw InvalidInput(where + ": '" + tok + "' is not an integer");
    }
    return v;
}

struct NumberedLine {
    std::size_t number;
    std::vector<std::string> tokens;
};

}  // namespace

TspInstance parse_instance(std::istream& in, const std::string& source) {
    std::vector<NumberedLine> lines;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto toks = tokens_of(raw);
        if (!toks.empty()) {
            lines.push_back({number, std::move(toks)});
        }
    }
    auto where = [&](std::size_t line) { return source + ":" + std::to_string(line); };

    if (lines.empty()) {
        throw InvalidInput(source + ": empty instance file");
    }
    if (lines[0].tokens.size() != 1) {
        throw InvalidInput(where(lines[0].number) + ": first line must hold the city count only");
    }
    const long long count = to_integer(lines[0].tokens[0], where(lines[0].number));
    if (count < 2) {
        throw InvalidInput(where(lines[0].number) + ": city count must be at least 2");
    }
    const auto n = static_cast<std::size_t>(count);
    if (lines.size() < n + 1) {
        throw InvalidInput(source + ": expected " + std::to_string(n) + " data lines, found " +
                           std::to_string(lines.size() - 1));
    }
    if (lines.size() > n + 1) {
        throw InvalidInput(where(lines[n + 1].number) + ": unexpected trailing data");
    }

    // Coordinate rows have 3 tokens, matrix rows have n. For n == 3 a matrix
    // row starts with g(1,1) = 0 while a coordinate row starts with id 1.
    const auto& first = lines[1].tokens;
    bool coordinate_form = first.size() == 3;
    if (n == 3 && coordinate_form) {
        coordinate_form = to_real(first[0], where(lines[1].number)) != 0.0;
    }

    if (coordinate_form) {
        std::vector<Point> coords(n);
        std::vector<std::size_t> seen_on(n + 1, 0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& line = lines[k + 1];
            const std::string at = where(line.number);
            if (line.tokens.size() != 3) {
                throw InvalidInput(at + ": coordinate rows need '<id> <x> <y>'");
            }
            const long long id = to_integer(line.tokens[0], at);
            if (id < 1 || id > count) {
                throw InvalidInput(at + ": city id " + std::to_string(id) + " outside 1.." + std::to_string(n));
            }
            const auto uid = static_cast<std::size_t>(id);
            if (seen_on[uid] != 0) {
                throw InvalidInput(at + ": duplicate city id " + std::to_string(id) + " (first seen on line " +
                                   std::to_string(seen_on[uid]) + ")");
            }
            seen_on[uid] = line.number;
            if (uid != k + 1) {
                throw InvalidInput(at + ": city ids must be listed in order, expected " + std::to_string(k + 1));
            }
            coords[k] = {to_real(line.tokens[1], at), to_real(line.tokens[2], at)};
        }
        return TspInstance::from_coordinates(std::move(coords));
    }

    std::vector<double> costs(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& line = lines[i + 1];
        const std::string at = where(line.number);
        if (line.tokens.size() != n) {
            throw InvalidInput(at + ": matrix rows need " + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double g = to_real(line.tokens[j], at);
            if (g < 0.0) {
                throw InvalidInput(at + ": negative cost");
            }
            if (i == j && g != 0.0) {
                throw InvalidInput(at + ": diagonal entry must be zero");
            }
            if (j < i && g != costs[j * n + i]) {
                throw InvalidInput(at + ": matrix is not symmetric, g(" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ") differs from g(" + std::to_string(j + 1) + "," +
                                   std::to_string(i + 1) + ")");
            }
            costs[i * n + j] = g;
        }
    }
    return TspInstance::from_matrix(n, std::move(costs));
}

TspInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open instance file '" + path + "'");
    }
    return parse_instance(in, path);
}

void write_instance(std::ostream& out, const TspInstance& instance) {
    const std::size_t n = instance.size();
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << n << '\n';
    if (const auto& coords = instance.coordinates()) {
        for (std::size_t i = 0; i < n; ++i) {
            out << (i + 1) << ' ' << (*coords)[i].x << ' ' << (*coords)[i].y << '\n';
        }
    } else {
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 1; j <= n; ++j) {
                out << (j > 1 ? " " : "") << instance.cost(static_cast<Atom>(i), static_cast<Atom>(j));
            }
            out << '\n';
        }
    }
    out.precision(old_precision);
}

void save_instance(const std::string& path, const TspInstance& instance) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write instance file '" + path + "'");
    }
    write_instance(out, instance);
    if (!out) {
        throw IoError("failed writing instance file '" + path + "'");
    }
}

std::string format_permutation(std::span<const Atom> perm, char sep) {
    std::string out;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += std::to_string(perm[i]);
    }
    return out;
}

Permutation parse_permutation(const std::string& text) {
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    Permutation perm;
    for (const auto& tok : tokens_of(spaced)) {
        const long long v = to_integer(tok, "permutation");
        if (v < std::numeric_limits<Atom>::min() || v > std::numeric_limits<Atom>::max()) {
            throw InvalidInput("permutation entry out of range: " + tok);
        }
        perm.push_back(static_cast<Atom>(v));
    }
    return perm;
}

}  // namespace acr
