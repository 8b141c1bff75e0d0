#include "acr/ordering.hpp"

#include <algorithm>
#include <string>

#include "acr/errors.hpp"

namespace acr {

namespace {

constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 31;

// Spreads the low 32 bits of x onto the even bit positions.
std::uint64_t spread_bits(std::uint64_t x) {
    x &= 0xffffffffULL;
    x = (x | (x << 16)) & 0x0000ffff0000ffffULL;
    x = (x | (x << 8)) & 0x00ff00ff00ff00ffULL;
    x = (x | (x << 4)) & 0x0f0f0f0f0f0f0f0fULL;
    x = (x | (x << 2)) & 0x3333333333333333ULL;
    x = (x | (x << 1)) & 0x5555555555555555ULL;
    return x;
}

void check_dims(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw InvalidInput("grid dimensions must be positive, got " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
}

}  // namespace

OrderKind parse_order_kind(std::string_view text) {
    if (text == "morton") return OrderKind::Morton;
    if (text == "row") return OrderKind::RowMajor;
    if (text == "col") return OrderKind::ColumnMajor;
    throw InvalidInput("unknown ordering '" + std::string(text) + "' (expected morton, row or col)");
}

const char* order_kind_name(OrderKind kind) {
    switch (kind) {
        case OrderKind::Morton: return "morton";
        case OrderKind::RowMajor: return "row";
        case OrderKind::ColumnMajor: return "col";
    }
    return "?";
}

std::uint64_t morton_code(std::uint64_t row, std::uint64_t col) {
    if (row < 1 || col < 1 || row > kMaxIndex || col > kMaxIndex) {
        throw InvalidInput("morton_code indices must lie in 1..2^31");
    }
    return spread_bits(col - 1) | (spread_bits(row - 1) << 1);
}

std::vector<Cell> enumerate(OrderKind kind, int rows, int cols) {
    check_dims(rows, cols);
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    switch (kind) {
        case OrderKind::RowMajor:
            for (int r = 1; r <= rows; ++r) {
                for (int c = 1; c <= cols; ++c) {
                    cells.push_back({r, c});
                }
            }
            break;
        case OrderKind::ColumnMajor:
            for (int c = 1; c <= cols; ++c) {
                for (int r = 1; r <= rows; ++r) {
                    cells.push_back({r, c});
                }
            }
            break;
        case OrderKind::Morton: {
            // Sorting the in-range cells by code is the same as walking the
            // full power-of-two curve and skipping out-of-range codes.
            std::vector<std::pair<std::uint64_t, Cell>> keyed;
            keyed.reserve(cells.capacity());
            for (int r = 1; r <= rows; ++r) {
                for (int c = 1; c <= cols; ++c) {
                    keyed.emplace_back(morton_code(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c)),
                                       Cell{r, c});
                }
            }
            std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (const auto& [code, cell] : keyed) {
                cells.push_back(cell);
            }
            break;
        }
    }
    return cells;
}

Traversal::Traversal(OrderKind kind, int rows, int cols)
    : kind_(kind), rows_(rows), cols_(cols), cells_(enumerate(kind, rows, cols)) {
    rank_.resize(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        const Cell& c = cells_[k];
        rank_[static_cast<std::size_t>(c.row - 1) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(c.col - 1)] = k;
    }
}

}  // namespace acr
