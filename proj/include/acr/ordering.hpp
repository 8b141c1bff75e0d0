#pragma once

// Traversal orders over an I x J grid. Cells are 1-based (row, column) with
// row 1 at the top.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acr {

struct Cell {
    int row = 1;
    int col = 1;

    friend bool operator==(const Cell&, const Cell&) = default;
};

enum class OrderKind : std::uint8_t { Morton, RowMajor, ColumnMajor };

OrderKind parse_order_kind(std::string_view text);
const char* order_kind_name(OrderKind kind);

/// Z-order code: column bits on even positions, row bits on odd positions,
/// both zero-based. Indices above 2^31 are rejected.
std::uint64_t morton_code(std::uint64_t row, std::uint64_t col);

/// Every cell of the grid exactly once, in the order of `kind`. Morton order
/// on non-power-of-two grids skips codes that fall outside the grid.
std::vector<Cell> enumerate(OrderKind kind, int rows, int cols);

/// An enumeration plus the inverse lookup cell -> rank.
class Traversal {
public:
    Traversal(OrderKind kind, int rows, int cols);

    OrderKind kind() const { return kind_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return cells_.size(); }

    std::span<const Cell> cells() const { return cells_; }
    const Cell& operator[](std::size_t rank) const { return cells_[rank]; }
    std::size_t rank_of(const Cell& c) const {
        return rank_[static_cast<std::size_t>(c.row - 1) * static_cast<std::size_t>(cols_) +
                     static_cast<std::size_t>(c.col - 1)];
    }

private:
    OrderKind kind_;
    int rows_;
    int cols_;
    std::vector<Cell> cells_;
    std::vector<std::size_t> rank_;
};

}  // namespace acr
