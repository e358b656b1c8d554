#include "dubfleet/assignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace dubfleet {

ConflictMatrix::ConflictMatrix(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    const int n = aircraft_count();
    blocks_.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
    int idx = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            blocks_[idx++].assign(static_cast<std::size_t>(sizes_[a]) * sizes_[b], 0);
        }
    }
}

int ConflictMatrix::pair_index(int a, int b) const {
    const int n = aircraft_count();
    // Row-major upper triangle: pairs (a, a+1), ..., (a, n-1).
    return a * n - a * (a + 1) / 2 + (b - a - 1);
}

void ConflictMatrix::set(int a, int b, int g, int h, bool conflict) {
    if (a > b) {
        std::swap(a, b);
        std::swap(g, h);
    }
    blocks_[pair_index(a, b)][static_cast<std::size_t>(g) * sizes_[b] + h] =
        conflict ? 1 : 0;
}

bool ConflictMatrix::conflict(int a, int b, int g, int h) const {
    if (a > b) {
        std::swap(a, b);
        std::swap(g, h);
    }
    return blocks_[pair_index(a, b)][static_cast<std::size_t>(g) * sizes_[b] + h] != 0;
}

std::vector<std::uint8_t>& ConflictMatrix::block(int a, int b) {
    return blocks_[pair_index(a, b)];
}

const std::vector<std::uint8_t>& ConflictMatrix::block(int a, int b) const {
    return blocks_[pair_index(a, b)];
}

namespace {

struct SearchState {
    const ConflictMatrix& matrix;
    std::vector<int> assignment;
    // allowed[k][g] counts how many assigned aircraft forbid candidate g of
    // aircraft k; zero means still available.
    std::vector<std::vector<int>> forbid_count;

    explicit SearchState(const ConflictMatrix& m) : matrix(m) {
        const auto& sizes = m.sizes();
        assignment.assign(sizes.size(), -1);
        forbid_count.resize(sizes.size());
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            forbid_count[k].assign(sizes[k], 0);
        }
    }

    bool dfs(int k) {
        const int n = matrix.aircraft_count();
        if (k == n) return true;
        for (int g = 0; g < matrix.sizes()[k]; ++g) {
            if (forbid_count[k][g] != 0) continue;
            bool wiped_out = false;
            for (int other = k + 1; other < n; ++other) {
                bool any_left = false;
                for (int h = 0; h < matrix.sizes()[other]; ++h) {
                    if (matrix.conflict(k, other, g, h)) ++forbid_count[other][h];
                    if (forbid_count[other][h] == 0) any_left = true;
                }
                if (!any_left) wiped_out = true;
            }
            if (!wiped_out) {
                assignment[k] = g;
                if (dfs(k + 1)) return true;
                assignment[k] = -1;
            }
            for (int other = k + 1; other < n; ++other) {
                for (int h = 0; h < matrix.sizes()[other]; ++h) {
                    if (matrix.conflict(k, other, g, h)) --forbid_count[other][h];
                }
            }
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> solve_assignment(const ConflictMatrix& matrix) {
    for (int size : matrix.sizes()) {
        if (size < 1) return std::nullopt;
    }
    SearchState state(matrix);
    if (!state.dfs(0)) return std::nullopt;
    return state.assignment;
}

}  // namespace dubfleet
