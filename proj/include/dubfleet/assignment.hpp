#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dubfleet {

/// Boolean conflict tensor c[a,b,g,h] over unordered aircraft pairs a < b:
/// true when aircraft a on candidate g and aircraft b on candidate h lose
/// separation. Symmetric under swapping (a,g) with (b,h).
class ConflictMatrix {
public:
    ConflictMatrix() = default;
    explicit ConflictMatrix(std::vector<int> sizes);

    [[nodiscard]] int aircraft_count() const { return static_cast<int>(sizes_.size()); }
    [[nodiscard]] const std::vector<int>& sizes() const { return sizes_; }

    void set(int a, int b, int g, int h, bool conflict);
    [[nodiscard]] bool conflict(int a, int b, int g, int h) const;

    /// Mutable block for the pair (a, b), a < b, laid out g-major.
    [[nodiscard]] std::vector<std::uint8_t>& block(int a, int b);
    [[nodiscard]] const std::vector<std::uint8_t>& block(int a, int b) const;

private:
    [[nodiscard]] int pair_index(int a, int b) const;

    std::vector<int> sizes_;
    std::vector<std::vector<std::uint8_t>> blocks_;
};

/// One candidate index per aircraft such that no pair conflicts, or absent
/// when no conflict-free combination exists. Depth-first search in aircraft
/// index order with forward pruning of surviving candidate sets; the result
/// is the lexicographically smallest feasible assignment.
std::optional<std::vector<int>> solve_assignment(const ConflictMatrix& matrix);

}  // namespace dubfleet
