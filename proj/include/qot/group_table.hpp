#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qot {

/// Multiplication table of a finite group, table[a][b] = a*b, with a symmetric generating set.
class FiniteGroupTable {
public:
    FiniteGroupTable() = default;
    /// Validates the Latin-square property, associativity, identity, symmetry and generation.
    FiniteGroupTable(std::vector<std::vector<int>> table, int identity, std::vector<int> generators);

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    const std::vector<int>& generators() const { return generators_; }
    const std::vector<std::vector<int>>& table() const { return table_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inverse(int a) const { return inverse_[a]; }

private:
    std::vector<std::vector<int>> table_;
    int identity_ = 0;
    std::vector<int> generators_;
    std::vector<int> inverse_;
};

/// Cyclic group Z_n with generators {1, n-1}.
FiniteGroupTable cyclic_group(int n);
/// Dihedral group of order 2n with generators {r, r^-1, s}.
FiniteGroupTable dihedral_group(int n);
/// Symmetric group S_n (n <= 5) on lexicographically ordered permutations, adjacent transpositions.
FiniteGroupTable symmetric_group(int n);

nlohmann::json group_to_json(const FiniteGroupTable& g);
FiniteGroupTable group_from_json(const nlohmann::json& j);
/// "zn:n", "dn:n", "s3", "s4", or a path to a group JSON file.
FiniteGroupTable parse_group_spec(const std::string& spec);

}  // namespace qot
