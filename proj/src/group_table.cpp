#include "qot/group_table.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "qot/channel.hpp"
#include "qot/errors.hpp"

namespace qot {

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<int>> table, int identity,
                                   std::vector<int> generators)
    : table_(std::move(table)), identity_(identity), generators_(std::move(generators)) {
    const int n = order();
    if (n == 0) throw StructuralError("group table is empty");
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table_[a].size()) != n)
            throw DimensionError("group table row " + std::to_string(a) + " has " +
                                 std::to_string(table_[a].size()) + " entries, order is " +
                                 std::to_string(n));
        for (int b = 0; b < n; ++b)
            if (table_[a][b] < 0 || table_[a][b] >= n)
                throw StructuralError("group table entry (" + std::to_string(a) + "," +
                                      std::to_string(b) + ") is out of range");
    }
    // Latin square.
    for (int a = 0; a < n; ++a) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int b = 0; b < n; ++b) {
            if (row[table_[a][b]]++) throw StructuralError("group table row " + std::to_string(a) + " repeats an element");
            if (col[table_[b][a]]++) throw StructuralError("group table column " + std::to_string(a) + " repeats an element");
        }
    }
    if (identity_ < 0 || identity_ >= n) throw StructuralError("group identity is out of range");
    for (int a = 0; a < n; ++a)
        if (table_[identity_][a] != a || table_[a][identity_] != a)
            throw StructuralError("element " + std::to_string(identity_) + " is not a two-sided identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw StructuralError("group table is not associative at (" + std::to_string(a) +
                                          "," + std::to_string(b) + "," + std::to_string(c) + ")");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == identity_) inverse_[a] = b;
    if (generators_.empty()) throw StructuralError("generating set is empty");
    for (int s : generators_) {
        if (s < 0 || s >= n) throw StructuralError("generator " + std::to_string(s) + " is out of range");
        if (std::find(generators_.begin(), generators_.end(), inverse_[s]) == generators_.end())
            throw StructuralError("generating set is not symmetric: inverse of " + std::to_string(s) +
                                  " is missing");
    }
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(identity_);
    seen[identity_] = 1;
    int reached = 1;
    while (!q.empty()) {
        int g = q.front();
        q.pop();
        for (int s : generators_) {
            int h = table_[s][g];
            if (!seen[h]) {
                seen[h] = 1;
                ++reached;
                q.push(h);
            }
        }
    }
    if (reached != n)
        throw StructuralError("generating set reaches " + std::to_string(reached) + " of " +
                              std::to_string(n) + " elements");
}

FiniteGroupTable cyclic_group(int n) {
    if (n < 2) throw DomainError("cyclic group order must be >= 2");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    std::vector<int> gens = {1};
    if (n > 2) gens.push_back(n - 1);
    return FiniteGroupTable(std::move(t), 0, std::move(gens));
}

FiniteGroupTable dihedral_group(int n) {
    if (n < 3) throw DomainError("dihedral group needs n >= 3");
    // Element (k, f) = r^k s^f encoded as k + n f. Relation s r = r^{-1} s.
    const int order = 2 * n;
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            const int ka = a % n, fa = a / n, kb = b % n, fb = b / n;
            const int k = ((fa ? ka - kb : ka + kb) % n + n) % n;
            t[a][b] = k + n * (fa ^ fb);
        }
    return FiniteGroupTable(std::move(t), 0, {1, n - 1, n});
}

FiniteGroupTable symmetric_group(int n) {
    if (n < 2 || n > 5) throw DomainError("symmetric group supported for 2 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int order = static_cast<int>(perms.size());
    auto find = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = find(c);
        }
    std::vector<int> gens;
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<int> q(n);
        std::iota(q.begin(), q.end(), 0);
        std::swap(q[i], q[i + 1]);
        gens.push_back(find(q));
    }
    return FiniteGroupTable(std::move(t), 0, std::move(gens));
}

nlohmann::json group_to_json(const FiniteGroupTable& g) {
    return {{"order", g.order()},
            {"table", g.table()},
            {"identity", g.identity()},
            {"generators", g.generators()}};
}

FiniteGroupTable group_from_json(const nlohmann::json& j) {
    for (const char* key : {"order", "table", "identity", "generators"})
        if (!j.is_object() || !j.contains(key))
            throw InputError(std::string("group JSON is missing field '") + key + "'");
    try {
        auto table = j["table"].get<std::vector<std::vector<int>>>();
        if (static_cast<int>(table.size()) != j["order"].get<int>())
            throw DimensionError("group JSON field 'table' has " + std::to_string(table.size()) +
                                 " rows but 'order' is " + std::to_string(j["order"].get<int>()));
        return FiniteGroupTable(std::move(table), j["identity"].get<int>(),
                                j["generators"].get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("group JSON has a field of the wrong type: ") + e.what());
    }
}

FiniteGroupTable parse_group_spec(const std::string& spec) {
    auto number = [&](const std::string& rest) {
        try {
            std::size_t used = 0;
            int v = std::stoi(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(rest);
            return v;
        } catch (const std::exception&) {
            throw InputError("group spec '" + spec + "' has a non-integer size");
        }
    };
    if (spec.rfind("zn:", 0) == 0) return cyclic_group(number(spec.substr(3)));
    if (spec.rfind("dn:", 0) == 0) return dihedral_group(number(spec.substr(3)));
    if (spec == "s3") return symmetric_group(3);
    if (spec == "s4") return symmetric_group(4);
    if (spec.empty()) throw InputError("empty group spec");
    return group_from_json(read_json_file(spec));
}

}  // namespace qot
