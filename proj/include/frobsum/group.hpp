#pragma once

#include "frobsum/common.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace frobsum {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by its multiplication table. Element 0 is the
/// identity. Associativity, identity and inverses are checked at
/// construction; tables are immutable afterwards.
class FiniteGroup {
public:
    static GroupPtr from_table(std::vector<std::vector<int>> mul, int max_order = 64) {
        return GroupPtr(new FiniteGroup(std::move(mul), max_order));
    }

    static GroupPtr cyclic(int m, int max_order = 64) {
        if (m < 1) throw std::invalid_argument("cyclic group order must be positive");
        std::vector<std::vector<int>> mul(m, std::vector<int>(m));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) mul[a][b] = (a + b) % m;
        auto g = new FiniteGroup(std::move(mul), max_order);
        g->cyclic_gen_ = m > 1 ? 1 : 0;
        return GroupPtr(g);
    }

    /// Direct product; element (a, b) gets index a * |B| + b.
    static GroupPtr direct_product(const FiniteGroup& A, const FiniteGroup& B, int max_order = 64) {
        const int na = A.order(), nb = B.order(), n = na * nb;
        std::vector<std::vector<int>> mul(n, std::vector<int>(n));
        for (int a1 = 0; a1 < na; ++a1)
            for (int b1 = 0; b1 < nb; ++b1)
                for (int a2 = 0; a2 < na; ++a2)
                    for (int b2 = 0; b2 < nb; ++b2)
                        mul[a1 * nb + b1][a2 * nb + b2] = A.op(a1, a2) * nb + B.op(b1, b2);
        return from_table(std::move(mul), max_order);
    }

    int order() const { return static_cast<int>(mul_.size()); }
    int op(int a, int b) const { return mul_[a][b]; }
    int inverse(int a) const { return inv_[a]; }

    int power(int g, long long e) const {
        int acc = 0;
        if (e < 0) {
            g = inverse(g);
            e = -e;
        }
        int base = g;
        while (e > 0) {
            if (e & 1) acc = op(acc, base);
            e >>= 1;
            if (e) base = op(base, base);
        }
        return acc;
    }

    int element_order(int g) const {
        int cur = g, k = 1;
        while (cur != 0) {
            cur = op(cur, g);
            ++k;
        }
        return k;
    }

    std::optional<int> cyclic_generator() const { return cyclic_gen_; }

    bool operator==(const FiniteGroup& o) const { return mul_ == o.mul_; }

private:
    explicit FiniteGroup(std::vector<std::vector<int>> mul, int max_order) : mul_(std::move(mul)) {
        const int m = order();
        if (m == 0) throw std::invalid_argument("empty multiplication table");
        if (m > max_order) throw BudgetExceeded("group order exceeds the table budget");
        for (const auto& row : mul_) {
            if (static_cast<int>(row.size()) != m)
                throw std::invalid_argument("multiplication table is not square");
            for (int v : row)
                if (v < 0 || v >= m) throw std::invalid_argument("table entry out of range");
        }
        for (int g = 0; g < m; ++g)
            if (mul_[0][g] != g || mul_[g][0] != g)
                throw std::invalid_argument("element 0 is not an identity");
        inv_.assign(m, -1);
        for (int g = 0; g < m; ++g) {
            for (int h = 0; h < m; ++h)
                if (mul_[g][h] == 0 && mul_[h][g] == 0) {
                    inv_[g] = h;
                    break;
                }
            if (inv_[g] < 0) throw std::invalid_argument("element without a two-sided inverse");
        }
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                        throw std::invalid_argument("multiplication table is not associative");
    }

    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::optional<int> cyclic_gen_;
};

/// A subgroup with a fixed ordered set of right-coset representatives
/// (cosets Hg). Closure, disjoint cover and the normality flag are all
/// verified at construction.
class Subgroup {
public:
    Subgroup(GroupPtr parent, std::vector<int> members,
             std::optional<std::vector<int>> coset_reps = std::nullopt)
        : parent_(std::move(parent)), members_(std::move(members)) {
        const FiniteGroup& G = *parent_;
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        in_.assign(G.order(), false);
        for (int h : members_) {
            if (h < 0 || h >= G.order()) throw std::invalid_argument("subgroup member out of range");
            in_[h] = true;
        }
        if (members_.empty() || !in_[0]) throw std::invalid_argument("subgroup must contain the identity");
        for (int a : members_)
            for (int b : members_)
                if (!in_[G.op(a, b)]) throw std::invalid_argument("subgroup not closed");
        if (G.order() % static_cast<int>(members_.size()) != 0)
            throw std::logic_error("subgroup order does not divide group order");

        if (coset_reps) {
            coset_reps_ = *coset_reps;
            validate_cover();
        } else {
            // canonical reps: smallest uncovered element, ascending
            std::vector<bool> covered(G.order(), false);
            for (int g = 0; g < G.order(); ++g) {
                if (covered[g]) continue;
                coset_reps_.push_back(g);
                for (int h : members_) covered[G.op(h, g)] = true;
            }
        }

        normal_ = true;
        for (int g = 0; g < G.order() && normal_; ++g)
            for (int h : members_)
                if (!in_[G.op(G.op(g, h), G.inverse(g))]) {
                    normal_ = false;
                    break;
                }
    }

    const FiniteGroup& group() const { return *parent_; }
    GroupPtr group_ptr() const { return parent_; }
    const std::vector<int>& members() const { return members_; }
    const std::vector<int>& coset_reps() const { return coset_reps_; }
    int index() const { return static_cast<int>(coset_reps_.size()); }
    bool contains(int g) const { return g >= 0 && g < static_cast<int>(in_.size()) && in_[g]; }
    bool normal() const { return normal_; }

    /// Position j with g in H * coset_reps[j].
    int coset_of(int g) const {
        const FiniteGroup& G = *parent_;
        for (int j = 0; j < index(); ++j)
            if (contains(G.op(g, G.inverse(coset_reps_[j])))) return j;
        throw std::logic_error("element not covered by any coset");
    }

private:
    void validate_cover() const {
        const FiniteGroup& G = *parent_;
        if (static_cast<int>(coset_reps_.size()) * static_cast<int>(members_.size()) != G.order())
            throw std::invalid_argument("wrong number of coset representatives");
        std::vector<bool> covered(G.order(), false);
        for (int rep : coset_reps_)
            for (int h : members_) {
                int g = G.op(h, rep);
                if (covered[g]) throw std::invalid_argument("coset representatives overlap");
                covered[g] = true;
            }
    }

    GroupPtr parent_;
    std::vector<int> members_;
    std::vector<int> coset_reps_;
    std::vector<bool> in_;
    bool normal_ = false;
};

/// Quotient G/H for normal H. Quotient element 0 is the coset H; the others
/// are ordered by their smallest parent element.
struct Quotient {
    GroupPtr qgroup;
    std::vector<int> class_of;   // parent element -> quotient element
    std::vector<int> canon_rep;  // quotient element -> smallest member of the coset
};

inline Quotient make_quotient(const Subgroup& H) {
    if (!H.normal()) throw std::invalid_argument("quotient requires a normal subgroup");
    const FiniteGroup& G = H.group();
    std::vector<int> class_of(G.order(), -1);
    std::vector<int> canon;
    for (int g = 0; g < G.order(); ++g) {
        if (class_of[g] >= 0) continue;
        const int id = static_cast<int>(canon.size());
        canon.push_back(g);
        for (int h : H.members()) class_of[G.op(h, g)] = id;
    }
    const int m = static_cast<int>(canon.size());
    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) mul[a][b] = class_of[G.op(canon[a], canon[b])];
    Quotient out;
    out.qgroup = FiniteGroup::from_table(std::move(mul));
    out.class_of = std::move(class_of);
    out.canon_rep = std::move(canon);
    return out;
}

}  // namespace frobsum
