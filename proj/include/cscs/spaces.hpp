#pragma once

// Canonical small presentations: full-powerset finite discrete spaces,
// singleton-basis discrete spaces, partition spaces, and explicit finite
// presentations with brute-force witness builders.

#include "core.hpp"

namespace cscs {

// Finite discrete space on n points with the full powerset as basis:
// index i < 2^n denotes the subset with bit pattern i.  Carries every
// witness the library knows about, all exact.
inline SpacePtr powerset_space(int n) {
    if (n < 0 || n > 20) throw precondition_violated("powerset_space: size out of range");
    const Code full = (Code(1) << n) - 1;
    Space s;
    s.member = [n](Point p) { return p >= 0 && p < n; };
    s.enumerate = [n](long long i) -> std::optional<Point> {
        if (i < n) return i;
        return std::nullopt;
    };
    s.size = n;
    s.basis_member = [n, full](Point x, Index i) {
        return x >= 0 && x < n && i >= 0 && i <= full && ((i >> x) & 1);
    };
    s.refine = [](Point, Index i, Index j) { return i & j; };
    s.coverage_depth = full + 1;
    s.finite_basis_depth = full + 1;
    s.index_witness = [](Point x) { return Code(1) << x; };
    s.w.et2 = Et2Witness{[](Point x, Point) { return Code(1) << x; },
                         [](Point, Point y) { return Code(1) << y; }};
    s.w.ut3 = Ut3Witness{[](Point x, Index) { return Code(1) << x; },
                         [](Point, Index, Point y) { return Code(1) << y; }};
    s.w.zero_dim = ZeroDimWitness{[](Point x, Index) { return Code(1) << x; }};
    s.w.algebra = AlgebraWitness{[full](Index i, Index j) { return i & j & full; },
                                 [full](Index i) { return (~i) & full; }};
    s.w.covering = [full](const std::vector<Index>& f) {
        Code u = 0;
        for (Index i : f)
            if (i >= 0 && i <= full) u |= i;
        if (u == full) return Verdict::yes();
        Point miss = 0;
        while ((u >> miss) & 1) ++miss;
        return Verdict::no("point " + std::to_string(miss) + " uncovered");
    };
    s.w.isolated = [](Point x) { return Verdict::yes("index=" + std::to_string(Code(1) << x)); };
    return make_space(std::move(s));
}

// Discrete space on the naturals, basis U_i = {i}.
inline SpacePtr discrete_omega() {
    Space s;
    s.member = [](Point p) { return p >= 0; };
    s.enumerate = [](long long i) -> std::optional<Point> { return i; };
    s.basis_member = [](Point x, Index i) { return x == i; };
    s.refine = [](Point x, Index, Index) { return x; };
    s.index_witness = [](Point x) { return x; };
    s.w.et2 = Et2Witness{[](Point x, Point) { return x; }, [](Point, Point y) { return y; }};
    s.w.ut3 = Ut3Witness{[](Point x, Index) { return x; }, [](Point, Index, Point y) { return y; }};
    s.w.zero_dim = ZeroDimWitness{[](Point x, Index) { return x; }};
    s.w.covering = [](const std::vector<Index>& f) {
        // a finite set of singletons never covers omega
        (void)f;
        Code miss = 0;
        std::set<Code> used;
        for (Index i : f) used.insert(i);
        while (used.count(miss)) ++miss;
        return Verdict::no("point " + std::to_string(miss) + " uncovered");
    };
    s.w.isolated = [](Point x) { return Verdict::yes("index=" + std::to_string(x)); };
    return make_space(std::move(s));
}

// Partition space: basis = the blocks.  Non-T0 as soon as a block has two
// points; the refinement witness is trivial because blocks are disjoint.
inline SpacePtr partition_space(const std::vector<std::vector<Point>>& blocks) {
    auto bl = std::make_shared<std::vector<std::vector<Point>>>(blocks);
    long long n = 0;
    auto block_of = std::make_shared<std::map<Point, Code>>();
    for (size_t b = 0; b < bl->size(); ++b)
        for (Point p : (*bl)[b]) {
            (*block_of)[p] = static_cast<Code>(b);
            ++n;
        }
    Space s;
    s.member = [block_of](Point p) { return block_of->count(p) > 0; };
    s.enumerate = [block_of](long long i) -> std::optional<Point> {
        if (i >= static_cast<long long>(block_of->size())) return std::nullopt;
        auto it = block_of->begin();
        std::advance(it, i);
        return it->first;
    };
    s.size = n;
    s.basis_member = [block_of](Point x, Index i) {
        auto it = block_of->find(x);
        return it != block_of->end() && it->second == i;
    };
    s.refine = [block_of](Point x, Index, Index) { return block_of->at(x); };
    s.coverage_depth = static_cast<long long>(bl->size());
    s.finite_basis_depth = static_cast<long long>(bl->size());
    s.index_witness = [block_of](Point x) { return block_of->at(x); };
    s.w.zero_dim = ZeroDimWitness{[block_of](Point x, Index) { return block_of->at(x); }};
    s.w.covering = [bl, block_of](const std::vector<Index>& f) {
        std::set<Code> used(f.begin(), f.end());
        for (Code b = 0; b < static_cast<Code>(bl->size()); ++b)
            if (!used.count(b) && !(*bl)[b].empty())
                return Verdict::no("block " + std::to_string(b) + " uncovered");
        return Verdict::yes();
    };
    s.w.isolated = [bl, block_of](Point x) {
        Code b = block_of->at(x);
        return (*bl)[b].size() == 1 ? Verdict::yes("index=" + std::to_string(b)) : Verdict::no("shared block");
    };
    return make_space(std::move(s));
}

// Explicit finite presentation from a list of basic sets.  The refinement
// witness searches for the least listed set between x and the intersection;
// the space description must make that search succeed.
inline SpacePtr explicit_finite_space(long long npoints, std::vector<std::vector<Point>> sets) {
    auto basis = std::make_shared<std::vector<std::set<Point>>>();
    for (auto& v : sets) basis->emplace_back(v.begin(), v.end());
    Space s;
    s.member = [npoints](Point p) { return p >= 0 && p < npoints; };
    s.enumerate = [npoints](long long i) -> std::optional<Point> {
        if (i < npoints) return i;
        return std::nullopt;
    };
    s.size = npoints;
    s.basis_member = [basis](Point x, Index i) {
        return i >= 0 && i < static_cast<Index>(basis->size()) && (*basis)[i].count(x) > 0;
    };
    s.refine = [basis, npoints](Point x, Index i, Index j) -> Index {
        for (Index r = 0; r < static_cast<Index>(basis->size()); ++r) {
            if (!(*basis)[r].count(x)) continue;
            bool inside = true;
            for (Point y : (*basis)[r])
                if (!(*basis)[i].count(y) || !(*basis)[j].count(y)) { inside = false; break; }
            if (inside) return r;
        }
        throw stuck_search("explicit_finite_space: presentation has no refinement for x=" +
                           std::to_string(x) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
    };
    s.coverage_depth = static_cast<long long>(basis->size());
    s.finite_basis_depth = static_cast<long long>(basis->size());
    s.w.covering = [basis, npoints](const std::vector<Index>& f) {
        for (Point p = 0; p < npoints; ++p) {
            bool in = false;
            for (Index i : f)
                if (i >= 0 && i < static_cast<Index>(basis->size()) && (*basis)[i].count(p)) { in = true; break; }
            if (!in) return Verdict::no("point " + std::to_string(p) + " uncovered");
        }
        return Verdict::yes();
    };
    return make_space(std::move(s));
}

// Brute-force witness builders for finite presentations (exact because the
// whole basis and carrier are finite and declared).

inline Et2Witness brute_et2(SpacePtr s) {
    if (!s->size || s->finite_basis_depth < 0)
        throw precondition_violated("brute_et2: needs a finite declared presentation");
    return Et2Witness{
        [s](Point x, Point y) -> Index {
            for (Index i = 0; i < s->finite_basis_depth; ++i) {
                if (!s->basis_member(x, i)) continue;
                for (Index j = 0; j < s->finite_basis_depth; ++j) {
                    if (!s->basis_member(y, j)) continue;
                    bool dis = true;
                    for (long long n = 0; n < *s->size; ++n) {
                        Point z = *s->enumerate(n);
                        if (s->basis_member(z, i) && s->basis_member(z, j)) { dis = false; break; }
                    }
                    if (dis) return i;
                }
            }
            throw stuck_search("brute_et2: points not separated");
        },
        [s](Point x, Point y) -> Index {
            for (Index i = 0; i < s->finite_basis_depth; ++i) {
                if (!s->basis_member(x, i)) continue;
                for (Index j = 0; j < s->finite_basis_depth; ++j) {
                    if (!s->basis_member(y, j)) continue;
                    bool dis = true;
                    for (long long n = 0; n < *s->size; ++n) {
                        Point z = *s->enumerate(n);
                        if (s->basis_member(z, i) && s->basis_member(z, j)) { dis = false; break; }
                    }
                    if (dis) return j;
                }
            }
            throw stuck_search("brute_et2: points not separated");
        }};
}

inline Ut3Witness brute_ut3(SpacePtr s) {
    if (!s->size || s->finite_basis_depth < 0)
        throw precondition_violated("brute_ut3: needs a finite declared presentation");
    auto subset = [s](Index a, Index b) {
        for (long long n = 0; n < *s->size; ++n) {
            Point z = *s->enumerate(n);
            if (s->basis_member(z, a) && !s->basis_member(z, b)) return false;
        }
        return true;
    };
    auto disjoint = [s](Index a, Index b) {
        for (long long n = 0; n < *s->size; ++n) {
            Point z = *s->enumerate(n);
            if (s->basis_member(z, a) && s->basis_member(z, b)) return false;
        }
        return true;
    };
    auto r0 = [s, subset, disjoint](Point x, Index i) -> Index {
        for (Index r = 0; r < s->finite_basis_depth; ++r) {
            if (!s->basis_member(x, r) || !subset(r, i)) continue;
            bool all_covered = true;
            for (long long n = 0; n < *s->size && all_covered; ++n) {
                Point y = *s->enumerate(n);
                if (s->basis_member(y, i)) continue;
                bool has = false;
                for (Index t = 0; t < s->finite_basis_depth && !has; ++t)
                    has = s->basis_member(y, t) && disjoint(t, r);
                all_covered = has;
            }
            if (all_covered) return r;
        }
        throw stuck_search("brute_ut3: no r0 for x=" + std::to_string(x) + " i=" + std::to_string(i));
    };
    return Ut3Witness{r0, [s, r0, disjoint](Point x, Index i, Point y) -> Index {
                          Index r = r0(x, i);
                          for (Index t = 0; t < s->finite_basis_depth; ++t)
                              if (s->basis_member(y, t) && disjoint(t, r)) return t;
                          throw stuck_search("brute_ut3: no r1");
                      }};
}

inline SpacePtr with_witnesses(SpacePtr s, std::function<void(Witnesses&)> patch) {
    Space copy = *s;
    patch(copy.w);
    return make_space(std::move(copy));
}

}  // namespace cscs
