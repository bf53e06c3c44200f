#pragma once

// Presentations of countable second-countable spaces: a decidable carrier
// with a strictly increasing enumerator, a total basis-membership oracle,
// the refinement witness k, and optional machine-checkable witness bundles.
// Everything is an immutable value with pure oracles; the verify harness
// replays each contract at a finite depth and reports pass/fail/unknown
// with a counterexample tuple on failure.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "codes.hpp"
#include "verdict.hpp"

namespace cscs {

using Point = Code;
using Index = Code;

// ---------------------------------------------------------------------------
// Codes for open / closed collections: a total stream of basis indices with
// Skip entries (nullopt).  Open = union of the streamed sets, closed =
// complement of that union.

struct OpenCode {
    std::function<std::optional<Index>(long long)> stream;
};

struct ClosedCode {
    std::function<std::optional<Index>(long long)> stream;
};

// ---------------------------------------------------------------------------
// Witness bundles.

struct Et2Witness {
    std::function<Index(Point, Point)> h0, h1;  // disjoint basic neighborhoods
};

struct Ut3Witness {
    std::function<Index(Point, Index)> r0;               // shrink x's neighborhood
    std::function<Index(Point, Index, Point)> r1;        // cover each outside point
};

struct ZeroDimWitness {
    std::function<Index(Point, Index)> g;  // y notin U_i -> clopen nbhd of y in the complement
};

struct AlgebraWitness {
    std::function<Index(Index, Index)> intersect;  // U_{Int(i,j)} = U_i cap U_j
    std::function<Index(Index)> complement;        // U_{Comp(i)} = X \ U_i
};

using CoveringRelation = std::function<Verdict(const std::vector<Index>&)>;

struct CompactSet {
    std::function<bool(Point)> member;
    std::function<std::optional<Point>(long long)> enumerate;
    CoveringRelation covers;  // finite index sets covering the subset
};

struct CcnEntry {
    std::shared_ptr<CompactSet> neighborhood;  // K_x
    Index inner_index = 0;                     // x in U_{i(x)} subseteq K_x
};

struct Witnesses {
    std::optional<Et2Witness> et2;
    std::optional<Ut3Witness> ut3;
    std::optional<ZeroDimWitness> zero_dim;
    std::optional<AlgebraWitness> algebra;
    CoveringRelation covering;                         // may be null
    std::function<Verdict(Point)> isolated;            // may be null
    std::function<CcnEntry(Point)> ccn;                // may be null
};

// ---------------------------------------------------------------------------
// Space presentation.

struct Space {
    std::function<bool(Point)> member;
    // Strictly increasing enumerator; nullopt past the end of a finite carrier.
    std::function<std::optional<Point>(long long)> enumerate;
    std::optional<long long> size;  // finite carriers only

    std::function<bool(Point, Index)> basis_member;
    std::function<Index(Point, Index, Index)> refine;  // the k of the presentation

    // Coverage: either every point lies in a basic set among the first
    // coverage_depth indices, or index_witness names one per point.
    long long coverage_depth = -1;
    std::function<Index(Point)> index_witness;

    // First `finite_basis_depth` indices exhaust the distinct basic sets
    // (finite presentations only); enables exact brute-force oracles.
    long long finite_basis_depth = -1;

    Witnesses w;

    std::vector<Point> front(long long n) const {
        std::vector<Point> out;
        for (long long i = 0; i < n; ++i) {
            auto p = enumerate(i);
            if (!p) break;
            out.push_back(*p);
        }
        return out;
    }
};

using SpacePtr = std::shared_ptr<const Space>;

inline SpacePtr make_space(Space s) { return std::make_shared<const Space>(std::move(s)); }

// ---------------------------------------------------------------------------
// Effective maps.

enum class MapKind { Continuous, Embedding, Homeomorphism };

struct EffMap {
    SpacePtr dom, cod;
    std::function<Point(Point)> f;
    std::function<Index(Point, Index)> v0;  // continuity verifier
    std::function<Index(Point, Index)> v1;  // openness-with-range verifier (embeddings)
    MapKind kind = MapKind::Continuous;
};

// [OP] refine: guarded access to the presentation's k.
inline Index refine(const Space& s, Point x, Index i, Index j) {
    if (!s.basis_member(x, i) || !s.basis_member(x, j))
        throw precondition_violated("refine: x=" + std::to_string(x) + " not in U_" +
                                    std::to_string(i) + " cap U_" + std::to_string(j));
    return s.refine(x, i, j);
}

// [OP] iterate_refine: K(x, F) folding k over a finite index set.
inline Index iterate_refine(const Space& s, Point x, const std::vector<Index>& indices) {
    if (indices.empty()) throw precondition_violated("iterate_refine: empty index set");
    std::vector<Index> f = indices;
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    Index acc = f[0];
    if (!s.basis_member(x, acc))
        throw precondition_violated("iterate_refine: x not in U_" + std::to_string(acc));
    for (size_t t = 1; t < f.size(); ++t) acc = refine(s, x, acc, f[t]);
    return acc;
}

// ---------------------------------------------------------------------------
// [OP] disjoint_union.  Carrier pairs (j, x) coded with the pairing function;
// basic set pair(j, i) denotes {j} x U_i^j.

struct DisjointUnion {
    SpacePtr space;
    std::vector<EffMap> injections;
};

inline DisjointUnion disjoint_union(const std::vector<SpacePtr>& parts) {
    auto summands = std::make_shared<std::vector<SpacePtr>>(parts);
    Space u;
    u.member = [summands](Point p) {
        auto [j, x] = unpair_code(p);
        return j < static_cast<Code>(summands->size()) && (*summands)[j]->member(x);
    };
    // Merge the summand enumerations in ascending pair-code order.
    u.enumerate = [summands](long long n) -> std::optional<Point> {
        struct Cursor { long long pos = 0; };
        std::vector<long long> pos(summands->size(), 0);
        std::optional<Point> out;
        for (long long step = 0; step <= n; ++step) {
            std::optional<Point> best;
            size_t besti = 0;
            for (size_t j = 0; j < summands->size(); ++j) {
                auto x = (*summands)[j]->enumerate(pos[j]);
                if (!x) continue;
                Point cand = pair_code(static_cast<Code>(j), *x);
                if (!best || cand < *best) { best = cand; besti = j; }
            }
            if (!best) return std::nullopt;
            out = best;
            ++pos[besti];
        }
        return out;
    };
    bool all_finite = true;
    long long total = 0;
    for (const auto& s : *summands) {
        if (!s->size) { all_finite = false; break; }
        total += *s->size;
    }
    if (all_finite) u.size = total;

    u.basis_member = [summands](Point p, Index idx) {
        auto [j, x] = unpair_code(p);
        auto [jj, i] = unpair_code(idx);
        if (j != jj || j >= static_cast<Code>(summands->size())) return false;
        return (*summands)[j]->member(x) && (*summands)[j]->basis_member(x, i);
    };
    u.refine = [summands](Point p, Index a, Index b) {
        auto [j, x] = unpair_code(p);
        auto [ja, ia] = unpair_code(a);
        auto [jb, ib] = unpair_code(b);
        if (ja != j || jb != j) throw precondition_violated("disjoint_union refine: cross-summand");
        return pair_code(j, (*summands)[j]->refine(x, ia, ib));
    };
    u.index_witness = [summands](Point p) {
        auto [j, x] = unpair_code(p);
        const auto& s = (*summands)[j];
        Index i = s->index_witness ? s->index_witness(x) : [&] {
            for (Index c = 0; c < s->coverage_depth; ++c)
                if (s->basis_member(x, c)) return c;
            throw stuck_search("disjoint_union: no covering index for summand point");
        }();
        return pair_code(j, i);
    };

    // Componentwise witnesses when every summand carries them.
    bool all_et2 = true, all_ut3 = true, all_g = true, all_cov = true, all_iso = true;
    for (const auto& s : *summands) {
        all_et2 &= s->w.et2.has_value();
        all_ut3 &= s->w.ut3.has_value();
        all_g &= s->w.zero_dim.has_value();
        all_cov &= static_cast<bool>(s->w.covering);
        all_iso &= static_cast<bool>(s->w.isolated);
    }
    if (all_et2 && !summands->empty()) {
        u.w.et2 = Et2Witness{
            [summands](Point p, Point q) -> Index {
                auto [j, x] = unpair_code(p);
                auto [l, y] = unpair_code(q);
                if (j != l) {
                    // whole clopen copy {j} x X^j separates; use x's witness index
                    const auto& s = (*summands)[j];
                    Index i = s->index_witness ? s->index_witness(x) : 0;
                    return pair_code(j, i);
                }
                return pair_code(j, (*summands)[j]->w.et2->h0(x, y));
            },
            [summands](Point p, Point q) -> Index {
                auto [j, x] = unpair_code(p);
                auto [l, y] = unpair_code(q);
                if (j != l) {
                    const auto& s = (*summands)[l];
                    Index i = s->index_witness ? s->index_witness(y) : 0;
                    return pair_code(l, i);
                }
                return pair_code(j, (*summands)[j]->w.et2->h1(x, y));
            }};
    }
    if (all_g && !summands->empty()) {
        u.w.zero_dim = ZeroDimWitness{[summands](Point p, Index idx) -> Index {
            auto [j, x] = unpair_code(p);
            auto [l, i] = unpair_code(idx);
            if (j != l) {
                const auto& s = (*summands)[j];
                Index c = s->index_witness ? s->index_witness(x) : 0;
                return pair_code(j, c);
            }
            return pair_code(j, (*summands)[j]->w.zero_dim->g(x, i));
        }};
    }
    if (all_iso && !summands->empty()) {
        u.w.isolated = [summands](Point p) {
            auto [j, x] = unpair_code(p);
            return (*summands)[j]->w.isolated(x);
        };
    }
    if (all_cov && !summands->empty() && all_finite) {
        // Finite sums of covered summands: each summand must be covered by
        // its slice of the index set.
        u.w.covering = [summands](const std::vector<Index>& fs) -> Verdict {
            for (size_t j = 0; j < summands->size(); ++j) {
                std::vector<Index> slice;
                for (Index idx : fs) {
                    auto [jj, i] = unpair_code(idx);
                    if (jj == static_cast<Code>(j)) slice.push_back(i);
                }
                Verdict v = (*summands)[j]->w.covering(slice);
                if (v.is_false())
                    return Verdict::no("summand " + std::to_string(j) + " uncovered: " + v.certificate, v.depth);
                if (v.is_unknown()) return Verdict::unknown(v.depth, "summand " + std::to_string(j));
            }
            return Verdict::yes();
        };
    }

    DisjointUnion out;
    out.space = make_space(std::move(u));
    for (size_t j = 0; j < summands->size(); ++j) {
        EffMap inj;
        inj.dom = (*summands)[j];
        inj.cod = out.space;
        Code jc = static_cast<Code>(j);
        inj.f = [jc](Point x) { return pair_code(jc, x); };
        inj.v0 = [jc, summands](Point x, Index idx) -> Index {
            auto [jj, i] = unpair_code(idx);
            if (jj != jc) throw precondition_violated("injection v0: image not in target set");
            return i;
        };
        inj.v1 = [jc](Point, Index i) { return pair_code(jc, i); };
        inj.kind = MapKind::Embedding;
        out.injections.push_back(std::move(inj));
    }
    return out;
}

// ---------------------------------------------------------------------------
// [OP] subspace.  Basis sets U_i cap S with the inherited k; witnesses
// restrict along the inclusion (the pullback works verbatim because the
// inclusion's verifiers are identities).

inline SpacePtr subspace(SpacePtr ambient, std::function<bool(Point)> keep,
                         std::optional<long long> sub_size = std::nullopt) {
    Space s;
    auto amb = ambient;
    s.member = [amb, keep](Point x) { return amb->member(x) && keep(x); };
    s.enumerate = [amb, keep](long long n) -> std::optional<Point> {
        long long seen = -1;
        for (long long c = 0;; ++c) {
            auto p = amb->enumerate(c);
            if (!p) return std::nullopt;
            if (!keep(*p)) continue;
            if (++seen == n) return p;
        }
    };
    s.size = sub_size;
    if (!sub_size && amb->size) {
        long long cnt = 0;
        for (long long c = 0; c < *amb->size; ++c) {
            auto p = amb->enumerate(c);
            if (p && keep(*p)) ++cnt;
        }
        s.size = cnt;
    }
    s.basis_member = [amb, keep](Point x, Index i) { return keep(x) && amb->basis_member(x, i); };
    s.refine = amb->refine;
    s.coverage_depth = amb->coverage_depth;
    if (amb->index_witness) s.index_witness = amb->index_witness;
    s.finite_basis_depth = amb->finite_basis_depth;
    if (amb->w.et2) s.w.et2 = amb->w.et2;
    if (amb->w.ut3) s.w.ut3 = amb->w.ut3;
    if (amb->w.zero_dim) s.w.zero_dim = amb->w.zero_dim;
    if (amb->w.isolated) {
        // Ambient isolation restricts soundly only one way; keep it out and
        // let callers supply subspace-specific oracles.
    }
    return make_space(std::move(s));
}

// ---------------------------------------------------------------------------
// [OP] kolmogorov_quotient.  Classes decided over the first `depth` basis
// indices; representatives are least class members.

struct KolmogorovQuotient {
    SpacePtr space;
    std::function<Point(Point)> representative;
    Verdict exact;
};

inline KolmogorovQuotient kolmogorov_quotient(SpacePtr x, long long depth, long long point_budget = 256) {
    auto pts = x->front(point_budget);
    auto rep_of = [x, depth, pts](Point p) {
        for (Point q : pts) {
            if (q > p) break;
            bool same = true;
            for (Index i = 0; i < depth && same; ++i)
                same = x->basis_member(p, i) == x->basis_member(q, i);
            if (same) return q;
        }
        return p;
    };
    bool all_singleton = true;
    std::string cert;
    for (Point p : pts) {
        Point r = rep_of(p);
        if (r != p) {
            all_singleton = false;
            cert = "class {" + std::to_string(r) + "," + std::to_string(p) + "} undistinguished below depth";
            break;
        }
    }
    auto rep_fn = std::function<Point(Point)>(rep_of);
    SpacePtr sub = subspace(x, [rep_of](Point p) { return rep_of(p) == p; });
    KolmogorovQuotient out;
    out.space = sub;
    out.representative = rep_fn;
    out.exact = all_singleton ? Verdict::yes("all classes singleton at depth", depth)
                              : Verdict::unknown(depth, cert);
    return out;
}

// ---------------------------------------------------------------------------
// [OP] compose_maps / invert_homeomorphism.

inline EffMap compose_maps(const EffMap& g, const EffMap& f) {
    // g after f
    if (f.cod.get() != g.dom.get())
        throw kind_mismatch("compose_maps: codomain/domain presentations differ");
    EffMap h;
    h.dom = f.dom;
    h.cod = g.cod;
    auto ff = f.f, gf = g.f;
    auto fv0 = f.v0, gv0 = g.v0;
    h.f = [ff, gf](Point x) { return gf(ff(x)); };
    h.v0 = [ff, fv0, gv0](Point x, Index j) { return fv0(x, gv0(ff(x), j)); };
    if (f.v1 && g.v1) {
        auto fv1 = f.v1, gv1 = g.v1;
        h.v1 = [ff, fv1, gv1](Point x, Index i) { return gv1(ff(x), fv1(x, i)); };
        h.kind = (f.kind == MapKind::Homeomorphism && g.kind == MapKind::Homeomorphism)
                     ? MapKind::Homeomorphism
                     : MapKind::Embedding;
    } else {
        h.kind = MapKind::Continuous;
    }
    return h;
}

inline EffMap invert_homeomorphism(const EffMap& h, long long search_budget = 1 << 20) {
    if (h.kind != MapKind::Homeomorphism)
        throw kind_mismatch("invert_homeomorphism: map is not a homeomorphism");
    EffMap inv;
    inv.dom = h.cod;
    inv.cod = h.dom;
    auto dom = h.dom;
    auto f = h.f;
    inv.f = [dom, f, search_budget](Point y) -> Point {
        for (long long n = 0; n < search_budget; ++n) {
            auto p = dom->enumerate(n);
            if (!p) break;
            if (f(*p) == y) return *p;
        }
        throw search_exhausted("invert: no preimage of " + std::to_string(y) + " within budget");
    };
    auto v0 = h.v0, v1 = h.v1;
    auto finv = inv.f;
    inv.v0 = [finv, v1](Point y, Index j) { return v1(finv(y), j); };
    inv.v1 = [finv, v0](Point y, Index i) { return v0(finv(y), i); };
    inv.kind = MapKind::Homeomorphism;
    return inv;
}

// ---------------------------------------------------------------------------
// [OP] verify: deterministic depth-bounded replay of every present contract.

namespace detail {

// Bounded test of U_a subseteq U_b over the first `depth` enumerated points.
inline std::optional<Point> subset_counterexample(const Space& s, Index a, Index b, long long depth) {
    for (long long n = 0; n < depth; ++n) {
        auto p = s.enumerate(n);
        if (!p) break;
        if (s.basis_member(*p, a) && !s.basis_member(*p, b)) return p;
    }
    return std::nullopt;
}

inline std::optional<Point> disjoint_counterexample(const Space& s, Index a, Index b, long long depth) {
    for (long long n = 0; n < depth; ++n) {
        auto p = s.enumerate(n);
        if (!p) break;
        if (s.basis_member(*p, a) && s.basis_member(*p, b)) return p;
    }
    return std::nullopt;
}

}  // namespace detail

inline void verify_refinement(const Space& s, long long depth, Report& rep) {
    auto pts = s.front(depth);
    for (Point x : pts)
        for (Index i = 0; i < depth; ++i) {
            if (!s.basis_member(x, i)) continue;
            for (Index j = 0; j < depth; ++j) {
                if (!s.basis_member(x, j)) continue;
                Index r = s.refine(x, i, j);
                if (!s.basis_member(x, r)) {
                    rep.add("k-witness", Truth::False,
                            "x=" + std::to_string(x) + " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                " r=" + std::to_string(r) + " x not in U_r",
                            depth);
                    return;
                }
                for (Point y : pts) {
                    if (!s.basis_member(y, r)) continue;
                    if (!s.basis_member(y, i) || !s.basis_member(y, j)) {
                        rep.add("k-witness", Truth::False,
                                "x=" + std::to_string(x) + " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                    " r=" + std::to_string(r) + " leak y=" + std::to_string(y),
                                depth);
                        return;
                    }
                }
            }
        }
    rep.add("k-witness", Truth::True, "", depth);
}

inline void verify_coverage(const Space& s, long long depth, Report& rep) {
    auto pts = s.front(depth);
    for (Point x : pts) {
        bool covered = false;
        if (s.index_witness) {
            Index i = s.index_witness(x);
            covered = s.basis_member(x, i);
        } else {
            for (Index i = 0; i < s.coverage_depth && !covered; ++i)
                covered = s.basis_member(x, i);
        }
        if (!covered) {
            rep.add("coverage", Truth::False, "x=" + std::to_string(x) + " in no declared basic set", depth);
            return;
        }
    }
    rep.add("coverage", Truth::True, "", depth);
}

inline void verify_et2(const Space& s, long long depth, Report& rep) {
    auto pts = s.front(depth);
    for (Point x : pts)
        for (Point y : pts) {
            if (x >= y) continue;
            Index a = s.w.et2->h0(x, y), b = s.w.et2->h1(x, y);
            if (!s.basis_member(x, a) || !s.basis_member(y, b)) {
                rep.add("et2", Truth::False,
                        "x=" + std::to_string(x) + " y=" + std::to_string(y) + " membership", depth);
                return;
            }
            if (auto z = detail::disjoint_counterexample(s, a, b, depth)) {
                rep.add("et2", Truth::False,
                        "x=" + std::to_string(x) + " y=" + std::to_string(y) + " overlap at " + std::to_string(*z),
                        depth);
                return;
            }
        }
    rep.add("et2", Truth::True, "", depth);
}

inline void verify_ut3(const Space& s, long long depth, Report& rep, long long index_depth = -1) {
    if (index_depth < 0) index_depth = depth;
    auto pts = s.front(depth);
    for (Point x : pts)
        for (Index i = 0; i < index_depth; ++i) {
            if (!s.basis_member(x, i)) continue;
            Index r0 = s.w.ut3->r0(x, i);
            if (!s.basis_member(x, r0)) {
                rep.add("ut3", Truth::False, "R0 misses x=" + std::to_string(x) + " i=" + std::to_string(i), depth);
                return;
            }
            if (auto z = detail::subset_counterexample(s, r0, i, depth)) {
                rep.add("ut3", Truth::False,
                        "U_R0 not inside U_i: x=" + std::to_string(x) + " i=" + std::to_string(i) + " leak " + std::to_string(*z),
                        depth);
                return;
            }
            for (Point y : pts) {
                if (s.basis_member(y, i)) continue;
                Index r1 = s.w.ut3->r1(x, i, y);
                if (!s.basis_member(y, r1)) {
                    rep.add("ut3", Truth::False,
                            "R1 misses y=" + std::to_string(y) + " (x=" + std::to_string(x) + ",i=" + std::to_string(i) + ")",
                            depth);
                    return;
                }
                if (auto z = detail::disjoint_counterexample(s, r1, r0, depth)) {
                    rep.add("ut3", Truth::False,
                            "U_R1 meets U_R0 at " + std::to_string(*z) + " (x=" + std::to_string(x) + ",i=" +
                                std::to_string(i) + ",y=" + std::to_string(y) + ")",
                            depth);
                    return;
                }
            }
        }
    rep.add("ut3", Truth::True, "", depth);
}

inline void verify_zero_dim(const Space& s, long long depth, Report& rep, long long index_depth = -1) {
    if (index_depth < 0) index_depth = depth;
    auto pts = s.front(depth);
    for (Point x : pts)
        for (Index i = 0; i < index_depth; ++i) {
            if (s.basis_member(x, i)) continue;
            Index g = s.w.zero_dim->g(x, i);
            if (!s.basis_member(x, g)) {
                rep.add("zero-dim", Truth::False, "G misses x=" + std::to_string(x) + " i=" + std::to_string(i), depth);
                return;
            }
            if (auto z = detail::disjoint_counterexample(s, g, i, depth)) {
                rep.add("zero-dim", Truth::False,
                        "U_G meets U_i at " + std::to_string(*z) + " (x=" + std::to_string(x) + ",i=" + std::to_string(i) + ")",
                        depth);
                return;
            }
        }
    rep.add("zero-dim", Truth::True, "", depth);
}

inline void verify_algebra(const Space& s, long long depth, Report& rep, long long index_depth = -1) {
    if (index_depth < 0) index_depth = depth;
    auto pts = s.front(depth);
    for (Index i = 0; i < index_depth; ++i) {
        Index c = s.w.algebra->complement(i);
        for (Point p : pts)
            if (s.basis_member(p, c) == s.basis_member(p, i)) {
                rep.add("algebra", Truth::False,
                        "Comp(" + std::to_string(i) + ") wrong at " + std::to_string(p), depth);
                return;
            }
        for (Index j = 0; j < index_depth; ++j) {
            Index m = s.w.algebra->intersect(i, j);
            for (Point p : pts)
                if (s.basis_member(p, m) != (s.basis_member(p, i) && s.basis_member(p, j))) {
                    rep.add("algebra", Truth::False,
                            "Int(" + std::to_string(i) + "," + std::to_string(j) + ") wrong at " + std::to_string(p),
                            depth);
                    return;
                }
        }
    }
    rep.add("algebra", Truth::True, "", depth);
}

inline void verify_covering(const Space& s, long long depth, Report& rep) {
    // Sound spot-check: True verdicts must cover every enumerated point,
    // False verdicts must exhibit an uncovered certificate when it names one.
    auto pts = s.front(depth);
    long long probes = std::min<long long>(depth, 12);
    for (Index i = 0; i < probes; ++i) {
        std::vector<Index> f = {i};
        Verdict v = s.w.covering(f);
        if (v.is_true()) {
            for (Point p : pts)
                if (!s.basis_member(p, i)) {
                    rep.add("covering", Truth::False,
                            "claimed cover {" + std::to_string(i) + "} misses " + std::to_string(p), depth);
                    return;
                }
        }
    }
    // All singleton basics below depth together must cover the enumerated
    // points whenever the relation says so.
    std::vector<Index> all;
    for (Index i = 0; i < depth; ++i) all.push_back(i);
    Verdict v = s.w.covering(all);
    if (v.is_true()) {
        for (Point p : pts) {
            bool in = false;
            for (Index i : all)
                if (s.basis_member(p, i)) { in = true; break; }
            if (!in) {
                rep.add("covering", Truth::False, "claimed full cover misses " + std::to_string(p), depth);
                return;
            }
        }
    }
    rep.add("covering", Truth::True, "", depth);
}

// Certificates may carry an "index=N" witness; the verifier honors it.
inline std::optional<Index> certificate_index(const std::string& cert) {
    auto pos = cert.find("index=");
    if (pos == std::string::npos) return std::nullopt;
    return std::stoll(cert.substr(pos + 6));
}

inline void verify_isolation(const Space& s, long long depth, Report& rep) {
    auto pts = s.front(depth);
    for (Point x : pts) {
        Verdict v = s.w.isolated(x);
        if (v.is_false()) {
            // every basic set below depth containing x must contain another
            // enumerated point eventually; check the declared window only
            continue;
        }
        if (v.is_true()) {
            bool witnessed = false;
            auto try_index = [&](Index i) {
                if (!s.basis_member(x, i)) return;
                bool alone = true;
                for (Point y : pts)
                    if (y != x && s.basis_member(y, i)) { alone = false; break; }
                if (alone) witnessed = true;
            };
            if (auto ci = certificate_index(v.certificate)) try_index(*ci);
            for (Index i = 0; i < std::max(depth, s.coverage_depth) && !witnessed; ++i) try_index(i);
            if (!witnessed && s.index_witness) try_index(s.index_witness(x));
            if (!witnessed) {
                rep.add("isolation", Truth::False,
                        "oracle claims " + std::to_string(x) + " isolated, no separating index below depth", depth);
                return;
            }
        }
    }
    rep.add("isolation", Truth::True, "", depth);
}

inline Report verify(const Space& s, long long depth) {
    Report rep;
    verify_refinement(s, depth, rep);
    verify_coverage(s, depth, rep);
    if (s.w.et2) verify_et2(s, depth, rep);
    if (s.w.ut3) verify_ut3(s, depth, rep);
    if (s.w.zero_dim) verify_zero_dim(s, depth, rep);
    if (s.w.algebra) verify_algebra(s, depth, rep);
    if (s.w.covering) verify_covering(s, depth, rep);
    if (s.w.isolated) verify_isolation(s, depth, rep);
    return rep;
}

inline Report verify(const EffMap& m, long long depth, long long index_depth = -1) {
    if (index_depth < 0) index_depth = depth;
    Report rep;
    auto pts = m.dom->front(depth);
    for (Point x : pts) {
        Point fx = m.f(x);
        if (!m.cod->member(fx)) {
            rep.add("map-image", Truth::False, "f(" + std::to_string(x) + ")=" + std::to_string(fx) + " outside target", depth);
            return rep;
        }
    }
    rep.add("map-image", Truth::True, "", depth);

    for (Point x : pts)
        for (Index j = 0; j < index_depth; ++j) {
            Point fx = m.f(x);
            if (!m.cod->basis_member(fx, j)) continue;
            Index i = m.v0(x, j);
            if (!m.dom->basis_member(x, i)) {
                rep.add("map-v0", Truth::False, "v0 misses x=" + std::to_string(x) + " j=" + std::to_string(j), depth);
                return rep;
            }
            for (Point z : pts)
                if (m.dom->basis_member(z, i) && !m.cod->basis_member(m.f(z), j)) {
                    rep.add("map-v0", Truth::False,
                            "f(U_v0) leaves V_j: x=" + std::to_string(x) + " j=" + std::to_string(j) + " z=" + std::to_string(z),
                            depth);
                    return rep;
                }
        }
    rep.add("map-v0", Truth::True, "", depth);

    if (m.kind != MapKind::Continuous && m.v1) {
        for (Point x : pts)
            for (Index i = 0; i < index_depth; ++i) {
                if (!m.dom->basis_member(x, i)) continue;
                Index j = m.v1(x, i);
                if (!m.cod->basis_member(m.f(x), j)) {
                    rep.add("map-v1", Truth::False, "v1 misses f(x): x=" + std::to_string(x) + " i=" + std::to_string(i), depth);
                    return rep;
                }
                for (Point z : pts)
                    if (m.cod->basis_member(m.f(z), j) && !m.dom->basis_member(z, i)) {
                        rep.add("map-v1", Truth::False,
                                "preimage of V_v1 leaves U_i: x=" + std::to_string(x) + " i=" + std::to_string(i) +
                                    " z=" + std::to_string(z),
                                depth);
                        return rep;
                    }
            }
        rep.add("map-v1", Truth::True, "", depth);
        bool injective = true;
        for (size_t a = 0; a < pts.size() && injective; ++a)
            for (size_t b = a + 1; b < pts.size() && injective; ++b)
                if (m.f(pts[a]) == m.f(pts[b])) {
                    rep.add("map-injective", Truth::False,
                            std::to_string(pts[a]) + " and " + std::to_string(pts[b]) + " collide", depth);
                    injective = false;
                }
        if (injective) rep.add("map-injective", Truth::True, "", depth);
    }
    return rep;
}

}  // namespace cscs
