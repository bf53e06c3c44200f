#pragma once

// Effectively-compact bookkeeping: decidable inclusion over a clopen
// algebra with a covering relation, weakly descending neighborhood chains,
// the labeled tree turning a strongly compact eT2 space into a well-order
// with the upper limit topology, well-ordering compact sums, the greedy
// descending-sequence extractor, and the strong-compactness probe.
//
// Tree addresses are interned: the order and space built over the tree use
// dense node ids, so interval indices over them stay within machine range.

#include "separation.hpp"
#include "trees.hpp"

namespace cscs {

enum class Inclusion { Equal, Proper, Subset, NotSubset };

namespace detail {

struct AlgebraOps {
    SpacePtr space;
    AlgebraWitness alg;
    CoveringRelation cov;
    mutable std::map<std::pair<Index, Index>, bool> subset_memo;

    bool subset(Index i, Index j) const {
        auto key = std::make_pair(i, j);
        auto it = subset_memo.find(key);
        if (it != subset_memo.end()) return it->second;
        Verdict v = cov({alg.complement(i), j});
        if (v.is_unknown()) throw search_exhausted("inclusion: covering relation unsettled");
        bool r = v.is_true();
        subset_memo.emplace(key, r);
        return r;
    }
    bool empty_set(Index i) const {
        Verdict v = cov({alg.complement(i)});
        if (v.is_unknown()) throw search_exhausted("emptiness: covering relation unsettled");
        return v.is_true();
    }
    bool whole_space(Index i) const {
        Verdict v = cov({i});
        if (v.is_unknown()) throw search_exhausted("fullness: covering relation unsettled");
        return v.is_true();
    }
};

}  // namespace detail

// [OP] inclusion_decide.
inline Inclusion inclusion_decide(SpacePtr space, Index i, Index j) {
    if (!space->w.algebra || !space->w.covering)
        throw precondition_violated("inclusion_decide: algebra and covering required");
    detail::AlgebraOps ops{space, *space->w.algebra, space->w.covering};
    bool sub = ops.subset(i, j);
    if (!sub) return Inclusion::NotSubset;
    bool sup = ops.subset(j, i);
    return sup ? Inclusion::Equal : Inclusion::Proper;
}

// ---------------------------------------------------------------------------
// [OP] weakly_descending_neighborhoods and [OP] build_A.

struct ALabel {
    Point point;  // least element of the labeled set
    Index set;
};

namespace detail {

// The chain F(x, .): least index s with x in U_s strictly below the last
// chain set.  When no strictly smaller neighborhood exists within the pool
// (even after growing it) the chain continues constant: differences along
// a constant tail are empty, so node expansion stops there by itself.
struct NeighborhoodChains {
    const AlgebraOps* ops;
    std::function<Index()> index_limit;
    std::function<void()> grow;  // may be null
    long long growth_budget = 512;

    struct PerPoint {
        std::vector<Index> chain;
        Index scanned_to = 0;
        std::vector<Index> containing;
    };
    mutable std::map<Point, PerPoint> state;

    void rescan(Point x, PerPoint& pp) const {
        Index lim = index_limit();
        for (Index s = pp.scanned_to; s < lim; ++s)
            if (ops->space->basis_member(x, s)) pp.containing.push_back(s);
        pp.scanned_to = lim;
    }

    Index at(Point x, long long n) const {
        auto& pp = state[x];
        while (static_cast<long long>(pp.chain.size()) <= n) {
            rescan(x, pp);
            std::optional<Index> found;
            for (long long g = 0; g <= growth_budget && !found; ++g) {
                if (pp.chain.empty()) {
                    if (!pp.containing.empty()) found = pp.containing.front();
                } else {
                    Index last = pp.chain.back();
                    for (Index s : pp.containing) {
                        if (!ops->subset(s, last) || ops->subset(last, s)) continue;
                        found = s;
                        break;
                    }
                }
                if (!found) {
                    if (!grow) break;
                    grow();
                    rescan(x, pp);
                }
            }
            if (!found) {
                if (pp.chain.empty())
                    throw search_exhausted("no neighborhood of point " + std::to_string(x));
                pp.chain.push_back(pp.chain.back());  // constant tail once minimal
            } else {
                pp.chain.push_back(*found);
            }
        }
        return pp.chain[n];
    }
};

struct ABuilder {
    SpacePtr space;
    AlgebraOps ops;
    NeighborhoodChains chains;
    long long point_budget;
    long long chain_budget;

    mutable std::map<FinSeq, ALabel> labels;
    mutable std::map<FinSeq, long long> entry_level;
    mutable std::vector<FinSeq> node_by_id;
    mutable std::map<FinSeq, Code> id_of;

    ABuilder(SpacePtr s, std::function<Index()> index_limit, std::function<void()> grow,
             long long point_budget_, long long chain_budget_)
        : space(s), ops{s, *s->w.algebra, s->w.covering},
          chains{&ops, std::move(index_limit), std::move(grow)},
          point_budget(point_budget_), chain_budget(chain_budget_) {
        std::optional<Point> least = space->enumerate(0);
        if (!least) throw precondition_violated("build_A: empty space");
        std::optional<Index> full;
        Index lim = chains.index_limit();
        for (long long g = 0; g < 256 && !full; ++g) {
            for (Index s = 0; s < lim; ++s)
                if (space->basis_member(*least, s) && ops.whole_space(s)) { full = s; break; }
            if (!full && chains.grow) {
                chains.grow();
                lim = chains.index_limit();
            } else {
                break;
            }
        }
        if (!full) throw search_exhausted("build_A: no index for the whole space");
        labels[{}] = ALabel{*least, *full};
        intern_node({});
    }

    Code intern_node(const FinSeq& s) const {
        auto it = id_of.find(s);
        if (it != id_of.end()) return it->second;
        Code id = static_cast<Code>(node_by_id.size());
        node_by_id.push_back(s);
        id_of.emplace(s, id);
        return id;
    }

    Point least_element(Index set) const {
        for (long long n = 0; n < point_budget; ++n) {
            auto p = space->enumerate(n);
            if (!p) break;
            if (space->basis_member(*p, set)) return *p;
        }
        throw search_exhausted("build_A: no least element of a nonempty-claimed set");
    }

    const ALabel& label(const FinSeq& node) const {
        auto it = labels.find(node);
        if (it != labels.end()) return it->second;
        throw precondition_violated("build_A: unmaterialized node");
    }

    long long level_m(const FinSeq& node) const {
        auto it = entry_level.find(node);
        if (it != entry_level.end()) return it->second;
        const ALabel& lb = label(node);
        for (long long n = 0; n < chain_budget; ++n) {
            if (ops.subset(chains.at(lb.point, n), lb.set)) {
                entry_level[node] = n;
                return n;
            }
        }
        throw search_exhausted("build_A: chain of " + std::to_string(lb.point) +
                               " never enters its labeled set");
    }

    // child with the given value, materializing its label; nullopt if absent
    std::optional<FinSeq> child(const FinSeq& node, Code v) const {
        FinSeq c = node;
        c.push_back(v);
        if (labels.count(c)) return c;
        const ALabel& lb = label(node);
        long long m = level_m(node);
        Point y = lb.point;
        if (v == 0) {
            Index um = chains.at(y, m);
            if (ops.subset(lb.set, um)) return std::nullopt;  // U(y,m) = U_j
            Index diff = ops.alg.intersect(lb.set, ops.alg.complement(um));
            labels[c] = ALabel{least_element(diff), diff};
            intern_node(c);
            return c;
        }
        long long k = static_cast<long long>(v) - 1;
        if (k < m) return std::nullopt;
        Index uk = chains.at(y, k), uk1 = chains.at(y, k + 1);
        if (ops.subset(uk, uk1)) return std::nullopt;  // constant step: empty difference
        Index dk = ops.alg.intersect(uk, ops.alg.complement(uk1));
        if (ops.empty_set(dk)) return std::nullopt;
        labels[c] = ALabel{least_element(dk), dk};
        intern_node(c);
        return c;
    }

    bool node_member(const FinSeq& s) const {
        FinSeq cur;
        for (Code v : s) {
            auto c = child(cur, v);
            if (!c) return false;
            cur = *c;
        }
        return true;
    }

    FinSeq address(Point x) const {
        FinSeq cur;
        for (long long guard = 0; guard < chain_budget; ++guard) {
            const ALabel& lb = label(cur);
            if (lb.point == x) return cur;
            long long m = level_m(cur);
            Point y = lb.point;
            if (!space->basis_member(x, chains.at(y, m))) {
                auto c = child(cur, 0);
                if (!c || !space->basis_member(x, label(*c).set))
                    throw Error("NonUniqueLabel", "point " + std::to_string(x) + " escapes the partition");
                cur = *c;
                continue;
            }
            std::optional<long long> drop;
            for (long long k = m; k < chain_budget; ++k)
                if (!space->basis_member(x, chains.at(y, k + 1))) { drop = k; break; }
            if (!drop)
                throw Error("InfinitePartitionDetected",
                            "point " + std::to_string(x) + " never leaves the chain of " + std::to_string(y));
            auto c = child(cur, *drop + 1);
            if (!c) throw Error("NonUniqueLabel", "expected child missing");
            cur = *c;
        }
        throw Error("InfinitePartitionDetected", "address walk exceeded budget (strict KB descent)");
    }
};

}  // namespace detail

inline Index weakly_descending_neighborhoods(SpacePtr space, Point x, long long n,
                                             long long index_budget = 4096) {
    if (!space->w.algebra || !space->w.covering)
        throw precondition_violated("weakly_descending_neighborhoods: algebra and covering required");
    auto ops = std::make_shared<detail::AlgebraOps>(
        detail::AlgebraOps{space, *space->w.algebra, space->w.covering});
    detail::NeighborhoodChains ch{ops.get(), [index_budget] { return index_budget; }, nullptr};
    return ch.at(x, n);
}

struct BuildAResult {
    std::shared_ptr<detail::ABuilder> builder;
    TreePtr tree;           // the labeled tree, children budget-enumerated
    OrderPtr kb;            // Kleene-Brouwer order on interned node ids
    SpacePtr target;        // upper limit topology of kb
    EffMap embedding;       // x -> node id of alpha_x, a verified homeomorphism
    std::function<FinSeq(Point)> address;
    std::function<ALabel(const FinSeq&)> label;
    std::function<Code(const FinSeq&)> node_id;
    std::function<FinSeq(Code)> node_of;
};

inline BuildAResult build_A(SpacePtr space, std::function<Index()> index_limit,
                            std::function<void()> grow, long long point_budget = 4096,
                            long long chain_budget = 512, long long child_stream_budget = 256) {
    if (!space->w.algebra || !space->w.covering)
        throw precondition_violated("build_A: algebra and covering required");
    auto b = std::make_shared<detail::ABuilder>(space, std::move(index_limit), std::move(grow),
                                                point_budget, chain_budget);

    Tree t;
    t.member = [b](const FinSeq& s) { return b->node_member(s); };
    t.children = [b, child_stream_budget](const FinSeq& s) -> ChildSpec {
        ChildSpec c;
        c.kind = ChildSpec::Enumerated;
        c.stream = [b, s, child_stream_budget](long long n) -> std::optional<Code> {
            long long seen = -1;
            if (b->child(s, 0) && ++seen == n) return Code(0);
            long long m = b->level_m(s);
            for (long long k = m; k < m + child_stream_budget; ++k)
                if (b->child(s, k + 1) && ++seen == n) return k + 1;
            return std::nullopt;
        };
        c.emptiness = Verdict::unknown(child_stream_budget);
        return c;
    };
    auto tp = make_tree(std::move(t));

    Order kb;
    kb.member = [b](Point p) { return p >= 0 && p < static_cast<Code>(b->node_by_id.size()); };
    kb.enumerate = [b](long long n) -> std::optional<Point> {
        if (n < static_cast<long long>(b->node_by_id.size())) return n;
        return std::nullopt;
    };
    kb.cmp = [b](Point a, Point c) { return kb_compare(b->node_by_id[a], b->node_by_id[c]); };
    kb.max_elem = std::optional<Point>(0);  // the root is interned first
    auto kbp = make_order(std::move(kb));
    auto target = upper_limit_topology(kbp);

    EffMap g;
    g.dom = space;
    g.cod = target;
    g.f = [b](Point x) { return b->intern_node(b->address(x)); };
    // continuity: target nbhd ]beta, alpha_x]; the proof's l-definition
    g.v0 = [b, space](Point x, Index target_idx) -> Index {
        Interval iv = decode_half_open(target_idx);
        FinSeq ax = b->address(x);
        long long m = b->level_m(ax);
        if (iv.lo.kind < 0) return b->chains.at(x, m);
        FinSeq beta = b->node_by_id[iv.lo.v];
        long long l = m;
        if (is_prefix(ax, beta) && beta != ax) {
            Point y = b->label(beta).point;
            for (long long n = m; n < b->chain_budget; ++n)
                if (!space->basis_member(y, b->chains.at(x, n))) { l = n; break; }
        }
        return b->chains.at(x, l);
    };
    // openness: base nbhd U_i of x; the proof's four cases
    g.v1 = [b, space](Point x, Index i) -> Index {
        FinSeq ax = b->address(x);
        Index j = b->label(ax).set;
        long long m0 = b->level_m(ax);
        std::optional<long long> m;
        for (long long n = m0; n < b->chain_budget; ++n) {
            Index un = b->chains.at(x, n);
            if (b->ops.subset(un, j) && b->ops.subset(un, i)) { m = n; break; }
        }
        if (!m) throw search_exhausted("build_A openness: chain never enters U_i");
        Index um = b->chains.at(x, *m);
        bool proper = !b->ops.subset(j, um);
        Code ax_id = b->intern_node(ax);
        if (proper) {
            Index um0 = b->chains.at(x, m0);
            bool same_as_entry = b->ops.subset(um, um0) && b->ops.subset(um0, um);
            if (!same_as_entry) {
                // case 2: last nonempty difference below m gives the child bound
                for (long long t = *m - 1; t >= m0; --t) {
                    Index dt = b->ops.alg.intersect(b->chains.at(x, t),
                                                    b->ops.alg.complement(b->chains.at(x, t + 1)));
                    if (!b->ops.empty_set(dt)) {
                        auto c = b->child(ax, t + 1);
                        if (c) return interval_index(at(b->intern_node(*c)), at(ax_id));
                    }
                }
            }
            // case 1: the 0-child bounds the interval
            auto c0 = b->child(ax, 0);
            if (c0) return interval_index(at(b->intern_node(*c0)), at(ax_id));
            return interval_index(neg_inf(), at(ax_id));
        }
        // U(x,m) = U_j: cases 3 and 4 on left siblings along the address
        std::optional<std::pair<size_t, Code>> left;
        for (size_t tpos = 0; tpos < ax.size(); ++tpos) {
            FinSeq prefix(ax.begin(), ax.begin() + tpos);
            for (Code v = ax[tpos]; v-- > 0;) {
                if (b->child(prefix, v)) {
                    left = {tpos, v};
                    break;
                }
            }
        }
        if (!left) return interval_index(neg_inf(), at(ax_id));  // case 3
        FinSeq ay(ax.begin(), ax.begin() + left->first);
        ay.push_back(left->second);
        return interval_index(at(b->intern_node(ay)), at(ax_id));  // case 4
    };
    g.kind = MapKind::Homeomorphism;

    BuildAResult out;
    out.builder = b;
    out.tree = tp;
    out.kb = kbp;
    out.target = target;
    out.embedding = g;
    out.address = [b](Point x) { return b->address(x); };
    out.label = [b](const FinSeq& s) {
        if (!b->node_member(s)) throw precondition_violated("label: not a node");
        return b->label(s);
    };
    out.node_id = [b](const FinSeq& s) { return b->intern_node(s); };
    out.node_of = [b](Code id) { return b->node_by_id.at(id); };
    return out;
}

inline BuildAResult build_A(const AlgebraResult& alg, long long point_budget = 4096,
                            long long chain_budget = 512, long long child_stream_budget = 256) {
    auto table = alg.table;
    return build_A(alg.space, [table] { return static_cast<Index>(table->by_index.size()); },
                   alg.grow_seed, point_budget, chain_budget, child_stream_budget);
}

inline BuildAResult build_A(SpacePtr space, long long index_budget = 4096,
                            long long point_budget = 4096, long long chain_budget = 512,
                            long long child_stream_budget = 256) {
    return build_A(space, [index_budget] { return index_budget; }, nullptr, point_budget,
                   chain_budget, child_stream_budget);
}

// ---------------------------------------------------------------------------
// [OP] wellorder_compact_sum: lexicographic order on the per-summand
// well-orders produced by build_A, with the homeomorphism from the disjoint
// union to its order topology.

struct WellOrderSum {
    OrderPtr order;
    SpacePtr order_space;  // order topology of `order`
    EffMap from_union;     // disjoint union -> order topology
    SpacePtr union_space;
};

inline WellOrderSum wellorder_compact_sum(const std::vector<SpacePtr>& spaces,
                                          const std::vector<BuildAResult>& built) {
    if (spaces.size() != built.size())
        throw precondition_violated("wellorder_compact_sum: size mismatch");
    auto parts = std::make_shared<std::vector<BuildAResult>>(built);
    auto du = disjoint_union(spaces);

    Order o;
    o.member = [parts](Point p) {
        auto [j, a] = unpair_code(p);
        return j < static_cast<Code>(parts->size()) && (*parts)[j].kb->member(a);
    };
    o.enumerate = detail::scan_enumerator(o.member, std::nullopt);
    o.cmp = [parts](Point p, Point q) {
        auto [j, a] = unpair_code(p);
        auto [l, c] = unpair_code(q);
        if (j != l) return cmp_of(j, l);
        return (*parts)[j].kb->cmp(a, c);
    };
    auto op = make_order(std::move(o));
    auto ospace = order_topology(op);

    EffMap f;
    f.dom = du.space;
    f.cod = ospace;
    f.f = [parts](Point p) {
        auto [j, x] = unpair_code(p);
        return pair_code(j, (*parts)[j].embedding.f(x));
    };
    // continuity: an order interval around (j, alpha_x) restricts to a
    // half-open target neighborhood within summand j
    f.v0 = [parts](Point p, Index idx) -> Index {
        auto [j, x] = unpair_code(p);
        const auto& part = (*parts)[j];
        Interval iv = decode_open_interval(idx);
        Bound lo = neg_inf();
        if (iv.lo.kind == 0) {
            auto [lj, la] = unpair_code(iv.lo.v);
            if (lj == j) lo = at(la);
            else if (lj > j) throw precondition_violated("interval excludes the summand");
        } else if (iv.lo.kind > 0) {
            throw precondition_violated("empty interval");
        }
        Index sub = interval_index(lo, at(part.embedding.f(x)));
        return pair_code(j, part.embedding.v0(x, sub));
    };
    // openness: summand half-open ]beta, alpha_x] becomes the order interval
    // ](j,beta), next[ where next is the KB-successor inside the summand or
    // the KB-minimum of the next summand.
    f.v1 = [parts](Point p, Index i) -> Index {
        auto [j, x] = unpair_code(p);
        auto [ij, ii] = unpair_code(i);
        if (ij != j) throw precondition_violated("cross-summand basic set");
        const auto& part = (*parts)[j];
        Index sub = part.embedding.v1(x, ii);
        Interval iv = decode_half_open(sub);
        Bound lo = iv.lo.kind == 0 ? at(pair_code(j, iv.lo.v)) : neg_inf();
        if (iv.lo.kind < 0 && j > 0) {
            // left edge of summand j: bounded by the previous summand's root
            lo = at(pair_code(j - 1, (*parts)[j - 1].node_id({})));
        }
        FinSeq ax = part.node_of(part.embedding.f(x));
        Bound hi = pos_inf();
        if (auto s = detail::kb_successor(*part.tree, ax, 4096)) {
            hi = at(pair_code(j, part.node_id(*s)));
        } else if (j + 1 < static_cast<Code>(parts->size())) {
            const auto& next = (*parts)[j + 1];
            auto mn = detail::kb_min_of_subtree(*next.tree, {}, 4096);
            if (mn) hi = at(pair_code(j + 1, next.node_id(*mn)));
        }
        return interval_index(lo, hi);
    };
    f.kind = MapKind::Homeomorphism;

    WellOrderSum out;
    out.order = op;
    out.order_space = ospace;
    out.from_union = f;
    out.union_space = du.space;
    return out;
}

// ---------------------------------------------------------------------------
// [OP] descending_extractor: greedy frontier walk over an interval cover of
// a claimed well-order with maximum.  Emits a strictly descending sequence
// or halts with a finite subcover.

struct ExtractorResult {
    std::vector<Point> descending;      // frontier points visited
    std::optional<std::vector<long long>> subcover;  // stream positions forming a cover
};

inline ExtractorResult descending_extractor(OrderPtr L,
                                            std::function<std::optional<Interval>(long long)> cover,
                                            long long steps, long long stream_budget = 4096) {
    if (!L->max_elem || !*L->max_elem)
        throw precondition_violated("descending_extractor: order needs a maximum");
    ExtractorResult out;
    Point frontier = **L->max_elem;
    std::vector<long long> used;
    for (long long n = 0; n < steps; ++n) {
        out.descending.push_back(frontier);
        std::optional<long long> pick;
        for (long long s = 0; s < stream_budget; ++s) {
            auto iv = cover(s);
            if (!iv) break;
            if (interval_contains(*L, *iv, frontier)) { pick = s; break; }
        }
        if (!pick) throw stuck_search("descending_extractor: frontier point uncovered");
        used.push_back(*pick);
        Interval iv = *cover(*pick);
        if (iv.lo.kind < 0) {
            out.subcover = used;
            return out;
        }
        frontier = iv.lo.v;  // the largest uncovered point is the left endpoint
    }
    return out;
}

// ---------------------------------------------------------------------------
// [OP] strong_partition_probe: searches for `depth` pairwise-disjoint
// nonempty basic sets covering the enumerated prefix — a witness that the
// space admits arbitrarily large clopen partitions.

inline Verdict strong_partition_probe(SpacePtr space, long long depth) {
    auto pts = space->front(depth);
    if (pts.empty()) return Verdict::unknown(depth, "no points enumerated");
    std::vector<std::pair<Index, unsigned long long>> sets;
    for (Index i = 0; i < depth; ++i) {
        unsigned long long mask = 0;
        for (size_t p = 0; p < pts.size() && p < 64; ++p)
            if (space->basis_member(pts[p], i)) mask |= 1ULL << p;
        if (mask) sets.push_back({i, mask});
    }
    unsigned long long full = pts.size() >= 64 ? ~0ULL : ((1ULL << pts.size()) - 1);
    std::vector<Index> chosen;
    std::function<bool(unsigned long long)> go = [&](unsigned long long covered) -> bool {
        if (covered == full) return static_cast<long long>(chosen.size()) >= depth;
        if (static_cast<long long>(chosen.size()) >= depth) return false;
        int p = 0;
        while ((covered >> p) & 1) ++p;
        for (auto& [idx, mask] : sets) {
            if (!(mask & (1ULL << p)) || (mask & covered)) continue;
            chosen.push_back(idx);
            if (go(covered | mask)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (go(0)) {
        std::string cert = "disjoint cover:";
        for (Index i : chosen) cert += " " + std::to_string(i);
        return Verdict::no(cert, depth);
    }
    return Verdict::unknown(depth, "no length-" + std::to_string(depth) + " disjoint basic cover");
}

}  // namespace cscs
