#pragma once

// Finite-sequence trees with decidable membership and a children oracle in
// one of three flavors (finite list, cofinite tail, budgeted enumeration).
// The Kleene-Brouwer order, T+ domination trees, cut-driven branch
// extraction, and the inverse-approximation tree of an injection all live
// here.

#include "orders.hpp"

namespace cscs {

using FinSeq = std::vector<Code>;

inline Code finseq_code(const FinSeq& s) { return seq_code(s); }
inline FinSeq finseq_decode(Code c) { return seq_decode(c); }

inline bool is_prefix(const FinSeq& a, const FinSeq& b) {
    if (a.size() > b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin());
}

inline FinSeq extend(FinSeq s, Code v) {
    s.push_back(v);
    return s;
}

// [OP] kb_compare: sigma < tau iff tau is a proper prefix of sigma, or at
// the first difference sigma is smaller.
inline Cmp kb_compare(const FinSeq& a, const FinSeq& b) {
    size_t m = std::min(a.size(), b.size());
    for (size_t j = 0; j < m; ++j)
        if (a[j] != b[j]) return cmp_of(a[j], b[j]);
    if (a.size() == b.size()) return Cmp::EQ;
    return a.size() > b.size() ? Cmp::LT : Cmp::GT;
}

// ---------------------------------------------------------------------------
// Children oracles.

struct ChildSpec {
    enum Kind { FiniteList, CofiniteFrom, Enumerated } kind = FiniteList;
    std::vector<Code> list;                                   // FiniteList
    Code from = 0;                                            // CofiniteFrom: every value >= from
    std::function<std::optional<Code>(long long)> stream;     // Enumerated
    Verdict emptiness = Verdict::unknown(0);                  // Enumerated only

    static ChildSpec finite(std::vector<Code> xs) {
        ChildSpec c;
        c.kind = FiniteList;
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        c.list = std::move(xs);
        return c;
    }
    static ChildSpec cofinite(Code from) {
        ChildSpec c;
        c.kind = CofiniteFrom;
        c.from = from;
        return c;
    }
};

struct Tree {
    std::function<bool(const FinSeq&)> member;
    std::function<ChildSpec(const FinSeq&)> children;
    bool wellfounded_promise = false;  // enables KB structural oracles

    bool has_child(const FinSeq& s, Code v) const {
        ChildSpec c = children(s);
        switch (c.kind) {
            case ChildSpec::FiniteList:
                return std::binary_search(c.list.begin(), c.list.end(), v);
            case ChildSpec::CofiniteFrom:
                return v >= c.from;
            case ChildSpec::Enumerated:
                for (long long n = 0;; ++n) {
                    auto x = c.stream(n);
                    if (!x) return false;
                    if (*x == v) return true;
                    if (*x > v && c.kind == ChildSpec::Enumerated) continue;
                }
        }
        return false;
    }

    // Least child value, if any (budgeted for enumerated oracles).
    std::optional<Code> least_child(const FinSeq& s) const {
        ChildSpec c = children(s);
        switch (c.kind) {
            case ChildSpec::FiniteList:
                if (c.list.empty()) return std::nullopt;
                return c.list.front();
            case ChildSpec::CofiniteFrom:
                return c.from;
            case ChildSpec::Enumerated: {
                auto x = c.stream(0);
                if (!x) return std::nullopt;
                Code best = *x;
                for (long long n = 1;; ++n) {
                    auto y = c.stream(n);
                    if (!y) break;
                    best = std::min(best, *y);
                }
                return best;
            }
        }
        return std::nullopt;
    }

    // Least child value strictly greater than v.
    std::optional<Code> next_child_after(const FinSeq& s, Code v) const {
        ChildSpec c = children(s);
        switch (c.kind) {
            case ChildSpec::FiniteList: {
                auto it = std::upper_bound(c.list.begin(), c.list.end(), v);
                if (it == c.list.end()) return std::nullopt;
                return *it;
            }
            case ChildSpec::CofiniteFrom:
                return std::max(c.from, v + 1);
            case ChildSpec::Enumerated: {
                std::optional<Code> best;
                for (long long n = 0;; ++n) {
                    auto y = c.stream(n);
                    if (!y) break;
                    if (*y > v && (!best || *y < *best)) best = *y;
                }
                return best;
            }
        }
        return std::nullopt;
    }
};

using TreePtr = std::shared_ptr<const Tree>;
inline TreePtr make_tree(Tree t) { return std::make_shared<const Tree>(std::move(t)); }

// Explicit finite tree from a node list (prefix closure taken).
inline TreePtr finite_tree(std::vector<FinSeq> nodes) {
    auto all = std::make_shared<std::set<FinSeq>>();
    for (auto& n : nodes) {
        for (size_t k = 0; k <= n.size(); ++k) all->insert(FinSeq(n.begin(), n.begin() + k));
    }
    Tree t;
    t.member = [all](const FinSeq& s) { return all->count(s) > 0; };
    t.children = [all](const FinSeq& s) {
        std::vector<Code> cs;
        for (auto& n : *all)
            if (n.size() == s.size() + 1 && is_prefix(s, n)) cs.push_back(n.back());
        return ChildSpec::finite(std::move(cs));
    };
    t.wellfounded_promise = true;
    return make_tree(std::move(t));
}

// ---------------------------------------------------------------------------
// [OP] kb_order.  The empty sequence is the maximum.  The between oracle is
// derived from KB-successor, which walks the children oracles; it is only
// attached for trees promising well-foundedness (otherwise the leftmost
// descent need not terminate).

namespace detail {

inline std::optional<FinSeq> kb_min_of_subtree(const Tree& t, FinSeq root, long long budget) {
    for (long long step = 0; step < budget; ++step) {
        auto c = t.least_child(root);
        if (!c) return root;
        root.push_back(*c);
    }
    throw search_exhausted("kb_min_of_subtree: leftmost descent exceeded budget");
}

inline std::optional<FinSeq> kb_successor(const Tree& t, const FinSeq& s, long long budget) {
    if (s.empty()) return std::nullopt;  // maximum
    FinSeq parent(s.begin(), s.end() - 1);
    if (auto sib = t.next_child_after(parent, s.back())) {
        auto m = kb_min_of_subtree(t, extend(parent, *sib), budget);
        return m;
    }
    return parent;
}

}  // namespace detail

inline OrderPtr kb_order(TreePtr t, long long walk_budget = 100000) {
    Order o;
    auto tp = t;
    o.member = [tp](Point p) { return p >= 0 && tp->member(finseq_decode(p)); };
    o.enumerate = detail::scan_enumerator(o.member, std::nullopt);
    o.cmp = [](Point a, Point b) { return kb_compare(finseq_decode(a), finseq_decode(b)); };
    o.max_elem = std::optional<Point>(0);  // empty sequence
    if (t->wellfounded_promise) {
        o.successor = [tp, walk_budget](Point p) -> std::optional<Point> {
            auto s = detail::kb_successor(*tp, finseq_decode(p), walk_budget);
            if (!s) return std::nullopt;
            return finseq_code(*s);
        };
        o.between = [tp, walk_budget](Bound a, Bound b) -> std::optional<Point> {
            std::optional<FinSeq> cand;
            if (a.kind < 0) cand = detail::kb_min_of_subtree(*tp, {}, walk_budget);
            else if (a.kind > 0) return std::nullopt;
            else cand = detail::kb_successor(*tp, finseq_decode(a.v), walk_budget);
            if (!cand) return std::nullopt;
            if (b.kind > 0) {
                if (a.kind == 0) return finseq_code(*cand);
                // between(-inf,+inf): any second element
                auto nxt = detail::kb_successor(*tp, *cand, walk_budget);
                if (nxt) return finseq_code(*cand);
                return std::nullopt;
            }
            if (b.kind < 0) return std::nullopt;
            FinSeq hi = finseq_decode(b.v);
            if (a.kind < 0) {
                if (kb_compare(*cand, hi) == Cmp::LT) return finseq_code(*cand);
                return std::nullopt;
            }
            if (kb_compare(*cand, hi) == Cmp::LT) return finseq_code(*cand);
            return std::nullopt;
        };
        o.min_elem = std::nullopt;  // computed lazily below when membership of root known
        if (t->member({})) {
            auto m = detail::kb_min_of_subtree(*t, {}, walk_budget);
            if (m) o.min_elem = std::optional<Point>(finseq_code(*m));
        } else {
            o.min_elem = std::optional<Point>();  // empty tree
            o.max_elem = std::optional<Point>();
        }
        o.predecessor = [tp, o_cmp = o.cmp, walk_budget](Point p) -> std::optional<Point> {
            // predecessor by inverting successor on the finitely many
            // candidates: parent's earlier sibling subtree max or deepest child
            FinSeq s = finseq_decode(p);
            // the KB-predecessor of s is the KB-max of the subtree strictly
            // below s: if s has children, it is the maximum of the last...
            // KB order puts extensions before s, so pred(s) = max extension =
            // the child subtree with the largest root among children, taken as
            // that child itself... the maximum of subtree(c) is c.
            // pred(s) = max{ c : c child of s } as a node (its own subtree's max).
            auto cs = tp->children(s);
            switch (cs.kind) {
                case ChildSpec::FiniteList:
                    if (!cs.list.empty()) return finseq_code(extend(s, cs.list.back()));
                    break;
                case ChildSpec::CofiniteFrom:
                    return std::nullopt;  // infinitely many children: s is a limit from the left
                case ChildSpec::Enumerated: {
                    std::optional<Code> best;
                    for (long long n = 0;; ++n) {
                        auto y = cs.stream(n);
                        if (!y) break;
                        if (!best || *y > *best) best = *y;
                    }
                    if (best) return finseq_code(extend(s, *best));
                    if (!cs.emptiness.is_true()) return std::nullopt;
                    break;
                }
            }
            // leaf: predecessor is the previous sibling's subtree max, walking up
            FinSeq cur = s;
            while (!cur.empty()) {
                FinSeq parent(cur.begin(), cur.end() - 1);
                auto pcs = tp->children(parent);
                std::optional<Code> prev;
                if (pcs.kind == ChildSpec::FiniteList) {
                    for (Code v : pcs.list)
                        if (v < cur.back() && (!prev || v > *prev)) prev = v;
                } else if (pcs.kind == ChildSpec::CofiniteFrom) {
                    if (cur.back() > pcs.from) prev = cur.back() - 1;
                } else {
                    for (long long n = 0;; ++n) {
                        auto y = pcs.stream(n);
                        if (!y) break;
                        if (*y < cur.back() && (!prev || *y > *prev)) prev = *y;
                    }
                }
                if (prev) {
                    // max of that sibling subtree is the sibling node itself? No:
                    // extensions precede, so the subtree max is the node itself.
                    return finseq_code(extend(parent, *prev));
                }
                cur = parent;
            }
            return std::nullopt;  // KB-minimum
        };
    }
    return make_order(std::move(o));
}

// ---------------------------------------------------------------------------
// [OP] branch_from_cut: sigma_{n+1} = sigma_n ^ (least child in B).

inline std::vector<FinSeq> branch_from_cut(const Tree& t, std::function<bool(const FinSeq&)> in_b,
                                           long long steps, long long child_budget = 4096) {
    std::vector<FinSeq> out;
    FinSeq cur;
    if (!t.member(cur) || !in_b(cur))
        throw precondition_violated("branch_from_cut: empty sequence must lie in B");
    out.push_back(cur);
    for (long long n = 0; n < steps; ++n) {
        ChildSpec cs = t.children(cur);
        std::optional<Code> pick;
        if (cs.kind == ChildSpec::FiniteList) {
            for (Code v : cs.list)
                if (in_b(extend(cur, v))) { pick = v; break; }
        } else if (cs.kind == ChildSpec::CofiniteFrom) {
            for (Code v = cs.from; v < cs.from + child_budget; ++v)
                if (in_b(extend(cur, v))) { pick = v; break; }
        } else {
            for (long long i = 0; i < child_budget; ++i) {
                auto v = cs.stream(i);
                if (!v) break;
                if (in_b(extend(cur, *v))) { pick = *v; break; }
            }
        }
        if (!pick)
            throw Error("StuckNode", "no child of node (len " + std::to_string(cur.size()) +
                                         ") lies in B within budget " + std::to_string(child_budget));
        cur = extend(cur, *pick);
        out.push_back(cur);
    }
    return out;
}

// ---------------------------------------------------------------------------
// [OP] t_plus: sequences dominating some equal-length member of T pointwise.

namespace detail {

inline bool tplus_witness(const Tree& t, const FinSeq& tau, const FinSeq& prefix, size_t level) {
    if (level == tau.size()) return true;
    ChildSpec cs = t.children(prefix);
    auto try_child = [&](Code v) {
        return v <= tau[level] && tplus_witness(t, tau, extend(const_cast<FinSeq&>(prefix), v), level + 1);
    };
    if (cs.kind == ChildSpec::FiniteList) {
        for (Code v : cs.list) {
            if (v > tau[level]) break;
            FinSeq next = prefix;
            next.push_back(v);
            if (tplus_witness(t, tau, next, level + 1)) return true;
        }
        return false;
    }
    if (cs.kind == ChildSpec::CofiniteFrom) {
        for (Code v = cs.from; v <= tau[level]; ++v) {
            FinSeq next = prefix;
            next.push_back(v);
            if (tplus_witness(t, tau, next, level + 1)) return true;
        }
        return false;
    }
    for (long long n = 0;; ++n) {
        auto v = cs.stream(n);
        if (!v) return false;
        if (*v > tau[level]) continue;
        FinSeq next = prefix;
        next.push_back(*v);
        if (tplus_witness(t, tau, next, level + 1)) return true;
    }
}

// least m such that some witness path sigma <= tau pointwise extends by a
// child <= m; nullopt when tau has no extensions in T+.
inline std::optional<Code> tplus_least_extension(const Tree& t, const FinSeq& tau,
                                                 const FinSeq& prefix, size_t level) {
    if (level == tau.size()) {
        auto c = t.least_child(prefix);
        return c;
    }
    ChildSpec cs = t.children(prefix);
    std::optional<Code> best;
    auto consider = [&](Code v) {
        if (v > tau[level]) return;
        FinSeq next = prefix;
        next.push_back(v);
        auto m = tplus_least_extension(t, tau, next, level + 1);
        if (m && (!best || *m < *best)) best = m;
    };
    if (cs.kind == ChildSpec::FiniteList) {
        for (Code v : cs.list) consider(v);
    } else if (cs.kind == ChildSpec::CofiniteFrom) {
        for (Code v = cs.from; v <= tau[level]; ++v) consider(v);
    } else {
        for (long long n = 0;; ++n) {
            auto v = cs.stream(n);
            if (!v) break;
            consider(*v);
        }
    }
    return best;
}

}  // namespace detail

inline TreePtr t_plus(TreePtr t) {
    Tree out;
    auto base = t;
    out.member = [base](const FinSeq& tau) { return detail::tplus_witness(*base, tau, {}, 0); };
    out.children = [base](const FinSeq& tau) -> ChildSpec {
        auto m = detail::tplus_least_extension(*base, tau, {}, 0);
        if (!m) return ChildSpec::finite({});
        return ChildSpec::cofinite(*m);
    };
    out.wellfounded_promise = false;
    return make_tree(std::move(out));
}

// [OP] dense_witness_in_tplus: a point of S = {sigma in T+ : sigma >= f
// pointwise} strictly KB-between a and b, distinct from sigma.
inline FinSeq dense_witness_in_tplus(const Tree& tplus_tree, std::function<Code(long long)> branch,
                                     const FinSeq& sigma, const FinSeq& a, const FinSeq& b) {
    if (!(kb_compare(a, sigma) == Cmp::LT && kb_compare(sigma, b) == Cmp::LT))
        throw precondition_violated("dense_witness_in_tplus: sigma not strictly between");
    FinSeq out = sigma;
    if (is_prefix(sigma, a)) {
        out.push_back(a[sigma.size()] + 1);
    } else {
        out.push_back(branch(static_cast<long long>(sigma.size())) + 1);
    }
    if (!tplus_tree.member(out))
        throw precondition_violated("dense_witness_in_tplus: constructed witness not in T+ (bad inputs)");
    return out;
}

// ---------------------------------------------------------------------------
// [OP] tree_from_injection and the omega/omega* classifier.

struct InjectionTree {
    TreePtr tree;
    std::function<bool(const FinSeq&)> omega_star_part;  // case-1 test
    std::function<bool(const FinSeq&)> omega_part;       // case-2 test
};

inline InjectionTree tree_from_injection(const std::vector<Code>& f_prefix) {
    for (size_t i = 0; i < f_prefix.size(); ++i)
        for (size_t j = i + 1; j < f_prefix.size(); ++j)
            if (f_prefix[i] == f_prefix[j]) throw Error("NotInjective", "duplicate value in prefix");
    auto f = std::make_shared<std::vector<Code>>(f_prefix);
    // Quantifiers of the defining formula are bounded by the prefix length,
    // so sequences longer than the prefix carry no information: cut there.
    auto member = [f](const FinSeq& s) -> bool {
        if (s.size() > f->size()) return false;
        for (size_t m = 0; m < s.size(); ++m) {
            for (size_t n = 0; n < std::min(s.size(), f->size()); ++n) {
                bool hits = (*f)[n] == static_cast<Code>(m);
                bool claims = s[m] == static_cast<Code>(n) + 1;
                if (hits != claims) return false;
            }
            if (s[m] > 0) {
                Code n = s[m] - 1;
                if (n >= static_cast<Code>(f->size())) return false;
                if ((*f)[n] != static_cast<Code>(m)) return false;
            }
        }
        return true;
    };
    Tree t;
    t.member = member;
    t.children = [f, member](const FinSeq& s) -> ChildSpec {
        std::vector<Code> ok;
        Code m = static_cast<Code>(s.size());
        // the only candidate values at position m are 0 and n+1 with f(n)=m
        if (member(extend(const_cast<FinSeq&>(s), 0))) {
            FinSeq w = s;
            w.push_back(0);
            if (member(w)) ok.push_back(0);
        }
        for (size_t n = 0; n < f->size(); ++n)
            if ((*f)[n] == m) {
                FinSeq w = s;
                w.push_back(static_cast<Code>(n) + 1);
                if (member(w)) ok.push_back(static_cast<Code>(n) + 1);
            }
        return ChildSpec::finite(std::move(ok));
    };
    t.wellfounded_promise = true;  // finite prefix: the approximation tree is finite

    InjectionTree out;
    out.tree = make_tree(std::move(t));
    out.omega_star_part = [f](const FinSeq& s) {
        for (size_t j = 0; j < s.size(); ++j)
            for (size_t n = 0; n < f->size(); ++n)
                if ((*f)[n] == static_cast<Code>(j) && s[j] != static_cast<Code>(n) + 1) return false;
        return true;
    };
    out.omega_part = [f](const FinSeq& s) {
        for (size_t j = 0; j < s.size(); ++j)
            if (s[j] == 0)
                for (size_t n = 0; n < f->size(); ++n)
                    if ((*f)[n] == static_cast<Code>(j)) return true;
        return false;
    };
    return out;
}

// ---------------------------------------------------------------------------
// [OP] wellfounded_check and bounded TAM moduli.

inline Verdict wellfounded_check(const Tree& t, long long bound) {
    // Exhaustive DFS limited by depth and branching budget.  True only when
    // the reachable tree is finite within the oracle's scope.
    if (!t.member({})) return Verdict::yes("empty tree");
    long long nodes = 0;
    std::function<Verdict(const FinSeq&)> dfs = [&](const FinSeq& s) -> Verdict {
        if (static_cast<long long>(s.size()) > bound)
            return Verdict::unknown(bound, "path longer than bound");
        if (++nodes > bound * bound + 4096) return Verdict::unknown(bound, "node budget exhausted");
        ChildSpec cs = t.children(s);
        if (cs.kind == ChildSpec::CofiniteFrom)
            return Verdict::unknown(bound, "infinitely branching node");
        if (cs.kind == ChildSpec::Enumerated && !cs.emptiness.is_true() && cs.stream(0))
            ;  // fall through and walk the stream
        std::vector<Code> kids;
        if (cs.kind == ChildSpec::FiniteList) kids = cs.list;
        else {
            for (long long n = 0; n < bound * 4; ++n) {
                auto v = cs.stream(n);
                if (!v) break;
                kids.push_back(*v);
            }
        }
        for (Code v : kids) {
            Verdict sub = dfs(extend(const_cast<FinSeq&>(s), v));
            if (!sub.is_true()) return sub;
        }
        return Verdict::yes();
    };
    FinSeq root;
    Verdict v = dfs(root);
    if (v.is_true()) return Verdict::yes("finite reachable tree, " + std::to_string(nodes) + " nodes", bound);
    return v;
}

struct TreeArray {
    std::function<TreePtr(long long row, long long col)> at;  // T_i^j = at(i, j)
};

struct TamResult {
    std::vector<std::optional<long long>> moduli;  // per row j
    Verdict settled;
};

inline TamResult tam_modulus_bounded(const TreeArray& arr, long long rows, long long bound) {
    TamResult out;
    bool all = true;
    for (long long j = 0; j < rows; ++j) {
        std::optional<long long> mod;
        for (long long i = 0; i <= bound && !mod; ++i) {
            bool ok = true;
            for (long long m = i; m <= bound && ok; ++m)
                ok = wellfounded_check(*arr.at(m, j), bound).is_true();
            if (ok) mod = i;
        }
        if (!mod) all = false;
        out.moduli.push_back(mod);
    }
    out.settled = all ? Verdict::yes("", bound) : Verdict::unknown(bound, "some row unsettled");
    return out;
}

}  // namespace cscs
