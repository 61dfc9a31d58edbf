#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "surface_words.hpp"
#include "walled_brauer.hpp"

namespace ym2 {

/**
 * Colored epsilon-walled diagrams. Points are [s] x {+1,-1}, encoded as
 * idx = v for (v,+1) and s+v for (v,-1). An EpsDiagram is a fixed-point-free
 * involution p with eps(v')eta' = -eps(v)eta on every pair.
 *
 * Boundary color codes: +1 = R, -1 = R^{-1}, +2 = W, -2 = W^{-1}; inversion
 * is negation, matching the letter encoding of surface words.
 */
struct ColoredContext {
    int s = 0;
    std::vector<int> eps, a, b;
};

struct EpsDiagram {
    int s = 0;
    std::vector<int> p;  // involution on 2s encoded points

    bool operator==(const EpsDiagram& o) const { return s == o.s && p == o.p; }
    bool operator<(const EpsDiagram& o) const { return p < o.p; }
};

inline int point_v(int s, int idx) { return idx % s; }
inline int point_eta(int s, int idx) { return idx < s ? 1 : -1; }

inline bool eps_valid(const EpsDiagram& d, const std::vector<int>& eps) {
    if (static_cast<int>(d.p.size()) != 2 * d.s) return false;
    for (int i = 0; i < 2 * d.s; ++i) {
        int j = d.p[static_cast<size_t>(i)];
        if (j == i || d.p[static_cast<size_t>(j)] != i) return false;
        int v = point_v(d.s, i), w = point_v(d.s, j);
        if (eps[static_cast<size_t>(w)] * point_eta(d.s, j) !=
            -eps[static_cast<size_t>(v)] * point_eta(d.s, i))
            return false;
    }
    return true;
}

inline int h_count(const EpsDiagram& d) {
    int h = 0;
    for (int v = 0; v < d.s; ++v)
        if (d.p[static_cast<size_t>(v)] < d.s) ++h;
    return h / 2;
}

// identity diagram: (v,-1) <-> (v,+1)
inline EpsDiagram eps_identity(int s) {
    EpsDiagram d{s, std::vector<int>(static_cast<size_t>(2 * s))};
    for (int v = 0; v < s; ++v) {
        d.p[static_cast<size_t>(v)] = s + v;
        d.p[static_cast<size_t>(s + v)] = v;
    }
    return d;
}

/**
 * The word diagram pi_omega = (1 2 ... s)^eps together with its coloring;
 * bsym is the boundary symbol of the word.
 */
inline std::pair<EpsDiagram, ColoredContext> word_diagram(const std::vector<int>& word,
                                                          int bsym) {
    int s = static_cast<int>(word.size());
    ColoredContext ctx{s, {}, {}, {}};
    for (int x : word) {
        ctx.eps.push_back(x > 0 ? 1 : -1);
        ctx.a.push_back(x);
        ctx.b.push_back(bsym);
    }
    EpsDiagram d{s, std::vector<int>(static_cast<size_t>(2 * s))};
    auto encode = [&](int v, int eta) { return eta == 1 ? v : s + v; };
    for (int v = 0; v < s; ++v)
        for (int eta : {1, -1}) {
            // conjugate the cycle (1 2 ... s), seen as the pairing
            // (v,-1) <-> (v+1 mod s, +1), by the sign function
            int ehat = ctx.eps[static_cast<size_t>(v)] * eta;
            int w, zhat;
            if (ehat == -1) {
                w = (v + 1) % s;
                zhat = 1;
            } else {
                w = (v + s - 1) % s;
                zhat = -1;
            }
            d.p[static_cast<size_t>(encode(v, eta))] =
                encode(w, ctx.eps[static_cast<size_t>(w)] * zhat);
        }
    if (!eps_valid(d, ctx.eps)) throw std::logic_error("word_diagram: invalid diagram");
    return {d, ctx};
}

// replace each strand by n+m copies, flipping signs and colorings on the last m
inline std::pair<EpsDiagram, ColoredContext> extend_diagram(const EpsDiagram& d,
                                                            const ColoredContext& ctx, int n,
                                                            int m) {
    int k = n + m, s2 = d.s * k;
    ColoredContext c2{s2, std::vector<int>(static_cast<size_t>(s2)),
                      std::vector<int>(static_cast<size_t>(s2)),
                      std::vector<int>(static_cast<size_t>(s2))};
    for (int q = 0; q < d.s; ++q)
        for (int t = 0; t < k; ++t) {
            int v = q * k + t, flip = (t < n) ? 1 : -1;
            c2.eps[static_cast<size_t>(v)] = flip * ctx.eps[static_cast<size_t>(q)];
            c2.a[static_cast<size_t>(v)] = flip == 1 ? ctx.a[static_cast<size_t>(q)]
                                                     : -ctx.a[static_cast<size_t>(q)];
            c2.b[static_cast<size_t>(v)] = flip == 1 ? ctx.b[static_cast<size_t>(q)]
                                                     : -ctx.b[static_cast<size_t>(q)];
        }
    EpsDiagram d2{s2, std::vector<int>(static_cast<size_t>(2 * s2))};
    auto enc = [](int s, int v, int eta) { return eta == 1 ? v : s + v; };
    for (int q = 0; q < d.s; ++q)
        for (int eta : {1, -1})
            for (int t = 0; t < k; ++t) {
                int img = d.p[static_cast<size_t>(enc(d.s, q, eta))];
                int q2 = point_v(d.s, img), eta2 = point_eta(d.s, img);
                d2.p[static_cast<size_t>(enc(s2, q * k + t, eta))] =
                    enc(s2, q2 * k + t, eta2);
            }
    if (!eps_valid(d2, c2.eps)) throw std::logic_error("extend_diagram: invalid diagram");
    return {d2, c2};
}

inline std::pair<EpsDiagram, ColoredContext> juxtapose(const EpsDiagram& d1,
                                                       const ColoredContext& c1,
                                                       const EpsDiagram& d2,
                                                       const ColoredContext& c2) {
    int s = d1.s + d2.s;
    ColoredContext c{s, c1.eps, c1.a, c1.b};
    c.eps.insert(c.eps.end(), c2.eps.begin(), c2.eps.end());
    c.a.insert(c.a.end(), c2.a.begin(), c2.a.end());
    c.b.insert(c.b.end(), c2.b.begin(), c2.b.end());
    EpsDiagram d{s, std::vector<int>(static_cast<size_t>(2 * s))};
    auto enc = [](int ss, int v, int eta) { return eta == 1 ? v : ss + v; };
    for (int v = 0; v < d1.s; ++v)
        for (int eta : {1, -1}) {
            int img = d1.p[static_cast<size_t>(enc(d1.s, v, eta))];
            d.p[static_cast<size_t>(enc(s, v, eta))] =
                enc(s, point_v(d1.s, img), point_eta(d1.s, img));
        }
    for (int v = 0; v < d2.s; ++v)
        for (int eta : {1, -1}) {
            int img = d2.p[static_cast<size_t>(enc(d2.s, v, eta))];
            d.p[static_cast<size_t>(enc(s, d1.s + v, eta))] =
                enc(s, d1.s + point_v(d2.s, img), point_eta(d2.s, img));
        }
    return {d, c};
}

/**
 * The second-moment diagram pi^{n,m}_{r,omega} = pi_r^{n,m} x pi_omega x
 * pi_{omega^{-1}} for the genus-g surface relator, with its coloring;
 * s = 4g(n+m) + 2|omega|.
 */
inline std::pair<EpsDiagram, ColoredContext> build_second_moment_diagram(
    int g, const SurfaceWord& omega, int n, int m) {
    auto [dr, cr] = word_diagram(relator(g).letters, 1);
    auto [drx, crx] = extend_diagram(dr, cr, n, m);
    auto [dw, cw] = word_diagram(omega.letters, 2);
    auto [dwi, cwi] = word_diagram(inverse_word(omega).letters, -2);
    auto [d1, c1] = juxtapose(drx, crx, dw, cw);
    return juxtapose(d1, c1, dwi, cwi);
}

// compatibility with the arc-boundary coloring
inline bool compatible(const EpsDiagram& d, const ColoredContext& ctx) {
    if (!eps_valid(d, ctx.eps)) return false;
    for (int i = 0; i < 2 * d.s; ++i) {
        int j = d.p[static_cast<size_t>(i)];
        int v = point_v(d.s, i), w = point_v(d.s, j);
        bool vertical = point_eta(d.s, i) != point_eta(d.s, j);
        int sign = vertical ? 1 : -1;
        if (ctx.a[static_cast<size_t>(w)] != sign * ctx.a[static_cast<size_t>(v)])
            return false;
        if (ctx.b[static_cast<size_t>(w)] != sign * ctx.b[static_cast<size_t>(v)])
            return false;
    }
    return true;
}

/**
 * Horizontal diagram pi_{alpha,beta}: alpha, beta map eps^{-1}(-1) to
 * eps^{-1}(+1); top pairs follow alpha, bottom pairs follow beta. Stored as
 * full-length vectors with -1 at positive positions.
 */
inline EpsDiagram horizontal_diagram(const std::vector<int>& alpha,
                                     const std::vector<int>& beta,
                                     const ColoredContext& ctx) {
    int s = ctx.s;
    EpsDiagram d{s, std::vector<int>(static_cast<size_t>(2 * s), -1)};
    for (int v = 0; v < s; ++v) {
        if (ctx.eps[static_cast<size_t>(v)] != -1) continue;
        int a = alpha[static_cast<size_t>(v)], b = beta[static_cast<size_t>(v)];
        d.p[static_cast<size_t>(v)] = a;
        d.p[static_cast<size_t>(a)] = v;
        d.p[static_cast<size_t>(s + v)] = s + b;
        d.p[static_cast<size_t>(s + b)] = s + v;
    }
    if (!eps_valid(d, ctx.eps)) throw std::domain_error("horizontal_diagram: invalid");
    return d;
}

/**
 * All admissible matchings alpha in S_{a,b}: a(alpha(v)) = a(v)^{-1} and no
 * R point matched to an R^{-1} point.
 */
inline std::vector<std::vector<int>> enumerate_admissible(const ColoredContext& ctx) {
    std::vector<int> negs, pos_taken(static_cast<size_t>(ctx.s), 0);
    for (int v = 0; v < ctx.s; ++v)
        if (ctx.eps[static_cast<size_t>(v)] == -1) negs.push_back(v);
    std::vector<std::vector<int>> out;
    std::vector<int> alpha(static_cast<size_t>(ctx.s), -1);
    auto rec = [&](auto&& self, size_t k) -> void {
        if (k == negs.size()) {
            out.push_back(alpha);
            return;
        }
        int v = negs[k];
        for (int w = 0; w < ctx.s; ++w) {
            if (ctx.eps[static_cast<size_t>(w)] != 1 || pos_taken[static_cast<size_t>(w)])
                continue;
            if (ctx.a[static_cast<size_t>(w)] != -ctx.a[static_cast<size_t>(v)]) continue;
            int bv = ctx.b[static_cast<size_t>(v)], bw = ctx.b[static_cast<size_t>(w)];
            if (std::abs(bv) == 1 && bw == -bv) continue;
            if (std::abs(bw) == 1 && bv == -bw) continue;
            alpha[static_cast<size_t>(v)] = w;
            pos_taken[static_cast<size_t>(w)] = 1;
            self(self, k + 1);
            pos_taken[static_cast<size_t>(w)] = 0;
        }
        alpha[static_cast<size_t>(v)] = -1;
    };
    rec(rec, 0);
    return out;
}

struct BrauerMap {
    ColoredContext ctx;
    EpsDiagram tau_u, pi, tau_b, phi;
    std::vector<int> alpha, beta;  // phi = pi_{alpha,beta}

    int h() const { return h_count(tau_u) + h_count(tau_b); }
};

namespace detail {

// node encoding of the five-level complex with (i,2) ~ (i,-2):
// level id 0 = +-2, 1 = +1, 2 = 0, 3 = -1
inline int cw_node(int s, int level, int v) { return level * s + v; }

struct CWEdge {
    int u, v;
    int type;    // 0 tau_u, 1 pi, 2 tau_b, 3 phi, 4 iota
    int arc;     // for phi edges: the negative-point id of the arc
    int copy;    // for phi edges: 0 bottom, 1 top
};

inline std::vector<CWEdge> cw_edges(const BrauerMap& mp, bool with_phi, bool with_iota,
                                    bool with_tau_pi) {
    int s = mp.ctx.s;
    std::vector<CWEdge> out;
    auto add_inv = [&](const EpsDiagram& d, int lv_top, int lv_bot, int type) {
        for (int i = 0; i < 2 * s; ++i) {
            int j = d.p[static_cast<size_t>(i)];
            if (j < i) continue;
            int lu = point_eta(s, i) == 1 ? lv_top : lv_bot;
            int lw = point_eta(s, j) == 1 ? lv_top : lv_bot;
            out.push_back({cw_node(s, lu, point_v(s, i)), cw_node(s, lw, point_v(s, j)),
                           type, -1, -1});
        }
    };
    if (with_tau_pi) {
        add_inv(mp.tau_u, 0, 1, 0);
        add_inv(mp.pi, 1, 2, 1);
        add_inv(mp.tau_b, 2, 3, 2);
    }
    if (with_phi) {
        // phi top pairs ((v,1),(w,1)) sit at level -1 (id 3), bottom pairs at
        // the merged level +-2 (id 0)
        for (int i = 0; i < 2 * s; ++i) {
            int j = mp.phi.p[static_cast<size_t>(i)];
            if (j < i) continue;
            bool top = point_eta(s, i) == 1;
            int lv = top ? 3 : 0;
            int v = point_v(s, i), w = point_v(s, j);
            int arc = mp.ctx.eps[static_cast<size_t>(v)] == -1 ? v : w;
            out.push_back({cw_node(s, lv, v), cw_node(s, lv, w), 3, arc, top ? 1 : 0});
        }
    }
    if (with_iota)
        for (int v = 0; v < s; ++v)
            out.push_back({cw_node(s, 0, v), cw_node(s, 3, v), 4, -1, -1});
    return out;
}

inline int count_cycles(int nodes, const std::vector<CWEdge>& edges) {
    std::vector<int> parent(static_cast<size_t>(nodes));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<char> used(static_cast<size_t>(nodes), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)];
        return x;
    };
    for (const auto& e : edges) {
        used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 1;
        parent[static_cast<size_t>(find(e.u))] = find(e.v);
    }
    std::set<int> roots;
    for (int i = 0; i < nodes; ++i)
        if (used[static_cast<size_t>(i)]) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

}  // namespace detail

inline int count_c1(const BrauerMap& mp) {
    return detail::count_cycles(4 * mp.ctx.s, detail::cw_edges(mp, true, false, true));
}

inline int count_c2(const BrauerMap& mp) {
    return detail::count_cycles(4 * mp.ctx.s, detail::cw_edges(mp, true, true, false));
}

inline int count_boundary(const BrauerMap& mp) {
    return detail::count_cycles(4 * mp.ctx.s, detail::cw_edges(mp, false, true, true));
}

inline int alpha_beta_cycles(const BrauerMap& mp) {
    // cycles of alpha^{-1} beta on the negative points
    std::vector<char> seen(static_cast<size_t>(mp.ctx.s), 0);
    std::vector<int> alpha_inv(static_cast<size_t>(mp.ctx.s), -1);
    for (int v = 0; v < mp.ctx.s; ++v)
        if (mp.alpha[static_cast<size_t>(v)] >= 0)
            alpha_inv[static_cast<size_t>(mp.alpha[static_cast<size_t>(v)])] = v;
    int cycles = 0;
    for (int v = 0; v < mp.ctx.s; ++v) {
        if (mp.ctx.eps[static_cast<size_t>(v)] != -1 || seen[static_cast<size_t>(v)])
            continue;
        ++cycles;
        int w = v;
        do {
            seen[static_cast<size_t>(w)] = 1;
            w = alpha_inv[static_cast<size_t>(mp.beta[static_cast<size_t>(w)])];
        } while (w != v);
    }
    return cycles;
}

// chi(Sigma_m) = -s + #C_I + #(alpha^{-1} beta)
inline int euler_characteristic(const BrauerMap& mp) {
    return -mp.ctx.s + count_c1(mp) + alpha_beta_cycles(mp);
}

// independent CW count V - E + F on the explicit complex
inline int cw_euler_characteristic(const BrauerMap& mp) {
    int s = mp.ctx.s;
    auto all = detail::cw_edges(mp, true, true, true);
    std::vector<int> parent(static_cast<size_t>(4 * s));
    std::iota(parent.begin(), parent.end(), 0);
    int V = 4 * s, E = static_cast<int>(all.size());
    int F = count_c1(mp) + count_c2(mp);
    return V - E + F;
}

// product with loop count: a stacked on top of b (a's bottom row glued to
// b's top row; middle point v is a's (v,-1) = b's (v,+1))
inline std::pair<int, EpsDiagram> eps_product(const EpsDiagram& a, const EpsDiagram& b) {
    int s = a.s;
    if (b.s != s) throw std::domain_error("eps_product: size mismatch");
    EpsDiagram out{s, std::vector<int>(static_cast<size_t>(2 * s))};
    std::vector<char> mid_seen(static_cast<size_t>(s), 0);
    // outer points: {true, v} = a-top (v,+1); {false, v} = b-bottom (v,-1)
    auto follow = [&](bool from_top, int v) -> std::pair<bool, int> {
        bool in_a = from_top;
        int idx = from_top ? v : s + v;
        while (true) {
            const EpsDiagram& d = in_a ? a : b;
            int img = d.p[static_cast<size_t>(idx)];
            int w = point_v(s, img);
            bool img_top = point_eta(s, img) == 1;
            if (in_a && img_top) return {true, w};
            if (!in_a && !img_top) return {false, w};
            mid_seen[static_cast<size_t>(w)] = 1;
            if (in_a) {
                in_a = false;
                idx = w;  // a-bottom w = b-top w
            } else {
                in_a = true;
                idx = s + w;  // b-top w = a-bottom w
            }
        }
    };
    for (int v = 0; v < s; ++v) {
        auto [t1, w1] = follow(true, v);
        out.p[static_cast<size_t>(v)] = t1 ? w1 : s + w1;
        auto [t2, w2] = follow(false, v);
        out.p[static_cast<size_t>(s + v)] = t2 ? w2 : s + w2;
    }
    // unreached middle points sit on closed loops alternating b- and a-edges
    int loops = 0;
    std::vector<char> vis(static_cast<size_t>(s), 0);
    for (int v = 0; v < s; ++v) {
        if (mid_seen[static_cast<size_t>(v)] || vis[static_cast<size_t>(v)]) continue;
        ++loops;
        int cur = v;
        bool via_b = true;
        do {
            vis[static_cast<size_t>(cur)] = 1;
            const EpsDiagram& d = via_b ? b : a;
            int idx = via_b ? cur : s + cur;
            cur = point_v(s, d.p[static_cast<size_t>(idx)]);
            via_b = !via_b;
        } while (cur != v || !via_b);
    }
    return {loops, out};
}

inline int eps_cycle_count(const EpsDiagram& d) {
    std::vector<detail::CWEdge> edges;
    for (int i = 0; i < 2 * d.s; ++i) {
        int j = d.p[static_cast<size_t>(i)];
        if (j >= i) edges.push_back({i, j, 0, -1, -1});
    }
    for (int v = 0; v < d.s; ++v) edges.push_back({v, d.s + v, 4, -1, -1});
    return detail::count_cycles(2 * d.s, edges);
}

// trace exponent of tau_u pi tau_b phi computed by sequential diagram products
inline int trace_exponent(const BrauerMap& mp) {
    auto [l1, d1] = eps_product(mp.tau_u, mp.pi);
    auto [l2, d2] = eps_product(d1, mp.tau_b);
    auto [l3, d3] = eps_product(d2, mp.phi);
    return l1 + l2 + l3 + eps_cycle_count(d3);
}

/**
 * Reduce tau_u, tau_b to permutation diagrams by pairing off horizontal
 * strands within a cycle; each step changes chi by exactly +-1, so the total
 * drift is at most h(m).
 */
inline BrauerMap reduce_tau(const BrauerMap& mp0) {
    BrauerMap mp = mp0;
    for (EpsDiagram* taup : {&mp.tau_u, &mp.tau_b}) {
        while (h_count(*taup) > 0) {
            EpsDiagram& tau = *taup;
            int s = tau.s;
            // cycles of tau under the trace closure
            std::vector<int> comp(static_cast<size_t>(2 * s), -1);
            int nc = 0;
            for (int i = 0; i < 2 * s; ++i) {
                if (comp[static_cast<size_t>(i)] >= 0) continue;
                int c = nc++;
                int w = i;
                while (comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = c;
                    int j = tau.p[static_cast<size_t>(w)];
                    comp[static_cast<size_t>(j)] = c;
                    w = j < s ? j + s : j - s;  // vertical closure edge
                }
            }
            int chi_before = euler_characteristic(mp);
            bool done = false;
            for (int bp = 0; bp < 2 * s && !done; ++bp) {
                if (bp < s || tau.p[static_cast<size_t>(bp)] < s) continue;  // bottom horiz
                int bq = tau.p[static_cast<size_t>(bp)];
                for (int tp = 0; tp < s && !done; ++tp) {
                    int tq = tau.p[static_cast<size_t>(tp)];
                    if (tq >= s || tq < tp) continue;  // top horizontal pair (tp, tq)
                    if (comp[static_cast<size_t>(tp)] != comp[static_cast<size_t>(bp)])
                        continue;
                    for (int orient : {0, 1}) {
                        int u = orient ? tq : tp, w = orient ? tp : tq;
                        // try pairing (bp,-1)-(u,+1) and (bq,-1)-(w,+1)
                        int vb = bp - s, vbq = bq - s;
                        if (mp.ctx.a[static_cast<size_t>(u)] !=
                                mp.ctx.a[static_cast<size_t>(vb)] ||
                            mp.ctx.b[static_cast<size_t>(u)] !=
                                mp.ctx.b[static_cast<size_t>(vb)])
                            continue;
                        if (mp.ctx.a[static_cast<size_t>(w)] !=
                                mp.ctx.a[static_cast<size_t>(vbq)] ||
                            mp.ctx.b[static_cast<size_t>(w)] !=
                                mp.ctx.b[static_cast<size_t>(vbq)])
                            continue;
                        EpsDiagram t2 = tau;
                        t2.p[static_cast<size_t>(bp)] = u;
                        t2.p[static_cast<size_t>(u)] = bp;
                        t2.p[static_cast<size_t>(bq)] = w;
                        t2.p[static_cast<size_t>(w)] = bq;
                        if (!compatible(t2, mp.ctx)) continue;
                        tau = t2;
                        done = true;
                        break;
                    }
                }
            }
            if (!done) throw std::logic_error("reduce_tau: no compatible uncrossing found");
            int d = euler_characteristic(mp) - chi_before;
            if (d != 1 && d != -1)
                throw std::logic_error("reduce_tau: step changed chi by more than one");
        }
    }
    return mp;
}

/**
 * Reduce phi to the quadrangle pi_{beta,beta}; each elementary step merges
 * alpha toward beta, increasing #phi by one and chi by 0 or 2.
 */
inline BrauerMap reduce_phi(const BrauerMap& mp0) {
    BrauerMap mp = mp0;
    while (mp.alpha != mp.beta) {
        int chi_before = euler_characteristic(mp);
        int cyc_before = alpha_beta_cycles(mp);
        int b = -1;
        for (int v = 0; v < mp.ctx.s; ++v)
            if (mp.ctx.eps[static_cast<size_t>(v)] == -1 &&
                mp.alpha[static_cast<size_t>(v)] != mp.beta[static_cast<size_t>(v)]) {
                b = v;
                break;
            }
        int a = mp.alpha[static_cast<size_t>(b)], sa = mp.beta[static_cast<size_t>(b)];
        // alpha' = (a sa) alpha
        for (int v = 0; v < mp.ctx.s; ++v) {
            if (mp.alpha[static_cast<size_t>(v)] == a)
                mp.alpha[static_cast<size_t>(v)] = sa;
            else if (mp.alpha[static_cast<size_t>(v)] == sa)
                mp.alpha[static_cast<size_t>(v)] = a;
        }
        mp.phi = horizontal_diagram(mp.alpha, mp.beta, mp.ctx);
        if (alpha_beta_cycles(mp) != cyc_before + 1)
            throw std::logic_error("reduce_phi: cycle count did not increase");
        int d = euler_characteristic(mp) - chi_before;
        if (d != 0 && d != 2) throw std::logic_error("reduce_phi: chi decreased");
    }
    return mp;
}

struct Piece {
    int wsign = 0, rsign = 0;  // W^{wsign} R^{rsign} type
    int chi = 0;               // 1 disc-with-arcs, 0 annulus
    int e = 0, he = 0;
    std::vector<int> word;  // omega_P letters
};

struct PiecesReport {
    std::vector<Piece> pieces;
    int n_rr = 0, n_wr = 0, n_ww = 0;
    int he_prime = 0;
    int chi_sigma = 0, chi_star2 = 0;            // chi and 2*chi(Sigma^*)
    int chi_minus2 = 0, chi_plus2 = 0;           // 2*chi_-, 2*chi_+
    std::vector<std::pair<int, int>> joints;     // (d_star, d_wr)
    bool ok = true;
    std::vector<std::string> failures;
};

/**
 * Pieces decomposition of a reduced quadrangular admissible Brauer map, with
 * every double-counting identity of the Euler-bound proof checked explicitly.
 */
inline PiecesReport pieces_decomposition(const BrauerMap& mp, int g, int n, int m) {
    PiecesReport rep;
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.failures.push_back(s);
    };
    int s = mp.ctx.s;
    if (mp.alpha != mp.beta) throw std::domain_error("pieces: phi must be a quadrangle");
    if (mp.h() != 0) throw std::domain_error("pieces: tau must be permutations");

    // arc types from the boundary colors of the two endpoints
    auto btype = [&](int v) { return mp.ctx.b[static_cast<size_t>(v)]; };
    std::map<int, std::pair<int, int>> arcs;  // negative point -> (b(v), b(alpha v))
    for (int v = 0; v < s; ++v)
        if (mp.ctx.eps[static_cast<size_t>(v)] == -1)
            arcs[v] = {btype(v), btype(mp.alpha[static_cast<size_t>(v)])};
    auto arc_kind = [&](int v) {
        auto [x, y] = arcs.at(v);
        bool wx = std::abs(x) == 2, wy = std::abs(y) == 2;
        if (wx && wy) return 2;  // WW*
        if (wx || wy) return 1;  // WR*
        return 0;                // RR or R^{-1}R^{-1}
    };
    for (auto& [v, t] : arcs) {
        int k = arc_kind(v);
        if (k == 0 && t.first != t.second) fail("RR^{-1} arc present");
        rep.n_rr += k == 0;
        rep.n_wr += k == 1;
        rep.n_ww += k == 2;
    }
    if (4 * g * (n + m) != 2 * rep.n_rr + rep.n_wr)
        fail("arc endpoint count 4g(n+m) = 2N_RR* + N_WR*");

    // boundary components and their colors, multiplicities, position orders
    auto bedges = detail::cw_edges(mp, false, true, true);
    std::map<int, std::vector<std::pair<int, int>>> adj;  // node -> (other, edge idx)
    for (size_t i = 0; i < bedges.size(); ++i) {
        adj[bedges[i].u].push_back({bedges[i].v, static_cast<int>(i)});
        adj[bedges[i].v].push_back({bedges[i].u, static_cast<int>(i)});
    }
    std::vector<int> comp_of_pos(static_cast<size_t>(s), -1);
    std::vector<std::vector<int>> comp_positions;  // cyclic order of iota midpoints
    std::vector<int> comp_color;
    {
        std::set<int> vis_edge;
        for (size_t e0 = 0; e0 < bedges.size(); ++e0) {
            if (vis_edge.count(static_cast<int>(e0))) continue;
            int cid = static_cast<int>(comp_positions.size());
            comp_positions.push_back({});
            int node = bedges[e0].u, eid = static_cast<int>(e0);
            while (!vis_edge.count(eid)) {
                vis_edge.insert(eid);
                const auto& e = bedges[static_cast<size_t>(eid)];
                if (e.type == 4) {  // iota: record its position
                    comp_positions[static_cast<size_t>(cid)].push_back(e.u % s);
                    comp_of_pos[static_cast<size_t>(e.u % s)] = cid;
                }
                int next = (e.u == node) ? e.v : e.u;
                // continue through the other edge at `next`
                const auto& nb = adj[next];
                int eid2 = (nb[0].second == eid) ? nb[1].second : nb[0].second;
                node = next;
                eid = eid2;
            }
            comp_color.push_back(mp.ctx.b[static_cast<size_t>(
                comp_positions[static_cast<size_t>(cid)][0])]);
        }
    }
    // multiplicities: n R-boundaries, m R^{-1}, one W, one W^{-1} (counted
    // with multiplicity p = #positions / word length); each boundary spells a
    // power of its word, fixing the traversal orientation
    std::vector<int> omega_letters;
    {
        int wlen = (mp.ctx.s - 4 * g * (n + m)) / 2;
        for (int t = 0; t < wlen; ++t)
            omega_letters.push_back(mp.ctx.a[static_cast<size_t>(4 * g * (n + m) + t)]);
        int cnt_r = 0, cnt_rinv = 0, cnt_w = 0, cnt_winv = 0;
        for (size_t c = 0; c < comp_positions.size(); ++c) {
            int color = comp_color[c], len = static_cast<int>(comp_positions[c].size());
            std::vector<int> base;
            if (color == 1)
                base = relator(g).letters;
            else if (color == -1)
                base = inverse_word(relator(g).letters);
            else if (color == 2)
                base = omega_letters;
            else
                base = inverse_word(omega_letters);
            int word_len = static_cast<int>(base.size());
            if (len % word_len != 0) {
                fail("boundary length not a multiple of word length");
                continue;
            }
            int p = len / word_len;
            std::vector<int> host;
            for (int t = 0; t < p; ++t) host.insert(host.end(), base.begin(), base.end());
            auto spell = [&](const std::vector<int>& pos) {
                std::vector<int> w;
                for (int q : pos) w.push_back(mp.ctx.a[static_cast<size_t>(q)]);
                return w;
            };
            if (!cyclic_subword(spell(comp_positions[c]), host)) {
                std::reverse(comp_positions[c].begin(), comp_positions[c].end());
                if (!cyclic_subword(spell(comp_positions[c]), host))
                    fail("boundary does not spell a power of its word");
            }
            if (color == 1) cnt_r += p;
            if (color == -1) cnt_rinv += p;
            if (color == 2) cnt_w += p;
            if (color == -2) cnt_winv += p;
        }
        if (cnt_r != n || cnt_rinv != m || cnt_w != 1 || cnt_winv != 1)
            fail("boundary multiplicities are not (n, m, 1, 1)");
    }

    // 2-cells: traverse C_I circles recording arc crossings and stretches
    struct Cell {
        std::vector<std::pair<int, int>> crossings;  // (arc, copy)
        std::vector<int> stretch_color;              // b-color of stretch after crossing k
        std::vector<std::pair<int, int>> stretch_ends;  // positions bounding the stretch
    };
    std::vector<Cell> cells;
    {
        auto cedges = detail::cw_edges(mp, true, false, true);
        // drop iota edges: C_I uses tau, pi, phi only
        std::vector<detail::CWEdge> ce;
        for (const auto& e : cedges)
            if (e.type != 4) ce.push_back(e);
        std::map<int, std::vector<std::pair<int, int>>> cadj;
        for (size_t i = 0; i < ce.size(); ++i) {
            cadj[ce[i].u].push_back({ce[i].v, static_cast<int>(i)});
            cadj[ce[i].v].push_back({ce[i].u, static_cast<int>(i)});
        }
        std::set<int> vis;
        for (size_t e0 = 0; e0 < ce.size(); ++e0) {
            if (ce[e0].type != 3 || vis.count(static_cast<int>(e0))) continue;
            Cell cell;
            int node = ce[e0].u, eid = static_cast<int>(e0);
            int pending_entry = -1;
            std::vector<int> first_stretch_nodes;
            while (!vis.count(eid)) {
                vis.insert(eid);
                const auto& e = ce[static_cast<size_t>(eid)];
                int next = (e.u == node) ? e.v : e.u;
                if (e.type == 3) {
                    cell.crossings.push_back({e.arc, e.copy});
                    pending_entry = next % s;  // position where the stretch starts
                    cell.stretch_color.push_back(0);
                    cell.stretch_ends.push_back({pending_entry, -1});
                } else if (!cell.crossings.empty()) {
                    size_t k = cell.crossings.size() - 1;
                    cell.stretch_color[k] = mp.ctx.b[static_cast<size_t>(e.u % s)];
                    cell.stretch_ends[k].second = next % s;
                }
                const auto& nb = cadj[next];
                int eid2 = (nb[0].second == eid) ? nb[1].second : nb[0].second;
                node = next;
                eid = eid2;
            }
            cells.push_back(cell);
        }
    }
    // every cell alternates crossings and nonempty stretches
    for (const auto& c : cells) {
        if (c.crossings.empty()) fail("cell without arc crossing");
        for (int col : c.stretch_color)
            if (col == 0) fail("empty stretch between crossings");
    }

    // classify cells: pre-piece = exactly one W-stretch
    int ncells = static_cast<int>(cells.size());
    std::vector<int> w_stretches(static_cast<size_t>(ncells), 0);
    std::vector<int> d_star(static_cast<size_t>(ncells), 0),
        d_wr(static_cast<size_t>(ncells), 0), d_rr(static_cast<size_t>(ncells), 0);
    for (int ci = 0; ci < ncells; ++ci) {
        for (int col : cells[static_cast<size_t>(ci)].stretch_color)
            if (std::abs(col) == 2) ++w_stretches[static_cast<size_t>(ci)];
        for (auto [arc, copy] : cells[static_cast<size_t>(ci)].crossings) {
            int k = arc_kind(arc);
            if (k != 0) ++d_star[static_cast<size_t>(ci)];
            if (k == 1) ++d_wr[static_cast<size_t>(ci)];
            if (k == 0) ++d_rr[static_cast<size_t>(ci)];
        }
    }
    std::vector<char> is_prepiece(static_cast<size_t>(ncells), 0);
    for (int ci = 0; ci < ncells; ++ci) {
        bool pp = w_stretches[static_cast<size_t>(ci)] == 1;
        is_prepiece[static_cast<size_t>(ci)] = pp;
        if (pp != (d_star[static_cast<size_t>(ci)] == 2 &&
                   d_wr[static_cast<size_t>(ci)] == 2))
            fail("pre-piece iff d_WR* = d* = 2");
        if (pp) {
            // all other stretches on a single R^{eps'} color
            int wcol = 0, rcol = 0;
            for (int col : cells[static_cast<size_t>(ci)].stretch_color) {
                if (std::abs(col) == 2)
                    wcol = col;
                else if (rcol == 0)
                    rcol = col;
                else if (rcol != col)
                    fail("pre-piece with mixed R stretch colors");
            }
            (void)wcol;
        }
    }

    // pieces: glue pre-pieces through shared WR*-arc copies
    std::map<std::pair<int, int>, int> copy_owner;  // (arc, copy) -> cell
    for (int ci = 0; ci < ncells; ++ci)
        for (auto cr : cells[static_cast<size_t>(ci)].crossings) {
            if (copy_owner.count(cr)) fail("arc copy traversed twice");
            copy_owner[cr] = ci;
        }
    // union-find on items: cells (0..ncells-1) and WR* arcs (ncells + idx)
    std::vector<int> wr_arcs;
    std::map<int, int> wr_index;
    for (auto& [v, t] : arcs)
        if (arc_kind(v) == 1) {
            wr_index[v] = static_cast<int>(wr_arcs.size());
            wr_arcs.push_back(v);
        }
    int items = ncells + static_cast<int>(wr_arcs.size());
    std::vector<int> uf(static_cast<size_t>(items));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[static_cast<size_t>(x)] != x) x = uf[static_cast<size_t>(x)];
        return x;
    };
    for (int ai = 0; ai < static_cast<int>(wr_arcs.size()); ++ai)
        for (int copy : {0, 1}) {
            auto it = copy_owner.find({wr_arcs[static_cast<size_t>(ai)], copy});
            if (it == copy_owner.end()) continue;
            if (is_prepiece[static_cast<size_t>(it->second)])
                uf[static_cast<size_t>(find(it->second))] = find(ncells + ai);
        }
    std::map<int, std::vector<int>> piece_cells, piece_arcs;
    for (int ci = 0; ci < ncells; ++ci)
        if (is_prepiece[static_cast<size_t>(ci)]) piece_cells[find(ci)].push_back(ci);
    for (int ai = 0; ai < static_cast<int>(wr_arcs.size()); ++ai)
        piece_arcs[find(ncells + ai)].push_back(wr_arcs[static_cast<size_t>(ai)]);

    std::set<int> roots;
    for (auto& [r, v] : piece_cells) roots.insert(r);
    for (auto& [r, v] : piece_arcs) roots.insert(r);
    int sum_he = 0, sum_2chi = 0;
    for (int r : roots) {
        Piece pc;
        auto& pcs = piece_cells[r];
        auto& pas = piece_arcs[r];
        int na = static_cast<int>(pas.size()), nc = static_cast<int>(pcs.size());
        if (na == nc)
            pc.chi = 0;
        else if (na == nc + 1)
            pc.chi = 1;
        else
            fail("piece is neither a chain nor a full annulus");
        pc.e = nc + pc.chi;
        for (int ci : pcs) pc.he += d_rr[static_cast<size_t>(ci)];
        // type from any member arc
        auto [x, y] = arcs.at(pas[0]);
        pc.wsign = std::abs(x) == 2 ? x / 2 : y / 2;
        pc.rsign = std::abs(x) == 2 ? (std::abs(y) == 1 ? y : 0)
                                    : (std::abs(x) == 1 ? x : 0);
        // omega_P: letters at the W-endpoint positions of member arcs, in
        // boundary order along the W-circle
        int wcomp = -1;
        std::vector<int> wpos;
        for (int v : pas) {
            auto [bx, by] = arcs.at(v);
            int wp = std::abs(bx) == 2 ? v : mp.alpha[static_cast<size_t>(v)];
            wpos.push_back(wp);
            wcomp = comp_of_pos[static_cast<size_t>(wp)];
        }
        const auto& order = comp_positions[static_cast<size_t>(wcomp)];
        std::vector<int> sel;
        for (int p : order)
            if (std::find(wpos.begin(), wpos.end(), p) != wpos.end()) sel.push_back(p);
        if (static_cast<int>(sel.size()) != static_cast<int>(wpos.size()))
            fail("piece arcs not all on one W-boundary");
        // rotate so that the selected positions are contiguous when open
        if (pc.chi == 1 && sel.size() > 1) {
            // find rotation of `order` making the run contiguous
            size_t L = order.size();
            bool contiguous = false;
            for (size_t st = 0; st < L && !contiguous; ++st) {
                bool match = true;
                for (size_t t = 0; t < sel.size() && match; ++t)
                    if (std::find(wpos.begin(), wpos.end(),
                                  order[(st + t) % L]) == wpos.end())
                        match = false;
                if (match) {
                    sel.clear();
                    for (size_t t = 0; t < wpos.size(); ++t)
                        sel.push_back(order[(st + t) % L]);
                    contiguous = true;
                }
            }
            if (!contiguous) fail("open piece positions not contiguous on the W-circle");
        }
        for (int p : sel) pc.word.push_back(mp.ctx.a[static_cast<size_t>(p)]);
        if (static_cast<int>(pc.word.size()) != pc.e) fail("e(P) != |omega_P|");
        std::vector<int> whost = pc.wsign == 1 ? omega_letters : inverse_word(omega_letters);
        if (!cyclic_subword(pc.word, whost)) fail("omega_P not a cyclic subword of omega");
        if (pc.e > (2 * g - 1) * pc.he + 2 * g * pc.chi)
            fail("Birman-Series piece bound violated");
        sum_he += pc.he;
        sum_2chi += 2 * pc.chi;
        rep.pieces.push_back(pc);
    }
    rep.he_prime = 2 * rep.n_rr - sum_he;
    if (rep.he_prime < 0) fail("he' negative");

    int sum_e = 0;
    for (const auto& pc : rep.pieces) sum_e += pc.e;
    if (sum_e != rep.n_wr) fail("sum of e(P) != N_WR*");

    // joint discs and the chi accounting
    int joint_dwr_sum = 0;
    for (int ci = 0; ci < ncells; ++ci) {
        if (is_prepiece[static_cast<size_t>(ci)]) continue;
        int ds = d_star[static_cast<size_t>(ci)], dw = d_wr[static_cast<size_t>(ci)];
        rep.joints.push_back({ds, dw});
        rep.chi_star2 += 2 - ds;
        if (dw > 0) {
            rep.chi_minus2 += 2 - ds;
            joint_dwr_sum += dw;
            // 1 - d*/2 <= -d_WR*/4  <=>  4 - 2 d* + d_WR* <= 0
            if (4 - 2 * ds + dw > 0) fail("joint-disc negative bound");
        } else {
            rep.chi_plus2 += 2 - ds;
            if (ds == 0) {
                // R^{eps}-disc: boundary alternates RR-arcs and R-intervals in
                // multiples of 4g
                int rr = d_rr[static_cast<size_t>(ci)];
                if (rr < 4 * g || rr % (4 * g) != 0) fail("R-disc degree not 4g multiple");
            }
        }
    }
    if (sum_2chi != joint_dwr_sum) fail("2 sum chi(P) != sum d_WR* over joints");
    if (2 * g * rep.chi_plus2 > rep.he_prime * 1) {
        // chi_+ <= he'/(4g)  <=>  2g * (2*chi_+) <= he'
        fail("chi_+ bound violated");
    }

    rep.chi_sigma = euler_characteristic(mp);
    if (rep.chi_star2 != 2 * (rep.chi_sigma + rep.n_rr))
        fail("chi(Sigma^*) dual-graph count mismatch");
    if (rep.chi_minus2 + rep.chi_plus2 != rep.chi_star2) fail("chi_- + chi_+ != chi^*");
    if (rep.chi_sigma > -n - m) fail("Euler bound chi <= -n-m violated");
    return rep;
}

struct CensusReport {
    long maps = 0;
    int max_chi_minus_h = -1000000;
    bool all_ok = true;
    std::vector<std::string> failures;
};

/**
 * Product-form tau = tau_1 x ... x tau_{4g} x id_{2|omega|}: one walled
 * diagram per relator block, identity on the word blocks.
 */
inline EpsDiagram product_form_tau(const ColoredContext& ctx, int g, int n, int m,
                                   const std::vector<WalledDiagram>& taus) {
    if (static_cast<int>(taus.size()) != 4 * g)
        throw std::domain_error("product_form_tau: need one diagram per relator letter");
    EpsDiagram tau = eps_identity(ctx.s);
    int k = n + m;
    for (int q = 0; q < 4 * g; ++q) {
        const WalledDiagram& wd = taus[static_cast<size_t>(q)];
        int base = q * k;
        // walled point (col c, row) maps to the eps point (base+c, +1 top / -1 bottom)
        auto enc = [&](int c, int row) { return row == 0 ? base + c : ctx.s + base + c; };
        for (int c = 0; c < k; ++c)
            for (int row = 0; row < 2; ++row) {
                int img = wd.p[static_cast<size_t>(c + k * row)];
                tau.p[static_cast<size_t>(enc(c, row))] = enc(img % k, img / k);
            }
    }
    return tau;
}

/**
 * Exhaustive census over admissible Brauer maps with the restricted product
 * form of tau_u, tau_b, asserting chi <= -n-m+h on every map and running the
 * reduction lemmas and pieces checks.
 */
inline CensusReport verify_geo_bound(int g, const SurfaceWord& omega, int n, int m,
                                     long max_maps = 10000000) {
    CensusReport rep;
    auto fail = [&](const std::string& s) {
        rep.all_ok = false;
        if (rep.failures.size() < 20) rep.failures.push_back(s);
    };
    SurfaceWord ws = dehn_shorten(omega);
    if (ws.size() != omega.size())
        throw std::domain_error("verify_geo_bound: omega not cyclically shortest");
    auto [pi, ctx] = build_second_moment_diagram(g, omega, n, m);
    auto admissible = enumerate_admissible(ctx);

    // product-form taus: independent walled diagrams per relator block
    std::vector<WalledDiagram> blocks;
    for (const auto& [d, len] : brauer_word_lengths(n, m)) {
        (void)len;
        blocks.push_back(d);
    }
    int nb = static_cast<int>(blocks.size());
    long tau_count = 1;
    for (int i = 0; i < 4 * g; ++i) tau_count *= nb;
    long total = tau_count * tau_count * static_cast<long>(admissible.size()) *
                 static_cast<long>(admissible.size());
    if (total > max_maps) throw std::domain_error("verify_geo_bound: census too large");

    auto make_tau = [&](const std::vector<int>& choice) {
        std::vector<WalledDiagram> taus;
        for (int q = 0; q < 4 * g; ++q)
            taus.push_back(blocks[static_cast<size_t>(choice[static_cast<size_t>(q)])]);
        return product_form_tau(ctx, g, n, m, taus);
    };

    std::vector<int> choice_u(static_cast<size_t>(4 * g), 0),
        choice_b(static_cast<size_t>(4 * g), 0);
    auto next_choice = [&](std::vector<int>& ch) {
        for (size_t i = 0; i < ch.size(); ++i) {
            if (++ch[i] < nb) return true;
            ch[i] = 0;
        }
        return false;
    };
    do {
        EpsDiagram tau_u = make_tau(choice_u);
        if (!compatible(tau_u, ctx)) fail("product-form tau_u incompatible");
        std::fill(choice_b.begin(), choice_b.end(), 0);
        do {
            EpsDiagram tau_b = make_tau(choice_b);
            for (const auto& alpha : admissible)
                for (const auto& beta : admissible) {
                    BrauerMap mp{ctx,   tau_u, pi,   tau_b,
                                 horizontal_diagram(alpha, beta, ctx), alpha, beta};
                    ++rep.maps;
                    int chi = euler_characteristic(mp), h = mp.h();
                    if (chi != cw_euler_characteristic(mp)) fail("CW count mismatch");
                    if (trace_exponent(mp) != count_c1(mp)) fail("trace exponent mismatch");
                    if (count_c2(mp) != alpha_beta_cycles(mp)) fail("#C_II mismatch");
                    if (chi > -n - m + h) fail("geometric Euler bound violated");
                    rep.max_chi_minus_h = std::max(rep.max_chi_minus_h, chi - h);
                    BrauerMap m1 = reduce_tau(mp);
                    if (m1.h() != 0) fail("reduce_tau left horizontal strands");
                    if (std::abs(euler_characteristic(m1) - chi) > h)
                        fail("reduce_tau chi drift exceeds h");
                    BrauerMap m2 = reduce_phi(m1);
                    if (euler_characteristic(m1) > euler_characteristic(m2))
                        fail("reduce_phi decreased chi");
                    if (m2.alpha != m2.beta) fail("reduce_phi not quadrangular");
                    auto pr = pieces_decomposition(m2, g, n, m);
                    if (!pr.ok) {
                        for (const auto& f : pr.failures) fail("pieces: " + f);
                    }
                }
        } while (next_choice(choice_b));
    } while (next_choice(choice_u));
    return rep;
}

}  // namespace ym2
