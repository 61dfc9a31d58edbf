#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "brauer_maps.hpp"
#include "characters.hpp"
#include "newton_wick.hpp"
#include "prec.hpp"
#include "surface_words.hpp"
#include "weights.hpp"
#include "witten_zeta.hpp"

namespace ym2 {

// Oriented edges come in pairs 2i, 2i+1 = (2i)^{-1}.
inline int edge_inverse(int e) { return e ^ 1; }

inline Real real_pow(const Real& base, long e) {
    if (e < 0) return Real(1) / real_pow(base, -e);
    Real r(1), b = base;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return r;
}

/**
 * Generalised map: a graph embedded in a closed oriented surface whose
 * complementary faces may have genus and several boundary circles.
 *
 * theta is the rotation at each vertex (cyclic successor among the outgoing
 * edges), left[e] the face on the left of the oriented edge e, face_genus the
 * genus of each face.  Faces are walked by S(e) = theta(e^{-1}), which keeps
 * the left face constant; the k_f boundary circles of a face are its S-orbits.
 */
struct GeneralisedMap {
    std::vector<int> theta;
    std::vector<int> left;
    std::vector<int> face_genus;

    int oriented() const { return static_cast<int>(theta.size()); }
    int n_edges() const { return oriented() / 2; }
    int n_faces() const { return static_cast<int>(face_genus.size()); }
    int face_walk(int e) const { return theta[static_cast<size_t>(edge_inverse(e))]; }
};

struct MapTopology {
    std::vector<int> vertex_of;  // theta-orbit id per oriented edge
    int n_vertices = 0;
    std::vector<int> k_f;    // boundary circles per face
    std::vector<int> chi_f;  // 2 - 2 g(f) - k_f
    int genus = 0;           // of the glued closed surface
};

inline MapTopology map_topology(const GeneralisedMap& mp) {
    int T = mp.oriented();
    if (T == 0 || T % 2 != 0 || static_cast<int>(mp.left.size()) != T)
        throw std::domain_error("map: bad sizes");
    std::vector<char> seen(static_cast<size_t>(T), 0);
    for (int e = 0; e < T; ++e) {
        int t = mp.theta[static_cast<size_t>(e)];
        if (t < 0 || t >= T || seen[static_cast<size_t>(t)])
            throw std::domain_error("map: theta is not a permutation");
        seen[static_cast<size_t>(t)] = 1;
    }

    MapTopology topo;
    topo.vertex_of.assign(static_cast<size_t>(T), -1);
    for (int e = 0; e < T; ++e) {
        if (topo.vertex_of[static_cast<size_t>(e)] >= 0) continue;
        for (int x = e; topo.vertex_of[static_cast<size_t>(x)] < 0;
             x = mp.theta[static_cast<size_t>(x)])
            topo.vertex_of[static_cast<size_t>(x)] = topo.n_vertices;
        ++topo.n_vertices;
    }

    // connectivity under theta, inversion and shared face labels (a face may
    // glue several boundary walks, so stubs bordering the same face are on the
    // same surface even when the underlying graph is disconnected)
    std::vector<std::vector<int>> by_face(mp.face_genus.size());
    for (int e = 0; e < T; ++e) {
        int f = mp.left[static_cast<size_t>(e)];
        if (f < 0 || f >= mp.n_faces()) throw std::domain_error("map: face label out of range");
        by_face[static_cast<size_t>(f)].push_back(e);
    }
    std::vector<char> comp(static_cast<size_t>(T), 0);
    std::vector<char> face_done(mp.face_genus.size(), 0);
    std::vector<int> stack{0};
    comp[0] = 1;
    while (!stack.empty()) {
        int e = stack.back();
        stack.pop_back();
        auto visit = [&](int x) {
            if (!comp[static_cast<size_t>(x)]) {
                comp[static_cast<size_t>(x)] = 1;
                stack.push_back(x);
            }
        };
        visit(mp.theta[static_cast<size_t>(e)]);
        visit(edge_inverse(e));
        int f = mp.left[static_cast<size_t>(e)];
        if (!face_done[static_cast<size_t>(f)]) {
            face_done[static_cast<size_t>(f)] = 1;
            for (int x : by_face[static_cast<size_t>(f)]) visit(x);
        }
    }
    if (std::find(comp.begin(), comp.end(), 0) != comp.end())
        throw std::domain_error("map: not connected");

    topo.k_f.assign(mp.face_genus.size(), 0);
    std::vector<char> walked(static_cast<size_t>(T), 0);
    for (int e = 0; e < T; ++e) {
        if (walked[static_cast<size_t>(e)]) continue;
        int f = mp.left[static_cast<size_t>(e)];
        if (f < 0 || f >= mp.n_faces()) throw std::domain_error("map: face label out of range");
        for (int x = e; !walked[static_cast<size_t>(x)]; x = mp.face_walk(x)) {
            walked[static_cast<size_t>(x)] = 1;
            if (mp.left[static_cast<size_t>(x)] != f)
                throw std::domain_error("map: left face not constant along a boundary walk");
        }
        ++topo.k_f[static_cast<size_t>(f)];
    }
    int chi = topo.n_vertices - mp.n_edges();
    topo.chi_f.resize(mp.face_genus.size());
    for (int f = 0; f < mp.n_faces(); ++f) {
        if (topo.k_f[static_cast<size_t>(f)] == 0)
            throw std::domain_error("map: face without boundary");
        topo.chi_f[static_cast<size_t>(f)] =
            2 - 2 * mp.face_genus[static_cast<size_t>(f)] - topo.k_f[static_cast<size_t>(f)];
        chi += topo.chi_f[static_cast<size_t>(f)];
    }
    if (chi > 2 || chi % 2 != 0) throw std::domain_error("map: Euler relation fails");
    topo.genus = (2 - chi) / 2;
    return topo;
}

/**
 * A multicurve drawn on a generalised map: each loop is a cyclic sequence of
 * oriented edges.  Every unoriented edge belongs to at most one loop; edges in
 * no loop are passive.  Loop vertices are 2-valent or 4-valent, and at a
 * 4-valent vertex the two strands pass straight through (out = theta^2(in)).
 */
struct LoopConfiguration {
    GeneralisedMap map;
    std::vector<std::vector<int>> loops;
};

// Corner faces at a 4-valent loop vertex, in rotation order starting from the
// in/in corner: e0 is the unique stub whose theta-successor is also an
// arrival, and the corners are s = L(theta e0), side1 = L(theta^2 e0),
// n = L(theta^3 e0), side2 = L(e0).  The s and n corners are the two
// orientation-change corners of their faces.
struct VertexCorners {
    int e0 = -1;
    int s = -1, side1 = -1, n = -1, side2 = -1;
};

struct ConfigData {
    MapTopology topo;
    std::vector<char> in_plus;  // oriented edge lies on a loop, in its direction
    std::vector<char> passive;  // unoriented edge covered by no loop
    std::vector<std::optional<VertexCorners>> corners;  // per vertex
    std::vector<int> m_f;                               // change corners per face
};

inline ConfigData analyze_config(const LoopConfiguration& cfg) {
    const GeneralisedMap& mp = cfg.map;
    ConfigData data;
    data.topo = map_topology(mp);
    int T = mp.oriented();
    data.in_plus.assign(static_cast<size_t>(T), 0);
    for (const auto& loop : cfg.loops) {
        if (loop.empty()) throw std::domain_error("config: empty loop");
        for (size_t t = 0; t < loop.size(); ++t) {
            int e = loop[t], nx = loop[(t + 1) % loop.size()];
            if (e < 0 || e >= T) throw std::domain_error("config: edge out of range");
            if (data.in_plus[static_cast<size_t>(e)] ||
                data.in_plus[static_cast<size_t>(edge_inverse(e))])
                throw std::domain_error("config: edge covered twice");
            data.in_plus[static_cast<size_t>(e)] = 1;
            if (data.topo.vertex_of[static_cast<size_t>(edge_inverse(e))] !=
                data.topo.vertex_of[static_cast<size_t>(nx)])
                throw std::domain_error("config: loop not continuous");
        }
    }
    data.passive.assign(static_cast<size_t>(mp.n_edges()), 0);
    for (int i = 0; i < mp.n_edges(); ++i)
        data.passive[static_cast<size_t>(i)] =
            !data.in_plus[static_cast<size_t>(2 * i)] &&
            !data.in_plus[static_cast<size_t>(2 * i + 1)];

    // valence and transversality checks at loop vertices
    std::vector<std::vector<int>> stubs(static_cast<size_t>(data.topo.n_vertices));
    for (int e = 0; e < T; ++e)
        stubs[static_cast<size_t>(data.topo.vertex_of[static_cast<size_t>(e)])].push_back(e);
    data.corners.assign(static_cast<size_t>(data.topo.n_vertices), std::nullopt);
    data.m_f.assign(mp.face_genus.size(), 0);
    auto on_loop = [&](int e) {
        return data.in_plus[static_cast<size_t>(e)] ||
               data.in_plus[static_cast<size_t>(edge_inverse(e))];
    };
    for (int v = 0; v < data.topo.n_vertices; ++v) {
        const auto& st = stubs[static_cast<size_t>(v)];
        int live = 0;
        for (int e : st) live += on_loop(e);
        if (live == 0) continue;  // passive vertex
        if (live != static_cast<int>(st.size()))
            throw std::domain_error("config: vertex mixes loop and passive edges");
        if (st.size() == 2) continue;
        if (st.size() != 4) throw std::domain_error("config: loop vertex valence not 2 or 4");
        VertexCorners c;
        for (int e : st) {
            if (!data.in_plus[static_cast<size_t>(e)] &&
                !data.in_plus[static_cast<size_t>(mp.theta[static_cast<size_t>(e)])]) {
                if (c.e0 >= 0) throw std::domain_error("config: crossing not transversal");
                c.e0 = e;
            }
        }
        if (c.e0 < 0) throw std::domain_error("config: crossing not transversal");
        int t1 = mp.theta[static_cast<size_t>(c.e0)];
        int t2 = mp.theta[static_cast<size_t>(t1)];
        int t3 = mp.theta[static_cast<size_t>(t2)];
        c.s = mp.left[static_cast<size_t>(t1)];
        c.side1 = mp.left[static_cast<size_t>(t2)];
        c.n = mp.left[static_cast<size_t>(t3)];
        c.side2 = mp.left[static_cast<size_t>(c.e0)];
        data.corners[static_cast<size_t>(v)] = c;
        data.m_f[static_cast<size_t>(c.s)] += 1;
        data.m_f[static_cast<size_t>(c.n)] += 1;
    }
    // straight-through continuation along every loop
    for (const auto& loop : cfg.loops)
        for (size_t t = 0; t < loop.size(); ++t) {
            int in = edge_inverse(loop[t]), out = loop[(t + 1) % loop.size()];
            int v = data.topo.vertex_of[static_cast<size_t>(in)];
            int expect = stubs[static_cast<size_t>(v)].size() == 4
                             ? mp.theta[static_cast<size_t>(mp.theta[static_cast<size_t>(in)])]
                             : mp.theta[static_cast<size_t>(in)];
            if (out != expect) throw std::domain_error("config: strand turns at a vertex");
        }
    return data;
}

// Number of loops |S|; the trace normalisation is N^{-|S|}.
inline int loop_count(const LoopConfiguration& cfg) { return static_cast<int>(cfg.loops.size()); }

/** One highest weight per face. */
struct WeightField {
    std::vector<HighestWeight> lambda;
};

struct AreaVector {
    std::vector<Rat> a;
};

/**
 * Per-oriented-edge Pieri index of a field: for e on a loop (in its
 * direction), lambda(R(e)) = lambda(L(e)) + omega_j and idx[e] = j (1-based,
 * also stored on e^{-1}); passive edges carry equal weights up to a constant
 * shift (U group: exactly equal).  Throws if the field violates either rule.
 */
inline std::vector<int> field_indices(const LoopConfiguration& cfg, const ConfigData& data,
                                      const WeightField& field, Group group) {
    const GeneralisedMap& mp = cfg.map;
    if (static_cast<int>(field.lambda.size()) != mp.n_faces())
        throw std::domain_error("field: face count mismatch");
    for (const auto& w : field.lambda)
        if (!w.valid()) throw std::domain_error("field: weight not dominant");
    std::vector<int> idx(static_cast<size_t>(mp.oriented()), -1);
    int N = field.lambda[0].N();
    for (int i = 0; i < mp.n_edges(); ++i) {
        const auto& lo = field.lambda[static_cast<size_t>(mp.left[static_cast<size_t>(2 * i)])].e;
        const auto& hi =
            field.lambda[static_cast<size_t>(mp.left[static_cast<size_t>(2 * i + 1)])].e;
        int e = data.in_plus[static_cast<size_t>(2 * i)]
                    ? 2 * i
                    : (data.in_plus[static_cast<size_t>(2 * i + 1)] ? 2 * i + 1 : -1);
        // lambda(R(e)) - lambda(L(e)) on the covered orientation must be one
        // unit vector on top of a constant shift (shift zero for U); passive
        // edges carry the bare shift
        const auto& l = (e == 2 * i + 1) ? hi : lo;
        const auto& r = (e == 2 * i + 1) ? lo : hi;
        long shift = r[0] - l[0];
        for (int p = 1; p < N; ++p)
            shift = std::min(shift, r[static_cast<size_t>(p)] - l[static_cast<size_t>(p)]);
        int j = -1;
        bool ok = true;
        for (int p = 0; p < N; ++p) {
            long d = r[static_cast<size_t>(p)] - l[static_cast<size_t>(p)] - shift;
            if (d == 0) continue;
            if (d == 1 && j == -1)
                j = p + 1;
            else
                ok = false;
        }
        if (group == Group::U && shift != 0) ok = false;
        if (e >= 0) {
            if (!ok || j == -1) throw std::domain_error("field: edge step is not a single box");
            idx[static_cast<size_t>(e)] = j;
            idx[static_cast<size_t>(edge_inverse(e))] = j;
        } else if (!ok || j != -1) {
            throw std::domain_error("field: passive edge with unequal weights");
        }
    }
    return idx;
}

/**
 * Contact/crossing data of a 4-valent vertex.  The two incoming strands carry
 * indices read off the field; b is the index across the side corner that
 * steps up from s (when exactly one side does), otherwise the index across
 * side1.  r = lambda(s)_b - lambda(s)_a + a - b + 1 is a nonzero integer on
 * valid fields; the local angle has cos(theta) = 1/r.
 */
struct VertexClass {
    bool contact = false;
    int a = 0, b = 0;
    long r = 0;
};

inline VertexClass classify_vertex(int v, const LoopConfiguration& cfg, const ConfigData& data,
                                   const WeightField& field, const std::vector<int>& idx) {
    const auto& oc = data.corners[static_cast<size_t>(v)];
    if (!oc) throw std::domain_error("classify_vertex: not a 4-valent loop vertex");
    const VertexCorners& c = *oc;
    const GeneralisedMap& mp = cfg.map;
    int in1 = edge_inverse(c.e0);
    int in2 = edge_inverse(mp.theta[static_cast<size_t>(c.e0)]);
    int j1 = idx[static_cast<size_t>(in1)];  // step between s and side2
    int j2 = idx[static_cast<size_t>(in2)];  // step between s and side1
    const auto& ls = field.lambda[static_cast<size_t>(c.s)].e;
    auto rises = [&](int side, int j) {
        return field.lambda[static_cast<size_t>(side)].e[static_cast<size_t>(j - 1)] ==
               ls[static_cast<size_t>(j - 1)] + 1;
    };
    bool up1 = rises(c.side1, j2), up2 = rises(c.side2, j1);
    VertexClass out;
    out.contact = field.lambda[static_cast<size_t>(c.n)].e == ls;
    if (!up1 && up2) {
        out.b = j1;
        out.a = j2;
    } else {
        out.b = j2;
        out.a = j1;
    }
    out.r = ls[static_cast<size_t>(out.b - 1)] - ls[static_cast<size_t>(out.a - 1)] + out.a -
            out.b + 1;
    if (out.r == 0) throw std::logic_error("classify_vertex: vanishing corner integer");
    return out;
}

inline Rat rat_pow(const Rat& base, long e) {
    Rat r(1), b = e >= 0 ? base : Rat(1) / base;
    for (long k = std::labs(e); k > 0; --k) r *= b;
    return r;
}

/**
 * One Boltzmann term of the IRF sum: the exact dimension factor
 * prod_f d_f^{chi_f - m_f/2}, the trigonometric vertex factor (cos 1/r at
 * contacts, sin sqrt(1-1/r^2) at crossings), and exp(-<a, c(lambda)>/2).
 * On all-contact fields the dimension factor is cross-checked against the
 * boundary-merge form computed on the desingularised face classes.
 */
struct IrfTerm {
    Rat dim;
    Real angle;
    Real boltzmann;
    Real value;
};

inline IrfTerm irf_term(const LoopConfiguration& cfg, const ConfigData& data,
                        const WeightField& field, const AreaVector& area, Group group) {
    auto idx = field_indices(cfg, data, field, group);
    IrfTerm out{Rat(1), Real(1), Real(1), Real(0)};
    std::vector<Rat> dims;
    for (const auto& w : field.lambda) dims.push_back(weyl_dimension(w));
    for (int f = 0; f < cfg.map.n_faces(); ++f)
        out.dim *= rat_pow(dims[static_cast<size_t>(f)],
                           data.topo.chi_f[static_cast<size_t>(f)] -
                               data.m_f[static_cast<size_t>(f)] / 2);

    bool all_contact = true;
    std::vector<std::pair<int, int>> merges;
    for (int v = 0; v < data.topo.n_vertices; ++v) {
        if (!data.corners[static_cast<size_t>(v)]) continue;
        VertexClass cl = classify_vertex(v, cfg, data, field, idx);
        if (cl.contact) {
            out.angle *= Real(1) / cl.r;
            merges.push_back({data.corners[static_cast<size_t>(v)]->s,
                              data.corners[static_cast<size_t>(v)]->n});
        } else {
            all_contact = false;
            Real c = Real(1) / cl.r;
            out.angle *= sqrt(Real(1) - c * c);
        }
    }
    if (abs(out.angle) > Real(1) + pow(Real(10), -30))
        throw std::logic_error("irf_term: vertex factor exceeds one");

    if (all_contact) {
        // merge the s/n faces at every contact and compare the per-class
        // exponents (each merge lowers the class Euler characteristic by one)
        std::vector<int> root(static_cast<size_t>(cfg.map.n_faces()));
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[static_cast<size_t>(x)] != x) x = root[static_cast<size_t>(x)];
            return x;
        };
        for (auto [s, n] : merges) root[static_cast<size_t>(find(s))] = find(n);
        std::vector<long> expo(static_cast<size_t>(cfg.map.n_faces()), 0);
        for (int f = 0; f < cfg.map.n_faces(); ++f)
            expo[static_cast<size_t>(find(f))] += data.topo.chi_f[static_cast<size_t>(f)];
        for (auto [s, n] : merges) expo[static_cast<size_t>(find(s))] -= 1;
        Rat swap(1);
        for (int f = 0; f < cfg.map.n_faces(); ++f)
            if (find(f) == f) swap *= rat_pow(dims[static_cast<size_t>(f)],
                                              expo[static_cast<size_t>(f)]);
        if (swap != out.dim) throw std::logic_error("irf_term: dimension forms disagree");
    }

    if (static_cast<int>(area.a.size()) != cfg.map.n_faces())
        throw std::domain_error("irf_term: area count mismatch");
    Rat ac(0);
    for (int f = 0; f < cfg.map.n_faces(); ++f)
        ac += area.a[static_cast<size_t>(f)] *
              casimir(field.lambda[static_cast<size_t>(f)], group == Group::SU);
    out.boltzmann = exp(to_real(ac) / -2);
    out.value = to_real(out.dim) * out.angle * out.boltzmann;
    return out;
}

struct WilsonOptions {
    Group group = Group::U;
    int cutoff = 8;         // max weight size of the reference face
    int charge_cutoff = 4;  // U group: |charge shift| of the reference face
};

struct WilsonResult {
    Real value;
    Real numerator, denominator;
    long fields = 0;
    Real tail_bound;
};

namespace detail {

inline std::vector<HighestWeight> root_weights(int N, const WilsonOptions& opt) {
    auto classes = enumerate_su_classes(N, opt.cutoff);
    if (opt.group == Group::SU) return classes;
    std::vector<HighestWeight> out;
    for (const auto& a : classes)
        for (int c = -opt.charge_cutoff; c <= opt.charge_cutoff; ++c) {
            HighestWeight b = a;
            for (auto& v : b.e) v += c;
            out.push_back(b);
        }
    return out;
}

// shift the field rules across one unoriented edge of known orientation
inline bool edge_consistent(const LoopConfiguration& cfg, const ConfigData& data,
                            const std::vector<HighestWeight>& lam, int i, Group group) {
    int e = data.in_plus[static_cast<size_t>(2 * i)]
                ? 2 * i
                : (data.in_plus[static_cast<size_t>(2 * i + 1)] ? 2 * i + 1 : -1);
    int fl = cfg.map.left[static_cast<size_t>(e >= 0 ? e : 2 * i)];
    int fr = cfg.map.left[static_cast<size_t>(edge_inverse(e >= 0 ? e : 2 * i))];
    const auto& l = lam[static_cast<size_t>(fl)].e;
    const auto& r = lam[static_cast<size_t>(fr)].e;
    long shift = r[0] - l[0];
    for (size_t p = 1; p < l.size(); ++p) shift = std::min(shift, r[p] - l[p]);
    if (group == Group::U && shift != 0) return false;
    int units = 0;
    for (size_t p = 0; p < l.size(); ++p) {
        long d = r[p] - l[p] - shift;
        if (d == 1)
            ++units;
        else if (d != 0)
            return false;
    }
    return units == (e >= 0 ? 1 : 0);
}

}  // namespace detail

/**
 * E[W_S] by the IRF sum: enumerate weight fields by Pieri propagation along a
 * dual spanning tree from face 0, filter by consistency of the remaining
 * edges, and normalise by N^{|S|} and the matching truncated partition
 * function.  The tail bound covers the truncation of the numerator (root
 * weights outside the cutoff) and of the denominator.
 */
inline WilsonResult wilson_expectation(const LoopConfiguration& cfg, const AreaVector& area,
                                       int N, const WilsonOptions& opt) {
    ConfigData data = analyze_config(cfg);
    const GeneralisedMap& mp = cfg.map;
    int F = mp.n_faces();
    if (static_cast<int>(area.a.size()) != F)
        throw std::domain_error("wilson_expectation: area count mismatch");
    Rat T(0);
    for (const auto& a : area.a) {
        if (a < 0) throw std::domain_error("wilson_expectation: negative area");
        T += a;
    }
    if (!(T > 0)) throw std::domain_error("wilson_expectation: zero total area");

    // dual spanning tree rooted at face 0
    std::vector<int> parent(static_cast<size_t>(F), -1), parent_edge(static_cast<size_t>(F), -1);
    std::vector<int> order{0};
    std::vector<char> seen(static_cast<size_t>(F), 0);
    seen[0] = 1;
    std::vector<int> dist(static_cast<size_t>(F), 0);
    for (size_t head = 0; head < order.size(); ++head) {
        int f = order[head];
        for (int i = 0; i < mp.n_edges(); ++i)
            for (int e : {2 * i, 2 * i + 1}) {
                if (mp.left[static_cast<size_t>(e)] != f) continue;
                int g = mp.left[static_cast<size_t>(edge_inverse(e))];
                if (seen[static_cast<size_t>(g)]) continue;
                seen[static_cast<size_t>(g)] = 1;
                parent[static_cast<size_t>(g)] = f;
                parent_edge[static_cast<size_t>(g)] = e;  // L = parent, R = child
                dist[static_cast<size_t>(g)] = dist[static_cast<size_t>(f)] + 1;
                order.push_back(g);
            }
    }
    if (static_cast<int>(order.size()) != F)
        throw std::domain_error("wilson_expectation: dual graph not connected");
    std::vector<char> in_tree(static_cast<size_t>(mp.n_edges()), 0);
    for (int f = 1; f < F; ++f) in_tree[static_cast<size_t>(parent_edge[static_cast<size_t>(f)] / 2)] = 1;

    WilsonResult res{Real(0), Real(0), Real(0), 0, Real(0)};
    std::vector<HighestWeight> lam(static_cast<size_t>(F), zero_weight(N));
    auto emit = [&]() {
        for (int i = 0; i < mp.n_edges(); ++i)
            if (!in_tree[static_cast<size_t>(i)] &&
                !detail::edge_consistent(cfg, data, lam, i, opt.group))
                return;
        WeightField field{lam};
        res.numerator += irf_term(cfg, data, field, area, opt.group).value;
        ++res.fields;
    };
    auto assign = [&](auto&& self, size_t pos) -> void {
        if (pos == order.size()) {
            emit();
            return;
        }
        int f = order[pos];
        int e = parent_edge[static_cast<size_t>(f)];
        const HighestWeight& base = lam[static_cast<size_t>(parent[static_cast<size_t>(f)])];
        int i = e / 2;
        if (data.passive[static_cast<size_t>(i)]) {
            lam[static_cast<size_t>(f)] = base;
            self(self, pos + 1);
            return;
        }
        bool up = data.in_plus[static_cast<size_t>(e)];  // child is R of the covered orientation
        if (!up && !data.in_plus[static_cast<size_t>(edge_inverse(e))])
            throw std::logic_error("wilson_expectation: uncovered live edge");
        for (const auto& w : pieri_neighbors(base, up)) {
            lam[static_cast<size_t>(f)] = w;
            self(self, pos + 1);
        }
    };
    for (const auto& root : detail::root_weights(N, opt)) {
        lam[0] = root;
        assign(assign, 1);
    }

    // denominator: the same truncation of the zeta sum at the total area
    int g = data.topo.genus;
    for (const auto& root : detail::root_weights(N, opt))
        res.denominator += real_pow(to_real(weyl_dimension(root)), 2 - 2 * g) *
                           exp(to_real(T * casimir(root, opt.group == Group::SU)) / -2);

    Real norm = real_pow(Real(N), loop_count(cfg));
    res.value = res.numerator / (res.denominator * norm);

    // truncation certificate: every omitted field keeps |angle| <= 1, has
    // dimension factor at most N^{d'} d_root^{2-2g}, at most N^{E} completions
    // per root, and Boltzmann weight at most e^{T C0/2} q^{c(root)} with
    // q = e^{-T/4}; the omitted roots are summed by the zeta tail.
    try {
        long dprime = 0;
        int diam = 0;
        for (int f = 0; f < F; ++f) {
            dprime += std::labs(data.topo.chi_f[static_cast<size_t>(f)] -
                                data.m_f[static_cast<size_t>(f)] / 2) *
                      dist[static_cast<size_t>(f)];
            diam = std::max(diam, dist[static_cast<size_t>(f)]);
        }
        Real c0 = Real(diam) * diam + Real(N * N - 1) / 24 + 1;
        ZetaQuery zq{opt.group, Rat(2 * g - 2), exp(to_real(T) / -4), N, opt.cutoff,
                     opt.group == Group::U ? std::optional<int>(opt.charge_cutoff) : std::nullopt};
        Real num_tail = real_pow(Real(N), dprime + mp.n_edges()) * exp(to_real(T) / 2 * c0) *
                        zeta(zq).tail_bound;
        ZetaQuery zd = zq;
        zd.q = exp(to_real(T) / -2);
        Real den_tail = zeta(zd).tail_bound;
        res.tail_bound = num_tail / (res.denominator * norm) +
                         abs(res.value) * den_tail / res.denominator;
    } catch (const std::domain_error&) {
        res.tail_bound = std::numeric_limits<Real>::infinity();
    }
    return res;
}

/** Two-face configuration: a simple contractible loop bounding a disc (face 1)
 * on a closed surface whose outer face (face 0) carries genus h. */
inline LoopConfiguration two_face_config(int h) {
    GeneralisedMap mp;
    mp.theta = {1, 0};
    mp.left = {0, 1};
    mp.face_genus = {h, 0};
    return {mp, {{0}}};
}

/**
 * Character/Pieri oracle for the two-face configuration: the disc boundary
 * holonomy couples the genus-h amplitude to the disc amplitude one box up,
 *   E[W] = sum_{b} sum_{a in b+box} d_a d_b^{1-2h} q-weights / (N Z).
 */
inline Real two_face_oracle(int N, int h, const Rat& disc_area, const Rat& total_area,
                            const WilsonOptions& opt) {
    Rat s = total_area - disc_area;
    Real num(0), den(0);
    for (const auto& beta : detail::root_weights(N, opt)) {
        Rat db = weyl_dimension(beta);
        Real wb = exp(to_real(s * casimir(beta, false)) / -2);
        den += real_pow(to_real(db), 2 - 2 * h) * exp(to_real(total_area * casimir(beta, false)) / -2);
        for (const auto& alpha : pieri_neighbors(beta, true))
            num += to_real(weyl_dimension(alpha)) * real_pow(to_real(db), 1 - 2 * h) * wb *
                   exp(to_real(disc_area * casimir(alpha, false)) / -2);
    }
    return num / (den * N);
}

/** Two parallel copies of a non-separating loop on a genus-2 surface bounding
 * an annulus (face 1); with opposite orientations the product of traces is
 * |W|^2 of the underlying loop. */
inline LoopConfiguration parallel_pair_config() {
    GeneralisedMap mp;
    mp.theta = {1, 0, 3, 2};
    mp.left = {0, 1, 0, 1};
    mp.face_genus = {1, 0};
    return {mp, {{0}, {2}}};
}

// E[|W_path|^2] = N^{-2} E[tr(U) tr(U*)] for a free (non-loop) edge, by the
// Haar-Weingarten route; exact in N.
inline Rat path_second_moment(int N) {
    return haar_moment({1}, {1}, N).to_rat() / (Rat(N) * N);
}

struct PartitionResult {
    Real value;
    Real tail_bound;
    long terms = 0;
};

/** Partition function of the closed genus-g surface of area T as the
 * (q-deformed) zeta sum; T = 0 is the SU heat-kernel limit. */
inline PartitionResult partition_function(int N, int g, const Rat& T, Group group, int cutoff,
                                          std::optional<int> charge_cutoff = std::nullopt) {
    ZetaQuery q{group, Rat(2 * g - 2), std::nullopt, N, cutoff, charge_cutoff};
    if (T > 0) q.q = exp(to_real(T) / -2);
    else if (T < 0 || group == Group::U)
        throw std::domain_error("partition_function: needs T > 0 for U, T >= 0 for SU");
    ZetaResult r = zeta(q);
    return {r.partial_sum, r.tail_bound, r.terms_used};
}

namespace detail {

inline std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<size_t>(b[i])];
    return c;
}

// sum over 2g-tuples of chi(prod of g commutators), per symmetric group factor
inline Rat commutator_sum(const Partition& lam, int g) {
    int n = psize(lam);
    if (n <= 1) return Rat(1);
    auto perms = all_perms(n);
    Rat acc(0);
    std::vector<int> id(static_cast<size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    auto rec = [&](auto&& self, int level, const std::vector<int>& prefix) -> void {
        if (level == g) {
            acc += Rat(character_value(lam, cycle_type(prefix)));
            return;
        }
        for (const auto& a : perms)
            for (const auto& b : perms) {
                auto comm = compose_perm(compose_perm(a, b),
                                         compose_perm(inverse_perm(a), inverse_perm(b)));
                self(self, level + 1, compose_perm(prefix, comm));
            }
    };
    rec(rec, 0, id);
    return acc;
}

inline Rat chi_perm(const Partition& lam, const std::vector<int>& perm) {
    if (perm.empty()) return Rat(1);
    return Rat(character_value(lam, cycle_type(perm)));
}

// chi(Omega_{n,m})/d on [lambda,mu], from the diagram expansion at integer N
inline Rat omega_character_ratio(const Partition& lam, const Partition& mu, int N) {
    int n = psize(lam), m = psize(mu), s = n + m;
    Rat acc(0);
    for (const auto& [d, coeff] : omega_mixed(n, m).terms) {
        std::vector<int> alpha(static_cast<size_t>(n)), beta(static_cast<size_t>(m));
        for (int i = 0; i < n; ++i) alpha[static_cast<size_t>(i)] = d.p[static_cast<size_t>(i)] - s;
        for (int j = 0; j < m; ++j)
            beta[static_cast<size_t>(j)] = d.p[static_cast<size_t>(n + j)] - s - n;
        acc += coeff.specialize(Rat(N)) * chi_perm(lam, alpha) * chi_perm(mu, beta);
    }
    return acc / (Rat(hook_dimension(lam)) * Rat(hook_dimension(mu)));
}

// eigenvalue of the splitting Casimir sum-of-transpositions element, through
// the character at a single transposition
inline Rat content_eigenvalue(const Partition& lam) {
    int n = psize(lam);
    if (n < 2) return Rat(0);
    Partition tr{2};
    for (int i = 2; i < n; ++i) tr.push_back(1);
    return rat(static_cast<long>(n) * (n - 1), 2) * Rat(character_value(lam, tr)) /
           Rat(hook_dimension(lam));
}

}  // namespace detail

/**
 * String expansion cross-check for one (n,m) block: the zeta block restricted
 * to weights of size n+m against the chiral Gross-Taylor form assembled from
 * independently computed central characters (brute-force commutator sums for
 * the genus element, the diagram expansion of Omega, and the transposition
 * character for the Casimir part).  lhs/rhs are the SU values, lhs_u/rhs_u
 * include the U(N) charge sum truncated at charge_cutoff.
 */
struct StringBlock {
    int n = 0, m = 0;
    Real lhs, rhs, lhs_u, rhs_u;
};

inline std::vector<StringBlock> string_expansion_check(int N, int g, const Rat& q_base,
                                                       int total_cap, int charge_cutoff = 6) {
    if (!(q_base > 0 && q_base < 1))
        throw std::domain_error("string_expansion_check: q outside (0,1)");
    Real q = to_real(q_base);
    std::vector<StringBlock> out;
    for (int n = 0; n <= total_cap; ++n)
        for (int m = 0; n + m <= total_cap; ++m) {
            if (n + m == 0) continue;
            StringBlock blk{n, m, Real(0), Real(0), Real(0), Real(0)};
            Rat nmfact = Rat(factorial(n)) * Rat(factorial(m));
            Real x = Real(n - m) / N;
            for (const auto& lam : enumerate_partitions(n))
                for (const auto& mu : enumerate_partitions(m)) {
                    if (plen(lam) + plen(mu) > N) continue;
                    HighestWeight w = make_weight(lam, mu, N);
                    Rat dN = weyl_dimension(w);
                    // direct weight-side values
                    blk.lhs += real_pow(to_real(dN), 2 - 2 * g) * pow(q, to_real(casimir(w, true)));
                    for (int c = -charge_cutoff; c <= charge_cutoff; ++c) {
                        HighestWeight wc = w;
                        for (auto& v : wc.e) v += c;
                        blk.lhs_u +=
                            real_pow(to_real(dN), 2 - 2 * g) * pow(q, to_real(casimir(wc, false)));
                    }
                    // central-character side; ev_genus = chi(omega_g)/dhat with
                    // omega_g summed over (n! m!)^{2g} commutator tuples
                    Rat dhat = Rat(hook_dimension(lam)) * Rat(hook_dimension(mu));
                    Rat ev_genus = detail::commutator_sum(lam, g) / Rat(hook_dimension(lam)) *
                                   detail::commutator_sum(mu, g) / Rat(hook_dimension(mu));
                    Rat ev_omega = detail::omega_character_ratio(lam, mu, N);
                    Rat ev_c = detail::content_eigenvalue(lam) + detail::content_eigenvalue(mu);
                    Real central = to_real(dhat * dhat / (nmfact * nmfact)) *
                                   to_real(ev_genus) * to_real(rat_pow(ev_omega, 2 - 2 * g)) *
                                   pow(q, to_real(Rat(2) * ev_c / N));
                    Real p = real_pow(q, n + m) * central;
                    blk.rhs += p * pow(q, -x * x);
                    Real charges(0);
                    for (int c = -charge_cutoff; c <= charge_cutoff; ++c)
                        charges += pow(q, (Real(c) + x) * (Real(c) + x));
                    blk.rhs_u += p * pow(q, -x * x) * charges;
                }
            out.push_back(blk);
        }
    return out;
}

/**
 * Lattice refinement invariance of the two-face Wilson expectation: subdivide
 * the loop edge, split the disc into a disc plus an annulus by a passive
 * circle, and let the inner area go to zero.  All four evaluations agree
 * exactly (the annulus face has Euler characteristic zero and a forced equal
 * weight).
 */
struct RefinementReport {
    Real base, subdivided, split, zero_area;
    Real max_diff;
};

inline RefinementReport refinement_invariance_test(int N, const Rat& disc_area,
                                                   const Rat& outer_area,
                                                   const WilsonOptions& opt) {
    Real base = wilson_expectation(two_face_config(2), {{outer_area, disc_area}}, N, opt).value;

    LoopConfiguration sub;
    sub.map.theta = {3, 2, 1, 0};  // two 2-valent vertices {0,3} and {2,1}
    sub.map.left = {0, 1, 0, 1};
    sub.map.face_genus = {2, 0};
    sub.loops = {{0, 2}};
    Real subdivided = wilson_expectation(sub, {{outer_area, disc_area}}, N, opt).value;

    Rat inner = disc_area / 3;
    LoopConfiguration split;
    split.map.theta = {1, 0, 3, 2};  // loop vertex and a passive circle vertex
    split.map.left = {0, 1, 1, 2};
    split.map.face_genus = {2, 0, 0};
    split.loops = {{0}};
    Real split_v =
        wilson_expectation(split, {{outer_area, disc_area - inner, inner}}, N, opt).value;
    Real zero_v = wilson_expectation(split, {{outer_area, disc_area, Rat(0)}}, N, opt).value;

    Real md(0);
    for (const Real& v : {subdivided, split_v, zero_v}) {
        Real d = abs(v - base);
        if (d > md) md = d;
    }
    return {base, subdivided, split_v, zero_v, md};
}

/**
 * Large-N decay probe for the second moment of a cyclically shortest word.
 * The census certifies chi - h <= -(n+m) on every admissible Brauer map of
 * the (n,m) = (1,0), (0,1) blocks, so each map contributes at most
 * N^{chi-h+n+m} <= 1 relative to the 1/N^2 trace normalisation; the head is
 * therefore #maps times the truncated character sum (d_alpha/N^{|alpha|})
 * q^{c}, with the size tail absorbed into the zeta remainder.  For a single
 * positive generator the IRF value of E[|W|^2] (two antiparallel copies on
 * the genus-2 surface) is reported alongside.
 */
struct ProbeRow {
    int N = 0;
    Real bound;
    std::optional<Real> irf_value;
};

inline std::vector<ProbeRow> second_moment_decay_probe(int g, const SurfaceWord& omega,
                                                       const std::vector<int>& Ns, const Rat& T,
                                                       int cutoff) {
    auto c10 = verify_geo_bound(g, omega, 1, 0);
    auto c01 = verify_geo_bound(g, omega, 0, 1);
    if (!c10.all_ok || !c01.all_ok)
        throw std::logic_error("second_moment_decay_probe: census bound fails");
    bool single = omega.letters.size() == 1 && omega.letters[0] > 0 && g == 2;
    std::vector<ProbeRow> out;
    for (int N : Ns) {
        Real head(0);
        for (const auto& census : {c10, c01}) {
            Real block(0);
            for (const auto& alpha : enumerate_su_classes(N, 1)) {
                if (weight_size(alpha) != 1) continue;
                block += to_real(weyl_dimension(alpha)) / N *
                         exp(to_real(T * casimir(alpha, false)) / -2);
            }
            head += Real(census.maps) * block;  // N^{chi-h+n+m} <= 1 per map
        }
        Real tail = su_size_tail_bound(N, Rat(2), 1);
        ProbeRow row{N, (head + tail) / (Real(N) * N), std::nullopt};
        if (single) {
            WilsonOptions opt{Group::U, cutoff, 3};
            row.irf_value =
                wilson_expectation(parallel_pair_config(), {{T, Rat(0)}}, N, opt).value;
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace ym2
