#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace ym2 {

/**
 * A word in the genus-g surface group on a_1, b_1, ..., a_g, b_g.
 * Letters are encoded as nonzero integers: +k is the k-th generator
 * (1-based, alternating a_1, b_1, a_2, b_2, ...), -k its inverse.
 */
struct SurfaceWord {
    int g = 1;
    std::vector<int> letters;

    bool operator==(const SurfaceWord& o) const { return g == o.g && letters == o.letters; }
    size_t size() const { return letters.size(); }
};

inline void check_letters(const SurfaceWord& w) {
    for (int x : w.letters)
        if (x == 0 || x > 2 * w.g || x < -2 * w.g)
            throw std::domain_error("surface word: letter out of alphabet");
}

// r = [a_1 b_1]...[a_g b_g]
inline SurfaceWord relator(int g) {
    SurfaceWord r{g, {}};
    for (int i = 0; i < g; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        r.letters.insert(r.letters.end(), {a, b, -a, -b});
    }
    return r;
}

// r^ = [a_1 b_1^{-1}]...[a_g b_g^{-1}]
inline SurfaceWord relator_hat(int g) {
    SurfaceWord r{g, {}};
    for (int i = 0; i < g; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        r.letters.insert(r.letters.end(), {a, -b, -a, b});
    }
    return r;
}

inline std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

inline SurfaceWord inverse_word(const SurfaceWord& w) {
    return SurfaceWord{w.g, inverse_word(w.letters)};
}

inline SurfaceWord reduce(const SurfaceWord& w) {
    std::vector<int> out;
    for (int x : w.letters) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return SurfaceWord{w.g, std::move(out)};
}

inline SurfaceWord cyclic_reduce(const SurfaceWord& w) {
    SurfaceWord r = reduce(w);
    size_t lo = 0, hi = r.letters.size();
    while (hi - lo >= 2 && r.letters[lo] == -r.letters[hi - 1]) {
        ++lo;
        --hi;
    }
    return SurfaceWord{w.g, std::vector<int>(r.letters.begin() + static_cast<long>(lo),
                                             r.letters.begin() + static_cast<long>(hi))};
}

// is `b` a subword of a cyclic permutation of `host`?
inline bool cyclic_subword(const std::vector<int>& b, const std::vector<int>& host) {
    if (b.empty()) return true;
    if (b.size() > host.size()) return false;
    size_t h = host.size();
    for (size_t s = 0; s < h; ++s) {
        bool ok = true;
        for (size_t t = 0; t < b.size() && ok; ++t)
            if (host[(s + t) % h] != b[t]) ok = false;
        if (ok) return true;
    }
    return false;
}

/**
 * he(x, y) = min{ |w| : x^{-1} w y is a cyclic subword of r^ }, scanned over
 * all cyclic subwords. Negative orientation replaces r^ = hat(r) by hat(r^{-1})
 * = [b_g a_g^{-1}]...[b_1 a_1^{-1}], which is the letter-reversal of r^; this
 * makes the negative winding of a word equal the positive winding of its
 * inverse.
 */
inline int he_pair(int g, int x, int y, bool positive = true) {
    if (x == 0 || y == 0 || std::abs(x) > 2 * g || std::abs(y) > 2 * g)
        throw std::domain_error("he_pair: letters not in alphabet");
    if (y == -x) throw std::domain_error("he_pair: undefined on cancelling pairs");
    std::vector<int> rh = relator_hat(g).letters;
    if (!positive) std::reverse(rh.begin(), rh.end());
    size_t L = rh.size();
    for (size_t len = 0; len + 2 <= L; ++len)
        for (size_t s = 0; s < L; ++s)
            if (rh[s] == -x && rh[(s + len + 1) % L] == y) return static_cast<int>(len);
    throw std::logic_error("he_pair: scan failed");
}

/**
 * Winding of a reduced word: the sum of he over consecutive letter pairs,
 * closed up cyclically for variant 0.
 */
inline int winding(const SurfaceWord& w, int variant, bool positive = true) {
    check_letters(w);
    size_t L = w.letters.size();
    if (L == 0) return 0;
    int total = 0;
    for (size_t k = 0; k + 1 < L; ++k)
        total += he_pair(w.g, w.letters[k], w.letters[k + 1], positive);
    if (variant == 0) total += he_pair(w.g, w.letters[L - 1], w.letters[0], positive);
    return total;
}

namespace detail {

// all (rotation, length) cyclic subwords of w matching a cyclic subword of
// r^{eps}, paired with the complement word c^{-1} where (subword)c ~_c r^{eps}
struct RelatorMove {
    size_t start, len;
    std::vector<int> replacement;
};

inline std::vector<RelatorMove> relator_moves(const std::vector<int>& w, int g,
                                              size_t min_len) {
    std::vector<RelatorMove> out;
    std::vector<int> r = relator(g).letters;
    size_t R = r.size(), L = w.size();
    if (L == 0) return out;
    for (int eps : {1, -1}) {
        std::vector<int> rr = (eps == 1) ? r : inverse_word(r);
        for (size_t start = 0; start < L; ++start)
            for (size_t len = min_len; len <= std::min(L, R); ++len) {
                std::vector<int> b(len);
                for (size_t t = 0; t < len; ++t) b[t] = w[(start + t) % L];
                // find a rotation of rr beginning with b
                for (size_t s = 0; s < R; ++s) {
                    bool ok = true;
                    for (size_t t = 0; t < len && ok; ++t)
                        if (rr[(s + t) % R] != b[t]) ok = false;
                    if (!ok) continue;
                    std::vector<int> c;
                    for (size_t t = len; t < R; ++t) c.push_back(rr[(s + t) % R]);
                    out.push_back({start, len, inverse_word(c)});
                    break;
                }
            }
    }
    return out;
}

inline std::vector<int> apply_move(const std::vector<int>& w, const RelatorMove& mv) {
    size_t L = w.size();
    std::vector<int> rot;
    for (size_t t = 0; t < L; ++t) rot.push_back(w[(mv.start + t) % L]);
    std::vector<int> out = mv.replacement;
    out.insert(out.end(), rot.begin() + static_cast<long>(mv.len), rot.end());
    return out;
}

inline std::vector<int> min_rotation(const std::vector<int>& w) {
    if (w.empty()) return w;
    std::vector<int> best = w;
    for (size_t s = 1; s < w.size(); ++s) {
        std::vector<int> rot;
        for (size_t t = 0; t < w.size(); ++t) rot.push_back(w[(s + t) % w.size()]);
        if (rot < best) best = rot;
    }
    return best;
}

}  // namespace detail

/**
 * Dehn's word-problem algorithm: free reduction plus replacement of cyclic
 * subwords strictly longer than |r|/2 matching r or r^{-1}. At genus 1 the
 * group is abelian and exponent sums decide.
 */
inline bool is_identity(const SurfaceWord& w0) {
    check_letters(w0);
    if (w0.g == 1) {
        long ea = 0, eb = 0;
        for (int x : w0.letters) (std::abs(x) == 1 ? ea : eb) += (x > 0 ? 1 : -1);
        return ea == 0 && eb == 0;
    }
    std::vector<int> w = cyclic_reduce(w0).letters;
    size_t half = 2 * static_cast<size_t>(w0.g);
    while (true) {
        if (w.empty()) return true;
        auto moves = detail::relator_moves(w, w0.g, half + 1);
        if (moves.empty()) return false;
        w = cyclic_reduce(SurfaceWord{w0.g, detail::apply_move(w, moves[0])}).letters;
    }
}

/**
 * A cyclically shortest representative of the conjugacy class of w: greedy
 * application of strictly shortening relator replacements, interleaved with a
 * breadth-first sweep over the length-preserving half-relator replacements so
 * that shortenings hidden behind chains are still found. Returns the
 * lexicographically least rotation among the final shortest component.
 */
inline SurfaceWord dehn_shorten(const SurfaceWord& w0) {
    check_letters(w0);
    size_t half = 2 * static_cast<size_t>(w0.g);
    std::vector<int> cur = cyclic_reduce(w0).letters;
    while (true) {
        // component of words of the current length under moves with |b| >= 2g
        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> frontier{detail::min_rotation(cur)};
        seen.insert(frontier[0]);
        std::vector<int> shorter;
        bool found = false;
        while (!frontier.empty() && !found) {
            std::vector<std::vector<int>> next;
            for (const auto& u : frontier) {
                for (const auto& mv : detail::relator_moves(u, w0.g, half)) {
                    auto v = cyclic_reduce(SurfaceWord{w0.g, detail::apply_move(u, mv)}).letters;
                    if (v.size() < u.size()) {
                        shorter = v;
                        found = true;
                        break;
                    }
                    if (v.size() == u.size()) {
                        v = detail::min_rotation(v);
                        if (seen.insert(v).second) next.push_back(v);
                    }
                }
                if (found) break;
            }
            frontier = std::move(next);
        }
        if (!found) return SurfaceWord{w0.g, *seen.begin()};
        cur = shorter;
    }
}

/**
 * Exhaustive-search oracle for the shortest cyclic length in the conjugacy
 * class: breadth-first search over all relator replacements (any matched
 * length >= 1), allowing intermediate growth up to |w| + slack.
 */
inline size_t bfs_conjugacy_length(const SurfaceWord& w0, size_t slack,
                                   size_t state_cap = 200000) {
    check_letters(w0);
    std::vector<int> start = detail::min_rotation(cyclic_reduce(w0).letters);
    size_t cap = start.size() + slack;
    std::set<std::vector<int>> seen{start};
    std::vector<std::vector<int>> frontier{start};
    size_t best = start.size();
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& u : frontier)
            for (const auto& mv : detail::relator_moves(u, w0.g, 1)) {
                auto v = cyclic_reduce(SurfaceWord{w0.g, detail::apply_move(u, mv)}).letters;
                if (v.size() > cap) continue;
                v = detail::min_rotation(v);
                if (!seen.insert(v).second) continue;
                best = std::min(best, v.size());
                next.push_back(v);
                if (seen.size() > state_cap)
                    throw std::runtime_error("bfs_conjugacy_length: state cap exceeded");
            }
        frontier = std::move(next);
    }
    return best;
}

// longest cyclic subword of w matching a cyclic subword of r (blocs are
// defined against r only)
inline size_t longest_bloc(const SurfaceWord& w) {
    std::vector<int> r = relator(w.g).letters;
    size_t L = w.letters.size(), best = 0;
    for (size_t s = 0; s < L; ++s)
        for (size_t len = 1; len <= std::min(L, r.size()); ++len) {
            std::vector<int> b(len);
            for (size_t t = 0; t < len; ++t) b[t] = w.letters[(s + t) % L];
            if (cyclic_subword(b, r)) best = std::max(best, len);
        }
    return best;
}

/**
 * Does w contain a long chain b_1...b_l (l >= 2): blocs with interior lengths
 * exactly 2g-1, junction he = 1, and |b_1|, |b_l| >= 2g?
 */
inline bool has_long_chain(const SurfaceWord& w) {
    std::vector<int> r = relator(w.g).letters;
    size_t L = w.letters.size(), tg = 2 * static_cast<size_t>(w.g);
    if (L == 0) return false;
    auto at = [&](size_t i) { return w.letters[i % L]; };
    auto is_bloc = [&](size_t s, size_t len) {
        if (len > L) return false;
        std::vector<int> b(len);
        for (size_t t = 0; t < len; ++t) b[t] = at(s + t);
        return cyclic_subword(b, r);
    };
    // cancelling pairs make he_pair throw; a cyclically reduced word never
    // queries them except across the wrap of a non-cyclically-reduced input
    auto junction = [&](size_t i, size_t j) {
        int a = at(i), b = at(j);
        if (b == -a) return -1;
        return he_pair(w.g, a, b);
    };
    // can a chain tail start at position s: interior blocs of length exactly
    // 2g-1 joined through he = 1, finished by an endpoint bloc of length >= 2g,
    // all fitting inside the remaining budget of letters
    auto tail_ok = [&](auto&& self, size_t s, size_t budget) -> bool {
        for (size_t len = tg; len <= std::min({budget, L, r.size()}); ++len)
            if (is_bloc(s, len)) return true;
        if (budget >= tg - 1 + tg && is_bloc(s, tg - 1) &&
            junction(s + tg - 2, s + tg - 1) == 1)
            if (self(self, (s + tg - 1) % L, budget - (tg - 1))) return true;
        return false;
    };
    for (size_t s = 0; s < L; ++s)
        for (size_t len = tg; len <= std::min(L, r.size()); ++len) {
            if (!is_bloc(s, len)) continue;
            size_t j = (s + len) % L;
            if (len + tg <= L && junction(s + len - 1, j) == 1 &&
                tail_ok(tail_ok, j, L - len))
                return true;
        }
    return false;
}

}  // namespace ym2
