#include <doctest.h>

#include <cmath>
#include <set>

#include "ym2/maps_irf.hpp"

using namespace ym2;

namespace {

// figure eight on the sphere: one 4-valent vertex, faces 0 = right lobe,
// 1 = outer, 2 = left lobe, one loop through both edges
LoopConfiguration figure_eight() {
    GeneralisedMap mp;
    mp.theta = {2, 0, 3, 1};
    mp.left = {0, 1, 1, 2};
    mp.face_genus = {0, 0, 0};
    return {mp, {{0, 2}}};
}

// field on the figure eight anchored at the outer face: right lobe steps down
// by omega_i, left lobe up by omega_j
WeightField eight_field(const HighestWeight& alpha, int i, int j) {
    HighestWeight rl = alpha, ll = alpha;
    rl.e[static_cast<size_t>(i - 1)] -= 1;
    ll.e[static_cast<size_t>(j - 1)] += 1;
    return {{rl, alpha, ll}};
}

// two circles crossing twice on the sphere: faces 0 = outer, 1 = left disc,
// 2 = right disc, 3 = central lens, vertices at the two crossings
LoopConfiguration lens() {
    GeneralisedMap mp;
    mp.theta = {7, 5, 6, 4, 0, 2, 1, 3};
    mp.left = {1, 0, 3, 2, 3, 1, 2, 0};
    mp.face_genus = {0, 0, 0, 0};
    return {mp, {{0, 2}, {4, 6}}};
}

WeightField lens_field(const HighestWeight& x, int i1, int i2) {
    // edges of loop A step by omega_{i1}, edges of loop B by omega_{i2}
    HighestWeight l = x, r = x, o = x;
    l.e[static_cast<size_t>(i2 - 1)] += 1;
    r.e[static_cast<size_t>(i1 - 1)] += 1;
    o.e[static_cast<size_t>(i1 - 1)] += 1;
    o.e[static_cast<size_t>(i2 - 1)] += 1;
    return {{o, l, r, x}};
}

Real rdiff(const Real& a, const Real& b) { return abs(a - b); }

}  // namespace

TEST_CASE("map topology of the reference configurations") {
    auto tf = map_topology(two_face_config(2).map);
    CHECK(tf.n_vertices == 1);
    CHECK(tf.genus == 2);
    CHECK(tf.chi_f == std::vector<int>{-3, 1});

    auto fe = map_topology(figure_eight().map);
    CHECK(fe.n_vertices == 1);
    CHECK(fe.genus == 0);
    CHECK(fe.chi_f == std::vector<int>{1, 1, 1});

    auto ln = map_topology(lens().map);
    CHECK(ln.n_vertices == 2);
    CHECK(ln.genus == 0);
    CHECK(ln.chi_f == std::vector<int>{1, 1, 1, 1});

    auto pp = map_topology(parallel_pair_config().map);
    CHECK(pp.genus == 2);
    CHECK(pp.k_f == std::vector<int>{2, 2});
    CHECK(pp.chi_f == std::vector<int>{-2, 0});

    GeneralisedMap bad = figure_eight().map;
    bad.left[3] = 1;  // boundary walk of the left lobe mislabeled
    CHECK_THROWS_AS(map_topology(bad), std::domain_error);
    GeneralisedMap twice;  // two circles with no shared face are not connected
    twice.theta = {1, 0, 3, 2};
    twice.left = {0, 1, 2, 3};
    twice.face_genus = {0, 0, 0, 0};
    CHECK_THROWS_AS(map_topology(twice), std::domain_error);
}

TEST_CASE("loop configuration corners and change-corner counts") {
    auto fe = analyze_config(figure_eight());
    CHECK(fe.m_f == std::vector<int>{0, 2, 0});
    REQUIRE(fe.corners[0].has_value());
    CHECK(fe.corners[0]->s == 1);
    CHECK(fe.corners[0]->n == 1);

    auto ln = analyze_config(lens());
    CHECK(ln.m_f == std::vector<int>{0, 2, 2, 0});

    // face-exponent sum chi - m/2 equals 2-2g on every configuration
    for (const auto& cfg : {figure_eight(), lens(), two_face_config(2), parallel_pair_config()}) {
        auto data = analyze_config(cfg);
        int acc = 0;
        for (size_t f = 0; f < data.m_f.size(); ++f)
            acc += data.topo.chi_f[f] - data.m_f[f] / 2;
        CHECK(acc == 2 - 2 * data.topo.genus);
    }

    // a loop that turns at the vertex is rejected
    LoopConfiguration turning = figure_eight();
    turning.loops = {{0, 3}};
    CHECK_THROWS_AS(analyze_config(turning), std::domain_error);
    LoopConfiguration doubled = figure_eight();
    doubled.loops = {{0, 2}, {1, 3}};
    CHECK_THROWS_AS(analyze_config(doubled), std::domain_error);
}

TEST_CASE("field indices accept box steps and reject everything else") {
    auto cfg = figure_eight();
    auto data = analyze_config(cfg);
    WeightField f = eight_field({{3, 1, 0}}, 2, 1);
    auto idx = field_indices(cfg, data, f, Group::U);
    CHECK(idx[0] == 2);
    CHECK(idx[2] == 1);

    WeightField bad = f;
    bad.lambda[0].e[0] += 5;
    CHECK_THROWS_AS(field_indices(cfg, data, bad, Group::U), std::domain_error);

    // passive edge must carry equal weights
    LoopConfiguration split;
    split.map.theta = {1, 0, 3, 2};
    split.map.left = {0, 1, 1, 2};
    split.map.face_genus = {2, 0, 0};
    split.loops = {{0}};
    auto sdata = analyze_config(split);
    WeightField good{{zero_weight(2), {{1, 0}}, {{1, 0}}}};
    CHECK(field_indices(split, sdata, good, Group::U)[0] == 1);
    WeightField uneq{{zero_weight(2), {{1, 0}}, {{2, 0}}}};
    CHECK_THROWS_AS(field_indices(split, sdata, uneq, Group::U), std::domain_error);
}

TEST_CASE("vertex classification on figure-eight tangencies") {
    auto cfg = figure_eight();
    auto data = analyze_config(cfg);

    // equal-entry weight: the orientation convention keeps r away from zero
    WeightField f = eight_field({{1, 1}}, 2, 1);
    auto idx = field_indices(cfg, data, f, Group::U);
    VertexClass cl = classify_vertex(0, cfg, data, f, idx);
    CHECK(cl.contact);
    CHECK(cl.a == 2);
    CHECK(cl.b == 1);
    CHECK(cl.r == 2);

    // an (a,a)-point is a contact with theta = 0
    WeightField g = eight_field({{2, 0}}, 1, 1);
    auto gidx = field_indices(cfg, data, g, Group::U);
    VertexClass gl = classify_vertex(0, cfg, data, g, gidx);
    CHECK(gl.contact);
    CHECK(gl.a == gl.b);
    CHECK(gl.r == 1);
    IrfTerm gt = irf_term(cfg, data, g, {{Rat(1), Rat(1), Rat(1)}}, Group::U);
    CHECK(rdiff(gt.angle, Real(1)) < 1e-30);

    // every valid field at this vertex is a contact, r never vanishes, and
    // the two dimension forms agree (checked inside irf_term)
    for (long a1 = -2; a1 <= 3; ++a1)
        for (long a2 = -2; a2 <= a1; ++a2)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j) {
                    WeightField h = eight_field({{a1, a2}}, i, j);
                    if (!h.lambda[0].valid() || !h.lambda[2].valid()) continue;
                    auto hidx = field_indices(cfg, data, h, Group::U);
                    VertexClass hl = classify_vertex(0, cfg, data, h, hidx);
                    CHECK(hl.contact);
                    CHECK(hl.r != 0);
                    IrfTerm t = irf_term(cfg, data, h, {{Rat(1), Rat(2), Rat(1)}}, Group::U);
                    CHECK(abs(t.angle) <= Real(1) + Real(1e-30));
                }
}

TEST_CASE("lens crossings: r values, parity and the trigonometric factor") {
    auto cfg = lens();
    auto data = analyze_config(cfg);
    WeightField f = lens_field({{1, 0}}, 1, 2);
    auto idx = field_indices(cfg, data, f, Group::U);
    VertexClass v0 = classify_vertex(0, cfg, data, f, idx);
    VertexClass v1 = classify_vertex(1, cfg, data, f, idx);
    CHECK_FALSE(v0.contact);
    CHECK_FALSE(v1.contact);
    CHECK(v0.a == 1);
    CHECK(v0.b == 2);
    CHECK(v0.r == -2);
    CHECK(v1.a == 2);
    CHECK(v1.b == 1);
    CHECK(v1.r == 2);

    IrfTerm t = irf_term(cfg, data, f, {{Rat(1), Rat(1), Rat(1), Rat(1)}}, Group::U);
    CHECK(rdiff(t.angle, Real(3) / 4) < 1e-30);
    CHECK(t.dim == Rat(4));  // d_outer * d_lens, the side discs drop out

    // crossing parity: the (a,b) and (b,a) crossing counts balance per field
    for (long x1 = 0; x1 <= 2; ++x1)
        for (int i1 = 1; i1 <= 2; ++i1)
            for (int i2 = 1; i2 <= 2; ++i2) {
                WeightField h = lens_field({{x1, 0}}, i1, i2);
                bool ok = true;
                for (const auto& w : h.lambda) ok = ok && w.valid();
                if (!ok) continue;
                auto hidx = field_indices(cfg, data, h, Group::U);
                std::multiset<std::pair<int, int>> fw, bw;
                for (int v : {0, 1}) {
                    VertexClass cl = classify_vertex(v, cfg, data, h, hidx);
                    if (cl.contact) continue;
                    fw.insert({cl.a, cl.b});
                    bw.insert({cl.b, cl.a});
                }
                CHECK(fw == bw);
            }

    // same-label fields are contacts and pass the dimension cross-check
    WeightField c = lens_field({{2, 0}}, 1, 1);
    auto cidx = field_indices(cfg, data, c, Group::U);
    CHECK(classify_vertex(0, cfg, data, c, cidx).contact);
    CHECK(classify_vertex(1, cfg, data, c, cidx).contact);
    irf_term(cfg, data, c, {{Rat(1), Rat(1), Rat(1), Rat(1)}}, Group::U);
}

TEST_CASE("empty multicurve evaluates to one exactly") {
    LoopConfiguration cfg = two_face_config(2);
    cfg.loops.clear();
    WilsonOptions opt{Group::U, 4, 2};
    WilsonResult r = wilson_expectation(cfg, {{Rat(3), Rat(1)}}, 2, opt);
    CHECK(rdiff(r.value, Real(1)) < 1e-30);
    CHECK(r.fields > 0);
}

TEST_CASE("two-face expectation matches the character/Pieri oracle at N=3") {
    WilsonOptions opt{Group::U, 8, 4};
    WilsonResult r = wilson_expectation(two_face_config(2), {{Rat(3), Rat(1)}}, 3, opt);
    Real oracle = two_face_oracle(3, 2, Rat(1), Rat(4), opt);
    CHECK(rdiff(r.value, oracle) < 1e-6);
    CHECK(r.value > 0);
    CHECK(r.value < 1);

    // stable under raising the cutoff
    WilsonOptions smaller{Group::U, 6, 3};
    Real v2 = wilson_expectation(two_face_config(2), {{Rat(3), Rat(1)}}, 3, smaller).value;
    CHECK(rdiff(r.value, v2) < 1e-4);
}

TEST_CASE("two-face expectation trends to the master-field value e^{-t/2}") {
    Real target = exp(Real(-1) / 2);
    WilsonOptions opt{Group::U, 6, 3};
    Real prev(-1);
    for (int N = 2; N <= 6; ++N) {
        Real v = wilson_expectation(two_face_config(2), {{Rat(3), Rat(1)}}, N, opt).value;
        Real d = rdiff(v, target);
        if (N > 2) CHECK(d <= prev + Real(1e-12));
        prev = d;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("field enumeration agrees with independent generation on the lens") {
    const int N = 2, k = 2, cc = 1;
    WilsonOptions opt{Group::U, k, cc};
    AreaVector area{{Rat(1), Rat(1), Rat(1), Rat(1)}};
    WilsonResult r = wilson_expectation(lens(), area, N, opt);

    // brute force: all four faces over a box, filtered by every edge
    auto cfg = lens();
    auto data = analyze_config(cfg);
    std::vector<HighestWeight> all;
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= a; ++b) all.push_back({{a, b}});
    long count = 0;
    for (const auto& root : detail::root_weights(N, opt))
        for (const auto& l1 : all)
            for (const auto& l2 : all)
                for (const auto& l3 : all) {
                    std::vector<HighestWeight> lam{root, l1, l2, l3};
                    bool ok = true;
                    for (int i = 0; i < 4 && ok; ++i)
                        ok = detail::edge_consistent(cfg, data, lam, i, Group::U);
                    if (ok) ++count;
                }
    CHECK(count == r.fields);
    CHECK(count > 0);
}

TEST_CASE("path second moment is exactly 1/N^2") {
    for (int N = 1; N <= 6; ++N) CHECK(path_second_moment(N) == Rat(1) / (Rat(N) * N));
}

TEST_CASE("partition function: ABG value, monotonicity, large-N limit") {
    PartitionResult abg = partition_function(2, 2, Rat(0), Group::SU, 400);
    Real target = to_real(Rat(1)) * 0;
    {
        // pi^2/6 at 40 digits
        Real pi = acos(Real(-1));
        target = pi * pi / 6;
    }
    CHECK(rdiff(abg.value, target) <= abg.tail_bound);
    CHECK(abg.tail_bound < 1e-2);

    Real z1 = partition_function(3, 2, Rat(1), Group::SU, 20).value;
    Real z2 = partition_function(3, 2, Rat(2), Group::SU, 20).value;
    CHECK(z2 < z1);
    CHECK(z1 < partition_function(3, 2, Rat(0), Group::SU, 20).value);

    // SU tends to one at large N (the U determinant charges never decay)
    Real zs = partition_function(8, 2, Rat(2), Group::SU, 3).value;
    CHECK(zs > 1);
    CHECK(zs < Real(102) / 100);
    Real zu = partition_function(8, 2, Rat(2), Group::U, 3, 3).value;
    CHECK(zu > zs);

    CHECK_THROWS_AS(partition_function(3, 2, Rat(0), Group::U, 10), std::domain_error);
}

TEST_CASE("string expansion blocks match the central-character route") {
    auto blocks = string_expansion_check(8, 2, rat(1, 2), 3, 8);
    CHECK(blocks.size() == 9);
    for (const auto& b : blocks) {
        Real scale = abs(b.lhs) > 1 ? abs(b.lhs) : Real(1);
        CHECK(rdiff(b.lhs, b.rhs) < Real(1e-9) * scale);
        Real scale_u = abs(b.lhs_u) > 1 ? abs(b.lhs_u) : Real(1);
        CHECK(rdiff(b.lhs_u, b.rhs_u) < Real(1e-9) * scale_u);
    }
}

TEST_CASE("refinement invariance of the two-face expectation") {
    WilsonOptions opt{Group::U, 5, 2};
    RefinementReport rep = refinement_invariance_test(3, Rat(1), Rat(3), opt);
    CHECK(rep.max_diff < 1e-25);
    CHECK(rep.base > 0);
}

TEST_CASE("second moment probe: N^{-2} bound and IRF value") {
    SurfaceWord a1{2, {1}};
    auto rows = second_moment_decay_probe(2, a1, {3, 4, 5, 6, 7, 8}, Rat(2), 4);
    REQUIRE(rows.size() == 6);
    double slope = std::log(static_cast<double>(rows.back().bound / rows.front().bound)) /
                   std::log(8.0 / 3.0);
    CHECK(slope > -2.2);
    CHECK(slope < -1.8);
    for (const auto& row : rows) {
        REQUIRE(row.irf_value.has_value());
        CHECK(*row.irf_value > 0);
        CHECK(*row.irf_value <= row.bound);
    }
    // the IRF value itself decays at the 1/N^2 rate
    Real ratio = *rows.back().irf_value / *rows.front().irf_value;
    CHECK(ratio < pow(Real(3) / 8, Real(3) / 2));

    SurfaceWord rel{2, relator(2).letters};
    CHECK_THROWS_AS(second_moment_decay_probe(2, rel, {3}, Rat(2), 4), std::domain_error);
}

TEST_CASE("wilson expectation input validation") {
    WilsonOptions opt{Group::U, 3, 1};
    CHECK_THROWS_AS(wilson_expectation(two_face_config(2), {{Rat(0), Rat(0)}}, 2, opt),
                    std::domain_error);
    CHECK_THROWS_AS(wilson_expectation(two_face_config(2), {{Rat(1), Rat(-1)}}, 2, opt),
                    std::domain_error);
    CHECK_THROWS_AS(wilson_expectation(two_face_config(2), {{Rat(1)}}, 2, opt),
                    std::domain_error);
}
