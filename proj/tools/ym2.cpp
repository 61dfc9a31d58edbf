#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ym2/brauer_maps.hpp"
#include "ym2/maps_irf.hpp"
#include "ym2/newton_wick.hpp"
#include "ym2/surface_words.hpp"
#include "ym2/walled_brauer.hpp"
#include "ym2/weights.hpp"
#include "ym2/witten_zeta.hpp"

using json = nlohmann::ordered_json;
using namespace ym2;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string rat_str(const Rat& r) { return r.get_str(); }

std::string real_str(const Real& v) { return v.str(30); }

Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw CLI::ValidationError("rational", "cannot parse '" + s + "' as p/q");
    }
}

Partition parse_partition(const std::string& s) {
    Partition p;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        int v = std::stoi(tok);
        if (v <= 0) throw CLI::ValidationError("partition", "parts must be positive");
        p.push_back(v);
    }
    for (size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[i - 1]) throw CLI::ValidationError("partition", "parts must be weakly decreasing");
    return p;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
    return out;
}

// words as whitespace-separated tokens a1, b1, a1^-1, ...; a_i = 2i-1, b_i = 2i
SurfaceWord parse_word(int g, const std::string& s) {
    SurfaceWord w{g, {}};
    std::stringstream ss(s);
    std::string tok;
    while (ss >> tok) {
        bool inv = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inv = true;
            tok = tok.substr(0, tok.size() - 3);
        }
        if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'b'))
            throw CLI::ValidationError("word", "bad token '" + tok + "'");
        int idx = std::stoi(tok.substr(1));
        if (idx < 1 || idx > g) throw CLI::ValidationError("word", "generator index out of range");
        int letter = tok[0] == 'a' ? 2 * idx - 1 : 2 * idx;
        w.letters.push_back(inv ? -letter : letter);
    }
    return w;
}

std::string word_str(const SurfaceWord& w) {
    std::string out;
    for (int x : w.letters) {
        int v = std::abs(x);
        if (!out.empty()) out += ' ';
        out += (v % 2 == 1 ? 'a' : 'b');
        out += std::to_string((v + 1) / 2);
        if (x < 0) out += "^-1";
    }
    return out;
}

json poly_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p.c) a.push_back(rat_str(c));
    return a;
}

json ratfun_json(const ExactScalar& v) {
    return json{{"num", poly_json(v.num())}, {"den", poly_json(v.den())}};
}

// Laurent expansion in 1/N: value = N^{leading_power} * sum_i series[i] N^{-i}
json series_json(const ExactScalar& v, int order) {
    json out;
    if (v.is_zero()) {
        out["leading_power"] = 0;
        out["series"] = json::array();
        return out;
    }
    const Poly &nu = v.num(), &de = v.den();
    out["leading_power"] = nu.degree() - de.degree();
    auto rev = [](const Poly& p) {
        std::vector<Rat> r(p.c.rbegin(), p.c.rend());
        return r;
    };
    std::vector<Rat> a = rev(nu), b = rev(de);
    std::vector<Rat> c(static_cast<size_t>(order) + 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i) {
        Rat acc = i < a.size() ? a[i] : Rat(0);
        for (size_t j = 1; j <= i && j < b.size(); ++j) acc -= b[j] * c[i - j];
        c[i] = acc / b[0];
    }
    json s = json::array();
    for (const auto& v2 : c) s.push_back(rat_str(v2));
    out["series"] = s;
    return out;
}

json diagram_json(const WalledDiagram& d) {
    json a = json::array();
    for (int v : d.p) a.push_back(v);
    return a;
}

json partition_json(const Partition& p) {
    json a = json::array();
    for (int v : p) a.push_back(v);
    return a;
}

json element_table(const BrauerElement& el, int order) {
    json rows = json::array();
    for (const auto& [d, c] : el.terms) {
        json row;
        row["diagram"] = diagram_json(d);
        row["h"] = horizontal_count(d);
        row["coeff"] = ratfun_json(c);
        row["expansion"] = series_json(c, order);
        rows.push_back(row);
    }
    return rows;
}

void emit(const json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << text;
    }
}

json make_report(const std::string& sub, json params, json results, json certs) {
    return json{{"subcommand", sub},
                {"params", std::move(params)},
                {"results", std::move(results)},
                {"certificates", std::move(certs)},
                {"version", kVersion}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for large-N 2D Yang-Mills"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write JSON report to file instead of stdout");

    // dim
    auto* dim = app.add_subcommand("dim", "Weyl and Omega-route dimensions");
    int dim_N = 5;
    std::string dim_lam = "1", dim_mu;
    dim->add_option("--N", dim_N, "rank")->required();
    dim->add_option("--lambda", dim_lam, "partition, comma separated");
    dim->add_option("--mu", dim_mu, "partition, comma separated");

    // zeta
    auto* zeta_cmd = app.add_subcommand("zeta", "Witten zeta values with tail certificates");
    std::string zeta_group = "su", zeta_s = "2", zeta_q;
    int zeta_N = 2, zeta_cutoff = 10, zeta_charge = -1;
    zeta_cmd->add_option("--group", zeta_group, "su or u");
    zeta_cmd->add_option("--s", zeta_s, "exponent (rational)");
    zeta_cmd->add_option("--q", zeta_q, "Casimir damping base in (0,1), rational");
    zeta_cmd->add_option("--N", zeta_N, "rank")->required();
    zeta_cmd->add_option("--cutoff", zeta_cutoff, "class size cutoff k");
    zeta_cmd->add_option("--charge-cutoff", zeta_charge, "U(1) charge cutoff");

    // projector
    auto* proj = app.add_subcommand("projector", "traceless projector coefficient table");
    int proj_n = 1, proj_m = 1;
    proj->add_option("--n", proj_n)->required();
    proj->add_option("--m", proj_m)->required();

    // omega
    auto* om = app.add_subcommand("omega", "Omega / Weingarten tables and 1/N expansions");
    int om_n = 1, om_m = 1, om_order = 4;
    om->add_option("--n", om_n)->required();
    om->add_option("--m", om_m)->required();
    om->add_option("--order", om_order, "1/N expansion order");

    // gross-taylor
    auto* gt = app.add_subcommand("gross-taylor", "Wick expansions and Haar moments");
    int gt_N = 3;
    std::string gt_lam = "1", gt_mu = "1";
    gt->add_option("--N", gt_N)->required();
    gt->add_option("--lambda", gt_lam);
    gt->add_option("--mu", gt_mu);

    // dehn
    auto* dehn = app.add_subcommand("dehn", "Dehn shortening and the word problem");
    int dehn_g = 2;
    std::string dehn_word;
    dehn->add_option("--genus", dehn_g)->required();
    dehn->add_option("--word", dehn_word)->required();

    // brauer-census
    auto* census = app.add_subcommand("brauer-census", "geo-bound census report");
    int cen_g = 2, cen_n = 1, cen_m = 0;
    std::string cen_word = "a1";
    census->add_option("--genus", cen_g)->required();
    census->add_option("--word", cen_word)->required();
    census->add_option("--n", cen_n);
    census->add_option("--m", cen_m);

    // irf
    auto* irf = app.add_subcommand("irf", "Wilson expectations with tail certificates");
    std::string irf_config = "two-face", irf_areas = "3,1", irf_group = "u";
    int irf_N = 3, irf_cutoff = 8, irf_charge = 4, irf_genus = 2;
    irf->add_option("--config", irf_config, "two-face | figure-eight | lens | parallel-pair");
    irf->add_option("--areas", irf_areas, "face areas, comma separated rationals");
    irf->add_option("--N", irf_N)->required();
    irf->add_option("--group", irf_group, "u or su");
    irf->add_option("--cutoff", irf_cutoff, "root weight size cutoff");
    irf->add_option("--charge-cutoff", irf_charge, "U(1) charge cutoff");
    irf->add_option("--genus", irf_genus, "outer-face genus for two-face");

    // partition-fn
    auto* pf = app.add_subcommand("partition-fn", "partition function and string expansion");
    int pf_N = 2, pf_g = 2, pf_cutoff = 50, pf_charge = 6, pf_cap = 0;
    std::string pf_T = "0", pf_group = "su", pf_q = "1/2";
    pf->add_option("--N", pf_N)->required();
    pf->add_option("--genus", pf_g);
    pf->add_option("--T", pf_T, "total area (rational)");
    pf->add_option("--group", pf_group, "su or u");
    pf->add_option("--cutoff", pf_cutoff);
    pf->add_option("--charge-cutoff", pf_charge);
    pf->add_option("--string-cap", pf_cap, "if > 0, run the string-expansion comparison");
    pf->add_option("--string-q", pf_q, "q for the string comparison");

    CLI11_PARSE(app, argc, argv);

    try {
        json report;
        if (*dim) {
            Partition lam = parse_partition(dim_lam), mu = parse_partition(dim_mu);
            if (dim_N > 64 || psize(lam) + psize(mu) > 12)
                throw InfeasibleError("cap: N <= 64 and |lambda|+|mu| <= 12");
            HighestWeight w = make_weight(lam, mu, dim_N);
            Rat weyl = weyl_dimension(w);
            ExactScalar om_route = dim_from_omega(lam, mu, dim_N);
            json params{{"N", dim_N}, {"lambda", partition_json(lam)}, {"mu", partition_json(mu)}};
            json results = json::array();
            results.push_back({{"name", "weyl_dimension"}, {"value", rat_str(weyl)}});
            results.push_back({{"name", "omega_route_dimension"}, {"value", rat_str(om_route.to_rat())}});
            report = make_report("dim", params, results, json{{"weyl_dimension", "exact"}, {"omega_route_dimension", "exact"}});
        } else if (*zeta_cmd) {
            if (zeta_cutoff > 2000) throw InfeasibleError("cap: cutoff <= 2000");
            ZetaQuery q;
            q.group = zeta_group == "u" ? Group::U : Group::SU;
            q.s = parse_rat(zeta_s);
            q.N = zeta_N;
            q.size_cutoff = zeta_cutoff;
            if (!zeta_q.empty()) q.q = to_real(parse_rat(zeta_q));
            if (zeta_charge >= 0) q.charge_cutoff = zeta_charge;
            ZetaResult r = zeta(q);
            json params{{"group", zeta_group}, {"s", zeta_s}, {"N", zeta_N},
                        {"cutoff", zeta_cutoff}};
            if (!zeta_q.empty()) params["q"] = zeta_q;
            if (zeta_charge >= 0) params["charge_cutoff"] = zeta_charge;
            json results = json::array();
            results.push_back({{"name", "partial_sum"}, {"value", real_str(r.partial_sum)},
                               {"terms", r.terms_used}});
            report = make_report("zeta", params, results,
                                 json{{"partial_sum", real_str(r.tail_bound)}});
        } else if (*proj) {
            if (proj_n + proj_m > 5) throw InfeasibleError("cap: n + m <= 5");
            const BrauerElement& p = traceless_projector(proj_n, proj_m);
            json params{{"n", proj_n}, {"m", proj_m}};
            json results = json::array();
            results.push_back({{"name", "q_coefficients"}, {"rows", element_table(p, 4)}});
            report = make_report("projector", params, results,
                                 json{{"q_coefficients", "exact"}});
        } else if (*om) {
            if (om_n + om_m > 5) throw InfeasibleError("cap: n + m <= 5");
            json params{{"n", om_n}, {"m", om_m}, {"order", om_order}};
            json results = json::array();
            results.push_back({{"name", "omega"},
                               {"rows", element_table(omega_mixed(om_n, om_m), om_order)}});
            results.push_back({{"name", "weingarten"},
                               {"rows", element_table(weingarten_mixed(om_n, om_m), om_order)}});
            report = make_report("omega", params, results,
                                 json{{"omega", "exact"}, {"weingarten", "exact"}});
        } else if (*gt) {
            Partition lam = parse_partition(gt_lam), mu = parse_partition(gt_mu);
            if (psize(lam) + psize(mu) > 8) throw InfeasibleError("cap: |lambda|+|mu| <= 8");
            ExactScalar moment = haar_moment(lam, mu, gt_N);
            json params{{"N", gt_N}, {"lambda", partition_json(lam)}, {"mu", partition_json(mu)}};
            json results = json::array();
            results.push_back({{"name", "haar_moment"}, {"value", rat_str(moment.to_rat())}});
            json rows = json::array();
            for (const auto& mon : wick_newton(lam, mu))
                rows.push_back({{"lambda", partition_json(mon.lambda)},
                                {"mu", partition_json(mon.mu)},
                                {"coeff", rat_str(mon.coeff)}});
            results.push_back({{"name", "wick_expansion"}, {"rows", rows}});
            report = make_report("gross-taylor", params, results,
                                 json{{"haar_moment", "exact"}, {"wick_expansion", "exact"}});
        } else if (*dehn) {
            SurfaceWord w = parse_word(dehn_g, dehn_word);
            SurfaceWord s = dehn_shorten(cyclic_reduce(w));
            json params{{"genus", dehn_g}, {"word", dehn_word}};
            json results = json::array();
            results.push_back({{"name", "identity"}, {"value", is_identity(w)}});
            results.push_back({{"name", "shortest"}, {"value", word_str(s)},
                               {"length", s.letters.size()}});
            if (!s.letters.empty())
                results.push_back({{"name", "cyclic_winding"}, {"value", winding(s, 0)}});
            report = make_report("dehn", params, results,
                                 json{{"identity", "exact"}, {"shortest", "exact"}});
        } else if (*census) {
            if (cen_n + cen_m > 2 || cen_g > 3)
                throw InfeasibleError("cap: n + m <= 2 and genus <= 3");
            SurfaceWord w = parse_word(cen_g, cen_word);
            CensusReport rep = verify_geo_bound(cen_g, w, cen_n, cen_m);
            json params{{"genus", cen_g}, {"word", cen_word}, {"n", cen_n}, {"m", cen_m}};
            json results = json::array();
            results.push_back({{"name", "maps"}, {"value", rep.maps}});
            results.push_back({{"name", "max_chi_minus_h"}, {"value", rep.max_chi_minus_h}});
            results.push_back({{"name", "geo_bound_holds"}, {"value", rep.all_ok}});
            report = make_report("brauer-census", params, results,
                                 json{{"geo_bound_holds", "exhaustive enumeration"}});
        } else if (*irf) {
            if (irf_cutoff > 16) throw InfeasibleError("cap: cutoff <= 16");
            LoopConfiguration cfg;
            if (irf_config == "two-face") {
                cfg = two_face_config(irf_genus);
            } else if (irf_config == "parallel-pair") {
                cfg = parallel_pair_config();
            } else if (irf_config == "figure-eight") {
                cfg.map.theta = {2, 0, 3, 1};
                cfg.map.left = {0, 1, 1, 2};
                cfg.map.face_genus = {0, 0, 0};
                cfg.loops = {{0, 2}};
            } else if (irf_config == "lens") {
                cfg.map.theta = {7, 5, 6, 4, 0, 2, 1, 3};
                cfg.map.left = {1, 0, 3, 2, 3, 1, 2, 0};
                cfg.map.face_genus = {0, 0, 0, 0};
                cfg.loops = {{0, 2}, {4, 6}};
            } else {
                throw CLI::ValidationError("config", "unknown configuration " + irf_config);
            }
            AreaVector areas{parse_rat_list(irf_areas)};
            WilsonOptions opt{irf_group == "su" ? Group::SU : Group::U, irf_cutoff, irf_charge};
            WilsonResult r = wilson_expectation(cfg, areas, irf_N, opt);
            json params{{"config", irf_config}, {"areas", irf_areas}, {"N", irf_N},
                        {"group", irf_group}, {"cutoff", irf_cutoff},
                        {"charge_cutoff", irf_charge}};
            if (irf_config == "two-face") params["genus"] = irf_genus;
            json results = json::array();
            results.push_back({{"name", "wilson_expectation"}, {"value", real_str(r.value)},
                               {"numerator", real_str(r.numerator)},
                               {"denominator", real_str(r.denominator)},
                               {"fields", r.fields}});
            report = make_report("irf", params, results,
                                 json{{"wilson_expectation", real_str(r.tail_bound)}});
        } else if (*pf) {
            if (pf_cutoff > 2000 || pf_cap > 4)
                throw InfeasibleError("cap: cutoff <= 2000 and string-cap <= 4");
            Group grp = pf_group == "u" ? Group::U : Group::SU;
            PartitionResult z =
                partition_function(pf_N, pf_g, parse_rat(pf_T), grp, pf_cutoff, pf_charge);
            json params{{"N", pf_N}, {"genus", pf_g}, {"T", pf_T}, {"group", pf_group},
                        {"cutoff", pf_cutoff}, {"charge_cutoff", pf_charge}};
            json results = json::array();
            results.push_back({{"name", "partition_function"}, {"value", real_str(z.value)},
                               {"terms", z.terms}});
            json certs{{"partition_function", real_str(z.tail_bound)}};
            if (pf_cap > 0) {
                if (pf_N <= 2 * pf_cap) throw InfeasibleError("string comparison needs N > 2*cap");
                params["string_cap"] = pf_cap;
                params["string_q"] = pf_q;
                json rows = json::array();
                for (const auto& b : string_expansion_check(pf_N, pf_g, parse_rat(pf_q), pf_cap)) {
                    rows.push_back({{"n", b.n}, {"m", b.m},
                                    {"lhs", real_str(b.lhs)}, {"rhs", real_str(b.rhs)},
                                    {"lhs_u", real_str(b.lhs_u)}, {"rhs_u", real_str(b.rhs_u)}});
                }
                results.push_back({{"name", "string_expansion"}, {"rows", rows}});
                certs["string_expansion"] = "truncated charge sum; SU blocks exact to precision";
            }
            report = make_report("partition-fn", params, results, certs);
        }
        emit(report, out_path);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
