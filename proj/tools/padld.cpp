#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "padld/germ.hpp"
#include "padld/isolation.hpp"
#include "padld/polytope.hpp"
#include "padld/report.hpp"
#include "padld/separation.hpp"

namespace {

using namespace padld;

// 0 success, 2 precondition refusal, 3 parse error, 4 internal invariant.
int exit_code(Errc c) {
    switch (c) {
        case Errc::ParseError: return 3;
        case Errc::InvariantViolation:
        case Errc::ClosedFormMismatch: return 4;
        default: return 2;
    }
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::ParseError, "cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Val parse_val(const std::string& s) {
    if (s == "inf" || s == "+inf") return Val::inf();
    return Val::of(parse_rat(s));
}

// Series system file: "dim <n>" / "trunc <D>" / "g<i> = <series>" lines.
std::vector<Series> load_series_file(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int dim = -1, trunc = -1, lineno = 0;
    std::vector<Series> out;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = line;
        while (!t.empty() && isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ls(t);
        std::string key;
        ls >> key;
        if (key == "dim") {
            if (!(ls >> dim)) throw Error(Errc::ParseError, "series file: bad dim line");
        } else if (key == "trunc") {
            if (!(ls >> trunc)) throw Error(Errc::ParseError, "series file: bad trunc line");
        } else if (key.rfind("g", 0) == 0) {
            if (dim < 1 || trunc < 1)
                throw Error(Errc::ParseError, "series file: g lines must follow dim and trunc");
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw Error(Errc::ParseError,
                            "series file line " + std::to_string(lineno) + ": expected '='");
            out.push_back(parse_series(t.substr(eq + 1), dim, trunc));
        } else {
            throw Error(Errc::ParseError,
                        "series file line " + std::to_string(lineno) + ": unknown key " + key);
        }
    }
    if (out.empty()) throw Error(Errc::ParseError, "series file has no g lines");
    return out;
}

Json val_json(const Val& v) { return v.str(); }

Json polytope_json(const Polytope& p) {
    Json verts = Json::array();
    for (const auto& v : p.verts) {
        Json row = Json::array();
        for (const auto& c : v) row.push_back(rat_str(c));
        verts.push_back(row);
    }
    return Json{{"dim", p.dim}, {"vertices", verts}};
}

int run_separate(const std::string& file, const std::vector<int>& split_idx, int trunc_override,
                 int budget, Json& report) {
    std::string text = slurp(file);
    report["inputs"][file] = fnv1a_digest(text);
    Germ g = parse_germ(text);
    if (trunc_override > 0) g = g.truncated(trunc_override);
    // the separated set must be the prefix {1..r}
    std::vector<int> idx = split_idx;
    std::sort(idx.begin(), idx.end());
    for (size_t i = 0; i < idx.size(); ++i)
        if (idx[i] != static_cast<int>(i) + 1)
            throw Error(Errc::BadSplit, "separated indices must form the prefix {1..r}");
    SplitSpec split{static_cast<int>(idx.size())};
    SeparationResult res = solve_separation(g, split, budget);
    Json f = Json::array();
    for (const auto& s : res.f) f.push_back(s.str());
    report["results"]["f"] = f;
    report["results"]["conjugated"] = print_germ(res.conjugated);
    report["results"]["radius_threshold"] =
        res.radius_bound ? Json(res.radius_bound->str()) : Json("unknown");
    report["results"]["semigroup_evidence"] = res.semigroup_evidence;
    if (!res.radius_bound)
        report["assumptions"].push_back("convergence-radius-uncertified");
    InvarianceCheck chk = verify_invariance(g, res.f, split);
    if (!chk.ok)
        throw Error(Errc::InvariantViolation,
                    "invariance re-check failed at degree " + std::to_string(chk.degree));
    report["results"]["invariance_verified_degree"] = chk.degree;
    return 0;
}

int run_newton(const std::string& file, long p, const std::string& m_str,
               const std::string& poly_str, const std::vector<std::string>& polytope_files,
               Json& report) {
    if (!polytope_files.empty()) {
        std::vector<Polytope> ps;
        for (const auto& pf : polytope_files) {
            std::string text = slurp(pf);
            report["inputs"][pf] = fnv1a_digest(text);
            ps.push_back(parse_polytope(text));
        }
        report["results"]["mixed_volume"] = rat_str(mixed_volume(ps));
        return 0;
    }
    std::string text = slurp(file);
    report["inputs"][file] = fnv1a_digest(text);
    std::vector<Series> gs = load_series_file(text);
    if (!poly_str.empty()) {
        std::vector<Val> m;
        std::istringstream is(poly_str);
        std::string part;
        while (std::getline(is, part, ',')) m.push_back(parse_val(part));
        Json faces = Json::array();
        for (const auto& g : gs) {
            DominantFace df = dominant_face(g, m, p);
            faces.push_back(Json{{"face", polytope_json(df.face)},
                                 {"min_value", val_json(df.min_value)},
                                 {"truncation_safe", df.truncation_safe}});
        }
        report["results"]["dominant_faces"] = faces;
        if (static_cast<int>(gs.size()) == gs[0].dim()) {
            RootCount rc = rabinoff_count(gs, m, p);
            report["results"]["count"] = rat_str(rc.count);
            for (const auto& a : rc.assumptions) report["assumptions"].push_back(a);
        }
        return 0;
    }
    if (gs.size() != 1 || gs[0].dim() != 1)
        throw Error(Errc::DimensionMismatch, "newton polygon needs a single 1-variable series");
    NewtonPolygon np = newton_polygon(gs[0], p);
    Json segs = Json::array();
    for (const auto& s : np.segments)
        segs.push_back(Json{{"slope", s.slope_neg_inf ? std::string("-inf") : rat_str(s.slope)},
                            {"length", rat_str(s.length)}});
    report["results"]["segments"] = segs;
    if (!m_str.empty()) {
        Val m = parse_val(m_str);
        report["results"]["count"] = count_roots_by_valuation(gs[0], m, p);
        report["results"]["m"] = m.str();
    }
    return 0;
}

int run_check_isolation(const std::string& file, long max_period, int oracle_modulus, long k_cap,
                        Json& report) {
    std::string text = slurp(file);
    report["inputs"][file] = fnv1a_digest(text);
    Germ g = parse_germ(text);
    IsolationCertificate cert = certify_isolation(g, max_period, k_cap, oracle_modulus);
    report["results"]["m_star"] = cert.m_star;
    report["results"]["K"] = cert.K;
    report["results"]["normalization_iterate"] = cert.normalization_iterate;
    report["results"]["tail_argument"] = cert.tail_argument;
    report["results"]["oracle_checked"] = cert.oracle_checked;
    report["results"]["oracle_modulus_exp"] = cert.oracle_modulus_exp;
    Json per_k = Json::array();
    for (const auto& e : cert.per_k)
        per_k.push_back(Json{{"k", e.k},
                             {"evidence", e.evidence},
                             {"candidates", e.candidates},
                             {"discounted", e.discounted}});
    report["results"]["per_k"] = per_k;
    Json mp = Json::array();
    for (const auto& [e, v] : cert.profile.minimal_polydegrees) {
        Json exps = Json::array();
        for (int x : e) exps.push_back(x);
        mp.push_back(Json{{"alpha", exps}, {"min_valuation", v.str()}});
    }
    report["results"]["profile"] = Json{{"e", cert.profile.e},
                                        {"t", rat_str(cert.profile.t)},
                                        {"minimal_polydegrees", mp}};
    report["results"]["certified"] = true;
    return 0;
}

int run_oracle(const std::string& file, long k, int M, int a, Json& report) {
    std::string text = slurp(file);
    report["inputs"][file] = fnv1a_digest(text);
    Germ g = parse_germ(text);
    auto pts = oracle_periodic_points(g, k, M, a);
    Json arr = Json::array();
    for (const auto& z : pts) {
        Json row = Json::array();
        for (auto c : z) row.push_back(std::to_string(c));
        arr.push_back(row);
    }
    report["results"]["candidates"] = arr;
    report["results"]["count"] = pts.size();
    report["results"]["modulus_exp"] = M;
    report["results"]["min_valuation"] = a;
    report["results"]["period"] = k;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local-dynamics toolkit for analytic germs over p-adic fields"};
    app.require_subcommand(1);
    long seed = 0;
    app.add_option("--seed", seed, "seed for randomized searches")->capture_default_str();

    auto* sep = app.add_subcommand("separate", "solve for the invariant subvariety x_i = f_i");
    std::string sep_file;
    std::vector<int> sep_split;
    int sep_trunc = 0, sep_budget = 16;
    sep->add_option("germ-file", sep_file)->required();
    sep->add_option("--split", sep_split, "separated coordinate indices (must be {1..r})")
        ->required()
        ->delimiter(',');
    sep->add_option("--trunc", sep_trunc, "re-truncate the germ before solving");
    sep->add_option("--budget", sep_budget, "semigroup search budget")->capture_default_str();

    auto* newt = app.add_subcommand("newton", "Newton polygon / dominant faces / mixed volume");
    std::string newt_file, newt_m, newt_poly;
    std::vector<std::string> newt_polytopes;
    long newt_p = 0;
    newt->add_option("series-file", newt_file);
    newt->add_option("--p", newt_p, "prime");
    newt->add_option("--m", newt_m, "target valuation (rational or 'inf')");
    newt->add_option("--polyvaluation", newt_poly, "comma-separated polyvaluation m1,m2,...");
    newt->add_option("--polytopes", newt_polytopes, "polytope files (mixed volume mode)")
        ->delimiter(',');

    auto* iso = app.add_subcommand("check-isolation", "certify 0 is an isolated periodic point");
    std::string iso_file;
    long iso_max_period = 0, iso_k_cap = 64;
    int iso_modulus = 0;
    iso->add_option("germ-file", iso_file)->required();
    iso->add_option("--max-period", iso_max_period, "extra oracle periods beyond the cutoff");
    iso->add_option("--oracle-modulus", iso_modulus, "override oracle modulus exponent M");
    iso->add_option("--k-cap", iso_k_cap, "largest acceptable cutoff K")->capture_default_str();

    auto* orc = app.add_subcommand("oracle", "brute-force periodic points mod p^M");
    std::string orc_file;
    long orc_k = 1;
    int orc_M = 4, orc_a = 1;
    orc->add_option("germ-file", orc_file)->required();
    orc->add_option("--period", orc_k)->required();
    orc->add_option("--modulus-exp", orc_M)->required();
    orc->add_option("--min-val", orc_a)->required();

    CLI11_PARSE(app, argc, argv);

    std::ostringstream cmdline;
    for (int i = 1; i < argc; ++i) cmdline << (i > 1 ? " " : "") << argv[i];
    Json report = make_report(cmdline.str());
    report["seed"] = seed;

    auto start = std::chrono::steady_clock::now();
    int status = 0;
    try {
        if (sep->parsed())
            status = run_separate(sep_file, sep_split, sep_trunc, sep_budget, report);
        else if (newt->parsed())
            status = run_newton(newt_file, newt_p, newt_m, newt_poly, newt_polytopes, report);
        else if (iso->parsed())
            status = run_check_isolation(iso_file, iso_max_period, iso_modulus, iso_k_cap, report);
        else if (orc->parsed())
            status = run_oracle(orc_file, orc_k, orc_M, orc_a, report);
    } catch (const Error& e) {
        report["error"] = error_payload(e);
        if (iso->parsed() && e.code() == Errc::NonIndifferentMultiplier)
            report["error"]["hint"] =
                "non-indifferent multipliers present; run 'separate' first to reduce to the "
                "indifferent coordinates";
        status = exit_code(e.code());
    } catch (const std::exception& e) {
        report["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
        status = 4;
    }
    report["timing_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << report.dump(2) << "\n";
    return status;
}
