#include "regsing/jsonio.hpp"
#include "regsing/parse.hpp"
#include "regsing/rootfind.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

using namespace regsing;

namespace {

struct Args {
    std::vector<std::string> exprs;
    std::string lambda, seed, at, potential, cat_args, symbol_coeffs;
    std::string name;
    std::string logs = "auto";
    std::string format = "json";
    std::string output;
    std::vector<std::string> candidates;
    int T = 10, X = 6, Z = 4, bound = 10;
    bool checks = false;
};

std::string str_op(const OpMatrix& p) {
    return p.m() == 1 ? to_string(p.at(0, 0)) : to_string(p);
}

// parse every expression against the union of the inferred variable counts,
// so mixed inputs land in one ring
std::vector<OpMatrix> parse_all(const std::vector<std::string>& texts, ParseOptions o) {
    std::vector<OpMatrix> out;
    for (const auto& s : texts) out.push_back(parse_expression(s, o));
    int n = o.min_walls, nx = o.min_flat;
    for (const auto& p : out) {
        n = std::max(n, p.n());
        nx = std::max(nx, p.nx());
    }
    bool redo = false;
    for (const auto& p : out)
        if (p.n() != n || p.nx() != nx) redo = true;
    if (!redo) return out;
    o.min_walls = n;
    o.min_flat = nx;
    out.clear();
    for (const auto& s : texts) out.push_back(parse_expression(s, o));
    return out;
}

Json envelope(const std::string& verb, const Args& a) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = verb;
    Json opt;
    opt["trunc_t"] = a.T;
    opt["trunc_x"] = a.X;
    opt["z_order"] = a.Z;
    j["options"] = std::move(opt);
    return j;
}

int emit(const Json& j, const Args& a, int code) {
    std::string text = dump_json(j, a.format == "compact");
    if (a.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(a.output);
        if (!f) {
            std::cerr << "cannot open output file " << a.output << "\n";
            return 2;
        }
        f << text;
    }
    return code;
}

std::vector<Scalar> required_lambda(const Args& a, int n) {
    if (a.lambda.empty()) throw ParseError("--lambda is required for this command", 1, 1);
    auto lam = parse_scalar_list(a.lambda);
    if ((int)lam.size() != n)
        throw ParseError("--lambda needs " + std::to_string(n) + " value(s)", 1, 1);
    return lam;
}

std::optional<std::vector<Scalar>> eval_point(const Args& a, int nx) {
    if (a.at.empty()) return std::nullopt;
    auto pt = parse_scalar_list(a.at);
    if ((int)pt.size() != nx)
        throw ParseError("--at needs " + std::to_string(nx) + " value(s)", 1, 1);
    return pt;
}

Json json_check(const CheckResult& r, const std::optional<MultiIndex>& witness,
                const std::string& note) {
    Json j;
    j["result"] = to_string(r);
    if (witness) j["witness"] = json_mi(*witness);
    if (!note.empty()) j["note"] = note;
    return j;
}

int run_symbol(const Args& a) {
    OpMatrix p = parse_expression(a.exprs[0], {a.T, a.X, 0, 0});
    Json j = envelope("symbol", a);
    j["input"] = str_op(p);
    j["sigma_star"] = json_sigma_matrix(p.sigma_star_matrix());
    j["sigma_bar_star"] = json_sigma_matrix(p.sigma_bar_star_matrix());
    if (!p.is_zero()) {
        int k = p.order();
        j["order"] = k;
        if (p.m() == 1) {
            j["principal_symbol"] = to_string(sigma_k(p.at(0, 0), k));
        } else {
            Json rows = Json::array();
            for (int i = 0; i < p.m(); ++i) {
                Json row = Json::array();
                for (int c = 0; c < p.m(); ++c) row.push_back(to_string(sigma_k(p.at(i, c), k)));
                rows.push_back(std::move(row));
            }
            j["principal_symbol"] = std::move(rows);
        }
    }
    DStarCheck ds = p.is_D_star_matrix();
    j["d_star"] = ds.ok;
    if (!ds.ok) {
        Json w;
        w["alpha"] = json_mi(ds.witness.alpha);
        w["beta"] = json_mi(ds.witness.beta);
        j["d_star_witness"] = std::move(w);
    }
    if (a.checks) {
        auto x0 = eval_point(a, p.nx());
        NondegReport nd = check_nondeg(p, x0);
        j["nondegenerate"] = json_check(nd.result, nd.witness, nd.note);
        ConvergReport cv = check_converg(p, x0);
        Json c = json_check(cv.result, std::nullopt, cv.note);
        c["eps"] = to_string(cv.eps);
        c["cells"] = cv.cells;
        j["convergent_normal_form"] = std::move(c);
    }
    return emit(j, a, 0);
}

int run_commute(const Args& a) {
    auto ops = parse_all(a.exprs, {a.T, a.X, 0, 0});
    Json j = envelope("commute", a);
    Json inputs = Json::array();
    for (const auto& p : ops) inputs.push_back(str_op(p));
    j["inputs"] = std::move(inputs);
    std::vector<OpMatrix> rest(ops.begin() + 1, ops.end());
    IntegrabilityReport rep = integrability_verify(ops[0], rest, a.T);
    Json r = json_integrability(rep);
    for (auto& [key, val] : r.items()) j[key] = val;
    return emit(j, a, rep.pass() ? 0 : 1);
}

int run_exponents(const Args& a) {
    OpMatrix p = parse_expression(a.exprs[0], {a.T, a.X, 0, 0});
    Json j = envelope("exponents", a);
    j["input"] = str_op(p);
    IndicialMatrix ind = indicial_matrix(p, eval_point(a, p.nx()));
    MPoly det = indicial_det(ind);
    j["indicial_det"] = to_string(det, "lambda");
    j["x_dependent"] = ind.x_dependent;
    if (ind.n == 1 && !det.is_zero()) {
        bool exact = true;
        std::vector<GaussianRational> coeffs(det.total_degree() + 1, GaussianRational(0));
        for (const auto& [e, c] : det.terms()) {
            if (c.has_parameter()) exact = false;
            else coeffs[e[0]] = c.constant_value();
        }
        if (exact) {
            auto roots = gaussian_rational_roots(coeffs);
            Json ex = Json::array();
            for (const auto& [r, mult] : roots.roots) {
                Json k;
                k["value"] = to_string(r);
                k["multiplicity"] = mult;
                ex.push_back(std::move(k));
            }
            j["exponents"] = std::move(ex);
            j["exponents_complete"] = roots.complete();
        } else {
            j["note"] = "indicial roots are listed only for parameter-free determinants";
        }
    }
    j["search_bound"] = a.bound;
    if (!a.lambda.empty()) {
        auto lam = required_lambda(a, ind.n);
        j["resonance"] = json_resonance(resonance_set(ind, lam, a.bound));
    }
    return emit(j, a, 0);
}

// exp-polynomial leading terms at the exponent, from the indicial relations
std::vector<ExpPolySolution> indicial_basis_at(const OpMatrix& p, const std::vector<Scalar>& lam) {
    IndicialMatrix ind = indicial_matrix(p);
    ConstCoeffModule mod{ind.n, ind.m, ind.e};
    std::vector<ExpPolySolution> basis, prev;
    for (int k = 1; k <= 16; ++k) {
        basis = solve_at_exponent(mod, lam, k);
        if (k > 1 && basis.size() == prev.size()) break;
        prev = basis;
    }
    return basis;
}

std::vector<MPoly> seed_vector(const Args& a, const OpMatrix& p, const std::vector<Scalar>& lam) {
    if (!a.seed.empty()) {
        auto vals = parse_scalar_list(a.seed);
        if ((int)vals.size() != p.m())
            throw ParseError("--seed needs " + std::to_string(p.m()) + " value(s)", 1, 1);
        std::vector<MPoly> seed;
        for (const auto& v : vals) seed.push_back(MPoly::constant(p.nx(), v));
        return seed;
    }
    IndicialMatrix ind = indicial_matrix(p);
    auto null = nullspace(indicial_eval(ind, lam));
    if (null.empty())
        throw std::runtime_error("the exponent does not annihilate the indicial matrix; no seed");
    std::vector<MPoly> seed;
    for (const auto& v : null[0]) seed.push_back(MPoly::constant(p.nx(), v));
    return seed;
}

int run_solve(const Args& a) {
    OpMatrix p = parse_expression(a.exprs[0], {a.T, a.X, 0, 0});
    auto lam = required_lambda(a, p.n());
    Json j = envelope("solve", a);
    j["input"] = str_op(p);
    j["lambda"] = json_scalars(lam);
    j["logs"] = a.logs;
    std::vector<LogSeriesSolution> sols;
    try {
        if (a.logs == "off" || !a.seed.empty()) {
            sols.push_back(solve_series(p, lam, seed_vector(a, p, lam), a.T));
        } else {
            auto basis = indicial_basis_at(p, lam);
            if (basis.empty())
                throw std::runtime_error("the exponent is not a root of the indicial equation");
            sols = solve_with_logs({p}, lam, basis, a.T);
        }
    } catch (const ResonanceError& e) {
        j["error"] = e.what();
        j["resonance"] = json_resonance(e.report);
        return emit(j, a, 1);
    }
    bool pass = true;
    Json out = Json::array();
    for (const auto& u : sols) {
        Json s = json_solution(u);
        ResidualReport r = verify_residual(p, u, a.T);
        pass = pass && r.pass();
        s["residual"] = json_residual(r);
        out.push_back(std::move(s));
    }
    j["solutions"] = std::move(out);
    j["pass"] = pass;
    return emit(j, a, pass ? 0 : 1);
}

int run_verify(const Args& a) {
    auto ops = parse_all(a.exprs, {a.T, a.X, 0, 0});
    auto lam = required_lambda(a, ops[0].n());
    Json j = envelope("verify", a);
    Json inputs = Json::array();
    for (const auto& p : ops) inputs.push_back(str_op(p));
    j["inputs"] = std::move(inputs);
    j["lambda"] = json_scalars(lam);
    LogSeriesSolution u;
    try {
        u = solve_series(ops[0], lam, seed_vector(a, ops[0], lam), a.T);
    } catch (const ResonanceError& e) {
        j["error"] = e.what();
        j["resonance"] = json_resonance(e.report);
        return emit(j, a, 1);
    }
    j["solution"] = json_solution(u);
    bool pass = true;
    Json reports = Json::array();
    ResidualReport own = verify_residual(ops[0], u, a.T);
    pass = pass && own.pass();
    reports.push_back(json_residual(own));
    if (ops.size() > 1) {
        InducedReport ind = verify_induced(ops, u, a.T);
        for (const auto& r : ind.residuals) {
            pass = pass && r.pass();
            reports.push_back(json_residual(r));
        }
    }
    j["residuals"] = std::move(reports);
    j["pass"] = pass;
    return emit(j, a, pass ? 0 : 1);
}

int run_family(const Args& a) {
    OpMatrix p = parse_expression(a.exprs[0], {a.T, a.X, 0, 0});
    if (a.lambda.empty()) throw ParseError("--lambda lists the member exponents", 1, 1);
    auto exps = parse_scalar_list(a.lambda);
    Json j = envelope("family", a);
    j["input"] = str_op(p);
    j["exponents"] = json_scalars(exps);
    SolutionFamily f = family_solve_and_normalize(p, exps, a.T, a.Z);
    Json fam = json_family(f);
    for (auto& [key, val] : fam.items()) j[key] = val;
    j["pass"] = true;
    return emit(j, a, 0);
}

int run_split(const Args& a) {
    auto coeffs = parse_scalar_list(a.symbol_coeffs);
    Json j = envelope("split", a);
    j["symbol"] = json_scalars(coeffs);
    SplitDirections dirs = split_directions(coeffs);
    Json d = json_split_directions(dirs);
    for (auto& [key, val] : d.items()) j[key] = val;
    bool pass = dirs.complete();
    if (!a.potential.empty()) {
        MPoly r = parse_x_polynomial(a.potential, 2, {a.T, a.X, 0, 0});
        SplitReport rep = splitting_membership({{r}}, dirs.directions);
        j["potential"] = to_string(r, "x");
        j["membership"] = json_split_report(rep);
        pass = pass && rep.pass;
    }
    j["pass"] = pass;
    return emit(j, a, pass ? 0 : 1);
}

int run_catalog(const Args& a) {
    Json j = envelope("catalog", a);
    if (a.name.empty()) {
        Json entries = Json::array();
        for (const auto& e : catalog_list()) {
            Json k;
            k["name"] = e.name;
            k["arity"] = e.arity;
            k["summary"] = e.summary;
            entries.push_back(std::move(k));
        }
        j["entries"] = std::move(entries);
        return emit(j, a, 0);
    }
    std::vector<Scalar> args;
    if (!a.cat_args.empty()) args = parse_scalar_list(a.cat_args);
    CatalogBuild b;
    try {
        b = catalog_build(a.name, args, a.T, a.X);
    } catch (const std::exception& e) {
        throw ParseError(e.what(), 1, 1);
    }
    j["name"] = a.name;
    j["args"] = json_scalars(args);
    j["operator"] = str_op(b.op);
    Json wall = Json::array();
    for (const auto& row : b.wall_map) wall.push_back(json_scalars(row));
    j["wall_map"] = std::move(wall);
    j["d_star"] = b.op.is_D_star_matrix().ok;
    return emit(j, a, 0);
}

// a relation must be multiplication-free: a polynomial in th alone
MPoly relation_poly(const RegOperator& q, int n) {
    MPoly r(n);
    for (const auto& [k, s] : q.terms()) {
        if (mi_abs(k.beta) > 0)
            throw std::runtime_error("relations must be polynomials in th alone, found Dx");
        for (const auto& [g, c] : s.coefficients()) {
            if (mi_abs(g) > 0)
                throw std::runtime_error("relations must be constant coefficient, found a t term");
            if (!c.is_constant())
                throw std::runtime_error("relations must be constant coefficient, found an x term");
            r.add_term(k.alpha, c.constant_term());
        }
    }
    return r;
}

int run_module(const Args& a) {
    auto ops = parse_all(a.exprs, {a.T, a.X, 0, 0});
    int n = ops[0].n();
    ConstCoeffModule mod{n, 1, {}};
    Json rels = Json::array();
    for (const auto& p : ops) {
        if (p.m() != 1) throw ParseError("relations must be scalar expressions", 1, 1);
        mod.relations.push_back({relation_poly(p.at(0, 0), n)});
        rels.push_back(str_op(p));
    }
    Json j = envelope("module", a);
    j["relations"] = std::move(rels);
    ExponentCandidates found = find_exponent_candidates(mod);
    std::vector<std::vector<Scalar>> cands = found.lambdas;
    std::set<std::string> seen;
    for (const auto& c : cands) seen.insert(dump_json(json_scalars(c), true));
    for (const auto& text : a.candidates) {
        auto pt = parse_scalar_list(text);
        if ((int)pt.size() != n)
            throw ParseError("--candidate needs " + std::to_string(n) + " value(s)", 1, 1);
        if (seen.insert(dump_json(json_scalars(pt), true)).second) cands.push_back(pt);
    }
    Json cj = Json::array();
    for (const auto& c : cands) cj.push_back(json_scalars(c));
    j["candidates"] = std::move(cj);
    j["candidates_complete"] = found.complete;
    if (!found.note.empty()) j["note"] = found.note;
    ModuleDimension dim = module_dimension(mod, cands);
    Json m = json_module(dim);
    for (auto& [key, val] : m.items()) j[key] = val;
    j["semisimple"] = is_semisimple(mod, cands);
    return emit(j, a, 0);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* tc = std::getenv("REGSING_THREADS")) {
        std::string s = tc;
        bool ok = !s.empty() && s.size() <= 3;
        for (char ch : s) ok = ok && std::isdigit(static_cast<unsigned char>(ch));
        if (!ok || std::stoi(s) < 1) {
            std::cerr << "REGSING_THREADS must be a positive integer\n";
            return 2;
        }
        // the engine runs sequentially; the cap is honored trivially and
        // results never depend on it
    }

    Args a;
    CLI::App app{"exact analysis of differential operators with regular singularities"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--trunc-t", a.T, "series truncation order in t")->capture_default_str();
        sub->add_option("--trunc-x", a.X, "polynomial degree cap in x")->capture_default_str();
        sub->add_option("--z-order", a.Z, "Laurent jet order in the parameter z")
            ->capture_default_str();
        sub->add_option("--format", a.format, "json or compact")
            ->check(CLI::IsMember({"json", "compact"}))
            ->capture_default_str();
        sub->add_option("--output", a.output, "write the report to a file instead of stdout");
    };

    auto* sym = app.add_subcommand("symbol", "sigma_star, graded symbols and the D_star test");
    sym->add_option("expr", a.exprs, "operator expression")->required()->expected(1);
    sym->add_flag("--checks", a.checks, "include nondegeneracy and convergence certificates");
    sym->add_option("--at", a.at, "evaluation point for the checks, comma separated");
    add_common(sym);

    auto* com = app.add_subcommand("commute", "pairwise commutators of two or more operators");
    com->add_option("expr", a.exprs, "operator expressions")->required()->expected(2, -1);
    add_common(com);

    auto* exp = app.add_subcommand("exponents", "indicial determinant, roots and resonances");
    exp->add_option("expr", a.exprs, "operator expression")->required()->expected(1);
    exp->add_option("--lambda", a.lambda, "exponent to test for resonances, comma separated");
    exp->add_option("--bound", a.bound, "resonance search bound on |gamma|")
        ->capture_default_str();
    exp->add_option("--at", a.at, "evaluation point when the symbol depends on x");
    add_common(exp);

    auto* sol = app.add_subcommand("solve", "series solutions at an exponent");
    sol->add_option("expr", a.exprs, "operator expression")->required()->expected(1);
    sol->add_option("--lambda", a.lambda, "exponent, comma separated");
    sol->add_option("--seed", a.seed, "boundary value, one scalar per component");
    sol->add_option("--logs", a.logs, "auto builds log solutions, off restricts to plain series")
        ->check(CLI::IsMember({"auto", "off"}))
        ->capture_default_str();
    add_common(sol);

    auto* ver = app.add_subcommand("verify",
                                   "solve the first operator, check residuals of every input");
    ver->add_option("expr", a.exprs, "operator expressions")->required()->expected(1, -1);
    ver->add_option("--lambda", a.lambda, "exponent, comma separated");
    ver->add_option("--seed", a.seed, "boundary value, one scalar per component");
    add_common(ver);

    auto* fam = app.add_subcommand("family", "z-deformed exponents, pole profile and limits");
    fam->add_option("expr", a.exprs, "operator expression")->required()->expected(1);
    fam->add_option("--lambda", a.lambda, "member exponents, comma separated");
    add_common(fam);

    auto* spl = app.add_subcommand("split", "directions of a rotation-noninvariant symbol");
    spl->add_option("coeffs", a.symbol_coeffs,
                    "symbol coefficients c_i of xi^(m-i) tau^i, comma separated")
        ->required();
    spl->add_option("--potential", a.potential, "membership test for a polynomial in x1, x2");
    add_common(spl);

    auto* cat = app.add_subcommand("catalog", "list catalog entries or build one");
    cat->add_option("name", a.name, "catalog entry to build");
    cat->add_option("--args", a.cat_args, "entry arguments, comma separated");
    add_common(cat);

    auto* mod = app.add_subcommand("module", "dimension of a constant-coefficient th module");
    mod->add_option("expr", a.exprs, "relations, polynomials in th")->required()->expected(1, -1);
    mod->add_option("--candidate", a.candidates, "extra exponent candidate, comma separated");
    add_common(mod);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sym->parsed()) return run_symbol(a);
        if (com->parsed()) return run_commute(a);
        if (exp->parsed()) return run_exponents(a);
        if (sol->parsed()) return run_solve(a);
        if (ver->parsed()) return run_verify(a);
        if (fam->parsed()) return run_family(a);
        if (spl->parsed()) return run_split(a);
        if (cat->parsed()) return run_catalog(a);
        if (mod->parsed()) return run_module(a);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
