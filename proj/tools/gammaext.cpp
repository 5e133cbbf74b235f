#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gammaext/acceptance.hpp"
#include "gammaext/errors.hpp"
#include "gammaext/expr.hpp"
#include "gammaext/kan.hpp"

using namespace gammaext;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, invariant = 1, infeasible = 2, input = 3 };

struct Output {
    std::string json_path;
    std::string csv_path;
};

// Write to a sibling temporary file, then rename over the target.
void write_atomic(const std::string& path, const std::string& body)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InputError("cannot write " + tmp.string());
        out << body;
        if (!out.flush())
            throw InputError("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const Output& out, const std::string& json, const std::string& csv)
{
    if (!out.json_path.empty())
        write_atomic(out.json_path, json);
    if (!out.csv_path.empty())
        write_atomic(out.csv_path, csv);
    if (out.json_path.empty() && out.csv_path.empty())
        std::cout << json;
}

std::string entries_csv(const ExtTable& t)
{
    std::string s = "s,t,dim\n";
    for (auto& [k, v] : t.entries)
        s += std::to_string(k.first) + "," + std::to_string(k.second) + "," + std::to_string(v) + "\n";
    return s;
}

ojson entries_json(const ExtTable& t)
{
    auto arr = ojson::array();
    for (auto& [k, v] : t.entries)
        arr.push_back({{"s", k.first}, {"t", k.second}, {"dim", v}});
    return arr;
}

struct Parsed {
    std::unique_ptr<Expr> expr;
    ExprType type;
};

Parsed parse_checked(const std::string& text, int p, int d)
{
    Parsed out;
    out.expr = parse_expr(text);
    out.type = check_expr(*out.expr, p, d);
    return out;
}

void require_prime(int p)
{
    if (p < 2)
        throw InputError("p must be prime");
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0)
            throw InputError("p must be prime");
}

void require_positive(int v, const char* name)
{
    if (v < 1)
        throw InputError(std::string(name) + " must be positive");
}

ojson multiset_json(const Multiset& m) { return ojson(std::vector<std::uint32_t>(m.begin(), m.end())); }

struct AlgebraArgs {
    int p = 2, d = 1, n = 1;
    bool affine = false, idempotents = false;
};

int run_algebra(const AlgebraArgs& a, const Output& out)
{
    require_prime(a.p);
    require_positive(a.n, "n");
    if (a.d < 0)
        throw InputError("d must be non-negative");
    auto s = a.affine ? SchurAlgebra::affine(a.p, a.n, a.d) : SchurAlgebra::classical(a.p, a.n, a.d);
    std::string lines, csv = "left,right,result,coeff\n";
    for (std::size_t i = 0; i < s->dim(); ++i)
        for (std::size_t j = 0; j < s->dim(); ++j) {
            const auto& prod = s->product(i, j);
            if (prod.empty())
                continue;
            auto res = ojson::array();
            for (auto [c, v] : prod) {
                res.push_back({multiset_json(s->element(c)), int(v)});
                csv += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(c) + "," + std::to_string(int(v)) +
                       "\n";
            }
            ojson line;
            line["left"] = multiset_json(s->element(i));
            line["right"] = multiset_json(s->element(j));
            line["result"] = res;
            lines += line.dump() + "\n";
        }
    if (a.idempotents)
        for (auto& [lambda, element] : weight_idempotents(*s)) {
            ojson line;
            line["lambda"] = lambda;
            std::vector<int> coeffs(element.begin(), element.end());
            line["element"] = coeffs;
            lines += line.dump() + "\n";
        }
    emit(out, lines, csv);
    return ok;
}

struct ExtArgs {
    int p = 2, d = 1, n = 1, max_s = 8, max_t = -1;
    std::string source, target;
};

int default_t_max(int p, int degree, int max_s) { return 2 * (p - 1) * degree * (max_s + 1); }

int run_ext(const ExtArgs& a, const Output& out)
{
    require_prime(a.p);
    require_positive(a.n, "n");
    require_positive(a.d, "d");
    if (a.max_s < 0)
        throw InputError("max-s must be non-negative");
    auto src = parse_checked(a.source, a.p, a.d);
    auto tgt = parse_checked(a.target, a.p, a.d);
    if (src.type.degree != tgt.type.degree || src.type.affine != tgt.type.affine)
        throw InputError("source and target live in different categories: " + to_string(*src.expr) + " vs " +
                         to_string(*tgt.expr));
    const int t_max = a.max_t >= 0 ? a.max_t : 4 * a.p * src.type.degree;
    auto m = eval_expr(*src.expr, a.p, a.d, a.n);
    auto nmod = eval_expr(*tgt.expr, a.p, a.d, a.n);
    auto table = ext_table(m, nmod, a.max_s, t_max);
    ojson j;
    j["p"] = a.p;
    j["d"] = a.d;
    j["n"] = a.n;
    j["source"] = to_string(*src.expr);
    j["target"] = to_string(*tgt.expr);
    j["clipped"] = table.clipped;
    j["entries"] = entries_json(table);
    emit(out, j.dump(2) + "\n", entries_csv(table));
    return ok;
}

struct KanArgs {
    int p = 2, d = 1, m = 1, n = 0, max_s = 8;
    std::string target;
    bool action = false;
};

int run_kan(const KanArgs& a, const Output& out)
{
    require_prime(a.p);
    require_positive(a.d, "d");
    require_positive(a.m, "m");
    if (a.max_s < 0)
        throw InputError("max-s must be non-negative");
    const int big_n = a.n > 0 ? a.n : a.p * a.d;
    auto tgt = parse_checked(a.target, a.p, a.d);
    if (tgt.type.affine || tgt.type.degree != a.p * a.d)
        throw InputError("kan target must be a classical functor of degree " + std::to_string(a.p * a.d) + ", got " +
                         to_string(*tgt.expr));
    auto fam = build_twist_family(a.p, a.d, a.m, big_n);
    auto value = k_af(*fam, eval_expr(*tgt.expr, a.p, a.d, big_n), a.m, a.max_s, a.action);
    auto j = ojson::parse(value.json());
    ojson head;
    head["p"] = a.p;
    head["d"] = a.d;
    head["N"] = big_n;
    head["target"] = to_string(*tgt.expr);
    for (auto& [k, v] : j.items())
        head[k] = v;
    emit(out, head.dump(2) + "\n", entries_csv(value.table));
    return ok;
}

struct CollapseArgs {
    int p = 2, d = 1, i = 1, n = 0, max_s = 8;
    std::string f, g;
};

int run_collapse(const CollapseArgs& a, const Output& out)
{
    require_prime(a.p);
    require_positive(a.d, "d");
    require_positive(a.i, "i");
    if (a.max_s < 0)
        throw InputError("max-s must be non-negative");
    const int n = a.n > 0 ? a.n : a.d;
    auto f = parse_checked(a.f, a.p, a.d);
    auto g = parse_checked(a.g, a.p, a.d);
    for (auto* e : {&f, &g})
        if (e->type.affine || e->type.degree != a.d)
            throw InputError("collapse arguments must be classical of degree " + std::to_string(a.d) + ", got " +
                             to_string(*e->expr));
    auto r = collapsing_check(eval_expr(*f.expr, a.p, a.d, n), eval_expr(*g.expr, a.p, a.d, n), a.i, a.max_s);
    auto j = ojson::parse(r.json());
    ojson head;
    head["f"] = to_string(*f.expr);
    head["g"] = to_string(*g.expr);
    for (auto& [k, v] : j.items())
        head[k] = v;
    std::string csv = "side,s,t,dim\n";
    for (auto [name, t] : {std::pair{"lhs", &r.lhs}, std::pair{"rhs", &r.rhs}})
        for (auto& [k, v] : t->entries)
            csv += std::string(name) + "," + std::to_string(k.first) + "," + std::to_string(k.second) + "," +
                   std::to_string(v) + "\n";
    emit(out, head.dump(2) + "\n", csv);
    return ok;
}

struct ResolveArgs {
    int p = 2, d = 1, n = 1, max_s = 4, cap = -1;
    std::string module;
};

int run_resolve(const ResolveArgs& a, const Output& out)
{
    require_prime(a.p);
    require_positive(a.d, "d");
    require_positive(a.n, "n");
    if (a.max_s < 0)
        throw InputError("max-s must be non-negative");
    auto e = parse_checked(a.module, a.p, a.d);
    auto m = eval_expr(*e.expr, a.p, a.d, a.n);
    const int top = m->empty() ? 0 : m->top();
    const int cap = a.cap >= 0 ? a.cap : top + default_t_max(a.p, e.type.degree, a.max_s);
    FreeResolution r(m, a.max_s, cap);
    ojson j;
    j["module"] = to_string(*e.expr);
    j["p"] = a.p;
    j["d"] = a.d;
    j["n"] = a.n;
    j["degree_cap"] = cap;
    j["truncated"] = r.truncated();
    j["projective_stage"] = r.projective_stage();
    auto stages = ojson::array();
    std::string csv = "stage,weight,degree\n";
    for (std::size_t k = 0; k < r.length(); ++k) {
        auto gens = ojson::array();
        for (auto& g : r.generators(k)) {
            const auto& w = m->algebra()->weights()[g.weight];
            gens.push_back({{"weight", w}, {"degree", g.degree}});
            std::string ws;
            for (std::size_t i = 0; i < w.size(); ++i)
                ws += (i ? " " : "") + std::to_string(w[i]);
            csv += std::to_string(k) + "," + ws + "," + std::to_string(g.degree) + "\n";
        }
        stages.push_back({{"stage", k}, {"generators", gens}});
    }
    j["stages"] = stages;
    emit(out, j.dump(2) + "\n", csv);
    return ok;
}

int run_selftest()
{
    bool passed = true;
    run_acceptance([&](const CriterionResult& r) {
        std::cout << format_result(r) << std::endl;
        passed = passed && r.passed;
    });
    return passed ? ok : invariant;
}

void add_output(CLI::App* cmd, Output& out)
{
    cmd->add_option("--json", out.json_path, "Write JSON to this path (default: stdout)");
    cmd->add_option("--csv", out.csv_path, "Also write CSV to this path");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ext computations for strict and affine polynomial functors over F_p"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file with option defaults");
    long long max_dim = 0;
    app.add_option("--max-dim", max_dim, "Largest Schur algebra dimension to build (default 5000)");

    Output out;
    AlgebraArgs alg;
    auto* c_alg = app.add_subcommand("algebra", "Dump Schur algebra structure constants as JSON lines");
    c_alg->add_option("--p", alg.p)->required();
    c_alg->add_option("--d", alg.d)->required();
    c_alg->add_option("--n", alg.n)->required();
    c_alg->add_flag("--affine", alg.affine);
    c_alg->add_flag("--idempotents", alg.idempotents, "Append the weight idempotents");
    add_output(c_alg, out);

    ExtArgs ext;
    auto* c_ext = app.add_subcommand("ext", "Ext table between two functor expressions");
    c_ext->add_option("--p", ext.p)->required();
    c_ext->add_option("--d", ext.d, "Base degree of the atoms")->required();
    c_ext->add_option("--n", ext.n, "Evaluation rank")->required();
    c_ext->add_option("--source", ext.source)->required();
    c_ext->add_option("--target", ext.target)->required();
    c_ext->add_option("--max-s", ext.max_s);
    c_ext->add_option("--max-t", ext.max_t, "Bound on |t| (default 4pd)");
    add_output(c_ext, out);

    KanArgs kan;
    auto* c_kan = app.add_subcommand("kan", "K^af of a classical functor of degree pd at A^m");
    c_kan->add_option("--p", kan.p)->required();
    c_kan->add_option("--d", kan.d)->required();
    c_kan->add_option("--m", kan.m)->required();
    c_kan->add_option("--target", kan.target)->required();
    c_kan->add_option("--n", kan.n, "Evaluation rank N (default pd)");
    c_kan->add_option("--max-s", kan.max_s);
    c_kan->add_flag("--action", kan.action, "Include Yoneda action matrices");
    add_output(c_kan, out);

    CollapseArgs col;
    auto* c_col = app.add_subcommand("collapse", "Compare Ext(F^(i), G^(i)) with Ext(F, G_{A_i})");
    c_col->add_option("--p", col.p)->required();
    c_col->add_option("--d", col.d)->required();
    c_col->add_option("--i", col.i)->required();
    c_col->add_option("--f", col.f)->required();
    c_col->add_option("--g", col.g)->required();
    c_col->add_option("--n", col.n, "Evaluation rank (default d)");
    c_col->add_option("--max-s", col.max_s);
    add_output(c_col, out);

    ResolveArgs res;
    auto* c_res = app.add_subcommand("resolve", "Generators of a projective resolution");
    c_res->add_option("--p", res.p)->required();
    c_res->add_option("--d", res.d)->required();
    c_res->add_option("--n", res.n)->required();
    c_res->add_option("--module", res.module)->required();
    c_res->add_option("--max-s", res.max_s);
    c_res->add_option("--degree-cap", res.cap);
    add_output(c_res, out);

    auto* c_self = app.add_subcommand("selftest", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input;
    }
    if (max_dim > 0)
        setenv("GAMMAEXT_MAX_ALGEBRA_DIM", std::to_string(max_dim).c_str(), 1);

    try {
        if (*c_alg)
            return run_algebra(alg, out);
        if (*c_ext)
            return run_ext(ext, out);
        if (*c_kan)
            return run_kan(kan, out);
        if (*c_col)
            return run_collapse(col, out);
        if (*c_res)
            return run_resolve(res, out);
        if (*c_self)
            return run_selftest();
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << " (required dimension " << e.required() << ")\n";
        return infeasible;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return input;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return invariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invariant;
    }
    return input;
}
