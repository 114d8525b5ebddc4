// Batch front end. Exit codes: 0 pass, 1 verification failure, 2 input error.

#include "record.hpp"

#include "symprol/catalog.hpp"
#include "symprol/errors.hpp"
#include "symprol/fedosov.hpp"
#include "symprol/realizations.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace symprol;
using cli::Format;
using cli::Record;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

struct RunConfig {
    Format format = Format::records;
    std::string format_name = "records";

    // catalog
    std::string catalog_action;
    std::string entry;
    std::vector<std::string> params;

    // prolong / finite-type / ce-h1
    std::string gens_path;
    int n = 2;
    int kmax = 4;
    std::string algebra_gens;
    std::string module_gens;

    // realize
    std::string base;
    int k = 1;
    int n_power = 0;
    int degree = 0;
    std::string xi;
    std::string alpha = "0";

    // fedosov
    std::string algebra_path;
    std::string report = "summary";
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

/// One tensor per line; '#' starts a comment.
std::vector<SymTensor> read_gens(const SymplecticSpace& v, const std::string& path)
{
    std::vector<SymTensor> out;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(line.substr(0, line.find('#')));
        if (body.empty())
            continue;
        try {
            out.push_back(parse_tensor(v, body));
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (out.empty())
        throw InputError(path + ": no generators");
    return out;
}

/// "a; b; c" or "a, b, c" with tensors in the printer grammar.
std::vector<SymTensor> split_gens(const SymplecticSpace& v, std::string text)
{
    std::replace(text.begin(), text.end(), ',', ';');
    std::vector<SymTensor> out;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';'))
        if (auto t = trim(part); !t.empty())
            out.push_back(parse_tensor(v, t));
    if (out.empty())
        throw InputError("empty generator list");
    return out;
}

std::string witness_grid_text()
{
    const char* env = std::getenv("SYMPROL_WITNESS_GRID");
    return env && *env ? env : "standard";
}

void echo(const std::string& command, const std::vector<std::pair<std::string, std::string>>& fields)
{
    std::cout << "# symprol " << command;
    for (const auto& [k, v] : fields)
        std::cout << ' ' << k << '=' << Record::quote(v);
    std::cout << '\n';
}

std::string dims_str(const std::vector<std::size_t>& d)
{
    std::string out = "[";
    for (std::size_t i = 0; i < d.size(); ++i)
        out += (i ? ", " : "") + std::to_string(d[i]);
    return out + "]";
}

std::string matrix_or_zero(const Matrix<Scalar>& m)
{
    return m.is_zero() ? "0" : m.str();
}

void add_verdict(Record& r, const TypeVerdict& v)
{
    r.add("dim_h", v.dim_h).add("dim_h1", v.dim_h1).add("verdict", to_string(v.kind));
    if (v.witness)
        r.add("evidence", "witness " + v.witness->str());
    else
        r.add("evidence", v.reason);
}

ParamMap parse_params(const std::vector<std::string>& raw)
{
    ParamMap out;
    for (const auto& p : raw) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("parameter '" + p + "' is not name=value");
        const auto name = trim(std::string_view(p).substr(0, eq));
        if (out.count(name))
            throw InputError("parameter '" + name + "' given twice");
        out[name] = Scalar::parse(trim(std::string_view(p).substr(eq + 1)));
    }
    return out;
}

std::string params_schema(const CatalogEntry& e)
{
    std::string out;
    for (const auto& p : e.params)
        out += (out.empty() ? "" : ",") + p.describe();
    return out.empty() ? "none" : out;
}

Record verify_record(const VerifyReport& r)
{
    Record rec("verify");
    rec.add("name", r.name).add("params", r.params.empty() ? std::string("none") : params_str(r.params));
    rec.add("closed", r.closed);
    add_verdict(rec, r.verdict);
    rec.add("pass", r.pass());
    if (!r.pass()) {
        std::string f;
        for (const auto& s : r.failures)
            f += (f.empty() ? "" : "; ") + s;
        rec.add("failures", f);
    }
    return rec;
}

int cmd_catalog(const RunConfig& c)
{
    echo("catalog", {{"action", c.catalog_action},
                     {"entry", c.entry.empty() ? "all" : c.entry},
                     {"params", c.params.empty() ? "none" : [&] {
                          std::string out;
                          for (const auto& p : c.params)
                              out += (out.empty() ? "" : ",") + p;
                          return out;
                      }()},
                     {"witness_grid", witness_grid_text()},
                     {"format", c.format_name}});
    if (c.catalog_action == "list") {
        for (const auto& e : catalog()) {
            Record r("entry");
            std::string aliases;
            for (const auto& a : e.aliases)
                aliases += (aliases.empty() ? "" : ",") + a;
            r.add("name", e.name).add("group", e.group).add("aliases", aliases.empty() ? "none" : aliases);
            r.add("params", params_schema(e)).add("type", std::string(e.finite_type ? "finite" : "infinite"));
            r.add("description", e.description);
            r.write(std::cout, c.format);
        }
        std::cout << catalog().size() << " entries\n";
        return exit_ok;
    }

    const auto grid = WitnessGrid::from_env();
    std::vector<VerifyReport> reports;
    if (c.entry.empty()) {
        if (!c.params.empty())
            throw InputError("--param needs an entry name");
        reports = verify_all(grid);
    } else {
        const auto& e = find_entry(c.entry);
        if (!c.params.empty() || e.params.empty()) {
            const auto p = parse_params(c.params);
            check_params(e, p);
            reports.push_back(verify_entry(e, p, grid));
        } else {
            for (const auto& p : representative_params(e))
                reports.push_back(verify_entry(e, p, grid));
        }
    }
    std::size_t passed = 0;
    for (const auto& r : reports) {
        verify_record(r).write(std::cout, c.format);
        passed += r.pass();
    }
    std::cout << reports.size() << " entries, " << passed << " pass\n";
    return passed == reports.size() ? exit_ok : exit_failed;
}

int cmd_prolong(const RunConfig& c, bool finite_type_only)
{
    echo(finite_type_only ? "finite-type" : "prolong",
         {{"gens", c.gens_path},
          {"n", std::to_string(c.n)},
          {"kmax", std::to_string(c.kmax)},
          {"witness_grid", witness_grid_text()},
          {"format", c.format_name}});
    if (c.n < 1)
        throw InputError("--n must be at least 1");
    if (c.kmax < 0)
        throw InputError("--kmax must be nonnegative");
    const SymplecticSpace v(c.n);
    const auto h = make_subalgebra(v, read_gens(v, c.gens_path));
    const auto verdict = finite_type_verdict(h, WitnessGrid::from_env(), std::max(c.kmax, 1));
    Record r(finite_type_only ? "finite-type" : "prolong");
    if (!finite_type_only)
        r.add("chain", dims_str(prolong_chain(h, c.kmax).dims()));
    add_verdict(r, verdict);
    r.write(std::cout, c.format);
    return exit_ok;
}

void write_realization(const ConstructionReport& rep, const RunConfig& c)
{
    const auto& g = rep.g;
    Record r("realization");
    r.add("name", g.name).add("dim", g.algebra.dim()).add("expected_dim", rep.expected_dim);
    r.add("stability_dim", rep.filtration.stability_dim).add("expected_stability_dim", rep.expected_stability_dim);
    r.add("isotropy_dim", rep.filtration.isotropy_dim).add("expected_isotropy_dim", rep.expected_isotropy_dim);
    r.add("isotropy_kernel_dim", rep.filtration.isotropy_kernel_dim);
    r.add("transitive", rep.filtration.transitive).add("stability_matches", rep.stability_matches);
    r.add("transverse", rep.transverse.empty() ? std::string("none") : rep.transverse);
    r.add("density", std::string(rep.density_advisory ? (rep.density_ok ? "ok-advisory" : "fails-advisory")
                                                      : (rep.density_ok ? "ok" : "fails")));
    r.add("jacobi", std::string(g.algebra.is_lie() ? "ok" : "fails"));
    r.add("pass", rep.pass());
    r.write(std::cout, c.format);

    std::string labels;
    for (const auto& l : g.algebra.labels())
        labels += (labels.empty() ? "" : ",") + l;
    Record("basis").add("labels", labels).write(std::cout, c.format);
    for (std::size_t i = 0; i < g.algebra.dim(); ++i)
        for (std::size_t j = i + 1; j < g.algebra.dim(); ++j) {
            const auto& b = g.algebra.bracket(i, j);
            bool zero = true;
            for (const auto& x : b)
                zero = zero && x.is_zero();
            if (zero)
                continue;
            Record("bracket")
                .add("lhs", "[" + g.algebra.label(i) + "," + g.algebra.label(j) + "]")
                .add("rhs", combination_str(b, g.algebra.labels()))
                .write(std::cout, c.format);
        }
    for (std::size_t j = 0; j < rep.filtration.levels.size(); ++j)
        Record("filtration")
            .add("level", std::to_string(static_cast<int>(j) - 1))
            .add("dim", rep.filtration.levels[j].dim())
            .write(std::cout, c.format);
    for (const auto& f : rep.failures)
        Record("failure").add("detail", f).write(std::cout, c.format);
}

int cmd_realize_k1(const RunConfig& c)
{
    echo("realize thmK1", {{"base", c.base},
                           {"k", std::to_string(c.k)},
                           {"N", std::to_string(c.n_power)},
                           {"degree", std::to_string(c.degree)},
                           {"format", c.format_name}});
    const auto rep = build_thmK1(parse_plane_base(c.base), c.k, c.n_power, c.degree);
    write_realization(rep, c);
    return rep.pass() ? exit_ok : exit_failed;
}

int cmd_realize_k2(const RunConfig& c)
{
    echo("realize thmK2", {{"base", c.base},
                           {"xi", c.xi},
                           {"alpha", c.alpha},
                           {"degree", std::to_string(c.degree)},
                           {"format", c.format_name}});
    const auto rep = build_thmK2(parse_plane_base(c.base), XiSpec::parse(c.xi), Scalar::parse(c.alpha), c.degree);
    write_realization(rep, c);
    return rep.pass() ? exit_ok : exit_failed;
}

int cmd_fedosov(const RunConfig& c)
{
    echo("fedosov", {{"algebra", c.algebra_path}, {"report", c.report}, {"format", c.format_name}});
    if (c.report != "summary" && c.report != "full")
        throw InputError("--report must be summary or full");
    const auto a = parse_symplectic_algebra(read_file(c.algebra_path));
    const auto check = check_symplectic(a);
    if (!check.ok()) {
        Record("symplectic").add("name", a.name).add("valid", false).add("detail", check.str()).write(std::cout,
                                                                                                      c.format);
        return exit_input;
    }
    const auto r = fedosov_report(a);
    Record s("fedosov");
    s.add("name", a.name).add("dim", a.dim()).add("symplectic", std::string("valid"));
    s.add("left_symmetric", r.left_symmetric.ok()).add("torsion_free", !r.connection.torsion_failure);
    s.add("omega_parallel", !r.connection.parallel_failure).add("connection_paths_agree", r.paths_agree);
    s.add("curvature_agrees", r.curvature_agrees).add("ricci_agrees", r.ricci_agrees);
    s.add("trace_identities", r.traces.ok()).add("nilpotent", r.nilpotent).add("solvable", r.solvable);
    s.add("ric", matrix_or_zero(r.ric)).add("kappa", matrix_or_zero(r.kappa));
    s.add("killing", matrix_or_zero(r.killing));
    const auto failures = r.failures();
    s.add("pass", failures.empty());
    s.write(std::cout, c.format);
    if (c.report == "full") {
        const auto& labels = a.g.labels();
        const std::size_t n = a.dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                Record("product")
                    .add("lhs", labels[i] + "*" + labels[j])
                    .add("value", combination_str(r.product.at(i, j), labels))
                    .add("nabla", combination_str(r.nabla.at(i, j), labels))
                    .write(std::cout, c.format);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!r.curv[i * n + j].is_zero())
                    Record("curvature")
                        .add("pair", labels[i] + "," + labels[j])
                        .add("matrix", r.curv[i * n + j].str())
                        .write(std::cout, c.format);
    }
    for (const auto& f : failures)
        Record("failure").add("detail", f).write(std::cout, c.format);
    return failures.empty() ? exit_ok : exit_failed;
}

int cmd_ce_h1(const RunConfig& c)
{
    echo("ce-h1", {{"algebra", c.algebra_gens},
                   {"module", c.module_gens},
                   {"n", std::to_string(c.n)},
                   {"format", c.format_name}});
    if (c.n < 1)
        throw InputError("--n must be at least 1");
    const SymplecticSpace v(c.n);
    const auto m = bracket_module(v, split_gens(v, c.algebra_gens), split_gens(v, c.module_gens));
    const auto h = ce_h1(m.algebra, m.rho);
    Record("ce-h1")
        .add("dim_algebra", m.algebra.dim())
        .add("dim_module", m.module_basis.size())
        .add("dim_cocycles", h.dim_cocycles)
        .add("dim_coboundaries", h.dim_coboundaries)
        .add("dim_h1", h.dim)
        .write(std::cout, c.format);
    for (const auto& rep : h.representatives)
        Record("cocycle").add("value", m.cochain_str(rep)).write(std::cout, c.format);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig c;
    CLI::App app{"symprol: prolongations, subalgebra catalogs, realizations and Fedosov structures"};
    app.require_subcommand(1);
    app.add_option("--format", c.format_name, "Output format")
        ->check(CLI::IsMember({"records", "text"}))
        ->capture_default_str();

    auto* cat = app.add_subcommand("catalog", "List or verify catalog entries");
    cat->add_option("action", c.catalog_action, "list or verify")->required()->check(CLI::IsMember({"list", "verify"}));
    cat->add_option("name", c.entry, "Entry name or alias (default: all)");
    cat->add_option("--param", c.params, "Parameter binding name=value, repeatable");

    auto* pro = app.add_subcommand("prolong", "Prolongation chain and type verdict of a span of S^2(V)");
    pro->add_option("--gens", c.gens_path, "File with one tensor per line")->required();
    pro->add_option("--kmax", c.kmax, "Highest prolongation computed")->capture_default_str();
    pro->add_option("--n", c.n, "V = R^{2n}")->capture_default_str();

    auto* fin = app.add_subcommand("finite-type", "Finite/infinite type verdict of a span of S^2(V)");
    fin->add_option("--gens", c.gens_path, "File with one tensor per line")->required();
    fin->add_option("--kmax", c.kmax, "Highest prolongation tried")->capture_default_str();
    fin->add_option("--n", c.n, "V = R^{2n}")->capture_default_str();

    auto* real = app.add_subcommand("realize", "Transitive imprimitive symplectic algebras");
    real->require_subcommand(1);
    auto* k1 = real->add_subcommand("thmK1", "Model with a line acting on the plane");
    k1->add_option("--base", c.base, "hyperbolic, sphere, sl2aff or euclid")->required();
    k1->add_option("--k", c.k, "Top degree of the polynomial ideal")->required();
    k1->add_option("--N", c.n_power, "Polynomial degree on the translations (affine bases)")->capture_default_str();
    k1->add_option("--degree", c.degree, "Truncation degree, 0 picks a safe default")->capture_default_str();
    auto* k2 = real->add_subcommand("thmK2", "Model with the plane acting on the line");
    k2->add_option("--base", c.base, "sl2aff, gl2aff, conf or euc")->required();
    k2->add_option("--xi", c.xi, "P3 or W(1,1)+W(1,-1)")->required();
    k2->add_option("--alpha", c.alpha, "Rotation weight for euc")->capture_default_str();
    k2->add_option("--degree", c.degree, "Truncation degree, 0 picks a safe default")->capture_default_str();

    auto* fed = app.add_subcommand("fedosov", "Left-symmetric product, connection and curvature");
    fed->add_option("--algebra", c.algebra_path, "Symplectic Lie algebra file")->required();
    fed->add_option("--report", c.report, "summary or full")->capture_default_str();

    auto* ce = app.add_subcommand("ce-h1", "H^1 of a subalgebra of S^2(V) on an invariant subspace");
    ce->add_option("--algebra", c.algebra_gens, "Generators separated by ';' or ','")->required();
    ce->add_option("--module", c.module_gens, "Module basis separated by ';' or ','")->required();
    ce->add_option("--n", c.n, "V = R^{2n}")->capture_default_str();

    // --format is accepted before or after the subcommand
    for (auto* sub : {cat, pro, fin, real, k1, k2, fed, ce})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }
    c.format = c.format_name == "text" ? Format::text : Format::records;

    try {
        if (*cat)
            return cmd_catalog(c);
        if (*pro)
            return cmd_prolong(c, false);
        if (*fin)
            return cmd_prolong(c, true);
        if (*k1)
            return cmd_realize_k1(c);
        if (*k2)
            return cmd_realize_k2(c);
        if (*fed)
            return cmd_fedosov(c);
        if (*ce)
            return cmd_ce_h1(c);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_input;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const MathError& e) {
        // e.g. a generator span that is not closed under the bracket
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
