#include "susyqft/cli.hpp"
#include "susyqft/derivations.hpp"
#include "susyqft/errors.hpp"
#include "susyqft/jlo.hpp"
#include "susyqft/localbound.hpp"
#include "susyqft/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace sqft;
using nlohmann::ordered_json;

namespace {

void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

Tuple read_tuple(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    Tuple t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        t.push_back(parse_element(line));
    }
    return t;
}

ordered_json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

JloConfig jlo_config(int nodes)
{
    JloConfig j;
    if (nodes > 0) j.eval.laplace.nodes_per_dim = nodes;
    return j;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"supersymmetric chiral field numerics"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::string out;
    int nodes = 0;
    app.add_option("--seed", cfg.seed, "seed for randomized probes");
    app.add_option("--nodes", nodes, "Laplace nodes per dimension (0 keeps defaults)");
    app.add_option("--out", out, "write the report here instead of stdout");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all", csv_path;
    verify->add_option("suite", suite, "kms|susy|relations|tau|cocycle|localbound|all");
    verify->add_option("--csv", csv_path, "write the localbound sweep CSV here");
    verify->add_option("--grid", cfg.grid, "localbound grid size");

    auto* tau_cmd = app.add_subcommand("tau", "evaluate tau_n on a tuple");
    int n = 0;
    std::string args_path;
    tau_cmd->add_option("--n", n)->required();
    tau_cmd->add_option("--args", args_path, "file with one element per line")->required();

    auto* coc = app.add_subcommand("cocycle", "cocycle residual b tau_{n-1} - B tau_{n+1}");
    int cn = 1;
    std::string coc_args;
    bool minus = false;
    coc->add_option("--n", cn);
    coc->add_option("--args", coc_args, "file with n+1 elements, default (zeta(h0), zeta(h1))");
    coc->add_flag("--b-minus-B", minus, "use the unsigned sequence (tau_0, 0, tau_2)");

    auto* lb = app.add_subcommand("local-bound", "local norm bound sweep");
    std::vector<double> sweep{1, 2, 4, 8};
    int grid = 512;
    bool fit = false;
    std::string lb_csv;
    lb->add_option("--sweep", sweep, "interval lengths |J|")->delimiter(',');
    lb->add_option("--grid", grid);
    lb->add_flag("--fit", fit, "report fitted b and K");
    lb->add_option("--csv", lb_csv, "write the CSV here instead of stdout");

    auto* ev = app.add_subcommand("eval", "parse an element, optionally transform it, and evaluate phi");
    std::string expr, apply;
    ev->add_option("expr", expr)->required();
    ev->add_option("--apply", apply)->check(CLI::IsMember({"delta", "delta0", "gamma", "adjoint"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            cfg.suite = parse_suite(suite);
            cfg.laplace_nodes = nodes;
            Report r = run_suite(cfg);
            emit(report_json(r), out);
            if (!r.csv.empty() && !csv_path.empty()) emit(r.csv, csv_path);
            return r.ok() ? 0 : 1;
        }
        if (*tau_cmd) {
            Tuple a = read_tuple(args_path);
            if (static_cast<int>(a.size()) != n + 1) throw std::runtime_error("tau --n N needs N+1 elements");
            cplx v = tau(n, a, jlo_config(nodes));
            emit(ordered_json{{"n", n}, {"tau", cjson(v)}}.dump(2) + "\n", out);
            return 0;
        }
        if (*coc) {
            Tuple a = coc_args.empty() ? Tuple{zeta(TestFunction::mode(0)), zeta(TestFunction::mode(1))}
                                       : read_tuple(coc_args);
            JloConfig j = jlo_config(nodes);
            j.sign = minus ? CoboundarySign::BMinusB : CoboundarySign::BPlusB;
            CocycleValues v = cocycle_check(cn, a, j);
            emit(ordered_json{{"n", cn}, {"b_side", cjson(v.b_side)}, {"B_side", cjson(v.B_side)}, {"residual", v.residual}}
                         .dump(2) +
                     "\n",
                 out);
            return 0;
        }
        if (*lb) {
            std::vector<LocalBound> rows = local_bound_sweep(sweep, grid, kBFit);
            emit(sweep_csv(rows), lb_csv.empty() ? out : lb_csv);
            if (fit) {
                FitConstants fc = fit_constants(rows);
                std::cerr << "b " << format_double(fc.b) << "\nK " << format_double(fc.K) << "\n";
            }
            return 0;
        }
        if (*ev) {
            Element a = parse_element(expr);
            if (apply == "delta") a = super_derivation(a);
            if (apply == "delta0") a = time_derivation(a);
            if (apply == "gamma") a = grading(a);
            if (apply == "adjoint") a = adjoint(a);
            EvalConfig e;
            if (nodes > 0) e.laplace.nodes_per_dim = nodes;
            e.laplace.seed = cfg.seed;
            emit(ordered_json{{"element", print_element(a)}, {"phi", cjson(phi(a, e))}}.dump(2) + "\n", out);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
