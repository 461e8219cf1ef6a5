// Command-line front end: flag parsing only, all real work in powops/cli.hpp.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "powops/cli.hpp"

namespace {

/// Attach the flags shared by every subcommand that takes a prime.
void add_prime_flag(CLI::App* cmd, powops::CommandRequest& req) {
    cmd->add_option("--p", req.p, "prime p")->required();
}

void add_json_flag(CLI::App* cmd, powops::CommandRequest& req) {
    cmd->add_flag("--json", req.json, "emit machine-readable JSON instead of text");
}

void add_bound_overrides(CLI::App* cmd, powops::CommandRequest& req) {
    cmd->add_option("--max-n", req.max_n, "raise the weight bound (default p^2)");
    cmd->add_option("--max-k", req.max_k, "raise the exponent bound (default 12)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact power-operation calculator for p-complete modules"};
    app.require_subcommand(1);

    powops::CommandRequest req;

    CLI::App* tn = app.add_subcommand(
        "tn", "normal form of the weight-n power-operation piece T_n of a module");
    add_prime_flag(tn, req);
    tn->add_option("--n", req.n, "weight")->required();
    tn->add_option("--module", req.module_expr, "module expression, e.g. \"Zp^2 + Z/p^3\"")
        ->required();
    add_json_flag(tn, req);
    add_bound_overrides(tn, req);

    CLI::App* tn_map = app.add_subcommand(
        "tn-map", "matrix of T_n applied to the quotient Zp -> Z/p^k, with mod-p verdict");
    add_prime_flag(tn_map, req);
    tn_map->add_option("--n", req.n, "weight")->required();
    tn_map->add_option("--k", req.k, "exponent of the cyclic target")->required();
    add_json_flag(tn_map, req);
    add_bound_overrides(tn_map, req);

    CLI::App* stabilize = app.add_subcommand(
        "stabilize", "scan k = 1..k-max for where Z/p (x) T_n(q_k) becomes an isomorphism");
    add_prime_flag(stabilize, req);
    stabilize->add_option("--n", req.n, "weight")->required();
    stabilize->add_option("--k-max", req.k_max, "largest exponent to scan (default 8)");
    add_json_flag(stabilize, req);
    add_bound_overrides(stabilize, req);

    CLI::App* table = app.add_subcommand(
        "example-3-1", "mod-p comparison table for the weight-p piece across cyclic quotients");
    add_prime_flag(table, req);
    table->add_option("--k-max", req.k_max, "largest exponent row (default 8)");
    add_json_flag(table, req);
    add_bound_overrides(table, req);

    CLI::App* snf = app.add_subcommand(
        "snf", "Smith normal form of an integer matrix, with unimodular transforms");
    snf->add_option("--matrix", req.matrix_text, "matrix as [[a,b],[c,d]]")->required();
    add_json_flag(snf, req);

    CLI::App* telescope = app.add_subcommand(
        "telescope", "nilpotence mod p of a square matrix and its telescope residue rank");
    add_prime_flag(telescope, req);
    telescope->add_option("--matrix", req.matrix_text, "square matrix as [[a,b],[c,d]]")
        ->required();
    add_json_flag(telescope, req);

    CLI::App* taylor = app.add_subcommand(
        "taylor", "base-p digit expansion of an integer to k digits");
    add_prime_flag(taylor, req);
    taylor->add_option("--a", req.element_text, "integer to expand")->required();
    taylor->add_option("--k", req.k, "digit count")->required();
    add_json_flag(taylor, req);
    add_bound_overrides(taylor, req);

    CLI::App* coker = app.add_subcommand(
        "analytic-coker", "cokernel of x - p on the order-n truncated polynomial module");
    add_prime_flag(coker, req);
    coker->add_option("--n", req.n, "truncation order")->required();
    coker->add_option("--module", req.module_expr, "module expression, e.g. \"Zp + Z/p^2\"")
        ->required();
    add_json_flag(coker, req);
    add_bound_overrides(coker, req);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // user error; --help and --version stay 0
    }

    req.subcommand = app.get_subcommands().front()->get_name();
    return powops::run_command_with_exit_codes(req, std::cout, std::cerr);
}
