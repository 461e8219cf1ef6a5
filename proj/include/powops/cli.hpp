#pragma once

#include <algorithm>
#include <array>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "powops/completion.hpp"
#include "powops/module_expr.hpp"
#include "powops/power_piece.hpp"
#include "powops/telescope.hpp"

namespace powops {

using Json = nlohmann::ordered_json;

/// One parsed invocation. The subcommand decides which fields are read;
/// run_command validates presence and bounds and throws ParseError on user
/// mistakes.
struct CommandRequest {
    std::string subcommand;
    long long p = 0;
    std::optional<unsigned long long> n;
    std::optional<unsigned> k;
    std::optional<unsigned> k_max;
    std::string module_expr;
    std::string matrix_text;
    std::string element_text;  // the integer expanded by `taylor`
    bool json = false;
    std::optional<unsigned long long> max_n;  // overrides the n ≤ p² default
    std::optional<unsigned> max_k;            // overrides the k ≤ 12 default
};

namespace cli_detail {

inline Json normal_form_json(const NormalForm& nf) {
    Json j;
    j["free_rank"] = nf.free_rank;
    j["torsion"] = Json::array();
    for (unsigned e : nf.torsion) {
        j["torsion"].push_back(e);
    }
    return j;
}

/// Matrix entries as decimal strings: exact at any size, stable shape.
inline Json matrix_json(const IntMat& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c).str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline unsigned long long require_n(const CommandRequest& req) {
    if (!req.n.has_value()) {
        throw ParseError("missing required --n");
    }
    return *req.n;
}

inline PrimeContext require_prime(const CommandRequest& req) {
    if (req.p == 0) {
        throw ParseError("missing required --p");
    }
    try {
        return PrimeContext(req.p);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

/// Enforce the weight bound (default n ≤ p², raised via --max-n) and warn
/// once computations leave the cheap regime.
inline void check_weight(const CommandRequest& req, PrimeContext prime,
                         unsigned long long n, std::ostream& err) {
    const auto p = static_cast<unsigned long long>(prime.p());
    const unsigned long long bound = req.max_n.value_or(p * p);
    if (n > bound) {
        throw ParseError("weight " + std::to_string(n) + " exceeds the bound " +
                         std::to_string(bound) + " (raise with --max-n)");
    }
    if (n > p * p * p) {
        err << "warning: weight " << n << " exceeds p^3 = " << (p * p * p)
            << "; monomial counts grow like partition numbers, expect a long run\n";
    }
}

/// Enforce the exponent bound (default k ≤ 12, raised via --max-k).
inline void check_exponent(const CommandRequest& req, unsigned k, const char* what) {
    const unsigned bound = req.max_k.value_or(12);
    if (k < 1 || k > bound) {
        throw ParseError(std::string(what) + " " + std::to_string(k) +
                         " is outside [1, " + std::to_string(bound) +
                         "] (raise with --max-k)");
    }
}

inline IntMat require_matrix(const CommandRequest& req) {
    if (req.matrix_text.empty()) {
        throw ParseError("missing required --matrix");
    }
    return parse_matrix_text(req.matrix_text);
}

inline PresentedModule require_module(const CommandRequest& req, PrimeContext prime) {
    if (req.module_expr.empty()) {
        throw ParseError("missing required --module");
    }
    return parse_module_expr(req.module_expr, prime);
}

inline void emit(const Json& j, std::ostream& out) { out << j.dump() << "\n"; }

inline int cmd_tn(const CommandRequest& req, std::ostream& out, std::ostream& err) {
    const PrimeContext prime = require_prime(req);
    const unsigned long long n = require_n(req);
    check_weight(req, prime, n, err);
    const PresentedModule m = require_module(req, prime);
    const NormalForm result = power_piece(m, n).module.normal_form();
    if (req.json) {
        emit(normal_form_json(result), out);
    } else {
        out << render_normal_form(result) << "\n";
    }
    return 0;
}

inline int cmd_tn_map(const CommandRequest& req, std::ostream& out, std::ostream& err) {
    const PrimeContext prime = require_prime(req);
    const unsigned long long n = require_n(req);
    check_weight(req, prime, n, err);
    if (!req.k.has_value()) {
        throw ParseError("missing required --k");
    }
    check_exponent(req, *req.k, "exponent k");

    const PresentedModule zp = PresentedModule::free_module(prime, 1);
    const ModuleMap q(zp, PresentedModule::cyclic(prime, *req.k), IntMat{{1}});
    const ModuleMap tq = power_piece_map(q, n);
    const bool residue_iso = is_iso_map(residue_tensor(tq));

    if (req.json) {
        Json j;
        j["p"] = prime.p();
        j["n"] = n;
        j["k"] = *req.k;
        j["source"] = normal_form_json(tq.source().normal_form());
        j["target"] = normal_form_json(tq.target().normal_form());
        j["matrix"] = matrix_json(tq.matrix());
        j["residue_iso"] = residue_iso;
        emit(j, out);
    } else {
        out << "source: " << render_normal_form(tq.source().normal_form()) << "\n";
        out << "target: " << render_normal_form(tq.target().normal_form()) << "\n";
        out << "matrix: " << matrix_to_text(tq.matrix()) << "\n";
        out << "residue iso: " << (residue_iso ? "yes" : "no") << "\n";
    }
    return 0;
}

inline int cmd_stabilize(const CommandRequest& req, std::ostream& out, std::ostream& err) {
    const PrimeContext prime = require_prime(req);
    const unsigned long long n = require_n(req);
    check_weight(req, prime, n, err);
    const unsigned k_max = req.k_max.value_or(8);
    check_exponent(req, k_max, "bound k-max");

    const StabilizationScan scan = stabilization_scan(prime, n, k_max);
    if (req.json) {
        Json j;
        j["n"] = n;
        j["flags"] = Json::array();
        for (bool flag : scan.flags) {
            j["flags"].push_back(flag);
        }
        j["k0"] = scan.k0.has_value() ? Json(*scan.k0) : Json(nullptr);
        emit(j, out);
    } else {
        for (std::size_t i = 0; i < scan.flags.size(); ++i) {
            out << "k=" << (i + 1) << ": " << (scan.flags[i] ? "yes" : "no") << "\n";
        }
        if (scan.k0.has_value()) {
            out << "k0 = " << *scan.k0 << "\n";
        } else {
            out << "k0 = none within k-max\n";
        }
    }
    return 0;
}

inline int cmd_example_table(const CommandRequest& req, std::ostream& out, std::ostream&) {
    const PrimeContext prime = require_prime(req);
    const unsigned k_max = req.k_max.value_or(8);
    check_exponent(req, k_max, "bound k-max");
    const auto n = static_cast<unsigned long long>(prime.p());

    const auto rows = residue_stabilization_table(prime, n, k_max);
    if (req.json) {
        Json j;
        j["p"] = prime.p();
        j["n"] = n;
        j["rows"] = Json::array();
        for (const ResidueTableRow& row : rows) {
            Json r;
            r["k"] = row.k;
            r["source"] = normal_form_json(row.source);
            r["target"] = normal_form_json(row.target);
            r["iso"] = row.isomorphism;
            j["rows"].push_back(std::move(r));
        }
        emit(j, out);
    } else {
        // Fixed-width text table; widths from the widest cell.
        std::vector<std::array<std::string, 4>> cells;
        cells.push_back({"k", "Z/p (x) T_p(Zp)", "Z/p (x) T_p(Z/p^k)", "iso"});
        for (const ResidueTableRow& row : rows) {
            cells.push_back({std::to_string(row.k), render_normal_form(row.source),
                             render_normal_form(row.target),
                             row.isomorphism ? "yes" : "no"});
        }
        std::array<std::size_t, 4> width = {0, 0, 0, 0};
        for (const auto& row : cells) {
            for (std::size_t c = 0; c < 4; ++c) {
                width[c] = std::max(width[c], row[c].size());
            }
        }
        for (const auto& row : cells) {
            for (std::size_t c = 0; c < 4; ++c) {
                out << (c == 0 ? "" : " | ") << std::left;
                if (c + 1 < 4) {
                    out << std::setw(static_cast<int>(width[c]));
                }
                out << row[c];
            }
            out << "\n";
        }
    }
    return 0;
}

inline int cmd_snf(const CommandRequest& req, std::ostream& out, std::ostream&) {
    const IntMat a = require_matrix(req);
    const SmithDecomposition snf = smith_normal_form(a);
    if (req.json) {
        Json j;
        j["diag"] = matrix_json(snf.diag);
        j["left"] = matrix_json(snf.left);
        j["right"] = matrix_json(snf.right);
        j["invariant_factors"] = Json::array();
        for (const Int& f : snf.invariant_factors()) {
            j["invariant_factors"].push_back(f.str());
        }
        emit(j, out);
    } else {
        out << "diag: " << matrix_to_text(snf.diag) << "\n";
        out << "left: " << matrix_to_text(snf.left) << "\n";
        out << "right: " << matrix_to_text(snf.right) << "\n";
        out << "invariant factors:";
        for (const Int& f : snf.invariant_factors()) {
            out << " " << f.str();
        }
        out << "\n";
    }
    return 0;
}

inline int cmd_telescope(const CommandRequest& req, std::ostream& out, std::ostream&) {
    const PrimeContext prime = require_prime(req);
    const IntMat phi = require_matrix(req);
    if (phi.rows() != phi.cols()) {
        throw ParseError("telescope: matrix must be square");
    }
    const bool nilpotent = is_nilpotent_mod_p(phi, prime);
    const std::size_t rank = telescope_residue_rank(phi, prime);
    const bool consistent = (rank == 0) == nilpotent;
    if (req.json) {
        Json j;
        j["p"] = prime.p();
        j["nilpotent"] = nilpotent;
        j["residue_rank"] = rank;
        j["consistent"] = consistent;
        emit(j, out);
    } else {
        out << "nilpotent mod p: " << (nilpotent ? "true" : "false") << "\n";
        out << "telescope residue rank: " << rank << "\n";
        out << "consistent: " << (consistent ? "true" : "false") << "\n";
    }
    return 0;
}

inline int cmd_taylor(const CommandRequest& req, std::ostream& out, std::ostream&) {
    const PrimeContext prime = require_prime(req);
    if (req.element_text.empty()) {
        throw ParseError("missing required --a");
    }
    const Int a = parse_int(req.element_text);
    if (!req.k.has_value()) {
        throw ParseError("missing required --k (digit count)");
    }
    check_exponent(req, *req.k, "digit count k");
    const auto digits = taylor_expand(a, *req.k, prime);
    if (req.json) {
        Json j;
        j["p"] = prime.p();
        j["a"] = a.str();
        j["digits"] = Json::array();
        for (const Int& d : digits) {
            j["digits"].push_back(d.convert_to<long long>());
        }
        emit(j, out);
    } else {
        out << "digits:";
        for (const Int& d : digits) {
            out << " " << d.str();
        }
        out << "\n";
    }
    return 0;
}

inline int cmd_analytic_coker(const CommandRequest& req, std::ostream& out, std::ostream&) {
    const PrimeContext prime = require_prime(req);
    const unsigned long long n = require_n(req);
    if (n < 1 || n > req.max_k.value_or(12)) {
        throw ParseError("truncation order " + std::to_string(n) + " is outside [1, " +
                         std::to_string(req.max_k.value_or(12)) + "] (raise with --max-k)");
    }
    const PresentedModule m = require_module(req, prime);
    const NormalForm result =
        truncated_analytic_cokernel(m, static_cast<std::size_t>(n)).normal_form();
    if (req.json) {
        emit(normal_form_json(result), out);
    } else {
        out << render_normal_form(result) << "\n";
    }
    return 0;
}

}  // namespace cli_detail

/// Execute one request, writing results to `out` and warnings to `err`.
/// Throws ParseError for user mistakes; anything else that escapes is an
/// internal error (the binary maps exception classes to exit codes).
inline int run_command(const CommandRequest& req, std::ostream& out, std::ostream& err) {
    if (req.subcommand == "tn") {
        return cli_detail::cmd_tn(req, out, err);
    }
    if (req.subcommand == "tn-map") {
        return cli_detail::cmd_tn_map(req, out, err);
    }
    if (req.subcommand == "stabilize") {
        return cli_detail::cmd_stabilize(req, out, err);
    }
    if (req.subcommand == "example-3-1") {
        return cli_detail::cmd_example_table(req, out, err);
    }
    if (req.subcommand == "snf") {
        return cli_detail::cmd_snf(req, out, err);
    }
    if (req.subcommand == "telescope") {
        return cli_detail::cmd_telescope(req, out, err);
    }
    if (req.subcommand == "taylor") {
        return cli_detail::cmd_taylor(req, out, err);
    }
    if (req.subcommand == "analytic-coker") {
        return cli_detail::cmd_analytic_coker(req, out, err);
    }
    throw ParseError("unknown subcommand: " + req.subcommand);
}

/// run_command with the exception-to-exit-code policy applied: 0 success,
/// 2 user error, 3 internal error (exactness violations and other bugs).
inline int run_command_with_exit_codes(const CommandRequest& req, std::ostream& out,
                                       std::ostream& err) {
    try {
        return run_command(req, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ExactnessError& e) {
        err << "internal exactness violation: " << e.what() << "\n";
        return 3;
    } catch (const IllDefinedMapError& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace powops
