#include "quadidem/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadidem/factorizer.hpp"
#include "quadidem/integer_toolkit.hpp"
#include "quadidem/verifier_oracle.hpp"

namespace quadidem::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitParse = 3;
constexpr int kExitNotSingular = 4;
constexpr int kExitRefused = 5;

mpz_class parse_mpz(const ordered_json& j) {
    try {
        if (j.is_string()) return mpz_class(j.get<std::string>());
        if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    } catch (const std::exception&) {
    }
    throw ParseError("expected an integer or decimal string, got " + j.dump());
}

QuadInt parse_element(const RingSpec& ring, const ordered_json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("element must be a [a, b] coordinate pair, got " + j.dump());
    }
    return QuadInt(ring, parse_mpz(j[0]), parse_mpz(j[1]));
}

ordered_json element_json(const QuadInt& q) {
    return ordered_json::array({q.a().get_str(), q.b().get_str()});
}

ordered_json matrix_json(const Mat2& m) {
    return ordered_json::array({
        ordered_json::array({element_json(m.e11()), element_json(m.e12())}),
        ordered_json::array({element_json(m.e21()), element_json(m.e22())}),
    });
}

ordered_json ring_json(const RingSpec& ring) {
    return ordered_json{{"d", ring.d()}, {"form", ring.form() == Form::Half ? "half" : "whole"}};
}

ordered_json trace_json(const std::vector<TraceStep>& steps) {
    ordered_json arr = ordered_json::array();
    for (const TraceStep& s : steps) {
        arr.push_back(ordered_json{{"rule", rule_name(s.rule)}, {"detail", s.detail}});
    }
    return arr;
}

ordered_json factors_json(const std::vector<IdempotentMat>& factors) {
    ordered_json arr = ordered_json::array();
    for (const IdempotentMat& f : factors) arr.push_back(matrix_json(f.mat()));
    return arr;
}

ordered_json parse_json_text(const std::string& text, const char* what) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(std::string("invalid JSON for ") + what);
    return j;
}

// Either a full 2x2 matrix or a 1x2 row.
struct MatrixInput {
    bool is_row;
    std::optional<Mat2> mat;
    std::optional<std::pair<QuadInt, QuadInt>> row;
};

MatrixInput parse_matrix_input(const RingSpec& ring, const ordered_json& j) {
    if (!j.is_array()) throw ParseError("matrix must be a JSON array");
    if (j.size() == 2 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_array()) {
        Mat2 m(parse_element(ring, j[0][0]), parse_element(ring, j[0][1]),
               parse_element(ring, j[1][0]), parse_element(ring, j[1][1]));
        return {false, m, std::nullopt};
    }
    if (j.size() == 2 && j[0].is_array() && j[0].size() == 2) {
        return {true, std::nullopt,
                std::make_pair(parse_element(ring, j[0]), parse_element(ring, j[1]))};
    }
    throw ParseError("matrix must be [[e11,e12],[e21,e22]] or [x, y]");
}

std::pair<QuadInt, QuadInt> parse_row_shorthand(const RingSpec& ring, const std::string& text) {
    std::istringstream in(text);
    std::vector<QuadInt> parts;
    std::string tok;
    while (in >> tok) {
        size_t comma = tok.find(',');
        if (comma == std::string::npos) {
            throw ParseError("row element must be 'a,b', got '" + tok + "'");
        }
        try {
            parts.emplace_back(ring, mpz_class(tok.substr(0, comma)),
                               mpz_class(tok.substr(comma + 1)));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad integer in row element '" + tok + "'");
        }
    }
    if (parts.size() != 2) throw ParseError("--row expects exactly two 'a,b' elements");
    return {parts[0], parts[1]};
}

RingSpec make_ring(long d, bool half_flag) {
    RingSpec ring(d);
    bool needs_half = ring.form() == Form::Half;
    if (half_flag != needs_half) {
        throw ParseError(needs_half
                             ? "d = " + std::to_string(d) + " is 1 mod 4; pass --half"
                             : "--half is invalid for d = " + std::to_string(d));
    }
    return ring;
}

unsigned chain_budget() {
    const char* env = std::getenv("QUADIDEM_BUDGET");
    if (!env) return kDefaultChainBudget;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) {
        throw ParseError("QUADIDEM_BUDGET must be a positive integer");
    }
    return static_cast<unsigned>(v);
}

int emit(std::ostream& out, const ordered_json& j, int code) {
    out << j.dump(2) << "\n";
    return code;
}

int cmd_factor(std::ostream& out, long d, bool half, const std::string& matrix_text,
               const std::string& row_text) {
    RingSpec ring = make_ring(d, half);
    unsigned budget = chain_budget();

    std::optional<std::pair<QuadInt, QuadInt>> row;
    std::optional<Mat2> full;
    if (!row_text.empty()) {
        row = parse_row_shorthand(ring, row_text);
    } else {
        MatrixInput mi = parse_matrix_input(ring, parse_json_text(matrix_text, "--matrix"));
        if (mi.is_row) {
            row = mi.row;
        } else {
            full = mi.mat;
        }
    }

    if (row) {
        FactorizationTrace trace = factor_row(row->first, row->second, budget);
        ordered_json j{{"status", "factored"},
                       {"ring", ring_json(ring)},
                       {"target", matrix_json(trace.target)},
                       {"factors", factors_json(trace.factors)},
                       {"trace", trace_json(trace.steps)},
                       {"diagnostics", ordered_json::object()}};
        return emit(out, j, kExitOk);
    }

    SingularOutcome res = factor_singular(*full, budget);
    ordered_json diag = ordered_json::object();
    for (const auto& [k, v] : res.diagnostics) diag[k] = v;
    if (res.status == SingularStatus::Factored) {
        ordered_json j{{"status", "factored"},
                       {"ring", ring_json(ring)},
                       {"target", matrix_json(*full)},
                       {"factors", factors_json(res.trace->factors)},
                       {"trace", trace_json(res.trace->steps)},
                       {"diagnostics", diag}};
        return emit(out, j, kExitOk);
    }
    ordered_json j{{"status", "unknown"},
                   {"ring", ring_json(ring)},
                   {"target", matrix_json(*full)},
                   {"factors", ordered_json::array()},
                   {"trace", ordered_json::array()},
                   {"diagnostics", diag}};
    return emit(out, j, kExitUnknown);
}

int cmd_verify(std::ostream& out, long d, bool half, const std::string& factors_text,
               const std::string& target_text) {
    RingSpec ring = make_ring(d, half);
    ordered_json jf = parse_json_text(factors_text, "--factors");
    if (!jf.is_array()) throw ParseError("--factors must be a JSON array of matrices");
    std::vector<Mat2> factors;
    for (const auto& item : jf) {
        MatrixInput mi = parse_matrix_input(ring, item);
        if (mi.is_row) throw ParseError("factors must be full 2x2 matrices");
        factors.push_back(*mi.mat);
    }
    MatrixInput ti = parse_matrix_input(ring, parse_json_text(target_text, "--target"));
    Mat2 target = ti.is_row ? Mat2::row(ti.row->first, ti.row->second) : *ti.mat;

    VerifyReport report = verify(factors, target);
    ordered_json j{{"status", report.ok ? "verified" : "failed"},
                   {"ring", ring_json(ring)},
                   {"target", matrix_json(target)},
                   {"failures", report.failures},
                   {"diagnostics", ordered_json::object()}};
    return emit(out, j, report.ok ? kExitOk : kExitVerifyFailed);
}

int cmd_classify(std::ostream& out, long d, bool half) {
    RingSpec ring = make_ring(d, half);
    RingClass cls = cohn_gate(ring);
    ordered_json diag = ordered_json::object();
    if (cls == RingClass::NotID2Imaginary) {
        diag["reason"] =
            "imaginary quadratic ring outside the five Euclidean radicands (Cohn); "
            "singular matrices need not admit idempotent factorizations";
        ordered_json j{{"status", "refused"},
                       {"ring", ring_json(ring)},
                       {"ring_class", ring_class_name(cls)},
                       {"diagnostics", diag}};
        return emit(out, j, kExitRefused);
    }
    ordered_json j{{"status", "classified"},
                   {"ring", ring_json(ring)},
                   {"ring_class", ring_class_name(cls)},
                   {"diagnostics", diag}};
    if (ring.is_real()) j["fundamental_unit"] = element_json(fundamental_unit(ring));
    return emit(out, j, kExitOk);
}

int cmd_oracle(std::ostream& out, long d, bool half, const std::string& target_text, long height,
               unsigned len) {
    RingSpec ring = make_ring(d, half);
    MatrixInput ti = parse_matrix_input(ring, parse_json_text(target_text, "--target"));
    Mat2 target = ti.is_row ? Mat2::row(ti.row->first, ti.row->second) : *ti.mat;
    auto found = brute_force_factor(target, height, len);
    if (!found) {
        ordered_json j{{"status", "unknown"},
                       {"ring", ring_json(ring)},
                       {"target", matrix_json(target)},
                       {"factors", ordered_json::array()},
                       {"trace", ordered_json::array()},
                       {"diagnostics",
                        ordered_json{{"oracle", "no product within height " +
                                                    std::to_string(height) + " and length " +
                                                    std::to_string(len)}}}};
        return emit(out, j, kExitUnknown);
    }
    std::vector<IdempotentMat> factors = std::move(*found);
    ordered_json j{{"status", "factored"},
                   {"ring", ring_json(ring)},
                   {"target", matrix_json(target)},
                   {"factors", factors_json(factors)},
                   {"trace", ordered_json::array({ordered_json{
                                 {"rule", rule_name(Rule::Oracle)},
                                 {"detail", "height=" + std::to_string(height) +
                                                " len=" + std::to_string(len)}}})},
                   {"diagnostics", ordered_json::object()}};
    return emit(out, j, kExitOk);
}

int error_json(std::ostream& out, const std::string& status, const std::string& message,
               int code) {
    ordered_json j{{"status", status}, {"error", message}};
    return emit(out, j, code);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"idempotent factorizations of singular 2x2 matrices over quadratic integer rings"};
    app.require_subcommand(1);

    long d = 0;
    bool half = false;
    std::string matrix_text, row_text, factors_text, target_text;
    long height = 5;
    unsigned len = 3;

    auto add_ring_opts = [&](CLI::App* cmd) {
        cmd->add_option("--d", d, "square-free radicand of the ring")->required();
        cmd->add_flag("--half", half, "ring of integers is Z[(1+sqrt(d))/2] (d = 1 mod 4)");
    };

    CLI::App* factor = app.add_subcommand("factor", "factor a singular matrix into idempotents");
    add_ring_opts(factor);
    factor->add_option("--matrix", matrix_text, "target as JSON, 2x2 or [x, y] row");
    factor->add_option("--row", row_text, "row shorthand: 'a,b a,b'");

    CLI::App* verify_cmd = app.add_subcommand("verify", "check a claimed factorization exactly");
    add_ring_opts(verify_cmd);
    verify_cmd->add_option("--factors", factors_text, "JSON array of 2x2 matrices")->required();
    verify_cmd->add_option("--target", target_text, "target matrix as JSON")->required();

    CLI::App* classify = app.add_subcommand("classify", "report the factorization class of d");
    add_ring_opts(classify);

    CLI::App* oracle = app.add_subcommand("oracle", "bounded brute-force idempotent search");
    add_ring_opts(oracle);
    oracle->add_option("--target", target_text, "target matrix as JSON")->required();
    oracle->add_option("--height", height, "coordinate height bound");
    oracle->add_option("--len", len, "maximum product length");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (factor->parsed()) {
            if (matrix_text.empty() == row_text.empty()) {
                throw ParseError("factor needs exactly one of --matrix or --row");
            }
            return cmd_factor(out, d, half, matrix_text, row_text);
        }
        if (verify_cmd->parsed()) return cmd_verify(out, d, half, factors_text, target_text);
        if (classify->parsed()) return cmd_classify(out, d, half);
        if (oracle->parsed()) return cmd_oracle(out, d, half, target_text, height, len);
        err << "no subcommand\n";
        return kExitParse;
    } catch (const NotSingular& e) {
        return error_json(out, "refused", e.what(), kExitNotSingular);
    } catch (const NotRealQuadratic& e) {
        RingClass cls = RingClass::SupportedRealQuadratic;
        try {
            cls = cohn_gate(RingSpec(d));
        } catch (const Error&) {
        }
        if (cls == RingClass::NotID2Imaginary) {
            return error_json(out, "refused", e.what(), kExitRefused);
        }
        return error_json(out, "refused", e.what(), kExitParse);
    } catch (const InvalidRing& e) {
        return error_json(out, "refused", e.what(), kExitRefused);
    } catch (const ParseError& e) {
        return error_json(out, "refused", e.what(), kExitParse);
    } catch (const SearchExhausted& e) {
        return error_json(out, "unknown", e.what(), kExitUnknown);
    } catch (const Error& e) {
        return error_json(out, "refused", e.what(), kExitParse);
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace quadidem::cli
