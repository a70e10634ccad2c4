// Command line front end. Subcommands: gen, classify, decompose, verify,
// selftest. Matrices, classifications, factorizations, and verification
// reports travel as JSON on files or standard streams ("-" means stdin).
// Exit codes: 0 success, 1 failed verification or a domain/numerical error,
// 2 malformed input. ISOFACTOR_TOL overrides the residual tolerance; --tol
// does the same per invocation and wins over the environment.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isofactor/json_io.hpp"
#include "isofactor/selftest.hpp"

using namespace isofactor;

namespace {

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot open " + path);
        ss << in.rdbuf();
    }
    return ss.str();
}

Mat load_matrix(const std::string& path) {
    return matrix_from_json(parse_json(read_input(path)));
}

HermitianSpace space_for(const Mat& t) {
    if (t.rows() != t.cols() || t.rows() < 2)
        throw ParseError("expected a square matrix of dimension at least 2");
    return HermitianSpace{t.rows() - 1};
}

double positive_tol(const std::string& text, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !(v > 0.0) ||
        !std::isfinite(v))
        throw ParseError(std::string(what) + " must be a positive number");
    return v;
}

Tols resolve_tols(double tol_flag) {
    Tols tols{};
    if (const char* env = std::getenv("ISOFACTOR_TOL"))
        tols.residual = positive_tol(env, "ISOFACTOR_TOL");
    if (tol_flag > 0.0) tols.residual = tol_flag;
    return tols;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::pair<int, int> parse_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, dots)),
                std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("--n-range expects LO..HI, for example 2..4");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"classify complex hyperbolic isometries and factor them "
                 "into involutions, reflections, and anti-holomorphic maps"};
    app.require_subcommand(1);

    std::string gen_class = "elliptic", in_file, target_file, factors_file;
    std::string dec_target = "involutions", n_range = "2..4";
    int gen_n = 2, trials = 20;
    std::uint64_t gen_seed = 0, st_seed = 1;
    double opt_r = 0.0, opt_theta = 0.0, tol_flag = 0.0;
    std::vector<double> opt_phases;
    bool no_conjugate = false, su_mode = false;

    CLI::App* gen = app.add_subcommand(
        "gen", "emit a seeded element of a chosen class as matrix JSON");
    gen->add_option("--class", gen_class,
                    "central, elliptic, hyperbolic, vertical_translation, "
                    "non_vertical_translation, ellipto_translation, "
                    "ellipto_parabolic, or su_n")
        ->required();
    gen->add_option("--n", gen_n,
                    "space dimension; matrices are (n+1)x(n+1), except su_n "
                    "where n is the matrix dimension")
        ->required()
        ->check(CLI::Range(1, 32));
    gen->add_option("--seed", gen_seed, "generator seed");
    CLI::Option* gr = gen->add_option("--r", opt_r, "class-specific modulus");
    CLI::Option* gt =
        gen->add_option("--theta", opt_theta, "class-specific phase");
    CLI::Option* gp = gen->add_option("--phases", opt_phases,
                                      "comma-separated eigenvalue phases")
                          ->delimiter(',');
    gen->add_flag("--no-conjugate", no_conjugate,
                  "emit the normal form without a random change of basis");

    CLI::App* cls = app.add_subcommand(
        "classify", "read matrix JSON and print its classification");
    cls->add_option("file", in_file, "matrix JSON path or -")->required();
    cls->add_option("--tol", tol_flag, "residual tolerance override");

    CLI::App* dec = app.add_subcommand(
        "decompose", "factor a matrix JSON isometry and print the result");
    dec->add_option("file", in_file, "matrix JSON path or -")->required();
    dec->add_option("--target", dec_target,
                    "involutions (default), antiholo, or commutator")
        ->check(CLI::IsMember({"involutions", "antiholo", "commutator"}));
    dec->add_option("--tol", tol_flag, "residual tolerance override");

    CLI::App* ver = app.add_subcommand(
        "verify", "check a factorization claim against its target");
    ver->add_option("target", target_file, "target matrix JSON path or -")
        ->required();
    ver->add_option("factors", factors_file, "factorization JSON path or -")
        ->required();
    ver->add_flag("--su", su_mode,
                  "treat the target as special unitary for the Euclidean "
                  "form instead of an isometry");
    ver->add_option("--tol", tol_flag, "residual tolerance override");

    CLI::App* st = app.add_subcommand(
        "selftest", "run the seeded acceptance sweep and print a summary");
    st->add_option("--n-range", n_range, "space dimensions to sweep, LO..HI");
    st->add_option("--trials", trials, "trials per class and dimension")
        ->check(CLI::Range(1, 100000));
    st->add_option("--seed", st_seed, "sweep seed");
    st->add_option("--tol", tol_flag, "residual tolerance override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Tols tols = resolve_tols(tol_flag);

        if (gen->parsed()) {
            GenSpec spec;
            spec.cls = gen_class_from_string(gen_class);
            spec.n = gen_n;
            spec.seed = gen_seed;
            if (*gr) spec.r = opt_r;
            if (*gt) spec.theta = opt_theta;
            if (*gp) spec.phases = opt_phases;
            spec.conjugate = !no_conjugate;
            emit(generated_to_json(generate(spec)));
        } else if (cls->parsed()) {
            const Mat t = load_matrix(in_file);
            emit(classification_to_json(
                classify_isometry(space_for(t), t, tols)));
        } else if (dec->parsed()) {
            const Mat t = load_matrix(in_file);
            const HermitianSpace sp = space_for(t);
            Factorization f;
            if (dec_target == "antiholo")
                f = antiholo_split(sp, t, tols);
            else if (dec_target == "commutator")
                f = commutator_antiholo(sp, t, tols);
            else
                f = decompose(sp, t, tols);
            emit(factorization_to_json(f));
        } else if (ver->parsed()) {
            const Mat t = load_matrix(target_file);
            const Factorization f =
                factorization_from_json(parse_json(read_input(factors_file)));
            const VerificationReport rep =
                su_mode ? check_su_factorization(t, f, tols)
                        : check_factorization(space_for(t), t, f, tols);
            emit(report_to_json(rep));
            return rep.accepted ? 0 : 1;
        } else if (st->parsed()) {
            SelftestConfig cfg;
            const auto [lo, hi] = parse_range(n_range);
            if (lo < 2 || hi < lo || hi > 16)
                throw ParseError("--n-range must satisfy 2 <= LO <= HI <= 16");
            cfg.n_lo = lo;
            cfg.n_hi = hi;
            cfg.trials = trials;
            cfg.seed = st_seed;
            cfg.tols = tols;
            const std::vector<CheckResult> results = run_selftest(cfg);
            std::cout << render_report(results, cfg);
            for (const CheckResult& r : results)
                if (!r.pass) return 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
