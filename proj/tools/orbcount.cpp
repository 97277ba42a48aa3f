// orbcount: predict and count integer matrices with a given characteristic polynomial.
//
// exit codes: 0 ok, 1 usage/argument error, 2 hypothesis violation,
//             3 budget exceeded, 4 I/O or network error

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbcount/orbcount.hpp"

using namespace orbcount;

namespace {

enum Exit { ok = 0, usage = 1, hypothesis = 2, budget = 3, io = 4, internal = 70 };

struct Config {
    std::string chi_text;
    std::vector<double> thresholds;
    std::string source = "auto";
    std::string file;
    std::uint32_t bound = 1000000;
    int branch = 1;
    double budget = default_budget;
    unsigned threads = 0;
    std::string output = "json";
    bool breakdown = false;
    bool no_orbital = false;
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

IntPolynomial load_chi(const std::string& text) { return parse_polynomial(text); }

BigInt parse_integer(const std::string& text, const char* what) {
    try {
        return BigInt(text);
    } catch (const std::exception&) {
        throw ArgumentError(std::string(what) + " is not an integer: '" + text + "'");
    }
}

/// Both hypotheses are checked before any computation.
void require_hypotheses(const IntPolynomial& chi, bool totally_real) {
    const int n = chi.degree();
    if (n != 2 && n != 3) throw UnsupportedDegree("degree " + std::to_string(n) + " is not supported (need 2 or 3)");
    if (!is_irreducible_low_degree(chi)) throw HypothesisViolation("chi is reducible over Q");
    if (totally_real && !is_totally_real(chi)) throw HypothesisViolation("K is not totally real");
}

FieldInvariants resolve_invariants(const IntPolynomial& chi, const Config& cfg) {
    const int n = chi.degree();
    std::string src = cfg.source;
    if (src == "auto") src = n == 2 ? "builtin" : "estimate";
    FieldInvariants inv;
    if (src == "builtin") {
        if (n != 2) throw ArgumentError("builtin invariants exist for quadratic fields only; use --source estimate|file|remote");
        inv = quadratic_invariants(field_discriminant(chi));
    } else if (src == "estimate") {
        inv = residue_estimate_invariants(chi, cfg.bound);
    } else if (src == "file") {
        if (cfg.file.empty()) throw ArgumentError("--source file needs --file");
        inv = load_invariants_file(cfg.file);
    } else if (src == "remote") {
        inv = fetch_invariants_remote(field_discriminant(chi), n, fetch_options_from_env());
    } else {
        throw ArgumentError("unknown source '" + src + "'");
    }
    if (inv.field_discriminant != field_discriminant(chi))
        throw ArgumentError("invariants are for discriminant " + inv.field_discriminant.str() + ", chi has field discriminant " +
                            field_discriminant(chi).str());
    return inv;
}

AsymptoticPrediction prediction_for(const IntPolynomial& chi, const Config& cfg, OrbitalProduct* orb_out = nullptr,
                                    FieldInvariants* inv_out = nullptr) {
    OrbitalProduct orb = global_orbital_product(chi);
    if (orb_out) *orb_out = orb;
    const FieldInvariants inv = resolve_invariants(chi, cfg);
    if (inv_out) *inv_out = inv;
    if (cfg.no_orbital) orb.value = 1;
    return assemble_leading_constant(chi, inv, orb, cfg.branch);
}

int run_predict(const Config& cfg) {
    const IntPolynomial chi = load_chi(cfg.chi_text);
    require_hypotheses(chi, true);
    OrbitalProduct orb;
    FieldInvariants inv;
    const AsymptoticPrediction pred = prediction_for(chi, cfg, &orb, &inv);
    json j = to_json(pred);
    j["chi"] = chi.to_string();
    j["orbital_applied"] = !cfg.no_orbital;
    if (cfg.breakdown) {
        j["factors"] = to_json(orb)["factors"];
        j["invariants"] = to_json(inv);
    }
    emit(j);
    return ok;
}

CountOptions count_options(const Config& cfg) { return {cfg.budget, cfg.threads}; }

// Rows are printed as they finish; a budget stop leaves them in place and flags the rest.
int run_count(const Config& cfg, bool compare) {
    const IntPolynomial chi = load_chi(cfg.chi_text);
    require_hypotheses(chi, compare);
    if (cfg.thresholds.empty()) throw ArgumentError("--T needs at least one threshold");
    if (!std::is_sorted(cfg.thresholds.begin(), cfg.thresholds.end())) throw ArgumentError("thresholds must be ascending");
    std::optional<AsymptoticPrediction> pred;
    if (compare) pred = prediction_for(chi, cfg);

    const bool csv = cfg.output == "csv";
    if (csv) std::cout << (compare ? "T,N,elapsed_s,predicted,ratio\n" : "T,N,elapsed_s\n") << std::flush;
    json rows = json::array();
    std::string stop;
    for (double T : cfg.thresholds) {
        CountResult r;
        try {
            r = count_thresholds(chi, {T}, count_options(cfg));
        } catch (const BudgetExceeded& e) {
            stop = e.what();
            if (csv) std::cout << "# partial: budget exceeded at T=" << format_real(T) << "\n";
            break;
        }
        json row = to_json(r)["rows"][0];
        if (compare) {
            const ConvergenceRow c = convergence_table(r, *pred).front();
            row["predicted"] = round_sig(c.predicted);
            row["ratio"] = round_sig(c.ratio);
        }
        if (csv) {
            std::cout << format_real(T) << "," << r.counts[0] << "," << format_real(r.elapsed[0]);
            if (compare) std::cout << "," << format_real(row["predicted"].get<double>()) << "," << format_real(row["ratio"].get<double>());
            std::cout << "\n" << std::flush;
        }
        rows.push_back(row);
    }
    if (!csv) {
        json j{{"chi", chi.to_string()}, {"rows", rows}, {"partial", !stop.empty()}};
        if (compare) {
            j["c"] = round_sig(pred->coefficient);
            j["m"] = pred->m;
            j["orbital_applied"] = !cfg.no_orbital;
        }
        emit(j);
    }
    if (!stop.empty()) {
        std::cerr << "orbcount: budget exceeded: " << stop << "\n";
        return budget;
    }
    return ok;
}

int run_local_report(const Config& cfg, const std::string& p_text) {
    const IntPolynomial chi = load_chi(cfg.chi_text);
    require_hypotheses(chi, false);
    if (p_text.empty()) {
        json all = json::array();
        for (const auto& prof : ramified_primes(chi)) all.push_back(to_json(prof));
        emit(all);
    } else {
        emit(to_json(local_splitting(chi, parse_integer(p_text, "--p"))));
    }
    return ok;
}

int run_oracle_check(const Config& cfg, const std::string& p_text, int depth) {
    const IntPolynomial chi = load_chi(cfg.chi_text);
    require_hypotheses(chi, false);
    const BigInt p = parse_integer(p_text, "--p");
    if (depth <= 0) depth = std::max(1, conductor_exponent(maximal_order_at_p(chi, p).order, p));
    const CensusResult census = stable_lattice_census(chi, p, depth);
    const BigInt formula = orbital_value(local_splitting(chi, p));
    json j = to_json(census);
    j["formula"] = bigint_json(formula);
    j["agree"] = census.census == formula;
    emit(j);
    return census.census == formula ? ok : internal;
}

int run_invariants(const Config& cfg, const std::string& disc_text, int degree) {
    const BigInt disc = parse_integer(disc_text, "--disc");
    FieldInvariants inv;
    if (cfg.source == "builtin" || cfg.source == "auto") {
        if (degree != 2) throw ArgumentError("builtin invariants exist for quadratic fields only");
        inv = quadratic_invariants(disc);
    } else if (cfg.source == "file") {
        if (cfg.file.empty()) throw ArgumentError("--source file needs --file");
        inv = load_invariants_file(cfg.file);
        if (inv.field_discriminant != disc) throw ArgumentError("file holds invariants for discriminant " + inv.field_discriminant.str());
    } else if (cfg.source == "remote") {
        inv = fetch_invariants_remote(disc, degree, fetch_options_from_env());
    } else {
        throw ArgumentError("invariants --source must be builtin, file or remote");
    }
    if (inv.degree == 0) inv.degree = degree;
    emit(to_json(inv));
    return ok;
}

double env_budget() {
    if (const char* b = std::getenv("ORBCOUNT_BUDGET"); b && *b) {
        try {
            return std::stod(b);
        } catch (const std::exception&) {
            throw ArgumentError(std::string("ORBCOUNT_BUDGET is not a number: ") + b);
        }
    }
    return default_budget;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Count integer matrices with a fixed characteristic polynomial"};
    app.require_subcommand(1);
    Config cfg;
    std::string p_text, disc_text;
    int depth = 0, degree = 2;

    try {
        cfg.budget = env_budget();
    } catch (const ArgumentError& e) {
        std::cerr << "orbcount: " << e.what() << "\n";
        return usage;
    }

    auto add_chi = [&](CLI::App* sub) {
        sub->add_option("--chi", cfg.chi_text, "polynomial, e.g. x^2-x-1 or 1,-1,-1 (constant first)")->required();
    };
    auto add_prediction = [&](CLI::App* sub) {
        sub->add_option("--source", cfg.source, "invariants: auto|builtin|estimate|file|remote")
            ->check(CLI::IsMember({"auto", "builtin", "estimate", "file", "remote"}));
        sub->add_option("--file", cfg.file, "invariants JSON for --source file");
        sub->add_option("--bound", cfg.bound, "ideal-count bound for --source estimate")->check(CLI::Range(1000u, 100000000u));
        sub->add_option("--branch", cfg.branch, "1, or 2 for the synthetic unramified-Galois case")->check(CLI::IsMember({1, 2}));
        sub->add_flag("--no-orbital", cfg.no_orbital, "debug: drop the orbital product");
    };
    auto add_enumeration = [&](CLI::App* sub) {
        sub->add_option("--T", cfg.thresholds, "ascending thresholds")->required()->delimiter(',');
        sub->add_option("--budget", cfg.budget, "max enumeration steps (env ORBCOUNT_BUDGET)")->check(CLI::PositiveNumber);
        sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
        sub->add_option("--output", cfg.output, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* predict = app.add_subcommand("predict", "leading constant c with N(X,T) ~ c T^m");
    add_chi(predict);
    add_prediction(predict);
    predict->add_flag("--breakdown", cfg.breakdown, "include orbital factors and invariants");

    auto* count = app.add_subcommand("count", "exact N(X,T)");
    add_chi(count);
    add_enumeration(count);

    auto* compare = app.add_subcommand("compare", "N(X,T) against c T^m");
    add_chi(compare);
    add_enumeration(compare);
    add_prediction(compare);

    auto* local = app.add_subcommand("local-report", "splitting data at p, or at every prime dividing disc(chi)");
    add_chi(local);
    local->add_option("--p", p_text, "prime");

    auto* oracle = app.add_subcommand("oracle-check", "lattice census against the orbital formula");
    add_chi(oracle);
    oracle->add_option("--p", p_text, "prime")->required();
    oracle->add_option("--depth", depth, "census depth c, default the conductor exponent");

    auto* invariants = app.add_subcommand("invariants", "class number and regulator of a field");
    invariants->add_option("--disc", disc_text, "field discriminant")->required();
    invariants->add_option("--degree", degree, "field degree")->check(CLI::IsMember({2, 3}));
    invariants->add_option("--source", cfg.source, "builtin|file|remote")->check(CLI::IsMember({"builtin", "file", "remote"}));
    invariants->add_option("--file", cfg.file, "invariants JSON for --source file");

    count->callback([&] { cfg.output = count->count("--output") ? cfg.output : "csv"; });
    compare->callback([&] { cfg.output = compare->count("--output") ? cfg.output : "csv"; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (predict->parsed()) return run_predict(cfg);
        if (count->parsed()) return run_count(cfg, false);
        if (compare->parsed()) return run_count(cfg, true);
        if (local->parsed()) return run_local_report(cfg, p_text);
        if (oracle->parsed()) return run_oracle_check(cfg, p_text, depth);
        if (invariants->parsed()) return run_invariants(cfg, disc_text, degree);
    } catch (const HypothesisViolation& e) {
        std::cerr << "orbcount: hypothesis violated: " << e.what() << "\n";
        return hypothesis;
    } catch (const UnsupportedDegree& e) {
        std::cerr << "orbcount: hypothesis violated: " << e.what() << "\n";
        return hypothesis;
    } catch (const BudgetExceeded& e) {
        std::cerr << "orbcount: budget exceeded: " << e.what() << "\n";
        return budget;
    } catch (const NetworkError& e) {
        std::cerr << "orbcount: network error: " << e.what() << "\n";
        return io;
    } catch (const IoError& e) {
        std::cerr << "orbcount: I/O error: " << e.what() << "\n";
        return io;
    } catch (const Error& e) {
        std::cerr << "orbcount: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "orbcount: internal error: " << e.what() << "\n";
        return internal;
    }
    return usage;
}
