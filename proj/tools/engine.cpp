// Command-line front end: reads JSON instance files, runs the exact-arithmetic
// engine, prints aligned tables or machine-readable JSON reports.
//
// Exit codes: 0 ok, 2 usage/schema error, 3 cap violation, 4 verification
// failure, 5 inapplicable hypotheses.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <findim/cli_support.hpp>
#include <findim/findim.hpp>
#include <findim/json_io.hpp>

using namespace findim;

namespace {

struct CommonOptions {
    std::string instance_path;
    bool json = false;
    bool timings = false;
    int threads = 1;
    int cap_m = 5;
    int cap_dim = 6;

    Caps caps() const {
        Caps c;
        c.power_exponent = cap_m;
        c.power_dimension = cap_dim;
        return c;
    }
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_instance = true) {
    cmd->add_flag("--json", opts.json, "machine-readable JSON output");
    cmd->add_flag("--timings", opts.timings, "include elapsed time (breaks byte determinism)");
    cmd->add_option("--threads", opts.threads, "worker threads for independent filtration levels")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--cap-m", opts.cap_m, "power exponent cap");
    cmd->add_option("--cap-dim", opts.cap_dim, "base total dimension cap for powers");
    if (with_instance)
        cmd->add_option("instance", opts.instance_path, "instance JSON file")->required();
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open instance file '" + path + "'");
    Json parsed;
    try {
        parsed = Json::parse(in);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return instance_from_json(parsed);
}

class Timer {
public:
    long long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const CommonOptions& opts, const Json& report, const std::string& table) {
    if (opts.json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << table;
}

std::string verdict_word(bool pass) { return pass ? "pass" : "fail"; }

// --- powers ------------------------------------------------------------------

struct PowersArgs {
    std::string object;
    std::string kind = "wedge";
    int n = -1;
    std::string lambda;
};

int run_powers(const CommonOptions& opts, const PowersArgs& args) {
    Timer timer;
    InstanceFile instance = load_instance(opts.instance_path);
    const Complex& base = instance.object(args.object);
    Caps caps = opts.caps();

    Json report = Json::object();
    report["command"] = "powers";
    report["version"] = cli::engine_version;
    report["object"] = args.object;
    report["kind"] = args.kind;

    Complex result;
    std::string description;
    if (args.kind == "schur") {
        if (args.lambda.empty()) throw SchemaError("schur powers need --lambda");
        Partition lambda = cli::partition_from_string(args.lambda);
        result = schur_power(base, lambda, caps);
        Json lj = Json::array();
        for (int p : lambda.parts()) lj.push_back(p);
        report["lambda"] = std::move(lj);
        description = "schur " + lambda.to_string();
    } else {
        if (args.n < 0) throw SchemaError("wedge/sym powers need a nonnegative --n");
        result = args.kind == "wedge" ? wedge_power(base, args.n, caps) : sym_power(base, args.n, caps);
        report["n"] = args.n;
        description = args.kind + " n=" + std::to_string(args.n);
    }
    std::map<int, int> h = homology(result);
    bool vanishes = h.empty();
    report["dims"] = dims_to_json(result.dims());
    report["homology"] = dims_to_json(h);
    report["vanishes"] = vanishes;
    if (opts.timings) report["elapsed_ms"] = timer.elapsed_ms();

    std::string table;
    table += "powers " + description + " of '" + args.object + "'\n";
    table += "  dims      : " + cli::format_dims(result.dims()) + "\n";
    table += "  homology  : " + cli::format_dims(h) + "\n";
    table += std::string("  verdict   : ") + (vanishes ? "vanishes" : "nonzero") + "\n";
    if (opts.timings) table += "  elapsed   : " + std::to_string(timer.elapsed_ms()) + " ms\n";
    emit(opts, report, table);
    return cli::exit_ok;
}

// --- dim ---------------------------------------------------------------------

int run_dim(const CommonOptions& opts, const std::string& object_name) {
    Timer timer;
    InstanceFile instance = load_instance(opts.instance_path);
    KimuraProfile profile = kimura_profile(instance.object(object_name), opts.caps());

    Json report = Json::object();
    report["command"] = "dim";
    report["version"] = cli::engine_version;
    report["object"] = object_name;
    report["profile"] = kimura_profile_to_json(profile);
    if (opts.timings) report["elapsed_ms"] = timer.elapsed_ms();

    std::string table;
    table += "dimension profile of '" + object_name + "'\n";
    table += "  even dimension : " + std::to_string(profile.even_dimension) + "\n";
    table += "  odd dimension  : " + std::to_string(profile.odd_dimension) + "\n";
    table += "  wedge witness  : " + std::to_string(profile.wedge_witness) + "\n";
    table += "  sym witness    : " + std::to_string(profile.sym_witness) + "\n";
    table +=
        std::string("  witnesses verified : ") + (profile.witness_verified ? "yes" : "no (capped)") + "\n";
    emit(opts, report, table);
    return cli::exit_ok;
}

// --- filtration --------------------------------------------------------------

Sign parse_sign(const std::string& text) {
    if (text == "+" || text == "plus" || text == "wedge") return Sign::plus;
    if (text == "-" || text == "minus" || text == "sym") return Sign::minus;
    throw SchemaError("bad sign '" + text + "', expected + or -");
}

std::string filtration_table(const FiltrationReport& report) {
    std::string table;
    table += "filtration of the " + std::string(report.sign == Sign::plus ? "wedge" : "symmetric") +
             " power, m=" + std::to_string(report.m) + "\n";
    table += "  power dims    : " + cli::format_dims(report.power_dims) + "\n";
    table += "  power homology: " + cli::format_dims(report.power_homology) + "\n";
    table += "  level  dims_I          dims_J          expected        scalar  verdict\n";
    for (const FiltrationLevel& level : report.levels) {
        char line[160];
        std::string scalar = level.scalar_check.has_value() ? (*level.scalar_check ? "ok" : "FAIL") : "-";
        std::snprintf(line, sizeof(line), "  %-5d  %-14s  %-14s  %-14s  %-6s  %s\n", level.i,
                      cli::format_dims(level.dims_I).c_str(),
                      level.has_piece ? cli::format_dims(level.dims_J).c_str() : "-",
                      level.has_piece ? cli::format_dims(level.expected_dims).c_str() : "-",
                      scalar.c_str(), level.has_piece ? verdict_word(level.pass()).c_str() : "-");
        table += line;
    }
    table += std::string("  telescoping: ") + verdict_word(report.telescoping_ok) +
             ", first level: " + verdict_word(report.first_level_ok) +
             ", last level: " + verdict_word(report.last_level_ok) + "\n";
    table += "  verdict: " + verdict_word(report.pass) + "\n";
    return table;
}

int run_filtration(const CommonOptions& opts, const std::string& map_name, int m,
                   const std::string& sign_text) {
    Timer timer;
    InstanceFile instance = load_instance(opts.instance_path);
    Sign sign = parse_sign(sign_text);
    const ChainMap& f = instance.map(map_name);
    if (!f.is_injective()) throw NotInjective("map '" + map_name + "' is not degreewise injective");
    FiltrationReport report = filtration_report(f, m, sign, opts.caps(), opts.threads);

    Json j = filtration_report_to_json(report);
    Json out = Json::object();
    out["command"] = "filtration";
    out["version"] = cli::engine_version;
    out["map"] = map_name;
    for (auto& [key, value] : j.items()) out[key] = value;
    if (opts.timings) out["elapsed_ms"] = timer.elapsed_ms();

    emit(opts, out, filtration_table(report));
    return cli::exit_code_for_verdict(report.pass);
}

// --- verify ------------------------------------------------------------------

int run_verify(const CommonOptions& opts, const std::string& map_name, const std::string& sign_text) {
    Timer timer;
    InstanceFile instance = load_instance(opts.instance_path);
    Sign sign = parse_sign(sign_text);
    const ChainMap& f = instance.map(map_name);
    if (!f.is_injective()) throw NotInjective("map '" + map_name + "' is not degreewise injective");
    Caps caps = opts.caps();

    std::map<int, Matrix> spans;
    for (const auto& [k, b] : f.stored_blocks()) spans.emplace(k, b);
    Complex z = quotient(f.target(), make_subcomplex(f.target(), spans)).first;

    // Smallest vanishing exponents of X and Z, located on the homology
    // complexes (vanishing of a power is a homology-level statement).
    auto smallest_vanishing = [&](const Complex& c, const char* label) {
        Complex h(homology(c), {});
        for (int e = 1; e <= caps.power_exponent; ++e) {
            Complex power = sign == Sign::plus ? wedge_power(h, e, caps) : sym_power(h, e, caps);
            if (power.is_zero()) return e;
        }
        throw InapplicableError(std::string("no vanishing power of ") + label + " within the caps");
    };
    int a_x = smallest_vanishing(f.source(), "X");
    int b_z = smallest_vanishing(z, "Z");
    TheoremVerdict verdict = verify_main_theorem(f, a_x, b_z, sign, caps);

    Json out = Json::object();
    out["command"] = "verify";
    out["version"] = cli::engine_version;
    out["map"] = map_name;
    Json vj = theorem_verdict_to_json(verdict);
    for (auto& [key, value] : vj.items()) out[key] = value;
    if (opts.timings) out["elapsed_ms"] = timer.elapsed_ms();

    std::string table;
    table += "vanishing propagation along '" + map_name + "' (" + sign_name(sign) + ")\n";
    table += "  a_X = " + std::to_string(verdict.a_x) + ", b_Z = " + std::to_string(verdict.b_z) +
             ", m = a_X + b_Z - 1 = " + std::to_string(verdict.m) + "\n";
    table += std::string("  graded pieces acyclic : ") + verdict_word(verdict.pieces_acyclic) + "\n";
    table += std::string("  power of Y acyclic    : ") + verdict_word(verdict.power_acyclic) + "\n";
    table += "  verdict: " + verdict_word(verdict.pass) + "\n";
    emit(opts, out, table);
    return cli::exit_code_for_verdict(verdict.pass);
}

// --- idempotents ---------------------------------------------------------------

int run_idempotents(const CommonOptions& opts, int n) {
    Timer timer;
    Caps caps; // the group-degree cap applies here
    auto system = idempotent_system(n, caps);

    bool all_idempotent = true, all_orthogonal = true, all_central = true;
    GroupAlgebraElement sum(n);
    Json rows = Json::array();
    std::string table = "central idempotent system of the symmetric group on " + std::to_string(n) +
                        " letters\n  partition      f      idempotent  central\n";
    Integer sum_squares = 0;

    // Centrality against group generators suffices and keeps n = 6 fast.
    std::vector<Permutation> generators;
    if (n >= 2) {
        std::vector<int> swap_first(n);
        for (int j = 0; j < n; ++j) swap_first[j] = j;
        std::swap(swap_first[0], swap_first[1]);
        std::vector<int> cycle(n);
        for (int j = 0; j < n; ++j) cycle[j] = (j + 1) % n;
        generators.push_back(Permutation(swap_first));
        generators.push_back(Permutation(cycle));
    }

    for (const auto& [lambda, e] : system) {
        bool idem = e * e == e;
        bool central = true;
        for (const Permutation& g : generators) {
            GroupAlgebraElement graph = GroupAlgebraElement::of(g);
            if (!(graph * e == e * graph)) central = false;
        }
        all_idempotent = all_idempotent && idem;
        all_central = all_central && central;
        sum = sum + e;
        Integer f = hook_dimension(lambda);
        sum_squares += f * f;

        Json row = Json::object();
        Json pj = Json::array();
        for (int p : lambda.parts()) pj.push_back(p);
        row["partition"] = std::move(pj);
        row["hook_dimension"] = to_string(f);
        row["idempotent"] = idem;
        row["central"] = central;
        rows.push_back(std::move(row));

        char line[120];
        std::snprintf(line, sizeof(line), "  %-13s  %-5s  %-10s  %s\n", lambda.to_string().c_str(),
                      to_string(f).c_str(), idem ? "yes" : "NO", central ? "yes" : "NO");
        table += line;
    }
    for (std::size_t a = 0; a < system.size(); ++a)
        for (std::size_t b = a + 1; b < system.size(); ++b)
            if (!(system[a].second * system[b].second).is_zero()) all_orthogonal = false;
    bool complete = sum == GroupAlgebraElement::unit(n);
    Integer factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    bool squares_ok = sum_squares == factorial;
    bool pass = all_idempotent && all_orthogonal && all_central && complete && squares_ok;

    Json report = Json::object();
    report["command"] = "idempotents";
    report["version"] = cli::engine_version;
    report["n"] = n;
    report["rows"] = std::move(rows);
    report["orthogonal"] = all_orthogonal;
    report["complete"] = complete;
    report["sum_of_squares_ok"] = squares_ok;
    report["verdict"] = verdict_word(pass);
    if (opts.timings) report["elapsed_ms"] = timer.elapsed_ms();

    table += std::string("  pairwise orthogonal: ") + (all_orthogonal ? "yes" : "NO") +
             ", sums to 1: " + (complete ? "yes" : "NO") +
             ", sum of f^2 = n!: " + (squares_ok ? "yes" : "NO") + "\n";
    table += "  verdict: " + verdict_word(pass) + "\n";
    emit(opts, report, table);
    return cli::exit_code_for_verdict(pass);
}

// --- split ---------------------------------------------------------------------

int run_split(const CommonOptions& opts, const std::string& a, const std::string& b, const std::string& c,
              const std::string& d) {
    Timer timer;
    InstanceFile instance = load_instance(opts.instance_path);
    BlockTriangleInput input{instance.map(a), instance.map(b), instance.map(c), instance.map(d)};
    SchurSplitResult result = schur_split(input);

    Json report = Json::object();
    report["command"] = "split";
    report["version"] = cli::engine_version;
    Json sj = schur_split_to_json(result);
    for (auto& [key, value] : sj.items()) report[key] = value;
    if (opts.timings) report["elapsed_ms"] = timer.elapsed_ms();

    std::string table;
    table += "block triangle splitting\n";
    table += "  t = d - c a^-1 b, blocks:\n";
    for (const auto& [k, block] : result.t.stored_blocks()) {
        table += "    degree " + std::to_string(k) + ":";
        for (std::size_t i = 0; i < block.rows(); ++i) {
            table += " [";
            for (std::size_t j = 0; j < block.cols(); ++j) {
                if (j) table += " ";
                table += to_string(block(i, j));
            }
            table += "]";
        }
        table += "\n";
    }
    if (result.t.stored_blocks().empty()) table += "    (zero map)\n";
    table += "  cone homology (full)    : " + cli::format_dims(result.full_cone_homology) + "\n";
    table += "  cone homology (reduced) : " + cli::format_dims(result.reduced_cone_homology) + "\n";
    table += "  verdict: " + verdict_word(result.homology_match) + "\n";
    emit(opts, report, table);
    return cli::exit_code_for_verdict(result.homology_match);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact chain-complex engine: powers, dimension profiles, cube filtrations"};
    app.require_subcommand(1);

    CommonOptions powers_opts;
    PowersArgs powers_args;
    CLI::App* powers_cmd = app.add_subcommand("powers", "wedge/symmetric/schur power of an object");
    powers_cmd->add_option("--object", powers_args.object, "object name")->required();
    powers_cmd->add_option("--kind", powers_args.kind, "wedge | sym | schur")
        ->check(CLI::IsMember({"wedge", "sym", "schur"}));
    powers_cmd->add_option("--n", powers_args.n, "power exponent (wedge/sym)");
    powers_cmd->add_option("--lambda", powers_args.lambda, "partition, e.g. 2,1 (schur)");
    add_common_flags(powers_cmd, powers_opts);

    CommonOptions dim_opts;
    std::string dim_object;
    CLI::App* dim_cmd = app.add_subcommand("dim", "even/odd dimension profile of an object");
    dim_cmd->add_option("--object", dim_object, "object name")->required();
    add_common_flags(dim_cmd, dim_opts);

    CommonOptions filt_opts;
    std::string filt_map, filt_sign = "+";
    int filt_m = 2;
    CLI::App* filt_cmd = app.add_subcommand("filtration", "filtration of a power of an extension");
    filt_cmd->add_option("--map", filt_map, "degreewise-injective map name")->required();
    filt_cmd->add_option("--m", filt_m, "power exponent")->required();
    filt_cmd->add_option("--sign", filt_sign, "+ (wedge) or - (sym)");
    add_common_flags(filt_cmd, filt_opts);

    CommonOptions verify_opts;
    std::string verify_map, verify_sign = "+";
    CLI::App* verify_cmd = app.add_subcommand("verify", "vanishing propagation along a triangle");
    verify_cmd->add_option("--map", verify_map, "degreewise-injective map name")->required();
    verify_cmd->add_option("--sign", verify_sign, "+ (wedge) or - (sym)");
    add_common_flags(verify_cmd, verify_opts);

    CommonOptions idem_opts;
    int idem_n = 3;
    CLI::App* idem_cmd = app.add_subcommand("idempotents", "central idempotent system of Q[S_n]");
    idem_cmd->add_option("--n", idem_n, "symmetric group degree")->required();
    add_common_flags(idem_cmd, idem_opts, /*with_instance=*/false);

    CommonOptions split_opts;
    std::string split_a, split_b, split_c, split_d;
    CLI::App* split_cmd = app.add_subcommand("split", "Schur-complement triangle splitting");
    split_cmd->add_option("--a", split_a, "map name for the invertible block a: A -> A")->required();
    split_cmd->add_option("--b", split_b, "map name for b: B -> A")->required();
    split_cmd->add_option("--c", split_c, "map name for c: A -> C")->required();
    split_cmd->add_option("--d", split_d, "map name for d: B -> C")->required();
    add_common_flags(split_cmd, split_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_usage;
    }

    try {
        if (powers_cmd->parsed()) return run_powers(powers_opts, powers_args);
        if (dim_cmd->parsed()) return run_dim(dim_opts, dim_object);
        if (filt_cmd->parsed()) return run_filtration(filt_opts, filt_map, filt_m, filt_sign);
        if (verify_cmd->parsed()) return run_verify(verify_opts, verify_map, verify_sign);
        if (idem_cmd->parsed()) return run_idempotents(idem_opts, idem_n);
        if (split_cmd->parsed()) return run_split(split_opts, split_a, split_b, split_c, split_d);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return cli::exit_cap;
    } catch (const InapplicableError& e) {
        std::cerr << "inapplicable: " << e.what() << "\n";
        return cli::exit_inapplicable;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const NotInjective& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const NotInvertible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const DegreeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const SizeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const Error& e) {
        // Anything else escaping the engine is an internal verification failure.
        std::cerr << "verification failure: " << e.what() << "\n";
        return cli::exit_verdict;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    }
    return cli::exit_usage;
}
