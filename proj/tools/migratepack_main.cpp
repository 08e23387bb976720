// Command line front end: stream generation, online packing runs, LP
// improvement round-trips, brute-force oracle queries, and trace replay.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "migratepack/io.hpp"
#include "migratepack/online.hpp"
#include "migratepack/oracle.hpp"

using namespace migratepack;

namespace {

Rational parse_rat_arg(const std::string& text, const std::string& what) {
    auto r = parse_rational(text);
    if (!r) throw std::runtime_error(what + ": not a rational: '" + text + "'");
    return *r;
}

std::vector<Item> load_items(const std::string& path) {
    if (path.empty() || path == "-") return read_items_jsonl(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_items_jsonl(in);
}

int cmd_gen(long count, const std::string& dist, unsigned long long seed,
            const std::string& out_path) {
    auto items = gen_items(count, dist, seed);
    if (out_path.empty() || out_path == "-") {
        write_items_jsonl(std::cout, items);
    } else {
        std::ofstream out(out_path);
        write_items_jsonl(out, items);
    }
    return 0;
}

int cmd_pack_online(const std::string& eps_text, long pin_m, const std::string& input,
                    const std::string& trace_path, bool adversarial) {
    Rational eps = parse_rat_arg(eps_text, "--eps");
    Params params = pin_m > 0 ? Params::desk(eps, pin_m) : Params::derive(eps);
    SolveMode mode = adversarial ? SolveMode::AdversarialInflate : SolveMode::Exact;
    OnlineState st = make_online_state(params, mode, !trace_path.empty());

    std::vector<Item> items = load_items(input);
    std::cout << "# migratepack pack-online csv v1\n";
    std::cout << "t,size,size_dec,bins,opt_lb,lin_lb,migration,migration_dec,"
                 "max_migration,max_migration_dec,support,phase\n";
    for (const auto& item : items) {
        ArrivalStats s = arrive(st, item);
        std::cout << s.t << "," << rat_to_fraction(s.size) << "," << rat_to_decimal(s.size)
                  << "," << s.bins << "," << s.opt_lb << "," << s.lin_lb << ","
                  << rat_to_fraction(s.migration) << "," << rat_to_decimal(s.migration) << ","
                  << rat_to_fraction(s.max_migration) << ","
                  << rat_to_decimal(s.max_migration) << "," << s.support << "," << s.phase
                  << "\n";
    }
    ArrivalStats fin = stats(st);
    std::cout << "# max_migration " << rat_to_fraction(fin.max_migration) << " ("
              << rat_to_decimal(fin.max_migration) << ")\n";
    std::cout << "# ratio_bound (1+2*" << rat_to_fraction(params.delta_cap) << ")*OPT+"
              << params.m << "\n";
    std::cout << "# violations " << st.violations.size() << "\n";
    for (const auto& v : st.violations) std::cout << "# violation " << v << "\n";
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        write_trace_jsonl(out, st.trace);
    }
    return st.violations.empty() ? 0 : 1;
}

int cmd_lp_improve(const std::string& lp_path, const std::string& sol_path,
                   const std::string& ysol_path, const std::string& alpha_text,
                   const std::string& delta_text, const std::string& variant,
                   const std::string& out_prefix, bool adversarial) {
    std::ifstream lpf(lp_path);
    if (!lpf) throw std::runtime_error("cannot open " + lp_path);
    Lp lp = read_lp(lpf);
    std::ifstream sf(sol_path);
    if (!sf) throw std::runtime_error("cannot open " + sol_path);
    LpSolution x = read_solution(sf);
    if (!lp_feasible(lp, x)) throw std::runtime_error("input solution is infeasible");

    Rational alpha = parse_rat_arg(alpha_text, "--alpha");
    Rational delta = parse_rat_arg(delta_text, "--delta");
    SolveMode mode = adversarial ? SolveMode::AdversarialInflate : SolveMode::Exact;

    LpSolution x2;
    IntegralSolution y, y2;
    bool paired = variant == "paired";
    if (variant == "exact") {
        x2 = improve_exact(lp, x, ImproveParams{alpha, delta, 1});
    } else if (variant == "approx") {
        x2 = improve_approx(lp, x, ImproveParams{alpha, delta, 2}, mode);
    } else if (paired) {
        if (ysol_path.empty()) throw std::runtime_error("--ysolution required for paired");
        std::ifstream yf(ysol_path);
        if (!yf) throw std::runtime_error("cannot open " + ysol_path);
        LpSolution yraw = read_solution(yf);
        for (const auto& [i, v] : yraw.values) {
            if (!rat_is_integer(v)) throw std::runtime_error("y solution must be integral");
            y.set(i, rat_floor(v));
        }
        auto res = improve_paired(lp, x, y, ImproveParams{alpha, delta, 2}, 0, mode);
        x2 = res.first;
        y2 = res.second;
    } else {
        throw std::runtime_error("unknown variant '" + variant + "'");
    }

    std::string prefix = out_prefix.empty() ? sol_path : out_prefix;
    {
        std::ofstream out(prefix + ".improved");
        write_solution(out, x2);
    }
    if (paired) {
        std::ofstream out(prefix + ".improved.y");
        LpSolution tmp;
        for (const auto& [i, v] : y2.values) tmp.set(i, Rational(v));
        write_solution(out, tmp);
    }

    nlohmann::json summary;
    summary["objective_before"] = rat_to_fraction(x.objective());
    summary["objective_after"] = rat_to_fraction(x2.objective());
    summary["distance"] = rat_to_fraction(l1_distance(x, x2));
    summary["support_before"] = x.support();
    summary["support_after"] = x2.support();
    if (paired) {
        summary["y_objective_before"] = y.objective();
        summary["y_objective_after"] = y2.objective();
        summary["y_distance"] = l1_distance(y, y2);
    }
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_oracle_opt(const std::string& path) {
    auto items = load_items(path);
    OracleResult res = brute_opt(items);
    nlohmann::json out;
    out["opt_bins"] = res.opt_bins;
    out["lin"] = rat_to_fraction(res.lin_value);
    nlohmann::json bins = nlohmann::json::object();
    for (const auto& [bin, ids] : res.witness.bins) bins[std::to_string(bin)] = ids;
    out["witness"] = bins;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_oracle_lin(const std::string& path) {
    auto items = load_items(path);
    auto [lin, wit] = brute_lin(items);
    nlohmann::json out;
    out["lin"] = rat_to_fraction(lin);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_oracle_verify(const std::string& items_path, const std::string& packing_path) {
    auto items = load_items(items_path);
    std::ifstream pf(packing_path);
    if (!pf) throw std::runtime_error("cannot open " + packing_path);
    PackingState packing = read_packing_json(pf);
    VerifyReport rep = verify_packing(items, packing);
    if (rep.ok) {
        std::cout << "valid\n";
        return 0;
    }
    std::cout << "invalid: " << rep.violation << "\n";
    return 1;
}

int cmd_replay_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    auto trace = read_trace_jsonl(in);
    static const std::set<std::string> known_ops{
        "arrive_small",    "bootstrap", "handoff", "improve",        "insert",
        "modified_insert", "create",    "union",   "begin_creation", "begin_union",
        "compact"};
    long prev_t = 0;
    for (size_t i = 0; i < trace.size(); ++i) {
        const auto& r = trace[i];
        auto bad = [&](const std::string& msg) {
            std::cout << "record " << i << " (t=" << r.t << "): " << msg << "\n";
            return 1;
        };
        if (r.t < prev_t) return bad("time went backwards");
        prev_t = r.t;
        if (!known_ops.count(r.op)) return bad("unknown op '" + r.op + "'");
        if (r.group_sizes.empty() || r.group_sizes[0] != r.r0)
            return bad("reservoir count disagrees with group sizes");
        for (long g : r.group_sizes)
            if (g < 0) return bad("negative group size");
        if (r.y_norm < 0) return bad("negative y norm");
        if (i > 0 && trace[i - 1].t == r.t) {
            const auto& p = trace[i - 1];
            if (r.op == "insert" || r.op == "modified_insert") {
                if (r.r0 != p.r0 + 1) return bad("insertion must grow the reservoir by one");
                if (r.y_norm != p.y_norm) return bad("insertion must keep y");
            } else if (r.op == "create") {
                if (r.y_norm != p.y_norm + 2) return bad("creation must add two to y");
                if (r.r0 != p.r0 - 2) return bad("creation must shrink the reservoir by two");
            } else if (r.op == "union") {
                if (r.y_norm != p.y_norm + 1) return bad("union must add one to y");
                if (r.r0 != p.r0) return bad("union must keep the reservoir");
            }
        }
    }
    std::cout << "trace consistent: " << trace.size() << " records\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-rational online bin packing with bounded migration"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "emit a deterministic item stream as JSON lines");
    long gen_count = 0;
    std::string gen_dist = "uniform:1/4:1:48";
    unsigned long long gen_seed = 1;
    std::string gen_out;
    gen->add_option("--count", gen_count, "number of items")->required();
    gen->add_option("--dist", gen_dist, "uniform:LO:HI[:DENOM] or fixed:s1,s2,...");
    gen->add_option("--seed", gen_seed, "stream seed");
    gen->add_option("-o,--output", gen_out, "output path (default stdout)");

    auto* pack = app.add_subcommand("pack-online", "run the online controller over a stream");
    std::string pack_eps = "1/2", pack_input, pack_trace;
    long pack_pin_m = 0;
    bool pack_adversarial = false;
    pack->add_option("--eps", pack_eps, "epsilon as a rational")->required();
    pack->add_option("--pin-m", pack_pin_m, "pin the rounding-group count (even, >= 4)");
    pack->add_option("--input", pack_input, "items JSONL (default stdin)");
    pack->add_option("--trace", pack_trace, "write a per-operation JSONL trace");
    pack->add_flag("--adversarial-approx", pack_adversarial,
                   "use the deliberately inflated inner LP solver");

    auto* imp = app.add_subcommand("lp-improve", "improve a solution of a covering LP");
    std::string imp_lp, imp_sol, imp_ysol, imp_alpha = "1", imp_delta = "1/2";
    std::string imp_variant = "exact", imp_out;
    bool imp_adversarial = false;
    imp->add_option("--lp", imp_lp, "LP in the text format")->required();
    imp->add_option("--solution", imp_sol, "sparse 'index value' solution file")->required();
    imp->add_option("--ysolution", imp_ysol, "integral partner solution (paired variant)");
    imp->add_option("--alpha", imp_alpha, "improvement target");
    imp->add_option("--delta", imp_delta, "approximation parameter");
    imp->add_option("--variant", imp_variant, "exact | approx | paired");
    imp->add_option("--out", imp_out, "output prefix (default: solution path)");
    imp->add_flag("--adversarial-approx", imp_adversarial, "inflate the inner solver");

    auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
    oracle->require_subcommand(1);
    auto* opt = oracle->add_subcommand("opt", "exact minimum bin count");
    std::string opt_items;
    opt->add_option("items", opt_items, "items JSONL (default stdin)");
    auto* lin = oracle->add_subcommand("lin", "exact fractional optimum");
    std::string lin_items;
    lin->add_option("items", lin_items, "items JSONL (default stdin)");
    auto* verify = oracle->add_subcommand("verify", "validate a packing against items");
    std::string verify_items, verify_packing_path;
    verify->add_option("items", verify_items, "items JSONL")->required();
    verify->add_option("packing", verify_packing_path, "packing JSON")->required();

    auto* replay = app.add_subcommand("replay-trace", "consistency-check a trace dump");
    std::string replay_path;
    replay->add_option("trace", replay_path, "trace JSONL")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_count, gen_dist, gen_seed, gen_out);
        if (pack->parsed())
            return cmd_pack_online(pack_eps, pack_pin_m, pack_input, pack_trace,
                                   pack_adversarial);
        if (imp->parsed())
            return cmd_lp_improve(imp_lp, imp_sol, imp_ysol, imp_alpha, imp_delta, imp_variant,
                                  imp_out, imp_adversarial);
        if (oracle->parsed()) {
            if (opt->parsed()) return cmd_oracle_opt(opt_items);
            if (lin->parsed()) return cmd_oracle_lin(lin_items);
            if (verify->parsed()) return cmd_oracle_verify(verify_items, verify_packing_path);
        }
        if (replay->parsed()) return cmd_replay_trace(replay_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
