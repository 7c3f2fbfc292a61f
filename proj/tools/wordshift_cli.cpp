#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wordshift/conjugacy.hpp"
#include "wordshift/counting.hpp"
#include "wordshift/hitting.hpp"
#include "wordshift/io.hpp"
#include "wordshift/multidim.hpp"
#include "wordshift/recover.hpp"
#include "wordshift/spectral.hpp"

namespace ws = wordshift;
using ws::json;

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kOk = 0;
constexpr int kPreconditionFailed = 1;
constexpr int kParseError = 2;
constexpr int kUnknown = 3;
constexpr int kBudgetExceeded = 4;

json report(const std::string& command, json inputs, json results,
            json tolerances = json::object(), json caveats = json::array()) {
    return json{{"version", kVersion},   {"command", command},
                {"inputs", std::move(inputs)}, {"results", std::move(results)},
                {"tolerances", std::move(tolerances)}, {"caveats", std::move(caveats)}};
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

ws::Word parse_word(const std::string& s, int q) {
    try {
        return ws::Word::parse(s, q);
    } catch (const std::exception& e) {
        throw CLI::ValidationError("word", e.what());
    }
}

json overlap_json(const std::set<int>& s) {
    json a = json::array();
    for (int i : s) a.push_back(i);
    return a;
}

json float_field(double v, double tol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return json{{"value", buf}, {"provenance", "float(tol=" + std::to_string(tol) + ")"}};
}

json exact_field(const mpz_class& v) {
    return json{{"value", v.get_str()}, {"provenance", "exact"}};
}

json exact_field(const mpq_class& v) {
    return json{{"value", ws::rat_str(v)}, {"provenance", "exact"}};
}

int run_analyze(const std::string& word, int q, int n, double tol) {
    ws::Word w = parse_word(word, q);
    json res;
    res["overlap"] = overlap_json(ws::self_overlap(w));
    res["phi"] = ws::poly_to_json(ws::correlation_poly(w));
    res["chi"] = ws::poly_to_json(ws::char_poly(w));
    ws::PerronValue pv = ws::perron_eigenvalue(w, tol);
    res["lambda"] = float_field(pv.lambda, tol);
    res["entropy"] = float_field(pv.entropy, tol);
    res["irreducible"] = ws::is_irreducible(ws::strip_labels(ws::build_L(w)));
    res["E_tau"] = exact_field(ws::expected_hitting(w));
    json bn = json::array();
    for (int i = 0; i <= n; ++i) bn.push_back(ws::count_avoiding(w, i).get_str());
    res["B_n"] = bn;
    emit(report("analyze", {{"word", word}, {"q", q}, {"n", n}}, res, {{"tol", tol}}));
    return kOk;
}

json dcert_json(const std::optional<ws::DCertificate>& c) {
    if (!c) return json{{"holds", false}};
    json pi = json::array();
    for (const auto& row : c->pi) pi.push_back(row);
    json j{{"holds", true}, {"pi", pi}};
    if (c->strict_witness)
        j["strict_witness"] = {{"i", c->strict_witness->first}, {"a", c->strict_witness->second}};
    return j;
}

int run_compare(const std::string& us, const std::string& vs, int q, double tol) {
    ws::Word u = parse_word(us, q), v = parse_word(vs, q);
    ws::ComparisonVerdict cv = ws::compare_shifts(u, v, tol);
    json res;
    res["phi_u_q"] = exact_field(cv.phi_u_q);
    res["phi_v_q"] = exact_field(cv.phi_v_q);
    res["phi_order"] = cv.phi_order;
    res["equal_overlaps"] = cv.equal_overlaps;
    res["D_uv"] = dcert_json(cv.d_uv);
    res["D_vu"] = dcert_json(cv.d_vu);
    res["lambda_u"] = float_field(cv.lambda_u.lambda, tol);
    res["lambda_v"] = float_field(cv.lambda_v.lambda, tol);
    emit(report("compare", {{"u", us}, {"v", vs}, {"q", q}}, res, {{"tol", tol}}));
    return kOk;
}

int run_count(const std::string& word, int q, int n, bool oracle, bool gf) {
    ws::Word w = parse_word(word, q);
    json res;
    res["B_n"] = ws::count_avoiding(w, n).get_str();
    res["provenance"] = "exact";
    if (oracle) res["B_n_oracle"] = ws::count_avoiding_naive(w, n).get_str();
    if (gf) {
        ws::RationalGF g = ws::generating_function(w);
        res["gf"] = {{"numerator", ws::poly_to_json(g.num)},
                     {"denominator", ws::poly_to_json(g.den)}};
        res["zeta_denominator"] = ws::poly_to_json(ws::zeta_denominator(w));
    }
    emit(report("count", {{"word", word}, {"q", q}, {"n", n}}, res));
    return kOk;
}

int run_hitting(const std::string& word, int q, int horizon) {
    ws::Word w = parse_word(word, q);
    ws::HittingProfile p = ws::hitting_survival(w, horizon);
    json res;
    res["E_tau"] = exact_field(p.expectation);
    res["E_tau_chain"] = exact_field(ws::expected_hitting_chain(w));
    json surv = json::array();
    for (const mpq_class& s : p.survival) surv.push_back(ws::rat_str(s));
    res["survival"] = surv;
    res["partial_sum"] = exact_field(p.partial_sum);
    res["remainder"] = exact_field(p.remainder);
    res["tail_ratio"] = float_field(p.tail_ratio, 1e-12);
    emit(report("hitting", {{"word", word}, {"q", q}, {"horizon", horizon}}, res));
    return kOk;
}

int run_simulate(const std::string& us, const std::string& vs, int q, int trials,
                 std::uint64_t seed) {
    ws::Word u = parse_word(us, q), v = parse_word(vs, q);
    ws::CouplingSummary s = ws::simulate_coupling(u, v, seed, trials);
    json res;
    res["trials"] = s.trials;
    res["mean_tau"] = float_field(s.mean_tau, 0.0);
    res["mean_tau_prime"] = float_field(s.mean_tau_prime, 0.0);
    res["se_tau"] = float_field(s.se_tau, 0.0);
    res["se_tau_prime"] = float_field(s.se_tau_prime, 0.0);
    res["dominance_count"] = s.dominance_count;
    res["exact_expectation_u"] = exact_field(s.exact_expectation_u);
    res["exact_expectation_v"] = exact_field(s.exact_expectation_v);
    emit(report("simulate",
                {{"u", us}, {"v", vs}, {"q", q}, {"trials", trials}, {"seed", seed}}, res,
                json::object(),
                json::array({"means are Monte Carlo estimates; expectations are exact"})));
    return kOk;
}

int run_graph(const std::string& word, int q, const std::string& format, bool gm) {
    ws::Word w = parse_word(word, q);
    ws::LabeledGraph g =
        gm ? ws::build_L_restricted(w, ws::golden_mean_pairs()) : ws::build_L(w);
    if (format == "dot") {
        std::cout << ws::to_dot(g);
    } else {
        emit(report("graph", {{"word", word}, {"q", q}, {"format", format}, {"ambient", gm ? "gm" : "full"}},
                    ws::graph_to_json(g)));
    }
    return kOk;
}

int run_recover(const std::string& path, int q, bool gm) {
    ws::Digraph g = ws::digraph_from_json(ws::load_json_file(path));
    ws::RecoverReport r = gm ? ws::recover_word_gm(g) : ws::recover_word(g, q);
    json res{{"ok", r.ok}};
    if (r.ok)
        res["word"] = r.word.str();
    else
        res["error"] = r.error;
    emit(report("recover", {{"file", path}, {"q", q}, {"ambient", gm ? "gm" : "full"}}, res));
    return r.ok ? kOk : kPreconditionFailed;
}

const char* move_name(ws::MoveType t) {
    switch (t) {
        case ws::MoveType::AlphabetPermutation: return "alphabet_permutation";
        case ws::MoveType::FlipAllBits: return "flip_all_bits";
        default: return "swap_pair";
    }
}

int run_chain(const std::string& us, const std::string& vs, int q, bool gm, bool validate) {
    ws::Word u = parse_word(us, q), v = parse_word(vs, q);
    ws::Ambient amb = gm ? ws::Ambient::GoldenMean : ws::Ambient::FullShift;
    ws::ConjugacyChain ch = ws::conjugacy_chain(u, v, amb);
    json res;
    res["outcome"] = ch.outcome == ws::ChainOutcome::Found     ? "Found"
                     : ch.outcome == ws::ChainOutcome::Unknown ? "Unknown"
                                                               : "PreconditionFailed";
    res["message"] = ch.message;
    res["bound"] = ch.bound;
    json steps = json::array();
    for (std::size_t i = 0; i < ch.words.size(); ++i) {
        json step{{"word", ch.words[i].str()}};
        if (i < ch.moves.size()) step["move"] = move_name(ch.moves[i].type);
        steps.push_back(step);
    }
    res["chain"] = steps;
    if (validate && ch.outcome == ws::ChainOutcome::Found) {
        ws::ChainValidation val = ws::validate_chain(ch, amb);
        res["validated"] = val.ok;
    }
    emit(report("chain", {{"u", us}, {"v", vs}, {"q", q}, {"ambient", gm ? "gm" : "full"}}, res));
    switch (ch.outcome) {
        case ws::ChainOutcome::Found: return kOk;
        case ws::ChainOutcome::Unknown: return kUnknown;
        default: return kPreconditionFailed;
    }
}

ws::Shape parse_grid(const std::string& spec) {
    auto x = spec.find('x');
    if (x == std::string::npos) throw CLI::ValidationError("grid", "expected MxN");
    int rows = std::stoi(spec.substr(0, x)), cols = std::stoi(spec.substr(x + 1));
    if (rows <= 0 || cols <= 0) throw CLI::ValidationError("grid", "dimensions must be positive");
    return ws::Shape::rect(rows, cols);
}

ws::LatticeSubgroup parse_lattice(const std::string& spec) {
    // "a,b;c,d": rows separated by ';', coordinates by ','
    std::vector<ws::Vec> rows;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t semi = spec.find(';', pos);
        std::string row = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        ws::Vec coords;
        std::size_t p2 = 0;
        while (p2 <= row.size()) {
            std::size_t comma = row.find(',', p2);
            coords.push_back(std::stoi(
                row.substr(p2, comma == std::string::npos ? std::string::npos : comma - p2)));
            if (comma == std::string::npos) break;
            p2 = comma + 1;
        }
        rows.push_back(coords);
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    int d = static_cast<int>(rows.size());
    for (const ws::Vec& r : rows)
        if (static_cast<int>(r.size()) != d)
            throw CLI::ValidationError("lattice", "basis must be square");
    return ws::LatticeSubgroup{d, rows};
}

int run_multidim(const std::string& mode, const std::string& pattern_file,
                 const std::string& grid, const std::string& lattice, double budget) {
    ws::PatternD u = ws::pattern_from_json(ws::load_json_file(pattern_file));
    json res;
    if (mode == "agree") {
        json a = json::array();
        for (const ws::Vec& v : ws::agree_set(u)) a.push_back(v);
        res["agree_set"] = a;
    } else if (mode == "count" || mode == "ie") {
        if (grid.empty()) throw CLI::ValidationError("grid", "required for count/ie");
        ws::Shape t = parse_grid(grid);
        mpz_class c = mode == "count" ? ws::count_avoiding_patterns(t, u, {}, budget)
                                      : ws::inclusion_exclusion_count(t, u, {}, budget);
        res["count"] = exact_field(c);
    } else if (mode == "periodic") {
        if (lattice.empty()) throw CLI::ValidationError("lattice", "required for periodic");
        ws::LatticeSubgroup lat = parse_lattice(lattice);
        res["count"] = exact_field(ws::periodic_count_multidim(lat, u, {}, budget));
        res["index"] = lat.index().get_str();
    } else {
        throw CLI::ValidationError("mode", "expected agree|count|ie|periodic");
    }
    emit(report("multidim " + mode,
                {{"pattern", pattern_file}, {"grid", grid}, {"lattice", lattice}, {"budget", budget}},
                res));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of shifts avoiding a single word or pattern"};
    app.require_subcommand(1);

    int q = 2, n = 10, horizon = 20, trials = 1000;
    double tol = 1e-12, budget = 24.0;
    std::uint64_t seed = 0;
    std::string word, u, v, format = "json", path, mode, grid, lattice;
    bool gm = false, validate = false, oracle = false, gf = false;

    auto* analyze = app.add_subcommand("analyze", "overlap set, polynomials, entropy, counts");
    analyze->add_option("word", word)->required();
    analyze->add_option("--q", q);
    analyze->add_option("--n", n);
    analyze->add_option("--tol", tol);

    auto* compare = app.add_subcommand("compare", "entropy and dominance comparison verdict");
    compare->add_option("u", u)->required();
    compare->add_option("v", v)->required();
    compare->add_option("--q", q);
    compare->add_option("--tol", tol);

    auto* count = app.add_subcommand("count", "exact avoidance count");
    count->add_option("word", word)->required();
    count->add_option("--q", q);
    count->add_option("--n", n);
    count->add_flag("--oracle", oracle);
    count->add_flag("--gf", gf);

    auto* hitting = app.add_subcommand("hitting", "exact hitting-time survival table");
    hitting->add_option("word", word)->required();
    hitting->add_option("--q", q);
    hitting->add_option("--horizon", horizon);

    auto* simulate = app.add_subcommand("simulate", "coupled hitting-time simulation");
    simulate->add_option("u", u)->required();
    simulate->add_option("v", v)->required();
    simulate->add_option("--q", q);
    simulate->add_option("--trials", trials);
    simulate->add_option("--seed", seed);

    auto* graph = app.add_subcommand("graph", "follower graph export");
    graph->add_option("word", word)->required();
    graph->add_option("--q", q);
    graph->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
    graph->add_flag("--ambient", gm)->description("golden-mean ambient when set");

    auto* recover = app.add_subcommand("recover", "word recovery from an unlabeled graph");
    recover->add_option("file", path)->required();
    recover->add_option("--q", q);
    recover->add_flag("--ambient", gm);

    auto* chain = app.add_subcommand("chain", "swap-conjugacy chain between two words");
    chain->add_option("u", u)->required();
    chain->add_option("v", v)->required();
    chain->add_option("--q", q);
    chain->add_flag("--ambient", gm);
    chain->add_flag("--validate", validate);

    auto* multidim = app.add_subcommand("multidim", "pattern analysis on Z^d");
    multidim->add_option("mode", mode)->required()->check(
        CLI::IsMember({"agree", "count", "ie", "periodic"}));
    multidim->add_option("--pattern", path)->required();
    multidim->add_option("--grid", grid);
    multidim->add_option("--lattice", lattice);
    multidim->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kParseError;
    }

    try {
        if (analyze->parsed()) return run_analyze(word, q, n, tol);
        if (compare->parsed()) return run_compare(u, v, q, tol);
        if (count->parsed()) return run_count(word, q, n, oracle, gf);
        if (hitting->parsed()) return run_hitting(word, q, horizon);
        if (simulate->parsed()) return run_simulate(u, v, q, trials, seed);
        if (graph->parsed()) return run_graph(word, q, format, gm);
        if (recover->parsed()) return run_recover(path, q, gm);
        if (chain->parsed()) return run_chain(u, v, q, gm, validate);
        if (multidim->parsed()) return run_multidim(mode, path, grid, lattice, budget);
    } catch (const ws::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudgetExceeded;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const CLI::Error& e) {
        std::cerr << "input parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return kPreconditionFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPreconditionFailed;
    }
    return kParseError;
}
