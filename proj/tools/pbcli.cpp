// Command-line front end: verifies tensors against poset files, realizes
// family members, runs random sweeps and finite-field censuses.
//
// Exit codes: 0 all requested checks passed, 1 a check failed, 2 bad input
// (files, parameters, flags), 3 search capacity refused.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "posetbraid/braidcheck.hpp"
#include "posetbraid/io.hpp"

using namespace pb;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kCapacityRefused = 3;

// FNV-1a over the raw bytes, rendered as hex; enough to pin input identity
// in reports.
std::string digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, CheckResult>> checks;
    std::vector<std::string> notes;
    std::optional<std::uint64_t> seed;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
    double elapsed_ms = 0;

    void stop_clock() {
        elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                .count();
    }

    bool all_passed() const {
        for (const auto& [name, r] : checks)
            if (!r.passed) return false;
        return true;
    }

    int passed_count() const {
        int n = 0;
        for (const auto& [name, r] : checks) n += r.passed;
        return n;
    }

    void print_text(std::ostream& out) const {
        out << "command: " << command << '\n';
        for (const auto& [path, d] : inputs) out << "input: " << path << " fnv1a=" << d << '\n';
        if (seed) out << "seed: " << *seed << '\n';
        for (const auto& [name, r] : checks) {
            out << "check " << name << ": " << (r.passed ? "pass" : "FAIL");
            if (!r.detail.empty()) out << " (" << r.detail << ")";
            out << '\n';
        }
        for (const auto& note : notes) out << note << '\n';
        if (!checks.empty())
            out << "result: " << passed_count() << "/" << checks.size() << " checks passed\n";
        out << "elapsed_ms: " << elapsed_ms << '\n';
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["inputs"] = nlohmann::json::array();
        for (const auto& [path, d] : inputs)
            j["inputs"].push_back({{"path", path}, {"digest", d}});
        if (seed) j["seed"] = *seed;
        j["checks"] = nlohmann::json::array();
        for (const auto& [name, r] : checks)
            j["checks"].push_back({{"name", name}, {"passed", r.passed}, {"detail", r.detail}});
        j["notes"] = notes;
        j["all_passed"] = all_passed();
        j["elapsed_ms"] = elapsed_ms;
        return j;
    }
};

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string pair_name(const IntervalBasis& basis, int i) {
    const auto& [lo, hi] = basis.pair_at(i);
    return "(" + basis.poset().label(lo) + "," + basis.poset().label(hi) + ")";
}

CheckResult braid_check_result(const LambdaTensor& t) {
    const BraidReport rep = braid_residual(t);
    CheckResult r;
    r.passed = rep.residual_is_zero;
    if (rep.witness) {
        const auto& w = *rep.witness;
        r.detail = "residual " + w.value.str() + " at input " +
                   pair_name(t.basis(), w.input[0]) + pair_name(t.basis(), w.input[1]) +
                   pair_name(t.basis(), w.input[2]) + " output " +
                   pair_name(t.basis(), w.output[0]) + pair_name(t.basis(), w.output[1]) +
                   pair_name(t.basis(), w.output[2]);
    }
    return r;
}

// The verification rows behind `--check all`: the structure report, the
// braid residual and the small-interval diagnostics.
void append_all_checks(RunReport& rep, const LambdaTensor& t) {
    const StructureReport sr = verify_structure(t);
    for (const auto& row : sr.rows()) rep.checks.push_back(row);
    rep.checks.emplace_back("braid", braid_check_result(t));
    if (sr.solution) {
        for (const auto& row : small_interval_diagnostics(t, *sr.solution).items)
            rep.checks.emplace_back("diag " + row.first, row.second);
    } else {
        rep.checks.emplace_back(
            "diag", CheckResult{false, "no usable restriction, diagnostics skipped"});
    }
}

// One named check from the --check enumeration.
void append_one_check(RunReport& rep, const LambdaTensor& t, const std::string& which) {
    auto with_restriction = [&](auto&& run) {
        try {
            const SetSolution s = extract_restriction(t);
            run(s);
        } catch (const std::invalid_argument& e) {
            rep.checks.emplace_back(which, CheckResult{false, e.what()});
        }
    };
    if (which == "counit") {
        rep.checks.emplace_back("counit", check_counit(t));
    } else if (which == "comult") {
        rep.checks.emplace_back("comultiplicativity", check_comultiplicativity(t));
    } else if (which == "support") {
        with_restriction(
            [&](const SetSolution& s) { rep.checks.emplace_back("support", check_support(t, s)); });
    } else if (which == "factor") {
        with_restriction([&](const SetSolution& s) {
            rep.checks.emplace_back("factorization", check_factorization(t, s));
        });
    } else if (which == "nondeg") {
        rep.checks.emplace_back("nondegeneracy", check_nondegeneracy(t));
    } else if (which == "braid") {
        rep.checks.emplace_back("braid", braid_check_result(t));
    } else if (which == "diag") {
        with_restriction([&](const SetSolution& s) {
            for (const auto& row : small_interval_diagnostics(t, s).items)
                rep.checks.emplace_back("diag " + row.first, row.second);
        });
    } else {
        throw std::invalid_argument("unknown check '" + which + "'");
    }
}

Poset load_poset(RunReport& rep, const std::string& path) {
    const std::string bytes = read_file(path);
    rep.inputs.emplace_back(path, digest(bytes));
    std::istringstream in(bytes);
    try {
        return read_poset(in);
    } catch (const ParseError& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

LambdaTensor load_lambda(RunReport& rep, const std::string& path,
                         std::shared_ptr<const IntervalBasis> basis, bool transpose) {
    const std::string bytes = read_file(path);
    rep.inputs.emplace_back(path, digest(bytes));
    std::istringstream in(bytes);
    try {
        return read_lambda(in, std::move(basis), transpose);
    } catch (const ParseError& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
    out << bytes;
}

std::string lambda_text(const LambdaTensor& t) {
    std::ostringstream out;
    write_lambda(out, t);
    return out.str();
}

// Shared tail: render the report and convert the verdict to an exit code.
int finish(RunReport& rep, bool as_json, int fail_code = kCheckFailed) {
    rep.stop_clock();
    if (as_json)
        std::cout << rep.to_json().dump(2) << '\n';
    else
        rep.print_text(std::cout);
    return rep.all_passed() ? kPass : fail_code;
}

struct CheckArgs {
    std::string poset_file, lambda_file;
    std::string which = "all";
    bool transpose = false;
};

int cmd_check(RunReport& rep, const CheckArgs& a, bool as_json) {
    const Poset p = load_poset(rep, a.poset_file);
    const auto basis = std::make_shared<IntervalBasis>(p);
    const LambdaTensor t = load_lambda(rep, a.lambda_file, basis, a.transpose);
    if (a.which == "all")
        append_all_checks(rep, t);
    else
        append_one_check(rep, t, a.which);
    return finish(rep, as_json);
}

struct FamilyArgs {
    std::string id;
    std::vector<std::string> params;   // name=value
    std::string field = "Q";
    int random = 0;
    std::uint64_t seed = 0;
    std::string out_file, out_dir;
};

void verify_instance(RunReport& rep, const LambdaTensor& t, const std::string& tag) {
    const StructureReport sr = verify_structure(t);
    CheckResult all{sr.passed(), ""};
    if (!all.passed)
        for (const auto& [name, row] : sr.rows())
            if (!row.passed) {
                all.detail = name + ": " + row.detail;
                break;
            }
    rep.checks.emplace_back(tag + " structure", all);
    rep.checks.emplace_back(tag + " braid", braid_check_result(t));
}

int cmd_family(RunReport& rep, const FamilyArgs& a, bool as_json) {
    const Field f = Field::parse(a.field);
    if (a.random > 0) {
        rep.seed = a.seed;
        ScalarRng rng(a.seed);
        for (int k = 1; k <= a.random; ++k) {
            const FamilyInstance inst = random_instance(a.id, f, rng);
            const LambdaTensor t = realize(inst);
            verify_instance(rep, t, instance_signature(inst));
            if (!a.out_dir.empty()) {
                const std::string path =
                    a.out_dir + "/" + a.id + "-" + std::to_string(k) + ".lambda";
                write_file(path, lambda_text(t));
                rep.notes.push_back("wrote " + path);
            }
        }
        return finish(rep, as_json);
    }

    FamilyInstance inst;
    inst.family_id = a.id;
    inst.field = f;
    for (const auto& assign : a.params) {
        const auto eq = assign.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed parameter '" + assign +
                                        "', expected name=value");
        inst.params.emplace(assign.substr(0, eq), Scalar::parse(f, assign.substr(eq + 1)));
    }
    const LambdaTensor t = realize(inst);   // throws with the violated clause
    verify_instance(rep, t, instance_signature(inst));
    if (!a.out_file.empty()) {
        write_file(a.out_file, lambda_text(t));
        rep.notes.push_back("wrote " + a.out_file);
    } else if (!as_json) {
        std::cout << lambda_text(t);
    }
    return finish(rep, as_json);
}

struct SweepArgs {
    std::string id;
    int draws = 0;
    std::string field = "Q";
    std::uint64_t seed = 0;
};

int cmd_sweep(RunReport& rep, const SweepArgs& a, bool as_json) {
    rep.seed = a.seed;
    const SweepReport sw = random_family_sweep(a.id, a.draws, Field::parse(a.field), a.seed);
    CheckResult verdict{sw.completed == sw.requested && sw.passed == sw.completed, ""};
    if (!sw.note.empty()) verdict.detail = sw.note;
    rep.checks.emplace_back("sweep " + sw.family_id + " over " + sw.field_name, verdict);
    rep.notes.push_back("requested: " + std::to_string(sw.requested));
    rep.notes.push_back("completed: " + std::to_string(sw.completed));
    rep.notes.push_back("passed: " + std::to_string(sw.passed));
    for (const auto& c : sw.counterexamples) rep.notes.push_back("counterexample: " + c);
    return finish(rep, as_json);
}

struct SearchArgs {
    std::string poset_file;
    std::string field;
    bool no_prune = false;
    std::string restriction = "enumerate";
    std::uint64_t limit = 10'000'000;
    std::string out_file;
};

int cmd_search(RunReport& rep, const SearchArgs& a, bool as_json) {
    const Poset p = load_poset(rep, a.poset_file);
    SearchSpec spec{p, Field::parse(a.field), std::nullopt, !a.no_prune, a.limit};
    if (a.restriction == "flip")
        spec.restriction = SetSolution::flip(p);
    else if (a.restriction != "enumerate")
        throw std::invalid_argument("unknown restriction mode '" + a.restriction + "'");

    const SearchResult res = exhaustive_search(spec);
    int matched = 0;
    for (const auto& s : res.solutions) matched += !s.matches.empty();

    rep.notes.push_back("restrictions: " + std::to_string(res.restrictions_tried));
    rep.notes.push_back("candidates: " + std::to_string(res.candidates));
    rep.notes.push_back("free cells: " + std::to_string(res.free_cells));
    rep.notes.push_back("solutions: " + std::to_string(res.solutions.size()));
    rep.notes.push_back("matched: " + std::to_string(matched) + "/" +
                        std::to_string(res.solutions.size()));

    std::ostringstream census;
    write_census(census, res);
    if (!a.out_file.empty()) {
        write_file(a.out_file, census.str());
        rep.notes.push_back("census written: " + a.out_file);
        return finish(rep, as_json);
    }
    rep.stop_clock();
    if (as_json) {
        nlohmann::json j = rep.to_json();
        j["census"] = census.str();
        std::cout << j.dump(2) << '\n';
        return kPass;
    }
    std::cout << census.str() << '\n';
    rep.print_text(std::cout);
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact braid-equation toolkit for incidence coalgebras of finite posets"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit the report as JSON");

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "verify a coefficient tensor against a poset");
    check->add_option("poset", ca.poset_file, "posetfile v1 path")->required();
    check->add_option("lambda", ca.lambda_file, "lambdafile v1 path")->required();
    check->add_option("--check", ca.which, "all|counit|comult|support|factor|nondeg|braid|diag")
        ->check(CLI::IsMember(
            {"all", "counit", "comult", "support", "factor", "nondeg", "braid", "diag"}));
    check->add_flag("--transpose-ingest", ca.transpose,
                    "read records with output pairs left of the bar");

    FamilyArgs fa;
    auto* family = app.add_subcommand("family", "realize and verify a classified family member");
    family->add_option("id", fa.id, "family identifier, e.g. T56-1")->required();
    family->add_option("params", fa.params, "parameter assignments name=value");
    family->add_option("--field", fa.field, "coefficient field (default Q)");
    family->add_option("--random", fa.random, "draw N random valid instances instead");
    family->add_option("--seed", fa.seed, "random seed");
    family->add_option("--out", fa.out_file, "write the tensor file here");
    family->add_option("--out-dir", fa.out_dir, "write one tensor file per random draw here");

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "random verification sweep over a family");
    sweep->add_option("id", wa.id, "family identifier")->required();
    sweep->add_option("--draws", wa.draws, "number of draws")->required();
    sweep->add_option("--field", wa.field, "coefficient field (default Q)");
    sweep->add_option("--seed", wa.seed, "random seed");

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "exhaustive finite-field census");
    search->add_option("poset", sa.poset_file, "posetfile v1 path")->required();
    search->add_option("--field", sa.field, "finite coefficient field, e.g. GF(2)")->required();
    search->add_flag("--no-prune", sa.no_prune, "raw enumeration over the support pattern");
    search->add_option("--restriction", sa.restriction, "flip|enumerate (default enumerate)");
    search->add_option("--limit", sa.limit, "candidate cap (default 10^7)");
    search->add_option("--out", sa.out_file, "write the census file here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    RunReport rep;
    rep.command = join_args(argc, argv);
    try {
        if (*check) return cmd_check(rep, ca, as_json);
        if (*family) return cmd_family(rep, fa, as_json);
        if (*sweep) return cmd_sweep(rep, wa, as_json);
        return cmd_search(rep, sa, as_json);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCapacityRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
