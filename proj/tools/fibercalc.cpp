#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "fibercalc/catalog.hpp"
#include "fibercalc/classify.hpp"
#include "fibercalc/dualizer.hpp"
#include "fibercalc/format.hpp"
#include "fibercalc/invariants.hpp"
#include "fibercalc/search.hpp"

using json = nlohmann::ordered_json;
using namespace fibercalc;

namespace {

int thread_count() {
    const char* env = std::getenv("FIBERCALC_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    if (n == 0) {
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : static_cast<int>(hc);
    }
    return n < 1 ? 1 : n;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FiberGraph load(const std::string& path) { return parse_fiber(slurp(path)); }

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

json bundle_json(const InvariantBundle& b) {
    json j;
    j["g"] = b.g;
    j["pa_red"] = b.pa_red;
    j["n_bar"] = b.n_bar;
    if (b.n_min) j["n_min"] = *b.n_min;
    j["mu"] = b.mu;
    j["alpha"] = rat_str(b.alpha);
    j["beta"] = rat_str(b.beta);
    j["beta_minus"] = rat_str(b.beta_minus);
    j["beta_plus"] = rat_str(b.beta_plus);
    j["fred_sq"] = b.fred_sq.str();
    j["c1sq_bar"] = rat_str(b.c1sq_bar);
    j["c2_bar"] = rat_str(b.c2_bar);
    j["c1sq_min"] = rat_str(b.c1sq_min);
    j["c2_min"] = rat_str(b.c2_min);
    j["chi"] = rat_str(b.chi);
    j["blowups"] = b.blowups;
    j["contractions"] = b.contractions;
    return j;
}

void print_bundle(const InvariantBundle& b, bool as_json, bool decimal, int precision) {
    if (as_json) {
        std::cout << bundle_json(b).dump(2) << "\n";
        return;
    }
    auto line = [&](const char* k, const Rat& v) {
        std::cout << k << " = " << rat_str(v);
        if (decimal) {
            std::cout << "  (~" << std::setprecision(precision)
                      << v.convert_to<double>() << ")";
        }
        std::cout << "\n";
    };
    std::cout << "g = " << b.g << "\n";
    std::cout << "pa_red = " << b.pa_red << "\n";
    std::cout << "n_bar = " << b.n_bar << "\n";
    if (b.n_min) std::cout << "n_min = " << *b.n_min << "\n";
    std::cout << "mu = " << b.mu << "\n";
    line("alpha", b.alpha);
    line("beta", b.beta);
    line("beta_minus", b.beta_minus);
    line("beta_plus", b.beta_plus);
    std::cout << "fred_sq = " << b.fred_sq.str() << "\n";
    line("c1sq_bar", b.c1sq_bar);
    line("c2_bar", b.c2_bar);
    line("c1sq_min", b.c1sq_min);
    line("c2_min", b.c2_min);
    line("chi", b.chi);
    std::cout << "blowups = " << b.blowups << "\n";
    std::cout << "contractions = " << b.contractions << "\n";
}

// Tiny predicate language over the invariant bundle, e.g.
// "c1sq_min > 4*g - 11/2" or "2*c2_min - c1sq_min < 6".
class Predicate {
public:
    explicit Predicate(std::string text) : text_(std::move(text)) {}

    bool eval(const InvariantBundle& b) const {
        Parser p(text_, b);
        return p.compare();
    }

private:
    std::string text_;

    struct Parser {
        const std::string& s;
        const InvariantBundle& b;
        std::size_t pos = 0;
        Parser(const std::string& str, const InvariantBundle& bundle)
            : s(str), b(bundle) {}

        void skip() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }

        bool compare() {
            Rat lhs = sum();
            skip();
            std::string op;
            while (pos < s.size() && (s[pos] == '<' || s[pos] == '>' || s[pos] == '=' ||
                                      s[pos] == '!'))
                op += s[pos++];
            if (op.empty()) throw Error("predicate: missing comparison operator");
            Rat rhs = sum();
            skip();
            if (pos != s.size()) throw Error("predicate: trailing input");
            if (op == "<") return lhs < rhs;
            if (op == ">") return lhs > rhs;
            if (op == "<=") return lhs <= rhs;
            if (op == ">=") return lhs >= rhs;
            if (op == "==" || op == "=") return lhs == rhs;
            if (op == "!=") return lhs != rhs;
            throw Error("predicate: unknown operator " + op);
        }

        Rat sum() {
            Rat v = term();
            for (;;) {
                skip();
                if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                    char op = s[pos++];
                    Rat w = term();
                    if (op == '+') v += w; else v -= w;
                } else {
                    return v;
                }
            }
        }

        Rat term() {
            Rat v = factor();
            for (;;) {
                skip();
                if (pos < s.size() && (s[pos] == '*' || s[pos] == '/')) {
                    char op = s[pos++];
                    Rat w = factor();
                    if (op == '/') {
                        if (w == 0) throw Error("predicate: division by zero");
                        v = v / w;
                    } else {
                        v = v * w;
                    }
                } else {
                    return v;
                }
            }
        }

        Rat factor() {
            skip();
            if (pos >= s.size()) throw Error("predicate: unexpected end");
            if (s[pos] == '(') {
                ++pos;
                Rat v = sum();
                skip();
                if (pos >= s.size() || s[pos] != ')') throw Error("predicate: missing )");
                ++pos;
                return v;
            }
            if (s[pos] == '-') {
                ++pos;
                return -factor();
            }
            if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                    ++pos;
                return Rat(Int(s.substr(start, pos - start)));
            }
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "g") return Rat(b.g);
            if (name == "n_bar") return Rat(b.n_bar);
            if (name == "n_min") return Rat(b.n_min.value_or(b.n_bar));
            if (name == "mu") return Rat(b.mu);
            if (name == "alpha") return b.alpha;
            if (name == "beta") return b.beta;
            if (name == "beta_minus") return b.beta_minus;
            if (name == "beta_plus") return b.beta_plus;
            if (name == "fred_sq") return Rat(b.fred_sq);
            if (name == "c1sq_bar") return b.c1sq_bar;
            if (name == "c2_bar") return b.c2_bar;
            if (name == "c1sq_min") return b.c1sq_min;
            if (name == "c2_min") return b.c2_min;
            if (name == "chi") return b.chi;
            if (name == "blowups") return Rat(b.blowups);
            throw Error("predicate: unknown variable '" + name + "'");
        }
    };
};

bool expectations_match(const CatalogEntry& e, const InvariantBundle& b,
                        std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const auto& x = e.expected;
    if (x.g && *x.g != b.g) return fail("g");
    if (x.c1sq_min && *x.c1sq_min != b.c1sq_min) return fail("c1sq_min");
    if (x.c2_min && *x.c2_min != b.c2_min) return fail("c2_min");
    if (x.chi && *x.chi != b.chi) return fail("chi");
    const Rat n = Rat(b.n_min.value_or(b.n_bar));
    if (x.c1sq_offset && b.c1sq_min - 4 * n != *x.c1sq_offset) return fail("c1sq offset");
    if (x.c2_offset && b.c2_min - 2 * n != *x.c2_offset) return fail("c2 offset");
    if (x.chi_offset && b.chi - n / 2 != *x.chi_offset) return fail("chi offset");
    return true;
}

int cmd_catalog_verify() {
    auto corpus = default_corpus();
    std::vector<std::pair<bool, std::string>> results(corpus.size());

    // Entries are independent; evaluate in parallel, print in order.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= corpus.size()) return;
            std::string why;
            bool ok = false;
            try {
                ok = validate(corpus[i].graph).valid() &&
                     expectations_match(corpus[i], compute_invariants(corpus[i].graph),
                                        &why);
            } catch (const Error& err) {
                why = err.what();
            }
            results[i] = {ok, why};
        }
    };
    const int threads = thread_count();
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    bool all_ok = true;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& [ok, why] = results[i];
        std::cout << (ok ? "ok   " : "FAIL ") << corpus[i].key
                  << (ok || why.empty() ? "" : "  (" + why + ")") << "\n";
        all_ok = all_ok && ok;
    }
    std::cout << (all_ok ? "catalog verified: all expectations match\n"
                         : "catalog verification failed\n");
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact local invariants, Chern numbers and duals of singular fibers"};
    app.require_subcommand(1);

    std::string file, out, key, pred_text, emit_dir;
    std::string n_text;
    bool as_json = false, do_minimize = false, decimal = false, unpruned = false;
    int precision = 6;
    long long max_vertices = 5, max_mult = 6;
    std::string genus_range = "2";
    std::string p_text, q_text;

    auto* validate_cmd = app.add_subcommand("validate", "structural and numerical checks");
    validate_cmd->add_option("file", file)->required();
    validate_cmd->add_flag("--json", as_json);

    auto* inv_cmd = app.add_subcommand("invariants", "full invariant bundle");
    inv_cmd->add_option("file", file)->required();
    inv_cmd->add_flag("--json", as_json);
    inv_cmd->add_flag("--decimal", decimal, "append approximate decimals (warning: inexact)");
    inv_cmd->add_option("--precision", precision);

    auto* dual_cmd = app.add_subcommand("dual", "construct the dual model");
    dual_cmd->add_option("file", file)->required();
    dual_cmd->add_option("--n", n_text, "base-change degree, -1 mod lcm of multiplicities");
    dual_cmd->add_flag("--minimize", do_minimize);
    dual_cmd->add_option("-o,--output", out);

    auto* duality_cmd = app.add_subcommand("duality", "chi_F + chi_F* = N_bar check");
    duality_cmd->add_option("file", file)->required();
    duality_cmd->add_option("--n", n_text);

    auto* check_cmd = app.add_subcommand("check", "inequality suite; nonzero exit on violation");
    check_cmd->add_option("file", file)->required();
    check_cmd->add_flag("--json", as_json);

    auto* classify_cmd = app.add_subcommand("classify", "match against the classified fibers");
    classify_cmd->add_option("file", file)->required();

    auto* catalog_cmd = app.add_subcommand("catalog", "built-in fibers");
    auto* cat_list = catalog_cmd->add_subcommand("list", "list keys");
    auto* cat_emit = catalog_cmd->add_subcommand("emit", "write one fiber file");
    cat_emit->add_option("key", key)->required();
    cat_emit->add_option("-o,--output", out);
    auto* cat_verify = catalog_cmd->add_subcommand("verify", "recompute all expectations");
    catalog_cmd->require_subcommand(1);

    bool verify_classification = false;
    auto* search_cmd = app.add_subcommand("search", "pruned enumeration of numerical fibers");
    search_cmd->add_option("--genus", genus_range, "genus or range a..b");
    search_cmd->add_option("--max-vertices", max_vertices)->required();
    search_cmd->add_option("--max-mult", max_mult)->required();
    search_cmd->add_option("--where", pred_text, "predicate over the bundle");
    search_cmd->add_option("--emit-dir", emit_dir);
    search_cmd->add_flag("--unpruned", unpruned);
    search_cmd->add_flag("--json", as_json);
    search_cmd->add_flag("--verify-classification", verify_classification,
                         "diff the fibers above the c1^2 line against the built-in "
                         "catalog (long-running at large bounds)");

    auto* dedekind_cmd = app.add_subcommand("dedekind", "Dedekind sum s(p,q)");
    dedekind_cmd->add_option("p", p_text)->required();
    dedekind_cmd->add_option("q", q_text)->required();

    auto* hj_cmd = app.add_subcommand("hj", "Hirzebruch-Jung expansion of n/q");
    hj_cmd->add_option("n", p_text)->required();
    hj_cmd->add_option("q", q_text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) {
            FiberGraph f = load(file);
            auto rep = validate(f);
            if (as_json) {
                json j;
                j["valid"] = rep.valid();
                j["checks"] = json::array();
                for (const auto& c : rep.checks)
                    j["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& c : rep.checks)
                    std::cout << (c.ok ? "ok   " : "FAIL ") << c.name
                              << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
                std::cout << (rep.valid() ? "valid\n" : "invalid\n");
            }
            return rep.valid() ? 0 : 1;
        }

        if (inv_cmd->parsed()) {
            if (decimal)
                std::cerr << "warning: decimal output is approximate; exact values "
                             "are the fractions\n";
            print_bundle(compute_invariants(load(file)), as_json, decimal, precision);
            return 0;
        }

        if (dual_cmd->parsed()) {
            FiberGraph f = load(file);
            FiberGraph d = n_text.empty() ? dual_fiber(f) : dual_fiber(f, Int(n_text));
            if (do_minimize) d = minimize(d).graph;
            write_out(out, emit_fiber(d));
            return 0;
        }

        if (duality_cmd->parsed()) {
            FiberGraph f = load(file);
            DualityCheck r = n_text.empty() ? duality_check(f)
                                            : duality_check(f, Int(n_text));
            std::cout << "chi = " << rat_str(r.chi_f) << ", chi_dual = "
                      << rat_str(r.chi_dual) << ", N_bar = " << r.n_bar
                      << ", ok = " << (r.ok ? "true" : "false") << "\n";
            return r.ok ? 0 : 1;
        }

        if (check_cmd->parsed()) {
            auto rep = inequality_report(load(file));
            if (as_json) {
                json j;
                j["g"] = rep.g;
                j["semistable"] = rep.semistable;
                j["pass"] = rep.all_pass();
                j["records"] = json::array();
                for (const auto& r : rep.records)
                    j["records"].push_back({{"name", r.name},
                                            {"left", rat_str(r.left)},
                                            {"relation", r.relation},
                                            {"right", rat_str(r.right)},
                                            {"pass", r.pass},
                                            {"note", r.note}});
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& r : rep.records) {
                    std::cout << (r.pass ? "ok   " : "FAIL ") << r.name << ": "
                              << rat_str(r.left) << " " << r.relation << " "
                              << rat_str(r.right)
                              << (r.note.empty() ? "" : "  [" + r.note + "]") << "\n";
                    if (!r.pass)
                        std::cerr << "violation: " << r.name << "\n";
                }
            }
            return rep.all_pass() ? 0 : 1;
        }

        if (classify_cmd->parsed()) {
            ClassifyResult r = classify_fiber(load(file));
            std::cout << "category = " << r.category << "\n";
            if (!r.key.empty()) std::cout << "match = " << r.key << "\n";
            if (!r.note.empty()) std::cout << "note = " << r.note << "\n";
            return 0;
        }

        if (cat_list->parsed()) {
            for (const auto& e : default_corpus()) std::cout << e.key << "\n";
            return 0;
        }
        if (cat_emit->parsed()) {
            write_out(out, emit_fiber(lookup(key).graph));
            return 0;
        }
        if (cat_verify->parsed()) return cmd_catalog_verify();

        if (search_cmd->parsed()) {
            SearchBounds b;
            auto dots = genus_range.find("..");
            if (dots == std::string::npos) {
                b.genus_min = b.genus_max = std::stoll(genus_range);
            } else {
                b.genus_min = std::stoll(genus_range.substr(0, dots));
                b.genus_max = std::stoll(genus_range.substr(dots + 2));
            }
            b.max_vertices = max_vertices;
            b.max_mult = max_mult;

            if (verify_classification) {
                Theorem13Report rep = verify_theorem13(b, thread_count());
                for (const auto& hit : rep.hits)
                    std::cout << "hit " << (hit.matched_key.empty() ? "(unmatched)"
                                                                    : hit.matched_key)
                              << "  g=" << hit.fiber.g
                              << " vertices=" << hit.fiber.graph.components.size()
                              << " c1sq=" << rat_str(hit.fiber.bundle.c1sq_min)
                              << (hit.scaling > 1
                                      ? "  [scaled x" + std::to_string(hit.scaling) + "]"
                                      : "")
                              << "\n";
                for (const auto& k : rep.missing_keys)
                    std::cout << "missing from enumeration: " << k << "\n";
                for (const auto& c : rep.extra_canon)
                    std::cout << "not in catalog: " << c << "\n";
                for (const auto& note : rep.notes) std::cerr << "note: " << note << "\n";
                std::cout << (rep.empty_diff() ? "classification diff: empty\n"
                                               : "classification diff: NONEMPTY\n");
                return rep.empty_diff() ? 0 : 1;
            }

            SearchResult res = enumerate_fibers(b, thread_count(), !unpruned);
            std::cerr << "shapes = " << res.shapes
                      << ", assignments = " << res.assignments
                      << ", fibers = " << res.fibers.size() << "\n";

            std::optional<Predicate> pred;
            if (!pred_text.empty()) pred.emplace(pred_text);

            json fibers = json::array();
            std::map<long long, long long> by_genus;
            long long emitted = 0;
            for (const auto& ff : res.fibers) {
                if (pred && !pred->eval(ff.bundle)) continue;
                ++emitted;
                ++by_genus[ff.g];
                if (as_json) {
                    json j = bundle_json(ff.bundle);
                    j["canonical"] = ff.canon;
                    fibers.push_back(j);
                } else {
                    std::cout << "fiber g=" << ff.g << " vertices="
                              << ff.graph.components.size()
                              << " c1sq=" << rat_str(ff.bundle.c1sq_min)
                              << " c2=" << rat_str(ff.bundle.c2_min)
                              << " chi=" << rat_str(ff.bundle.chi) << "\n";
                }
                if (!emit_dir.empty()) {
                    std::string path = emit_dir + "/fiber" + std::to_string(emitted) + ".fib";
                    write_out(path, emit_fiber(ff.graph));
                }
            }
            if (as_json) {
                json j;
                j["total"] = emitted;
                json counts;
                for (auto& [g, c] : by_genus) counts[std::to_string(g)] = c;
                j["counts_by_genus"] = counts;
                j["fibers"] = fibers;
                std::cout << j.dump(2) << "\n";
            } else {
                for (auto& [g, c] : by_genus)
                    std::cout << "genus " << g << ": " << c << "\n";
                std::cout << "matched = " << emitted << "\n";
            }
            return 0;
        }

        if (dedekind_cmd->parsed()) {
            std::cout << rat_str(dedekind_sum(Int(p_text), Int(q_text))) << "\n";
            return 0;
        }
        if (hj_cmd->parsed()) {
            HJChain c = hj_expand(Int(p_text), Int(q_text));
            std::cout << "es =";
            for (const auto& e : c.es) std::cout << " " << e.str();
            std::cout << "\nmus =";
            for (const auto& m : c.mus) std::cout << " " << m.str();
            std::cout << "\nbeta = " << rat_str(branch_beta(c)) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
