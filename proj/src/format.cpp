#include "fibercalc/format.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace fibercalc {

bool label_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

namespace {

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
    throw Error("syntax error at line " + std::to_string(line) + ": " + what);
}

long long parse_int(const std::string& tok, std::size_t line) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) syntax_error(line, "bad integer '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        syntax_error(line, "bad integer '" + tok + "'");
    }
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

struct RawComponent {
    std::string id;
    long long mult = 0;
    std::optional<long long> self;
    long long genus = 0;
    std::size_t line = 0;
};

}  // namespace

FiberGraph parse_fiber(const std::string& text) {
    FiberGraph f;
    std::vector<RawComponent> raw;
    std::map<std::pair<std::string, std::string>, long long> edges;
    std::vector<std::pair<std::string, std::string>> edge_order;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];

        if (kw == "fiber") {
            auto q1 = line.find('"');
            auto q2 = line.rfind('"');
            if (q1 == std::string::npos || q2 <= q1)
                syntax_error(lineno, "expected fiber \"<name>\"");
            f.name = line.substr(q1 + 1, q2 - q1 - 1);
        } else if (kw == "blowups") {
            if (toks.size() != 2) syntax_error(lineno, "expected blowups <r>");
            f.blowups = parse_int(toks[1], lineno);
            if (f.blowups < 0) syntax_error(lineno, "blowups must be >= 0");
        } else if (kw == "genus-check") {
            if (toks.size() != 2) syntax_error(lineno, "expected genus-check <g>");
            f.genus_check = parse_int(toks[1], lineno);
        } else if (kw == "resolution") {
            if (toks.size() < 2) syntax_error(lineno, "expected resolution <m>...");
            std::vector<long long> ms;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                long long m = parse_int(toks[i], lineno);
                if (m < 2) syntax_error(lineno, "resolution multiplicities are >= 2");
                ms.push_back(m);
            }
            f.resolution_mults = std::move(ms);
        } else if (kw == "component") {
            if (toks.size() < 3) syntax_error(lineno, "expected component <id> mult=<n> ...");
            RawComponent c;
            c.id = toks[1];
            c.line = lineno;
            bool have_mult = false;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto eq = toks[i].find('=');
                if (eq == std::string::npos)
                    syntax_error(lineno, "expected key=value, got '" + toks[i] + "'");
                std::string key = toks[i].substr(0, eq);
                long long val = parse_int(toks[i].substr(eq + 1), lineno);
                if (key == "mult") { c.mult = val; have_mult = true; }
                else if (key == "self") c.self = val;
                else if (key == "genus") c.genus = val;
                else syntax_error(lineno, "unknown component field '" + key + "'");
            }
            if (!have_mult) syntax_error(lineno, "component requires mult=");
            if (c.mult < 1) syntax_error(lineno, "mult must be >= 1");
            if (c.genus < 0) syntax_error(lineno, "genus must be >= 0");
            for (const auto& prev : raw)
                if (prev.id == c.id) syntax_error(lineno, "duplicate component '" + c.id + "'");
            raw.push_back(std::move(c));
        } else if (kw == "node") {
            if (toks.size() != 3 && toks.size() != 4)
                syntax_error(lineno, "expected node <id1> <id2> [x<count>]");
            std::string a = toks[1], b = toks[2];
            long long count = 1;
            if (toks.size() == 4) {
                if (toks[3].empty() || toks[3][0] != 'x')
                    syntax_error(lineno, "expected x<count>, got '" + toks[3] + "'");
                count = parse_int(toks[3].substr(1), lineno);
                if (count < 1) syntax_error(lineno, "node count must be >= 1");
            }
            if (label_less(b, a)) std::swap(a, b);
            auto key = std::make_pair(a, b);
            if (edges.find(key) == edges.end()) edge_order.push_back(key);
            edges[key] += count;
        } else {
            syntax_error(lineno, "unknown keyword '" + kw + "'");
        }
    }

    if (raw.empty()) throw Error("syntax error: no components");

    for (const auto& [key, cnt] : edges) {
        bool a_ok = false, b_ok = false;
        for (const auto& c : raw) {
            if (c.id == key.first) a_ok = true;
            if (c.id == key.second) b_ok = true;
        }
        if (!a_ok) throw Error("unknown component in node line: " + key.first);
        if (!b_ok) throw Error("unknown component in node line: " + key.second);
    }

    // Solve omitted self-intersections from the Zariski identity:
    // self_i = -(sum_{j != i} n_j count(i,j)) / n_i.
    for (auto& c : raw) {
        Int cross = 0;
        for (const auto& [key, cnt] : edges) {
            if (key.first == key.second) continue;
            if (key.first == c.id) {
                for (const auto& o : raw)
                    if (o.id == key.second) cross += Int(o.mult) * cnt;
            } else if (key.second == c.id) {
                for (const auto& o : raw)
                    if (o.id == key.first) cross += Int(o.mult) * cnt;
            }
        }
        if (c.self) {
            if (Int(c.mult) * *c.self + cross != 0)
                throw Error("Zariski identity violated at component " + c.id +
                            ": " + std::to_string(*c.self) + " given, cross sum " +
                            cross.str());
        } else {
            if (mod_floor(-cross, Int(c.mult)) != 0)
                throw Error("not a numerical fiber: component " + c.id +
                            " needs self-intersection -" + cross.str() + "/" +
                            std::to_string(c.mult) + ", not an integer");
            c.self = (-cross / Int(c.mult)).convert_to<long long>();
        }
    }

    for (const auto& c : raw)
        f.add_component(c.id, c.mult, *c.self, c.genus);
    for (const auto& key : edge_order)
        f.add_node(key.first, key.second, edges.at(key));

    if (!f.connected()) throw Error("disconnected graph");

    long long g;
    try {
        g = fiber_genus(f);
    } catch (const Error& e) {
        throw Error(std::string("not a numerical fiber: ") + e.what());
    }
    if (g < 1)
        throw Error("not a numerical fiber: fiber genus " + std::to_string(g));
    if (f.genus_check && *f.genus_check != g)
        throw Error("declared genus mismatch: genus-check " +
                    std::to_string(*f.genus_check) + ", computed " + std::to_string(g));

    if (f.resolution_mults &&
        static_cast<long long>(f.resolution_mults->size()) != f.blowups)
        throw Error("resolution record length " +
                    std::to_string(f.resolution_mults->size()) +
                    " does not match blowups " + std::to_string(f.blowups));

    return f;
}

namespace {

std::vector<const Component*> sorted_components(const FiberGraph& f) {
    std::vector<const Component*> sorted;
    sorted.reserve(f.components.size());
    for (const auto& c : f.components) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(),
              [](const Component* a, const Component* b) {
                  return label_less(a->id, b->id);
              });
    return sorted;
}

std::vector<NodeEdge> sorted_nodes(const FiberGraph& f) {
    std::map<std::pair<std::string, std::string>, long long> merged;
    for (const auto& e : f.nodes) {
        std::string a = e.a, b = e.b;
        if (label_less(b, a)) std::swap(a, b);
        merged[{a, b}] += e.count;
    }
    std::vector<NodeEdge> out;
    for (const auto& [key, cnt] : merged)
        out.push_back(NodeEdge{key.first, key.second, cnt});
    std::sort(out.begin(), out.end(), [](const NodeEdge& x, const NodeEdge& y) {
        if (x.a != y.a) return label_less(x.a, y.a);
        return label_less(x.b, y.b);
    });
    return out;
}

}  // namespace

std::string emit_fiber(const FiberGraph& f) {
    std::ostringstream out;
    out << "fiber \"" << f.name << "\"\n";
    if (f.blowups != 0) out << "blowups " << f.blowups << "\n";
    if (f.genus_check) out << "genus-check " << *f.genus_check << "\n";
    if (f.resolution_mults && !f.resolution_mults->empty()) {
        out << "resolution";
        for (long long m : *f.resolution_mults) out << " " << m;
        out << "\n";
    }
    for (const Component* c : sorted_components(f)) {
        out << "component " << c->id << " mult=" << c->mult << " self=" << c->self_int;
        if (c->genus != 0) out << " genus=" << c->genus;
        out << "\n";
    }
    for (const auto& e : sorted_nodes(f)) {
        out << "node " << e.a << " " << e.b;
        if (e.count != 1) out << " x" << e.count;
        out << "\n";
    }
    return out.str();
}

std::string emit_fiber_kv(const FiberGraph& f) {
    std::ostringstream out;
    out << "fiber.name = " << f.name << "\n";
    out << "fiber.blowups = " << f.blowups << "\n";
    if (f.genus_check) out << "fiber.genus-check = " << *f.genus_check << "\n";
    if (f.resolution_mults && !f.resolution_mults->empty()) {
        out << "fiber.resolution =";
        for (long long m : *f.resolution_mults) out << " " << m;
        out << "\n";
    }
    for (const Component* c : sorted_components(f)) {
        out << "component." << c->id << ".mult = " << c->mult << "\n";
        out << "component." << c->id << ".self = " << c->self_int << "\n";
        out << "component." << c->id << ".genus = " << c->genus << "\n";
    }
    std::size_t i = 0;
    for (const auto& e : sorted_nodes(f)) {
        out << "node." << i << " = " << e.a << " " << e.b << " x" << e.count << "\n";
        ++i;
    }
    return out.str();
}

}  // namespace fibercalc
