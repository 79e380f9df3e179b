#include "fibercalc/catalog.hpp"

#include <algorithm>
#include <sstream>

namespace fibercalc {

namespace {

struct Builder {
    FiberGraph g;
    int counter = 0;

    explicit Builder(std::string name) { g.name = std::move(name); }

    std::string add(long long mult, long long self, long long genus = 0) {
        std::string id = "c" + std::to_string(++counter);
        g.add_component(id, mult, self, genus);
        return id;
    }

    // mult/self pairs joined into a path; returns the ids.
    std::vector<std::string> chain(const std::vector<std::pair<long long, long long>>& specs) {
        std::vector<std::string> ids;
        ids.reserve(specs.size());
        for (const auto& [m, s] : specs) ids.push_back(add(m, s));
        for (std::size_t i = 0; i + 1 < ids.size(); ++i) g.add_node(ids[i], ids[i + 1]);
        return ids;
    }

    // A path hanging off `at`.
    std::vector<std::string> branch(const std::string& at,
                                    const std::vector<std::pair<long long, long long>>& specs) {
        auto ids = chain(specs);
        g.add_node(at, ids.front());
        return ids;
    }
};

using MS = std::vector<std::pair<long long, long long>>;

MS descending(long long from, long long to) {
    MS v;
    for (long long m = from; m >= to; --m) v.push_back({m, -2});
    return v;
}

MS constant_run(long long mult, long long len) {
    MS v;
    for (long long i = 0; i < len; ++i) v.push_back({mult, -2});
    return v;
}

MS concat(std::initializer_list<MS> parts) {
    MS v;
    for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
    return v;
}

struct Row22 {
    long long g;
    Rat c1, c2, chi;
};

Row22 row22(int index) {
    switch (index) {
        case 1:  return {6, Rat(130, 7), Rat(30), Rat(85, 21)};
        case 2:  return {4, Rat(54, 5), Rat(26), Rat(46, 15)};
        case 3:  return {3, Rat(7), Rat(21), Rat(7, 3)};
        case 4:  return {3, Rat(48, 7), Rat(18), Rat(29, 14)};
        case 5:  return {3, Rat(98, 15), Rat(268, 15), Rat(61, 30)};
        case 6:  return {3, Rat(20, 3), Rat(20), Rat(20, 9)};
        case 7:  return {2, Rat(16, 5), Rat(16), Rat(8, 5)};
        case 8:  return {2, Rat(3), Rat(15), Rat(3, 2)};
        case 9:  return {2, Rat(3), Rat(15), Rat(3, 2)};
        case 10: return {2, Rat(3), Rat(9), Rat(1)};
        case 11: return {2, Rat(8, 3), Rat(34, 3), Rat(7, 6)};
        case 12: return {2, Rat(11, 4), Rat(49, 4), Rat(5, 4)};
        case 13: return {2, Rat(17, 6), Rat(79, 6), Rat(4, 3)};
        case 14: return {2, Rat(8, 3), Rat(34, 3), Rat(7, 6)};
        case 15: return {2, Rat(11, 4), Rat(49, 4), Rat(5, 4)};
        case 16: return {2, Rat(17, 6), Rat(79, 6), Rat(4, 3)};
        case 17: return {2, Rat(14, 5), Rat(14), Rat(7, 5)};
        case 18: return {2, Rat(8, 3), Rat(40, 3), Rat(4, 3)};
        case 19: return {2, Rat(8, 3), Rat(40, 3), Rat(4, 3)};
        case 20: return {2, Rat(8, 3), Rat(52, 3), Rat(5, 3)};
        case 21: return {2, Rat(13, 5), Rat(7), Rat(4, 5)};
        case 22: return {2, Rat(31, 12), Rat(197, 12), Rat(19, 12)};
        default: throw Error("twentytwo_entry: index out of range");
    }
}

}  // namespace

bool entry_has_run(int index) {
    return index == 10 || index == 14 || index == 15 || index == 16 || index == 19;
}

CatalogEntry twentytwo_entry(int index, long long run) {
    if (index < 1 || index > 22) throw Error("twentytwo_entry: index out of range");
    if (run < 0) throw Error("twentytwo_entry: negative run extension");
    if (run > 0 && !entry_has_run(index))
        throw Error("twentytwo_entry: entry " + std::to_string(index) +
                    " has no free run");

    Builder b("maximal-c1 fiber " + std::to_string(index) +
              (run > 0 ? " (run +" + std::to_string(run) + ")" : ""));
    switch (index) {
        case 1: {
            auto spine = b.chain(concat({{{3, -2}, {6, -2}, {9, -2}, {12, -2}, {15, -2},
                                          {18, -2}, {21, -2}, {10, -3}},
                                         descending(9, 1)}));
            b.branch(spine[6], {{14, -2}, {7, -2}});
            break;
        }
        case 2: {
            auto spine = b.chain(concat({{{3, -2}, {6, -3}, {15, -2}}, descending(14, 1)}));
            b.branch(spine[2], {{10, -2}, {5, -2}});
            break;
        }
        case 3: {
            auto spine = b.chain(concat({{{3, -2}, {6, -2}, {9, -2}, {12, -2}},
                                         descending(11, 1)}));
            b.branch(spine[3], {{4, -3}});
            break;
        }
        case 4: {
            auto spine = b.chain({{1, -2}, {2, -2}, {3, -2}, {4, -3}, {9, -2}, {14, -2},
                                  {12, -2}, {10, -2}, {8, -2}, {6, -2}, {4, -2}, {2, -2}});
            b.branch(spine[5], {{7, -2}});
            break;
        }
        case 5: {
            auto spine = b.chain({{2, -2}, {4, -2}, {6, -2}, {8, -2}, {10, -2}, {7, -2},
                                  {4, -3}, {5, -2}, {6, -2}, {4, -2}, {2, -2}});
            b.branch(spine[4], {{5, -2}});
            b.branch(spine[8], {{3, -2}});
            break;
        }
        case 6: {
            auto spine = b.chain(concat({{{1, -2}, {2, -2}, {3, -2}, {4, -3}},
                                         descending(9, 1)}));
            b.branch(spine[4], {{6, -2}, {3, -2}});
            break;
        }
        case 7: {
            auto spine = b.chain({{1, -2}, {2, -2}, {3, -2}, {4, -2}, {5, -2}, {6, -2},
                                  {7, -2}, {8, -2}, {9, -2}, {10, -2}, {6, -2}, {2, -3}});
            b.branch(spine[9], {{5, -2}});
            break;
        }
        case 8: {
            auto spine = b.chain({{1, -2}, {2, -2}, {3, -2}, {4, -2}, {5, -2}, {6, -2},
                                  {5, -2}, {4, -2}, {3, -2}, {2, -2}, {1, -2}});
            b.branch(spine[5], {{2, -3}});
            break;
        }
        case 9: {
            auto spine = b.chain(concat({{{1, -2}, {2, -3}, {5, -2}, {8, -2}},
                                         descending(7, 1)}));
            b.branch(spine[3], {{4, -2}});
            break;
        }
        case 10: {
            // family over the number of mult-6 hubs (>= 1); the drawn
            // diagram is the three-hub member
            auto spine = b.chain(concat({{{3, -2}}, constant_run(6, 1 + run),
                                         {{4, -2}, {2, -2}}}));
            b.branch(spine[1], {{3, -2}});
            b.branch(spine[1 + run], {{2, -3}});
            break;
        }
        case 11: {
            auto spine = b.chain({{1, -2}, {2, -3}, {4, -2}, {6, -2}, {4, -2}, {2, -2}});
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[3], {{4, -2}, {2, -2}});
            break;
        }
        case 12: {
            auto spine = b.chain({{1, -2}, {2, -3}, {4, -2}, {6, -2}, {8, -2}, {6, -2},
                                  {4, -2}, {2, -2}});
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[4], {{4, -2}});
            break;
        }
        case 13: {
            auto spine = b.chain({{1, -2}, {2, -3}, {4, -2}, {6, -2}, {8, -2}, {10, -2},
                                  {12, -2}, {8, -2}, {4, -2}});
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[6], {{6, -2}});
            break;
        }
        case 14: {
            // run counts mult-2 vertices beyond two; the one-2 member is
            // entry 11, so the family starts at two
            auto spine = b.chain(concat({{{1, -2}, {2, -2}}, constant_run(2, run),
                                         {{2, -3}, {4, -2}, {6, -2}, {4, -2},
                                          {2, -2}}}));
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[4 + run], {{4, -2}, {2, -2}});
            break;
        }
        case 15: {
            auto spine = b.chain(concat({{{1, -2}, {2, -2}}, constant_run(2, run),
                                         {{2, -3}, {4, -2}, {6, -2}, {8, -2},
                                          {6, -2}, {4, -2}, {2, -2}}}));
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[5 + run], {{4, -2}});
            break;
        }
        case 16: {
            auto spine = b.chain(concat({{{1, -2}, {2, -2}}, constant_run(2, run),
                                         {{2, -3}, {4, -2}, {6, -2}, {8, -2},
                                          {10, -2}, {12, -2}, {8, -2}, {4, -2}}}));
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[7 + run], {{6, -2}});
            break;
        }
        case 17: {
            auto spine = b.chain({{1, -2}, {2, -2}, {3, -2}, {4, -2}, {5, -2}, {4, -2},
                                  {3, -2}, {2, -2}, {1, -2}});
            b.branch(spine[4], {{2, -3}, {1, -2}});
            break;
        }
        case 18: {
            auto spine = b.chain(concat({{{1, -2}, {2, -3}, {4, -2}, {6, -2}},
                                         descending(5, 1)}));
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[3], {{3, -2}});
            break;
        }
        case 19: {
            auto spine = b.chain(concat({{{1, -2}, {2, -2}}, constant_run(2, run),
                                         {{2, -3}, {4, -2}, {6, -2}},
                                         descending(5, 1)}));
            b.branch(spine[1], {{1, -2}});
            b.branch(spine[4 + run], {{3, -2}});
            break;
        }
        case 20: {
            auto spine = b.chain({{2, -2}, {4, -2}, {6, -2}, {5, -2}, {4, -2}, {3, -2},
                                  {2, -3}, {3, -2}, {4, -2}, {5, -2}, {6, -2}, {4, -2},
                                  {2, -2}});
            b.branch(spine[2], {{3, -2}});
            b.branch(spine[10], {{3, -2}});
            break;
        }
        case 21: {
            auto spine = b.chain({{2, -5}, {10, -1}, {3, -4}, {2, -2}, {1, -2}});
            b.branch(spine[1], {{5, -2}});
            b.g.blowups = 2;
            b.g.resolution_mults = std::vector<long long>{2, 3};
            break;
        }
        case 22: {
            auto spine = b.chain({{2, -2}, {4, -2}, {6, -2}, {5, -2}, {4, -2}, {3, -2},
                                  {2, -3}, {3, -2}, {4, -2}, {3, -2}, {2, -2}, {1, -2}});
            b.branch(spine[2], {{3, -2}});
            b.branch(spine[8], {{2, -2}});
            break;
        }
    }

    CatalogEntry entry;
    entry.key = "thm1.3/" + std::to_string(index);
    entry.graph = std::move(b.g);
    const Row22 row = row22(index);
    entry.expected.g = row.g;
    entry.expected.c1sq_min = row.c1;
    entry.expected.c2_min = row.c2;
    entry.expected.chi = row.chi;
    entry.provenance =
        "classification of minimal fibers with c1^2 > 4g - 11/2, entry " +
        std::to_string(index) +
        (entry_has_run(index) ? "; constant run length is a free family parameter"
                              : "");
    return entry;
}

std::vector<CatalogEntry> twentytwo() {
    std::vector<CatalogEntry> out;
    out.reserve(22);
    for (int i = 1; i <= 22; ++i) out.push_back(twentytwo_entry(i));
    return out;
}

CatalogEntry example_family(long long g) {
    if (g < 2) throw Error("example_family: g must be >= 2");
    const long long k = g - 1;
    Builder b("multiple fiber at the c1^2 = 4g - 11/2 boundary, g = " +
              std::to_string(g));
    auto hub = b.add(2 * k, -3);
    auto left = b.add(3 * k, -2);
    auto right = b.add(3 * k, -2);
    auto join = b.add(4 * k, -2);
    auto tail = b.add(2 * k, -2);
    b.g.add_node(hub, left);
    b.g.add_node(hub, right);
    b.g.add_node(left, join);
    b.g.add_node(right, join);
    b.g.add_node(join, tail);

    CatalogEntry entry;
    entry.key = "example1.6/g=" + std::to_string(g);
    entry.graph = std::move(b.g);
    entry.expected.g = g;
    entry.expected.c1sq_min = Rat(4 * g) - Rat(11, 2);
    entry.expected.c2_min = Rat(2 * g) + Rat(5, 2);
    entry.expected.chi = Rat(g, 2) - Rat(1, 4);
    entry.provenance = "scaled genus-2 configuration meeting the c1^2 upper "
                       "boundary for every g >= 2";
    return entry;
}

bool theorem14_applicable(int case_no, long long n, long long h) {
    if (n < 1) return false;
    switch (case_no) {
        case 1: return h >= 2;
        case 2: case 3: case 4: case 5: return h >= 1;
        case 6: case 7: case 8: return true;
        default: return false;
    }
}

CatalogEntry theorem14_family(int case_no, long long n, long long h) {
    if (case_no < 1 || case_no > 8)
        throw Error("theorem14_family: case must be in 1..8");
    if (!theorem14_applicable(case_no, n, h))
        throw Error("theorem14_family: parameters out of range for case " +
                    std::to_string(case_no));

    Builder b("gap-classification witness, case " + std::to_string(case_no) +
              ", n = " + std::to_string(n) +
              (case_no <= 5 ? ", h = " + std::to_string(h) : ""));
    long long n_off = 0;  // N = g - p_a(F_red), closed form per case
    Rat c1_off, c2_off, chi_off;

    switch (case_no) {
        case 1: {
            b.add(n, 0, h);
            n_off = (n - 1) * (h - 1);
            c1_off = 0; c2_off = 0; chi_off = 0;
            break;
        }
        case 2: {
            auto c = b.add(n, -6, h);
            auto e3 = b.add(6 * n, -1);
            auto e1 = b.add(2 * n, -3);
            auto e2 = b.add(3 * n, -2);
            b.g.add_node(e3, c);
            b.g.add_node(e3, e1);
            b.g.add_node(e3, e2);
            b.g.blowups = 3;
            b.g.resolution_mults = std::vector<long long>{2, 2, 3};
            n_off = (n - 1) * h;
            c1_off = Rat(1, 6); c2_off = Rat(11, 6); chi_off = Rat(1, 6);
            break;
        }
        case 3: {
            auto c = b.add(n, -8, h);
            auto e2 = b.add(4 * n, -1);
            auto e1 = b.add(2 * n, -2);
            b.g.add_node(c, e2, 2);
            b.g.add_node(e2, e1);
            b.g.blowups = 2;
            b.g.resolution_mults = std::vector<long long>{2, 3};
            n_off = (n - 1) * (h + 1);
            c1_off = Rat(1, 2); c2_off = Rat(5, 2); chi_off = Rat(1, 4);
            break;
        }
        case 4: {
            auto c1 = b.add(n, -4, h);
            auto c2 = b.add(n, -4, 0);
            auto e2 = b.add(4 * n, -1);
            auto e1 = b.add(2 * n, -2);
            b.g.add_node(c1, e2);
            b.g.add_node(c2, e2);
            b.g.add_node(e2, e1);
            b.g.blowups = 2;
            b.g.resolution_mults = std::vector<long long>{2, 3};
            n_off = (n - 1) * h;
            c1_off = Rat(1, 4); c2_off = Rat(11, 4); chi_off = Rat(1, 4);
            break;
        }
        case 5: {
            auto c = b.add(n, -9, h);
            auto e = b.add(3 * n, -1);
            b.g.add_node(c, e, 3);
            b.g.blowups = 1;
            b.g.resolution_mults = std::vector<long long>{3};
            n_off = (n - 1) * (h + 2);
            c1_off = 1; c2_off = 3; chi_off = Rat(1, 3);
            break;
        }
        case 6: {
            auto a = b.add(n, -4, 0);
            auto bb = b.add(2 * n, -1, 1);
            b.g.add_node(a, bb, 2);
            n_off = 2 * n - 1;
            c1_off = -1; c2_off = 1; chi_off = 0;
            break;
        }
        case 7: {
            auto a1 = b.add(n, -2, 0);
            auto a2 = b.add(n, -2, 1);
            auto bb = b.add(2 * n, -1, 1);
            b.g.add_node(a1, bb);
            b.g.add_node(a2, bb);
            n_off = 2 * n - 1;
            c1_off = Rat(-3, 2); c2_off = Rat(3, 2); chi_off = 0;
            break;
        }
        case 8: {
            // A must be nodal so that it is a branch bullet: one self-node.
            auto a = b.add(n, -6, 0);
            auto bb = b.add(2 * n, -3, 1);
            auto e2 = b.add(6 * n, -1);
            auto e1 = b.add(3 * n, -2);
            b.g.add_node(a, a);
            b.g.add_node(a, e2);
            b.g.add_node(bb, e2);
            b.g.add_node(e1, e2);
            b.g.blowups = 2;
            b.g.resolution_mults = std::vector<long long>{2, 3};
            n_off = 3 * n - 2;
            c1_off = Rat(-1, 2); c2_off = Rat(5, 2); chi_off = Rat(1, 6);
            break;
        }
    }

    CatalogEntry entry;
    std::ostringstream key;
    key << "thm1.4/case" << case_no;
    const long long default_h = case_no == 1 ? 2 : 1;
    if (!(n == 1 && (case_no > 5 || h == default_h))) {
        key << "/n=" << n;
        if (case_no <= 5) key << ",h=" << h;
    }
    entry.key = key.str();
    entry.graph = std::move(b.g);
    const Rat nn(n_off);
    entry.expected.c1sq_offset = c1_off;
    entry.expected.c2_offset = c2_off;
    entry.expected.chi_offset = chi_off;
    entry.expected.c1sq_min = 4 * nn + c1_off;
    entry.expected.c2_min = 2 * nn + c2_off;
    entry.expected.chi = nn / 2 + chi_off;
    entry.provenance = "witness family, gap classification case " +
                       std::to_string(case_no);
    return entry;
}

namespace {

CatalogEntry make_kodaira(const std::string& kind) {
    Builder b("kodaira " + kind);
    Rat c2;

    auto finish = [&](Rat c2v) {
        CatalogEntry e;
        e.key = "kodaira/" + kind;
        e.graph = std::move(b.g);
        e.expected.g = 1;
        e.expected.c1sq_min = 0;
        e.expected.c2_min = c2v;
        e.expected.chi = c2v / 12;
        e.provenance = "genus-1 calibration fiber " + kind;
        return e;
    };

    if (kind == "II") {
        auto c = b.add(1, -6);
        auto e1 = b.add(2, -3);
        auto e2 = b.add(3, -2);
        auto e3 = b.add(6, -1);
        b.g.add_node(e3, c);
        b.g.add_node(e3, e1);
        b.g.add_node(e3, e2);
        b.g.blowups = 3;
        b.g.resolution_mults = std::vector<long long>{2, 2, 3};
        return finish(Rat(2));
    }
    if (kind == "III") {
        auto c1 = b.add(1, -4);
        auto c2c = b.add(1, -4);
        auto e1 = b.add(2, -2);
        auto e2 = b.add(4, -1);
        b.g.add_node(e2, c1);
        b.g.add_node(e2, c2c);
        b.g.add_node(e2, e1);
        b.g.blowups = 2;
        b.g.resolution_mults = std::vector<long long>{2, 3};
        return finish(Rat(3));
    }
    if (kind == "IV") {
        auto e = b.add(3, -1);
        for (int i = 0; i < 3; ++i) b.g.add_node(e, b.add(1, -3));
        b.g.blowups = 1;
        b.g.resolution_mults = std::vector<long long>{3};
        return finish(Rat(4));
    }
    if (kind == "I0*") {
        auto z = b.add(2, -2);
        for (int i = 0; i < 4; ++i) b.g.add_node(z, b.add(1, -2));
        return finish(Rat(6));
    }
    if (kind == "IV*") {
        auto z = b.add(3, -2);
        for (int i = 0; i < 3; ++i) b.branch(z, {{2, -2}, {1, -2}});
        return finish(Rat(8));
    }
    if (kind == "III*") {
        auto spine = b.chain({{1, -2}, {2, -2}, {3, -2}, {4, -2}, {3, -2}, {2, -2},
                              {1, -2}});
        b.branch(spine[3], {{2, -2}});
        return finish(Rat(9));
    }
    if (kind == "II*") {
        auto spine = b.chain({{1, -2}, {2, -2}, {3, -2}, {4, -2}, {5, -2}, {6, -2},
                              {4, -2}, {2, -2}});
        b.branch(spine[5], {{3, -2}});
        return finish(Rat(10));
    }

    // I_b cycles and their multiples: "<m>I<b>" or "I<b>".
    long long mult = 1;
    std::string rest = kind;
    auto ipos = rest.find('I');
    if (ipos == std::string::npos) throw Error("unknown Kodaira kind: " + kind);
    if (ipos > 0) {
        mult = std::stoll(rest.substr(0, ipos));
        if (mult < 1) throw Error("unknown Kodaira kind: " + kind);
    }
    long long cycle = std::stoll(rest.substr(ipos + 1));
    if (cycle < 0) throw Error("unknown Kodaira kind: " + kind);

    if (cycle == 0) {
        b.add(mult, 0, 1);  // smooth (multiple) elliptic fiber
    } else if (cycle == 1) {
        auto c = b.add(mult, 0);
        b.g.add_node(c, c);
    } else if (cycle == 2) {
        auto c1 = b.add(mult, -2);
        auto c2c = b.add(mult, -2);
        b.g.add_node(c1, c2c, 2);
    } else {
        std::vector<std::string> ring;
        for (long long i = 0; i < cycle; ++i) ring.push_back(b.add(mult, -2));
        for (long long i = 0; i < cycle; ++i)
            b.g.add_node(ring[i], ring[(i + 1) % cycle]);
    }
    return finish(Rat(0));
}

}  // namespace

CatalogEntry kodaira(const std::string& kind) { return make_kodaira(kind); }

std::vector<std::string> kodaira_kinds() {
    return {"II", "III", "IV", "I0*", "IV*", "III*", "II*", "I1", "I2", "I3", "2I3"};
}

CatalogEntry lookup(const std::string& key) {
    auto starts = [&key](const char* p) { return key.rfind(p, 0) == 0; };
    if (starts("thm1.3/")) {
        return twentytwo_entry(std::stoi(key.substr(7)));
    }
    if (starts("kodaira/")) {
        return kodaira(key.substr(8));
    }
    if (starts("example1.6/g=")) {
        return example_family(std::stoll(key.substr(13)));
    }
    if (starts("thm1.4/case")) {
        std::string rest = key.substr(11);
        long long n = 1, h = 1;
        int case_no;
        auto slash = rest.find('/');
        if (slash == std::string::npos) {
            case_no = std::stoi(rest);
            if (case_no == 1) h = 2;
        } else {
            case_no = std::stoi(rest.substr(0, slash));
            std::string params = rest.substr(slash + 1);
            std::istringstream in(params);
            std::string tok;
            while (std::getline(in, tok, ',')) {
                if (tok.rfind("n=", 0) == 0) n = std::stoll(tok.substr(2));
                else if (tok.rfind("h=", 0) == 0) h = std::stoll(tok.substr(2));
                else throw Error("bad catalog key parameter: " + tok);
            }
        }
        return theorem14_family(case_no, n, h);
    }
    throw Error("unknown catalog key: " + key);
}

std::vector<CatalogEntry> default_corpus() {
    std::vector<CatalogEntry> out = twentytwo();
    for (const auto& kind : kodaira_kinds()) out.push_back(kodaira(kind));
    for (long long g = 2; g <= 12; ++g) out.push_back(example_family(g));
    for (int c = 1; c <= 8; ++c)
        for (long long n = 1; n <= 4; ++n)
            for (long long h = 0; h <= 2; ++h) {
                if (!theorem14_applicable(c, n, h)) continue;
                out.push_back(theorem14_family(c, n, h));
                if (c > 5) break;  // h is ignored
            }
    return out;
}

}  // namespace fibercalc
