#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lish/codec.hpp"
#include "lish/model.hpp"
#include "lish/validate.hpp"

namespace lish::testing {

namespace {

Node lish(std::vector<Node> elements) { return make_lish(std::move(elements)); }
Node rows(std::vector<Node> elements) { return make_lish(std::move(elements), Orientation::rows); }
Node null_atom() { return Node(Atom{}); }
Node str(const char* s) { return Node(Scalar(std::string(s))); }
Node num(std::int64_t v) { return Node(Scalar(v)); }
Node real(double v) { return Node(Scalar(v)); }

Document make_document(Node root) {
    Document d;
    d.root = std::move(root);
    return d;
}

} // namespace

Document population() {
    struct Region {
        const char* name;
        std::int64_t area, p14, p15;
        double d14, d15;
    };
    const Region regions[] = {
        {"North East", 857000, 2618700, 2624600, 3.06, 3.06},
        {"North West", 1411000, 7133000, 7173800, 5.06, 5.08},
        {"Yorks & Humber", 1541000, 5360000, 5390600, 3.48, 3.50},
        {"East Midlands", 1562000, 4637400, 4677000, 2.97, 2.99},
        {"West Midlands", 1300000, 5713300, 5751000, 4.39, 4.42},
        {"East", 1912000, 6018400, 6076500, 3.15, 3.18},
        {"London", 157000, 8538700, 8673700, 54.39, 55.25},
        {"South East", 1907000, 8873800, 8947900, 4.65, 4.69},
        {"South West", 2384000, 5423300, 5471200, 2.27, 2.29},
    };

    std::vector<Node> table;
    table.push_back(lish({null_atom(), null_atom(), null_atom(), lish({null_atom(), num(2014), num(2015)}),
                          lish({str("X"), num(2014), num(2015)})}));
    for (const auto& r : regions)
        table.push_back(lish({null_atom(), str(r.name), num(r.area), lish({null_atom(), num(r.p14), num(r.p15)}),
                              lish({null_atom(), real(r.d14), real(r.d15)})}));

    Node metadata = rows({lish({null_atom(), null_atom()}), lish({str("sex"), str("Total")}),
                          lish({str("age"), str("Total")})});

    return make_document(lish({null_atom(), str("Mid year population estimates by Region, England"),
                               std::move(metadata), rows(std::move(table)),
                               str("Source: Office for National Statistics, via NOMIS.")}));
}

Document rainfall() {
    auto city = [](const char* name, std::vector<std::int64_t> v) {
        return lish({lish({str(name), num(2015), num(2016)}), lish({str("Q1"), num(v[0]), num(v[1])}),
                     lish({str("Q2"), num(v[2]), num(v[3])}), lish({str("Q3"), num(v[4]), num(v[5])}),
                     lish({str("Q4"), num(v[6]), num(v[7])})});
    };
    Node tmpl = lish({lish({null_atom(), num(2015), num(2016)}), lish({str("Q1"), null_atom(), null_atom()}),
                      lish({str("Q2"), null_atom(), null_atom()}), lish({str("Q3"), null_atom(), null_atom()}),
                      lish({str("Q4"), null_atom(), null_atom()})});
    return make_document(lish({std::move(tmpl), city("London", {150, 140, 170, 180, 100, 110, 120, 130}),
                               city("Cardiff", {300, 280, 280, 290, 220, 210, 250, 240}),
                               city("Edinburgh", {410, 420, 430, 400, 380, 330, 390, 410})}));
}

Document workforce() {
    Node tmpl = lish({null_atom(), lish({str("site id"), null_atom()}),
                      lish({null_atom(), lish({str("site address"), str(" ")}),
                            lish({lish({str("staff"), num(2015), num(2016), num(2017)}),
                                  lish({str("assistants"), null_atom(), null_atom(), null_atom()}),
                                  lish({str("supervisors"), null_atom(), null_atom(), null_atom()}),
                                  lish({str("managers"), null_atom(), null_atom(), null_atom()})})})});

    auto site = [](std::int64_t id, std::vector<const char*> address, std::vector<std::int64_t> staff) {
        std::vector<Node> lines{null_atom()};
        for (const char* l : address) lines.push_back(str(l));
        auto row = [&](std::size_t r) {
            return lish({null_atom(), num(staff[r * 3]), num(staff[r * 3 + 1]), num(staff[r * 3 + 2])});
        };
        return lish({null_atom(), lish({null_atom(), num(id)}),
                     lish({null_atom(), lish({null_atom(), lish(std::move(lines))}),
                           lish({lish({null_atom(), num(2015), num(2016), num(2017)}), row(0), row(1), row(2)})})});
    };

    return make_document(lish({std::move(tmpl),
                               site(123, {"12 New Street", "Old Town", "OL2 3AB"}, {7, 6, 9, 4, 4, 5, 2, 2, 2}),
                               site(124, {"15 High Street", "Low Town", "Broadshire", "BR9 2CD"},
                                    {3, 4, 3, 2, 2, 2, 1, 1, 1}),
                               site(125, {"42 Silicon Boulevard", "Cool City", "CC1 1ZZ"},
                                    {10, 14, 19, 6, 8, 11, 3, 5, 5})}));
}

std::vector<CorpusCase> rule_examples() {
    return {
        {"[null, 1, 2, [3, 4], 5]", true, {}},
        {"[[null, null, null], [null, 1, 2], [null, 3, 4]]", true, {}},
        {"[[null, null], 1, 2, 3]", false, {{1}, {2}, {3}}},
        {"[[null, null], [1, 2, 3]]", false, {{1}}},
        {"[[[null, null], null], [[1, 2], [3, 4]]]", false, {{0, 1}}},
        {"[null, [null, null]]", true, {}},
        {"[[null, [null, null]], [1, [2, 3]], [4, [5, 6]]]", true, {}},
        {"[[null, [null, null]], [1, [2, 3]], [4, [5, [6, 7, 8]]]]", true, {}},
        {"[null, [[1, 2], 3, 4]]", false, {{1, 1}, {1, 2}}},
    };
}

std::vector<Document> corpus() {
    std::vector<Document> docs;
    for (const auto& c : rule_examples())
        if (c.valid) docs.push_back(make_document(parse_node(c.text)));
    docs.push_back(make_document(
        parse_node(R"([[null, "Region", "Area"], [null, "North East", 857000], [null, "North West", 1411000],
                       [null, "Yorks & Humber", 1541000]])")));
    docs.push_back(population());
    docs.push_back(rainfall());
    docs.push_back(workforce());
    docs.push_back(make_document(from_grid({{Scalar(std::int64_t{1})}})));
    docs.push_back(make_document(from_grid({{Scalar(std::int64_t{1}), Scalar(std::string("a")), Scalar()},
                                            {Scalar(2.5), Scalar(true), Scalar(std::string("b"))}})));
    Document strict = rainfall();
    strict.mode = Mode::strict;
    node_at_mut(strict.root, {0, 2, 1}).atom().formula = "=SUM(ABOVE)";
    node_at_mut(strict.root, {0, 0, 1}).atom().format["bold"] = "true";
    docs.push_back(strict);
    return docs;
}

// ---------------------------------------------------------------------------

namespace {

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Node random_atom(std::mt19937_64& rng, const GenOptions& opts) {
    Atom a;
    a.value = random_scalar(rng);
    if (coin(rng, opts.formula_rate)) a.formula = "=F" + std::to_string(pick(rng, 0, 99));
    return Node(std::move(a));
}

Node gen_tree(std::mt19937_64& rng, int depth, const GenOptions& opts, bool force_lish) {
    if (!force_lish && (depth <= 0 || coin(rng, 0.3))) return random_atom(rng, opts);
    if (depth <= 0) return make_lish({random_atom(rng, opts)});
    const std::size_t len = pick(rng, 1, opts.max_fan);
    std::vector<Node> elements;
    elements.push_back(gen_tree(rng, depth - 1, opts, false));
    for (std::size_t j = 1; j < len; ++j) elements.push_back(random_instance(rng, elements[0], depth - 1, opts));
    return make_lish(std::move(elements));
}

// The least structure satisfying both a and b, if they agree on lish lengths.
Node join(const Node& a, const Node& b) {
    if (a.is_atom()) return b;
    if (b.is_atom()) return a;
    if (a.lish().size() != b.lish().size()) return a;
    std::vector<Node> elements;
    for (std::size_t i = 0; i < a.lish().size(); ++i) elements.push_back(join(a.lish()[i], b.lish()[i]));
    return make_lish(std::move(elements));
}

} // namespace

Scalar random_scalar(std::mt19937_64& rng) {
    switch (pick(rng, 0, 9)) {
    case 0:
    case 1:
    case 2: return Scalar();
    case 3:
    case 4:
    case 5: return Scalar(static_cast<std::int64_t>(pick(rng, 0, 2000)) - 1000);
    case 6: return Scalar(static_cast<double>(pick(rng, 0, 400)) / 4.0 + 0.25);
    case 7: return Scalar(coin(rng, 0.5));
    default: {
        static const char* words[] = {"a", "Q1", "North", "x y", "ümlaut", "", "\"q\"", "2015"};
        return Scalar(std::string(words[pick(rng, 0, std::size(words) - 1)]));
    }
    }
}

Node random_instance(std::mt19937_64& rng, const Node& tmpl, int depth, const GenOptions& opts) {
    if (tmpl.is_atom()) {
        if (depth > 0 && coin(rng, 0.2)) return gen_tree(rng, depth, opts, true);
        return random_atom(rng, opts);
    }
    const auto& t = tmpl.lish();
    std::vector<Node> elements;
    elements.push_back(random_instance(rng, t[0], depth - 1, opts));
    for (std::size_t j = 1; j < t.size(); ++j)
        elements.push_back(random_instance(rng, join(t[j], elements[0]), depth - 1, opts));
    return make_lish(std::move(elements));
}

Node random_valid(std::mt19937_64& rng, const GenOptions& opts) {
    for (;;) {
        Node n = gen_tree(rng, opts.max_depth, opts, true);
        if (validate(n).ok()) return n;
    }
}

EditCommand random_command(std::mt19937_64& rng, const Document& doc) {
    const auto atoms = all_atoms(doc.root);
    const auto lishes = all_lishes(doc.root);
    std::vector<LishPath> marginal;
    for (const auto& p : atoms)
        if (p.is_marginal()) marginal.push_back(p);
    for (const auto& p : lishes)
        if (p.is_marginal()) marginal.push_back(p);

    auto garbage = [&] {
        std::vector<std::size_t> v(pick(rng, 0, 4));
        for (auto& i : v) i = pick(rng, 0, 6);
        return LishPath(v);
    };
    auto from = [&](const std::vector<LishPath>& pool) {
        if (pool.empty() || coin(rng, 0.1)) return garbage();
        return pool[pick(rng, 0, pool.size() - 1)];
    };
    auto any = [&] { return coin(rng, 0.5) ? from(atoms) : from(lishes); };
    auto size_of = [&](const LishPath& p) -> std::size_t {
        const Node* n = find_node(doc.root, p);
        return n && n->is_lish() ? n->lish().size() : 3;
    };

    switch (pick(rng, 0, 9)) {
    case 0: return cmd::SetValue{from(atoms), random_scalar(rng)};
    case 1: {
        std::optional<std::string> text;
        if (coin(rng, 0.8)) text = "=R" + std::to_string(pick(rng, 0, 9));
        return cmd::SetFormula{any(), text};
    }
    case 2: {
        std::optional<std::string> value;
        if (coin(rng, 0.7)) value = coin(rng, 0.5) ? "true" : "0.00";
        return cmd::SetFormat{any(), coin(rng, 0.5) ? "bold" : "number", value};
    }
    case 3: {
        auto p = from(lishes);
        return cmd::InstantiateElement{p, pick(rng, 0, size_of(p) + 1)};
    }
    case 4: return cmd::DeleteElement{any()};
    case 5: return cmd::ExpandAtom{from(atoms), pick(rng, 1, 4)};
    case 6: {
        auto p = from(lishes);
        auto a = pick(rng, 0, size_of(p)), b = pick(rng, 0, size_of(p));
        return cmd::WrapColumns{p, std::min(a, b), std::max(a, b)};
    }
    case 7: {
        auto p = from(lishes);
        auto a = pick(rng, 0, size_of(p)), b = pick(rng, 0, size_of(p));
        return cmd::WrapElements{p, std::min(a, b), std::max(a, b),
                                 coin(rng, 0.5) ? cmd::TemplateMode::inherit : cmd::TemplateMode::null_atom};
    }
    case 8: {
        GenOptions small{2, 3, 0.1};
        Node n = coin(rng, 0.4) ? random_atom(rng, small) : random_valid(rng, small);
        return cmd::EditTemplate{from(marginal), std::move(n), coin(rng, 0.6)};
    }
    default: return cmd::SetMode{coin(rng, 0.5) ? Mode::strict : Mode::relaxed};
    }
}

// ---------------------------------------------------------------------------

namespace {

void walk(const Node& n, LishPath& at, std::vector<LishPath>& atoms, std::vector<LishPath>& lishes) {
    if (n.is_atom()) {
        atoms.push_back(at);
        return;
    }
    lishes.push_back(at);
    for (std::size_t i = 0; i < n.lish().size(); ++i) {
        LishPath child = at.child(i);
        walk(n.lish()[i], child, atoms, lishes);
    }
}

} // namespace

std::vector<LishPath> all_atoms(const Node& root) {
    std::vector<LishPath> atoms, lishes;
    LishPath at;
    walk(root, at, atoms, lishes);
    return atoms;
}

std::vector<LishPath> all_lishes(const Node& root) {
    std::vector<LishPath> atoms, lishes;
    LishPath at;
    walk(root, at, atoms, lishes);
    return lishes;
}

std::vector<LishPath> brute_governed(const Node& root, const LishPath& margin) {
    std::vector<LishPath> out;
    const Node* m = find_node(root, margin);
    if (!m || !m->is_atom() || !margin.is_marginal()) return out;
    for (const auto& p : all_atoms(root)) {
        if (p.size() < margin.size()) continue;
        bool match = true;
        for (std::size_t i = 0; i < p.size() && match; ++i) {
            if (i < margin.size())
                match = margin[i] == 0 ? p[i] != 0 : p[i] == margin[i];
            else
                match = p[i] != 0;
        }
        if (match) out.push_back(p);
    }
    return out;
}

Orientation effective_orientation(const Node& root, const LishPath& lish, Orientation root_orientation) {
    const Node* n = &root;
    Orientation o = root.lish().orientation.value_or(root_orientation);
    for (std::size_t i = 0; i < lish.size(); ++i) {
        n = &n->lish()[lish[i]];
        o = n->lish().orientation.value_or(flip(o));
    }
    return o;
}

Box bounding_box(const std::vector<Placement>& placements, const LishPath& prefix) {
    Box b{INT32_MAX, INT32_MAX, INT32_MIN, INT32_MIN};
    for (const auto& p : placements) {
        if (!p.path.starts_with(prefix)) continue;
        b.x0 = std::min(b.x0, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.x1 = std::max(b.x1, p.x + p.col_span);
        b.y1 = std::max(b.y1, p.y + p.row_span);
    }
    return b;
}

std::string check_overlap_and_coverage(const Node& root, const std::vector<Placement>& placements) {
    std::ostringstream why;
    std::map<LishPath, int> seen;
    for (const auto& p : placements) ++seen[p.path];
    const auto atoms = all_atoms(root);
    if (seen.size() != atoms.size() || placements.size() != atoms.size()) {
        why << "placed " << placements.size() << " cells for " << atoms.size() << " atoms";
        return why.str();
    }
    for (const auto& a : atoms)
        if (seen[a] != 1) {
            why << "atom " << a << " placed " << seen[a] << " times";
            return why.str();
        }
    std::map<std::pair<int, int>, LishPath> occupied;
    for (const auto& p : placements) {
        if (p.col_span < 1 || p.row_span < 1 || p.x < 0 || p.y < 0) {
            why << p.path << " has a degenerate rectangle";
            return why.str();
        }
        for (int x = p.x; x < p.x + p.col_span; ++x)
            for (int y = p.y; y < p.y + p.row_span; ++y) {
                auto [it, fresh] = occupied.emplace(std::pair{x, y}, p.path);
                if (!fresh) {
                    why << p.path << " overlaps " << it->second << " at (" << x << "," << y << ")";
                    return why.str();
                }
            }
    }
    return {};
}

std::string check_alignment(const Node& root, const std::vector<Placement>& placements, Orientation root_orientation) {
    for (const auto& lp : all_lishes(root)) {
        const Lish& l = node_at(root, lp).lish();
        if (!l.tmpl().is_lish() || l.size() < 2) continue;
        const Orientation o = effective_orientation(root, lp, root_orientation);
        bool across = true;
        for (std::size_t i = 0; i < l.size() && across; ++i)
            across = effective_orientation(root, lp.child(i), root_orientation) == flip(o);
        if (!across) continue;
        const bool cross_is_x = o == Orientation::rows;
        for (std::size_t k = 0; k < l.tmpl().lish().size(); ++k) {
            const Box ref = bounding_box(placements, lp.child(0).child(k));
            for (std::size_t i = 1; i < l.size(); ++i) {
                const Box b = bounding_box(placements, lp.child(i).child(k));
                const bool same = cross_is_x ? (b.x0 == ref.x0 && b.x1 == ref.x1) : (b.y0 == ref.y0 && b.y1 == ref.y1);
                if (!same) {
                    std::ostringstream why;
                    why << lp.child(i).child(k) << " is not aligned with " << lp.child(0).child(k);
                    return why.str();
                }
            }
        }
    }
    return {};
}

TempDir::TempDir() {
    std::random_device rd;
    std::ostringstream name;
    name << "lish-test-" << std::hex << rd() << rd();
    path_ = std::filesystem::temp_directory_path() / name.str();
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace lish::testing
