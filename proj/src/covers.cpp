#include "covenc/covers.hpp"

#include "covenc/amo.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace covenc {

namespace {

using edge_set = std::set<std::pair<int, int>>;

std::pair<int, int> ordered(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

void check_vertices(const graph& g, const std::vector<int>& verts, const char* what) {
    for (int v : verts)
        if (v < 1 || v > g.n())
            throw std::invalid_argument(std::string(what) + " mentions vertex " +
                                        std::to_string(v) + " outside the graph");
    std::vector<int> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument(std::string(what) + " repeats a vertex");
}

} // namespace

void validate_clique_cover(const graph& g, const clique_cover& cover) {
    edge_set covered;
    for (const auto& c : cover.cliques) {
        check_vertices(g, c, "clique");
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                if (!g.adjacent(c[i], c[j]))
                    throw std::invalid_argument("clique contains the non-edge {" +
                                                std::to_string(c[i]) + "," +
                                                std::to_string(c[j]) + "}");
                covered.insert(ordered(c[i], c[j]));
            }
    }
    for (auto [u, v] : g.edges())
        if (!covered.contains({u, v}))
            throw std::invalid_argument("edge {" + std::to_string(u) + "," +
                                        std::to_string(v) + "} is not covered");
}

void validate_biclique_cover(const graph& g, const biclique_cover& cover) {
    edge_set covered;
    for (const auto& b : cover.bicliques) {
        if (b.left.empty() || b.right.empty())
            throw std::invalid_argument("biclique with an empty side");
        check_vertices(g, b.left, "biclique side");
        check_vertices(g, b.right, "biclique side");
        for (int u : b.left)
            for (int v : b.right) {
                if (u == v)
                    throw std::invalid_argument("biclique sides share vertex " +
                                                std::to_string(u));
                if (!g.adjacent(u, v))
                    throw std::invalid_argument("biclique contains the non-edge {" +
                                                std::to_string(u) + "," +
                                                std::to_string(v) + "}");
                covered.insert(ordered(u, v));
            }
    }
    for (auto [u, v] : g.edges())
        if (!covered.contains({u, v}))
            throw std::invalid_argument("edge {" + std::to_string(u) + "," +
                                        std::to_string(v) + "} is not covered");
}

clique_cover greedy_clique_cover(const graph& g) {
    edge_set uncovered;
    for (auto [u, v] : g.edges()) uncovered.insert({u, v});
    clique_cover cover;
    while (!uncovered.empty()) {
        auto [su, sv] = *uncovered.begin();
        std::vector<int> clique{su, sv};
        // extensions must pay for themselves with at least one uncovered edge,
        // or late cliques re-encode regions that are already handled
        for (;;) {
            int best = 0, best_new = 0;
            for (int w = 1; w <= g.n(); ++w) {
                if (std::find(clique.begin(), clique.end(), w) != clique.end()) continue;
                bool joins = true;
                int fresh = 0;
                for (int c : clique) {
                    if (!g.adjacent(w, c)) {
                        joins = false;
                        break;
                    }
                    fresh += uncovered.contains(ordered(w, c));
                }
                if (joins && fresh > best_new) {
                    best = w;
                    best_new = fresh;
                }
            }
            if (best == 0) break;
            clique.push_back(best);
        }
        std::sort(clique.begin(), clique.end());
        for (std::size_t i = 0; i < clique.size(); ++i)
            for (std::size_t j = i + 1; j < clique.size(); ++j)
                uncovered.erase(ordered(clique[i], clique[j]));
        cover.cliques.push_back(std::move(clique));
    }
    validate_clique_cover(g, cover);
    return cover;
}

clique_cover interval_clique_cover(int n) {
    if (n < 3) throw std::invalid_argument("interval cover needs n >= 3 positions");
    clique_cover cover;
    for (int k = 2; k <= n - 1; ++k) {
        std::vector<int> clique;
        for (int i = 1; i <= k; ++i)
            for (int j = std::max(k, i + 1); j <= n; ++j)
                clique.push_back(interval_vertex(n, i, j));
        std::sort(clique.begin(), clique.end());
        cover.cliques.push_back(std::move(clique));
    }
    validate_clique_cover(build_interval_graph(n, interval_variant::overlap1), cover);
    return cover;
}

biclique_cover greedy_biclique_cover(const graph& g) {
    edge_set uncovered;
    for (auto [u, v] : g.edges()) uncovered.insert({u, v});
    biclique_cover cover;
    while (!uncovered.empty()) {
        auto [su, sv] = *uncovered.begin();
        std::vector<int> left{su}, right{sv};
        // grow: the candidate must neighbor the whole opposite side and cover
        // at least one uncovered cross edge
        auto extend = [&](std::vector<int>& side, const std::vector<int>& other) {
            int best = 0, best_new = 0;
            for (int w = 1; w <= g.n(); ++w) {
                if (std::find(left.begin(), left.end(), w) != left.end()) continue;
                if (std::find(right.begin(), right.end(), w) != right.end()) continue;
                bool joins = true;
                int fresh = 0;
                for (int o : other) {
                    if (!g.adjacent(w, o)) {
                        joins = false;
                        break;
                    }
                    fresh += uncovered.contains(ordered(w, o));
                }
                if (joins && fresh > best_new) {
                    best = w;
                    best_new = fresh;
                }
            }
            if (best == 0) return false;
            side.push_back(best);
            return true;
        };
        for (bool grew = true; grew;) {
            grew = extend(left, right);
            grew |= extend(right, left);
        }
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        for (int u : left)
            for (int v : right) uncovered.erase(ordered(u, v));
        cover.bicliques.push_back({std::move(left), std::move(right)});
    }
    validate_biclique_cover(g, cover);
    return cover;
}

namespace {

void halving_cover(int lo, int hi, biclique_cover& out) {
    int len = hi - lo + 1;
    if (len < 2) return;
    int mid = lo + (len + 1) / 2 - 1;       // left half takes the extra vertex
    biclique b;
    for (int v = lo; v <= mid; ++v) b.left.push_back(v);
    for (int v = mid + 1; v <= hi; ++v) b.right.push_back(v);
    out.bicliques.push_back(std::move(b));
    halving_cover(lo, mid, out);
    halving_cover(mid + 1, hi, out);
}

} // namespace

biclique_cover kn_recursive_biclique_cover(int n) {
    if (n < 2) throw std::invalid_argument("complete-graph cover needs n >= 2");
    biclique_cover cover;
    halving_cover(1, n, cover);
    return cover;
}

std::size_t cover_weight(const biclique_cover& cover) {
    std::size_t w = 0;
    for (const auto& b : cover.bicliques) w += b.left.size() + b.right.size();
    return w;
}

void ensure_vertex_vars(var_map& pool, int n) {
    while (pool.size() < n) pool.fresh("x", {pool.size() + 1});
}

formula encode_cc_isp(const graph& g, const clique_cover& cover, var_map& pool) {
    validate_clique_cover(g, cover);
    ensure_vertex_vars(pool, g.n());
    formula f;
    f.note_var(g.n());
    for (const auto& c : cover.cliques) {
        if (c.size() < 2) continue;
        formula part = amo_product(c, pool);
        for (const clause& cl : part) f.add(cl);
        f.note_var(part.max_var());
    }
    return f;
}

formula encode_bc_isp(const graph& g, const biclique_cover& cover, var_map& pool) {
    validate_biclique_cover(g, cover);
    ensure_vertex_vars(pool, g.n());
    formula f;
    f.note_var(g.n());
    for (const auto& b : cover.bicliques) {
        if (b.left.size() == 1 && b.right.size() == 1) {
            f.add(clause{-b.left[0], -b.right[0]});
            continue;
        }
        // the smaller side raises the guard, the guard excludes the other side
        const auto& small = b.left.size() <= b.right.size() ? b.left : b.right;
        const auto& large = b.left.size() <= b.right.size() ? b.right : b.left;
        int guard = pool.fresh("bis", {pool.size() + 1});
        for (int v : small) f.add(clause{-v, guard});
        for (int w : large) f.add(clause{-guard, -w});
        f.note_var(guard);
    }
    return f;
}

std::string to_cover_text(const clique_cover& cover) {
    std::string out;
    for (const auto& c : cover.cliques) {
        out += "c";
        for (int v : c) out += ' ' + std::to_string(v);
        out += '\n';
    }
    return out;
}

std::string to_cover_text(const biclique_cover& cover) {
    std::string out;
    for (const auto& b : cover.bicliques) {
        out += "b | A:";
        for (int v : b.left) out += ' ' + std::to_string(v);
        out += " | B:";
        for (int v : b.right) out += ' ' + std::to_string(v);
        out += '\n';
    }
    return out;
}

clique_cover parse_clique_cover(std::string_view text) {
    clique_cover cover;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag != "c") throw parse_error("clique cover: unexpected line: " + line);
        std::vector<int> clique;
        int v = 0;
        while (ls >> v) clique.push_back(v);
        if (!ls.eof()) throw parse_error("clique cover: malformed line: " + line);
        cover.cliques.push_back(std::move(clique));
    }
    return cover;
}

biclique_cover parse_biclique_cover(std::string_view text) {
    biclique_cover cover;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string tag, bar1, atag;
        if (!(ls >> tag >> bar1 >> atag) || tag != "b" || bar1 != "|" || atag != "A:")
            throw parse_error("biclique cover: malformed line: " + line);
        biclique b;
        std::string tok;
        bool in_right = false;
        while (ls >> tok) {
            if (tok == "|") {
                if (!(ls >> tok) || tok != "B:" || in_right)
                    throw parse_error("biclique cover: malformed line: " + line);
                in_right = true;
                continue;
            }
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                (in_right ? b.right : b.left).push_back(v);
            } catch (const std::exception&) {
                throw parse_error("biclique cover: bad vertex '" + tok + "' in: " + line);
            }
        }
        if (!in_right) throw parse_error("biclique cover: missing B side: " + line);
        cover.bicliques.push_back(std::move(b));
    }
    return cover;
}

} // namespace covenc
