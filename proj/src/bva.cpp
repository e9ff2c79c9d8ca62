#include "covenc/bva.hpp"

#include "covenc/amo.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace covenc {

namespace {

void check_pool_covers(const formula& f, const var_map& pool) {
    if (f.max_var() > pool.size())
        throw std::invalid_argument("variable pool does not cover the formula");
}

// gamma with l added; nullopt when the union would be tautological.
std::optional<clause> join(const clause& gamma, literal l) {
    if (gamma.contains(~l)) return std::nullopt;
    std::vector<int> codes = gamma.codes();
    codes.push_back(l.code());
    return clause(std::span<const int>(codes));
}

bool code_less(int a, int b) {
    int va = std::abs(a), vb = std::abs(b);
    if (va != vb) return va < vb;
    return a < b;
}

struct rewrite_candidate {
    grid_product gp;
    int gain;
};

// Best-gain grid product whose expansion lies inside f, or nullopt when no
// literal pair shares a removal. Seed pairs are scanned in canonical literal
// order, so ties keep the smallest pair.
std::optional<rewrite_candidate> detect_grid_product(const formula& f) {
    // removal buckets: gamma -> the literals l with gamma + l present in f
    std::unordered_map<clause, std::vector<int>, clause_hash> buckets;
    for (const clause& c : f) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::vector<int> rest;
            rest.reserve(c.size() - 1);
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != i) rest.push_back(c.codes()[j]);
            buckets[clause(std::span<const int>(rest))].push_back(c.codes()[i]);
        }
    }

    // seed pair -> shared removals, keyed canonically for deterministic scans
    auto pair_less = [](const std::pair<int, int>& p, const std::pair<int, int>& q) {
        if (p.first != q.first) return code_less(p.first, q.first);
        return code_less(p.second, q.second);
    };
    std::map<std::pair<int, int>, std::vector<clause>, decltype(pair_less)> seeds(pair_less);
    for (auto& [gamma, lits] : buckets) {
        std::sort(lits.begin(), lits.end(), code_less);
        for (std::size_t i = 0; i < lits.size(); ++i)
            for (std::size_t j = i + 1; j < lits.size(); ++j) {
                if (lits[i] == -lits[j]) continue;
                seeds[{lits[i], lits[j]}].push_back(gamma);
            }
    }

    std::optional<rewrite_candidate> best;
    for (auto& [seed, shared] : seeds) {
        std::sort(shared.begin(), shared.end());
        std::vector<int> l_codes{seed.first, seed.second};

        // extend the selector side: a literal joins when every shared removal
        // plus that literal is still a clause of f
        if (shared.size() >= 2) {
            std::vector<int> candidates = buckets.at(shared.front());
            std::sort(candidates.begin(), candidates.end(), code_less);
            for (int code : candidates) {
                if (std::find(l_codes.begin(), l_codes.end(), code) != l_codes.end()) continue;
                if (std::find(l_codes.begin(), l_codes.end(), -code) != l_codes.end()) continue;
                bool ok = true;
                for (const clause& gamma : shared) {
                    if (gamma.contains(literal(code)) || gamma.contains(literal(-code))) {
                        ok = false;
                        break;
                    }
                    auto joined = join(gamma, literal(code));
                    if (!joined || !f.contains(*joined)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) l_codes.push_back(code);
            }
        }

        int gain = static_cast<int>(l_codes.size() * shared.size()) -
                   static_cast<int>(l_codes.size()) - static_cast<int>(shared.size());
        if (!best || gain > best->gain)
            best = rewrite_candidate{
                {clause(std::span<const int>(l_codes)), std::move(shared)}, gain};
    }
    return best;
}

} // namespace

std::vector<clause> grid_product_expand(const grid_product& gp) {
    if (gp.l.empty()) throw std::invalid_argument("grid product needs a selector literal");
    if (gp.gamma.empty()) throw std::invalid_argument("grid product needs a target clause");
    std::unordered_set<clause, clause_hash> targets(gp.gamma.begin(), gp.gamma.end());
    if (targets.size() != gp.gamma.size())
        throw std::invalid_argument("grid product targets repeat");

    std::vector<clause> out;
    out.reserve(gp.l.size() * gp.gamma.size());
    std::unordered_set<clause, clause_hash> seen;
    for (std::size_t i = 0; i < gp.l.size(); ++i) {
        literal l = gp.l.at(i);
        for (const clause& gamma : gp.gamma) {
            auto joined = join(gamma, l);
            if (!joined)
                throw std::invalid_argument("grid product combination is tautological");
            if (!seen.insert(*joined).second)
                throw std::invalid_argument("grid product combinations collide");
            out.push_back(std::move(*joined));
        }
    }
    return out;
}

formula bva_step(const formula& f, const grid_product& gp, var_map& pool) {
    check_pool_covers(f, pool);
    std::vector<clause> expansion = grid_product_expand(gp);
    for (const clause& c : expansion)
        if (!f.contains(c))
            throw std::invalid_argument("grid product expansion is not part of the formula");

    int y = pool.fresh("bva", {pool.size() + 1});
    std::unordered_set<clause, clause_hash> drop(expansion.begin(), expansion.end());
    formula out;
    for (const clause& c : f)
        if (!drop.contains(c)) out.add(c);
    for (std::size_t i = 0; i < gp.l.size(); ++i)
        out.add(clause{-y, gp.l.at(i).code()});
    for (const clause& gamma : gp.gamma)
        out.add(*join(gamma, literal(y)));

    // fresh y keeps the replacement clauses distinct from everything retained
    std::size_t expect = f.size() - expansion.size() + gp.l.size() + gp.gamma.size();
    if (out.size() != expect) throw std::logic_error("rewrite step size accounting failed");
    return out;
}

bva_result bva_reencode(const formula& f, var_map& pool, bva_policy policy) {
    check_pool_covers(f, pool);
    bva_result res{f, {}};
    for (std::uint64_t step = 0; step < policy.max_steps; ++step) {
        auto cand = detect_grid_product(res.f);
        if (!cand || cand->gain < policy.min_gain) break;
        res.f = bva_step(res.f, cand->gp, pool);
        res.steps.push_back({cand->gp.l.size(), cand->gp.gamma.size(), cand->gain, pool.size()});
    }
    return res;
}

formula amo_bva_construct(std::span<const int> lits, var_map& pool) {
    validate_amo_literals(lits);
    if (lits.size() < 3)
        throw std::invalid_argument("linear at-most-one needs at least three literals");
    for (int code : lits)
        if (std::abs(code) > pool.size())
            throw std::invalid_argument("variable pool does not cover the request");

    formula out;
    std::vector<int> work(lits.begin(), lits.end());
    while (work.size() > 4) {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                out.add(clause{-work[i], -work[j]});
        int y = pool.fresh("bva", {pool.size() + 1});
        for (int i = 0; i < 3; ++i)
            out.add(clause{-y, -work[i]});
        // remaining list guarded by y-bar: its pairwise rows are exactly the
        // clauses a rewrite step would have produced
        std::vector<int> next;
        next.reserve(work.size() - 2);
        next.push_back(-y);
        next.insert(next.end(), work.begin() + 3, work.end());
        work = std::move(next);
    }
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j)
            out.add(clause{-work[i], -work[j]});
    return out;
}

} // namespace covenc
